#include "bundler/cli/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

namespace bundler::cli {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> SplitList(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const size_t comma = s.find(',');
    const auto item = Trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::string Num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream o;
  o << std::setprecision(17) << v;
  return o.str();
}

std::optional<double> ParseDouble(std::string_view s) {
  s = Trim(s);
  if (s == "inf") return std::numeric_limits<double>::infinity();
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<control::DelayVariant> ParseDelayVariant(std::string_view s) {
  for (auto v : {control::DelayVariant::kCopa, control::DelayVariant::kBasicDelay}) {
    if (control::ToString(v) == s) return v;
  }
  return std::nullopt;
}

// Applies one fully qualified setting.
class Applier {
 public:
  Applier(BuiltScenario& out, std::vector<ConfigError>& errors) : out_(out), errors_(errors) {}

  void Apply(const Setting& s) {
    setting_ = &s;
    const std::string& key = s.key;
    if (key.starts_with("scenario.")) {
      ApplyScenario(key.substr(9));
    } else if (key.starts_with("link.")) {
      ApplyLink(key.substr(5));
    } else if (key.starts_with("site.")) {
      const std::string rest = key.substr(5);
      const size_t dot = rest.find('.');
      if (dot == std::string::npos || dot == 0) return Fail("expected site.NAME.key");
      ApplySite(SiteNamed(rest.substr(0, dot)), rest.substr(dot + 1));
    } else {
      Fail("unknown section");
    }
  }

 private:
  void Fail(std::string msg) {
    errors_.push_back({setting_->line, setting_->key, std::move(msg)});
  }

  bool Number(double& dst, double min = -std::numeric_limits<double>::infinity()) {
    auto v = ParseNumber(setting_->value);
    if (!v) return Fail("expected a number"), false;
    if (*v < min) return Fail("must be >= " + Num(min)), false;
    dst = *v;
    return true;
  }
  bool Seconds(double& dst) {
    auto v = ParseSeconds(setting_->value);
    if (!v) return Fail("expected a time in seconds"), false;
    dst = *v;
    return true;
  }
  template <typename T>
  bool Count(T& dst) {
    auto v = ParseNumber(setting_->value);
    if (!v || *v < 0 || *v != std::floor(*v) || !std::isfinite(*v)) {
      return Fail("expected a non-negative integer"), false;
    }
    dst = static_cast<T>(*v);
    return true;
  }
  bool Bool(bool& dst) {
    auto v = ParseBool(setting_->value);
    if (!v) return Fail("expected true or false"), false;
    dst = *v;
    return true;
  }
  template <typename T, typename P>
  bool Enum(T& dst, P parse, std::string_view choices) {
    auto v = parse(std::string_view(setting_->value));
    if (!v) return Fail("expected one of " + std::string(choices)), false;
    dst = *v;
    return true;
  }

  sim::SiteSpec& SiteNamed(const std::string& name) {
    for (auto& s : out_.scenario.sites) {
      if (s.name == name) return s;
    }
    sim::SiteSpec site;
    site.name = name;
    out_.scenario.sites.push_back(site);
    return out_.scenario.sites.back();
  }

  void ApplyScenario(const std::string& k) {
    auto& sc = out_.scenario;
    const std::string& v = setting_->value;
    if (k == "name") {
      if (v.empty()) return Fail("must not be empty");
      sc.name = v;
    } else if (k == "seeds") {
      out_.seeds.clear();
      for (auto item : SplitList(v)) {
        auto n = ParseDouble(item);
        if (!n || *n < 0 || *n != std::floor(*n)) return Fail("expected a list of seeds");
        out_.seeds.push_back(static_cast<uint64_t>(*n));
      }
      if (out_.seeds.empty()) Fail("at least one seed is required");
    } else if (k == "duration") {
      Seconds(sc.duration);
    } else if (k == "warmup") {
      Seconds(sc.warmup);
    } else if (k == "qdelay_interval") {
      Seconds(sc.qdelay_interval);
    } else if (k == "tput_interval") {
      Seconds(sc.tput_interval);
    } else if (k == "sampling_period") {
      Count(sc.measurement.initial_sampling_period);
    } else if (k == "fail_sendbox_at") {
      Seconds(sc.fault.sendbox_fail_at);
    } else if (k == "fail_receivebox_at") {
      Seconds(sc.fault.receivebox_fail_at);
    } else if (k == "baseline") {
      out_.baseline = v;
    } else {
      Fail("unknown key");
    }
  }

  void ApplyLink(const std::string& k) {
    auto& l = out_.scenario.link;
    if (k == "paths") {
      std::vector<sim::PathSpec> paths;
      for (auto item : SplitList(setting_->value)) {
        const size_t at = item.find('@');
        if (at == std::string_view::npos) return Fail("expected BANDWIDTH@DELAY, ...");
        auto bw = ParseNumber(item.substr(0, at));
        auto d = ParseSeconds(item.substr(at + 1));
        if (!bw || !d) return Fail("expected BANDWIDTH@DELAY, ...");
        paths.push_back({*bw, *d});
      }
      if (paths.empty()) return Fail("at least one path is required");
      l.paths = std::move(paths);
    } else if (k == "buffer") {
      Count(l.buffer_packets);
    } else if (k == "discipline") {
      Enum(l.discipline, sim::ParseDiscipline, "droptail, fq");
    } else if (k == "balancer") {
      Enum(l.balancer, sim::ParseBalancer, "flow_hash, packet_random");
    } else if (k == "reverse_delay") {
      Seconds(l.reverse_delay);
    } else if (k == "access_bandwidth") {
      Number(l.access_bandwidth);
    } else {
      Fail("unknown key");
    }
  }

  void ApplySite(sim::SiteSpec& s, const std::string& k) {
    using control::ControllerMode;
    auto& w = s.workload;
    auto& c = s.control;
    const std::string& v = setting_->value;
    static const std::map<std::string, std::function<void(Applier&, sim::SiteSpec&)>> table = {
        {"bundler", [](Applier& a, sim::SiteSpec& s) { a.Bool(s.bundler); }},
        {"cross", [](Applier& a, sim::SiteSpec& s) { a.Bool(s.cross_traffic); }},
        {"scheduler",
         [](Applier& a, sim::SiteSpec& s) {
           a.Enum(s.scheduler.kind, datapath::ParseSchedulerKind, "fifo, sfq, prio, fq_codel");
         }},
        {"sendbox_buffer", [](Applier& a, sim::SiteSpec& s) { a.Count(s.scheduler.buffer_packets); }},
        {"buckets", [](Applier& a, sim::SiteSpec& s) { a.Count(s.scheduler.num_buckets); }},
        {"quantum", [](Applier& a, sim::SiteSpec& s) { a.Count(s.scheduler.quantum); }},
        {"exact_flows", [](Applier& a, sim::SiteSpec& s) { a.Bool(s.scheduler.exact_flows); }},
        {"classes", [](Applier& a, sim::SiteSpec& s) { a.Count(s.scheduler.classes); }},
        {"codel_target", [](Applier& a, sim::SiteSpec& s) { a.Seconds(s.scheduler.codel_target); }},
        {"codel_interval",
         [](Applier& a, sim::SiteSpec& s) { a.Seconds(s.scheduler.codel_interval); }},
        {"arrivals",
         [](Applier& a, sim::SiteSpec& s) {
           a.Enum(s.workload.arrivals, sim::ParseArrivals, "poisson, closed");
         }},
        {"load", [](Applier& a, sim::SiteSpec& s) { a.Number(s.workload.load_bps, 0); }},
        {"think_time", [](Applier& a, sim::SiteSpec& s) { a.Seconds(s.workload.think_time); }},
        {"requests", [](Applier& a, sim::SiteSpec& s) { a.Count(s.workload.num_requests); }},
        {"servers", [](Applier& a, sim::SiteSpec& s) { a.Count(s.workload.servers); }},
        {"clients", [](Applier& a, sim::SiteSpec& s) { a.Count(s.workload.clients); }},
        {"class0_fraction",
         [](Applier& a, sim::SiteSpec& s) { a.Number(s.workload.class0_fraction); }},
        {"backlogged", [](Applier& a, sim::SiteSpec& s) { a.Count(s.workload.backlogged_flows); }},
        {"start", [](Applier& a, sim::SiteSpec& s) { a.Seconds(s.workload.start); }},
        {"stop", [](Applier& a, sim::SiteSpec& s) { a.Seconds(s.workload.stop); }},
        {"tcp",
         [](Applier& a, sim::SiteSpec& s) {
           a.Enum(s.tcp.algorithm, sim::ParseTcpAlgorithm, "cubic, reno, fixed");
         }},
        {"initial_window", [](Applier& a, sim::SiteSpec& s) { a.Number(s.tcp.initial_window); }},
        {"fixed_window", [](Applier& a, sim::SiteSpec& s) { a.Number(s.tcp.fixed_window); }},
        {"hystart", [](Applier& a, sim::SiteSpec& s) { a.Bool(s.tcp.hystart); }},
        {"min_rto", [](Applier& a, sim::SiteSpec& s) { a.Seconds(s.tcp.min_rto); }},
        {"control.variant",
         [](Applier& a, sim::SiteSpec& s) {
           a.Enum(s.control.delay.variant, ParseDelayVariant, "copa, basic_delay");
         }},
        {"control.initial_rate",
         [](Applier& a, sim::SiteSpec& s) { a.Number(s.control.initial_rate); }},
        {"control.pulsing", [](Applier& a, sim::SiteSpec& s) { a.Bool(s.control.pulsing); }},
        {"control.detect_elasticity",
         [](Applier& a, sim::SiteSpec& s) { a.Bool(s.control.detect_elasticity); }},
        {"control.detect_multipath",
         [](Applier& a, sim::SiteSpec& s) { a.Bool(s.control.detect_multipath); }},
        {"control.pulse_period",
         [](Applier& a, sim::SiteSpec& s) { a.Seconds(s.control.pulse_period); }},
        {"control.pulse_amplitude",
         [](Applier& a, sim::SiteSpec& s) { a.Number(s.control.pulse_amplitude_frac, 0); }},
        {"control.copa_delta",
         [](Applier& a, sim::SiteSpec& s) { a.Number(s.control.delay.copa_delta); }},
        {"control.pi_alpha", [](Applier& a, sim::SiteSpec& s) { a.Number(s.control.pi.alpha); }},
        {"control.pi_beta", [](Applier& a, sim::SiteSpec& s) { a.Number(s.control.pi.beta); }},
        {"control.pi_target",
         [](Applier& a, sim::SiteSpec& s) { a.Seconds(s.control.pi.q_target); }},
        {"control.tick", [](Applier& a, sim::SiteSpec& s) { a.Seconds(s.control.tick); }},
        {"control.mu_window",
         [](Applier& a, sim::SiteSpec& s) { a.Seconds(s.control.mu_window); }},
        {"control.min_rate", [](Applier& a, sim::SiteSpec& s) { a.Number(s.control.min_rate); }},
        {"control.elasticity_threshold",
         [](Applier& a, sim::SiteSpec& s) { a.Number(s.control.elasticity.threshold); }},
        {"control.elasticity_window",
         [](Applier& a, sim::SiteSpec& s) { a.Seconds(s.control.elasticity.window_sec); }},
        {"control.min_response",
         [](Applier& a, sim::SiteSpec& s) { a.Number(s.control.elasticity.min_response_frac); }},
        {"control.saturation_queue",
         [](Applier& a, sim::SiteSpec& s) { a.Seconds(s.control.saturation_queue); }},
        {"control.disable_above",
         [](Applier& a, sim::SiteSpec& s) { a.Number(s.control.fsm.disable_above); }},
        {"control.reenable_below",
         [](Applier& a, sim::SiteSpec& s) { a.Number(s.control.fsm.reenable_below); }},
        {"control.reenable_hold",
         [](Applier& a, sim::SiteSpec& s) { a.Seconds(s.control.fsm.reenable_hold); }},
    };
    if (auto it = table.find(k); it != table.end()) return it->second(*this, s);
    if (k == "flows") {
      w.explicit_flows.clear();
      for (auto item : SplitList(v)) {
        auto n = ParseNumber(item);
        if (!n || *n < 1 || *n != std::floor(*n)) return Fail("expected a list of byte sizes");
        w.explicit_flows.push_back(static_cast<uint64_t>(*n));
      }
    } else if (k == "cdf") {
      w.cdf_path = v;
    } else if (k == "control.mode") {
      if (v == "auto") {
        c.pinned_mode.reset();
      } else if (auto m = control::ParseMode(v)) {
        c.pinned_mode = *m;
      } else {
        Fail("expected auto, DelayControl, Competitive or Disabled");
      }
    } else {
      Fail("unknown key");
    }
  }

  BuiltScenario& out_;
  std::vector<ConfigError>& errors_;
  const Setting* setting_ = nullptr;
};

}  // namespace

std::string ConfigError::ToString() const {
  std::string s;
  if (line > 0) s += "line " + std::to_string(line) + ": ";
  if (!field.empty()) s += field + ": ";
  return s + message;
}

std::optional<double> ParseNumber(std::string_view s) {
  s = Trim(s);
  double mult = 1;
  if (!s.empty()) {
    switch (s.back()) {
      case 'k':
        mult = 1e3;
        break;
      case 'M':
        mult = 1e6;
        break;
      case 'G':
        mult = 1e9;
        break;
      default:
        break;
    }
    if (mult != 1) s.remove_suffix(1);
  }
  auto v = ParseDouble(s);
  if (!v || std::isnan(*v)) return std::nullopt;
  return *v * mult;
}

std::optional<double> ParseSeconds(std::string_view s) {
  s = Trim(s);
  double mult = 1;
  if (s.ends_with("ms")) {
    mult = 1e-3;
    s.remove_suffix(2);
  } else if (s.ends_with("s") && !s.ends_with("inf")) {
    s.remove_suffix(1);
  }
  auto v = ParseDouble(s);
  if (!v || std::isnan(*v)) return std::nullopt;
  return *v * mult;
}

std::optional<bool> ParseBool(std::string_view s) {
  s = Trim(s);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  return std::nullopt;
}

std::optional<ExperimentConfig> ParseConfig(std::string_view text,
                                            std::vector<ConfigError>* errors) {
  ExperimentConfig cfg;
  std::vector<ConfigError> errs;
  enum class Section { kNone, kScenario, kLink, kSite, kVariant } section = Section::kNone;
  std::string section_name;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        errs.push_back({lineno, "", "unterminated section header"});
        continue;
      }
      const auto inner = Trim(line.substr(1, line.size() - 2));
      const size_t sp = inner.find_first_of(" \t");
      const auto kind = inner.substr(0, sp);
      const auto name = sp == std::string_view::npos ? std::string_view{} : Trim(inner.substr(sp));
      section_name = std::string(name);
      if (kind == "scenario" && name.empty()) {
        section = Section::kScenario;
      } else if (kind == "link" && name.empty()) {
        section = Section::kLink;
      } else if (kind == "site" && !name.empty() && name.find('.') == std::string_view::npos) {
        section = Section::kSite;
        if (std::find(cfg.site_order.begin(), cfg.site_order.end(), section_name) ==
            cfg.site_order.end()) {
          cfg.site_order.push_back(section_name);
        }
      } else if (kind == "variant" && !name.empty()) {
        section = Section::kVariant;
        for (const auto& [vn, settings] : cfg.variants) {
          if (vn == section_name) errs.push_back({lineno, section_name, "duplicate variant"});
        }
        cfg.variants.emplace_back(section_name, std::vector<Setting>{});
      } else {
        errs.push_back({lineno, std::string(inner),
                        "expected [scenario], [link], [site NAME] or [variant NAME]"});
        section = Section::kNone;
      }
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      errs.push_back({lineno, std::string(line), "expected key = value"});
      continue;
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string value(Trim(line.substr(eq + 1)));
    if (key.empty()) {
      errs.push_back({lineno, "", "empty key"});
      continue;
    }
    switch (section) {
      case Section::kNone:
        errs.push_back({lineno, key, "setting outside any section"});
        break;
      case Section::kScenario:
        cfg.base.push_back({"scenario." + key, value, lineno});
        break;
      case Section::kLink:
        cfg.base.push_back({"link." + key, value, lineno});
        break;
      case Section::kSite:
        cfg.base.push_back({"site." + section_name + "." + key, value, lineno});
        break;
      case Section::kVariant:
        cfg.variants.back().second.push_back({key, value, lineno});
        break;
    }
  }

  // Catch unknown keys and bad values up front, for every variant.
  if (errs.empty()) {
    for (const auto& name : VariantNames(cfg)) {
      std::vector<ConfigError> build_errs;
      BuildScenario(cfg, name, {}, &build_errs);
      for (auto& e : build_errs) {
        if (!name.empty() && e.line == 0) e.field = "variant " + name + ": " + e.field;
        errs.push_back(std::move(e));
      }
    }
  }
  if (!errs.empty()) {
    if (errors) *errors = std::move(errs);
    return std::nullopt;
  }
  return cfg;
}

std::optional<Setting> ParseOverride(std::string_view text, ConfigError* error) {
  const size_t eq = text.find('=');
  if (eq == std::string_view::npos || Trim(text.substr(0, eq)).empty()) {
    if (error) *error = {0, std::string(text), "expected key=value"};
    return std::nullopt;
  }
  return Setting{std::string(Trim(text.substr(0, eq))), std::string(Trim(text.substr(eq + 1))), 0};
}

std::vector<std::string> VariantNames(const ExperimentConfig& config) {
  std::vector<std::string> names;
  for (const auto& [name, settings] : config.variants) names.push_back(name);
  if (names.empty()) names.emplace_back();
  return names;
}

std::optional<BuiltScenario> BuildScenario(const ExperimentConfig& config,
                                           const std::string& variant,
                                           const std::vector<Setting>& overrides,
                                           std::vector<ConfigError>* errors) {
  BuiltScenario out;
  out.seeds = {1};
  std::vector<ConfigError> errs;
  Applier apply(out, errs);
  // Sites exist in declaration order even if a section sets nothing.
  for (const auto& name : config.site_order) {
    sim::SiteSpec site;
    site.name = name;
    out.scenario.sites.push_back(site);
  }
  for (const auto& s : config.base) apply.Apply(s);
  if (!variant.empty()) {
    const auto it = std::find_if(config.variants.begin(), config.variants.end(),
                                 [&](const auto& v) { return v.first == variant; });
    if (it == config.variants.end()) {
      errs.push_back({0, variant, "no such variant"});
    } else {
      for (const auto& s : it->second) apply.Apply(s);
    }
  }
  for (const auto& s : overrides) apply.Apply(s);
  if (errs.empty()) {
    for (auto& v : sim::Validate(out.scenario)) errs.push_back({0, v.field, v.message});
  }
  if (!errs.empty()) {
    if (errors) *errors = std::move(errs);
    return std::nullopt;
  }
  return out;
}

std::string SerializeScenario(const sim::Scenario& s, const std::vector<uint64_t>& seeds) {
  std::ostringstream o;
  o << "[scenario]\n";
  o << "name = " << s.name << '\n';
  o << "seeds = ";
  for (size_t i = 0; i < seeds.size(); ++i) o << (i ? "," : "") << seeds[i];
  o << '\n';
  o << "duration = " << Num(s.duration) << '\n';
  o << "warmup = " << Num(s.warmup) << '\n';
  o << "qdelay_interval = " << Num(s.qdelay_interval) << '\n';
  o << "tput_interval = " << Num(s.tput_interval) << '\n';
  o << "sampling_period = " << s.measurement.initial_sampling_period << '\n';
  o << "fail_sendbox_at = " << Num(s.fault.sendbox_fail_at) << '\n';
  o << "fail_receivebox_at = " << Num(s.fault.receivebox_fail_at) << '\n';

  const auto& l = s.link;
  o << "\n[link]\npaths = ";
  for (size_t i = 0; i < l.paths.size(); ++i) {
    o << (i ? ", " : "") << Num(l.paths[i].bandwidth) << '@' << Num(l.paths[i].delay);
  }
  o << '\n';
  o << "buffer = " << l.buffer_packets << '\n';
  o << "discipline = " << sim::ToString(l.discipline) << '\n';
  o << "balancer = " << sim::ToString(l.balancer) << '\n';
  o << "reverse_delay = " << Num(l.reverse_delay) << '\n';
  o << "access_bandwidth = " << Num(l.access_bandwidth) << '\n';

  for (const auto& site : s.sites) {
    const auto& w = site.workload;
    const auto& c = site.control;
    const auto& q = site.scheduler;
    auto b = [](bool v) { return v ? "true" : "false"; };
    o << "\n[site " << site.name << "]\n";
    o << "bundler = " << b(site.bundler) << '\n';
    o << "cross = " << b(site.cross_traffic) << '\n';
    o << "scheduler = " << datapath::ToString(q.kind) << '\n';
    o << "sendbox_buffer = " << q.buffer_packets << '\n';
    o << "buckets = " << q.num_buckets << '\n';
    o << "quantum = " << q.quantum << '\n';
    o << "exact_flows = " << b(q.exact_flows) << '\n';
    o << "classes = " << q.classes << '\n';
    o << "codel_target = " << Num(q.codel_target) << '\n';
    o << "codel_interval = " << Num(q.codel_interval) << '\n';
    o << "arrivals = " << sim::ToString(w.arrivals) << '\n';
    o << "load = " << Num(w.load_bps) << '\n';
    o << "think_time = " << Num(w.think_time) << '\n';
    o << "requests = " << w.num_requests << '\n';
    o << "servers = " << w.servers << '\n';
    o << "clients = " << w.clients << '\n';
    o << "class0_fraction = " << Num(w.class0_fraction) << '\n';
    o << "backlogged = " << w.backlogged_flows << '\n';
    o << "flows = ";
    for (size_t i = 0; i < w.explicit_flows.size(); ++i) o << (i ? "," : "") << w.explicit_flows[i];
    o << '\n';
    o << "start = " << Num(w.start) << '\n';
    o << "stop = " << Num(w.stop) << '\n';
    if (!w.cdf_path.empty()) o << "cdf = " << w.cdf_path << '\n';
    o << "tcp = " << sim::ToString(site.tcp.algorithm) << '\n';
    o << "initial_window = " << Num(site.tcp.initial_window) << '\n';
    o << "fixed_window = " << Num(site.tcp.fixed_window) << '\n';
    o << "hystart = " << b(site.tcp.hystart) << '\n';
    o << "min_rto = " << Num(site.tcp.min_rto) << '\n';
    o << "control.variant = " << control::ToString(c.delay.variant) << '\n';
    o << "control.mode = " << (c.pinned_mode ? control::ToString(*c.pinned_mode) : "auto") << '\n';
    o << "control.initial_rate = " << Num(c.initial_rate) << '\n';
    o << "control.pulsing = " << b(c.pulsing) << '\n';
    o << "control.detect_elasticity = " << b(c.detect_elasticity) << '\n';
    o << "control.detect_multipath = " << b(c.detect_multipath) << '\n';
    o << "control.pulse_period = " << Num(c.pulse_period) << '\n';
    o << "control.pulse_amplitude = " << Num(c.pulse_amplitude_frac) << '\n';
    o << "control.copa_delta = " << Num(c.delay.copa_delta) << '\n';
    o << "control.pi_alpha = " << Num(c.pi.alpha) << '\n';
    o << "control.pi_beta = " << Num(c.pi.beta) << '\n';
    o << "control.pi_target = " << Num(c.pi.q_target) << '\n';
    o << "control.tick = " << Num(c.tick) << '\n';
    o << "control.mu_window = " << Num(c.mu_window) << '\n';
    o << "control.min_rate = " << Num(c.min_rate) << '\n';
    o << "control.elasticity_threshold = " << Num(c.elasticity.threshold) << '\n';
    o << "control.elasticity_window = " << Num(c.elasticity.window_sec) << '\n';
    o << "control.min_response = " << Num(c.elasticity.min_response_frac) << '\n';
    o << "control.saturation_queue = " << Num(c.saturation_queue) << '\n';
    o << "control.disable_above = " << Num(c.fsm.disable_above) << '\n';
    o << "control.reenable_below = " << Num(c.fsm.reenable_below) << '\n';
    o << "control.reenable_hold = " << Num(c.fsm.reenable_hold) << '\n';
  }
  return o.str();
}

}  // namespace bundler::cli
