#include "bundler/workload/workload.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bundler::workload {

std::optional<RequestSizeDist> RequestSizeDist::FromPoints(
    std::vector<std::pair<double, double>> pts, std::string* error) {
  auto fail = [error](std::string msg) -> std::optional<RequestSizeDist> {
    if (error) *error = std::move(msg);
    return std::nullopt;
  };
  if (pts.empty()) return fail("empty distribution");
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto [s, p] = pts[i];
    if (!(s > 0)) return fail("point " + std::to_string(i + 1) + ": size must be positive");
    if (!(p > 0 && p <= 1)) {
      return fail("point " + std::to_string(i + 1) + ": probability outside (0, 1]");
    }
    if (i > 0 && !(s > pts[i - 1].first && p > pts[i - 1].second)) {
      return fail("point " + std::to_string(i + 1) + ": not strictly increasing");
    }
  }
  if (pts.back().second != 1.0) return fail("last cumulative probability must be 1");
  RequestSizeDist d;
  d.pts_ = std::move(pts);
  return d;
}

std::optional<RequestSizeDist> RequestSizeDist::Parse(std::string_view text,
                                                      std::string* error) {
  std::vector<std::pair<double, double>> pts;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    double size = 0, prob = 0;
    if (!(fields >> size)) continue;
    std::string extra;
    if (!(fields >> prob) || (fields >> extra)) {
      if (error) *error = "line " + std::to_string(lineno) + ": expected <size> <cum_prob>";
      return std::nullopt;
    }
    pts.emplace_back(size, prob);
  }
  return FromPoints(std::move(pts), error);
}

std::optional<RequestSizeDist> RequestSizeDist::Load(const std::string& path,
                                                     std::string* error) {
  std::ifstream f(path);
  if (!f) {
    if (error) *error = "cannot open " + path;
    return std::nullopt;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  return Parse(buf.str(), error);
}

const RequestSizeDist& RequestSizeDist::Default() {
  static const RequestSizeDist d = *FromPoints(
      {{100, 0.10}, {300, 0.30}, {1000, 0.55}, {2000, 0.70}, {5000, 0.88}, {10000, 0.976},
       {30000, 0.988}, {100000, 0.9945}, {300000, 0.998}, {1e6, 0.9993}, {5e6, 0.99998},
       {1e8, 1.0}},
      nullptr);
  return d;
}

double RequestSizeDist::Quantile(double u) const {
  if (u <= pts_.front().second) return pts_.front().first;
  auto it = std::lower_bound(pts_.begin(), pts_.end(), u,
                             [](const auto& pt, double v) { return pt.second < v; });
  if (it == pts_.end()) return pts_.back().first;
  const auto& [s1, p1] = *it;
  const auto& [s0, p0] = *(it - 1);
  const double frac = (u - p0) / (p1 - p0);
  return std::exp(std::log(s0) + frac * (std::log(s1) - std::log(s0)));
}

uint64_t RequestSizeDist::Sample(std::mt19937_64& rng) const {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return std::max<uint64_t>(1, static_cast<uint64_t>(std::llround(Quantile(u))));
}

double RequestSizeDist::Mean() const {
  double mean = pts_.front().first * pts_.front().second;
  for (size_t i = 1; i < pts_.size(); ++i) {
    const auto [s0, p0] = pts_[i - 1];
    const auto [s1, p1] = pts_[i];
    // Mean of a log-uniform segment.
    mean += (p1 - p0) * (s1 - s0) / std::log(s1 / s0);
  }
  return mean;
}

double RequestSizeDist::Cdf(double size) const {
  if (size < pts_.front().first) return 0.0;
  if (size >= pts_.back().first) return 1.0;
  auto it = std::upper_bound(pts_.begin(), pts_.end(), size,
                             [](double v, const auto& pt) { return v < pt.first; });
  const auto& [s1, p1] = *it;
  const auto& [s0, p0] = *(it - 1);
  return p0 + (p1 - p0) * std::log(size / s0) / std::log(s1 / s0);
}

double Slowdown(const FlowRecord& rec, double unloaded_fct) {
  assert(unloaded_fct > 0);
  return rec.fct() / unloaded_fct;
}

double Percentile(std::vector<double> values, double p) {
  assert(!values.empty() && p > 0 && p <= 100);
  const auto n = values.size();
  const auto rank = static_cast<size_t>(std::ceil(p / 100.0 * static_cast<double>(n)));
  const size_t idx = std::clamp<size_t>(rank, 1, n) - 1;
  std::nth_element(values.begin(), values.begin() + static_cast<ptrdiff_t>(idx), values.end());
  return values[idx];
}

SizeBand BandOf(uint64_t size) {
  if (size <= kShortMaxBytes) return SizeBand::kShort;
  if (size <= kMediumMaxBytes) return SizeBand::kMedium;
  return SizeBand::kLong;
}

std::string_view ToString(SizeBand b) {
  switch (b) {
    case SizeBand::kShort:
      return "short";
    case SizeBand::kMedium:
      return "medium";
    case SizeBand::kLong:
      return "long";
  }
  return "?";
}

std::optional<SizeBand> ParseBand(std::string_view s) {
  for (auto b : kAllBands) {
    if (ToString(b) == s) return b;
  }
  return std::nullopt;
}

std::map<SizeBand, double> BandedPercentile(std::span<const uint64_t> sizes,
                                            std::span<const double> values, double p) {
  assert(sizes.size() == values.size());
  std::map<SizeBand, std::vector<double>> groups;
  for (size_t i = 0; i < sizes.size(); ++i) groups[BandOf(sizes[i])].push_back(values[i]);
  std::map<SizeBand, double> out;
  for (auto& [band, v] : groups) out[band] = Percentile(std::move(v), p);
  return out;
}

double UnloadedFctCache::Get(uint64_t bytes) {
  const uint64_t segments = std::max<uint64_t>(1, (bytes + kMssBytes - 1) / kMssBytes);
  auto it = cache_.find(segments);
  if (it != cache_.end()) return it->second;
  const double fct = compute_(bytes);
  cache_.emplace(segments, fct);
  return fct;
}

}  // namespace bundler::workload
