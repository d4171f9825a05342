#include "bundler/control/elasticity.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

namespace bundler::control {

namespace {

double DftMagnitude(std::span<const double> x, double freq, double dt) {
  const double w = -2.0 * std::numbers::pi * freq * dt;
  // Rotate a phasor instead of calling sin/cos per sample.
  const std::complex<double> step = std::polar(1.0, w);
  std::complex<double> phasor = 1.0;
  std::complex<double> acc = 0.0;
  for (double v : x) {
    acc += v * phasor;
    phasor *= step;
  }
  return std::abs(acc);
}

}  // namespace

std::optional<double> CrossRate(double mu_bps, double send_bps, double recv_bps) {
  if (!(recv_bps > 0)) return std::nullopt;
  return std::max(0.0, mu_bps * send_bps / recv_bps - send_bps);
}

ElasticityScore ScoreElasticity(std::span<const double> z, double sample_dt,
                                double pulse_freq) {
  ElasticityScore score;
  const size_t n = z.size();
  if (n < 4) return score;
  const double mean = std::accumulate(z.begin(), z.end(), 0.0) / static_cast<double>(n);
  std::vector<double> centered(z.begin(), z.end());
  double scale = 0;
  for (double& v : centered) {
    v -= mean;
    scale += std::abs(v);
  }

  const double at_pulse = DftMagnitude(centered, pulse_freq, sample_dt);
  score.response = 2.0 * at_pulse / static_cast<double>(n);

  const double resolution = 1.0 / (static_cast<double>(n) * sample_dt);
  double neighbour = 0;
  bool any_bin = false;
  for (size_t k = static_cast<size_t>(std::floor(pulse_freq / resolution)) + 1;; ++k) {
    const double f = static_cast<double>(k) * resolution;
    if (f >= 2 * pulse_freq - 1e-9 * resolution) break;
    if (f <= pulse_freq + 1e-9 * resolution) continue;
    neighbour = std::max(neighbour, DftMagnitude(centered, f, sample_dt));
    any_bin = true;
  }
  if (!any_bin) return score;

  const double eps = 1e-12 * (scale + 1.0);
  if (at_pulse <= eps) {
    score.eta = 0;
  } else {
    score.eta = at_pulse / std::max(neighbour, eps);
  }
  return score;
}

bool DetectElasticity(std::span<const double> z, const PulseState& pulse,
                      const ElasticityConfig& config) {
  const double needed = std::min(config.window_sec, config.min_periods * pulse.period);
  if (static_cast<double>(z.size()) * config.sample_dt < needed - 1e-9) return false;
  const ElasticityScore s = ScoreElasticity(z, config.sample_dt, pulse.frequency());
  if (s.eta < config.threshold) return false;
  return s.response >= config.min_response_frac * pulse.amplitude;
}

ElasticityDetector::ElasticityDetector(ElasticityConfig config)
    : config_(config),
      capacity_(static_cast<size_t>(std::llround(config.window_sec / config.sample_dt))) {}

void ElasticityDetector::Push(double z) {
  samples_.push_back(z);
  while (samples_.size() > capacity_) samples_.pop_front();
}

bool ElasticityDetector::IsElastic(const PulseState& pulse) const {
  if (samples_.size() < capacity_) return false;
  const std::vector<double> z(samples_.begin(), samples_.end());
  return DetectElasticity(z, pulse, config_);
}

ElasticityScore ElasticityDetector::Score(const PulseState& pulse) const {
  const std::vector<double> z(samples_.begin(), samples_.end());
  return ScoreElasticity(z, config_.sample_dt, pulse.frequency());
}

}  // namespace bundler::control
