#ifndef BUNDLER_CONTROL_ELASTICITY_H_
#define BUNDLER_CONTROL_ELASTICITY_H_

#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "bundler/control/pulse.h"

namespace bundler::control {

// Cross-traffic rate implied by the bundle's send/receive rates through a
// FIFO bottleneck of capacity mu: z = max(0, mu*S/R - S). No estimate when
// R is not positive.
std::optional<double> CrossRate(double mu_bps, double send_bps, double recv_bps);

struct ElasticityConfig {
  double window_sec = 5.0;
  double sample_dt = 0.01;
  double threshold = 2.0;
  // Minimum amplitude of the cross-traffic response at the pulse frequency,
  // as a fraction of the pulse amplitude. Zero disables the check.
  double min_response_frac = 0.1;
  // Minimum history before any verdict, in pulse periods.
  double min_periods = 5.0;
};

struct ElasticityScore {
  double eta = 0;           // |Z(f_p)| / max |Z(f)| for f in (f_p, 2 f_p)
  double response = 0;      // amplitude of the f_p component, bits/sec
};

// Spectral elasticity score of a uniformly sampled cross-rate series against
// pulses at `pulse_freq`. The series mean is removed first.
ElasticityScore ScoreElasticity(std::span<const double> z, double sample_dt,
                                double pulse_freq);

// Verdict for a full history window; too little history means inelastic.
bool DetectElasticity(std::span<const double> z, const PulseState& pulse,
                      const ElasticityConfig& config);

// Sliding window of cross-rate samples taken at a fixed spacing.
class ElasticityDetector {
 public:
  explicit ElasticityDetector(ElasticityConfig config = {});

  void Push(double z);
  void Clear() { samples_.clear(); }

  bool IsElastic(const PulseState& pulse) const;
  ElasticityScore Score(const PulseState& pulse) const;
  size_t size() const { return samples_.size(); }
  size_t capacity() const { return capacity_; }

 private:
  ElasticityConfig config_;
  size_t capacity_;
  std::deque<double> samples_;
};

}  // namespace bundler::control

#endif  // BUNDLER_CONTROL_ELASTICITY_H_
