#include "bundler/control/pulse.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bundler::control {

namespace {

double Phase(const PulseState& p, TimeSec t) {
  double tau = std::fmod(t - p.origin, p.period);
  if (tau < 0) tau += p.period;
  return tau;
}

// Integral of the offset from the start of a period to phase tau.
double Antiderivative(const PulseState& p, double tau) {
  using std::numbers::pi;
  const double a = p.amplitude;
  const double T = p.period;
  if (tau <= T / 4) return a * T / (4 * pi) * (1 - std::cos(4 * pi * tau / T));
  const double u = tau - T / 4;
  return a * T / (2 * pi) + a * T / (4 * pi) * (std::cos(4 * pi * u / (3 * T)) - 1);
}

}  // namespace

double PulseOffset(const PulseState& p, TimeSec t) {
  using std::numbers::pi;
  const double tau = Phase(p, t);
  const double T = p.period;
  if (tau < T / 4) return p.amplitude * std::sin(4 * pi * tau / T);
  return -(p.amplitude / 3) * std::sin(4 * pi * (tau - T / 4) / (3 * T));
}

double PulseRate(const PulseState& p, double base_bps, TimeSec t) {
  return std::max(0.0, base_bps + PulseOffset(p, t));
}

double MeanPulseOffset(const PulseState& p, TimeSec t0, TimeSec t1) {
  // Whole periods contribute nothing, so only the phases at the ends matter.
  const double f0 = Antiderivative(p, Phase(p, t0));
  const double f1 = Antiderivative(p, Phase(p, t1));
  return (f1 - f0) / (t1 - t0);
}

double UpPulseArea(const PulseState& p) {
  return p.amplitude * p.period / (2 * std::numbers::pi);
}

}  // namespace bundler::control
