#ifndef BUNDLER_CONTROL_PULSE_H_
#define BUNDLER_CONTROL_PULSE_H_

#include "bundler/packet.h"

namespace bundler::control {

// Asymmetric sinusoidal probe overlaid on the base rate. Each period of
// length T starts with an up-pulse A*sin(4*pi*tau/T) over the first T/4,
// followed by a compensating down-pulse of amplitude A/3 over the remaining
// 3T/4, so the rate averaged over any whole period equals the base rate.
struct PulseState {
  double period = 0.2;    // seconds
  double amplitude = 0;   // bits/sec
  TimeSec origin = 0;

  double frequency() const { return 1.0 / period; }
};

// Offset added to the base rate at time t.
double PulseOffset(const PulseState& p, TimeSec t);

// base + PulseOffset, clamped at zero.
double PulseRate(const PulseState& p, double base_bps, TimeSec t);

// Exact mean of PulseOffset over [t0, t1]; t1 > t0.
double MeanPulseOffset(const PulseState& p, TimeSec t0, TimeSec t1);

// Bits sent above base during one up-pulse: A*T/(2*pi).
double UpPulseArea(const PulseState& p);

}  // namespace bundler::control

#endif  // BUNDLER_CONTROL_PULSE_H_
