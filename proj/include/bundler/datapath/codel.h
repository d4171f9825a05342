#ifndef BUNDLER_DATAPATH_CODEL_H_
#define BUNDLER_DATAPATH_CODEL_H_

#include <cstdint>

#include "bundler/packet.h"

namespace bundler::datapath {

struct CoDelParams {
  double target = 0.005;
  double interval = 0.100;
  uint32_t max_packet = kMtuBytes;
};

// Per-queue CoDel controller. The first drop happens once the sojourn time
// has stayed above target for a full interval; while dropping, successive
// drops are spaced interval/sqrt(count) apart.
class CoDelState {
 public:
  // Decides the fate of the head packet at dequeue time. `sojourn` is the
  // head's time in queue and `bytes_behind` the queue's bytes excluding it.
  // Returns true if the head should be dropped.
  bool ShouldDrop(TimeSec now, double sojourn, uint64_t bytes_behind, const CoDelParams& p);

  // The queue went empty.
  void OnEmpty();

  bool dropping() const { return dropping_; }
  uint32_t count() const { return count_; }

 private:
  bool OkToDrop(TimeSec now, double sojourn, uint64_t bytes_behind, const CoDelParams& p);

  TimeSec first_above_ = 0;
  TimeSec drop_next_ = 0;
  uint32_t count_ = 0;
  uint32_t last_count_ = 0;
  bool dropping_ = false;
};

}  // namespace bundler::datapath

#endif  // BUNDLER_DATAPATH_CODEL_H_
