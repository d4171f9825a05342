#ifndef BUNDLER_MIDDLEBOX_BUNDLE_H_
#define BUNDLER_MIDDLEBOX_BUNDLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bundler/control/rate_controller.h"
#include "bundler/datapath/scheduler.h"
#include "bundler/packet.h"

namespace bundler::middlebox {

struct Prefix {
  uint32_t addr = 0;
  uint8_t len = 0;  // 0..32

  uint32_t mask() const { return len == 0 ? 0 : ~uint32_t{0} << (32 - len); }
  bool Contains(uint32_t a) const { return (a & mask()) == (addr & mask()); }
  bool Overlaps(const Prefix& o) const;

  friend bool operator==(const Prefix&, const Prefix&) = default;
};

// "a.b.c.d/len"; a bare address means /32.
std::optional<Prefix> ParsePrefix(std::string_view s);
std::string FormatPrefix(const Prefix& p);

// Traffic from any `src` prefix to any `dst` prefix forms one bundle.
struct BundleSpec {
  uint32_t bundle_id = 0;
  std::vector<Prefix> src;
  std::vector<Prefix> dst;
  datapath::SchedulerConfig scheduler;
  control::RateControlConfig control;

  bool Matches(const FiveTuple& t) const;
};

// Static bundle membership. Construction fails (returns an error) if two
// bundles could claim the same packet or share an id.
class BundleTable {
 public:
  static std::optional<BundleTable> Create(std::vector<BundleSpec> specs, std::string* error);

  std::optional<size_t> Match(const FiveTuple& t) const;
  std::optional<size_t> IndexOf(uint32_t bundle_id) const;
  const std::vector<BundleSpec>& specs() const { return specs_; }
  size_t size() const { return specs_.size(); }

 private:
  std::vector<BundleSpec> specs_;
};

}  // namespace bundler::middlebox

#endif  // BUNDLER_MIDDLEBOX_BUNDLE_H_
