#ifndef BUNDLER_WORKLOAD_WORKLOAD_H_
#define BUNDLER_WORKLOAD_WORKLOAD_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bundler/packet.h"

namespace bundler::workload {

// Empirical request-size CDF. Quantiles between points interpolate
// linearly in log(size); the first point carries its whole mass.
class RequestSizeDist {
 public:
  // Points must be strictly increasing in both size and probability, with
  // positive sizes and the last probability equal to 1.
  static std::optional<RequestSizeDist> FromPoints(std::vector<std::pair<double, double>> pts,
                                                   std::string* error);
  // `<size_bytes> <cum_prob>` per line; '#' starts a comment.
  static std::optional<RequestSizeDist> Parse(std::string_view text, std::string* error);
  static std::optional<RequestSizeDist> Load(const std::string& path, std::string* error);

  // The built-in distribution, identical to data/request_sizes.cdf.
  static const RequestSizeDist& Default();

  double Quantile(double u) const;
  uint64_t Sample(std::mt19937_64& rng) const;
  double Mean() const;
  double Cdf(double size) const;
  const std::vector<std::pair<double, double>>& points() const { return pts_; }

 private:
  std::vector<std::pair<double, double>> pts_;
};

struct FlowRecord {
  uint64_t id = 0;
  uint64_t size = 0;  // payload bytes
  TimeSec t_start = 0;
  TimeSec t_end = 0;
  uint32_t bundle_id = 0;
  uint8_t traffic_class = 0;
  bool cross_traffic = false;

  double fct() const { return t_end - t_start; }
};

double Slowdown(const FlowRecord& rec, double unloaded_fct);

// Nearest-rank percentile, p in (0, 100]. Requires a nonempty input.
double Percentile(std::vector<double> values, double p);

enum class SizeBand { kShort, kMedium, kLong };  // <=10 KB, <=1 MB, larger
constexpr std::array<SizeBand, 3> kAllBands = {SizeBand::kShort, SizeBand::kMedium,
                                               SizeBand::kLong};
constexpr uint64_t kShortMaxBytes = 10'000;
constexpr uint64_t kMediumMaxBytes = 1'000'000;

SizeBand BandOf(uint64_t size);
std::string_view ToString(SizeBand b);
std::optional<SizeBand> ParseBand(std::string_view s);

// Percentile of `values[i]` grouped by the band of `sizes[i]`. Bands with
// no members are absent.
std::map<SizeBand, double> BandedPercentile(std::span<const uint64_t> sizes,
                                            std::span<const double> values, double p);

// Unloaded completion time by transfer size. Sizes that need the same
// number of segments complete in the same time on an idle path, so results
// are cached per segment count.
class UnloadedFctCache {
 public:
  explicit UnloadedFctCache(std::function<double(uint64_t bytes)> compute)
      : compute_(std::move(compute)) {}

  double Get(uint64_t bytes);
  size_t size() const { return cache_.size(); }

 private:
  std::function<double(uint64_t)> compute_;
  std::map<uint64_t, double> cache_;
};

}  // namespace bundler::workload

#endif  // BUNDLER_WORKLOAD_WORKLOAD_H_
