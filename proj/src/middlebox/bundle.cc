#include "bundler/middlebox/bundle.h"

#include <algorithm>
#include <charconv>

namespace bundler::middlebox {
namespace {

bool AnyOverlap(const std::vector<Prefix>& a, const std::vector<Prefix>& b) {
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (x.Overlaps(y)) return true;
    }
  }
  return false;
}

bool AnyContains(const std::vector<Prefix>& set, uint32_t addr) {
  return std::any_of(set.begin(), set.end(), [addr](const Prefix& p) { return p.Contains(addr); });
}

}  // namespace

bool Prefix::Overlaps(const Prefix& o) const {
  const uint32_t m = len < o.len ? mask() : o.mask();
  return (addr & m) == (o.addr & m);
}

std::optional<Prefix> ParsePrefix(std::string_view s) {
  Prefix p;
  p.len = 32;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    unsigned len = 0;
    auto tail = s.substr(slash + 1);
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), len);
    if (ec != std::errc{} || ptr != tail.data() + tail.size() || len > 32) return std::nullopt;
    p.len = static_cast<uint8_t>(len);
    s = s.substr(0, slash);
  }
  uint32_t addr = 0;
  for (int i = 0; i < 4; ++i) {
    unsigned octet = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), octet);
    if (ec != std::errc{} || octet > 255) return std::nullopt;
    addr = (addr << 8) | octet;
    s.remove_prefix(ptr - s.data());
    if (i < 3) {
      if (s.empty() || s.front() != '.') return std::nullopt;
      s.remove_prefix(1);
    }
  }
  if (!s.empty()) return std::nullopt;
  p.addr = addr & p.mask();
  return p;
}

std::string FormatPrefix(const Prefix& p) {
  return FormatIpv4(p.addr) + "/" + std::to_string(p.len);
}

bool BundleSpec::Matches(const FiveTuple& t) const {
  return AnyContains(src, t.src_addr) && AnyContains(dst, t.dst_addr);
}

std::optional<BundleTable> BundleTable::Create(std::vector<BundleSpec> specs,
                                               std::string* error) {
  auto fail = [error](std::string msg) -> std::optional<BundleTable> {
    if (error) *error = std::move(msg);
    return std::nullopt;
  };
  for (size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].src.empty() || specs[i].dst.empty()) {
      return fail("bundle " + std::to_string(specs[i].bundle_id) + " has an empty prefix set");
    }
    for (size_t j = 0; j < i; ++j) {
      if (specs[i].bundle_id == specs[j].bundle_id) {
        return fail("duplicate bundle id " + std::to_string(specs[i].bundle_id));
      }
      if (AnyOverlap(specs[i].src, specs[j].src) && AnyOverlap(specs[i].dst, specs[j].dst)) {
        return fail("bundles " + std::to_string(specs[j].bundle_id) + " and " +
                    std::to_string(specs[i].bundle_id) + " overlap");
      }
    }
  }
  BundleTable table;
  table.specs_ = std::move(specs);
  return table;
}

std::optional<size_t> BundleTable::Match(const FiveTuple& t) const {
  for (size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].Matches(t)) return i;
  }
  return std::nullopt;
}

std::optional<size_t> BundleTable::IndexOf(uint32_t bundle_id) const {
  for (size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].bundle_id == bundle_id) return i;
  }
  return std::nullopt;
}

}  // namespace bundler::middlebox
