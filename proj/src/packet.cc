#include "bundler/packet.h"

#include <array>

#include "bundler/measurement/header_hash.h"

namespace bundler {

std::string FormatIpv4(uint32_t addr) {
  return std::to_string(addr >> 24) + "." + std::to_string((addr >> 16) & 0xff) +
         "." + std::to_string((addr >> 8) & 0xff) + "." +
         std::to_string(addr & 0xff);
}

uint64_t HashFiveTuple(const FiveTuple& t) {
  std::array<uint8_t, 13> b{};
  auto put32 = [&b](size_t at, uint32_t v) {
    for (int i = 0; i < 4; ++i) b[at + i] = static_cast<uint8_t>(v >> (24 - 8 * i));
  };
  put32(0, t.src_addr);
  put32(4, t.dst_addr);
  b[8] = static_cast<uint8_t>(t.src_port >> 8);
  b[9] = static_cast<uint8_t>(t.src_port);
  b[10] = static_cast<uint8_t>(t.dst_port >> 8);
  b[11] = static_cast<uint8_t>(t.dst_port);
  b[12] = t.protocol;
  return measurement::Fnv1a64(b);
}

}  // namespace bundler
