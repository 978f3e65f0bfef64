#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace topicfilter {

/// 64-bit FNV-1a, used for artifact fingerprints and config hashes.
class Fnv1a {
 public:
  void update_byte(std::uint8_t b) noexcept {
    state_ ^= b;
    state_ *= 0x100000001b3ULL;
  }
  void update(std::string_view s) noexcept {
    for (unsigned char c : s) update_byte(c);
  }
  void update_u64(std::uint64_t v) noexcept {
    for (int i = 0; i < 8; ++i) update_byte(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::uint64_t digest() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

/// 16 lowercase hex digits.
std::string to_hex(std::uint64_t value);

}  // namespace topicfilter
