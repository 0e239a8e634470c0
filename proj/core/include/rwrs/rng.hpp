#pragma once

#include <cstdint>

namespace rwrs {

// SplitMix64-style 64-bit finalizer (Stafford mix 13). Bijective on uint64.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// 128-bit stream key. Every source of randomness in the library is a pure
// function of a key, so results are reproducible regardless of evaluation
// order or thread scheduling.
struct RngKey {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  friend constexpr bool operator==(const RngKey&, const RngKey&) noexcept = default;
};

inline constexpr RngKey master_key(std::uint64_t seed) noexcept {
  return RngKey{mix64(seed ^ 0x8cb92ba72f3d8dd7ULL), mix64(seed + kGoldenGamma)};
}

// Child stream key; distinct indices give streams treated as independent.
inline constexpr RngKey derive(RngKey parent, std::uint64_t index) noexcept {
  const std::uint64_t h = mix64(index * kGoldenGamma + 0xd1b54a32d192ed03ULL);
  return RngKey{mix64(parent.hi ^ h), mix64(parent.lo + (h ^ 0xeb44accab455d165ULL))};
}

inline constexpr RngKey derive(RngKey parent, std::uint64_t a, std::uint64_t b) noexcept {
  return derive(derive(parent, a), b);
}

// Keyed counter block: two chained finalizer rounds. Bijective in ctr for a
// fixed key, so a stream never repeats a word.
constexpr std::uint64_t prf(RngKey key, std::uint64_t ctr) noexcept {
  return mix64(mix64(ctr ^ key.lo) + key.hi);
}

// Keyed hash of an (index, tag) pair; backs lazy random access to sceneries.
constexpr std::uint64_t prf2(RngKey key, std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t x = mix64(a ^ key.lo);
  x = mix64(x ^ (b * kGoldenGamma + key.hi));
  return mix64(x + (key.lo ^ 0xd1b54a32d192ed03ULL));
}

// Map a word to the open interval (0,1): 52 mantissa bits, half-ulp offset
// (k + 0.5 is exactly representable for k < 2^52). Never returns 0 or 1, so
// log/quantile transforms stay finite.
constexpr double u64_to_unit(std::uint64_t x) noexcept {
  return (static_cast<double>(x >> 12) + 0.5) * 0x1.0p-52;
}

inline double site_unit(RngKey key, std::int64_t site, std::uint64_t tag) noexcept {
  return u64_to_unit(prf2(key, static_cast<std::uint64_t>(site), tag));
}

// Counter-mode stream over a fixed key.
class CounterRng {
 public:
  constexpr explicit CounterRng(RngKey key) noexcept : key_(key) {}

  constexpr std::uint64_t next_u64() noexcept { return prf(key_, ctr_++); }
  constexpr double next_unit() noexcept { return u64_to_unit(next_u64()); }

  constexpr RngKey key() const noexcept { return key_; }

 private:
  RngKey key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace rwrs
