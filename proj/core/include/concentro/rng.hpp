#pragma once

#include <cstdint>
#include <limits>

namespace concentro {

/// Counter-based generator ("SplitMix64 counter stream").
///
/// Output k of stream (seed, stream) is mix64(key + (k + 1) * 0x9E3779B97F4A7C15)
/// with key = mix64(seed ^ mix64(stream + 0xD1B54A32D192ED03)), where mix64 is
/// the SplitMix64 finalizer. Any implementation can regenerate a stream from
/// its (seed, stream, k) triple, and chunk c of a Monte Carlo run always uses
/// stream c.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal via Box-Muller; both variates of a pair are used.
  double normal();
  /// +1 or -1 with equal probability.
  double sign();

  std::uint64_t position() const { return counter_; }

  static std::uint64_t mix64(std::uint64_t z);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace concentro
