#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace sgl {

// Philox4x64-10 counter-based generator (Salmon et al.). Outputs are the words of
// successive blocks for counters 0, 1, 2, ... under a fixed key, so a stream is
// fully determined by its key and position.
class Philox4x64 {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  explicit Philox4x64(Key key) : key_(key) {}
  explicit Philox4x64(std::uint64_t seed) : key_{seed, 0} {}

  static Block block(Block counter, Key key);

  result_type operator()() {
    if (pos_ == 4) {
      buffer_ = block({counter_++, 0, 0, 0}, key_);
      pos_ = 0;
    }
    return buffer_[pos_++];
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  // Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  // Exponential with the given rate, by inversion.
  double exponential(double rate) { return -std::log(uniform()) / rate; }

 private:
  Key key_;
  std::uint64_t counter_ = 0;
  Block buffer_{};
  int pos_ = 4;
};

std::uint64_t splitmix64(std::uint64_t x);

// Seed of replica `index` under `master`; distinct indices give unrelated keys.
std::uint64_t replica_seed(std::uint64_t master, std::uint64_t index);

inline Philox4x64 replica_stream(std::uint64_t master, std::uint64_t index) {
  return Philox4x64(Philox4x64::Key{replica_seed(master, index), index});
}

// Worker count: SGL_THREADS if set (>= 1), else the hardware concurrency.
unsigned thread_count();

}  // namespace sgl
