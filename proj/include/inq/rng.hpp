#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "inq/types.hpp"

namespace inq {

/// Deterministic random stream. Same seed, same platform => identical
/// sequence of draws, which the projection families rely on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0,1) with 53 bits of entropy.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller. A cached spare keeps the draw count even.
  double normal();

  cplx normal_c() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// FNV-1a over the tag bytes folded into the master seed, finalized with a
/// splitmix64 round. Used to derive independent per-claim streams.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          const std::vector<int>& dims);

}  // namespace inq
