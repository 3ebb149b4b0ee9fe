#pragma once

#include <cstdint>
#include <vector>

namespace qcqp {

// Counter-based random stream. Every draw is a pure function of
// (master seed, stream index, counter), so per-instance sub-streams can be
// created and consumed in any order, including in parallel, without
// coordination. Regenerating stream i in isolation reproduces exactly what a
// batch run produced for stream i.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  static std::uint64_t derive_key(std::uint64_t master_seed,
                                  std::uint64_t stream_index);

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  // Uniform over the integers lo..hi inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(
          uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct values from 0..population-1, in draw order.
  std::vector<int> sample_without_replacement(int population, int k);

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace qcqp
