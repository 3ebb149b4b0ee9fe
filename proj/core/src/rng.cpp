#include "qcqp/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcqp {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// SplitMix64 finalizer. Full-avalanche mix of a 64-bit word.
std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

}  // namespace

std::uint64_t RngStream::derive_key(std::uint64_t master_seed,
                                    std::uint64_t stream_index) {
  std::uint64_t k = mix64(master_seed + kGolden);
  k = mix64(k ^ mix64(stream_index + 0x6a09e667f3bcc909ull));
  return k;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : key_(derive_key(master_seed, stream_index)), counter_(0) {}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: hi < lo");
  std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next_u64());  // full range
  // Modulo draw. Bias is range/2^64, irrelevant for the ranges used here.
  return lo + static_cast<std::int64_t>(next_u64() % range);
}

double RngStream::normal() {
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 < 1 so log1p(-u1) is finite
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<int> RngStream::sample_without_replacement(int population, int k) {
  if (k < 0 || k > population)
    throw std::invalid_argument("sample_without_replacement: bad k");
  std::vector<int> pool(population);
  for (int i = 0; i < population; ++i) pool[i] = i;
  std::vector<int> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) {
    std::int64_t j = uniform_int(i, population - 1);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace qcqp
