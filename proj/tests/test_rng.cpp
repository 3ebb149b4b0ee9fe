#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "qcqp/rng.hpp"

using qcqp::RngStream;

TEST_SUITE("rng") {

TEST_CASE("same seed and stream reproduce the sequence") {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 50; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct streams differ") {
  RngStream a(42, 0), b(42, 1), c(43, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 20; ++i) {
    std::uint64_t va = a.next_u64();
    if (va == b.next_u64()) ++same_ab;
    RngStream tmp(43, 0);
    (void)tmp;
    if (va == c.next_u64()) ++same_ac;
  }
  CHECK(same_ab == 0);
  CHECK(same_ac == 0);
}

TEST_CASE("stream draws are independent of other streams having run") {
  RngStream solo(99, 5);
  std::vector<std::uint64_t> expect;
  for (int i = 0; i < 10; ++i) expect.push_back(solo.next_u64());

  // Consuming stream 4 first must not shift stream 5.
  RngStream other(99, 4);
  for (int i = 0; i < 17; ++i) other.next_u64();
  RngStream again(99, 5);
  for (int i = 0; i < 10; ++i) CHECK(again.next_u64() == expect[i]);
}

TEST_CASE("uniform stays in [0,1) and fills the range") {
  RngStream r(1, 0);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double v = r.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("uniform_int covers the inclusive range") {
  RngStream r(2, 0);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    auto v = r.uniform_int(-10, 10);
    CHECK(v >= -10);
    CHECK(v <= 10);
    seen.insert(v);
  }
  CHECK(seen.size() == 21);
}

TEST_CASE("normal has sane moments") {
  RngStream r(3, 0);
  double sum = 0.0, sq = 0.0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    double v = r.normal();
    sum += v;
    sq += v * v;
  }
  double mean = sum / n;
  double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("shuffle yields a permutation") {
  RngStream r(4, 0);
  std::vector<int> v(30);
  for (int i = 0; i < 30; ++i) v[i] = i;
  r.shuffle(v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 30; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("sample_without_replacement returns distinct in-range values") {
  RngStream r(5, 0);
  auto s = r.sample_without_replacement(12, 7);
  CHECK(s.size() == 7);
  std::set<int> uniq(s.begin(), s.end());
  CHECK(uniq.size() == 7);
  for (int v : s) {
    CHECK(v >= 0);
    CHECK(v < 12);
  }
  CHECK_THROWS(r.sample_without_replacement(3, 4));
}

}  // TEST_SUITE
