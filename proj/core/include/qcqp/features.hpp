#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcqp/instance.hpp"

namespace qcqp::features {

// fdd: full per-eigenvalue layout, usable only at fixed (n, m).
// sdd: per-constraint spectral summaries, usable across n at fixed m.
// di: aggregate statistics over constraints, fixed 55 entries for any size.
enum class Schema { FDD, SDD, DI };

std::string_view schema_name(Schema s);
Schema schema_from_name(std::string_view name);

struct ZeroVectorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct FeatureVector {
  Schema schema = Schema::FDD;
  int n = 0;
  int m = 0;
  std::vector<std::string> names;
  Vector values;
};

// Share of the 1-norm carried by negative entries. Negativity uses the same
// relative threshold as the eigenvalue counting in linalg. Throws
// ZeroVectorError when the 1-norm vanishes.
double neg_ratio(const Vector& x);

// min, max, avg, third moment, interquartile range, outlier proportion,
// coefficient of variation. Quantiles interpolate linearly between order
// statistics; outliers lie strictly outside the 1.5 IQR fences; CV uses the
// population deviation and returns 0 when |mean| <= 1e-12.
std::array<double, 7> stats_q(const Vector& x);

// Fraction of entries within 1e-9 of alpha.
double proportion_eq(const Vector& x, double alpha);

int fdd_length(int n, int m);
int sdd_length(int m);
inline constexpr int kDiLength = 55;

std::vector<std::string> feature_names(Schema schema, int n, int m);

FeatureVector extract(const QcqpInstance& inst, Schema schema);

}  // namespace qcqp::features
