#include "qcqp/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcqp/graphs.hpp"
#include "qcqp/linalg.hpp"

namespace qcqp::features {

namespace {

const char* kPatternNames[6] = {"diagonal", "hollow", "bipartite",
                                "tree",     "chordal", "planar"};
const char* kStatNames[7] = {"min", "max",              "avg", "third_moment",
                             "iqr", "outlier_fraction", "cv"};
const char* kPropNames[5] = {"neg_count_over_n", "neg_ratio", "lambda_min",
                             "lambda_max", "rank"};

double negativity_cut(const Vector& x) { return -1e-9 * std::max(1.0, x.cwiseAbs().maxCoeff()); }

// Linear interpolation between order statistics of the ascending vector.
double quantile_sorted(const Vector& x, double p) {
  const int n = static_cast<int>(x.size());
  const double pos = p * (n - 1);
  const int lo = static_cast<int>(std::floor(pos));
  if (lo >= n - 1) return x[n - 1];
  const double frac = pos - lo;
  return x[lo] + frac * (x[lo + 1] - x[lo]);
}

struct MatrixSummary {
  Vector eigenvalues;  // descending
  int neg_count = 0;
  int rank = 0;
  std::array<double, 6> flags{};
};

MatrixSummary summarize(const Matrix& a) {
  MatrixSummary s;
  s.eigenvalues = linalg::eig_sym(a).eigenvalues;
  s.neg_count = linalg::count_negative_eigenvalues(s.eigenvalues);
  s.rank = linalg::numeric_rank(s.eigenvalues);
  s.flags = graphs::pattern_flags(a).as_doubles();
  return s;
}

}  // namespace

std::string_view schema_name(Schema s) {
  switch (s) {
    case Schema::FDD: return "fdd";
    case Schema::SDD: return "sdd";
    case Schema::DI: return "di";
  }
  return "unknown";
}

Schema schema_from_name(std::string_view name) {
  if (name == "fdd") return Schema::FDD;
  if (name == "sdd") return Schema::SDD;
  if (name == "di") return Schema::DI;
  throw std::invalid_argument("unknown feature schema: " + std::string(name));
}

double neg_ratio(const Vector& x) {
  const double norm1 = x.cwiseAbs().sum();
  if (!(norm1 > 0.0)) throw ZeroVectorError("negative-share ratio of a zero vector");
  const double cut = negativity_cut(x);
  double neg = 0.0;
  for (int i = 0; i < x.size(); ++i)
    if (x[i] < cut) neg += std::abs(x[i]);
  return neg / norm1;
}

std::array<double, 7> stats_q(const Vector& x) {
  const int n = static_cast<int>(x.size());
  Vector sorted = x;
  std::sort(sorted.data(), sorted.data() + n);
  const double mn = sorted[0];
  const double mx = sorted[n - 1];
  const double mu = sorted.mean();
  double m3 = 0.0;
  double var = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = sorted[i] - mu;
    m3 += d * d * d;
    var += d * d;
  }
  m3 /= n;
  var /= n;
  const double q1 = quantile_sorted(sorted, 0.25);
  const double q3 = quantile_sorted(sorted, 0.75);
  const double iqr = q3 - q1;
  const double lo_fence = q1 - 1.5 * iqr;
  const double hi_fence = q3 + 1.5 * iqr;
  int outliers = 0;
  for (int i = 0; i < n; ++i)
    if (sorted[i] < lo_fence || sorted[i] > hi_fence) ++outliers;
  const double cv = std::abs(mu) <= 1e-12 ? 0.0 : std::sqrt(var) / mu;
  return {mn, mx, mu, m3, iqr, static_cast<double>(outliers) / n, cv};
}

double proportion_eq(const Vector& x, double alpha) {
  int hits = 0;
  for (int i = 0; i < x.size(); ++i)
    if (std::abs(x[i] - alpha) <= 1e-9) ++hits;
  return static_cast<double>(hits) / static_cast<double>(x.size());
}

int fdd_length(int n, int m) { return (n + 8) * (m + 1) + 1; }

int sdd_length(int m) { return 11 * (m + 1) + 1; }

std::vector<std::string> feature_names(Schema schema, int n, int m) {
  std::vector<std::string> names;
  auto matrix_tag = [](int k) { return "A" + std::to_string(k); };
  switch (schema) {
    case Schema::FDD:
      names.reserve(fdd_length(n, m));
      for (int k = 0; k <= m; ++k) {
        const std::string tag = matrix_tag(k);
        for (int j = 1; j <= n; ++j) names.push_back(tag + "_lambda_" + std::to_string(j));
        names.push_back(tag + "_neg_count");
        names.push_back(tag + "_rank");
        for (const char* p : kPatternNames) names.push_back(tag + "_is_" + p);
      }
      names.push_back("bounds_exist");
      break;
    case Schema::SDD:
      names.reserve(sdd_length(m));
      for (int k = 0; k <= m; ++k) {
        const std::string tag = matrix_tag(k);
        names.push_back(tag + "_neg_count_over_n");
        names.push_back(tag + "_neg_ratio");
        names.push_back(tag + "_lambda_min");
        names.push_back(tag + "_lambda_max");
        names.push_back(tag + "_rank_over_n");
        for (const char* p : kPatternNames) names.push_back(tag + "_is_" + p);
      }
      names.push_back("bounds_exist");
      break;
    case Schema::DI:
      names.reserve(kDiLength);
      names.push_back("A0_neg_count_over_n");
      names.push_back("A0_neg_ratio");
      names.push_back("A0_lambda_min");
      names.push_back("A0_lambda_max");
      names.push_back("A0_rank_over_n");
      names.push_back("convex_fraction");
      names.push_back("concave_fraction");
      names.push_back("bounds_exist");
      for (const char* prop : kPropNames)
        for (const char* stat : kStatNames)
          names.push_back(std::string(prop) + "_" + stat);
      for (const char* p : kPatternNames) names.push_back(std::string("A0_is_") + p);
      for (const char* p : kPatternNames) names.push_back(std::string("fraction_") + p);
      break;
  }
  return names;
}

FeatureVector extract(const QcqpInstance& inst, Schema schema) {
  const int n = inst.n;
  const int m = inst.m;
  FeatureVector out;
  out.schema = schema;
  out.n = n;
  out.m = m;
  out.names = feature_names(schema, n, m);

  std::vector<MatrixSummary> sums;
  sums.reserve(m + 1);
  for (int k = 0; k <= m; ++k) sums.push_back(summarize(inst.A[k]));
  const double bounds = inst.bounds_exist ? 1.0 : 0.0;

  std::vector<double> v;
  v.reserve(out.names.size());
  switch (schema) {
    case Schema::FDD:
      for (int k = 0; k <= m; ++k) {
        const MatrixSummary& s = sums[k];
        for (int j = 0; j < n; ++j) v.push_back(s.eigenvalues[j]);
        v.push_back(s.neg_count);
        v.push_back(s.rank);
        v.insert(v.end(), s.flags.begin(), s.flags.end());
      }
      v.push_back(bounds);
      break;
    case Schema::SDD:
      for (int k = 0; k <= m; ++k) {
        const MatrixSummary& s = sums[k];
        v.push_back(static_cast<double>(s.neg_count) / n);
        v.push_back(neg_ratio(s.eigenvalues));
        v.push_back(s.eigenvalues[n - 1]);
        v.push_back(s.eigenvalues[0]);
        v.push_back(static_cast<double>(s.rank) / n);
        v.insert(v.end(), s.flags.begin(), s.flags.end());
      }
      v.push_back(bounds);
      break;
    case Schema::DI: {
      Vector xi(m), theta(m), lmin(m), lmax(m), ranks(m);
      std::array<Vector, 6> phi;
      for (auto& p : phi) p.resize(m);
      for (int k = 1; k <= m; ++k) {
        const MatrixSummary& s = sums[k];
        xi[k - 1] = static_cast<double>(s.neg_count) / n;
        theta[k - 1] = neg_ratio(s.eigenvalues);
        lmin[k - 1] = s.eigenvalues[n - 1];
        lmax[k - 1] = s.eigenvalues[0];
        ranks[k - 1] = s.rank;
        for (int f = 0; f < 6; ++f) phi[f][k - 1] = s.flags[f];
      }
      const MatrixSummary& s0 = sums[0];
      v.push_back(static_cast<double>(s0.neg_count) / n);
      v.push_back(neg_ratio(s0.eigenvalues));
      v.push_back(s0.eigenvalues[n - 1]);
      v.push_back(s0.eigenvalues[0]);
      v.push_back(static_cast<double>(s0.rank) / n);
      v.push_back(proportion_eq(theta, 0.0));
      v.push_back(proportion_eq(theta, 1.0));
      v.push_back(bounds);
      for (const Vector* prop : {&xi, &theta, &lmin, &lmax, &ranks}) {
        const auto st = stats_q(*prop);
        v.insert(v.end(), st.begin(), st.end());
      }
      v.insert(v.end(), s0.flags.begin(), s0.flags.end());
      for (int f = 0; f < 6; ++f) v.push_back(proportion_eq(phi[f], 1.0));
      break;
    }
  }
  out.values = Eigen::Map<const Vector>(v.data(), static_cast<int>(v.size()));
  return out;
}

}  // namespace qcqp::features
