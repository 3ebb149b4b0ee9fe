#include "qcqp/labels.hpp"

#include <cmath>
#include <stdexcept>

namespace qcqp::labels {

namespace {

constexpr double kDenomFloor = 1e-12;

double sign_plus(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

double delta_from_values(double z1, double z2) {
  const double denom = std::abs(z1) + std::abs(z2);
  if (denom <= kDenomFloor) return 0.0;
  return (z1 - z2) / denom;
}

DeltaOutcome compute_delta(const conic::RelaxationResult& r1,
                           const conic::RelaxationResult& r2) {
  using conic::SolveStatus;
  const SolveStatus s1 = r1.status;
  const SolveStatus s2 = r2.status;
  const bool ok1 = s1 == SolveStatus::Optimal || s1 == SolveStatus::Unbounded;
  const bool ok2 = s2 == SolveStatus::Optimal || s2 == SolveStatus::Unbounded;
  if (!ok1 || !ok2) {
    DeltaOutcome out;
    out.drop_reason = "relaxation1=" + std::string(conic::status_name(s1)) +
                      " relaxation2=" + std::string(conic::status_name(s2));
    return out;
  }
  double delta = 0.0;
  if (s1 == SolveStatus::Optimal && s2 == SolveStatus::Optimal)
    delta = delta_from_values(r1.objective, r2.objective);
  else if (s1 == SolveStatus::Optimal)
    delta = 1.0;  // the costlier relaxation collapsed to an unbounded bound
  else if (s2 == SolveStatus::Optimal)
    delta = -1.0;
  return {delta, {}};
}

int classify_label(double delta, double eps_prime) {
  return delta > -eps_prime ? 1 : 0;
}

ClassificationMetrics metrics_classification(const std::vector<int>& y,
                                             const std::vector<int>& yhat) {
  if (y.size() != yhat.size()) throw std::invalid_argument("label length mismatch");
  if (y.empty()) throw std::invalid_argument("empty label vectors");
  const double n = static_cast<double>(y.size());
  ClassificationMetrics out;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] == yhat[i]) out.accuracy += 1.0;
  out.accuracy /= n;
  for (int cls : {0, 1}) {
    double tp = 0.0, fp = 0.0, fn = 0.0, support = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const bool truth = y[i] == cls;
      const bool pred = yhat[i] == cls;
      support += truth;
      tp += truth && pred;
      fp += !truth && pred;
      fn += truth && !pred;
    }
    const double prec = tp + fp > 0.0 ? tp / (tp + fp) : 0.0;
    const double rec = tp + fn > 0.0 ? tp / (tp + fn) : 0.0;
    const double f1 = prec + rec > 0.0 ? 2.0 * prec * rec / (prec + rec) : 0.0;
    const double w = support / n;
    out.precision += w * prec;
    out.recall += w * rec;
    out.f1 += w * f1;
  }
  return out;
}

RegressionMetrics metrics_regression(const Vector& y, const Vector& yhat,
                                     double eps) {
  if (y.size() != yhat.size()) throw std::invalid_argument("target length mismatch");
  if (y.size() == 0) throw std::invalid_argument("empty target vectors");
  const double n = static_cast<double>(y.size());
  RegressionMetrics out;
  const Vector err = y - yhat;
  out.mae = err.cwiseAbs().sum() / n;
  out.mse = err.squaredNorm() / n;
  out.rmse = std::sqrt(out.mse);
  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  const double ss_res = err.squaredNorm();
  if (ss_tot > 0.0)
    out.r2 = 1.0 - ss_res / ss_tot;
  else
    out.r2 = ss_res == 0.0 ? 1.0 : 0.0;
  double hits = 0.0;
  for (int i = 0; i < y.size(); ++i) {
    const bool same_sign = sign_plus(y[i]) == sign_plus(yhat[i]);
    const bool slack = -eps < y[i] && y[i] < 0.0 && yhat[i] > 0.0;
    hits += same_sign || slack;
  }
  out.r_accuracy = hits / n;
  return out;
}

}  // namespace qcqp::labels
