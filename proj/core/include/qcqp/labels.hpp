#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcqp/conic.hpp"
#include "qcqp/features.hpp"

namespace qcqp::labels {

// Relative difference between two relaxation values, or the reason the
// sample must be dropped. Relaxation 1 is the cheaper one (LP); positive
// delta means it gives the stronger (larger) bound.
struct DeltaOutcome {
  std::optional<double> delta;
  std::string drop_reason;  // nonempty exactly when delta is absent
};

double delta_from_values(double z1, double z2);
DeltaOutcome compute_delta(const conic::RelaxationResult& r1,
                           const conic::RelaxationResult& r2);

int classify_label(double delta, double eps_prime);

struct LabeledSample {
  std::string instance_id;
  features::FeatureVector features;
  double z1 = 0.0;
  double z2 = 0.0;
  double delta = 0.0;
  int label = 0;
  conic::SolveStatus status1 = conic::SolveStatus::NumericalFailure;
  conic::SolveStatus status2 = conic::SolveStatus::NumericalFailure;
};

struct ClassificationMetrics {
  double accuracy = 0.0;
  double precision = 0.0;  // support weighted over the classes present
  double recall = 0.0;
  double f1 = 0.0;
};

struct RegressionMetrics {
  double mae = 0.0;
  double mse = 0.0;
  double rmse = 0.0;
  double r2 = 0.0;
  double r_accuracy = 0.0;
};

ClassificationMetrics metrics_classification(const std::vector<int>& y,
                                             const std::vector<int>& yhat);
RegressionMetrics metrics_regression(const Vector& y, const Vector& yhat,
                                     double eps = 0.1);

}  // namespace qcqp::labels
