#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qcqp/instance.hpp"

namespace qcqp::learn {

enum class ModelKind { RfClassifier, RfRegressor, GbClassifier, GbRegressor };

std::string_view kind_name(ModelKind kind);
ModelKind kind_from_name(std::string_view name);
bool is_classifier(ModelKind kind);

struct Hyperparams {
  int trees = 100;
  int max_depth = 8;  // 0 means unbounded
  double learning_rate = 0.1;
  int min_samples_leaf = 1;

  bool operator==(const Hyperparams&) const = default;
};

// Flat node storage; children index into the same vector. feature < 0 marks
// a leaf. Leaf value is a class-1 probability (forest classifier), a raw
// additive step (boosting), or a mean target (regression).
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct Tree {
  std::vector<TreeNode> nodes;
};

double tree_predict(const Tree& tree, const Vector& x);

// Single CART fit over all features, no resampling.
Tree fit_tree(const Matrix& X, const Vector& y, bool classification,
              const Hyperparams& hp);

struct TreeEnsembleModel {
  ModelKind kind = ModelKind::GbClassifier;
  Hyperparams params;
  std::uint64_t seed = 0;
  double base_score = 0.0;  // boosting initial raw score
  std::vector<Tree> trees;
  std::vector<std::string> feature_names;
  Vector importances;  // per-feature impurity decrease, averaged over trees
};

// X holds one sample per row; y holds class labels in {0,1} or real targets.
TreeEnsembleModel fit(const Matrix& X, const Vector& y, ModelKind kind,
                      const Hyperparams& hp, std::uint64_t seed,
                      const std::vector<std::string>& feature_names = {},
                      int workers = 1);

// Classifier: probability of label 1. Regressor: prediction clamped to
// [-1, 1]. Throws on a feature-count mismatch with the manifest.
double predict_value(const TreeEnsembleModel& model, const Vector& x);
int predict_label(const TreeEnsembleModel& model, const Vector& x);
Vector predict_batch(const TreeEnsembleModel& model, const Matrix& X);

std::string model_to_json(const TreeEnsembleModel& model);
TreeEnsembleModel model_from_json(const std::string& text);
void save_model(const TreeEnsembleModel& model, const std::string& path);
TreeEnsembleModel load_model(const std::string& path);

std::vector<Hyperparams> default_grid(ModelKind kind);

struct GridRow {
  Hyperparams params;
  double score = 0.0;
};

struct GridSearchResult {
  Hyperparams best;
  double best_score = 0.0;
  std::vector<GridRow> rows;  // one per grid point, in grid order
};

// Exhaustive evaluation; classification scored by validation accuracy,
// regression by the sign-match rate at eps = 0.1. Ties keep the earlier
// grid point.
GridSearchResult grid_search(const Matrix& X_train, const Vector& y_train,
                             const Matrix& X_val, const Vector& y_val,
                             ModelKind kind,
                             const std::vector<Hyperparams>& grid,
                             std::uint64_t seed, int workers = 1);

}  // namespace qcqp::learn
