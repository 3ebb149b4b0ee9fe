#include "qcqp/learn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "qcqp/io.hpp"
#include "qcqp/labels.hpp"
#include "qcqp/parallel.hpp"
#include "qcqp/rng.hpp"

namespace qcqp::learn {

namespace {

using nlohmann::json;

constexpr double kGainTieTol = 1e-12;

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

double gini(double count1, double n) {
  const double p1 = count1 / n;
  const double p0 = 1.0 - p1;
  return 1.0 - p0 * p0 - p1 * p1;
}

struct TreeBuilder {
  const Matrix& X;
  const Vector& y;
  bool classification = false;
  int min_leaf = 1;
  int max_depth = 0;  // 0 = unbounded
  int mtry = 0;       // 0 = all features
  RngStream* rng = nullptr;
  Vector* importance = nullptr;
  double n_root = 1.0;

  std::vector<TreeNode> nodes;
  std::vector<std::pair<double, double>> scratch;  // (feature value, target)
  std::vector<int> feat_pool;

  int build(std::vector<int>& idx, int lo, int hi, int depth) {
    const int n = hi - lo;
    double count1 = 0.0, sum = 0.0;
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -ymin;
    for (int i = lo; i < hi; ++i) {
      const double t = y[idx[i]];
      sum += t;
      count1 += t;
      ymin = std::min(ymin, t);
      ymax = std::max(ymax, t);
    }
    const double leaf_value = classification ? count1 / n : sum / n;
    const bool pure = classification ? (count1 == 0.0 || count1 == n) : (ymin == ymax);
    if (pure || n < 2 * min_leaf || (max_depth > 0 && depth >= max_depth))
      return make_leaf(leaf_value);

    const int p = static_cast<int>(X.cols());
    feat_pool.resize(p);
    for (int f = 0; f < p; ++f) feat_pool[f] = f;
    int n_feats = p;
    if (mtry > 0 && mtry < p && rng) {
      for (int i = 0; i < mtry; ++i) {
        const int j = i + static_cast<int>(rng->uniform_int(0, p - 1 - i));
        std::swap(feat_pool[i], feat_pool[j]);
      }
      n_feats = mtry;
      std::sort(feat_pool.begin(), feat_pool.begin() + n_feats);
    }

    const double parent =
        classification ? gini(count1, n) : node_variance(idx, lo, hi, sum, n);
    bool found = false;
    int best_feature = -1;
    double best_threshold = 0.0, best_gain = 0.0;
    for (int fi = 0; fi < n_feats; ++fi) {
      const int f = feat_pool[fi];
      scratch.resize(n);
      for (int i = lo; i < hi; ++i)
        scratch[i - lo] = {X(idx[i], f), y[idx[i]]};
      std::sort(scratch.begin(), scratch.end());
      if (scratch.front().first == scratch.back().first) continue;
      double c1 = 0.0, s = 0.0, q = 0.0;
      for (int k = 1; k < n; ++k) {
        const double t = scratch[k - 1].second;
        c1 += t;
        s += t;
        q += t * t;
        if (scratch[k].first == scratch[k - 1].first) continue;
        if (k < min_leaf || n - k < min_leaf) continue;
        double gain;
        if (classification) {
          gain = parent - (k * gini(c1, k) + (n - k) * gini(count1 - c1, n - k)) / n;
        } else {
          const double var_l = q / k - (s / k) * (s / k);
          const double sr = sum - s;
          const double qr = total_sumsq - q;
          const double var_r = qr / (n - k) - (sr / (n - k)) * (sr / (n - k));
          gain = parent - (k * var_l + (n - k) * var_r) / n;
        }
        if (!found || gain > best_gain + kGainTieTol * (1.0 + std::abs(best_gain))) {
          found = true;
          best_feature = f;
          best_gain = gain;
          double thr = scratch[k - 1].first +
                       (scratch[k].first - scratch[k - 1].first) / 2.0;
          if (!(thr < scratch[k].first)) thr = scratch[k - 1].first;
          best_threshold = thr;
        }
      }
    }
    if (!found) return make_leaf(leaf_value);

    if (importance)
      (*importance)[best_feature] += (n / n_root) * best_gain;

    const auto mid_it = std::stable_partition(
        idx.begin() + lo, idx.begin() + hi,
        [&](int i) { return X(i, best_feature) <= best_threshold; });
    const int mid = static_cast<int>(mid_it - idx.begin());
    if (mid == lo || mid == hi) return make_leaf(leaf_value);

    const int id = static_cast<int>(nodes.size());
    nodes.push_back({best_feature, best_threshold, -1, -1, leaf_value});
    const int left = build(idx, lo, mid, depth + 1);
    const int right = build(idx, mid, hi, depth + 1);
    nodes[id].left = left;
    nodes[id].right = right;
    return id;
  }

  double node_variance(const std::vector<int>& idx, int lo, int hi, double sum,
                       int n) {
    double q = 0.0;
    for (int i = lo; i < hi; ++i) q += y[idx[i]] * y[idx[i]];
    total_sumsq = q;
    const double mean = sum / n;
    return q / n - mean * mean;
  }

  int make_leaf(double value) {
    nodes.push_back({-1, 0.0, -1, -1, value});
    return static_cast<int>(nodes.size()) - 1;
  }

  double total_sumsq = 0.0;
};

int tree_leaf_index(const Tree& tree, const Vector& x) {
  int id = 0;
  while (tree.nodes[id].feature >= 0) {
    const TreeNode& nd = tree.nodes[id];
    id = x[nd.feature] <= nd.threshold ? nd.left : nd.right;
  }
  return id;
}

int mtry_for(ModelKind kind, int p) {
  if (kind == ModelKind::RfClassifier)
    return std::max(1, static_cast<int>(std::sqrt(static_cast<double>(p))));
  return std::max(1, p / 3);
}

void check_fit_inputs(const Matrix& X, const Vector& y, ModelKind kind,
                      const Hyperparams& hp,
                      const std::vector<std::string>& names) {
  if (X.rows() == 0 || X.cols() == 0)
    throw std::invalid_argument("empty training data");
  if (X.rows() != y.size())
    throw std::invalid_argument("sample count mismatch between X and y");
  if (hp.trees < 1 || hp.min_samples_leaf < 1 || hp.max_depth < 0 ||
      !(hp.learning_rate >= 0.0))
    throw std::invalid_argument("invalid hyperparameters");
  if (!names.empty() && names.size() != static_cast<std::size_t>(X.cols()))
    throw std::invalid_argument("feature name manifest length mismatch");
  if (is_classifier(kind)) {
    bool saw0 = false, saw1 = false;
    for (int i = 0; i < y.size(); ++i) {
      if (y[i] == 0.0)
        saw0 = true;
      else if (y[i] == 1.0)
        saw1 = true;
      else
        throw std::invalid_argument("classification labels must be 0 or 1");
    }
    if (!saw0 || !saw1)
      throw std::invalid_argument("degenerate dataset: single class present");
  }
}

std::vector<std::string> manifest_or_default(const std::vector<std::string>& names,
                                             int p) {
  if (!names.empty()) return names;
  std::vector<std::string> out;
  out.reserve(p);
  for (int f = 0; f < p; ++f) out.push_back("f" + std::to_string(f));
  return out;
}

void fit_forest(TreeEnsembleModel& model, const Matrix& X, const Vector& y,
                int workers) {
  const int n = static_cast<int>(X.rows());
  const int p = static_cast<int>(X.cols());
  const int T = model.params.trees;
  const int mtry = mtry_for(model.kind, p);
  const bool classify = model.kind == ModelKind::RfClassifier;
  model.trees.resize(T);
  std::vector<Vector> imps(T, Vector::Zero(p));
  parallel_for(T, workers, [&](int t) {
    RngStream rng(model.seed, static_cast<std::uint64_t>(t));
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i)
      idx[i] = static_cast<int>(rng.uniform_int(0, n - 1));
    TreeBuilder builder{X, y};
    builder.classification = classify;
    builder.min_leaf = model.params.min_samples_leaf;
    builder.max_depth = model.params.max_depth;
    builder.mtry = mtry;
    builder.rng = &rng;
    builder.importance = &imps[t];
    builder.n_root = static_cast<double>(n);
    builder.build(idx, 0, n, 0);
    model.trees[t].nodes = std::move(builder.nodes);
  });
  model.importances = Vector::Zero(p);
  for (const Vector& imp : imps) model.importances += imp;
  model.importances /= static_cast<double>(T);
}

void fit_boosted(TreeEnsembleModel& model, const Matrix& X, const Vector& y) {
  const int n = static_cast<int>(X.rows());
  const int p = static_cast<int>(X.cols());
  const bool classify = model.kind == ModelKind::GbClassifier;
  if (classify) {
    const double pbar = y.mean();
    model.base_score = std::log(pbar / (1.0 - pbar));
  } else {
    model.base_score = y.mean();
  }
  Vector raw = Vector::Constant(n, model.base_score);
  Vector residual(n), prob(n);
  model.importances = Vector::Zero(p);
  std::vector<int> idx(n);
  for (int t = 0; t < model.params.trees; ++t) {
    if (classify) {
      for (int i = 0; i < n; ++i) prob[i] = sigmoid(raw[i]);
      residual = y - prob;
    } else {
      residual = y - raw;
    }
    if (residual.cwiseAbs().maxCoeff() == 0.0) break;

    for (int i = 0; i < n; ++i) idx[i] = i;
    TreeBuilder builder{X, residual};
    builder.min_leaf = model.params.min_samples_leaf;
    builder.max_depth = model.params.max_depth;
    builder.importance = &model.importances;
    builder.n_root = static_cast<double>(n);
    builder.build(idx, 0, n, 0);
    Tree tree{std::move(builder.nodes)};

    if (classify) {
      // Newton step per leaf for logistic loss.
      std::vector<double> num(tree.nodes.size(), 0.0), den(num);
      std::vector<int> leaf_of(n);
      for (int i = 0; i < n; ++i) {
        const int leaf = tree_leaf_index(tree, X.row(i).transpose());
        leaf_of[i] = leaf;
        num[leaf] += residual[i];
        den[leaf] += prob[i] * (1.0 - prob[i]);
      }
      for (std::size_t k = 0; k < tree.nodes.size(); ++k)
        if (tree.nodes[k].feature < 0)
          tree.nodes[k].value = num[k] / std::max(den[k], 1e-12);
      for (int i = 0; i < n; ++i)
        raw[i] += model.params.learning_rate * tree.nodes[leaf_of[i]].value;
    } else {
      for (int i = 0; i < n; ++i)
        raw[i] += model.params.learning_rate *
                  tree_predict(tree, X.row(i).transpose());
    }
    model.trees.push_back(std::move(tree));
  }
  if (!model.trees.empty())
    model.importances /= static_cast<double>(model.trees.size());
}

double raw_score(const TreeEnsembleModel& model, const Vector& x) {
  const bool forest = model.kind == ModelKind::RfClassifier ||
                      model.kind == ModelKind::RfRegressor;
  if (forest) {
    // Value-sorted accumulation keeps the average independent of tree order.
    std::vector<double> vals;
    vals.reserve(model.trees.size());
    for (const Tree& t : model.trees) vals.push_back(tree_predict(t, x));
    std::sort(vals.begin(), vals.end());
    double sum = 0.0;
    for (double v : vals) sum += v;
    return sum / static_cast<double>(vals.size());
  }
  double sum = model.base_score;
  for (const Tree& t : model.trees)
    sum += model.params.learning_rate * tree_predict(t, x);
  return sum;
}

json node_to_json(const Tree& tree, int id) {
  const TreeNode& nd = tree.nodes[id];
  if (nd.feature < 0) return json{{"value", nd.value}};
  return json{{"feature", nd.feature},
              {"threshold", nd.threshold},
              {"left", node_to_json(tree, nd.left)},
              {"right", node_to_json(tree, nd.right)}};
}

int node_from_json(const json& j, Tree& tree) {
  const int id = static_cast<int>(tree.nodes.size());
  tree.nodes.push_back({});
  if (j.contains("feature")) {
    const int feature = j.at("feature").get<int>();
    const double threshold = j.at("threshold").get<double>();
    if (feature < 0) throw ParseError("internal node with negative feature", 0);
    const int left = node_from_json(j.at("left"), tree);
    const int right = node_from_json(j.at("right"), tree);
    tree.nodes[id] = {feature, threshold, left, right, 0.0};
  } else {
    tree.nodes[id].value = j.at("value").get<double>();
  }
  return id;
}

}  // namespace

std::string_view kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::RfClassifier: return "rf_classifier";
    case ModelKind::RfRegressor: return "rf_regressor";
    case ModelKind::GbClassifier: return "gb_classifier";
    case ModelKind::GbRegressor: return "gb_regressor";
  }
  return "unknown";
}

ModelKind kind_from_name(std::string_view name) {
  if (name == "rf_classifier") return ModelKind::RfClassifier;
  if (name == "rf_regressor") return ModelKind::RfRegressor;
  if (name == "gb_classifier") return ModelKind::GbClassifier;
  if (name == "gb_regressor") return ModelKind::GbRegressor;
  throw std::invalid_argument("unknown model kind: " + std::string(name));
}

bool is_classifier(ModelKind kind) {
  return kind == ModelKind::RfClassifier || kind == ModelKind::GbClassifier;
}

double tree_predict(const Tree& tree, const Vector& x) {
  return tree.nodes[tree_leaf_index(tree, x)].value;
}

Tree fit_tree(const Matrix& X, const Vector& y, bool classification,
              const Hyperparams& hp) {
  if (X.rows() == 0 || X.rows() != y.size())
    throw std::invalid_argument("empty training data or size mismatch");
  const int n = static_cast<int>(X.rows());
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  TreeBuilder builder{X, y};
  builder.classification = classification;
  builder.min_leaf = hp.min_samples_leaf;
  builder.max_depth = hp.max_depth;
  builder.build(idx, 0, n, 0);
  return Tree{std::move(builder.nodes)};
}

TreeEnsembleModel fit(const Matrix& X, const Vector& y, ModelKind kind,
                      const Hyperparams& hp, std::uint64_t seed,
                      const std::vector<std::string>& feature_names,
                      int workers) {
  check_fit_inputs(X, y, kind, hp, feature_names);
  TreeEnsembleModel model;
  model.kind = kind;
  model.params = hp;
  model.seed = seed;
  model.feature_names = manifest_or_default(feature_names,
                                            static_cast<int>(X.cols()));
  if (kind == ModelKind::RfClassifier || kind == ModelKind::RfRegressor)
    fit_forest(model, X, y, workers);
  else
    fit_boosted(model, X, y);
  return model;
}

double predict_value(const TreeEnsembleModel& model, const Vector& x) {
  if (x.size() != static_cast<int>(model.feature_names.size()))
    throw std::invalid_argument("feature vector does not match the manifest");
  const double raw = raw_score(model, x);
  if (model.kind == ModelKind::GbClassifier) return sigmoid(raw);
  if (model.kind == ModelKind::RfClassifier) return raw;
  return std::clamp(raw, -1.0, 1.0);
}

int predict_label(const TreeEnsembleModel& model, const Vector& x) {
  if (!is_classifier(model.kind))
    throw std::invalid_argument("predict_label requires a classifier");
  return predict_value(model, x) > 0.5 ? 1 : 0;
}

Vector predict_batch(const TreeEnsembleModel& model, const Matrix& X) {
  Vector out(X.rows());
  for (int i = 0; i < X.rows(); ++i)
    out[i] = predict_value(model, X.row(i).transpose());
  return out;
}

std::string model_to_json(const TreeEnsembleModel& model) {
  json j;
  j["format"] = "qcqp-tree-ensemble";
  j["version"] = 1;
  j["kind"] = std::string(kind_name(model.kind));
  j["seed"] = model.seed;
  j["base_score"] = model.base_score;
  j["hyperparams"] = {{"trees", model.params.trees},
                      {"max_depth", model.params.max_depth},
                      {"learning_rate", model.params.learning_rate},
                      {"min_samples_leaf", model.params.min_samples_leaf}};
  j["feature_names"] = model.feature_names;
  j["importances"] = std::vector<double>(
      model.importances.data(), model.importances.data() + model.importances.size());
  json trees = json::array();
  for (const Tree& t : model.trees) trees.push_back(node_to_json(t, 0));
  j["trees"] = std::move(trees);
  return j.dump(2) + "\n";
}

TreeEnsembleModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  try {
    if (j.at("format").get<std::string>() != "qcqp-tree-ensemble" ||
        j.at("version").get<int>() != 1)
      throw VersionError("unsupported model file format or version");
    TreeEnsembleModel model;
    model.kind = kind_from_name(j.at("kind").get<std::string>());
    model.seed = j.at("seed").get<std::uint64_t>();
    model.base_score = j.at("base_score").get<double>();
    const json& hp = j.at("hyperparams");
    model.params.trees = hp.at("trees").get<int>();
    model.params.max_depth = hp.at("max_depth").get<int>();
    model.params.learning_rate = hp.at("learning_rate").get<double>();
    model.params.min_samples_leaf = hp.at("min_samples_leaf").get<int>();
    model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    const auto imps = j.at("importances").get<std::vector<double>>();
    model.importances = Eigen::Map<const Vector>(imps.data(),
                                                 static_cast<int>(imps.size()));
    for (const json& tj : j.at("trees")) {
      Tree tree;
      node_from_json(tj, tree);
      model.trees.push_back(std::move(tree));
    }
    return model;
  } catch (const json::exception& e) {
    throw ParseError(e.what(), 0);
  }
}

void save_model(const TreeEnsembleModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open model file for writing: " + path);
  out << model_to_json(model);
  if (!out) throw std::runtime_error("failed writing model file: " + path);
}

TreeEnsembleModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return model_from_json(text);
}

std::vector<Hyperparams> default_grid(ModelKind kind) {
  const bool boosted =
      kind == ModelKind::GbClassifier || kind == ModelKind::GbRegressor;
  const std::vector<double> rates = boosted ? std::vector<double>{0.05, 0.1, 0.3}
                                            : std::vector<double>{0.1};
  std::vector<Hyperparams> grid;
  for (int trees : {100, 300})
    for (int depth : {4, 8, 0})
      for (double lr : rates)
        for (int leaf : {1, 5}) grid.push_back({trees, depth, lr, leaf});
  return grid;
}

GridSearchResult grid_search(const Matrix& X_train, const Vector& y_train,
                             const Matrix& X_val, const Vector& y_val,
                             ModelKind kind,
                             const std::vector<Hyperparams>& grid,
                             std::uint64_t seed, int workers) {
  if (grid.empty()) throw std::invalid_argument("empty hyperparameter grid");
  if (X_val.rows() == 0 || X_val.rows() != y_val.size())
    throw std::invalid_argument("empty validation data or size mismatch");
  GridSearchResult result;
  result.rows.resize(grid.size());
  parallel_for(static_cast<int>(grid.size()), workers, [&](int g) {
    const TreeEnsembleModel model =
        fit(X_train, y_train, kind, grid[g], seed, {}, 1);
    const Vector pred = predict_batch(model, X_val);
    double score;
    if (is_classifier(kind)) {
      double hits = 0.0;
      for (int i = 0; i < pred.size(); ++i)
        hits += (pred[i] > 0.5 ? 1.0 : 0.0) == y_val[i];
      score = hits / static_cast<double>(pred.size());
    } else {
      score = labels::metrics_regression(y_val, pred, 0.1).r_accuracy;
    }
    result.rows[g] = {grid[g], score};
  });
  result.best = result.rows[0].params;
  result.best_score = result.rows[0].score;
  for (const GridRow& row : result.rows) {
    if (row.score > result.best_score) {
      result.best = row.params;
      result.best_score = row.score;
    }
  }
  return result;
}

}  // namespace qcqp::learn
