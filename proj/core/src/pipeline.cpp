#include "qcqp/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qcqp/conic.hpp"
#include "qcqp/generator.hpp"
#include "qcqp/io.hpp"
#include "qcqp/labels.hpp"
#include "qcqp/learn.hpp"
#include "qcqp/parallel.hpp"
#include "qcqp/relax.hpp"
#include "qcqp/rng.hpp"

namespace qcqp::pipeline {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing file: " + path);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> lines;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

bool fresh(const std::string& output, const std::string& stamp_path,
           const std::string& expected_stamp) {
  if (!fs::exists(output) || !fs::exists(stamp_path)) return false;
  return read_file(stamp_path) == expected_stamp;
}

std::string num(double v) { return json(v).dump(); }

// Objective values can be infinite (unbounded rays); JSON numbers cannot.
json extended(double v) {
  if (std::isinf(v)) return v > 0 ? json("+inf") : json("-inf");
  return json(v);
}

double from_extended(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ParseError("bad extended number: " + s, 0);
  }
  return j.get<double>();
}

std::string instances_path(const DatasetRef& ds) {
  return ds.dir + "/instances.jsonl";
}
std::string solves_path(const DatasetRef& ds) { return ds.dir + "/solves.jsonl"; }
std::string drops_path(const DatasetRef& ds) { return ds.dir + "/drops.jsonl"; }
std::string data_path(const DatasetRef& ds, features::Schema schema) {
  return ds.dir + "/data_" + std::string(features::schema_name(schema)) +
         ".jsonl";
}
std::string names_path(const DatasetRef& ds, features::Schema schema) {
  return ds.dir + "/data_" + std::string(features::schema_name(schema)) +
         ".names.json";
}
std::string feature_drops_path(const DatasetRef& ds, features::Schema schema) {
  return ds.dir + "/drops_" + std::string(features::schema_name(schema)) +
         ".jsonl";
}

[[noreturn]] void stage_fail(Stage stage, const std::string& where,
                             const std::string& what) {
  std::string msg = "stage " + std::string(stage_name(stage)) + " failed";
  if (!where.empty()) msg += " at " + where;
  msg += ": " + what;
  throw std::runtime_error(msg);
}

void run_generate(const config::Config& cfg, const DatasetRef& ds) {
  const std::string out = instances_path(ds);
  const std::string stamp_path = out + ".stamp";
  const std::string stamp = fnv1a_hex(
      "generate.v1|n=" + std::to_string(ds.spec.n) +
      "|m=" + std::to_string(ds.spec.m) +
      "|count=" + std::to_string(ds.spec.count) +
      "|seed=" + std::to_string(ds.master_seed));
  if (fresh(out, stamp_path, stamp)) return;

  gen::GenConfig gcfg;
  gcfg.n = ds.spec.n;
  gcfg.m = ds.spec.m;
  gcfg.N = ds.spec.count;
  gcfg.master_seed = ds.master_seed;
  std::vector<QcqpInstance> insts;
  try {
    insts = gen::gen_instance_batch(gcfg, cfg.workers);
  } catch (const std::exception& e) {
    stage_fail(Stage::Generate, "", e.what());
  }
  std::string text;
  for (const QcqpInstance& inst : insts)
    text += json::parse(instance_to_json(inst)).dump() + "\n";
  write_file(out, text);
  write_file(stamp_path, stamp);
}

std::vector<QcqpInstance> load_instances(const config::Config& cfg,
                                         const DatasetRef& ds) {
  const auto lines = read_lines(instances_path(ds));
  std::vector<QcqpInstance> insts(lines.size());
  parallel_for(static_cast<int>(lines.size()), cfg.workers,
               [&](int i) { insts[i] = instance_from_json(lines[i]); });
  return insts;
}

void run_solve(const config::Config& cfg, const DatasetRef& ds) {
  const std::string in_path = instances_path(ds);
  const std::string out = solves_path(ds);
  const std::string dout = drops_path(ds);
  const std::string stamp_path = out + ".stamp";
  const std::string input_bytes = read_file(in_path);
  const std::string stamp = fnv1a_hex(
      "solve.v1|" + fnv1a_hex(input_bytes) + "|tol=" + num(cfg.solver.tol) +
      "|max_iters=" + std::to_string(cfg.solver.max_iters) +
      "|step=" + num(cfg.solver.step_fraction) +
      "|cmp=" + std::string(config::comparison_name(cfg.comparison)));
  if (fresh(out, stamp_path, stamp) && fs::exists(dout)) return;

  const auto insts = load_instances(cfg, ds);
  const int n = static_cast<int>(insts.size());
  std::vector<std::string> solved(n), dropped(n);
  parallel_for(n, cfg.workers, [&](int i) {
    const QcqpInstance& inst = insts[i];
    try {
      const auto r1 = conic::solve(relax::build_lp(inst), cfg.solver);
      const auto prog2 = cfg.comparison == config::Comparison::LpVsSdp
                             ? relax::build_sdp(inst)
                             : relax::build_sdp_prime(inst);
      const auto r2 = conic::solve(prog2, cfg.solver);
      const auto outcome = labels::compute_delta(r1, r2);
      json rec{{"id", inst.instance_id},
               {"status1", std::string(conic::status_name(r1.status))},
               {"status2", std::string(conic::status_name(r2.status))},
               {"z1", extended(r1.objective)},
               {"z2", extended(r2.objective)},
               {"iters1", r1.iterations},
               {"iters2", r2.iterations}};
      if (outcome.delta.has_value()) {
        rec["delta"] = *outcome.delta;
        solved[i] = rec.dump();
      } else {
        dropped[i] =
            json{{"id", inst.instance_id},
                 {"status1", std::string(conic::status_name(r1.status))},
                 {"status2", std::string(conic::status_name(r2.status))},
                 {"reason", outcome.drop_reason}}
                .dump();
      }
    } catch (const std::exception& e) {
      stage_fail(Stage::Solve, "instance " + inst.instance_id, e.what());
    }
  });
  std::string solved_text, dropped_text;
  for (int i = 0; i < n; ++i) {
    if (!solved[i].empty()) solved_text += solved[i] + "\n";
    if (!dropped[i].empty()) dropped_text += dropped[i] + "\n";
  }
  write_file(out, solved_text);
  write_file(dout, dropped_text);
  write_file(stamp_path, stamp);
}

std::vector<features::Schema> active_schemas(const config::Config& cfg) {
  std::vector<features::Schema> out;
  for (features::Schema s : cfg.schemas)
    if (schema_applicable(s, cfg)) out.push_back(s);
  return out;
}

void run_featurize(const config::Config& cfg, const DatasetRef& ds) {
  const auto schemas = active_schemas(cfg);
  if (schemas.empty()) return;
  const std::string instances_bytes = read_file(instances_path(ds));
  const std::string solves_bytes = read_file(solves_path(ds));
  const std::string input_hash =
      fnv1a_hex(instances_bytes) + "|" + fnv1a_hex(solves_bytes);

  struct SolveRow {
    double z1, z2, delta;
  };
  std::map<std::string, SolveRow> by_id;
  for (const std::string& line : read_lines(solves_path(ds))) {
    const json rec = json::parse(line);
    by_id[rec.at("id").get<std::string>()] = {from_extended(rec.at("z1")),
                                              from_extended(rec.at("z2")),
                                              rec.at("delta").get<double>()};
  }

  std::vector<QcqpInstance> insts;
  for (features::Schema schema : schemas) {
    const std::string out = data_path(ds, schema);
    const std::string stamp_path = out + ".stamp";
    const std::string stamp = fnv1a_hex(
        "featurize.v1|schema=" + std::string(features::schema_name(schema)) +
        "|eps_prime=" + num(cfg.eps_prime) + "|" + input_hash);
    if (fresh(out, stamp_path, stamp) && fs::exists(names_path(ds, schema)) &&
        fs::exists(feature_drops_path(ds, schema)))
      continue;
    if (insts.empty()) insts = load_instances(cfg, ds);

    const int n = static_cast<int>(insts.size());
    std::vector<std::string> rows(n), drops(n);
    std::vector<std::vector<std::string>> names(n);
    parallel_for(n, cfg.workers, [&](int i) {
      const QcqpInstance& inst = insts[i];
      const auto it = by_id.find(inst.instance_id);
      if (it == by_id.end()) return;  // dropped at the solve stage
      try {
        const auto fv = features::extract(inst, schema);
        json rec{{"id", inst.instance_id},
                 {"z1", extended(it->second.z1)},
                 {"z2", extended(it->second.z2)},
                 {"delta", it->second.delta},
                 {"label", labels::classify_label(it->second.delta,
                                                  cfg.eps_prime)},
                 {"x", std::vector<double>(fv.values.data(),
                                           fv.values.data() + fv.values.size())}};
        rows[i] = rec.dump();
        names[i] = fv.names;
      } catch (const std::exception& e) {
        drops[i] = json{{"id", inst.instance_id},
                        {"stage", "featurize"},
                        {"schema", std::string(features::schema_name(schema))},
                        {"reason", e.what()}}
                       .dump();
      }
    });
    std::string rows_text, drops_text;
    std::vector<std::string> manifest;
    for (int i = 0; i < n; ++i) {
      if (!rows[i].empty()) {
        rows_text += rows[i] + "\n";
        if (manifest.empty()) manifest = names[i];
      }
      if (!drops[i].empty()) drops_text += drops[i] + "\n";
    }
    write_file(out, rows_text);
    write_file(feature_drops_path(ds, schema), drops_text);
    write_file(names_path(ds, schema),
               json{{"schema", std::string(features::schema_name(schema))},
                    {"names", manifest}}
                   .dump(2) +
                   "\n");
    write_file(stamp_path, stamp);
  }
}

struct DataRow {
  std::string id;
  Vector x;
  double delta = 0.0;
  int label = 0;
};

std::vector<DataRow> load_data_rows(const DatasetRef& ds,
                                    features::Schema schema) {
  std::vector<DataRow> rows;
  for (const std::string& line : read_lines(data_path(ds, schema))) {
    const json rec = json::parse(line);
    DataRow row;
    row.id = rec.at("id").get<std::string>();
    const auto xs = rec.at("x").get<std::vector<double>>();
    row.x = Eigen::Map<const Vector>(xs.data(), static_cast<int>(xs.size()));
    row.delta = rec.at("delta").get<double>();
    row.label = rec.at("label").get<int>();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> load_names(const DatasetRef& ds,
                                    features::Schema schema) {
  const json j = json::parse(read_file(names_path(ds, schema)));
  return j.at("names").get<std::vector<std::string>>();
}

struct CellSpec {
  features::Schema schema;
  std::string model;  // "rf" or "gb"
  config::Task task;
  bool na = false;

  std::string key() const {
    return std::string(features::schema_name(schema)) + "_" + model + "_" +
           std::string(config::task_name(task));
  }
  learn::ModelKind kind() const {
    if (model == "rf")
      return task == config::Task::Classification
                 ? learn::ModelKind::RfClassifier
                 : learn::ModelKind::RfRegressor;
    return task == config::Task::Classification
               ? learn::ModelKind::GbClassifier
               : learn::ModelKind::GbRegressor;
  }
};

std::vector<CellSpec> cell_specs(const config::Config& cfg) {
  std::vector<CellSpec> cells;
  for (features::Schema schema : cfg.schemas)
    for (const std::string& model : cfg.models)
      for (config::Task task : cfg.tasks)
        cells.push_back({schema, model, task, !schema_applicable(schema, cfg)});
  return cells;
}

void stack_rows(const std::vector<DataRow>& rows, config::Task task, Matrix& X,
                Vector& y) {
  const int n = static_cast<int>(rows.size());
  const int p = n > 0 ? static_cast<int>(rows[0].x.size()) : 0;
  X.resize(n, p);
  y.resize(n);
  for (int i = 0; i < n; ++i) {
    X.row(i) = rows[i].x.transpose();
    y[i] = task == config::Task::Classification
               ? static_cast<double>(rows[i].label)
               : rows[i].delta;
  }
}

std::string models_dir(const config::Config& cfg, const std::string& out_dir) {
  return out_dir + "/" + cfg.experiment_id + "/models";
}

std::string model_path(const config::Config& cfg, const std::string& out_dir,
                       const CellSpec& cell) {
  return models_dir(cfg, out_dir) + "/" + cell.key() + ".model.json";
}

void run_train(const config::Config& cfg, const std::string& out_dir,
               const std::vector<DatasetRef>& refs, const CellSpec& cell) {
  std::vector<DataRow> rows;
  std::string train_hash;
  std::vector<std::string> names;
  for (const DatasetRef& ds : refs) {
    if (ds.role != "train") continue;
    const auto part = load_data_rows(ds, cell.schema);
    rows.insert(rows.end(), part.begin(), part.end());
    train_hash += fnv1a_hex(read_file(data_path(ds, cell.schema))) + "|";
    if (names.empty()) names = load_names(ds, cell.schema);
  }
  const std::string path = model_path(cfg, out_dir, cell);
  const std::string stamp_path = path + ".stamp";
  const std::string stamp = fnv1a_hex(
      "train.v1|kind=" + std::string(learn::kind_name(cell.kind())) +
      "|trees=" + std::to_string(cfg.params.trees) +
      "|depth=" + std::to_string(cfg.params.max_depth) +
      "|lr=" + num(cfg.params.learning_rate) +
      "|leaf=" + std::to_string(cfg.params.min_samples_leaf) +
      "|grid=" + (cfg.grid_search ? "1" : "0") +
      "|val=" + num(cfg.val_fraction) + "|seed=" +
      std::to_string(cfg.seed) + "|" + train_hash);
  if (fresh(path, stamp_path, stamp)) return;

  const std::uint64_t cell_seed = fnv1a(cell.key()) ^ cfg.seed;
  try {
    Matrix X;
    Vector y;
    stack_rows(rows, cell.task, X, y);
    learn::Hyperparams params = cfg.params;
    if (cfg.grid_search) {
      const int n = static_cast<int>(rows.size());
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      RngStream rng(cell_seed, 1);
      rng.shuffle(order);
      const int n_val = std::max(1, static_cast<int>(
                                        std::lround(cfg.val_fraction * n)));
      const int n_fit = n - n_val;
      if (n_fit < 1)
        throw std::invalid_argument("validation split leaves no training rows");
      Matrix Xf(n_fit, X.cols()), Xv(n_val, X.cols());
      Vector yf(n_fit), yv(n_val);
      for (int i = 0; i < n_fit; ++i) {
        Xf.row(i) = X.row(order[i]);
        yf[i] = y[order[i]];
      }
      for (int i = 0; i < n_val; ++i) {
        Xv.row(i) = X.row(order[n_fit + i]);
        yv[i] = y[order[n_fit + i]];
      }
      const auto search =
          learn::grid_search(Xf, yf, Xv, yv, cell.kind(),
                             learn::default_grid(cell.kind()), cell_seed,
                             cfg.workers);
      params = search.best;
    }
    const auto model = learn::fit(X, y, cell.kind(), params, cell_seed, names,
                                  cfg.workers);
    learn::save_model(model, path);
  } catch (const std::exception& e) {
    stage_fail(Stage::Train, "cell " + cell.key(), e.what());
  }
  write_file(stamp_path, stamp);
}

json evaluate_cell(const config::Config& cfg, const std::string& out_dir,
                   const std::vector<DatasetRef>& refs, const CellSpec& cell) {
  json out{{"schema", std::string(features::schema_name(cell.schema))},
           {"model", std::string(learn::kind_name(cell.kind()))},
           {"task", std::string(config::task_name(cell.task))},
           {"na", cell.na},
           {"metrics", json::object()}};
  if (cell.na) return out;

  std::vector<DataRow> rows;
  for (const DatasetRef& ds : refs) {
    if (ds.role != "test") continue;
    const auto part = load_data_rows(ds, cell.schema);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  try {
    const auto model = learn::load_model(model_path(cfg, out_dir, cell));
    Matrix X;
    Vector y;
    stack_rows(rows, cell.task, X, y);
    json metrics;
    if (cell.task == config::Task::Classification) {
      std::vector<int> yt(rows.size()), yp(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        yt[i] = rows[i].label;
        yp[i] = learn::predict_label(model, rows[i].x);
      }
      const auto m = labels::metrics_classification(yt, yp);
      metrics = {{"accuracy", m.accuracy},
                 {"precision", m.precision},
                 {"recall", m.recall},
                 {"f1", m.f1}};
    } else {
      const Vector pred = learn::predict_batch(model, X);
      const auto m = labels::metrics_regression(y, pred, 0.1);
      metrics = {{"mae", m.mae},
                 {"mse", m.mse},
                 {"rmse", m.rmse},
                 {"r2", m.r2},
                 {"r_accuracy", m.r_accuracy}};
    }
    out["metrics"] = std::move(metrics);
    out["n_test"] = rows.size();
  } catch (const std::exception& e) {
    stage_fail(Stage::Evaluate, "cell " + cell.key(), e.what());
  }
  return out;
}

json dataset_bookkeeping(const config::Config& cfg,
                         const std::vector<DatasetRef>& refs) {
  json out = json::array();
  for (const DatasetRef& ds : refs) {
    json d{{"key", ds.key},
           {"role", ds.role},
           {"n", ds.spec.n},
           {"m", ds.spec.m},
           {"generated", read_lines(instances_path(ds)).size()},
           {"labeled", read_lines(solves_path(ds)).size()},
           {"dropped_solve", read_lines(drops_path(ds)).size()}};
    json fd = json::object();
    for (features::Schema schema : active_schemas(cfg))
      fd[std::string(features::schema_name(schema))] =
          read_lines(feature_drops_path(ds, schema)).size();
    d["dropped_featurize"] = std::move(fd);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << fnv1a(bytes);
  return out.str();
}

Stage stage_from_name(std::string_view name) {
  if (name == "generate") return Stage::Generate;
  if (name == "solve") return Stage::Solve;
  if (name == "featurize") return Stage::Featurize;
  if (name == "train") return Stage::Train;
  if (name == "evaluate") return Stage::Evaluate;
  throw std::invalid_argument("unknown stage: " + std::string(name));
}

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::Generate: return "generate";
    case Stage::Solve: return "solve";
    case Stage::Featurize: return "featurize";
    case Stage::Train: return "train";
    case Stage::Evaluate: return "evaluate";
  }
  return "unknown";
}

std::vector<DatasetRef> dataset_refs(const config::Config& cfg,
                                     const std::string& out_dir) {
  std::vector<DatasetRef> refs;
  const std::string base = out_dir + "/" + cfg.experiment_id + "/datasets/";
  const auto add = [&](const std::string& role,
                       const std::vector<config::DatasetSpec>& specs) {
    for (std::size_t i = 0; i < specs.size(); ++i) {
      DatasetRef ds;
      ds.role = role;
      ds.index = static_cast<int>(i);
      ds.spec = specs[i];
      ds.key = role + std::to_string(i) + "_n" + std::to_string(ds.spec.n) +
               "_m" + std::to_string(ds.spec.m) + "_c" +
               std::to_string(ds.spec.count);
      ds.master_seed = fnv1a(ds.key) ^ cfg.seed;
      ds.dir = base + ds.key;
      refs.push_back(std::move(ds));
    }
  };
  add("train", cfg.train);
  add("test", cfg.test);
  return refs;
}

bool schema_applicable(features::Schema schema, const config::Config& cfg) {
  if (schema == features::Schema::DI) return true;
  std::vector<config::DatasetSpec> all = cfg.train;
  all.insert(all.end(), cfg.test.begin(), cfg.test.end());
  for (const config::DatasetSpec& ds : all) {
    if (ds.m != all[0].m) return false;
    if (schema == features::Schema::FDD && ds.n != all[0].n) return false;
  }
  return true;
}

std::string run(const config::Config& cfg, const std::string& out_dir,
                Stage through) {
  const auto refs = dataset_refs(cfg, out_dir);
  for (const DatasetRef& ds : refs) fs::create_directories(ds.dir);

  for (const DatasetRef& ds : refs) {
    run_generate(cfg, ds);
    if (through >= Stage::Solve) run_solve(cfg, ds);
    if (through >= Stage::Featurize) run_featurize(cfg, ds);
  }
  if (through < Stage::Train) return "";

  fs::create_directories(models_dir(cfg, out_dir));
  const auto cells = cell_specs(cfg);
  for (const CellSpec& cell : cells)
    if (!cell.na) run_train(cfg, out_dir, refs, cell);
  if (through < Stage::Evaluate) return "";

  json results{{"format", "qcqp-results"},
               {"version", 1},
               {"experiment_id", cfg.experiment_id},
               {"comparison",
                std::string(config::comparison_name(cfg.comparison))}};
  json cells_json = json::array();
  for (const CellSpec& cell : cells)
    cells_json.push_back(evaluate_cell(cfg, out_dir, refs, cell));
  results["cells"] = std::move(cells_json);
  results["datasets"] = dataset_bookkeeping(cfg, refs);
  const std::string path = out_dir + "/" + cfg.experiment_id + "/results.json";
  write_file(path, results.dump(2) + "\n");
  return path;
}

ReportFiles report(const std::string& out_dir) {
  std::vector<std::string> experiment_dirs;
  if (fs::exists(out_dir))
    for (const auto& entry : fs::directory_iterator(out_dir))
      if (entry.is_directory() && fs::exists(entry.path() / "results.json"))
        experiment_dirs.push_back(entry.path().filename().string());
  std::sort(experiment_dirs.begin(), experiment_dirs.end());

  struct Row {
    std::string experiment, schema, model, task, headline;
    json metrics;
    bool na;
  };
  std::vector<Row> rows;
  for (const std::string& dir : experiment_dirs) {
    const json results =
        json::parse(read_file(out_dir + "/" + dir + "/results.json"));
    for (const json& cell : results.at("cells")) {
      Row row;
      row.experiment = results.at("experiment_id").get<std::string>();
      row.schema = cell.at("schema").get<std::string>();
      row.model = cell.at("model").get<std::string>();
      row.task = cell.at("task").get<std::string>();
      row.na = cell.at("na").get<bool>();
      row.metrics = cell.at("metrics");
      if (row.na) {
        row.headline = "NA";
      } else {
        const char* key =
            row.task == "classification" ? "accuracy" : "r_accuracy";
        std::ostringstream v;
        v << std::fixed << std::setprecision(4)
          << row.metrics.at(key).get<double>();
        row.headline = v.str();
      }
      rows.push_back(std::move(row));
    }
  }

  const std::array<std::string, 5> header = {"experiment", "schema", "model",
                                             "task", "headline"};
  std::array<std::size_t, 5> width;
  for (std::size_t c = 0; c < 5; ++c) width[c] = header[c].size();
  for (const Row& row : rows) {
    width[0] = std::max(width[0], row.experiment.size());
    width[1] = std::max(width[1], row.schema.size());
    width[2] = std::max(width[2], row.model.size());
    width[3] = std::max(width[3], row.task.size());
    width[4] = std::max(width[4], row.headline.size());
  }
  std::ostringstream text;
  const auto emit = [&](const std::array<std::string, 5>& cols) {
    for (std::size_t c = 0; c < 5; ++c)
      text << std::left << std::setw(static_cast<int>(width[c]) + 2) << cols[c];
    text << "\n";
  };
  emit(header);
  {
    std::array<std::string, 5> rule;
    for (std::size_t c = 0; c < 5; ++c) rule[c] = std::string(width[c], '-');
    emit(rule);
  }
  for (const Row& row : rows)
    emit({row.experiment, row.schema, row.model, row.task, row.headline});

  std::ostringstream csv;
  csv << "experiment,schema,model,metric,value\n";
  for (const Row& row : rows) {
    if (row.na) {
      const std::string metric =
          row.task == "classification" ? "accuracy" : "r_accuracy";
      csv << row.experiment << "," << row.schema << "," << row.model << ","
          << metric << ",NA\n";
      continue;
    }
    for (const auto& [metric, value] : row.metrics.items())
      csv << row.experiment << "," << row.schema << "," << row.model << ","
          << metric << "," << value.dump() << "\n";
  }

  ReportFiles out;
  out.text = text.str();
  out.text_path = out_dir + "/report.txt";
  out.csv_path = out_dir + "/report.csv";
  fs::create_directories(out_dir);
  write_file(out.text_path, out.text);
  write_file(out.csv_path, csv.str());
  return out;
}

}  // namespace qcqp::pipeline
