#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qcqp/config.hpp"

namespace qcqp::pipeline {

std::uint64_t fnv1a(std::string_view bytes);
std::string fnv1a_hex(std::string_view bytes);

// Pipeline stages in execution order; running a stage first brings every
// prerequisite up to date, reusing outputs whose input stamps still match.
enum class Stage { Generate, Solve, Featurize, Train, Evaluate };
Stage stage_from_name(std::string_view name);
std::string_view stage_name(Stage s);

struct DatasetRef {
  std::string key;   // directory name, e.g. "train0_n5_m2_c60"
  std::string role;  // "train" or "test"
  int index = 0;     // position within the role
  config::DatasetSpec spec;
  std::uint64_t master_seed = 0;
  std::string dir;   // <out>/<experiment>/datasets/<key>
};

std::vector<DatasetRef> dataset_refs(const config::Config& cfg,
                                     const std::string& out_dir);

// fDD needs a single (n, m) across all datasets; sDD a single m; DI always
// applies.
bool schema_applicable(features::Schema schema, const config::Config& cfg);

// Runs the experiment through `through` for every dataset and cell of cfg.
// Returns the results.json path when the evaluate stage ran, else "".
std::string run(const config::Config& cfg, const std::string& out_dir,
                Stage through);

struct ReportFiles {
  std::string text_path;
  std::string csv_path;
  std::string text;  // rendered table, also written to text_path
};

// Collects <out>/*/results.json (sorted by experiment directory) into a
// human-readable table and a flat CSV of (experiment, schema, model, metric,
// value).
ReportFiles report(const std::string& out_dir);

}  // namespace qcqp::pipeline
