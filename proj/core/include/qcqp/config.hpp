#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qcqp/conic.hpp"
#include "qcqp/features.hpp"
#include "qcqp/learn.hpp"

namespace qcqp::config {

// Value in the supported TOML subset: booleans, integers, floats, quoted
// strings, and single-line (possibly nested) arrays.
struct Value {
  enum class Kind { Bool, Int, Float, Str, Array };
  Kind kind = Kind::Int;
  bool b = false;
  std::int64_t i = 0;
  double f = 0.0;
  std::string s;
  std::vector<Value> items;

  double as_number() const;  // Int or Float
};

using Section = std::map<std::string, Value>;
using Table = std::map<std::string, Section>;

Table parse_toml(const std::string& text);

struct DatasetSpec {
  int n = 5;
  int m = 1;
  int count = 8;

  bool operator==(const DatasetSpec&) const = default;
};

enum class Comparison { LpVsSdp, LpVsSdpPrime };
std::string_view comparison_name(Comparison c);
Comparison comparison_from_name(std::string_view name);

enum class Task { Classification, Regression };
std::string_view task_name(Task t);

struct Config {
  // [generator] defaults, used when [experiment] lists no datasets
  DatasetSpec generator;

  // [solver]
  conic::SolverOptions solver;

  // [features]
  std::vector<features::Schema> schemas = {features::Schema::FDD,
                                           features::Schema::SDD,
                                           features::Schema::DI};

  // [learn]
  std::vector<std::string> models = {"rf", "gb"};
  bool grid_search = false;
  learn::Hyperparams params = {100, 8, 0.1, 1};
  double val_fraction = 0.2;

  // [experiment]
  std::string experiment_id = "exp";
  std::vector<DatasetSpec> train;
  std::vector<DatasetSpec> test;
  Comparison comparison = Comparison::LpVsSdp;
  std::vector<Task> tasks = {Task::Classification, Task::Regression};
  double eps_prime = 0.0;
  std::uint64_t seed = 0;
  int workers = 1;
};

Config config_from_table(const Table& table);
Config load_config(const std::string& path);

// Template listing every key with its default, suitable as a starting file.
std::string default_config_text();

}  // namespace qcqp::config
