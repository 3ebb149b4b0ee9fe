#include "qcqp/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>

#include "qcqp/io.hpp"

namespace qcqp::config {

namespace {

bool is_bare_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.';
}

std::string_view trim(std::string_view sv) {
  while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front())))
    sv.remove_prefix(1);
  while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back())))
    sv.remove_suffix(1);
  return sv;
}

// Cuts an end-of-line comment, respecting quoted strings.
std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

struct ValueParser {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line_offset = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, line_offset + pos);
  }

  Value parse() {
    skip_ws();
    if (pos >= text.size()) fail("missing value");
    const char c = text[pos];
    if (c == '"') return parse_string();
    if (c == '[') return parse_array();
    return parse_scalar();
  }

  Value parse_string() {
    ++pos;  // opening quote
    Value v;
    v.kind = Value::Kind::Str;
    while (pos < text.size() && text[pos] != '"') {
      char c = text[pos];
      if (c == '\\') {
        if (pos + 1 >= text.size()) fail("dangling escape");
        const char e = text[++pos];
        if (e == 'n') c = '\n';
        else if (e == 't') c = '\t';
        else if (e == '"' || e == '\\') c = e;
        else fail("unsupported escape");
      }
      v.s.push_back(c);
      ++pos;
    }
    if (pos >= text.size()) fail("unterminated string");
    ++pos;  // closing quote
    return v;
  }

  Value parse_array() {
    ++pos;  // opening bracket
    Value v;
    v.kind = Value::Kind::Array;
    skip_ws();
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
      return v;
    }
    while (true) {
      v.items.push_back(parse());
      skip_ws();
      if (pos >= text.size()) fail("unterminated array");
      if (text[pos] == ',') {
        ++pos;
        skip_ws();
        if (pos < text.size() && text[pos] == ']') {  // trailing comma
          ++pos;
          return v;
        }
        continue;
      }
      if (text[pos] == ']') {
        ++pos;
        return v;
      }
      fail("expected ',' or ']' in array");
    }
  }

  Value parse_scalar() {
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != ',' && text[pos] != ']' &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    const std::string_view token = text.substr(start, pos - start);
    Value v;
    if (token == "true" || token == "false") {
      v.kind = Value::Kind::Bool;
      v.b = token == "true";
      return v;
    }
    {
      std::int64_t iv = 0;
      const auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), iv);
      if (ec == std::errc() && ptr == token.data() + token.size()) {
        v.kind = Value::Kind::Int;
        v.i = iv;
        return v;
      }
    }
    {
      double fv = 0.0;
      const auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), fv);
      if (ec == std::errc() && ptr == token.data() + token.size()) {
        v.kind = Value::Kind::Float;
        v.f = fv;
        return v;
      }
    }
    pos = start;
    fail("cannot parse value '" + std::string(token) + "'");
  }
};

const Value* find(const Table& table, const std::string& section,
                  const std::string& key) {
  const auto sec = table.find(section);
  if (sec == table.end()) return nullptr;
  const auto it = sec->second.find(key);
  return it == sec->second.end() ? nullptr : &it->second;
}

std::int64_t get_int(const Table& t, const std::string& sec,
                     const std::string& key, std::int64_t def) {
  const Value* v = find(t, sec, key);
  if (!v) return def;
  if (v->kind != Value::Kind::Int)
    throw std::invalid_argument("config key " + sec + "." + key +
                                " must be an integer");
  return v->i;
}

double get_number(const Table& t, const std::string& sec,
                  const std::string& key, double def) {
  const Value* v = find(t, sec, key);
  if (!v) return def;
  if (v->kind != Value::Kind::Int && v->kind != Value::Kind::Float)
    throw std::invalid_argument("config key " + sec + "." + key +
                                " must be a number");
  return v->as_number();
}

bool get_bool(const Table& t, const std::string& sec, const std::string& key,
              bool def) {
  const Value* v = find(t, sec, key);
  if (!v) return def;
  if (v->kind != Value::Kind::Bool)
    throw std::invalid_argument("config key " + sec + "." + key +
                                " must be a boolean");
  return v->b;
}

std::string get_string(const Table& t, const std::string& sec,
                       const std::string& key, const std::string& def) {
  const Value* v = find(t, sec, key);
  if (!v) return def;
  if (v->kind != Value::Kind::Str)
    throw std::invalid_argument("config key " + sec + "." + key +
                                " must be a string");
  return v->s;
}

std::vector<std::string> get_string_list(const Table& t, const std::string& sec,
                                         const std::string& key,
                                         const std::vector<std::string>& def) {
  const Value* v = find(t, sec, key);
  if (!v) return def;
  if (v->kind != Value::Kind::Array)
    throw std::invalid_argument("config key " + sec + "." + key +
                                " must be an array of strings");
  std::vector<std::string> out;
  for (const Value& item : v->items) {
    if (item.kind != Value::Kind::Str)
      throw std::invalid_argument("config key " + sec + "." + key +
                                  " must contain strings");
    out.push_back(item.s);
  }
  return out;
}

std::vector<DatasetSpec> get_dataset_list(const Table& t,
                                          const std::string& key) {
  const Value* v = find(t, "experiment", key);
  if (!v) return {};
  if (v->kind != Value::Kind::Array)
    throw std::invalid_argument("experiment." + key +
                                " must be an array of [n, m, count] triples");
  std::vector<DatasetSpec> out;
  for (const Value& item : v->items) {
    if (item.kind != Value::Kind::Array || item.items.size() != 3)
      throw std::invalid_argument("experiment." + key +
                                  " entries must be [n, m, count] triples");
    DatasetSpec ds;
    const Value& a = item.items[0];
    const Value& b = item.items[1];
    const Value& c = item.items[2];
    if (a.kind != Value::Kind::Int || b.kind != Value::Kind::Int ||
        c.kind != Value::Kind::Int)
      throw std::invalid_argument("experiment." + key +
                                  " entries must hold integers");
    ds.n = static_cast<int>(a.i);
    ds.m = static_cast<int>(b.i);
    ds.count = static_cast<int>(c.i);
    if (ds.n < 1 || ds.m < 1 || ds.count < 1)
      throw std::invalid_argument("experiment." + key +
                                  " entries must be positive");
    out.push_back(ds);
  }
  return out;
}

}  // namespace

double Value::as_number() const {
  if (kind == Kind::Int) return static_cast<double>(i);
  if (kind == Kind::Float) return f;
  throw std::invalid_argument("value is not a number");
}

Table parse_toml(const std::string& text) {
  Table table;
  std::string section;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string::npos) line_end = text.size();
    std::string_view raw(text.data() + line_start, line_end - line_start);
    std::string_view line = trim(strip_comment(raw));
    if (!line.empty()) {
      if (line.front() == '[') {
        if (line.back() != ']')
          throw ParseError("unterminated section header", line_start);
        const std::string_view name = trim(line.substr(1, line.size() - 2));
        if (name.empty())
          throw ParseError("empty section name", line_start);
        for (char c : name)
          if (!is_bare_char(c))
            throw ParseError("invalid section name", line_start);
        section = std::string(name);
        table[section];
      } else {
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
          throw ParseError("expected 'key = value'", line_start);
        const std::string_view key = trim(line.substr(0, eq));
        if (key.empty())
          throw ParseError("empty key", line_start);
        for (char c : key)
          if (!is_bare_char(c))
            throw ParseError("invalid key '" + std::string(key) + "'",
                             line_start);
        ValueParser parser{line.substr(eq + 1), 0, line_start};
        const Value value = parser.parse();
        parser.skip_ws();
        if (parser.pos != parser.text.size())
          throw ParseError("trailing characters after value", line_start);
        table[section][std::string(key)] = value;
      }
    }
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  return table;
}

std::string_view comparison_name(Comparison c) {
  return c == Comparison::LpVsSdp ? "lp_vs_sdp" : "lp_vs_sdp_prime";
}

Comparison comparison_from_name(std::string_view name) {
  if (name == "lp_vs_sdp") return Comparison::LpVsSdp;
  if (name == "lp_vs_sdp_prime") return Comparison::LpVsSdpPrime;
  throw std::invalid_argument("unknown comparison: " + std::string(name));
}

std::string_view task_name(Task t) {
  return t == Task::Classification ? "classification" : "regression";
}

Config config_from_table(const Table& table) {
  Config cfg;

  cfg.generator.n = static_cast<int>(get_int(table, "generator", "n", 5));
  cfg.generator.m = static_cast<int>(get_int(table, "generator", "m", 1));
  cfg.generator.count =
      static_cast<int>(get_int(table, "generator", "count", 8));

  cfg.solver.tol = get_number(table, "solver", "tol", 1e-7);
  cfg.solver.max_iters =
      static_cast<int>(get_int(table, "solver", "max_iters", 0));
  cfg.solver.step_fraction =
      get_number(table, "solver", "step_fraction", 0.99);
  cfg.solver.verbose = get_bool(table, "solver", "verbose", false);

  const auto schema_names =
      get_string_list(table, "features", "schemas", {"fdd", "sdd", "di"});
  cfg.schemas.clear();
  for (const std::string& s : schema_names)
    cfg.schemas.push_back(features::schema_from_name(s));
  if (cfg.schemas.empty())
    throw std::invalid_argument("features.schemas must be non-empty");

  cfg.models = get_string_list(table, "learn", "models", {"rf", "gb"});
  for (const std::string& model : cfg.models)
    if (model != "rf" && model != "gb")
      throw std::invalid_argument("learn.models entries must be rf or gb");
  if (cfg.models.empty())
    throw std::invalid_argument("learn.models must be non-empty");
  cfg.grid_search = get_bool(table, "learn", "grid_search", false);
  cfg.params.trees = static_cast<int>(get_int(table, "learn", "trees", 100));
  cfg.params.max_depth =
      static_cast<int>(get_int(table, "learn", "max_depth", 8));
  cfg.params.learning_rate =
      get_number(table, "learn", "learning_rate", 0.1);
  cfg.params.min_samples_leaf =
      static_cast<int>(get_int(table, "learn", "min_samples_leaf", 1));
  cfg.val_fraction = get_number(table, "learn", "val_fraction", 0.2);
  if (!(cfg.val_fraction > 0.0 && cfg.val_fraction < 1.0))
    throw std::invalid_argument("learn.val_fraction must lie in (0, 1)");

  cfg.experiment_id = get_string(table, "experiment", "id", "exp");
  cfg.train = get_dataset_list(table, "train");
  cfg.test = get_dataset_list(table, "test");
  if (cfg.train.empty()) cfg.train = {cfg.generator};
  if (cfg.test.empty()) {
    // The generator needs at least 4 instances to populate all regimes.
    DatasetSpec ds = cfg.generator;
    ds.count = std::max(4, ds.count / 4);
    cfg.test = {ds};
  }
  cfg.comparison = comparison_from_name(
      get_string(table, "experiment", "comparison", "lp_vs_sdp"));
  const std::string task =
      get_string(table, "experiment", "task", "both");
  if (task == "classification")
    cfg.tasks = {Task::Classification};
  else if (task == "regression")
    cfg.tasks = {Task::Regression};
  else if (task == "both")
    cfg.tasks = {Task::Classification, Task::Regression};
  else
    throw std::invalid_argument(
        "experiment.task must be classification, regression, or both");
  cfg.eps_prime = get_number(table, "experiment", "eps_prime", 0.0);
  cfg.seed = static_cast<std::uint64_t>(
      get_int(table, "experiment", "seed", 0));
  cfg.workers =
      static_cast<int>(get_int(table, "experiment", "workers", 1));
  if (cfg.workers < 1)
    throw std::invalid_argument("experiment.workers must be at least 1");
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return config_from_table(parse_toml(text));
}

std::string default_config_text() {
  return R"([generator]
# Default dataset shape, used when [experiment] lists no train/test sets.
n = 5
m = 1
count = 8

[solver]
tol = 1e-7
max_iters = 0        # 0 keeps the built-in iteration cap
step_fraction = 0.99
verbose = false

[features]
schemas = ["fdd", "sdd", "di"]

[learn]
models = ["rf", "gb"]
grid_search = false
trees = 100
max_depth = 8        # 0 means unbounded
learning_rate = 0.1
min_samples_leaf = 1
val_fraction = 0.2   # training share held out when grid_search = true

[experiment]
id = "exp"
# train = [[5, 1, 100], [10, 1, 100]]
# test = [[5, 1, 25]]
comparison = "lp_vs_sdp"   # or lp_vs_sdp_prime
task = "both"              # classification | regression | both
eps_prime = 0.0
seed = 0
workers = 1
)";
}

}  // namespace qcqp::config
