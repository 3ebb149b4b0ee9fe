#include "qcqp/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace qcqp {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

json encode_bound(double v) {
  if (v == kInf) return "+inf";
  if (v == -kInf) return "-inf";
  return v;
}

double decode_bound(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "+inf" || s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ParseError(std::string("bad bound value in ") + what, 0);
}

json matrix_to_json(const Matrix& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(std::string(what) + ": wrong row count", 0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(std::string(what) + ": wrong column count", 0);
    for (int c = 0; c < n; ++c) a(i, c) = row[c].get<double>();
  }
  return a;
}

Vector vector_from_json(const json& j, int n, const char* what,
                        bool allow_inf) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(std::string(what) + ": wrong length", 0);
  Vector v(n);
  for (int i = 0; i < n; ++i)
    v[i] = allow_inf ? decode_bound(j[i], what) : j[i].get<double>();
  return v;
}

}  // namespace

std::string instance_to_json(const QcqpInstance& inst) {
  json j;
  j["schema_version"] = kInstanceSchemaVersion;
  j["kind"] = "qcqp_instance";
  j["instance_id"] = inst.instance_id;
  j["seed"] = inst.seed;
  j["n"] = inst.n;
  j["m"] = inst.m;
  j["bounds_exist"] = inst.bounds_exist;
  j["family_tags"] = inst.family_tags;
  json as = json::array(), bs = json::array(), cs = json::array();
  for (const auto& a : inst.A) as.push_back(matrix_to_json(a));
  for (const auto& b : inst.b) {
    json row = json::array();
    for (Eigen::Index i = 0; i < b.size(); ++i) row.push_back(b[i]);
    bs.push_back(std::move(row));
  }
  for (double c : inst.c) cs.push_back(c);
  j["A"] = std::move(as);
  j["b"] = std::move(bs);
  j["c"] = std::move(cs);
  json l = json::array(), u = json::array();
  for (int i = 0; i < inst.n; ++i) {
    l.push_back(encode_bound(inst.l[i]));
    u.push_back(encode_bound(inst.u[i]));
  }
  j["l"] = std::move(l);
  j["u"] = std::move(u);
  return j.dump(2);
}

QcqpInstance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  try {
    if (!j.contains("schema_version"))
      throw ParseError("missing schema_version", 0);
    int ver = j["schema_version"].get<int>();
    if (ver != kInstanceSchemaVersion) {
      throw VersionError("unsupported instance schema_version " +
                         std::to_string(ver) + ", supported: " +
                         std::to_string(kInstanceSchemaVersion));
    }
    QcqpInstance inst;
    inst.instance_id = j.value("instance_id", std::string());
    inst.seed = j.value("seed", std::uint64_t{0});
    inst.n = j.at("n").get<int>();
    inst.m = j.at("m").get<int>();
    if (inst.n < 1 || inst.m < 0) throw ParseError("bad dimensions", 0);
    inst.bounds_exist = j.value("bounds_exist", true);
    if (j.contains("family_tags"))
      inst.family_tags = j["family_tags"].get<std::vector<std::string>>();
    const int cnt = inst.m + 1;
    const json& as = j.at("A");
    const json& bs = j.at("b");
    const json& cs = j.at("c");
    if (static_cast<int>(as.size()) != cnt ||
        static_cast<int>(bs.size()) != cnt ||
        static_cast<int>(cs.size()) != cnt)
      throw ParseError("A/b/c must each hold m+1 entries", 0);
    for (int k = 0; k < cnt; ++k) {
      inst.A.push_back(matrix_from_json(as[k], inst.n, "A"));
      inst.b.push_back(vector_from_json(bs[k], inst.n, "b", false));
      inst.c.push_back(cs[k].get<double>());
    }
    inst.l = vector_from_json(j.at("l"), inst.n, "l", true);
    inst.u = vector_from_json(j.at("u"), inst.n, "u", true);
    inst.normalize();
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(e.what(), 0);
  }
}

void save_instance(const QcqpInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << instance_to_json(inst) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

QcqpInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return instance_from_json(text);
}

}  // namespace qcqp
