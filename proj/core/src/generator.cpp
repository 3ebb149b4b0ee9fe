#include "qcqp/generator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "qcqp/graphs.hpp"
#include "qcqp/relax.hpp"

namespace qcqp::gen {

namespace {

constexpr std::string_view kFamilyNames[kFamilyCount] = {
    "diag_ordered_ones", "diag_random_ones", "diag_random_randnums",
    "random_symmetric",  "spd",              "eig_ones",
    "eig_random",        "rank_one_convex",  "rank_one_concave",
    "hollow",            "bipartite",        "tree",
    "planar",            "chordal",
};

int pick_n_prime(const FamilySpec& spec, int n, RngStream& rng) {
  if (spec.n_prime) {
    if (*spec.n_prime < 0 || *spec.n_prime > n) {
      std::ostringstream os;
      os << "negative-eigenvalue count " << *spec.n_prime << " outside 0.." << n;
      throw InvalidFamilySpecError(os.str());
    }
    return *spec.n_prime;
  }
  return static_cast<int>(rng.uniform_int(0, n));
}

Matrix diag_matrix(const FamilySpec& spec, int n, RngStream& rng) {
  const int np = pick_n_prime(spec, n, rng);
  Vector v(n);
  switch (spec.family) {
    case Family::DiagOrderedOnes:
      for (int i = 0; i < n; ++i) v[i] = i < np ? -1.0 : 1.0;
      break;
    case Family::DiagRandomOnes: {
      v.setOnes();
      for (int idx : rng.sample_without_replacement(n, np)) v[idx] = -1.0;
      break;
    }
    default: {  // DiagRandomRandnums
      for (int i = 0; i < n; ++i) v[i] = static_cast<double>(rng.uniform_int(1, 10));
      for (int idx : rng.sample_without_replacement(n, np)) v[idx] = -v[idx];
      break;
    }
  }
  return v.asDiagonal();
}

Matrix random_symmetric(int n, RngStream& rng) {
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform(-5.0, 5.0);
  return m;
}

Matrix spd_matrix(int n, RngStream& rng) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  Matrix m = g * g.transpose();
  m.diagonal().array() += n * 1e-3;
  symmetrize(m);
  return m;
}

Matrix specified_eigs(const FamilySpec& spec, int n, RngStream& rng) {
  const int np = pick_n_prime(spec, n, rng);
  Matrix raw(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) raw(i, j) = rng.uniform(0.0, 9.0);
  Eigen::HouseholderQR<Matrix> qr(raw);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);

  Vector v(n);
  if (spec.family == Family::EigOnes)
    v.setOnes();
  else
    for (int i = 0; i < n; ++i) v[i] = static_cast<double>(rng.uniform_int(1, 10));
  for (int idx : rng.sample_without_replacement(n, np)) v[idx] = -1.0;

  Matrix m = q * v.asDiagonal() * q.transpose();
  symmetrize(m);
  return m;
}

Matrix rank_one(int n, RngStream& rng, double sign) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-2.0, 2.0);
  return sign * (v * v.transpose());
}

Matrix hollow_matrix(int n, RngStream& rng) {
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = rng.uniform(-2.0, 2.0);
  return m;
}

void require_graph_n(int n, const char* what) {
  if (n < 4) {
    std::ostringstream os;
    os << what << " needs n >= 4, got " << n;
    throw InvalidFamilySpecError(os.str());
  }
}

}  // namespace

graphs::SupportGraph random_tree(int n, RngStream& rng) {
  require_graph_n(n, "tree construction");
  std::vector<int> seq(n - 2);
  for (auto& s : seq) s = static_cast<int>(rng.uniform_int(0, n - 1));
  std::vector<int> degree(n, 1);
  for (int s : seq) ++degree[s];
  std::vector<std::pair<int, int>> edges;
  // smallest-leaf decode
  int ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int s : seq) {
    edges.emplace_back(leaf, s);
    if (--degree[s] == 1 && s < ptr) {
      leaf = s;
    } else {
      while (degree[++ptr] != 1) {
      }
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n - 1);
  return graphs::SupportGraph::from_edges(n, edges);
}

graphs::SupportGraph random_bipartite(int n, RngStream& rng) {
  require_graph_n(n, "bipartite construction");
  const int k = static_cast<int>(rng.uniform_int(2, n - 2));
  const int right = n - k;
  const int e = static_cast<int>(rng.uniform_int(2, static_cast<std::int64_t>(k) * right));
  std::vector<std::pair<int, int>> edges;
  for (int idx : rng.sample_without_replacement(k * right, e))
    edges.emplace_back(idx / right, k + idx % right);
  return graphs::SupportGraph::from_edges(n, edges);
}

graphs::SupportGraph random_planar(int n, RngStream& rng) {
  require_graph_n(n, "planar construction");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  rng.shuffle(edges);
  // peel edges in shuffled order until planar; the check runs on what is left
  std::size_t removed = 0;
  auto current = [&] {
    return graphs::SupportGraph::from_edges(
        n, {edges.begin() + static_cast<long>(removed), edges.end()});
  };
  graphs::SupportGraph g = current();
  do {
    ++removed;
    g = current();
  } while (!graphs::is_planar(g));

  std::vector<int> comp(n, -1);
  int comp_count = 0;
  for (int root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    std::vector<int> stack{root};
    comp[root] = comp_count;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.adj[v])
        if (comp[w] < 0) {
          comp[w] = comp_count;
          stack.push_back(w);
        }
    }
    ++comp_count;
  }
  if (comp_count > 1) {
    // a bridge between components cannot create a Kuratowski subgraph, so
    // planarity survives the patch
    while (true) {
      int a = static_cast<int>(rng.uniform_int(0, n - 1));
      int b = static_cast<int>(rng.uniform_int(0, n - 1));
      if (comp[a] == comp[b]) continue;
      auto with_extra = g.edges;
      with_extra.emplace_back(a, b);
      g = graphs::SupportGraph::from_edges(n, with_extra);
      break;
    }
  }
  return g;
}

graphs::SupportGraph random_chordal(int n, RngStream& rng) {
  require_graph_n(n, "chordal construction");
  graphs::SupportGraph g = random_tree(n, rng);
  for (int node = 0; node < n; ++node) {
    const auto& nb = g.adj[node];
    if (nb.size() < 2) continue;
    auto pick = rng.sample_without_replacement(static_cast<int>(nb.size()), 2);
    int v = nb[pick[0]], w = nb[pick[1]];
    if (g.has_edge(v, w)) continue;
    auto edges = g.edges;
    edges.emplace_back(v, w);
    g = graphs::SupportGraph::from_edges(n, edges);
  }
  return g;
}

std::string_view family_name(Family f) { return kFamilyNames[static_cast<int>(f)]; }

std::optional<Family> family_from_name(std::string_view name) {
  for (int i = 0; i < kFamilyCount; ++i)
    if (kFamilyNames[i] == name) return Family(i);
  return std::nullopt;
}

bool is_graph_family(Family f) {
  return static_cast<int>(f) >= kNonGraphFamilyCount;
}

Matrix gen_matrix(const FamilySpec& spec, int n, RngStream& rng) {
  if (n < 1) throw InvalidFamilySpecError("matrix order must be positive");
  if (is_graph_family(spec.family) && n < 4) {
    std::ostringstream os;
    os << family_name(spec.family) << " needs n >= 4, got " << n;
    throw InvalidFamilySpecError(os.str());
  }
  switch (spec.family) {
    case Family::DiagOrderedOnes:
    case Family::DiagRandomOnes:
    case Family::DiagRandomRandnums:
      return diag_matrix(spec, n, rng);
    case Family::RandomSymmetric:
      return random_symmetric(n, rng);
    case Family::Spd:
      return spd_matrix(n, rng);
    case Family::EigOnes:
    case Family::EigRandom:
      return specified_eigs(spec, n, rng);
    case Family::RankOneConvex:
      return rank_one(n, rng, 1.0);
    case Family::RankOneConcave:
      return rank_one(n, rng, -1.0);
    case Family::Hollow:
      return hollow_matrix(n, rng);
    case Family::Bipartite:
      return graphs::adjacency_to_distance(random_bipartite(n, rng), rng);
    case Family::Tree:
      return graphs::adjacency_to_distance(random_tree(n, rng), rng);
    case Family::Planar:
      return graphs::adjacency_to_distance(random_planar(n, rng), rng);
    case Family::Chordal:
      return graphs::adjacency_to_distance(random_chordal(n, rng), rng);
  }
  throw InvalidFamilySpecError("unknown family");
}

QcqpInstance gen_single_instance(const GenConfig& cfg, int idx) {
  if (cfg.n < 1 || cfg.m < 1)
    throw InvalidFamilySpecError("generator config needs n, m >= 1");
  if (cfg.N < 4)
    throw InvalidFamilySpecError("batch size below 4 leaves generation regimes empty");
  if (idx < 0 || idx >= cfg.N) throw InvalidFamilySpecError("instance index out of range");

  RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(idx));
  const int iota = idx + 1;
  const int regime = 4 * iota <= cfg.N ? 1 : (2 * iota <= cfg.N ? 2 : 3);
  // graph constructions need at least 4 nodes; below that, draw from the rest
  const int pool = cfg.n >= 4 ? kFamilyCount : kNonGraphFamilyCount;
  auto random_family = [&] {
    return Family(rng.uniform_int(0, pool - 1));
  };

  QcqpInstance inst;
  inst.n = cfg.n;
  inst.m = cfg.m;
  inst.seed = cfg.master_seed;
  {
    std::ostringstream os;
    os << "n" << cfg.n << "_m" << cfg.m << "_N" << cfg.N << "_s" << cfg.master_seed
       << "_i" << idx;
    inst.instance_id = os.str();
  }
  inst.A.resize(cfg.m + 1);
  inst.b.resize(cfg.m + 1);
  inst.c.resize(cfg.m + 1);
  inst.family_tags.resize(cfg.m + 1);

  if (regime == 1) {
    Family f = random_family();
    for (int k = 0; k <= cfg.m; ++k) {
      inst.A[k] = gen_matrix({f, std::nullopt}, cfg.n, rng);
      inst.family_tags[k] = std::string(family_name(f));
    }
  } else if (regime == 2) {
    for (int k = 0; k < cfg.m; ++k) {
      Family f = random_family();
      inst.A[k] = gen_matrix({f, std::nullopt}, cfg.n, rng);
      inst.family_tags[k] = std::string(family_name(f));
    }
    inst.A[cfg.m] = gen_matrix({Family::Spd, std::nullopt}, cfg.n, rng);
    inst.family_tags[cfg.m] = std::string(family_name(Family::Spd));
  } else {
    for (int k = 0; k <= cfg.m; ++k) {
      Family f = random_family();
      inst.A[k] = gen_matrix({f, std::nullopt}, cfg.n, rng);
      inst.family_tags[k] = std::string(family_name(f));
    }
  }

  for (int k = 0; k <= cfg.m; ++k) {
    inst.b[k] = Vector(cfg.n);
    for (int i = 0; i < cfg.n; ++i) inst.b[k][i] = rng.uniform(-5.0, 5.0);
    inst.c[k] = static_cast<double>(rng.uniform_int(-10, -1));
  }

  if (regime == 2) {
    inst.bounds_exist = false;
    int attempts = 0;
    while (true) {
      try {
        auto bounds = relax::derive_artificial_bounds(inst.A[cfg.m], inst.b[cfg.m],
                                                      inst.c[cfg.m]);
        inst.l = bounds.l;
        inst.u = bounds.u;
        break;
      } catch (const std::runtime_error&) {
        if (++attempts > 10)
          throw GenerationError("could not derive bounds after 10 fresh draws for " +
                                inst.instance_id);
        inst.A[cfg.m] = gen_matrix({Family::Spd, std::nullopt}, cfg.n, rng);
      }
    }
  } else {
    inst.bounds_exist = true;
    inst.l = Vector::Zero(cfg.n);
    inst.u = Vector::Ones(cfg.n);
  }

  inst.normalize();
  return inst;
}

std::vector<QcqpInstance> gen_instance_batch(const GenConfig& cfg, int workers) {
  std::vector<QcqpInstance> out(cfg.N);
  if (workers <= 1) {
    for (int i = 0; i < cfg.N; ++i) out[i] = gen_single_instance(cfg, i);
    return out;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < cfg.N; i = next.fetch_add(1))
      out[i] = gen_single_instance(cfg, i);
  };
  std::vector<std::thread> threads;
  const int count = std::min(workers, cfg.N);
  threads.reserve(count);
  for (int t = 0; t < count; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return out;
}

}  // namespace qcqp::gen
