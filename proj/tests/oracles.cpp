#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

namespace qcqp::test_oracles {

bool oracle_bipartite(const graphs::SupportGraph& g) {
  if (g.n > 20) throw std::invalid_argument("oracle_bipartite: too large");
  const std::uint32_t limit = 1u << g.n;
  for (std::uint32_t colors = 0; colors < limit; ++colors) {
    bool ok = true;
    for (auto [i, j] : g.edges) {
      if (((colors >> i) & 1) == ((colors >> j) & 1)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return g.edges.empty() && g.n == 0;
}

bool oracle_tree(const graphs::SupportGraph& g) {
  if (g.edges.empty()) return false;
  if (static_cast<int>(g.edges.size()) != g.n - 1) return false;
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.n;
}

namespace {

bool chordal_rec(std::uint32_t live, const std::vector<std::uint32_t>& adj,
                 std::map<std::uint32_t, bool>& memo) {
  int remaining = 0;
  for (std::uint32_t t = live; t; t &= t - 1) ++remaining;
  if (remaining <= 2) return true;
  auto it = memo.find(live);
  if (it != memo.end()) return it->second;

  bool ok = false;
  for (int v = 0; v < 32 && !ok; ++v) {
    if (!((live >> v) & 1)) continue;
    std::uint32_t nb = adj[v] & live;
    // v is simplicial in G[live] iff its live neighbors are pairwise adjacent
    bool simplicial = true;
    for (int a = 0; a < 32 && simplicial; ++a) {
      if (!((nb >> a) & 1)) continue;
      for (int b = a + 1; b < 32 && simplicial; ++b) {
        if (!((nb >> b) & 1)) continue;
        if (!((adj[a] >> b) & 1)) simplicial = false;
      }
    }
    if (simplicial) ok = chordal_rec(live & ~(1u << v), adj, memo);
  }
  memo[live] = ok;
  return ok;
}

}  // namespace

bool oracle_chordal(const graphs::SupportGraph& g) {
  if (g.n > 32) throw std::invalid_argument("oracle_chordal: too large");
  std::vector<std::uint32_t> adj(32, 0);
  for (auto [i, j] : g.edges) {
    adj[i] |= 1u << j;
    adj[j] |= 1u << i;
  }
  std::uint32_t live = g.n == 32 ? ~0u : ((1u << g.n) - 1);
  std::map<std::uint32_t, bool> memo;
  return chordal_rec(live, adj, memo);
}

bool oracle_planar6(const graphs::SupportGraph& g) {
  const int n = g.n;
  if (n > 6) throw std::invalid_argument("oracle_planar6: n > 6");
  if (n <= 4) return true;
  const int m = static_cast<int>(g.edges.size());
  if (n >= 3 && m > 3 * n - 6) return false;

  auto has = [&g](int a, int b) { return g.has_edge(a, b); };

  // K5 as a subgraph of some 5 vertices.
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::vector<std::vector<int>> fives;
  if (n == 5) {
    fives.push_back({0, 1, 2, 3, 4});
  } else {
    for (int skip = 0; skip < 6; ++skip) {
      std::vector<int> s;
      for (int i = 0; i < 6; ++i)
        if (i != skip) s.push_back(i);
      fives.push_back(s);
    }
  }
  for (const auto& s : fives) {
    bool complete = true;
    int missing_a = -1, missing_b = -1;
    int missing_count = 0;
    for (int a = 0; a < 5; ++a) {
      for (int b = a + 1; b < 5; ++b) {
        if (!has(s[a], s[b])) {
          complete = false;
          ++missing_count;
          missing_a = s[a];
          missing_b = s[b];
        }
      }
    }
    if (complete) return false;  // K5 itself
    // K5 with exactly one edge subdivided through the sixth vertex.
    if (n == 6 && missing_count == 1) {
      int w = -1;
      for (int i = 0; i < 6; ++i)
        if (std::find(s.begin(), s.end(), i) == s.end()) w = i;
      if (has(w, missing_a) && has(w, missing_b)) return false;
    }
  }

  // K33 as a spanning subgraph of the 6 vertices, any 3/3 split.
  if (n == 6) {
    for (std::uint32_t mask = 1; mask < 32; ++mask) {  // vertex 5 fixed on side B
      int bits = 0;
      for (std::uint32_t t = mask; t; t &= t - 1) ++bits;
      if (bits != 3) continue;
      std::vector<int> left, right;
      for (int i = 0; i < 6; ++i)
        ((mask >> i) & 1 ? left : right).push_back(i);
      bool all = true;
      for (int a : left)
        for (int b : right)
          if (!has(a, b)) all = false;
      if (all) return false;
    }
  }
  return true;
}

std::optional<double> oracle_lp_vertex_enum(const relax::ConicProgram& prog) {
  if (prog.lifted) throw std::invalid_argument("oracle expects a plain LP");
  const int n = prog.n;

  // Collect every inequality as a'x <= rhs, bounds included.
  std::vector<Vector> rows;
  std::vector<double> rhs;
  for (const auto& r : prog.rows) {
    rows.push_back(r.coeffs);
    rhs.push_back(r.rhs);
    if (r.sense == relax::RowSense::EQ) {
      rows.push_back(-r.coeffs);
      rhs.push_back(-r.rhs);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (std::isfinite(prog.ub[i])) {
      Vector e = Vector::Zero(n);
      e[i] = 1.0;
      rows.push_back(e);
      rhs.push_back(prog.ub[i]);
    }
    if (std::isfinite(prog.lb[i])) {
      Vector e = Vector::Zero(n);
      e[i] = -1.0;
      rows.push_back(e);
      rhs.push_back(-prog.lb[i]);
    }
  }
  const int rcount = static_cast<int>(rows.size());
  if (rcount < n) return std::nullopt;

  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  // All n-subsets of rows.
  std::vector<int> comb(n);
  for (int i = 0; i < n; ++i) comb[i] = i;
  while (true) {
    Matrix a(n, n);
    Vector r(n);
    for (int i = 0; i < n; ++i) {
      a.row(i) = rows[comb[i]].transpose();
      r[i] = rhs[comb[i]];
    }
    Eigen::FullPivLU<Matrix> lu(a);
    if (lu.isInvertible() && lu.rcond() > 1e-10) {
      Vector x = lu.solve(r);
      bool feasible = true;
      for (int k = 0; k < rcount && feasible; ++k) {
        if (rows[k].dot(x) > rhs[k] + 1e-8) feasible = false;
      }
      if (feasible) {
        double val = prog.obj.dot(x) + prog.obj_constant;
        if (!found || val < best) best = val;
        found = true;
      }
    }
    // next combination
    int i = n - 1;
    while (i >= 0 && comb[i] == rcount - n + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }
  if (!found) return std::nullopt;
  return best;
}

double oracle_convex_qcqp(const QcqpInstance& inst) {
  const int n = inst.n;
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = 0.5 * (inst.l[i] + inst.u[i]);

  auto clamp_box = [&](Vector v) {
    for (int i = 0; i < n; ++i)
      v[i] = std::min(inst.u[i], std::max(inst.l[i], v[i]));
    return v;
  };

  // Quadratic penalty continuation; projected gradient with Armijo
  // backtracking so no Lipschitz constant is needed.
  for (double rho : {1e2, 1e4, 1e6, 1e8, 1e10}) {
    auto penalized = [&](const Vector& v) {
      double f = inst.objective_at(v);
      for (int k = 1; k <= inst.m; ++k) {
        double viol = std::max(0.0, inst.constraint_at(k, v));
        f += rho * viol * viol;
      }
      return f;
    };
    auto gradient = [&](const Vector& v) {
      Vector g = 2.0 * (inst.A[0] * v + inst.b[0]);
      for (int k = 1; k <= inst.m; ++k) {
        double viol = inst.constraint_at(k, v);
        if (viol > 0.0) g += rho * 4.0 * viol * (inst.A[k] * v + inst.b[k]);
      }
      return g;
    };

    double step = 1.0;
    double fx = penalized(x);
    for (int it = 0; it < 60000; ++it) {
      Vector g = gradient(x);
      Vector x_new;
      double f_new = 0.0;
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        x_new = clamp_box(x - step * g);
        Vector d = x_new - x;
        f_new = penalized(x_new);
        if (f_new <= fx + g.dot(d) + 0.5 / step * d.squaredNorm() + 1e-15) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
      double move = (x_new - x).cwiseAbs().maxCoeff();
      x = x_new;
      fx = f_new;
      step = std::min(step * 1.25, 1e6);
      if (move < 1e-14 * std::max(1.0, x.cwiseAbs().maxCoeff())) break;
    }
  }
  return inst.objective_at(x);
}

}  // namespace qcqp::test_oracles
