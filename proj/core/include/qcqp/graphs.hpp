#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qcqp/instance.hpp"
#include "qcqp/rng.hpp"

namespace qcqp::graphs {

// Undirected support graph of a symmetric matrix: one node per index, an
// edge wherever an off-diagonal entry is exactly nonzero.
struct SupportGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, row-major order
  std::vector<std::vector<int>> adj;

  static SupportGraph from_matrix(const Matrix& a);
  static SupportGraph from_edges(int n, std::vector<std::pair<int, int>> edges);
  bool has_edge(int i, int j) const;
};

// Order matches the feature layout: D, H, B, T, C, P.
struct PatternFlags {
  bool diagonal = false;
  bool hollow = false;
  bool bipartite = false;
  bool tree = false;
  bool chordal = false;
  bool planar = false;
  std::array<double, 6> as_doubles() const {
    return {diagonal ? 1.0 : 0.0, hollow ? 1.0 : 0.0, bipartite ? 1.0 : 0.0,
            tree ? 1.0 : 0.0,     chordal ? 1.0 : 0.0, planar ? 1.0 : 0.0};
  }
};

PatternFlags pattern_flags(const Matrix& a);

bool is_bipartite(const SupportGraph& g);
// Connected, acyclic, exactly n-1 edges. Edgeless graphs do not count.
bool is_tree(const SupportGraph& g);
// Maximum cardinality search followed by perfect elimination verification.
bool is_chordal(const SupportGraph& g);
// Euler bound prefilter, biconnected decomposition, then path addition
// (Demoucron-Malgrange-Pertuiset) per biconnected component.
bool is_planar(const SupportGraph& g);

// Weighted symmetric matrix from a graph: each edge draws one integer weight
// uniformly from -10..10 (row-major edge order), mirrored across the
// diagonal. A drawn zero silently deletes the edge; the diagonal stays zero.
Matrix adjacency_to_distance(const SupportGraph& g, RngStream& rng);

}  // namespace qcqp::graphs
