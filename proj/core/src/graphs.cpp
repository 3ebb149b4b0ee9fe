#include "qcqp/graphs.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace qcqp::graphs {

SupportGraph SupportGraph::from_matrix(const Matrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("support graph needs a square matrix");
  const int n = static_cast<int>(a.rows());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a(i, j) != 0.0) edges.emplace_back(i, j);
  return from_edges(n, std::move(edges));
}

SupportGraph SupportGraph::from_edges(int n,
                                      std::vector<std::pair<int, int>> edges) {
  SupportGraph g;
  g.n = n;
  for (auto& [i, j] : edges) {
    if (i == j) throw std::invalid_argument("self loop");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  g.adj.assign(n, {});
  for (auto [i, j] : g.edges) {
    g.adj[i].push_back(j);
    g.adj[j].push_back(i);
  }
  return g;
}

bool SupportGraph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

bool is_bipartite(const SupportGraph& g) {
  std::vector<int> color(g.n, -1);
  std::deque<int> queue;
  for (int start = 0; start < g.n; ++start) {
    if (color[start] != -1) continue;
    color[start] = 0;
    queue.push_back(start);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : g.adj[v]) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

int reachable_from_zero(const SupportGraph& g) {
  if (g.n == 0) return 0;
  std::vector<char> seen(g.n, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int count = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        queue.push_back(w);
      }
    }
  }
  return count;
}

}  // namespace

bool is_tree(const SupportGraph& g) {
  if (g.edges.empty()) return false;
  if (static_cast<int>(g.edges.size()) != g.n - 1) return false;
  return reachable_from_zero(g) == g.n;
}

bool is_chordal(const SupportGraph& g) {
  const int n = g.n;
  if (n <= 2) return true;

  // Maximum cardinality search. Ties resolve to the lowest index.
  std::vector<int> weight(n, 0), order;
  std::vector<char> numbered(n, 0);
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!numbered[v] && (best == -1 || weight[v] > weight[best])) best = v;
    }
    numbered[best] = 1;
    order.push_back(best);
    for (int w : g.adj[best])
      if (!numbered[w]) ++weight[w];
  }

  // Reverse of the MCS order is the elimination candidate. G is chordal iff
  // it is a perfect elimination ordering.
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = n - 1 - i;  // elimination index

  std::vector<std::vector<char>> adjm(n, std::vector<char>(n, 0));
  for (auto [a, b] : g.edges) adjm[a][b] = adjm[b][a] = 1;

  for (int v = 0; v < n; ++v) {
    int follower = -1;
    for (int w : g.adj[v])
      if (pos[w] > pos[v] && (follower == -1 || pos[w] < pos[follower]))
        follower = w;
    if (follower == -1) continue;
    for (int w : g.adj[v]) {
      if (pos[w] > pos[v] && w != follower && !adjm[follower][w]) return false;
    }
  }
  return true;
}

// ---------------- planarity ----------------

namespace {

struct Bicomp {
  std::vector<std::pair<int, int>> edges;
};

// Hopcroft-Tarjan biconnected components via an explicit edge stack.
std::vector<Bicomp> biconnected_components(const SupportGraph& g) {
  const int n = g.n;
  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
  std::vector<std::pair<int, int>> stack;
  std::vector<Bicomp> out;
  int timer = 0;

  struct Frame {
    int v;
    std::size_t next = 0;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> call{{root}};
    disc[root] = low[root] = timer++;
    while (!call.empty()) {
      Frame& fr = call.back();
      int v = fr.v;
      if (fr.next < g.adj[v].size()) {
        int w = g.adj[v][fr.next++];
        if (disc[w] == -1) {
          parent[w] = v;
          stack.emplace_back(v, w);
          disc[w] = low[w] = timer++;
          call.push_back({w});
        } else if (w != parent[v] && disc[w] < disc[v]) {
          stack.emplace_back(v, w);
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        call.pop_back();
        if (call.empty()) continue;
        int p = call.back().v;
        low[p] = std::min(low[p], low[v]);
        if (low[v] >= disc[p]) {
          Bicomp bc;
          while (!stack.empty()) {
            auto e = stack.back();
            stack.pop_back();
            bc.edges.push_back(e);
            if (e == std::make_pair(p, v)) break;
          }
          if (!bc.edges.empty()) out.push_back(std::move(bc));
        }
      }
    }
  }
  return out;
}

// Path-addition planarity on one biconnected component.
// Faces are simple cycles; a fragment must fit inside a single face whose
// boundary contains all of its contact vertices.
bool planar_bicomp(const std::vector<std::pair<int, int>>& comp_edges) {
  // Relabel vertices 0..v-1.
  std::vector<int> verts;
  for (auto [a, b] : comp_edges) {
    verts.push_back(a);
    verts.push_back(b);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  const int v = static_cast<int>(verts.size());
  const int m = static_cast<int>(comp_edges.size());
  if (v <= 3) return true;
  if (m > 3 * v - 6) return false;

  auto id = [&verts](int orig) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), orig) -
                            verts.begin());
  };
  std::vector<std::vector<char>> adjm(v, std::vector<char>(v, 0));
  std::vector<std::vector<int>> adj(v);
  for (auto [a, b] : comp_edges) {
    int x = id(a), y = id(b);
    adjm[x][y] = adjm[y][x] = 1;
    adj[x].push_back(y);
    adj[y].push_back(x);
  }

  // Initial cycle: walk without immediate backtracking. Every vertex of a
  // biconnected component on >= 3 vertices has degree >= 2, so the walk
  // never stalls and must revisit a walk vertex within v steps.
  std::vector<int> cyc;
  {
    std::vector<int> walk{0};
    std::vector<int> pos_in_walk(v, -1);
    pos_in_walk[0] = 0;
    int prev = -1, cur = 0;
    while (cyc.empty()) {
      int next = -1;
      for (int y : adj[cur]) {
        if (y != prev) {
          next = y;
          break;
        }
      }
      if (next == -1) return true;  // degree-1 stub, nothing to embed
      if (pos_in_walk[next] != -1) {
        cyc.assign(walk.begin() + pos_in_walk[next], walk.end());
      } else {
        pos_in_walk[next] = static_cast<int>(walk.size());
        walk.push_back(next);
        prev = cur;
        cur = next;
      }
    }
  }

  std::vector<char> embedded_v(v, 0);
  std::vector<std::vector<char>> embedded_e(v, std::vector<char>(v, 0));
  auto embed_edge = [&embedded_e](int a, int b) {
    embedded_e[a][b] = embedded_e[b][a] = 1;
  };
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    embedded_v[cyc[i]] = 1;
    embed_edge(cyc[i], cyc[(i + 1) % cyc.size()]);
  }
  std::vector<std::vector<int>> faces{cyc, cyc};
  int edges_left = m - static_cast<int>(cyc.size());

  auto face_mask = [](const std::vector<int>& f) {
    std::uint64_t mask = 0;
    for (int x : f) mask |= std::uint64_t{1} << x;
    return mask;
  };

  while (edges_left > 0) {
    // Fragments: chords between embedded vertices, and attached components
    // of the not-yet-embedded vertices.
    struct Fragment {
      std::vector<int> contacts;       // embedded endpoints
      std::vector<int> interior;       // non-embedded vertices
      std::uint64_t contact_mask = 0;
    };
    std::vector<Fragment> frags;
    for (int a = 0; a < v; ++a) {
      for (int b = a + 1; b < v; ++b) {
        if (adjm[a][b] && !embedded_e[a][b] && embedded_v[a] && embedded_v[b]) {
          Fragment f;
          f.contacts = {a, b};
          f.contact_mask = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
          frags.push_back(std::move(f));
        }
      }
    }
    {
      std::vector<char> grouped(v, 0);
      for (int s = 0; s < v; ++s) {
        if (embedded_v[s] || grouped[s]) continue;
        Fragment f;
        std::uint64_t cmask = 0;
        std::vector<int> stack{s};
        grouped[s] = 1;
        while (!stack.empty()) {
          int x = stack.back();
          stack.pop_back();
          f.interior.push_back(x);
          for (int y : adj[x]) {
            if (embedded_v[y]) {
              if (!(cmask & (std::uint64_t{1} << y))) {
                cmask |= std::uint64_t{1} << y;
                f.contacts.push_back(y);
              }
            } else if (!grouped[y]) {
              grouped[y] = 1;
              stack.push_back(y);
            }
          }
        }
        f.contact_mask = cmask;
        std::sort(f.contacts.begin(), f.contacts.end());
        frags.push_back(std::move(f));
      }
    }
    if (frags.empty()) break;

    // Admissible faces per fragment.
    int pick = -1, pick_count = 0, pick_face = -1;
    for (std::size_t fi = 0; fi < frags.size(); ++fi) {
      int count = 0, first_face = -1;
      std::uint64_t need = frags[fi].contact_mask;
      for (std::size_t k = 0; k < faces.size(); ++k) {
        if ((face_mask(faces[k]) & need) == need) {
          ++count;
          if (first_face == -1) first_face = static_cast<int>(k);
        }
      }
      if (count == 0) return false;
      if (pick == -1 || count < pick_count) {
        pick = static_cast<int>(fi);
        pick_count = count;
        pick_face = first_face;
        if (count == 1) break;  // forced move
      }
    }

    // Path through the picked fragment between two distinct contacts.
    const Fragment& fr = frags[pick];
    std::vector<int> path;
    if (fr.interior.empty()) {
      path = {fr.contacts[0], fr.contacts[1]};
    } else {
      // BFS from the first contact through this fragment's interior only.
      // A contact vertex can touch several fragments, so the search must not
      // leak into a neighboring fragment that shares it.
      int start = fr.contacts[0];
      std::vector<char> in_frag(v, 0);
      for (int x : fr.interior) in_frag[x] = 1;
      std::vector<int> from(v, -2);
      std::deque<int> queue;
      for (int y : adj[start]) {
        if (in_frag[y] && from[y] == -2) {
          from[y] = start;
          queue.push_back(y);
        }
      }
      int goal = -1;
      while (!queue.empty() && goal == -1) {
        int x = queue.front();
        queue.pop_front();
        for (int y : adj[x]) {
          if (embedded_v[y]) {
            if (y != start && (fr.contact_mask >> y) & 1) {
              goal = y;
              from[goal] = x;
              break;
            }
          } else if (in_frag[y] && from[y] == -2) {
            from[y] = x;
            queue.push_back(y);
          }
        }
      }
      if (goal == -1) return false;  // cannot happen in a biconnected comp
      int cur = goal;
      while (cur != start) {
        path.push_back(cur);
        cur = from[cur];
      }
      path.push_back(start);
      std::reverse(path.begin(), path.end());
    }

    // Split the face along the path.
    std::vector<int>& face = faces[pick_face];
    const int u0 = path.front(), u1 = path.back();
    int p0 = -1, p1 = -1;
    for (std::size_t k = 0; k < face.size(); ++k) {
      if (face[k] == u0) p0 = static_cast<int>(k);
      if (face[k] == u1) p1 = static_cast<int>(k);
    }
    const int fsize = static_cast<int>(face.size());
    std::vector<int> arc_a, arc_b;
    for (int k = p0;; k = (k + 1) % fsize) {
      arc_a.push_back(face[k]);
      if (k == p1) break;
    }
    for (int k = p1;; k = (k + 1) % fsize) {
      arc_b.push_back(face[k]);
      if (k == p0) break;
    }
    std::vector<int> face1 = arc_a;  // u0 .. u1 then path interior reversed
    for (int k = static_cast<int>(path.size()) - 2; k >= 1; --k)
      face1.push_back(path[k]);
    std::vector<int> face2 = arc_b;  // u1 .. u0 then path interior forward
    for (int k = 1; k + 1 < static_cast<int>(path.size()); ++k)
      face2.push_back(path[k]);

    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      embed_edge(path[k], path[k + 1]);
      --edges_left;
    }
    for (int x : path) embedded_v[x] = 1;
    faces[pick_face] = std::move(face1);
    faces.push_back(std::move(face2));
  }
  return true;
}

}  // namespace

bool is_planar(const SupportGraph& g) {
  if (g.n > 64)
    throw std::invalid_argument("is_planar supports up to 64 nodes");
  if (g.n <= 4) return true;
  if (static_cast<int>(g.edges.size()) > 3 * g.n - 6) return false;
  for (const Bicomp& bc : biconnected_components(g)) {
    if (!planar_bicomp(bc.edges)) return false;
  }
  return true;
}

PatternFlags pattern_flags(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  SupportGraph g = SupportGraph::from_matrix(a);
  PatternFlags f;
  f.diagonal = g.edges.empty();
  f.hollow = true;
  for (int i = 0; i < n; ++i)
    if (a(i, i) != 0.0) f.hollow = false;
  f.bipartite = is_bipartite(g);
  f.tree = is_tree(g);
  f.chordal = is_chordal(g);
  f.planar = is_planar(g);
  return f;
}

Matrix adjacency_to_distance(const SupportGraph& g, RngStream& rng) {
  Matrix d = Matrix::Zero(g.n, g.n);
  for (auto [i, j] : g.edges) {  // row-major order by construction
    double w = static_cast<double>(rng.uniform_int(-10, 10));
    d(i, j) = w;
    d(j, i) = w;
  }
  return d;
}

}  // namespace qcqp::graphs
