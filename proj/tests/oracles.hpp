#ifndef GLIM_TESTS_ORACLES_HPP
#define GLIM_TESTS_ORACLES_HPP

// Brute-force reference implementations used only by the tests. They share
// no code with the library algorithms they double-check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "glim/ball.hpp"
#include "glim/diagram.hpp"
#include "glim/graph.hpp"
#include "glim/rng.hpp"

namespace oracles {

// Distance multiset from the root, recomputed by a plain queue-free BFS.
inline std::vector<int> root_distances(const glim::Graph& g, int root) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<int> frontier{root};
  dist[static_cast<std::size_t>(root)] = 0;
  int d = 0;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int u : frontier)
      for (int w : g.neighbors(u))
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = d + 1;
          next.push_back(w);
        }
    frontier = std::move(next);
    ++d;
  }
  return dist;
}

// Expected image of an edge direction when the endpoint order flips.
inline glim::EdgeDir mapped_dir(glim::EdgeDir dir, bool order_kept) {
  if (dir == glim::EdgeDir::none || order_kept) return dir;
  return dir == glim::EdgeDir::forward ? glim::EdgeDir::backward
                                       : glim::EdgeDir::forward;
}

// Rooted (labelled) isomorphism by enumerating every root-fixing bijection.
inline bool brute_rooted_isomorphic(const glim::RootedBall& a,
                                    const glim::RootedBall& b) {
  int n = a.graph.vertex_count();
  if (n != b.graph.vertex_count()) return false;
  if (a.graph.edge_count() != b.graph.edge_count()) return false;
  if (a.labelled() != b.labelled()) return false;

  std::vector<int> deg_a, deg_b;
  for (int v = 0; v < n; ++v) {
    deg_a.push_back(a.graph.degree(v));
    deg_b.push_back(b.graph.degree(v));
  }
  if (deg_a[static_cast<std::size_t>(a.root)] !=
      deg_b[static_cast<std::size_t>(b.root)])
    return false;
  {
    std::vector<int> sa = deg_a, sb = deg_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    std::vector<int> da = root_distances(a.graph, a.root);
    std::vector<int> db = root_distances(b.graph, b.root);
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
  }

  std::vector<int> dom, img;
  for (int v = 0; v < n; ++v)
    if (v != a.root) dom.push_back(v);
  for (int v = 0; v < n; ++v)
    if (v != b.root) img.push_back(v);

  std::vector<int> map(static_cast<std::size_t>(n), -1);
  do {
    map[static_cast<std::size_t>(a.root)] = b.root;
    for (std::size_t i = 0; i < dom.size(); ++i)
      map[static_cast<std::size_t>(dom[i])] = img[i];

    bool ok = true;
    const auto& edges = a.graph.edges();
    for (std::size_t e = 0; e < edges.size() && ok; ++e) {
      int u = edges[e].first, v = edges[e].second;
      int x = map[static_cast<std::size_t>(u)];
      int y = map[static_cast<std::size_t>(v)];
      int idx = b.graph.edge_index(std::min(x, y), std::max(x, y));
      if (idx < 0) {
        ok = false;
        break;
      }
      if (a.labelled()) {
        const glim::EdgeLabel& la = (*a.labels)[e];
        const glim::EdgeLabel& lb = (*b.labels)[static_cast<std::size_t>(idx)];
        if (la.label != lb.label ||
            mapped_dir(la.dir, x < y) != lb.dir) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return true;
  } while (std::next_permutation(img.begin(), img.end()));
  return false;
}

// Girth by removing each edge in turn and measuring the detour.
inline glim::Girth brute_girth(const glim::Graph& g) {
  int best = -1;
  for (const glim::Edge& e : g.edges()) {
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<int> frontier{e.first};
    dist[static_cast<std::size_t>(e.first)] = 0;
    int d = 0;
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int u : frontier)
        for (int w : g.neighbors(u)) {
          if ((u == e.first && w == e.second) ||
              (u == e.second && w == e.first))
            continue;
          if (dist[static_cast<std::size_t>(w)] < 0) {
            dist[static_cast<std::size_t>(w)] = d + 1;
            next.push_back(w);
          }
        }
      frontier = std::move(next);
      ++d;
    }
    int detour = dist[static_cast<std::size_t>(e.second)];
    if (detour >= 0 && (best < 0 || detour + 1 < best)) best = detour + 1;
  }
  return best < 0 ? glim::Girth::acyclic() : glim::Girth::cycle(best);
}

// Vertices within distance r of v, ascending.
inline std::vector<int> ball_vertex_set(const glim::Graph& g, int v, int r) {
  std::vector<int> dist = root_distances(g, v);
  std::vector<int> out;
  for (int u = 0; u < g.vertex_count(); ++u)
    if (dist[static_cast<std::size_t>(u)] >= 0 &&
        dist[static_cast<std::size_t>(u)] <= r)
      out.push_back(u);
  return out;
}

// Exhaustive maximum independent set via take/skip recursion, no pruning
// beyond the recursion itself. Usable up to ~20 vertices.
inline int brute_mis_rec(const std::vector<std::uint64_t>& adj,
                         std::uint64_t avail) {
  if (avail == 0) return 0;
  int v = __builtin_ctzll(avail);
  std::uint64_t bit = 1ull << v;
  int skip = brute_mis_rec(adj, avail & ~bit);
  int take = 1 + brute_mis_rec(adj, avail & ~(adj[static_cast<std::size_t>(v)] | bit));
  return std::max(skip, take);
}

inline int brute_mis(const glim::Graph& g) {
  int n = g.vertex_count();
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
  for (const glim::Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.first)] |= 1ull << e.second;
    adj[static_cast<std::size_t>(e.second)] |= 1ull << e.first;
  }
  std::uint64_t all = n == 64 ? ~0ull : (1ull << n) - 1;
  return brute_mis_rec(adj, all);
}

// Subset enumeration, usable up to ~16 vertices; cross-checks brute_mis.
inline int subset_mis(const glim::Graph& g) {
  int n = g.vertex_count();
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
  for (const glim::Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.first)] |= 1ull << e.second;
    adj[static_cast<std::size_t>(e.second)] |= 1ull << e.first;
  }
  int best = 0;
  for (std::uint64_t s = 0; s < (1ull << n); ++s) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      if ((s >> v) & 1ull)
        if (adj[static_cast<std::size_t>(v)] & s) ok = false;
    if (ok) best = std::max(best, __builtin_popcountll(s));
  }
  return best;
}

inline glim::Graph random_graph(int n, double p, glim::Rng& rng) {
  std::vector<glim::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.unit() < p) edges.push_back({u, v});
  return glim::Graph(n, std::move(edges));
}

inline glim::EdgeLabel random_label(glim::Rng& rng) {
  switch (rng.below(5)) {
    case 0:
      return {"a", glim::EdgeDir::forward};
    case 1:
      return {"a", glim::EdgeDir::backward};
    case 2:
      return {"b", glim::EdgeDir::none};
    case 3:
      return {"c", glim::EdgeDir::none};
    default:
      return {"d", glim::EdgeDir::none};
  }
}

inline glim::Diagram random_diagram(int n, double p, glim::Rng& rng) {
  glim::Diagram d;
  d.graph = random_graph(n, p, rng);
  for (int e = 0; e < d.graph.edge_count(); ++e)
    d.labels.push_back(random_label(rng));
  return d;
}

}  // namespace oracles

#endif
