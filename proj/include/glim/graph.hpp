#ifndef GLIM_GRAPH_HPP
#define GLIM_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

namespace glim {

using Edge = std::pair<int, int>;  // stored normalized, first < second

Edge make_edge(int u, int v);

// Finite simple graph: vertices 0..n-1, no loops, no parallel edges.
// The edge list is kept sorted so edge indices are stable and lookups are
// binary searches.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edge_list);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const;
  bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }

  // Index of {u,v} in edges(), or -1 when absent.
  int edge_index(int u, int v) const;

  bool is_regular(int d) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

// Simple directed graph: ordered arcs, no self-arcs, no duplicates. Arcs
// are kept sorted for stable serialization.
struct DirectedGraph {
  int n = 0;
  std::vector<std::pair<int, int>> arcs;

  void validate() const;
  std::vector<int> out_degrees() const;
  std::vector<int> in_degrees() const;

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.n == b.n && a.arcs == b.arcs;
  }
};

// Induced subgraph on the given vertices; the returned vector maps local
// ids back to the originals (sorted ascending).
std::pair<Graph, std::vector<int>> induced_subgraph(const Graph& g,
                                                    std::vector<int> verts);

// BFS distances from src; unreachable vertices get -1. If cap >= 0 the
// search stops past distance cap.
std::vector<int> bfs_distances(const Graph& g, int src, int cap = -1);

bool is_connected(const Graph& g);

// Girth with an explicit sentinel for forests: value() is only meaningful
// when the graph has a cycle, and then it is at least 3.
class Girth {
 public:
  static Girth acyclic() { return Girth(0); }
  static Girth cycle(int length);

  bool is_acyclic() const { return value_ == 0; }
  int value() const;
  std::string str() const;

  friend bool operator==(const Girth& a, const Girth& b) { return a.value_ == b.value_; }

 private:
  explicit Girth(int v) : value_(v) {}
  int value_;
};

// Exact girth: per-vertex BFS, shortest cycle seen from any root.
Girth girth(const Graph& g);

}  // namespace glim

#endif
