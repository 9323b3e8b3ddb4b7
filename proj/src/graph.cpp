#include "glim/graph.hpp"

#include <algorithm>
#include <queue>

#include "glim/errors.hpp"

namespace glim {

Edge make_edge(int u, int v) {
  if (u == v) throw UsageError("loop edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  return u < v ? Edge{u, v} : Edge{v, u};
}

Graph::Graph(int n, std::vector<Edge> edge_list) : n_(n) {
  if (n < 0) throw UsageError("negative vertex count");
  for (auto& e : edge_list) {
    if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n)
      throw UsageError("edge endpoint out of range");
    e = make_edge(e.first, e.second);
  }
  std::sort(edge_list.begin(), edge_list.end());
  for (std::size_t i = 1; i < edge_list.size(); ++i)
    if (edge_list[i] == edge_list[i - 1]) throw UsageError("parallel edge in edge list");
  edges_ = std::move(edge_list);
  adj_.assign(static_cast<std::size_t>(n_), {});
  for (const auto& [u, v] : edges_) {
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

const std::vector<int>& Graph::neighbors(int v) const {
  if (v < 0 || v >= n_) throw UsageError("vertex out of range");
  return adj_[static_cast<std::size_t>(v)];
}

int Graph::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

int Graph::edge_index(int u, int v) const {
  if (u == v) return -1;
  Edge e = make_edge(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return static_cast<int>(it - edges_.begin());
}

bool Graph::is_regular(int d) const {
  for (int v = 0; v < n_; ++v)
    if (degree(v) != d) return false;
  return true;
}

void DirectedGraph::validate() const {
  if (n < 0) throw UsageError("negative vertex count");
  for (const auto& [t, h] : arcs) {
    if (t < 0 || t >= n || h < 0 || h >= n)
      throw UsageError("arc endpoint out of range");
    if (t == h) throw UsageError("self-arc");
  }
  auto sorted = arcs;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) throw UsageError("duplicate arc");
}

std::vector<int> DirectedGraph::out_degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const auto& [t, h] : arcs) deg[static_cast<std::size_t>(t)] += 1;
  return deg;
}

std::vector<int> DirectedGraph::in_degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const auto& [t, h] : arcs) deg[static_cast<std::size_t>(h)] += 1;
  return deg;
}

std::pair<Graph, std::vector<int>> induced_subgraph(const Graph& g,
                                                    std::vector<int> verts) {
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    int v = verts[i];
    if (v < 0 || v >= g.vertex_count())
      throw UsageError("induced_subgraph: vertex out of range");
    local[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    int lu = local[static_cast<std::size_t>(u)];
    int lv = local[static_cast<std::size_t>(v)];
    if (lu >= 0 && lv >= 0) edges.push_back({lu, lv});
  }
  return {Graph(static_cast<int>(verts.size()), std::move(edges)),
          std::move(verts)};
}

std::vector<int> bfs_distances(const Graph& g, int src, int cap) {
  int n = g.vertex_count();
  if (src < 0 || src >= n) throw UsageError("bfs source out of range");
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::queue<int> q;
  dist[static_cast<std::size_t>(src)] = 0;
  q.push(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    int du = dist[static_cast<std::size_t>(u)];
    if (cap >= 0 && du >= cap) continue;
    for (int w : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = du + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  auto dist = bfs_distances(g, 0);
  for (int d : dist)
    if (d < 0) return false;
  return true;
}

Girth Girth::cycle(int length) {
  if (length < 3) throw UsageError("cycle length below 3");
  return Girth(length);
}

int Girth::value() const {
  if (value_ == 0) throw UsageError("girth value requested for an acyclic graph");
  return value_;
}

std::string Girth::str() const { return value_ == 0 ? "acyclic" : std::to_string(value_); }

Girth girth(const Graph& g) {
  int n = g.vertex_count();
  int best = -1;
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::queue<int> q;
    dist[static_cast<std::size_t>(root)] = 0;
    q.push(root);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (best >= 0 && 2 * dist[static_cast<std::size_t>(u)] >= best) continue;
      for (int w : g.neighbors(u)) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          parent[static_cast<std::size_t>(w)] = u;
          q.push(w);
        } else if (w != parent[static_cast<std::size_t>(u)]) {
          int len = dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(w)] + 1;
          if (best < 0 || len < best) best = len;
        }
      }
    }
  }
  return best < 0 ? Girth::acyclic() : Girth::cycle(best);
}

}  // namespace glim
