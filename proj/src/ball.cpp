#include "glim/ball.hpp"

#include <algorithm>
#include <queue>

#include "glim/errors.hpp"

namespace glim {
namespace {

RootedBall extract_impl(const Graph& g, const std::vector<EdgeLabel>* labels, int v, int r) {
  if (r < 0) throw UsageError("negative ball radius");
  if (v < 0 || v >= g.vertex_count()) throw UsageError("ball root out of range");

  // BFS in sorted-neighbor order makes the local ids deterministic.
  std::vector<int> dist_src(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<int> order;
  std::queue<int> q;
  dist_src[static_cast<std::size_t>(v)] = 0;
  q.push(v);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    order.push_back(u);
    if (dist_src[static_cast<std::size_t>(u)] >= r) continue;
    for (int w : g.neighbors(u)) {
      if (dist_src[static_cast<std::size_t>(w)] < 0) {
        dist_src[static_cast<std::size_t>(w)] = dist_src[static_cast<std::size_t>(u)] + 1;
        q.push(w);
      }
    }
  }

  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < order.size(); ++i)
    local[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

  struct Item {
    Edge e;
    EdgeLabel l;
    bool labelled;
  };
  std::vector<Item> items;
  for (int ei = 0; ei < g.edge_count(); ++ei) {
    const auto& [a, b] = g.edges()[static_cast<std::size_t>(ei)];
    int la = local[static_cast<std::size_t>(a)];
    int lb = local[static_cast<std::size_t>(b)];
    if (la < 0 || lb < 0) continue;
    Item it;
    it.labelled = labels != nullptr;
    if (labels) it.l = (*labels)[static_cast<std::size_t>(ei)];
    if (la < lb) {
      it.e = {la, lb};
    } else {
      it.e = {lb, la};
      // Orientation is stored relative to the normalized pair; swapping the
      // endpoints swaps forward and backward.
      if (it.labelled && it.l.dir != EdgeDir::none)
        it.l.dir = it.l.dir == EdgeDir::forward ? EdgeDir::backward : EdgeDir::forward;
    }
    items.push_back(std::move(it));
  }
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.e < y.e; });

  RootedBall ball;
  std::vector<Edge> edges;
  edges.reserve(items.size());
  for (const auto& it : items) edges.push_back(it.e);
  ball.graph = Graph(static_cast<int>(order.size()), std::move(edges));
  if (labels) {
    std::vector<EdgeLabel> ls;
    ls.reserve(items.size());
    for (const auto& it : items) ls.push_back(it.l);
    ball.labels = std::move(ls);
  }
  ball.root = 0;
  ball.radius = r;
  ball.dist.resize(order.size());
  ball.source.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    ball.dist[i] = dist_src[static_cast<std::size_t>(order[i])];
    ball.source[i] = order[i];
  }
  return ball;
}

}  // namespace

Diagram RootedBall::as_diagram() const {
  if (!labels) throw UsageError("as_diagram on a plain graph ball");
  return Diagram{graph, *labels};
}

RootedBall extract_ball(const Graph& g, int v, int r) { return extract_impl(g, nullptr, v, r); }

RootedBall extract_ball(const Diagram& d, int v, int r) {
  d.validate();
  return extract_impl(d.graph, &d.labels, v, r);
}

RootedBall strip_labels(RootedBall b) {
  b.labels.reset();
  return b;
}

void validate_ball(const RootedBall& b) {
  int n = b.graph.vertex_count();
  if (n == 0) throw UsageError("empty ball");
  if (b.root != 0) throw UsageError("ball root must be local vertex 0");
  if (static_cast<int>(b.dist.size()) != n || static_cast<int>(b.source.size()) != n)
    throw UsageError("ball bookkeeping arrays out of sync");
  if (b.labels && static_cast<int>(b.labels->size()) != b.graph.edge_count())
    throw UsageError("ball label list out of sync");
  auto d = bfs_distances(b.graph, b.root);
  for (int v = 0; v < n; ++v) {
    if (d[static_cast<std::size_t>(v)] < 0) throw UsageError("ball payload is disconnected");
    if (d[static_cast<std::size_t>(v)] != b.dist[static_cast<std::size_t>(v)])
      throw UsageError("ball distance map is wrong");
    if (d[static_cast<std::size_t>(v)] > b.radius) throw UsageError("ball vertex past the radius");
  }
  if (b.dist[static_cast<std::size_t>(b.root)] != 0) throw UsageError("root distance nonzero");
}

}  // namespace glim
