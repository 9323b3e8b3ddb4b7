#ifndef GLIM_BALL_HPP
#define GLIM_BALL_HPP

#include <optional>
#include <vector>

#include "glim/diagram.hpp"
#include "glim/graph.hpp"

namespace glim {

// Rooted ball: induced subgraph on the vertices within distance `radius` of
// the root, re-indexed to 0..k-1 in BFS order (root is vertex 0). `dist`
// holds the distance from the root, `source` the vertex id each ball vertex
// came from. A ball over a labelled host keeps the labels; `labels` empty
// means a plain graph ball.
struct RootedBall {
  Graph graph;
  std::optional<std::vector<EdgeLabel>> labels;
  int root = 0;
  int radius = 0;
  std::vector<int> dist;
  std::vector<int> source;

  bool labelled() const { return labels.has_value(); }
  Diagram as_diagram() const;
};

RootedBall extract_ball(const Graph& g, int v, int r);
RootedBall extract_ball(const Diagram& d, int v, int r);

// Same ball with the labels dropped.
RootedBall strip_labels(RootedBall b);

// Recomputes distances and connectivity from scratch; throws on any
// inconsistency (root not at distance zero, disconnected payload, vertex
// past the radius).
void validate_ball(const RootedBall& b);

}  // namespace glim

#endif
