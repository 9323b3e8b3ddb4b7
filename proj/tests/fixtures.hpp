#ifndef GLIM_TESTS_FIXTURES_HPP
#define GLIM_TESTS_FIXTURES_HPP

#include <string>
#include <utility>
#include <vector>

#include "glim/diagram.hpp"
#include "glim/graph.hpp"

namespace fixtures {

inline glim::Graph cycle_graph(int n) {
  std::vector<glim::Edge> edges;
  for (int i = 0; i < n; ++i)
    edges.push_back(glim::make_edge(i, (i + 1) % n));
  return glim::Graph(n, std::move(edges));
}

inline glim::Graph complete_graph(int n) {
  std::vector<glim::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return glim::Graph(n, std::move(edges));
}

inline glim::Graph path_graph(int n) {
  std::vector<glim::Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return glim::Graph(n, std::move(edges));
}

// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i to i+5.
inline glim::Graph petersen() {
  std::vector<glim::Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back(glim::make_edge(i, (i + 1) % 5));
    edges.push_back(glim::make_edge(5 + i, 5 + (i + 2) % 5));
    edges.push_back(glim::make_edge(i, i + 5));
  }
  return glim::Graph(10, std::move(edges));
}

}  // namespace fixtures

#endif
