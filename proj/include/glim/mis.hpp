#ifndef GLIM_MIS_HPP
#define GLIM_MIS_HPP

#include <optional>
#include <vector>

#include "glim/graph.hpp"

namespace glim {

// Independence check; on failure the witness is the smallest violating edge.
std::optional<Edge> independence_witness(const Graph& g,
                                         const std::vector<int>& s);
bool is_independent(const Graph& g, const std::vector<int>& s);

struct MisResult {
  int size = 0;
  std::vector<int> witness;
  bool exact = false;
  int lower = 0;  // == size == upper when exact
  int upper = 0;

  bool operator==(const MisResult& o) const {
    return size == o.size && witness == o.witness && exact == o.exact &&
           lower == o.lower && upper == o.upper;
  }
};

// Exact branch-and-bound (degree pivot, domination pruning, clique-cover
// bound) when the graph has at most exact_cap vertices; otherwise a
// greedy + local-search lower bound against a clique-cover upper bound.
MisResult max_independent_set(const Graph& g, int exact_cap = 150);

}  // namespace glim

#endif
