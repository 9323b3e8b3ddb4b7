#ifndef GLIM_CENSUS_HPP
#define GLIM_CENSUS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "glim/ball.hpp"
#include "glim/canon.hpp"
#include "glim/diagram.hpp"
#include "glim/graph.hpp"

namespace glim {

// Graph plus a distinguished edge subset (by edge index, sorted ascending).
// Censuses treat the marks as a two-letter edge coloring.
struct MarkedGraph {
  Graph graph;
  std::vector<int> marked_edges;

  void validate() const;
  bool is_marked(int edge_idx) const;

  // Labelled view: "m" on marked edges, "p" on the rest, all unoriented.
  Diagram as_diagram() const;
};

struct BallCensus {
  int radius = 0;
  std::map<Code, long long> counts;
  long long total = 0;
  bool sampled = false;

  double frequency(const Code& code) const;
};

BallCensus ball_census(const Graph& g, int r);
BallCensus ball_census(const Diagram& d, int r);
BallCensus ball_census(const MarkedGraph& k, int r);

// Census over an explicit root set (roots may repeat; counted per entry).
BallCensus ball_census_restricted(const MarkedGraph& k, int r,
                                  const std::vector<int>& roots);

// Census from `samples` roots drawn uniformly with replacement.
BallCensus ball_census_sampled(const Graph& g, int r, long long samples,
                               std::uint64_t seed);
BallCensus ball_census_sampled(const Diagram& d, int r, long long samples,
                               std::uint64_t seed);
BallCensus ball_census_sampled(const MarkedGraph& k, int r, long long samples,
                               std::uint64_t seed);

double census_tv_distance(const BallCensus& c1, const BallCensus& c2);

// Two-sided Wilson score interval at 95% for count successes out of total.
struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};
WilsonInterval wilson_ci(long long count, long long total);

struct GoodFraction {
  long long numer = 0;
  long long denom = 0;
  std::vector<int> good;

  double fraction() const;
};

GoodFraction good_fraction(const Graph& g, const RootedBall& limit);
GoodFraction good_fraction(const Diagram& d, const RootedBall& limit);

// Recovers the base of a C4 product from its fiber map: columns are the
// components of the cross-fiber edges and must hit each fiber exactly once.
// base_of maps every product vertex to its base vertex; base vertices are
// numbered by ascending smallest column member.
struct DerivedBase {
  Graph base;
  std::vector<int> base_of;
};
DerivedBase derive_base(const Graph& g, const std::vector<int>& fiber);

// Product vertices whose column's base r-ball is a tree, ascending.
std::vector<int> tree_base_vertices(const Graph& g,
                                    const std::vector<int>& fiber, int r);

struct MarkedViolation {
  int vertex = 0;
  std::string check;  // "alternation" or "path"
  std::string detail;
};

struct MarkedReport {
  int radius = 0;
  long long checked_vertices = 0;
  long long tree_ball_vertices = 0;
  std::vector<MarkedViolation> violations;

  bool pass() const { return violations.empty(); }
};

// Per-vertex structure of the marks: each vertex must meet one cross-fiber
// and one intra-fiber marked edge, and around vertices with tree base
// r-balls the root's marked component must be a simple path through the
// root covering at least 2r+1 vertices. Requires 2-regular spanning marks.
MarkedReport marked_ball_properties(const MarkedGraph& k,
                                    const std::vector<int>& fiber, int r);

std::string census_to_csv(const BallCensus& c);
BallCensus census_from_csv(const std::string& text);

}  // namespace glim

#endif
