#ifndef GLIM_METRIC_HPP
#define GLIM_METRIC_HPP

#include <string>

#include "glim/ball.hpp"
#include "glim/diagram.hpp"
#include "glim/graph.hpp"

namespace glim {

// Outcome of comparing two rooted graphs radius by radius.  `agreement`
// is the largest radius r <= probed for which the r-balls around the two
// roots are isomorphic (as rooted graphs, labels included when present).
// When even the probed radius agrees the distance is only an upper bound
// and `truncated` is set.
struct RootedDistance {
  int agreement = 0;
  int probed = 0;
  bool truncated = false;

  // 2^-agreement, or the 2^-probed upper bound when truncated.
  double value() const;
  std::string str() const;

  bool operator==(const RootedDistance& o) const {
    return agreement == o.agreement && probed == o.probed &&
           truncated == o.truncated;
  }
};

// Distance between two rooted hosts given as ball sequences indexed by
// radius: entry k must be the ball of radius k, 0..r_max at least.
RootedDistance rooted_distance(const std::vector<RootedBall>& a,
                               const std::vector<RootedBall>& b, int r_max);

// Ball sequence 0..r_max around v, ready for rooted_distance.
std::vector<RootedBall> ball_sequence(const Graph& g, int v, int r_max);
std::vector<RootedBall> ball_sequence(const Diagram& d, int v, int r_max);

// Convenience: extracts both sequences and compares.
RootedDistance rooted_distance(const Graph& g, int u, const Graph& h, int v,
                               int r_max);
RootedDistance rooted_distance(const Diagram& g, int u, const Diagram& h,
                               int v, int r_max);

}  // namespace glim

#endif
