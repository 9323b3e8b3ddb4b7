#include "glim/metric.hpp"

#include <cmath>

#include "glim/canon.hpp"
#include "glim/errors.hpp"

namespace glim {

double RootedDistance::value() const {
  return std::ldexp(1.0, -(truncated ? probed : agreement));
}

std::string RootedDistance::str() const {
  int r = truncated ? probed : agreement;
  std::string s = "2^-" + std::to_string(r);
  return truncated ? "<=" + s : s;
}

namespace {

void check_sequence(const std::vector<RootedBall>& seq, int r_max) {
  if (r_max < 0) throw UsageError("rooted_distance: negative radius");
  if (seq.size() < static_cast<std::size_t>(r_max) + 1)
    throw UsageError("rooted_distance: ball sequence shorter than r_max");
  for (int r = 0; r <= r_max; ++r)
    if (seq[static_cast<std::size_t>(r)].radius != r)
      throw UsageError("rooted_distance: radius gap in ball sequence");
}

template <typename Host>
std::vector<RootedBall> sequence_impl(const Host& g, int v, int r_max) {
  if (r_max < 0) throw UsageError("ball_sequence: negative radius");
  std::vector<RootedBall> seq;
  seq.reserve(static_cast<std::size_t>(r_max) + 1);
  for (int r = 0; r <= r_max; ++r) seq.push_back(extract_ball(g, v, r));
  return seq;
}

}  // namespace

RootedDistance rooted_distance(const std::vector<RootedBall>& a,
                               const std::vector<RootedBall>& b, int r_max) {
  check_sequence(a, r_max);
  check_sequence(b, r_max);
  RootedDistance out;
  out.probed = r_max;
  out.truncated = true;
  for (int r = 1; r <= r_max; ++r) {
    if (!rooted_isomorphic(a[static_cast<std::size_t>(r)],
                           b[static_cast<std::size_t>(r)])) {
      out.agreement = r - 1;
      out.truncated = false;
      break;
    }
  }
  return out;
}

std::vector<RootedBall> ball_sequence(const Graph& g, int v, int r_max) {
  return sequence_impl(g, v, r_max);
}

std::vector<RootedBall> ball_sequence(const Diagram& d, int v, int r_max) {
  return sequence_impl(d, v, r_max);
}

RootedDistance rooted_distance(const Graph& g, int u, const Graph& h, int v,
                               int r_max) {
  return rooted_distance(ball_sequence(g, u, r_max),
                         ball_sequence(h, v, r_max), r_max);
}

RootedDistance rooted_distance(const Diagram& g, int u, const Diagram& h,
                               int v, int r_max) {
  return rooted_distance(ball_sequence(g, u, r_max),
                         ball_sequence(h, v, r_max), r_max);
}

}  // namespace glim
