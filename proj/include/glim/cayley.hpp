#ifndef GLIM_CAYLEY_HPP
#define GLIM_CAYLEY_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "glim/ball.hpp"
#include "glim/diagram.hpp"

namespace glim {

// Single-letter generator symbol.  Involutive generators label undirected
// edges, the rest label oriented ones.  Inverses are written as the
// uppercase letter in words and relators.
struct Generator {
  std::string sym;
  bool involutive = false;
};

struct Presentation {
  std::vector<Generator> generators;
  std::vector<std::string> relators;

  void validate() const;
  const Generator* find(char c) const;
};

// The presentation whose Cayley diagram is the limit object: one free
// generator a, three involutions b, c, d.
Presentation group_presentation();

nlohmann::ordered_json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const nlohmann::json& j);

// Whether a generated ball keeps its labels or is a plain graph.
enum class BallMode { graph, diagram };

// Ball in the 3-regular tree seen as the Cayley diagram of <a, b | b^2>.
// Vertex ids follow BFS discovery order with per-vertex expansion order
// a, a^-1, b; the root is the empty word.
struct TreeBall {
  RootedBall ball;
  std::vector<std::string> words;
  int radius = 0;
};

TreeBall tree_ball_detail(int radius);
RootedBall tree_ball(int radius, BallMode mode);

// Ball in the limit object around (empty word, 0).  Vertices carry the
// tree word and the fiber position; expansion order is a, a^-1, b, +1, -1
// around the fiber cycle.
struct LimitBall {
  RootedBall ball;
  std::vector<std::string> words;
  std::vector<int> fiber;
  int radius = 0;
};

LimitBall limit_ball_detail(int radius);
RootedBall limit_ball(int radius, BallMode mode);

// Vertical edge label in the limit object: edges of the fiber 4-cycle are
// keyed by their lower endpoint along the cycle, and the c/d roles swap
// with the parity of the tree word length.
std::string vertical_label(int word_parity, int cycle_key);

struct RelatorTally {
  std::string relator;
  long long closed = 0;
  long long violated = 0;
  long long truncated = 0;
};

struct RelatorReport {
  std::vector<RelatorTally> tallies;
  long long injectivity_violations = 0;

  bool ok() const;
  long long total_violated() const;
};

// Traces every relator from every vertex of a labelled diagram.  Walks
// that run off the edge of the diagram count as truncated; walks that
// complete without returning to their start count as violated.
RelatorReport check_relators(const Diagram& d, const Presentation& p);

}  // namespace glim

#endif
