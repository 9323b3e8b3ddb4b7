#ifndef GLIM_DIAGRAM_HPP
#define GLIM_DIAGRAM_HPP

#include <string>
#include <vector>

#include "glim/graph.hpp"

namespace glim {

// Orientation of a labelled edge, relative to the normalized pair (u,v), u<v.
enum class EdgeDir : unsigned char {
  none = 0,     // unoriented
  forward = 1,  // oriented u -> v
  backward = 2  // oriented v -> u
};

struct EdgeLabel {
  std::string label;
  EdgeDir dir = EdgeDir::none;

  friend bool operator==(const EdgeLabel& a, const EdgeLabel& b) {
    return a.label == b.label && a.dir == b.dir;
  }
};

// Edge-labelled graph. labels runs parallel to graph.edges(); every edge
// carries exactly one label.
struct Diagram {
  Graph graph;
  std::vector<EdgeLabel> labels;

  void validate() const;

  // For an edge oriented tail -> head returns the tail; edge must be oriented.
  int tail_of(int edge_idx) const;
  int head_of(int edge_idx) const;
};

// Enforces the generator conventions used throughout: edges labelled by an
// involutive generator are unoriented, the rest are oriented.
void validate_labelling_alphabet(const Diagram& d,
                                 const std::vector<std::string>& involutive,
                                 const std::vector<std::string>& oriented);

}  // namespace glim

#endif
