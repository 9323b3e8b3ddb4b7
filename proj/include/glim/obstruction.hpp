#ifndef GLIM_OBSTRUCTION_HPP
#define GLIM_OBSTRUCTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "glim/constructions.hpp"
#include "glim/diagram.hpp"

namespace glim {

// Complete edge labelling of a fibered host over the alphabet {a,b,c,d}:
// a oriented, the involutive letters unoriented.
struct Labelling {
  FiberedGraph host;
  std::vector<EdgeLabel> assignment;

  void validate() const;
  Diagram as_diagram() const;
};

// R-good vertices with their isomorphisms onto the limit ball. iotas[k]
// maps ball vertices of extract_ball(lab.as_diagram(), vertices[k], radius)
// to limit ball vertices. unique_isos holds from radius 4 on.
struct GoodSet {
  int radius = 0;
  bool unique_isos = false;
  std::vector<int> vertices;
  std::vector<std::vector<int>> iotas;
};

GoodSet find_r_good(const Labelling& lab, int R);

struct OrientationClass {
  std::vector<int> preserving;  // cyclic fiber order kept
  std::vector<int> reversing;   // cyclic fiber order flipped
};

// Splits a good set by whether the isomorphism carries the host's fiber
// cycle to the limit's fiber cycle forward or backward. Requires the
// unique-isomorphism regime (R >= 4); refuses otherwise.
OrientationClass classify_orientations(const GoodSet& good,
                                       const Labelling& lab);

enum class SearchStrategy { random, propagate, anneal };

SearchStrategy parse_strategy(const std::string& name);
std::string strategy_name(SearchStrategy s);

struct SearchResult {
  Labelling labelling;
  long long good_count = 0;
  double fraction = 0.0;
};

// Best labelling found within budget tries (random: labellings drawn;
// propagate: seeded growths; anneal: single-edge flip steps), scored by the
// number of R-good vertices. Deterministic given the seed.
SearchResult labelling_search(const FiberedGraph& host, int R,
                              SearchStrategy strategy, int budget,
                              std::uint64_t seed);

struct TheoremReport {
  nlohmann::ordered_json json;
  bool pass = false;
};

// Trials rotate through the three strategies unless one is forced.
TheoremReport theorem1_report(
    int n, int R, int trials, std::uint64_t seed, int exact_cap = 150,
    const std::optional<SearchStrategy>& forced = std::nullopt);
TheoremReport theorem2_report(int n, std::uint64_t seed);

}  // namespace glim

#endif
