#ifndef GLIM_CANON_HPP
#define GLIM_CANON_HPP

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "glim/ball.hpp"

namespace glim {

// Canonical code of a rooted (labelled) ball. Two balls get equal codes
// exactly when they are rooted-isomorphic (label- and orientation-
// preserving for labelled balls). Format: "n|adjacency lists|edge labels"
// under the canonical vertex order; the root is always canonical vertex 0.
using Code = std::string;

Code canonical_code(const RootedBall& b);

// Root-preserving isomorphism b1 -> b2 as a vertex map, or nullopt. The
// returned mapping is re-validated edge by edge before being handed out.
// Payload kinds (plain vs labelled) must match.
std::optional<std::vector<int>> rooted_isomorphic(const RootedBall& b1, const RootedBall& b2);

// Number of root-preserving automorphisms (exact enumeration).
long long rooted_automorphism_count(const RootedBall& b);

// Census helper: memoizes codes per isomorphism class so the expensive
// canonical search runs once per class. Safe for concurrent use; cache hits
// never change a code's value, only the time to produce it.
class CodeCache {
 public:
  Code code_of(const RootedBall& b);

 private:
  std::mutex mu_;
  std::map<std::string, std::vector<std::pair<RootedBall, Code>>> buckets_;
};

}  // namespace glim

#endif
