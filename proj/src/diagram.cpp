#include "glim/diagram.hpp"

#include <algorithm>

#include "glim/errors.hpp"

namespace glim {

void Diagram::validate() const {
  if (static_cast<int>(labels.size()) != graph.edge_count())
    throw UsageError("diagram label list does not cover the edge set");
  for (const auto& l : labels)
    if (l.label.empty()) throw UsageError("empty edge label");
}

int Diagram::tail_of(int edge_idx) const {
  const auto& e = graph.edges().at(static_cast<std::size_t>(edge_idx));
  const auto& l = labels.at(static_cast<std::size_t>(edge_idx));
  if (l.dir == EdgeDir::none) throw UsageError("tail_of on an unoriented edge");
  return l.dir == EdgeDir::forward ? e.first : e.second;
}

int Diagram::head_of(int edge_idx) const {
  const auto& e = graph.edges().at(static_cast<std::size_t>(edge_idx));
  const auto& l = labels.at(static_cast<std::size_t>(edge_idx));
  if (l.dir == EdgeDir::none) throw UsageError("head_of on an unoriented edge");
  return l.dir == EdgeDir::forward ? e.second : e.first;
}

void validate_labelling_alphabet(const Diagram& d,
                                 const std::vector<std::string>& involutive,
                                 const std::vector<std::string>& oriented) {
  d.validate();
  auto contains = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    const auto& l = d.labels[i];
    if (contains(involutive, l.label)) {
      if (l.dir != EdgeDir::none)
        throw UsageError("involutive label '" + l.label + "' carries an orientation");
    } else if (contains(oriented, l.label)) {
      if (l.dir == EdgeDir::none)
        throw UsageError("label '" + l.label + "' requires an orientation");
    } else {
      throw UsageError("label '" + l.label + "' outside the declared alphabet");
    }
  }
}

}  // namespace glim
