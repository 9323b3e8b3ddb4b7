#ifndef GLIM_JSON_IO_HPP
#define GLIM_JSON_IO_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "glim/diagram.hpp"
#include "glim/graph.hpp"

namespace glim {

// On-disk graph container, format "glim-graph-v1".  Everything beyond the
// edge list is optional; `labels` and `marks` are parallel to the edge
// order of `graph`, `fibers` is parallel to the vertices.
struct GraphFile {
  Graph graph;
  std::optional<std::vector<EdgeLabel>> labels;
  std::optional<std::vector<int>> fibers;
  std::optional<std::vector<bool>> marks;
  std::optional<std::vector<int>> ham_cycle;

  Diagram as_diagram() const;
};

nlohmann::ordered_json graph_file_to_json(const GraphFile& gf);
GraphFile graph_file_from_json(const nlohmann::json& j);

GraphFile read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const GraphFile& gf);

// Directed companion format {"n":int,"arcs":[[u,v],...]} used for the
// four-partite intermediate stage of the finite construction.
nlohmann::ordered_json digraph_to_json(const DirectedGraph& dg);
DirectedGraph digraph_from_json(const nlohmann::json& j);

DirectedGraph read_digraph_file(const std::string& path);
void write_digraph_file(const std::string& path, const DirectedGraph& dg);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const nlohmann::ordered_json& j);

// Shortest round-trip decimal form, locale independent.
std::string format_double(double x);

}  // namespace glim

#endif
