#include "glim/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "glim/errors.hpp"

namespace glim {

namespace {

constexpr const char* kGraphVersion = "glim-graph-v1";

[[noreturn]] void bad(const std::string& what) {
  throw IoError("malformed graph file: " + what);
}

int require_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    bad(std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

}  // namespace

Diagram GraphFile::as_diagram() const {
  if (!labels) throw UsageError("graph file carries no labels");
  Diagram d{graph, *labels};
  d.validate();
  return d;
}

nlohmann::ordered_json graph_file_to_json(const GraphFile& gf) {
  nlohmann::ordered_json j;
  j["version"] = kGraphVersion;
  j["n"] = gf.graph.vertex_count();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : gf.graph.edges())
    edges.push_back({e.first, e.second});
  j["edges"] = std::move(edges);
  if (gf.labels) {
    auto labels = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < gf.labels->size(); ++i) {
      const EdgeLabel& el = (*gf.labels)[i];
      const Edge& e = gf.graph.edges()[i];
      nlohmann::ordered_json rec;
      rec["edge"] = {e.first, e.second};
      rec["label"] = el.label;
      if (el.dir == EdgeDir::none)
        rec["dir"] = nullptr;
      else if (el.dir == EdgeDir::forward)
        rec["dir"] = {e.first, e.second};
      else
        rec["dir"] = {e.second, e.first};
      labels.push_back(std::move(rec));
    }
    j["labels"] = std::move(labels);
  }
  if (gf.fibers) j["fibers"] = *gf.fibers;
  if (gf.marks) {
    auto marks = nlohmann::ordered_json::array();
    for (bool m : *gf.marks) marks.push_back(m ? 1 : 0);
    j["marks"] = std::move(marks);
  }
  if (gf.ham_cycle) j["ham_cycle"] = *gf.ham_cycle;
  return j;
}

GraphFile graph_file_from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad("top level is not an object");
  if (!j.contains("version") || j["version"] != kGraphVersion)
    bad("unsupported version");
  int n = require_int(j, "n");
  if (!j.contains("edges") || !j["edges"].is_array()) bad("missing edges");
  std::vector<Edge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) bad("edge is not a pair");
    int u = e[0].get<int>();
    int v = e[1].get<int>();
    if (u >= v) bad("edge endpoints not in increasing order");
    edges.push_back({u, v});
  }
  GraphFile gf;
  try {
    gf.graph = Graph(n, edges);
  } catch (const UsageError& e) {
    bad(e.what());
  }
  if (gf.graph.edges() != edges) bad("edges not sorted");

  if (j.contains("labels")) {
    if (!j["labels"].is_array() ||
        j["labels"].size() != static_cast<std::size_t>(gf.graph.edge_count()))
      bad("labels do not cover the edge set");
    std::vector<EdgeLabel> labels(
        static_cast<std::size_t>(gf.graph.edge_count()));
    std::vector<char> seen(labels.size(), 0);
    for (const auto& rec : j["labels"]) {
      if (!rec.contains("edge") || !rec["edge"].is_array() ||
          rec["edge"].size() != 2)
        bad("label edge is not a pair");
      int eu = rec["edge"][0].get<int>();
      int ev = rec["edge"][1].get<int>();
      if (eu == ev || eu < 0 || ev < 0 || eu >= n || ev >= n)
        bad("label edge endpoints out of range");
      int idx = gf.graph.edge_index(eu, ev);
      if (idx < 0 || seen[static_cast<std::size_t>(idx)])
        bad("label names a missing or repeated edge");
      seen[static_cast<std::size_t>(idx)] = 1;
      if (!rec.contains("label") || !rec["label"].is_string())
        bad("label text missing");
      EdgeLabel el;
      el.label = rec["label"].get<std::string>();
      const Edge& e = gf.graph.edges()[static_cast<std::size_t>(idx)];
      if (!rec.contains("dir") || rec["dir"].is_null()) {
        el.dir = EdgeDir::none;
      } else {
        const auto& d = rec["dir"];
        if (!d.is_array() || d.size() != 2) bad("dir is not a pair");
        int t = d[0].get<int>();
        int h = d[1].get<int>();
        if (t == e.first && h == e.second)
          el.dir = EdgeDir::forward;
        else if (t == e.second && h == e.first)
          el.dir = EdgeDir::backward;
        else
          bad("dir does not match the edge endpoints");
      }
      labels[static_cast<std::size_t>(idx)] = std::move(el);
    }
    gf.labels = std::move(labels);
  }

  if (j.contains("fibers")) {
    if (!j["fibers"].is_array() ||
        j["fibers"].size() != static_cast<std::size_t>(n))
      bad("fibers do not cover the vertex set");
    std::vector<int> fibers;
    for (const auto& f : j["fibers"]) {
      int v = f.get<int>();
      if (v < 0 || v > 3) bad("fiber value outside 0..3");
      fibers.push_back(v);
    }
    gf.fibers = std::move(fibers);
  }

  if (j.contains("marks")) {
    if (!j["marks"].is_array() ||
        j["marks"].size() != static_cast<std::size_t>(gf.graph.edge_count()))
      bad("marks do not cover the edge set");
    std::vector<bool> marks;
    for (const auto& m : j["marks"]) {
      if (m.is_boolean()) {
        marks.push_back(m.get<bool>());
      } else if (m.is_number_integer() &&
                 (m.get<int>() == 0 || m.get<int>() == 1)) {
        marks.push_back(m.get<int>() == 1);
      } else {
        bad("mark is not 0 or 1");
      }
    }
    gf.marks = std::move(marks);
  }

  if (j.contains("ham_cycle")) {
    if (!j["ham_cycle"].is_array()) bad("ham_cycle is not an array");
    std::vector<int> cyc = j["ham_cycle"].get<std::vector<int>>();
    if (cyc.size() != static_cast<std::size_t>(n))
      bad("ham_cycle does not visit every vertex");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : cyc) {
      if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
        bad("ham_cycle repeats or leaves range");
      seen[static_cast<std::size_t>(v)] = 1;
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int u = cyc[i];
      int v = cyc[(i + 1) % cyc.size()];
      if (!gf.graph.has_edge(u, v)) bad("ham_cycle uses a non-edge");
    }
    gf.ham_cycle = std::move(cyc);
  }

  return gf;
}

GraphFile read_graph_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("cannot parse " + path + ": " + e.what());
  }
  return graph_file_from_json(j);
}

void write_graph_file(const std::string& path, const GraphFile& gf) {
  write_json_file(path, graph_file_to_json(gf));
}

nlohmann::ordered_json digraph_to_json(const DirectedGraph& dg) {
  nlohmann::ordered_json j;
  j["n"] = dg.n;
  auto arcs = nlohmann::ordered_json::array();
  for (const auto& a : dg.arcs) arcs.push_back({a.first, a.second});
  j["arcs"] = std::move(arcs);
  return j;
}

DirectedGraph digraph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad("digraph top level is not an object");
  DirectedGraph dg;
  dg.n = require_int(j, "n");
  if (!j.contains("arcs") || !j["arcs"].is_array()) bad("missing arcs");
  for (const auto& a : j["arcs"]) {
    if (!a.is_array() || a.size() != 2) bad("arc is not a pair");
    dg.arcs.push_back({a[0].get<int>(), a[1].get<int>()});
  }
  try {
    dg.validate();
  } catch (const UsageError& e) {
    bad(e.what());
  }
  return dg;
}

DirectedGraph read_digraph_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("cannot parse " + path + ": " + e.what());
  }
  return digraph_from_json(j);
}

void write_digraph_file(const std::string& path, const DirectedGraph& dg) {
  write_json_file(path, digraph_to_json(dg));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failure on " + path);
}

void write_json_file(const std::string& path,
                     const nlohmann::ordered_json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace glim
