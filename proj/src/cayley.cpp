#include "glim/cayley.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>

#include "glim/errors.hpp"

namespace glim {

namespace {

bool is_lower_letter(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper_letter(char c) { return c >= 'A' && c <= 'Z'; }

// Appending g to a reduced word cancels iff g undoes the last letter.
bool cancels(const std::string& word, char g) {
  if (word.empty()) return false;
  char last = word.back();
  if (g == 'a') return last == 'A';
  if (g == 'A') return last == 'a';
  return last == g;
}

// Builds a ball whose host is the ball itself: ids are already 0..n-1 in
// BFS order, so `source` is the identity.
RootedBall assemble(int n, const std::vector<std::pair<Edge, EdgeLabel>>& items,
                    std::vector<int> dist, int radius) {
  std::vector<Edge> edges;
  edges.reserve(items.size());
  for (const auto& it : items) edges.push_back(it.first);
  RootedBall b;
  b.graph = Graph(n, edges);
  std::vector<EdgeLabel> labels(items.size());
  for (const auto& it : items)
    labels[static_cast<std::size_t>(
        b.graph.edge_index(it.first.first, it.first.second))] = it.second;
  b.labels = std::move(labels);
  b.root = 0;
  b.radius = radius;
  b.dist = std::move(dist);
  b.source.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) b.source[static_cast<std::size_t>(i)] = i;
  return b;
}

EdgeLabel oriented_label(const std::string& sym, int tail, int head) {
  EdgeLabel el;
  el.label = sym;
  el.dir = tail < head ? EdgeDir::forward : EdgeDir::backward;
  return el;
}

}  // namespace

void Presentation::validate() const {
  if (generators.empty()) throw UsageError("presentation has no generators");
  std::vector<char> seen;
  for (const auto& g : generators) {
    if (g.sym.size() != 1 || !is_lower_letter(g.sym[0]))
      throw UsageError("generator symbol must be a single lowercase letter");
    if (std::find(seen.begin(), seen.end(), g.sym[0]) != seen.end())
      throw UsageError("duplicate generator symbol " + g.sym);
    seen.push_back(g.sym[0]);
  }
  for (const auto& r : relators) {
    if (r.empty()) throw UsageError("empty relator");
    for (char c : r) {
      if (is_lower_letter(c)) {
        if (!find(c)) throw UsageError(std::string("relator uses unknown generator ") + c);
      } else if (is_upper_letter(c)) {
        const Generator* g = find(static_cast<char>(std::tolower(c)));
        if (!g) throw UsageError(std::string("relator uses unknown generator ") + c);
        if (g->involutive)
          throw UsageError("relator uses formal inverse of involutive generator " + g->sym);
      } else {
        throw UsageError("relator contains a non-letter");
      }
    }
  }
}

const Generator* Presentation::find(char c) const {
  for (const auto& g : generators)
    if (g.sym.size() == 1 && g.sym[0] == c) return &g;
  return nullptr;
}

Presentation group_presentation() {
  Presentation p;
  p.generators = {{"a", false}, {"b", true}, {"c", true}, {"d", true}};
  p.relators = {"bb", "cc", "dd", "cdcd", "adAc", "acAd", "bcbd"};
  p.validate();
  return p;
}

nlohmann::ordered_json presentation_to_json(const Presentation& p) {
  nlohmann::ordered_json j;
  auto gens = nlohmann::ordered_json::array();
  for (const auto& g : p.generators)
    gens.push_back({{"sym", g.sym}, {"involutive", g.involutive}});
  j["generators"] = std::move(gens);
  j["relators"] = p.relators;
  return j;
}

Presentation presentation_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("generators") || !j.contains("relators"))
    throw IoError("malformed presentation file");
  Presentation p;
  for (const auto& g : j["generators"]) {
    if (!g.contains("sym") || !g["sym"].is_string() ||
        !g.contains("involutive") || !g["involutive"].is_boolean())
      throw IoError("malformed generator record");
    p.generators.push_back({g["sym"].get<std::string>(),
                            g["involutive"].get<bool>()});
  }
  if (!j["relators"].is_array()) throw IoError("malformed relator list");
  for (const auto& r : j["relators"]) {
    if (!r.is_string()) throw IoError("malformed relator list");
    p.relators.push_back(r.get<std::string>());
  }
  p.validate();
  return p;
}

TreeBall tree_ball_detail(int radius) {
  if (radius < 0) throw UsageError("tree_ball: negative radius");
  TreeBall tb;
  tb.radius = radius;
  tb.words.push_back("");
  std::vector<int> dist{0};
  std::vector<std::pair<Edge, EdgeLabel>> items;
  static const char kOrder[] = {'a', 'A', 'b'};
  for (std::size_t u = 0; u < tb.words.size(); ++u) {
    if (dist[u] == radius) continue;
    for (char g : kOrder) {
      const std::string& w = tb.words[u];
      if (cancels(w, g)) continue;
      int v = static_cast<int>(tb.words.size());
      tb.words.push_back(w + g);
      dist.push_back(dist[u] + 1);
      int iu = static_cast<int>(u);
      Edge e = make_edge(iu, v);
      EdgeLabel el;
      if (g == 'b') {
        el.label = "b";
        el.dir = EdgeDir::none;
      } else if (g == 'a') {
        el = oriented_label("a", iu, v);
      } else {
        el = oriented_label("a", v, iu);
      }
      items.push_back({e, el});
    }
  }
  tb.ball = assemble(static_cast<int>(tb.words.size()), items,
                     std::move(dist), radius);
  validate_ball(tb.ball);
  return tb;
}

std::string vertical_label(int word_parity, int cycle_key) {
  bool low = cycle_key == 0 || cycle_key == 2;
  if (word_parity % 2 == 0) return low ? "c" : "d";
  return low ? "d" : "c";
}

RootedBall tree_ball(int radius, BallMode mode) {
  RootedBall b = tree_ball_detail(radius).ball;
  return mode == BallMode::diagram ? b : strip_labels(std::move(b));
}

LimitBall limit_ball_detail(int radius) {
  if (radius < 0) throw UsageError("limit_ball: negative radius");
  LimitBall lb;
  lb.radius = radius;
  std::map<std::pair<std::string, int>, int> ids;
  std::vector<int> dist;
  auto intern = [&](const std::string& w, int i) {
    auto [it, fresh] = ids.try_emplace({w, i}, static_cast<int>(lb.words.size()));
    if (fresh) {
      lb.words.push_back(w);
      lb.fiber.push_back(i);
      dist.push_back(-1);
    }
    return it->second;
  };
  intern("", 0);
  dist[0] = 0;

  // Five neighbours of (w, i): the two a-arrows, the b-edge, and the two
  // steps around the fiber cycle.
  auto neighbours = [&](int u) {
    const std::string w = lb.words[static_cast<std::size_t>(u)];
    int i = lb.fiber[static_cast<std::size_t>(u)];
    std::vector<std::pair<std::string, int>> out;
    for (char g : {'a', 'A', 'b'})
      if (!cancels(w, g)) out.push_back({w + g, i});
    out.push_back({w, (i + 1) % 4});
    out.push_back({w, (i + 3) % 4});
    return out;
  };

  for (std::size_t u = 0; u < lb.words.size(); ++u) {
    if (dist[u] == radius) continue;
    for (const auto& [w, i] : neighbours(static_cast<int>(u))) {
      int v = intern(w, i);
      if (dist[static_cast<std::size_t>(v)] < 0)
        dist[static_cast<std::size_t>(v)] = dist[u] + 1;
    }
  }

  std::map<Edge, EdgeLabel> edge_map;
  auto put = [&](int u, int v, const EdgeLabel& el) {
    Edge e = make_edge(u, v);
    auto [it, fresh] = edge_map.try_emplace(e, el);
    if (!fresh && !(it->second == el))
      throw AssertionError("limit_ball: inconsistent edge label");
  };
  int n = static_cast<int>(lb.words.size());
  for (int u = 0; u < n; ++u) {
    const std::string& w = lb.words[static_cast<std::size_t>(u)];
    int i = lb.fiber[static_cast<std::size_t>(u)];
    int parity = static_cast<int>(w.size()) % 2;
    for (char g : {'a', 'A', 'b'}) {
      if (cancels(w, g)) continue;
      auto it = ids.find({w + g, i});
      if (it == ids.end()) continue;
      int v = it->second;
      if (g == 'b')
        put(u, v, EdgeLabel{"b", EdgeDir::none});
      else if (g == 'a')
        put(u, v, oriented_label("a", u, v));
      else
        put(u, v, oriented_label("a", v, u));
    }
    for (int step : {1, 3}) {
      auto it = ids.find({w, (i + step) % 4});
      if (it == ids.end()) continue;
      int key = step == 1 ? i : (i + 3) % 4;
      put(u, it->second, EdgeLabel{vertical_label(parity, key), EdgeDir::none});
    }
  }

  std::vector<std::pair<Edge, EdgeLabel>> items(edge_map.begin(),
                                                edge_map.end());
  lb.ball = assemble(n, items, std::move(dist), radius);
  validate_ball(lb.ball);
  return lb;
}

RootedBall limit_ball(int radius, BallMode mode) {
  RootedBall b = limit_ball_detail(radius).ball;
  return mode == BallMode::diagram ? b : strip_labels(std::move(b));
}

bool RelatorReport::ok() const {
  if (injectivity_violations != 0) return false;
  for (const auto& t : tallies)
    if (t.violated != 0) return false;
  return true;
}

long long RelatorReport::total_violated() const {
  long long s = injectivity_violations;
  for (const auto& t : tallies) s += t.violated;
  return s;
}

RelatorReport check_relators(const Diagram& d, const Presentation& p) {
  p.validate();
  d.validate();
  std::vector<std::string> involutive, oriented;
  for (const auto& g : p.generators)
    (g.involutive ? involutive : oriented).push_back(g.sym);
  validate_labelling_alphabet(d, involutive, oriented);

  // Slot layout per vertex: involutive generators take one slot, oriented
  // ones take an out-slot and an in-slot.
  std::map<std::string, int> base;
  int slots = 0;
  for (const auto& g : p.generators) {
    base[g.sym] = slots;
    slots += g.involutive ? 1 : 2;
  }
  int n = d.graph.vertex_count();
  struct Cell {
    int to = -1;
    int count = 0;
  };
  std::vector<Cell> table(static_cast<std::size_t>(n) *
                          static_cast<std::size_t>(slots));
  auto cell = [&](int v, int s) -> Cell& {
    return table[static_cast<std::size_t>(v) * static_cast<std::size_t>(slots) +
                 static_cast<std::size_t>(s)];
  };
  for (int e = 0; e < d.graph.edge_count(); ++e) {
    const EdgeLabel& el = d.labels[static_cast<std::size_t>(e)];
    const Generator* g = p.find(el.label.size() == 1 ? el.label[0] : '\0');
    int b = base.at(el.label);
    const Edge& ed = d.graph.edges()[static_cast<std::size_t>(e)];
    if (g->involutive) {
      for (auto [x, y] : {std::pair{ed.first, ed.second},
                          std::pair{ed.second, ed.first}}) {
        Cell& c = cell(x, b);
        c.to = y;
        c.count += 1;
      }
    } else {
      int t = d.tail_of(e);
      int h = d.head_of(e);
      Cell& out = cell(t, b);
      out.to = h;
      out.count += 1;
      Cell& in = cell(h, b + 1);
      in.to = t;
      in.count += 1;
    }
  }

  RelatorReport rep;
  for (const auto& c : table)
    if (c.count > 1) rep.injectivity_violations += 1;

  auto slot_of = [&](char ch) {
    if (is_lower_letter(ch)) return base.at(std::string(1, ch));
    return base.at(std::string(1, static_cast<char>(std::tolower(ch)))) + 1;
  };

  for (const auto& r : p.relators) {
    RelatorTally tally;
    tally.relator = r;
    for (int v = 0; v < n; ++v) {
      int cur = v;
      int outcome = 0;  // 0 closed, 1 violated, 2 truncated
      for (char ch : r) {
        const Cell& c = cell(cur, slot_of(ch));
        if (c.count == 0) {
          outcome = 2;
          break;
        }
        if (c.count > 1) {
          outcome = 1;
          break;
        }
        cur = c.to;
      }
      if (outcome == 0 && cur != v) outcome = 1;
      if (outcome == 0)
        tally.closed += 1;
      else if (outcome == 1)
        tally.violated += 1;
      else
        tally.truncated += 1;
    }
    rep.tallies.push_back(std::move(tally));
  }
  return rep;
}

}  // namespace glim
