#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "glim/ball.hpp"
#include "glim/canon.hpp"
#include "glim/cayley.hpp"
#include "glim/errors.hpp"
#include "glim/graph.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace glim;

TEST_CASE("group presentation shape") {
  Presentation p = group_presentation();
  p.validate();
  REQUIRE(p.generators.size() == 4);
  CHECK(p.generators[0].sym == "a");
  CHECK(!p.generators[0].involutive);
  for (int i = 1; i < 4; ++i) CHECK(p.generators[static_cast<std::size_t>(i)].involutive);
  CHECK(p.relators == std::vector<std::string>{"bb", "cc", "dd", "cdcd",
                                               "adAc", "acAd", "bcbd"});
  CHECK(p.find('a') != nullptr);
  CHECK(p.find('z') == nullptr);
}

TEST_CASE("presentation json round trip") {
  Presentation p = group_presentation();
  Presentation q = presentation_from_json(presentation_to_json(p));
  q.validate();
  CHECK(q.relators == p.relators);
  REQUIRE(q.generators.size() == p.generators.size());
  for (std::size_t i = 0; i < q.generators.size(); ++i) {
    CHECK(q.generators[i].sym == p.generators[i].sym);
    CHECK(q.generators[i].involutive == p.generators[i].involutive);
  }
}

TEST_CASE("presentation validation rejects bad input") {
  Presentation p = group_presentation();
  p.relators.push_back("");
  CHECK_THROWS_AS(p.validate(), UsageError);
  p = group_presentation();
  p.relators.push_back("xy");
  CHECK_THROWS_AS(p.validate(), UsageError);
  p = group_presentation();
  p.relators.push_back("bB");
  CHECK_THROWS_AS(p.validate(), UsageError);
}

TEST_CASE("tree ball sizes and labels") {
  CHECK(tree_ball(0, BallMode::graph).graph.vertex_count() == 1);

  RootedBall r1 = tree_ball(1, BallMode::diagram);
  CHECK(r1.graph.vertex_count() == 4);
  std::multiset<std::string> seen;
  for (int e = 0; e < r1.graph.edge_count(); ++e) {
    const EdgeLabel& l = (*r1.labels)[static_cast<std::size_t>(e)];
    seen.insert(l.label);
    if (l.label == "a") CHECK(l.dir != EdgeDir::none);
    if (l.label == "b") CHECK(l.dir == EdgeDir::none);
  }
  CHECK(seen == std::multiset<std::string>{"a", "a", "b"});

  CHECK(tree_ball(3, BallMode::graph).graph.vertex_count() == 22);
  for (int r = 0; r <= 7; ++r) {
    RootedBall b = tree_ball(r, BallMode::graph);
    CHECK(b.graph.vertex_count() == 1 + 3 * ((1 << r) - 1));
    CHECK(girth(b.graph).is_acyclic());
    CHECK(!b.labelled());
  }
}

TEST_CASE("tree ball words are reduced and in discovery order") {
  TreeBall tb = tree_ball_detail(3);
  CHECK(tb.words[0].empty());
  std::set<std::string> unique(tb.words.begin(), tb.words.end());
  CHECK(unique.size() == tb.words.size());
  for (const std::string& w : tb.words) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      CHECK(!(w[i] == 'a' && w[i + 1] == 'A'));
      CHECK(!(w[i] == 'A' && w[i + 1] == 'a'));
      CHECK(!(w[i] == 'b' && w[i + 1] == 'b'));
    }
  }
}

TEST_CASE("limit ball counts") {
  RootedBall g1 = limit_ball(1, BallMode::graph);
  CHECK(g1.graph.vertex_count() == 6);
  CHECK(g1.graph.degree(g1.root) == 5);
  CHECK(limit_ball(2, BallMode::graph).graph.vertex_count() == 19);
  CHECK(limit_ball(4, BallMode::graph).graph.vertex_count() == 100);
}

TEST_CASE("limit ball root labels are the five distinct half-edges") {
  RootedBall b = limit_ball(1, BallMode::diagram);
  Diagram d = b.as_diagram();
  std::multiset<std::string> half_edges;
  for (int e = 0; e < b.graph.edge_count(); ++e) {
    const Edge& ed = b.graph.edges()[static_cast<std::size_t>(e)];
    if (ed.first != b.root && ed.second != b.root) continue;
    const EdgeLabel& l = (*b.labels)[static_cast<std::size_t>(e)];
    if (l.label == "a")
      half_edges.insert(d.tail_of(e) == b.root ? "a-out" : "a-in");
    else
      half_edges.insert(l.label);
  }
  CHECK(half_edges ==
        std::multiset<std::string>{"a-in", "a-out", "b", "c", "d"});
}

// Independent construction: tree ball coordinates crossed with the 4-cycle,
// adjacency decided per coordinate, then a ball extracted around the root.
TEST_CASE("limit ball agrees with the coordinate construction") {
  for (int r = 0; r <= 4; ++r) {
    TreeBall tb = tree_ball_detail(r);
    int tn = tb.ball.graph.vertex_count();
    std::vector<Edge> edges;
    for (int t = 0; t < tn; ++t) {
      for (int i = 0; i < 4; ++i) {
        for (int u : tb.ball.graph.neighbors(t))
          if (u > t) edges.push_back({4 * t + i, 4 * u + i});
        edges.push_back(make_edge(4 * t + i, 4 * t + (i + 1) % 4));
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Graph product(4 * tn, std::move(edges));
    RootedBall around = extract_ball(product, 0, r);
    CHECK(canonical_code(around) ==
          canonical_code(limit_ball(r, BallMode::graph)));
  }
}

TEST_CASE("vertical label formula") {
  CHECK(vertical_label(0, 0) == "c");
  CHECK(vertical_label(0, 1) == "d");
  CHECK(vertical_label(0, 2) == "c");
  CHECK(vertical_label(0, 3) == "d");
  CHECK(vertical_label(1, 0) == "d");
  CHECK(vertical_label(1, 1) == "c");
  CHECK(vertical_label(1, 2) == "d");
  CHECK(vertical_label(1, 3) == "c");
}

TEST_CASE("vertical four-cycles alternate and flip across tree edges") {
  LimitBall lb = limit_ball_detail(3);
  const Graph& g = lb.ball.graph;
  const auto& labels = *lb.ball.labels;

  std::map<std::string, std::map<int, std::string>> column_labels;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
    std::size_t u = static_cast<std::size_t>(ed.first);
    std::size_t v = static_cast<std::size_t>(ed.second);
    if (lb.words[u] != lb.words[v]) continue;
    int fu = lb.fiber[u], fv = lb.fiber[v];
    int key = (fu + 1) % 4 == fv ? fu : fv;
    column_labels[lb.words[u]][key] = labels[static_cast<std::size_t>(e)].label;
  }

  // complete columns alternate c,d around the cycle
  for (const auto& [word, ring] : column_labels) {
    if (ring.size() < 2) continue;
    for (const auto& [key, label] : ring) {
      auto next = ring.find((key + 1) % 4);
      if (next != ring.end()) CHECK(label != next->second);
    }
    auto k0 = ring.find(0);
    if (k0 != ring.end())
      CHECK(k0->second == (word.size() % 2 == 0 ? "c" : "d"));
  }

  // same cycle position, tree-adjacent words: labels differ
  for (const auto& [w1, ring1] : column_labels)
    for (const auto& [w2, ring2] : column_labels) {
      if (w1.size() + 1 != w2.size() || w2.compare(0, w1.size(), w1) != 0)
        continue;
      for (const auto& [key, label] : ring1) {
        auto other = ring2.find(key);
        if (other != ring2.end()) CHECK(label != other->second);
      }
    }
}

TEST_CASE("relators close on limit balls") {
  Presentation p = group_presentation();
  for (int r = 2; r <= 5; ++r) {
    RootedBall b = limit_ball(r, BallMode::diagram);
    RelatorReport rep = check_relators(b.as_diagram(), p);
    CHECK(rep.ok());
    CHECK(rep.total_violated() == 0);
    CHECK(rep.injectivity_violations == 0);
    for (const RelatorTally& t : rep.tallies) {
      CHECK(t.violated == 0);
      CHECK(t.closed + t.violated + t.truncated == b.graph.vertex_count());
      if (r >= 3) CHECK(t.closed > 0);
    }
  }
}

TEST_CASE("relator walk that returns elsewhere is a violation") {
  Diagram d;
  d.graph = Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  d.labels = {{"c", EdgeDir::none},
              {"d", EdgeDir::none},
              {"c", EdgeDir::none},
              {"d", EdgeDir::none}};
  Presentation p = group_presentation();
  RelatorReport rep = check_relators(d, p);
  CHECK(!rep.ok());
  for (const RelatorTally& t : rep.tallies) {
    if (t.relator == "cdcd") {
      CHECK(t.violated == 1);
      CHECK(t.closed == 0);
      CHECK(t.truncated == 4);
    }
    if (t.relator == "bb") {
      CHECK(t.closed == 0);
      CHECK(t.truncated == 5);
    }
  }
}

TEST_CASE("doubled labels break local injectivity") {
  RootedBall ball = limit_ball(2, BallMode::diagram);
  int c_edge = -1, d_edge = -1;
  const auto& edges = ball.graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].first != ball.root && edges[e].second != ball.root) continue;
    const std::string& l = (*ball.labels)[e].label;
    if (l == "c") c_edge = static_cast<int>(e);
    if (l == "d") d_edge = static_cast<int>(e);
  }
  REQUIRE(c_edge >= 0);
  REQUIRE(d_edge >= 0);
  (*ball.labels)[static_cast<std::size_t>(c_edge)].label = "d";
  (*ball.labels)[static_cast<std::size_t>(d_edge)].label = "c";
  RelatorReport rep = check_relators(ball.as_diagram(), group_presentation());
  CHECK(rep.injectivity_violations > 0);
  CHECK(!rep.ok());
}

TEST_CASE("relator checking rejects labels outside the alphabet") {
  Diagram d;
  d.graph = Graph(2, {{0, 1}});
  d.labels = {{"x", EdgeDir::none}};
  CHECK_THROWS_AS(check_relators(d, group_presentation()), UsageError);
}

TEST_CASE("limit ball fiber coordinates are consistent") {
  LimitBall lb = limit_ball_detail(2);
  CHECK(lb.fiber[0] == 0);
  CHECK(lb.words[0].empty());
  const Graph& g = lb.ball.graph;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edges()[static_cast<std::size_t>(e)];
    std::size_t u = static_cast<std::size_t>(ed.first);
    std::size_t v = static_cast<std::size_t>(ed.second);
    bool same_word = lb.words[u] == lb.words[v];
    bool same_fiber = lb.fiber[u] == lb.fiber[v];
    CHECK(same_word != same_fiber);
    if (same_word) {
      int diff = (lb.fiber[u] - lb.fiber[v] + 4) % 4;
      CHECK((diff == 1 || diff == 3));
    }
  }
}
