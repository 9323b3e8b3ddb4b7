#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "glim/ball.hpp"
#include "glim/canon.hpp"
#include "glim/cayley.hpp"
#include "glim/graph.hpp"
#include "glim/rng.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace glim;

namespace {

RootedBall whole_component(const Graph& g, int root) {
  return extract_ball(g, root, g.vertex_count());
}

RootedBall whole_component(const Diagram& d, int root) {
  return extract_ball(d, root, d.graph.vertex_count());
}

// Decodes a Prufer sequence over vertices 0..n-1 into a labelled tree.
Graph prufer_tree(const std::vector<int>& seq) {
  int n = static_cast<int>(seq.size()) + 2;
  std::vector<int> deg(static_cast<std::size_t>(n), 1);
  for (int v : seq) ++deg[static_cast<std::size_t>(v)];
  std::vector<Edge> edges;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int v : seq) {
    for (int leaf = 0; leaf < n; ++leaf) {
      if (used[static_cast<std::size_t>(leaf)] ||
          deg[static_cast<std::size_t>(leaf)] != 1)
        continue;
      edges.push_back(make_edge(leaf, v));
      used[static_cast<std::size_t>(leaf)] = true;
      --deg[static_cast<std::size_t>(v)];
      break;
    }
  }
  std::vector<int> last;
  for (int v = 0; v < n; ++v)
    if (!used[static_cast<std::size_t>(v)] &&
        deg[static_cast<std::size_t>(v)] == 1)
      last.push_back(v);
  edges.push_back(make_edge(last[0], last[1]));
  return Graph(n, std::move(edges));
}

// Checks the code-vs-isomorphism equivalence over a family of balls by
// grouping on codes and brute-forcing class members and representatives.
void check_code_classes(const std::vector<RootedBall>& balls) {
  std::map<Code, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < balls.size(); ++i)
    classes[canonical_code(balls[i])].push_back(i);
  std::vector<std::size_t> reps;
  for (const auto& [code, members] : classes) {
    reps.push_back(members.front());
    for (std::size_t m : members)
      CHECK(oracles::brute_rooted_isomorphic(balls[members.front()], balls[m]));
  }
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      CHECK(!oracles::brute_rooted_isomorphic(balls[reps[i]], balls[reps[j]]));
}

}  // namespace

TEST_CASE("single-vertex balls share one code") {
  RootedBall a = extract_ball(fixtures::petersen(), 4, 0);
  RootedBall b = extract_ball(fixtures::cycle_graph(4), 1, 0);
  CHECK(canonical_code(a) == canonical_code(b));
}

TEST_CASE("the two rooted 3-paths have distinct codes") {
  Graph p3 = fixtures::path_graph(3);
  CHECK(canonical_code(whole_component(p3, 0)) !=
        canonical_code(whole_component(p3, 1)));
}

TEST_CASE("codes stay comma-free for csv embedding") {
  Code c = canonical_code(limit_ball(2, BallMode::diagram));
  CHECK(c.find(',') == std::string::npos);
}

TEST_CASE("all rooted trees on five vertices") {
  std::vector<RootedBall> balls;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      for (int z = 0; z < 5; ++z) {
        Graph t = prufer_tree({x, y, z});
        for (int root = 0; root < 5; ++root)
          balls.push_back(whole_component(t, root));
      }
  std::map<Code, int> codes;
  for (const RootedBall& b : balls) ++codes[canonical_code(b)];
  CHECK(codes.size() == 9);
  check_code_classes(balls);
}

TEST_CASE("exhaustive rooted graphs on up to four vertices") {
  std::vector<RootedBall> balls;
  for (int n = 1; n <= 4; ++n) {
    std::vector<Edge> all_pairs;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) all_pairs.push_back({u, v});
    for (unsigned mask = 0; mask < (1u << all_pairs.size()); ++mask) {
      std::vector<Edge> edges;
      for (std::size_t e = 0; e < all_pairs.size(); ++e)
        if ((mask >> e) & 1u) edges.push_back(all_pairs[e]);
      Graph g(n, edges);
      for (int root = 0; root < n; ++root)
        balls.push_back(whole_component(g, root));
    }
  }
  check_code_classes(balls);
}

TEST_CASE("random labelled diagrams agree with the permutation oracle") {
  Rng rng(2024u);
  int iso_pairs = 0;
  for (int t = 0; t < 150; ++t) {
    int n = 2 + static_cast<int>(rng.below(6));
    Diagram d1 = oracles::random_diagram(n, 0.45, rng);
    RootedBall b1 = whole_component(d1, 0);

    RootedBall b2;
    if (rng.below(2) == 0) {
      // relabel the host and extract at the mapped root
      std::vector<int> perm(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
      rng.shuffle(perm);
      std::vector<Edge> edges;
      std::vector<std::pair<Edge, EdgeLabel>> relabelled;
      for (int e = 0; e < d1.graph.edge_count(); ++e) {
        Edge orig = d1.graph.edges()[static_cast<std::size_t>(e)];
        int x = perm[static_cast<std::size_t>(orig.first)];
        int y = perm[static_cast<std::size_t>(orig.second)];
        EdgeLabel l = d1.labels[static_cast<std::size_t>(e)];
        l.dir = oracles::mapped_dir(l.dir, x < y);
        relabelled.push_back({make_edge(x, y), l});
      }
      std::sort(relabelled.begin(), relabelled.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      Diagram d2;
      for (auto& [e, l] : relabelled) edges.push_back(e);
      d2.graph = Graph(n, edges);
      for (auto& [e, l] : relabelled) d2.labels.push_back(l);
      b2 = whole_component(d2, perm[static_cast<std::size_t>(0)]);
    } else {
      Diagram d2 = oracles::random_diagram(n, 0.45, rng);
      b2 = whole_component(d2, 0);
    }

    bool codes_equal = canonical_code(b1) == canonical_code(b2);
    bool brute = oracles::brute_rooted_isomorphic(b1, b2);
    CHECK(codes_equal == brute);
    auto mapping = rooted_isomorphic(b1, b2);
    CHECK(mapping.has_value() == brute);
    if (brute) ++iso_pairs;
  }
  CHECK(iso_pairs > 30);
}

TEST_CASE("automorphism counts") {
  CHECK(rooted_automorphism_count(extract_ball(fixtures::petersen(), 0, 0)) == 1);
  CHECK(rooted_automorphism_count(limit_ball(1, BallMode::graph)) == 120);
  CHECK(rooted_automorphism_count(limit_ball(1, BallMode::diagram)) == 1);
  CHECK(rooted_automorphism_count(
            whole_component(fixtures::complete_graph(4), 0)) == 6);
  CHECK(rooted_automorphism_count(
            extract_ball(fixtures::cycle_graph(4), 0, 1)) == 2);
}

TEST_CASE("code cache returns canonical codes") {
  CodeCache cache;
  RootedBall b1 = limit_ball(2, BallMode::diagram);
  RootedBall b2 = extract_ball(fixtures::petersen(), 3, 2);
  CHECK(cache.code_of(b1) == canonical_code(b1));
  CHECK(cache.code_of(b2) == canonical_code(b2));
  CHECK(cache.code_of(b1) == canonical_code(b1));
}
