#include <doctest.h>

#include <algorithm>
#include <vector>

#include "glim/cayley.hpp"
#include "glim/errors.hpp"
#include "glim/graph.hpp"
#include "glim/mis.hpp"
#include "glim/rng.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace glim;

TEST_CASE("independence witnesses") {
  Graph c4 = fixtures::cycle_graph(4);
  CHECK(is_independent(c4, {0, 2}));
  CHECK(is_independent(c4, {}));
  CHECK(!is_independent(c4, {0, 1}));
  std::optional<Edge> w = independence_witness(c4, {0, 1, 2});
  REQUIRE(w.has_value());
  CHECK(*w == Edge{0, 1});  // smallest violating edge
  CHECK_THROWS_AS(is_independent(c4, {7}), UsageError);
}

TEST_CASE("exact sizes on the fixed examples") {
  CHECK(max_independent_set(fixtures::cycle_graph(4)).size == 2);
  CHECK(max_independent_set(fixtures::complete_graph(4)).size == 1);
  CHECK(max_independent_set(fixtures::path_graph(5)).size == 3);

  MisResult pet = max_independent_set(fixtures::petersen());
  CHECK(pet.size == 4);
  CHECK(pet.exact);
  CHECK(pet.lower == 4);
  CHECK(pet.upper == 4);
  CHECK(static_cast<int>(pet.witness.size()) == 4);
  CHECK(is_independent(fixtures::petersen(), pet.witness));
  CHECK(oracles::subset_mis(fixtures::petersen()) == 4);

  Graph empty_graph(6, {});
  MisResult all = max_independent_set(empty_graph);
  CHECK(all.size == 6);

  MisResult none = max_independent_set(Graph());
  CHECK(none.size == 0);
  CHECK(none.exact);
}

TEST_CASE("exact solver agrees with enumeration") {
  Rng rng(1203u);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + static_cast<int>(rng.below(17));
    double p = 0.1 + 0.5 * rng.unit();
    Graph g = oracles::random_graph(n, p, rng);
    MisResult r = max_independent_set(g);
    REQUIRE(r.exact);
    CHECK(r.size == oracles::brute_mis(g));
    CHECK(r.lower == r.size);
    CHECK(r.upper == r.size);
    CHECK(static_cast<int>(r.witness.size()) == r.size);
    CHECK(is_independent(g, r.witness));
    CHECK(std::is_sorted(r.witness.begin(), r.witness.end()));
    if (n <= 14) CHECK(oracles::subset_mis(g) == r.size);
  }
}

TEST_CASE("solver is deterministic") {
  Rng rng(77u);
  Graph g = oracles::random_graph(18, 0.25, rng);
  CHECK(max_independent_set(g) == max_independent_set(g));
}

TEST_CASE("capped solver still brackets the optimum") {
  Rng rng(4005u);
  for (int t = 0; t < 25; ++t) {
    int n = 10 + static_cast<int>(rng.below(9));
    Graph g = oracles::random_graph(n, 0.3, rng);
    MisResult r = max_independent_set(g, 4);
    CHECK(!r.exact);
    int best = oracles::brute_mis(g);
    CHECK(r.lower <= best);
    CHECK(best <= r.upper);
    CHECK(r.size == r.lower);
    CHECK(static_cast<int>(r.witness.size()) == r.size);
    CHECK(is_independent(g, r.witness));
  }
}

TEST_CASE("limit ball independence number") {
  Graph b2 = limit_ball(2, BallMode::graph).graph;
  MisResult r = max_independent_set(b2);
  CHECK(r.exact);
  CHECK(r.size == oracles::brute_mis(b2));
}

TEST_CASE("cap validation") {
  CHECK_THROWS_AS(max_independent_set(fixtures::cycle_graph(4), -1),
                  UsageError);
  MisResult zero_cap = max_independent_set(fixtures::cycle_graph(4), 0);
  CHECK(!zero_cap.exact);
  CHECK(zero_cap.lower >= 1);
  CHECK(zero_cap.upper <= 4);
}
