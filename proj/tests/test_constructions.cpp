#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "glim/constructions.hpp"
#include "glim/errors.hpp"
#include "glim/graph.hpp"
#include "glim/rng.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace glim;

TEST_CASE("product over a single vertex is the 4-cycle") {
  FiberedGraph p = product_c4(Graph(1, {}));
  CHECK(p.graph.vertex_count() == 4);
  CHECK(p.graph.edge_count() == 4);
  CHECK(p.graph.is_regular(2));
  CHECK(girth(p.graph) == Girth::cycle(4));
  CHECK(p.base_size == 1);
  CHECK(p.fiber == std::vector<int>{0, 1, 2, 3});
  CHECK(p.vertical_edges.size() == 4);
  CHECK_THROWS_AS(product_c4(Graph()), UsageError);
}

TEST_CASE("product sizes on fixed bases") {
  FiberedGraph k4 = product_c4(fixtures::complete_graph(4));
  CHECK(k4.graph.vertex_count() == 16);
  CHECK(k4.graph.edge_count() == 40);
  CHECK(k4.graph.is_regular(5));
  CHECK(girth(k4.graph) == Girth::cycle(3));

  FiberedGraph pet = product_c4(fixtures::petersen());
  CHECK(pet.graph.vertex_count() == 40);
  CHECK(pet.graph.edge_count() == 100);
  CHECK(pet.graph.is_regular(5));
  CHECK(girth(pet.graph) == Girth::cycle(4));
}

TEST_CASE("product structure on random bases") {
  Rng rng(311u);
  for (int t = 0; t < 25; ++t) {
    Graph base = oracles::random_graph(1 + static_cast<int>(rng.below(9)),
                                       0.35, rng);
    FiberedGraph p = product_c4(base);
    int n = base.vertex_count();
    CHECK(p.base_size == n);
    CHECK(p.graph.vertex_count() == 4 * n);
    CHECK(p.graph.edge_count() == 4 * base.edge_count() + 4 * n);

    for (int v = 0; v < p.graph.vertex_count(); ++v) {
      CHECK(p.fiber[static_cast<std::size_t>(v)] == v % 4);
      CHECK(p.base_of(v) == v / 4);
      CHECK(p.vertex_at(v / 4, v % 4) == v);
    }

    // each fiber class induces a copy of the base
    for (int i = 0; i < 4; ++i) {
      std::vector<int> cls;
      for (int b = 0; b < n; ++b) cls.push_back(p.vertex_at(b, i));
      auto [sub, back] = induced_subgraph(p.graph, cls);
      CHECK(sub.edge_count() == base.edge_count());
      for (const Edge& e : sub.edges())
        CHECK(base.has_edge(back[static_cast<std::size_t>(e.first)] / 4,
                            back[static_cast<std::size_t>(e.second)] / 4));
    }

    // vertical edges: one 4-cycle per base vertex, nothing else
    CHECK(p.vertical_edges.size() == static_cast<std::size_t>(4 * n));
    std::set<int> vertical(p.vertical_edges.begin(), p.vertical_edges.end());
    CHECK(vertical.size() == p.vertical_edges.size());
    for (int idx = 0; idx < p.graph.edge_count(); ++idx) {
      const Edge& e = p.graph.edges()[static_cast<std::size_t>(idx)];
      bool same_base = e.first / 4 == e.second / 4;
      CHECK(same_base == (vertical.count(idx) > 0));
      if (same_base) {
        int diff = (e.second - e.first) % 4;
        CHECK((diff == 1 || diff == 3));
      } else {
        CHECK(e.first % 4 == e.second % 4);
        CHECK(base.has_edge(e.first / 4, e.second / 4));
      }
    }
  }
}

TEST_CASE("random regular hits the unique small instance") {
  Graph g = random_regular(4, 3, 5u);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 6);
  CHECK(g.is_regular(3));
  CHECK(g.edges() == fixtures::complete_graph(4).edges());

  Graph pair = random_regular(2, 1, 9u);
  CHECK(pair.edges() == std::vector<Edge>{{0, 1}});
}

TEST_CASE("random regular rejects bad parameters") {
  CHECK_THROWS_AS(random_regular(5, 3, 1u), UsageError);   // odd n*d
  CHECK_THROWS_AS(random_regular(3, 3, 1u), UsageError);   // d >= n
  CHECK_THROWS_AS(random_regular(4, -1, 1u), UsageError);
  CHECK_THROWS_AS(random_regular(0, 0, 1u), UsageError);
  CHECK_THROWS_AS(random_regular(4, 3, 1u, 0), UsageError);
}

TEST_CASE("random regular is deterministic and valid") {
  Graph a = random_regular(20, 3, 7u);
  Graph b = random_regular(20, 3, 7u);
  CHECK(a.edges() == b.edges());
  CHECK(a.vertex_count() == 20);
  CHECK(a.is_regular(3));

  Graph c = random_regular(20, 3, 8u);
  CHECK(c.is_regular(3));
  CHECK(a.edges() != c.edges());

  bool exhausted = false;
  for (std::uint64_t s = 0; s < 64 && !exhausted; ++s) {
    try {
      random_regular(12, 3, s, 1);
    } catch (const BudgetError&) {
      exhausted = true;
    }
  }
  CHECK(exhausted);
}

TEST_CASE("smallest bipartite hamiltonian base is forced") {
  BaseBn b = random_bipartite_hamiltonian(1, 3u);
  validate_base_bn(b);
  CHECK(b.graph.vertex_count() == 6);
  CHECK(b.graph.edge_count() == 9);
  CHECK(b.graph.is_regular(3));
  CHECK(b.upper == std::vector<int>{0, 2, 4});
  CHECK(b.lower == std::vector<int>{1, 3, 5});
  CHECK(b.ham == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(b.matching == std::vector<int>{1, 2, 0});  // only simple choice
  CHECK(b.achieved_girth == Girth::cycle(4));
  CHECK(b.achieved_girth == girth(b.graph));
}

TEST_CASE("bipartite hamiltonian bases are deterministic and girth >= 4") {
  for (std::uint64_t s : {1u, 2u, 3u}) {
    BaseBn a = random_bipartite_hamiltonian(4, s);
    BaseBn b = random_bipartite_hamiltonian(4, s);
    CHECK(a.matching == b.matching);
    CHECK(a.graph.edges() == b.graph.edges());
    validate_base_bn(a);
    CHECK(girth(a.graph).value() >= 4);
    CHECK(a.achieved_girth == girth(a.graph));
  }
  CHECK_THROWS_AS(random_bipartite_hamiltonian(0, 1u), UsageError);
  CHECK_THROWS_AS(random_bipartite_hamiltonian(2, 1u, 0), UsageError);
}

TEST_CASE("base instance validation catches tampering") {
  BaseBn b = random_bipartite_hamiltonian(2, 11u);
  validate_base_bn(b);

  BaseBn bad = b;
  bad.n = 3;
  CHECK_THROWS_AS(validate_base_bn(bad), UsageError);

  bad = b;
  std::swap(bad.ham[0], bad.ham[2]);
  CHECK_THROWS_AS(validate_base_bn(bad), UsageError);

  bad = b;
  bad.matching[0] = bad.matching[1];
  CHECK_THROWS_AS(validate_base_bn(bad), UsageError);

  bad = b;
  bad.upper.pop_back();
  CHECK_THROWS_AS(validate_base_bn(bad), UsageError);
}

TEST_CASE("base instance round trips through its parts") {
  BaseBn b = random_bipartite_hamiltonian(3, 21u);
  BaseBn r = base_bn_from_parts(b.graph, b.ham);
  validate_base_bn(r);
  CHECK(r.n == b.n);
  CHECK(r.upper == b.upper);
  CHECK(r.lower == b.lower);
  CHECK(r.matching == b.matching);
  CHECK(r.graph.edges() == b.graph.edges());
  CHECK(r.achieved_girth == b.achieved_girth);

  CHECK_THROWS_AS(base_bn_from_parts(fixtures::complete_graph(4),
                                     std::vector<int>{0, 1, 2, 3}),
                  UsageError);
  Graph prism(6, {{0, 2}, {2, 4}, {0, 4}, {1, 3}, {3, 5}, {1, 5},
                  {0, 1}, {2, 3}, {4, 5}});
  CHECK_THROWS_AS(base_bn_from_parts(prism, std::vector<int>{0, 1, 2, 3, 4, 5}),
                  UsageError);
}

TEST_CASE("doubled construction counts") {
  BaseBn b = random_bipartite_hamiltonian(1, 3u);
  KnBundle k = build_kn(b);
  CHECK(k.n == 1);
  CHECK(k.kn_prime.n == 12);
  CHECK(k.kn_prime.arcs.size() == 36);
  for (int d : k.kn_prime.out_degrees()) CHECK(d == 3);
  for (int d : k.kn_prime.in_degrees()) CHECK(d == 3);
  CHECK(k.kn.vertex_count() == 24);
  CHECK(k.kn.edge_count() == 60);
  CHECK(k.kn.is_regular(5));
  CHECK(k.blue.size() == 12);
  CHECK(k.yellow.size() == 12);

  for (int x = 0; x < k.kn.vertex_count(); ++x) {
    CHECK(k.twin[static_cast<std::size_t>(x)] == (x ^ 1));
    int c = k.knp_class(x / 2);
    int expect = x % 2 == 0 ? c : (c + 3) % 4;
    CHECK(k.fiber[static_cast<std::size_t>(x)] == expect);
  }
}

TEST_CASE("fiber classes copy the base") {
  BaseBn b = random_bipartite_hamiltonian(2, 17u);
  KnBundle k = build_kn(b);
  for (int f = 0; f < 4; ++f) {
    std::vector<int> base_map;
    Graph fg = fiber_graph(k, f, &base_map);
    CHECK(fg.vertex_count() == b.graph.vertex_count());
    CHECK(fg.edge_count() == b.graph.edge_count());
    std::set<int> image(base_map.begin(), base_map.end());
    CHECK(image.size() == base_map.size());
    for (const Edge& e : fg.edges())
      CHECK(b.graph.has_edge(base_map[static_cast<std::size_t>(e.first)],
                             base_map[static_cast<std::size_t>(e.second)]));
  }
  CHECK_THROWS_AS(fiber_graph(k, 4), UsageError);
  CHECK_THROWS_AS(fiber_graph(k, -1), UsageError);
}

TEST_CASE("blue edges are independent between adjacent fibers") {
  BaseBn b = random_bipartite_hamiltonian(3, 29u);
  KnBundle k = build_kn(b);
  for (int f = 0; f < 4; ++f) {
    CHECK(!blue_independence_witness(k, f, (f + 1) % 4).has_value());
    CHECK(!blue_independence_witness(k, f, (f + 3) % 4).has_value());
  }
  CHECK_THROWS_AS(blue_independence_witness(k, 0, 2), UsageError);
  CHECK_THROWS_AS(blue_independence_witness(k, 1, 1), UsageError);
  CHECK_THROWS_AS(blue_independence_witness(k, 0, 5), UsageError);
}

TEST_CASE("doubled construction is the product in coordinates") {
  for (int n : {1, 2}) {
    BaseBn b = random_bipartite_hamiltonian(n, 41u);
    KnBundle k = build_kn(b);
    FiberedGraph p = product_c4(b.graph);
    std::vector<int> map = kn_to_product_map(k);
    REQUIRE(static_cast<int>(map.size()) == k.kn.vertex_count());
    CHECK(p.graph.vertex_count() == k.kn.vertex_count());
    CHECK(p.graph.edge_count() == k.kn.edge_count());

    std::set<int> image(map.begin(), map.end());
    CHECK(image.size() == map.size());
    for (int x = 0; x < k.kn.vertex_count(); ++x) {
      CHECK(map[static_cast<std::size_t>(x)] % 4 ==
            k.fiber[static_cast<std::size_t>(x)]);
      CHECK(map[static_cast<std::size_t>(x)] / 4 == k.kn_base(x));
    }
    for (const Edge& e : k.kn.edges())
      CHECK(p.graph.has_edge(map[static_cast<std::size_t>(e.first)],
                             map[static_cast<std::size_t>(e.second)]));

    // colors split vertical from horizontal
    std::set<int> colored(k.blue.begin(), k.blue.end());
    colored.insert(k.yellow.begin(), k.yellow.end());
    for (int idx = 0; idx < k.kn.edge_count(); ++idx) {
      const Edge& e = k.kn.edges()[static_cast<std::size_t>(idx)];
      bool same_base = k.kn_base(e.first) == k.kn_base(e.second);
      CHECK(same_base == (colored.count(idx) > 0));
    }
  }
}

TEST_CASE("hamiltonian cycle alternates projected and blue edges") {
  for (int n : {1, 3}) {
    BaseBn b = random_bipartite_hamiltonian(n, 53u);
    KnBundle k = build_kn(b);
    std::vector<int> verts = hamiltonian_cycle_kn(k, b);
    int expect = 4 * (4 * n + 2);
    CHECK(static_cast<int>(verts.size()) == expect);
    CHECK(std::set<int>(verts.begin(), verts.end()).size() == verts.size());
    CHECK(static_cast<int>(k.cn.size()) == expect);

    std::set<int> blue(k.blue.begin(), k.blue.end());
    std::set<int> yellow(k.yellow.begin(), k.yellow.end());
    for (std::size_t i = 0; i < k.cn.size(); ++i) {
      bool is_blue = blue.count(k.cn[i]) > 0;
      CHECK(is_blue == (i % 2 == 1));
      CHECK(yellow.count(k.cn[i]) == 0);
    }
    for (std::size_t i = 0; i < verts.size(); ++i) {
      int u = verts[i];
      int v = verts[(i + 1) % verts.size()];
      int e = k.kn.edge_index(std::min(u, v), std::max(u, v));
      CHECK(e == k.cn[i]);
    }
  }
}

TEST_CASE("cycle construction rejects a foreign base") {
  BaseBn b1 = random_bipartite_hamiltonian(1, 3u);
  BaseBn b2 = random_bipartite_hamiltonian(2, 3u);
  KnBundle k = build_kn(b1);
  CHECK_THROWS_AS(hamiltonian_cycle_kn(k, b2), UsageError);
}
