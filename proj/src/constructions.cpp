#include "glim/constructions.hpp"

#include <algorithm>
#include <string>

#include "glim/errors.hpp"
#include "glim/rng.hpp"

namespace glim {

FiberedGraph product_c4(const Graph& base) {
  int n = base.vertex_count();
  if (n == 0) throw UsageError("product_c4: empty base");
  FiberedGraph out;
  out.base_size = n;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(4 * base.edge_count() + 4 * n));
  for (const auto& [u, v] : base.edges())
    for (int i = 0; i < 4; ++i) edges.push_back({4 * u + i, 4 * v + i});
  std::vector<Edge> verticals;
  verticals.reserve(static_cast<std::size_t>(4 * n));
  for (int u = 0; u < n; ++u)
    for (int i = 0; i < 4; ++i) {
      Edge e = make_edge(4 * u + i, 4 * u + (i + 1) % 4);
      verticals.push_back(e);
      edges.push_back(e);
    }
  out.graph = Graph(4 * n, std::move(edges));
  out.fiber.resize(static_cast<std::size_t>(4 * n));
  for (int v = 0; v < 4 * n; ++v)
    out.fiber[static_cast<std::size_t>(v)] = v % 4;
  out.vertical_edges.reserve(verticals.size());
  for (const Edge& e : verticals)
    out.vertical_edges.push_back(out.graph.edge_index(e.first, e.second));
  std::sort(out.vertical_edges.begin(), out.vertical_edges.end());
  return out;
}

Graph random_regular(int n, int d, std::uint64_t seed, int budget) {
  if (n < 1) throw UsageError("random_regular: need at least one vertex");
  if (d < 0 || d >= n)
    throw UsageError("random_regular: degree must satisfy 0 <= d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw UsageError("random_regular: n*d is odd, no such graph (parity)");
  if (budget < 1) throw UsageError("random_regular: budget must be positive");

  std::vector<int> master;
  master.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < d; ++k) master.push_back(v);

  Rng rng(named_stream(seed, "random-regular"));
  std::vector<int> stubs;
  std::vector<Edge> edges;
  for (int attempt = 1; attempt <= budget; ++attempt) {
    stubs = master;
    rng.shuffle(stubs);
    edges.clear();
    bool ok = true;
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
      int u = stubs[k];
      int v = stubs[k + 1];
      if (u == v) {
        ok = false;
        break;
      }
      edges.push_back(u < v ? Edge{u, v} : Edge{v, u});
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end());
    for (std::size_t k = 1; k < edges.size() && ok; ++k)
      ok = edges[k] != edges[k - 1];
    if (ok) return Graph(n, std::move(edges));
  }
  throw BudgetError("random_regular: rejection budget exhausted after " +
                    std::to_string(budget) + " attempts");
}

namespace {

BaseBn assemble_bn(int n, const std::vector<int>& matching) {
  int m = 2 * n + 1;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(3 * m));
  for (int i = 0; i < m; ++i) {
    edges.push_back({2 * i, 2 * i + 1});
    edges.push_back(make_edge(2 * i + 1, 2 * ((i + 1) % m)));
    edges.push_back(make_edge(2 * i, 2 * matching[static_cast<std::size_t>(i)] + 1));
  }
  BaseBn b;
  b.n = n;
  b.graph = Graph(2 * m, std::move(edges));
  for (int i = 0; i < m; ++i) {
    b.upper.push_back(2 * i);
    b.lower.push_back(2 * i + 1);
  }
  b.ham.resize(static_cast<std::size_t>(2 * m));
  for (int k = 0; k < 2 * m; ++k) b.ham[static_cast<std::size_t>(k)] = k;
  b.matching = matching;
  b.achieved_girth = girth(b.graph);
  return b;
}

}  // namespace

BaseBn random_bipartite_hamiltonian(int n, std::uint64_t seed, int attempts,
                                    int budget) {
  if (n < 1) throw UsageError("random_bipartite_hamiltonian: n must be >= 1");
  if (attempts < 1 || budget < 1)
    throw UsageError("random_bipartite_hamiltonian: attempts and budget must be positive");
  int m = 2 * n + 1;
  BaseBn best;
  bool have = false;
  std::vector<int> pi(static_cast<std::size_t>(m));
  for (int k = 0; k < attempts; ++k) {
    Rng rng(named_stream(seed, "bipartite-ham", static_cast<std::uint64_t>(k)));
    bool valid = false;
    for (int t = 0; t < budget && !valid; ++t) {
      for (int i = 0; i < m; ++i) pi[static_cast<std::size_t>(i)] = i;
      rng.shuffle(pi);
      valid = true;
      for (int i = 0; i < m && valid; ++i) {
        int j = pi[static_cast<std::size_t>(i)];
        valid = j != i && j != (i + m - 1) % m;
      }
    }
    if (!valid)
      throw BudgetError("random_bipartite_hamiltonian: no simple matching within budget");
    BaseBn cand = assemble_bn(n, pi);
    if (!have || cand.achieved_girth.value() > best.achieved_girth.value()) {
      best = std::move(cand);
      have = true;
    }
  }
  validate_base_bn(best);
  return best;
}

void validate_base_bn(const BaseBn& b) {
  if (b.n < 1) throw UsageError("base instance: n must be >= 1");
  int m = 2 * b.n + 1;
  if (b.graph.vertex_count() != 2 * m)
    throw UsageError("base instance: wrong vertex count");
  if (!b.graph.is_regular(3))
    throw UsageError("base instance: not 3-regular");
  for (const auto& [u, v] : b.graph.edges())
    if (u % 2 == v % 2)
      throw UsageError("base instance: edge inside one side");
  if (static_cast<int>(b.upper.size()) != m ||
      static_cast<int>(b.lower.size()) != m)
    throw UsageError("base instance: side lists out of sync");
  for (int i = 0; i < m; ++i) {
    if (b.upper[static_cast<std::size_t>(i)] != 2 * i ||
        b.lower[static_cast<std::size_t>(i)] != 2 * i + 1)
      throw UsageError("base instance: sides not in canonical order");
  }
  if (static_cast<int>(b.ham.size()) != 2 * m)
    throw UsageError("base instance: ham cycle length wrong");
  for (int k = 0; k < 2 * m; ++k)
    if (b.ham[static_cast<std::size_t>(k)] != k)
      throw UsageError("base instance: not in canonical vertex order");
  for (int k = 0; k < 2 * m; ++k)
    if (!b.graph.has_edge(k, (k + 1) % (2 * m)))
      throw UsageError("base instance: ham cycle uses a non-edge");
  if (static_cast<int>(b.matching.size()) != m)
    throw UsageError("base instance: matching list out of sync");
  for (int i = 0; i < m; ++i) {
    int j = b.matching[static_cast<std::size_t>(i)];
    if (j < 0 || j >= m || j == i || j == (i + m - 1) % m)
      throw UsageError("base instance: matching collides with the cycle");
    if (!b.graph.has_edge(2 * i, 2 * j + 1))
      throw UsageError("base instance: matching edge missing");
  }
}

BaseBn base_bn_from_parts(Graph graph, std::vector<int> ham) {
  int nv = graph.vertex_count();
  if (nv < 6 || nv % 4 != 2)
    throw UsageError("base instance: vertex count is not 2(2n+1)");
  int m = nv / 2;
  BaseBn b;
  b.n = (m - 1) / 2;
  b.graph = std::move(graph);
  b.ham = std::move(ham);
  for (int i = 0; i < m; ++i) {
    b.upper.push_back(2 * i);
    b.lower.push_back(2 * i + 1);
  }
  b.matching.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    int a1 = 2 * i + 1;
    int a2 = 2 * ((i + m - 1) % m) + 1;
    int third = -1;
    for (int w : b.graph.neighbors(2 * i))
      if (w != a1 && w != a2) third = w;
    if (third < 0 || third % 2 == 0)
      throw UsageError("base instance: cannot recover the third matching");
    b.matching[static_cast<std::size_t>(i)] = third / 2;
  }
  b.achieved_girth = girth(b.graph);
  validate_base_bn(b);
  return b;
}

int KnBundle::knp_base(int p) const {
  int side = knp_class(p) % 2;
  int idx = knp_index(p);
  return 2 * idx + side;
}

namespace {

std::vector<std::pair<int, int>> knp_arcs(const BaseBn& b, int m) {
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(static_cast<std::size_t>(4 * b.graph.edge_count()));
  for (const auto& [x, y] : b.graph.edges()) {
    int u = x % 2 == 0 ? x : y;
    int l = x % 2 == 0 ? y : x;
    int iu = u / 2;
    int il = l / 2;
    for (int c = 0; c < 4; ++c) {
      int tail = c % 2 == 0 ? iu : il;
      int head = c % 2 == 0 ? il : iu;
      arcs.push_back({c * m + tail, ((c + 1) % 4) * m + head});
    }
  }
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

}  // namespace

KnBundle build_kn(const BaseBn& b) {
  validate_base_bn(b);
  int m = 2 * b.n + 1;
  KnBundle out;
  out.n = b.n;
  out.kn_prime.n = 4 * m;
  out.kn_prime.arcs = knp_arcs(b, m);
  out.kn_prime.validate();

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(20 * m));
  for (const auto& [p, q] : out.kn_prime.arcs)
    edges.push_back(make_edge(2 * p, 2 * q + 1));
  std::vector<Edge> blue_edges;
  for (int p = 0; p < 4 * m; ++p) {
    blue_edges.push_back({2 * p, 2 * p + 1});
    edges.push_back(blue_edges.back());
  }
  std::vector<Edge> yellow_edges;
  for (int i = 0; i < m; ++i) {
    for (int c : {0, 1}) {
      int p_lo = c * m + i;
      int p_hi = (c + 2) * m + i;
      yellow_edges.push_back(make_edge(2 * p_lo, 2 * p_hi + 1));
      yellow_edges.push_back(make_edge(2 * p_lo + 1, 2 * p_hi));
      edges.push_back(yellow_edges[yellow_edges.size() - 2]);
      edges.push_back(yellow_edges.back());
    }
  }
  out.kn = Graph(8 * m, std::move(edges));
  for (const Edge& e : blue_edges)
    out.blue.push_back(out.kn.edge_index(e.first, e.second));
  for (const Edge& e : yellow_edges)
    out.yellow.push_back(out.kn.edge_index(e.first, e.second));
  std::sort(out.blue.begin(), out.blue.end());
  std::sort(out.yellow.begin(), out.yellow.end());

  out.fiber.resize(static_cast<std::size_t>(8 * m));
  out.twin.resize(static_cast<std::size_t>(8 * m));
  for (int x = 0; x < 8 * m; ++x) {
    int c = out.knp_class(x / 2);
    out.fiber[static_cast<std::size_t>(x)] = x % 2 == 0 ? c : (c + 3) % 4;
    out.twin[static_cast<std::size_t>(x)] = x ^ 1;
  }
  return out;
}

std::vector<int> hamiltonian_cycle_kn(KnBundle& bundle, const BaseBn& b) {
  validate_base_bn(b);
  int m = 2 * b.n + 1;
  if (bundle.n != b.n || bundle.kn_prime.arcs != knp_arcs(b, m))
    throw UsageError("hamiltonian_cycle_kn: bundle does not match the base instance");

  int big = 4 * m;  // length of the directed cycle upstairs
  std::vector<int> p(static_cast<std::size_t>(big));
  std::vector<char> seen(static_cast<std::size_t>(big), 0);
  for (int t = 0; t < big; ++t) {
    int w = b.ham[static_cast<std::size_t>(t % (2 * m))];
    int c = t % 4;
    if (c % 2 != w % 2)
      throw AssertionError("hamiltonian_cycle_kn: class/side parity drift");
    int v = c * m + w / 2;
    if (seen[static_cast<std::size_t>(v)])
      throw AssertionError("hamiltonian_cycle_kn: repeated vertex upstairs");
    seen[static_cast<std::size_t>(v)] = 1;
    p[static_cast<std::size_t>(t)] = v;
  }

  bundle.cn.clear();
  std::vector<int> verts;
  verts.reserve(static_cast<std::size_t>(2 * big));
  std::vector<char> visited(static_cast<std::size_t>(8 * m), 0);
  for (int t = 0; t < big; ++t) {
    int cur = p[static_cast<std::size_t>(t)];
    int nxt = p[static_cast<std::size_t>((t + 1) % big)];
    int e1 = bundle.kn.edge_index(2 * cur, 2 * nxt + 1);
    int e2 = bundle.kn.edge_index(2 * nxt, 2 * nxt + 1);
    if (e1 < 0 || e2 < 0)
      throw AssertionError("hamiltonian_cycle_kn: cycle edge missing");
    bundle.cn.push_back(e1);
    bundle.cn.push_back(e2);
    verts.push_back(2 * cur);
    verts.push_back(2 * nxt + 1);
  }
  for (int v : verts) {
    if (visited[static_cast<std::size_t>(v)])
      throw AssertionError("hamiltonian_cycle_kn: vertex visited twice");
    visited[static_cast<std::size_t>(v)] = 1;
  }
  if (static_cast<int>(verts.size()) != bundle.kn.vertex_count())
    throw AssertionError("hamiltonian_cycle_kn: cycle is not spanning");
  return verts;
}

Graph fiber_graph(const KnBundle& bundle, int f, std::vector<int>* base_map) {
  if (f < 0 || f > 3) throw UsageError("fiber index outside 0..3");
  std::vector<int> verts;
  for (int x = 0; x < bundle.kn.vertex_count(); ++x)
    if (bundle.fiber[static_cast<std::size_t>(x)] == f) verts.push_back(x);
  auto [g, ids] = induced_subgraph(bundle.kn, verts);
  if (base_map) {
    base_map->clear();
    for (int x : ids) base_map->push_back(bundle.kn_base(x));
  }
  return g;
}

std::optional<Edge> blue_independence_witness(const KnBundle& bundle,
                                              int f_from, int f_to) {
  if (f_from < 0 || f_from > 3 || f_to < 0 || f_to > 3)
    throw UsageError("fiber index outside 0..3");
  int diff = ((f_to - f_from) % 4 + 4) % 4;
  if (diff != 1 && diff != 3)
    throw UsageError("blue_independence_witness: fibers are not adjacent");
  std::vector<int> ends;
  for (int idx : bundle.blue) {
    const Edge& e = bundle.kn.edges()[static_cast<std::size_t>(idx)];
    int fu = bundle.fiber[static_cast<std::size_t>(e.first)];
    int fv = bundle.fiber[static_cast<std::size_t>(e.second)];
    if (fu == f_from && fv == f_to)
      ends.push_back(e.first);
    else if (fv == f_from && fu == f_to)
      ends.push_back(e.second);
  }
  std::sort(ends.begin(), ends.end());
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = i + 1; j < ends.size(); ++j)
      if (bundle.kn.has_edge(ends[i], ends[j]))
        return make_edge(ends[i], ends[j]);
  return std::nullopt;
}

std::vector<int> kn_to_product_map(const KnBundle& bundle) {
  std::vector<int> map(static_cast<std::size_t>(bundle.kn.vertex_count()));
  for (int x = 0; x < bundle.kn.vertex_count(); ++x)
    map[static_cast<std::size_t>(x)] =
        4 * bundle.kn_base(x) + bundle.fiber[static_cast<std::size_t>(x)];
  return map;
}

}  // namespace glim
