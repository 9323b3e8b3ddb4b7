#include "glim/mis.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "glim/errors.hpp"

namespace glim {

std::optional<Edge> independence_witness(const Graph& g,
                                         const std::vector<int>& s) {
  std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int v : s) {
    if (v < 0 || v >= g.vertex_count())
      throw UsageError("independence check: vertex out of range");
    in[static_cast<std::size_t>(v)] = 1;
  }
  for (const auto& [u, v] : g.edges())
    if (in[static_cast<std::size_t>(u)] && in[static_cast<std::size_t>(v)])
      return Edge{u, v};
  return std::nullopt;
}

bool is_independent(const Graph& g, const std::vector<int>& s) {
  return !independence_witness(g, s).has_value();
}

namespace {

using Mask = std::vector<std::uint64_t>;

struct Bits {
  int n = 0;
  int words = 0;

  Mask empty_mask() const { return Mask(static_cast<std::size_t>(words), 0); }

  Mask full_mask() const {
    Mask m(static_cast<std::size_t>(words), ~std::uint64_t{0});
    int spare = 64 * words - n;
    if (spare > 0 && words > 0)
      m[static_cast<std::size_t>(words - 1)] >>= spare;
    return m;
  }

  static bool test(const Mask& m, int v) {
    return (m[static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1;
  }
  static void set(Mask& m, int v) {
    m[static_cast<std::size_t>(v >> 6)] |= std::uint64_t{1} << (v & 63);
  }
  static void clear(Mask& m, int v) {
    m[static_cast<std::size_t>(v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
  }
  static int count(const Mask& m) {
    int c = 0;
    for (std::uint64_t w : m) c += std::popcount(w);
    return c;
  }
  static int count_and(const Mask& a, const Mask& b) {
    int c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
    return c;
  }
  static bool subset_of(const Mask& a, const Mask& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] & ~b[i]) return false;
    return true;
  }
  static void and_not(Mask& a, const Mask& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] &= ~b[i];
  }
  template <class Fn>
  static void for_each(const Mask& m, Fn fn) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::uint64_t w = m[i];
      while (w) {
        int b = std::countr_zero(w);
        fn(static_cast<int>(64 * i) + b);
        w &= w - 1;
      }
    }
  }
};

struct Solver {
  Bits bits;
  std::vector<Mask> adj;       // open neighborhoods
  std::vector<Mask> closed;    // N[v]
  int best = -1;
  std::vector<int> best_set;
  std::vector<int> cur;

  explicit Solver(const Graph& g) {
    bits.n = g.vertex_count();
    bits.words = (bits.n + 63) / 64;
    adj.assign(static_cast<std::size_t>(bits.n), bits.empty_mask());
    for (const auto& [u, v] : g.edges()) {
      Bits::set(adj[static_cast<std::size_t>(u)], v);
      Bits::set(adj[static_cast<std::size_t>(v)], u);
    }
    closed = adj;
    for (int v = 0; v < bits.n; ++v)
      Bits::set(closed[static_cast<std::size_t>(v)], v);
  }

  // Greedy clique cover of avail; the number of cliques bounds the MIS size
  // from above.
  int clique_cover(const Mask& avail) const {
    Mask left = avail;
    int cliques = 0;
    while (true) {
      int seed = -1;
      for (std::size_t i = 0; i < left.size() && seed < 0; ++i)
        if (left[i])
          seed = static_cast<int>(64 * i) +
                 std::countr_zero(left[i]);
      if (seed < 0) break;
      ++cliques;
      Mask common = adj[static_cast<std::size_t>(seed)];
      Bits::clear(left, seed);
      // extend greedily by smallest available common neighbor
      while (true) {
        int pick = -1;
        for (std::size_t i = 0; i < left.size() && pick < 0; ++i) {
          std::uint64_t w = left[i] & common[i];
          if (w) pick = static_cast<int>(64 * i) + std::countr_zero(w);
        }
        if (pick < 0) break;
        Bits::clear(left, pick);
        const Mask& pa = adj[static_cast<std::size_t>(pick)];
        for (std::size_t i = 0; i < common.size(); ++i) common[i] &= pa[i];
      }
    }
    return cliques;
  }

  void take(Mask& avail, int v) {
    cur.push_back(v);
    Bits::and_not(avail, closed[static_cast<std::size_t>(v)]);
  }

  void solve(Mask avail) {
    // reductions: isolated and degree-1 vertices are always taken
    bool changed = true;
    std::size_t mark = cur.size();
    while (changed) {
      changed = false;
      int deg1 = -1;
      for (std::size_t i = 0; i < avail.size() && !changed; ++i) {
        std::uint64_t w = avail[i];
        while (w) {
          int v = static_cast<int>(64 * i) + std::countr_zero(w);
          w &= w - 1;
          int d = Bits::count_and(adj[static_cast<std::size_t>(v)], avail);
          if (d == 0) {
            take(avail, v);
            changed = true;
            break;
          }
          if (d == 1 && deg1 < 0) deg1 = v;
        }
      }
      if (!changed && deg1 >= 0) {
        take(avail, deg1);
        changed = true;
      }
    }

    int remaining = Bits::count(avail);
    if (remaining == 0) {
      if (static_cast<int>(cur.size()) > best) {
        best = static_cast<int>(cur.size());
        best_set = cur;
      }
      cur.resize(mark);
      return;
    }

    if (static_cast<int>(cur.size()) + clique_cover(avail) <= best) {
      cur.resize(mark);
      return;
    }

    // domination: if N[u] ⊆ N[v] within avail, some optimum avoids v
    std::vector<int> verts;
    verts.reserve(static_cast<std::size_t>(remaining));
    Bits::for_each(avail, [&](int v) { verts.push_back(v); });
    Mask dominated = bits.empty_mask();
    for (int u : verts) {
      Mask nu = closed[static_cast<std::size_t>(u)];
      for (std::size_t i = 0; i < nu.size(); ++i) nu[i] &= avail[i];
      for (int v : verts) {
        if (v == u || Bits::test(dominated, u) || Bits::test(dominated, v))
          continue;
        if (!Bits::test(nu, v)) continue;  // need v ∈ N[u]
        Mask nv = closed[static_cast<std::size_t>(v)];
        for (std::size_t i = 0; i < nv.size(); ++i) nv[i] &= avail[i];
        if (Bits::subset_of(nu, nv)) Bits::set(dominated, v);
      }
    }
    if (Bits::count(dominated) > 0) {
      Bits::and_not(avail, dominated);
      solve(std::move(avail));
      cur.resize(mark);
      return;
    }

    // branch on a maximum-degree vertex, include first
    int pivot = -1, pdeg = -1;
    for (int v : verts) {
      int d = Bits::count_and(adj[static_cast<std::size_t>(v)], avail);
      if (d > pdeg) {
        pdeg = d;
        pivot = v;
      }
    }
    Mask with = avail;
    take(with, pivot);
    solve(std::move(with));
    cur.pop_back();

    Bits::clear(avail, pivot);
    solve(std::move(avail));
    cur.resize(mark);
  }
};

std::vector<int> greedy_mis(const Graph& g) {
  int n = g.vertex_count();
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
  std::vector<int> out;
  int left = n;
  while (left > 0) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (alive[static_cast<std::size_t>(v)] &&
          (pick < 0 ||
           deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(pick)]))
        pick = v;
    out.push_back(pick);
    alive[static_cast<std::size_t>(pick)] = 0;
    --left;
    for (int u : g.neighbors(pick)) {
      if (!alive[static_cast<std::size_t>(u)]) continue;
      alive[static_cast<std::size_t>(u)] = 0;
      --left;
      for (int w : g.neighbors(u))
        if (alive[static_cast<std::size_t>(w)]) --deg[static_cast<std::size_t>(w)];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// (1,2)-swap local search: drop one member whose removal frees two additions.
std::vector<int> improve_mis(const Graph& g, std::vector<int> s) {
  int n = g.vertex_count();
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int v : s) in[static_cast<std::size_t>(v)] = 1;
  auto blockers = [&](int v) {
    std::vector<int> bs;
    for (int u : g.neighbors(v))
      if (in[static_cast<std::size_t>(u)]) bs.push_back(u);
    return bs;
  };
  bool moved = true;
  int rounds = 0;
  while (moved && rounds < 50) {
    moved = false;
    ++rounds;
    for (int v = 0; v < n && !moved; ++v) {
      if (in[static_cast<std::size_t>(v)]) continue;
      std::vector<int> bs = blockers(v);
      if (bs.empty()) {
        in[static_cast<std::size_t>(v)] = 1;
        moved = true;
        break;
      }
      if (bs.size() != 1) continue;
      int u = bs[0];
      in[static_cast<std::size_t>(u)] = 0;
      in[static_cast<std::size_t>(v)] = 1;
      bool gained = false;
      for (int w = 0; w < n && !gained; ++w)
        if (!in[static_cast<std::size_t>(w)] && blockers(w).empty()) {
          in[static_cast<std::size_t>(w)] = 1;
          gained = true;
        }
      if (gained) {
        moved = true;
      } else {
        in[static_cast<std::size_t>(v)] = 0;
        in[static_cast<std::size_t>(u)] = 1;
      }
    }
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (in[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

}  // namespace

MisResult max_independent_set(const Graph& g, int exact_cap) {
  if (exact_cap < 0) throw UsageError("exact_cap must be nonnegative");
  MisResult out;
  int n = g.vertex_count();
  if (n == 0) {
    out.exact = true;
    return out;
  }
  if (n <= exact_cap) {
    Solver solver(g);
    solver.best = 0;
    solver.solve(solver.bits.full_mask());
    std::sort(solver.best_set.begin(), solver.best_set.end());
    out.size = solver.best;
    out.witness = std::move(solver.best_set);
    out.exact = true;
    out.lower = out.size;
    out.upper = out.size;
  } else {
    out.witness = improve_mis(g, greedy_mis(g));
    out.size = static_cast<int>(out.witness.size());
    out.exact = false;
    out.lower = out.size;
    Solver solver(g);
    out.upper = solver.clique_cover(solver.bits.full_mask());
  }
  if (independence_witness(g, out.witness).has_value())
    throw AssertionError("max_independent_set produced a dependent witness");
  return out;
}

}  // namespace glim
