#include "glim/canon.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "glim/errors.hpp"

namespace glim {
namespace {

// Incidence entry: edge index, other endpoint, role of this vertex on the
// edge (0 unoriented, 1 tail, 2 head).
struct Inc {
  int edge;
  int other;
  int role;
};

struct Inst {
  int n = 0;
  const Graph* g = nullptr;
  bool labelled = false;
  std::vector<int> elab;                  // per edge, id into label_table
  std::vector<int> edir;                  // per edge, 0/1/2 as EdgeDir
  std::vector<std::string> label_table;   // shared across compared instances
  const std::vector<int>* dist = nullptr;
  std::vector<std::vector<Inc>> inc;
};

std::vector<std::string> collect_labels(const RootedBall& a, const RootedBall* b) {
  std::set<std::string> s;
  if (a.labels)
    for (const auto& l : *a.labels) s.insert(l.label);
  if (b && b->labels)
    for (const auto& l : *b->labels) s.insert(l.label);
  return {s.begin(), s.end()};
}

Inst build_inst(const RootedBall& ball, const std::vector<std::string>& table) {
  Inst in;
  in.n = ball.graph.vertex_count();
  in.g = &ball.graph;
  in.labelled = ball.labelled();
  in.label_table = table;
  in.dist = &ball.dist;
  int m = ball.graph.edge_count();
  in.elab.assign(static_cast<std::size_t>(m), 0);
  in.edir.assign(static_cast<std::size_t>(m), 0);
  if (ball.labels) {
    for (int e = 0; e < m; ++e) {
      const auto& l = (*ball.labels)[static_cast<std::size_t>(e)];
      auto it = std::lower_bound(table.begin(), table.end(), l.label);
      in.elab[static_cast<std::size_t>(e)] = static_cast<int>(it - table.begin());
      in.edir[static_cast<std::size_t>(e)] = static_cast<int>(l.dir);
    }
  }
  in.inc.assign(static_cast<std::size_t>(in.n), {});
  for (int e = 0; e < m; ++e) {
    const auto& [u, v] = ball.graph.edges()[static_cast<std::size_t>(e)];
    int d = in.edir[static_cast<std::size_t>(e)];
    int role_u = d == 0 ? 0 : (d == 1 ? 1 : 2);
    int role_v = d == 0 ? 0 : (d == 1 ? 2 : 1);
    in.inc[static_cast<std::size_t>(u)].push_back({e, v, role_u});
    in.inc[static_cast<std::size_t>(v)].push_back({e, u, role_v});
  }
  return in;
}

// Rank a list of composite keys; returns compact colors ordered by key value
// so the result is invariant under vertex relabelling.
std::vector<int> rank_keys(const std::vector<std::vector<int>>& keys) {
  std::vector<int> idx(keys.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
  });
  std::vector<int> colors(keys.size());
  int c = -1;
  const std::vector<int>* prev = nullptr;
  for (int v : idx) {
    if (!prev || keys[static_cast<std::size_t>(v)] != *prev) {
      ++c;
      prev = &keys[static_cast<std::size_t>(v)];
    }
    colors[static_cast<std::size_t>(v)] = c;
  }
  return colors;
}

std::vector<int> initial_colors(const Inst& in) {
  std::vector<std::vector<int>> keys(static_cast<std::size_t>(in.n));
  for (int v = 0; v < in.n; ++v) {
    std::vector<int> k;
    k.push_back((*in.dist)[static_cast<std::size_t>(v)]);
    k.push_back(static_cast<int>(in.inc[static_cast<std::size_t>(v)].size()));
    std::vector<std::pair<int, int>> toks;
    for (const auto& i : in.inc[static_cast<std::size_t>(v)])
      toks.emplace_back(in.elab[static_cast<std::size_t>(i.edge)], i.role);
    std::sort(toks.begin(), toks.end());
    for (const auto& [l, r] : toks) {
      k.push_back(l);
      k.push_back(r);
    }
    keys[static_cast<std::size_t>(v)] = std::move(k);
  }
  return rank_keys(keys);
}

int color_count(const std::vector<int>& colors) {
  int mx = -1;
  for (int c : colors) mx = std::max(mx, c);
  return mx + 1;
}

// Classic 1-dimensional refinement over the edge-labelled, partially
// oriented ball. Colors only ever split, and the split order is keyed by
// invariant data, so isomorphic inputs refine identically.
std::vector<int> refine(const Inst& in, std::vector<int> colors) {
  int classes = color_count(colors);
  for (;;) {
    std::vector<std::vector<int>> keys(static_cast<std::size_t>(in.n));
    for (int v = 0; v < in.n; ++v) {
      std::vector<int> k;
      k.push_back(colors[static_cast<std::size_t>(v)]);
      std::vector<std::array<int, 3>> toks;
      for (const auto& i : in.inc[static_cast<std::size_t>(v)])
        toks.push_back({colors[static_cast<std::size_t>(i.other)],
                        in.elab[static_cast<std::size_t>(i.edge)], i.role});
      std::sort(toks.begin(), toks.end());
      for (const auto& t : toks) {
        k.push_back(t[0]);
        k.push_back(t[1]);
        k.push_back(t[2]);
      }
      keys[static_cast<std::size_t>(v)] = std::move(k);
    }
    auto next = rank_keys(keys);
    int nc = color_count(next);
    colors = std::move(next);
    if (nc == classes) return colors;
    classes = nc;
  }
}

std::string encode(const Inst& in, const std::vector<int>& order) {
  std::vector<int> pos(static_cast<std::size_t>(in.n));
  for (int i = 0; i < in.n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  std::string s = std::to_string(in.n);
  s += '|';
  for (int i = 0; i < in.n; ++i) {
    if (i) s += ';';
    int v = order[static_cast<std::size_t>(i)];
    std::vector<int> nb;
    for (const auto& inc : in.inc[static_cast<std::size_t>(v)])
      nb.push_back(pos[static_cast<std::size_t>(inc.other)]);
    std::sort(nb.begin(), nb.end());
    for (std::size_t j = 0; j < nb.size(); ++j) {
      if (j) s += ' ';
      s += std::to_string(nb[static_cast<std::size_t>(j)]);
    }
  }
  s += '|';
  if (in.labelled) {
    struct Tok {
      int i, j;
      std::string text;
    };
    std::vector<Tok> toks;
    int m = in.g->edge_count();
    for (int e = 0; e < m; ++e) {
      const auto& [u, v] = in.g->edges()[static_cast<std::size_t>(e)];
      int pu = pos[static_cast<std::size_t>(u)];
      int pv = pos[static_cast<std::size_t>(v)];
      int i = std::min(pu, pv), j = std::max(pu, pv);
      char dir_char = '.';
      int d = in.edir[static_cast<std::size_t>(e)];
      if (d != 0) {
        int tail = d == 1 ? u : v;
        dir_char = pos[static_cast<std::size_t>(tail)] == i ? '>' : '<';
      }
      toks.push_back({i, j, in.label_table[static_cast<std::size_t>(
                                in.elab[static_cast<std::size_t>(e)])] +
                                dir_char});
    }
    std::sort(toks.begin(), toks.end(), [](const Tok& a, const Tok& b) {
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    for (std::size_t t = 0; t < toks.size(); ++t) {
      if (t) s += ';';
      s += toks[t].text;
    }
  }
  return s;
}

bool is_automorphism(const Inst& in, const std::vector<int>& perm) {
  int m = in.g->edge_count();
  for (int e = 0; e < m; ++e) {
    const auto& [u, v] = in.g->edges()[static_cast<std::size_t>(e)];
    int iu = perm[static_cast<std::size_t>(u)];
    int iv = perm[static_cast<std::size_t>(v)];
    int f = in.g->edge_index(iu, iv);
    if (f < 0) return false;
    if (in.elab[static_cast<std::size_t>(e)] != in.elab[static_cast<std::size_t>(f)]) return false;
    int d = in.edir[static_cast<std::size_t>(e)];
    int df = in.edir[static_cast<std::size_t>(f)];
    if ((d == 0) != (df == 0)) return false;
    if (d != 0) {
      int tail = d == 1 ? u : v;
      int ftail = df == 1 ? in.g->edges()[static_cast<std::size_t>(f)].first
                          : in.g->edges()[static_cast<std::size_t>(f)].second;
      if (perm[static_cast<std::size_t>(tail)] != ftail) return false;
    }
  }
  return true;
}

// Individualization-refinement search for the lexicographically smallest
// encoding. Discovered automorphisms prune sibling branches: a candidate
// equivalent (under the stabilizer of the current path) to one already tried
// explores an identically-encoded subtree, so it is skipped.
class CanonSearch {
 public:
  explicit CanonSearch(const Inst& in) : in_(in) {}

  std::string run() {
    std::vector<int> path;
    descend(refine(in_, initial_colors(in_)), path);
    return best_;
  }

 private:
  const Inst& in_;
  std::string best_;
  bool have_best_ = false;
  std::vector<int> best_order_;
  std::vector<std::vector<int>> gens_;

  bool same_orbit_as_tried(int cand, const std::vector<int>& tried,
                           const std::vector<int>& path) const {
    if (tried.empty() || gens_.empty()) return false;
    std::vector<const std::vector<int>*> fixing;
    for (const auto& gperm : gens_) {
      bool fixes = true;
      for (int p : path)
        if (gperm[static_cast<std::size_t>(p)] != p) {
          fixes = false;
          break;
        }
      if (fixes) fixing.push_back(&gperm);
    }
    if (fixing.empty()) return false;
    std::vector<char> seen(static_cast<std::size_t>(in_.n), 0);
    std::vector<int> stack{cand};
    seen[static_cast<std::size_t>(cand)] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int t : tried)
        if (t == x) return true;
      for (const auto* gp : fixing) {
        int y = (*gp)[static_cast<std::size_t>(x)];
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          stack.push_back(y);
        }
        // generators alone do not close the group; walk preimages too
        for (int z = 0; z < in_.n; ++z)
          if ((*gp)[static_cast<std::size_t>(z)] == x && !seen[static_cast<std::size_t>(z)]) {
            seen[static_cast<std::size_t>(z)] = 1;
            stack.push_back(z);
          }
      }
    }
    return false;
  }

  void descend(std::vector<int> colors, std::vector<int>& path) {
    int classes = color_count(colors);
    if (classes == in_.n) {
      std::vector<int> order(static_cast<std::size_t>(in_.n));
      for (int v = 0; v < in_.n; ++v) order[static_cast<std::size_t>(colors[static_cast<std::size_t>(v)])] = v;
      std::string s = encode(in_, order);
      if (!have_best_ || s < best_) {
        best_ = std::move(s);
        best_order_ = order;
        have_best_ = true;
      } else if (s == best_) {
        std::vector<int> perm(static_cast<std::size_t>(in_.n));
        for (int i = 0; i < in_.n; ++i)
          perm[static_cast<std::size_t>(best_order_[static_cast<std::size_t>(i)])] =
              order[static_cast<std::size_t>(i)];
        if (is_automorphism(in_, perm)) gens_.push_back(std::move(perm));
      }
      return;
    }

    // First non-singleton cell in color order is the branching cell.
    std::vector<int> count(static_cast<std::size_t>(classes), 0);
    for (int c : colors) ++count[static_cast<std::size_t>(c)];
    int target = 0;
    while (count[static_cast<std::size_t>(target)] == 1) ++target;
    std::vector<int> cell;
    for (int v = 0; v < in_.n; ++v)
      if (colors[static_cast<std::size_t>(v)] == target) cell.push_back(v);

    std::vector<int> tried;
    for (int cand : cell) {
      if (same_orbit_as_tried(cand, tried, path)) continue;
      tried.push_back(cand);
      std::vector<int> split(static_cast<std::size_t>(in_.n));
      for (int v = 0; v < in_.n; ++v)
        split[static_cast<std::size_t>(v)] =
            2 * colors[static_cast<std::size_t>(v)] + (v == cand ? 0 : 1);
      path.push_back(cand);
      descend(refine(in_, std::move(split)), path);
      path.pop_back();
    }
  }
};

// Shared matcher for isomorphism search and automorphism counting. Vertices
// of A are matched in BFS order from the root so every new vertex touches
// the mapped region.
struct Matcher {
  const Inst& A;
  const Inst& B;
  bool count_all;
  std::vector<int> order;           // BFS order over A
  std::vector<int> map_ab;          // A vertex -> B vertex or -1
  std::vector<char> used_b;
  std::vector<int> colors_a, colors_b;
  long long count = 0;
  bool found = false;

  Matcher(const Inst& a, const Inst& b, bool all) : A(a), B(b), count_all(all) {
    map_ab.assign(static_cast<std::size_t>(A.n), -1);
    used_b.assign(static_cast<std::size_t>(B.n), 0);
  }

  bool compatible(int av, int bv) const {
    if (colors_a[static_cast<std::size_t>(av)] != colors_b[static_cast<std::size_t>(bv)]) return false;
    // Mapped neighborhoods must correspond exactly (induced, labelled).
    std::vector<std::array<int, 4>> ea, eb;
    for (const auto& i : A.inc[static_cast<std::size_t>(av)]) {
      int im = map_ab[static_cast<std::size_t>(i.other)];
      if (im >= 0)
        ea.push_back({im, A.elab[static_cast<std::size_t>(i.edge)], i.role, 0});
    }
    for (const auto& i : B.inc[static_cast<std::size_t>(bv)]) {
      if (used_b[static_cast<std::size_t>(i.other)])
        eb.push_back({i.other, B.elab[static_cast<std::size_t>(i.edge)], i.role, 0});
    }
    if (ea.size() != eb.size()) return false;
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    return ea == eb;
  }

  bool extend(std::size_t k) {
    if (k == order.size()) {
      ++count;
      found = true;
      return !count_all;  // stop at the first witness unless counting
    }
    int av = order[k];
    for (int bv = 0; bv < B.n; ++bv) {
      if (used_b[static_cast<std::size_t>(bv)]) continue;
      if (!compatible(av, bv)) continue;
      map_ab[static_cast<std::size_t>(av)] = bv;
      used_b[static_cast<std::size_t>(bv)] = 1;
      if (extend(k + 1)) return true;
      map_ab[static_cast<std::size_t>(av)] = -1;
      used_b[static_cast<std::size_t>(bv)] = 0;
    }
    return false;
  }
};

std::vector<int> bfs_order(const Graph& g, int root) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(g.vertex_count()));
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<int> frontier{root};
  seen[static_cast<std::size_t>(root)] = 1;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int v : frontier) {
      order.push_back(v);
      for (int w : g.neighbors(v))
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          next.push_back(w);
        }
    }
    frontier = std::move(next);
  }
  if (order.size() != static_cast<std::size_t>(g.vertex_count()))
    throw UsageError("ball payload is disconnected");
  return order;
}

// Invariant histogram: refined class sizes in color order plus basic counts.
// Equal for isomorphic balls, cheap to compare.
std::string inv_signature(const Inst& in, const std::vector<int>& colors) {
  std::vector<int> count(static_cast<std::size_t>(color_count(colors)), 0);
  for (int c : colors) ++count[static_cast<std::size_t>(c)];
  std::string s = std::to_string(in.n) + ":" + std::to_string(in.g->edge_count()) + ":";
  s += in.labelled ? "L" : "P";
  for (int c : count) {
    s += ',';
    s += std::to_string(c);
  }
  return s;
}

bool validate_mapping(const RootedBall& a, const RootedBall& b, const std::vector<int>& f) {
  if (a.graph.vertex_count() != b.graph.vertex_count()) return false;
  if (a.graph.edge_count() != b.graph.edge_count()) return false;
  if (f[static_cast<std::size_t>(a.root)] != b.root) return false;
  std::vector<char> hit(static_cast<std::size_t>(b.graph.vertex_count()), 0);
  for (int v = 0; v < a.graph.vertex_count(); ++v) {
    int w = f[static_cast<std::size_t>(v)];
    if (w < 0 || w >= b.graph.vertex_count() || hit[static_cast<std::size_t>(w)]) return false;
    hit[static_cast<std::size_t>(w)] = 1;
    if (a.dist[static_cast<std::size_t>(v)] != b.dist[static_cast<std::size_t>(w)]) return false;
  }
  for (int e = 0; e < a.graph.edge_count(); ++e) {
    const auto& [u, v] = a.graph.edges()[static_cast<std::size_t>(e)];
    int fu = f[static_cast<std::size_t>(u)];
    int fv = f[static_cast<std::size_t>(v)];
    int be = b.graph.edge_index(fu, fv);
    if (be < 0) return false;
    if (a.labels) {
      const auto& la = (*a.labels)[static_cast<std::size_t>(e)];
      const auto& lb = (*b.labels)[static_cast<std::size_t>(be)];
      if (la.label != lb.label) return false;
      if ((la.dir == EdgeDir::none) != (lb.dir == EdgeDir::none)) return false;
      if (la.dir != EdgeDir::none) {
        int tail_a = la.dir == EdgeDir::forward ? u : v;
        int tail_b = lb.dir == EdgeDir::forward ? b.graph.edges()[static_cast<std::size_t>(be)].first
                                                : b.graph.edges()[static_cast<std::size_t>(be)].second;
        if (f[static_cast<std::size_t>(tail_a)] != tail_b) return false;
      }
    }
  }
  return true;
}

}  // namespace

Code canonical_code(const RootedBall& b) {
  validate_ball(b);
  auto table = collect_labels(b, nullptr);
  Inst in = build_inst(b, table);
  CanonSearch search(in);
  return search.run();
}

std::optional<std::vector<int>> rooted_isomorphic(const RootedBall& b1, const RootedBall& b2) {
  if (b1.labelled() != b2.labelled())
    throw UsageError("rooted_isomorphic: payload kinds differ (plain vs labelled)");
  if (b1.graph.vertex_count() != b2.graph.vertex_count()) return std::nullopt;
  if (b1.graph.edge_count() != b2.graph.edge_count()) return std::nullopt;

  auto table = collect_labels(b1, &b2);
  Inst A = build_inst(b1, table);
  Inst B = build_inst(b2, table);
  auto ca = refine(A, initial_colors(A));
  auto cb = refine(B, initial_colors(B));
  if (inv_signature(A, ca) != inv_signature(B, cb)) return std::nullopt;

  Matcher m(A, B, false);
  m.colors_a = std::move(ca);
  m.colors_b = std::move(cb);
  m.order = bfs_order(b1.graph, b1.root);
  m.extend(0);
  if (!m.found) return std::nullopt;
  if (!validate_mapping(b1, b2, m.map_ab))
    throw AssertionError("rooted_isomorphic produced a mapping that fails re-validation");
  return m.map_ab;
}

long long rooted_automorphism_count(const RootedBall& b) {
  auto table = collect_labels(b, nullptr);
  Inst A = build_inst(b, table);
  auto colors = refine(A, initial_colors(A));
  Matcher m(A, A, true);
  m.colors_a = colors;
  m.colors_b = colors;
  m.order = bfs_order(b.graph, b.root);
  m.extend(0);
  return m.count;
}

Code CodeCache::code_of(const RootedBall& b) {
  auto table = collect_labels(b, nullptr);
  Inst in = build_inst(b, table);
  auto colors = refine(in, initial_colors(in));
  std::string sig = inv_signature(in, colors);
  // Label multiset participates in the bucket key so plain relabellings of
  // the alphabet cannot collide.
  for (const auto& l : table) {
    sig += ';';
    sig += l;
  }

  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = buckets_.find(sig);
    if (it != buckets_.end()) {
      for (const auto& [rep, code] : it->second) {
        if (rooted_isomorphic(b, rep)) return code;
      }
    }
  }
  Code code = canonical_code(b);
  {
    std::lock_guard<std::mutex> lock(mu_);
    buckets_[sig].emplace_back(b, code);
  }
  return code;
}

}  // namespace glim
