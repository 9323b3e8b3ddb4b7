#include "glim/obstruction.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

#include "glim/ball.hpp"
#include "glim/canon.hpp"
#include "glim/cayley.hpp"
#include "glim/census.hpp"
#include "glim/errors.hpp"
#include "glim/json_io.hpp"
#include "glim/mis.hpp"
#include "glim/parallel.hpp"
#include "glim/rng.hpp"

namespace glim {

void Labelling::validate() const {
  if (static_cast<int>(host.fiber.size()) != host.graph.vertex_count())
    throw UsageError("labelling host has no usable fiber map");
  if (static_cast<int>(assignment.size()) != host.graph.edge_count())
    throw UsageError("labelling does not cover every edge");
  for (const EdgeLabel& el : assignment) {
    if (el.label == "a") {
      if (el.dir == EdgeDir::none)
        throw UsageError("a-labelled edges must be oriented");
    } else if (el.label == "b" || el.label == "c" || el.label == "d") {
      if (el.dir != EdgeDir::none)
        throw UsageError("involutive labels must be unoriented");
    } else {
      throw UsageError("label outside the alphabet a,b,c,d");
    }
  }
}

Diagram Labelling::as_diagram() const {
  validate();
  return Diagram{host.graph, assignment};
}

namespace {

const LimitBall& cached_limit(int radius) {
  static std::mutex mu;
  static std::map<int, LimitBall> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(radius);
  if (it == cache.end())
    it = cache.emplace(radius, limit_ball_detail(radius)).first;
  return it->second;
}

long long cached_limit_automorphisms(int radius) {
  static std::mutex mu;
  static std::map<int, long long> cache;
  const RootedBall& ball = cached_limit(radius).ball;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(radius);
  if (it == cache.end())
    it = cache.emplace(radius, rooted_automorphism_count(ball)).first;
  return it->second;
}

// One slot per half-edge role around a vertex: a out, a in, b, c, d. A
// vertex can only be good when it carries exactly one of each.
std::vector<char> half_edge_ok(const Diagram& d) {
  int n = d.graph.vertex_count();
  std::vector<std::array<int, 5>> cnt(static_cast<std::size_t>(n),
                                      {0, 0, 0, 0, 0});
  for (int e = 0; e < d.graph.edge_count(); ++e) {
    const auto& [u, v] = d.graph.edges()[static_cast<std::size_t>(e)];
    const EdgeLabel& el = d.labels[static_cast<std::size_t>(e)];
    if (el.label == "a") {
      int tail = el.dir == EdgeDir::forward ? u : v;
      int head = el.dir == EdgeDir::forward ? v : u;
      ++cnt[static_cast<std::size_t>(tail)][0];
      ++cnt[static_cast<std::size_t>(head)][1];
    } else {
      int slot = el.label == "b" ? 2 : el.label == "c" ? 3 : 4;
      ++cnt[static_cast<std::size_t>(u)][static_cast<std::size_t>(slot)];
      ++cnt[static_cast<std::size_t>(v)][static_cast<std::size_t>(slot)];
    }
  }
  std::vector<char> ok(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    const auto& c = cnt[static_cast<std::size_t>(v)];
    ok[static_cast<std::size_t>(v)] =
        c[0] == 1 && c[1] == 1 && c[2] == 1 && c[3] == 1 && c[4] == 1 ? 1 : 0;
  }
  return ok;
}

char vertex_ok(const Diagram& d, int v) {
  std::array<int, 5> c{0, 0, 0, 0, 0};
  for (int u : d.graph.neighbors(v)) {
    int e = d.graph.edge_index(v, u);
    const EdgeLabel& el = d.labels[static_cast<std::size_t>(e)];
    if (el.label == "a")
      ++c[d.tail_of(e) == v ? 0 : 1];
    else
      ++c[static_cast<std::size_t>(el.label == "b"   ? 2
                                   : el.label == "c" ? 3
                                                     : 4)];
  }
  return c[0] == 1 && c[1] == 1 && c[2] == 1 && c[3] == 1 && c[4] == 1 ? 1 : 0;
}

// lvl[v] stays set iff every vertex within distance k of v was set.
std::vector<char> erode_ok(const Graph& g, std::vector<char> lvl, int k) {
  int n = g.vertex_count();
  std::vector<char> next(static_cast<std::size_t>(n));
  for (int round = 0; round < k; ++round) {
    for (int v = 0; v < n; ++v) {
      char keep = lvl[static_cast<std::size_t>(v)];
      for (int u : g.neighbors(v)) {
        if (!keep) break;
        keep = lvl[static_cast<std::size_t>(u)];
      }
      next[static_cast<std::size_t>(v)] = keep;
    }
    lvl.swap(next);
  }
  return lvl;
}

std::optional<std::vector<int>> iso_to_limit(const Diagram& d, int x, int R,
                                             const RootedBall& limit) {
  RootedBall ball = extract_ball(d, x, R);
  if (ball.graph.vertex_count() != limit.graph.vertex_count() ||
      ball.graph.edge_count() != limit.graph.edge_count())
    return std::nullopt;
  return rooted_isomorphic(ball, limit);
}

// Full scan: prefilter by half-edge roles eroded to radius R-1, then the
// isomorphism test on survivors. Slots keep the output independent of the
// worker count.
std::pair<std::vector<char>, std::vector<std::vector<int>>> good_scan(
    const Diagram& d, int R, const RootedBall& limit, bool want_iotas) {
  int n = d.graph.vertex_count();
  std::vector<char> cand = erode_ok(d.graph, half_edge_ok(d), R - 1);
  std::vector<char> flag(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> iotas(
      want_iotas ? static_cast<std::size_t>(n) : std::size_t{0});
  parallel_for(0, n, [&](int x) {
    if (!cand[static_cast<std::size_t>(x)]) return;
    auto iso = iso_to_limit(d, x, R, limit);
    if (!iso) return;
    flag[static_cast<std::size_t>(x)] = 1;
    if (want_iotas) iotas[static_cast<std::size_t>(x)] = std::move(*iso);
  });
  return {std::move(flag), std::move(iotas)};
}

bool good_at(const Diagram& d, const std::vector<char>& ok, int x, int R,
             const RootedBall& limit) {
  std::vector<int> dist = bfs_distances(d.graph, x, R - 1);
  for (int v = 0; v < d.graph.vertex_count(); ++v)
    if (dist[static_cast<std::size_t>(v)] >= 0 &&
        !ok[static_cast<std::size_t>(v)])
      return false;
  return iso_to_limit(d, x, R, limit).has_value();
}

long long count_good(const Diagram& d, int R, const RootedBall& limit) {
  auto [flag, iotas] = good_scan(d, R, limit, false);
  long long c = 0;
  for (char f : flag) c += f;
  return c;
}

}  // namespace

GoodSet find_r_good(const Labelling& lab, int R) {
  if (R < 1) throw UsageError("goodness radius must be at least 1");
  Diagram d = lab.as_diagram();
  const LimitBall& limit = cached_limit(R);
  if (R >= 4 && cached_limit_automorphisms(R) != 1)
    throw AssertionError("limit ball has a nontrivial rooted automorphism");
  auto [flag, iotas] = good_scan(d, R, limit.ball, true);
  GoodSet out;
  out.radius = R;
  out.unique_isos = R >= 4;
  for (int x = 0; x < d.graph.vertex_count(); ++x)
    if (flag[static_cast<std::size_t>(x)]) {
      out.vertices.push_back(x);
      out.iotas.push_back(std::move(iotas[static_cast<std::size_t>(x)]));
    }
  return out;
}

namespace {

// The column through x, walked along +1 fiber steps.
std::array<int, 4> column_walk(const Graph& g, const std::vector<int>& fiber,
                               int x) {
  std::array<int, 4> col{x, -1, -1, -1};
  int f = fiber[static_cast<std::size_t>(x)];
  for (int i = 1; i < 4; ++i) {
    int want = (f + i) % 4;
    int found = -1;
    for (int u : g.neighbors(col[static_cast<std::size_t>(i - 1)])) {
      if (fiber[static_cast<std::size_t>(u)] != want) continue;
      if (found >= 0)
        throw UsageError("fiber map is not locally a C4 product");
      found = u;
    }
    if (found < 0)
      throw UsageError("fiber map is not locally a C4 product");
    col[static_cast<std::size_t>(i)] = found;
  }
  if (!g.has_edge(col[3], x))
    throw UsageError("fiber map is not locally a C4 product");
  return col;
}

}  // namespace

OrientationClass classify_orientations(const GoodSet& good,
                                       const Labelling& lab) {
  if (good.radius < 4 || !good.unique_isos)
    throw UsageError(
        "orientation classes need the unique-isomorphism regime (radius 4 up)");
  if (good.vertices.size() != good.iotas.size())
    throw UsageError("good set and isomorphism list out of sync");
  Diagram d = lab.as_diagram();
  const LimitBall& limit = cached_limit(good.radius);

  OrientationClass out;
  for (std::size_t k = 0; k < good.vertices.size(); ++k) {
    int x = good.vertices[k];
    const std::vector<int>& iota = good.iotas[k];
    std::array<int, 4> col = column_walk(lab.host.graph, lab.host.fiber, x);
    RootedBall ball = extract_ball(d, x, good.radius);
    if (iota.size() != static_cast<std::size_t>(ball.graph.vertex_count()))
      throw UsageError("isomorphism does not fit the vertex's ball");

    std::array<int, 4> sig{};
    for (int i = 0; i < 4; ++i) {
      int bi = -1;
      for (int j = 0; j < ball.graph.vertex_count(); ++j)
        if (ball.source[static_cast<std::size_t>(j)] ==
            col[static_cast<std::size_t>(i)]) {
          bi = j;
          break;
        }
      if (bi < 0)
        throw AssertionError("column member missing from a good ball");
      sig[static_cast<std::size_t>(i)] =
          limit.fiber[static_cast<std::size_t>(
              iota[static_cast<std::size_t>(bi)])];
    }
    int step = (sig[1] - sig[0] + 4) % 4;
    for (int i = 0; i < 4; ++i)
      if ((sig[static_cast<std::size_t>((i + 1) % 4)] -
           sig[static_cast<std::size_t>(i)] + 4) %
              4 !=
          step)
        throw AssertionError("isomorphism does not respect the fiber cycle");
    if (step == 1)
      out.preserving.push_back(x);
    else if (step == 3)
      out.reversing.push_back(x);
    else
      throw AssertionError("isomorphism does not respect the fiber cycle");
  }
  return out;
}

SearchStrategy parse_strategy(const std::string& name) {
  if (name == "random") return SearchStrategy::random;
  if (name == "propagate") return SearchStrategy::propagate;
  if (name == "anneal") return SearchStrategy::anneal;
  throw UsageError("unknown strategy '" + name + "'");
}

std::string strategy_name(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::random:
      return "random";
    case SearchStrategy::propagate:
      return "propagate";
    default:
      return "anneal";
  }
}

namespace {

EdgeLabel label_option(int k) {
  switch (k) {
    case 0:
      return {"a", EdgeDir::forward};
    case 1:
      return {"a", EdgeDir::backward};
    case 2:
      return {"b", EdgeDir::none};
    case 3:
      return {"c", EdgeDir::none};
    default:
      return {"d", EdgeDir::none};
  }
}

std::vector<EdgeLabel> random_labelling(const FiberedGraph& host, Rng& rng) {
  std::vector<EdgeLabel> asg(
      static_cast<std::size_t>(host.graph.edge_count()));
  for (std::size_t e = 0; e < asg.size(); ++e)
    asg[e] = label_option(static_cast<int>(rng.below(5)));
  return asg;
}

// Fiber-quotient of the host: columns are components of the cross-fiber
// edges. Unlike the census-side base recovery this tolerates partial
// columns, so truncated hosts (ball reinterpretations) work too.
struct Quotient {
  int cols = 0;
  std::vector<int> col_of;
  std::vector<std::vector<int>> adj;
  std::map<Edge, std::vector<int>> groups;  // base edge -> host edge indices
};

Quotient fiber_quotient(const FiberedGraph& host) {
  const Graph& g = host.graph;
  int n = g.vertex_count();
  std::vector<int> up(static_cast<std::size_t>(n));
  std::iota(up.begin(), up.end(), 0);
  auto find = [&](int x) {
    while (up[static_cast<std::size_t>(x)] != x) {
      up[static_cast<std::size_t>(x)] =
          up[static_cast<std::size_t>(up[static_cast<std::size_t>(x)])];
      x = up[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& [u, v] : g.edges())
    if (host.fiber[static_cast<std::size_t>(u)] !=
        host.fiber[static_cast<std::size_t>(v)])
      up[static_cast<std::size_t>(find(u))] = find(v);

  Quotient q;
  q.col_of.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> name(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    if (name[static_cast<std::size_t>(r)] < 0)
      name[static_cast<std::size_t>(r)] = q.cols++;
    q.col_of[static_cast<std::size_t>(v)] = name[static_cast<std::size_t>(r)];
  }
  q.adj.resize(static_cast<std::size_t>(q.cols));
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& [u, v] = g.edges()[static_cast<std::size_t>(e)];
    if (host.fiber[static_cast<std::size_t>(u)] !=
        host.fiber[static_cast<std::size_t>(v)])
      continue;
    int bu = q.col_of[static_cast<std::size_t>(u)];
    int bv = q.col_of[static_cast<std::size_t>(v)];
    if (bu == bv) throw UsageError("fiber map folds an edge into one column");
    q.groups[make_edge(bu, bv)].push_back(e);
  }
  for (const auto& [be, idxs] : q.groups) {
    q.adj[static_cast<std::size_t>(be.first)].push_back(be.second);
    q.adj[static_cast<std::size_t>(be.second)].push_back(be.first);
  }
  for (auto& nb : q.adj) std::sort(nb.begin(), nb.end());
  return q;
}

// Grow the limit pattern breadth-first from a random column: verticals by
// the parity formula, horizontals by handing out the roles a-out, a-in, b
// at each column. Role clashes on non-tree edges fall back to b.
std::vector<EdgeLabel> propagate_labelling(const FiberedGraph& host,
                                           Rng& rng) {
  const Graph& g = host.graph;
  Quotient q = fiber_quotient(host);
  if (q.cols == 0) throw UsageError("empty host");

  std::vector<int> parity(static_cast<std::size_t>(q.cols), -1);
  std::vector<Edge> edge_order;
  std::vector<int> queue;
  int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(q.cols)));
  for (int round = 0; round < q.cols; ++round) {
    int s = round == 0 ? start : -1;
    if (s < 0) {
      for (int b = 0; b < q.cols && s < 0; ++b)
        if (parity[static_cast<std::size_t>(b)] < 0) s = b;
      if (s < 0) break;
    } else if (parity[static_cast<std::size_t>(s)] >= 0) {
      continue;
    }
    parity[static_cast<std::size_t>(s)] = 0;
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      for (int v : q.adj[static_cast<std::size_t>(u)]) {
        if (parity[static_cast<std::size_t>(v)] < 0) {
          parity[static_cast<std::size_t>(v)] =
              (parity[static_cast<std::size_t>(u)] + 1) % 2;
          queue.push_back(v);
        }
        Edge be = make_edge(u, v);
        if (std::find(edge_order.begin(), edge_order.end(), be) ==
            edge_order.end())
          edge_order.push_back(be);
      }
    }
    queue.clear();
  }

  std::vector<EdgeLabel> asg(static_cast<std::size_t>(g.edge_count()));
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& [x, y] = g.edges()[static_cast<std::size_t>(e)];
    int fx = host.fiber[static_cast<std::size_t>(x)];
    int fy = host.fiber[static_cast<std::size_t>(y)];
    if (fx == fy) continue;
    int key = fy == (fx + 1) % 4 ? fx : fx == (fy + 1) % 4 ? fy : fx;
    int par = parity[static_cast<std::size_t>(
        q.col_of[static_cast<std::size_t>(x)])];
    asg[static_cast<std::size_t>(e)] = {vertical_label(par, key),
                                        EdgeDir::none};
  }

  struct Roles {
    bool aout = true, ain = true, b = true;
  };
  std::vector<Roles> avail(static_cast<std::size_t>(q.cols));
  for (const Edge& be : edge_order) {
    Roles& ru = avail[static_cast<std::size_t>(be.first)];
    Roles& rv = avail[static_cast<std::size_t>(be.second)];
    // options in fixed order: a u->v, a v->u, b
    std::vector<int> options;
    if (ru.aout && rv.ain) options.push_back(0);
    if (ru.ain && rv.aout) options.push_back(1);
    if (ru.b && rv.b) options.push_back(2);
    std::string label = "b";
    int tail_col = -1;
    if (!options.empty()) {
      int pick = options[static_cast<std::size_t>(
          rng.below(static_cast<std::uint64_t>(options.size())))];
      if (pick == 0) {
        label = "a";
        tail_col = be.first;
        ru.aout = false;
        rv.ain = false;
      } else if (pick == 1) {
        label = "a";
        tail_col = be.second;
        ru.ain = false;
        rv.aout = false;
      } else {
        ru.b = false;
        rv.b = false;
      }
    }
    for (int e : q.groups[be]) {
      const auto& [x, y] = g.edges()[static_cast<std::size_t>(e)];
      EdgeLabel el{label, EdgeDir::none};
      if (label == "a")
        el.dir = q.col_of[static_cast<std::size_t>(x)] == tail_col
                     ? EdgeDir::forward
                     : EdgeDir::backward;
      asg[static_cast<std::size_t>(e)] = el;
    }
  }
  return asg;
}

SearchResult finish_result(const FiberedGraph& host,
                           std::vector<EdgeLabel> asg, long long good) {
  SearchResult out;
  out.labelling = Labelling{host, std::move(asg)};
  out.good_count = good;
  out.fraction = host.graph.vertex_count() > 0
                     ? static_cast<double>(good) /
                           static_cast<double>(host.graph.vertex_count())
                     : 0.0;
  return out;
}

SearchResult restart_search(const FiberedGraph& host, int R, int budget,
                            std::uint64_t seed, bool propagate) {
  const RootedBall& limit = cached_limit(R).ball;
  std::vector<EdgeLabel> best;
  long long best_good = -1;
  for (int k = 0; k < budget; ++k) {
    Rng rng = named_stream(
        seed, propagate ? "search-propagate" : "search-random",
        static_cast<std::uint64_t>(k));
    std::vector<EdgeLabel> asg =
        propagate ? propagate_labelling(host, rng) : random_labelling(host, rng);
    long long good = count_good(Diagram{host.graph, asg}, R, limit);
    if (good > best_good) {
      best_good = good;
      best = std::move(asg);
    }
  }
  return finish_result(host, std::move(best), best_good);
}

SearchResult anneal_search(const FiberedGraph& host, int R, int budget,
                           std::uint64_t seed) {
  const RootedBall& limit = cached_limit(R).ball;
  Rng init = named_stream(seed, "search-anneal-init");
  std::vector<EdgeLabel> asg = propagate_labelling(host, init);
  Diagram d{host.graph, asg};
  int n = host.graph.vertex_count();
  int m = host.graph.edge_count();

  std::vector<char> ok = half_edge_ok(d);
  auto [good, iotas] = good_scan(d, R, limit, false);
  long long count = 0;
  for (char f : good) count += f;

  Rng rng = named_stream(seed, "search-anneal");
  for (int step = 0; step < budget; ++step) {
    int e = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    EdgeLabel cand = label_option(static_cast<int>(rng.below(5)));
    EdgeLabel old = d.labels[static_cast<std::size_t>(e)];
    if (cand == old) continue;
    const auto& [u, v] = host.graph.edges()[static_cast<std::size_t>(e)];
    char oku = ok[static_cast<std::size_t>(u)];
    char okv = ok[static_cast<std::size_t>(v)];
    d.labels[static_cast<std::size_t>(e)] = cand;
    ok[static_cast<std::size_t>(u)] = vertex_ok(d, u);
    ok[static_cast<std::size_t>(v)] = vertex_ok(d, v);

    std::vector<int> du = bfs_distances(host.graph, u, R);
    std::vector<int> dv = bfs_distances(host.graph, v, R);
    std::vector<std::pair<int, char>> flips;
    long long delta = 0;
    for (int x = 0; x < n; ++x) {
      if (du[static_cast<std::size_t>(x)] < 0 ||
          dv[static_cast<std::size_t>(x)] < 0)
        continue;
      char now = good_at(d, ok, x, R, limit) ? 1 : 0;
      if (now != good[static_cast<std::size_t>(x)]) {
        flips.push_back({x, now});
        delta += now ? 1 : -1;
      }
    }
    if (delta >= 0) {
      for (const auto& [x, now] : flips) good[static_cast<std::size_t>(x)] = now;
      count += delta;
    } else {
      d.labels[static_cast<std::size_t>(e)] = old;
      ok[static_cast<std::size_t>(u)] = oku;
      ok[static_cast<std::size_t>(v)] = okv;
    }
  }
  return finish_result(host, std::move(d.labels), count);
}

}  // namespace

SearchResult labelling_search(const FiberedGraph& host, int R,
                              SearchStrategy strategy, int budget,
                              std::uint64_t seed) {
  if (R < 1) throw UsageError("goodness radius must be at least 1");
  if (budget < 1) throw UsageError("search budget must be positive");
  if (static_cast<int>(host.fiber.size()) != host.graph.vertex_count())
    throw UsageError("labelling host has no usable fiber map");
  if (host.graph.vertex_count() == 0) throw UsageError("empty host");
  switch (strategy) {
    case SearchStrategy::random:
      return restart_search(host, R, budget, seed, false);
    case SearchStrategy::propagate:
      return restart_search(host, R, budget, seed, true);
    default:
      return anneal_search(host, R, budget, seed);
  }
}

TheoremReport theorem1_report(int n, int R, int trials, std::uint64_t seed,
                              int exact_cap,
                              const std::optional<SearchStrategy>& forced) {
  if (R < 4) throw UsageError("orientation argument needs radius at least 4");
  if (trials < 1) throw UsageError("need at least one labelling trial");

  Graph base = random_regular(n, 3, named_stream(seed, "theorem1-base").next());
  FiberedGraph host = product_c4(base);
  Girth base_girth = girth(base);
  MisResult alpha = max_independent_set(base, exact_cap);
  long long alpha_used = alpha.exact ? alpha.size : alpha.upper;

  bool fiber_alpha_ok = true;
  nlohmann::ordered_json fiber_alphas = nlohmann::ordered_json::array();
  for (int i = 0; i < 4; ++i) {
    std::vector<int> verts;
    for (int b = 0; b < n; ++b) verts.push_back(host.vertex_at(b, i));
    auto [fg, ids] = induced_subgraph(host.graph, verts);
    MisResult fa = max_independent_set(fg, exact_cap);
    fiber_alphas.push_back(fa.size);
    fiber_alpha_ok = fiber_alpha_ok && fa.exact == alpha.exact &&
                     fa.size == alpha.size;
  }
  MisResult alpha_global = max_independent_set(host.graph, exact_cap);

  long long nv_base = base.vertex_count();
  long long nv_host = host.graph.vertex_count();
  bool pass = fiber_alpha_ok;
  nlohmann::ordered_json trial_rows = nlohmann::ordered_json::array();
  for (int t = 0; t < trials; ++t) {
    SearchStrategy st = forced ? *forced
                        : t % 3 == 0 ? SearchStrategy::random
                        : t % 3 == 1 ? SearchStrategy::propagate
                                     : SearchStrategy::anneal;
    int budget = st == SearchStrategy::anneal ? 40 : 8;
    std::uint64_t tseed =
        named_stream(seed, "theorem1-trial", static_cast<std::uint64_t>(t))
            .next();
    SearchResult sr = labelling_search(host, R, st, budget, tseed);
    GoodSet good = find_r_good(sr.labelling, R);
    OrientationClass oc = classify_orientations(good, sr.labelling);

    bool fwd_ok = is_independent(host.graph, oc.preserving);
    bool rev_ok = is_independent(host.graph, oc.reversing);
    bool classified_ok =
        oc.preserving.size() + oc.reversing.size() == good.vertices.size();
    bool search_ok =
        sr.good_count == static_cast<long long>(good.vertices.size());

    std::vector<int> cls(static_cast<std::size_t>(nv_host), 0);
    for (int x : oc.preserving) cls[static_cast<std::size_t>(x)] = 1;
    for (int x : oc.reversing) cls[static_cast<std::size_t>(x)] = -1;
    bool adjacent_ok = true;
    for (const auto& [x, y] : host.graph.edges())
      if (cls[static_cast<std::size_t>(x)] != 0 &&
          cls[static_cast<std::size_t>(y)] != 0 &&
          cls[static_cast<std::size_t>(x)] ==
              cls[static_cast<std::size_t>(y)])
        adjacent_ok = false;

    bool cap_ok = true;
    for (int i = 0; i < 4; ++i) {
      long long fwd = 0, rev = 0;
      for (int x : oc.preserving)
        if (host.fiber[static_cast<std::size_t>(x)] == i) ++fwd;
      for (int x : oc.reversing)
        if (host.fiber[static_cast<std::size_t>(x)] == i) ++rev;
      if (fwd > alpha_used || rev > alpha_used) cap_ok = false;
    }

    long long good_count = static_cast<long long>(good.vertices.size());
    bool bound_ok = good_count * nv_base <= 2 * alpha_used * nv_host;
    pass = pass && fwd_ok && rev_ok && classified_ok && search_ok &&
           adjacent_ok && cap_ok && bound_ok;

    nlohmann::ordered_json row;
    row["trial"] = t;
    row["strategy"] = strategy_name(st);
    row["good"] = good_count;
    row["fraction"] = static_cast<double>(good_count) /
                      static_cast<double>(nv_host);
    row["s_fwd"] = oc.preserving.size();
    row["s_rev"] = oc.reversing.size();
    row["s_fwd_independent"] = fwd_ok;
    row["s_rev_independent"] = rev_ok;
    row["adjacent_opposite"] = adjacent_ok;
    row["fiber_cap_ok"] = cap_ok;
    row["bound"] = 2.0 * static_cast<double>(alpha_used) /
                   static_cast<double>(nv_base);
    row["bound_ok"] = bound_ok;
    trial_rows.push_back(std::move(row));
  }

  TheoremReport report;
  report.pass = pass;
  nlohmann::ordered_json& j = report.json;
  j["theorem"] = 1;
  nlohmann::ordered_json inst;
  inst["n"] = n;
  inst["radius"] = R;
  inst["trials"] = trials;
  inst["strategy"] = forced ? strategy_name(*forced) : "cycle";
  inst["seed"] = seed;
  inst["exact_cap"] = exact_cap;
  inst["base_vertices"] = nv_base;
  inst["product_vertices"] = nv_host;
  inst["girth"] = base_girth.value();
  nlohmann::ordered_json aj;
  aj["base"] = alpha.size;
  aj["base_exact"] = alpha.exact;
  aj["base_used"] = alpha_used;
  aj["fibers"] = fiber_alphas;
  aj["fibers_match"] = fiber_alpha_ok;
  aj["global_lower"] = alpha_global.lower;
  aj["global_upper"] = alpha_global.upper;
  aj["global_exact"] = alpha_global.exact;
  inst["alpha"] = std::move(aj);
  inst["epsilon_reference"] = "1/26";
  j["instance"] = std::move(inst);
  j["trials"] = std::move(trial_rows);
  j["pass"] = pass;
  return report;
}

TheoremReport theorem2_report(int n, std::uint64_t seed) {
  if (n < 1) throw UsageError("n must be at least 1");
  BaseBn base =
      random_bipartite_hamiltonian(n, named_stream(seed, "theorem2-base").next());
  KnBundle bundle = build_kn(base);
  std::vector<int> cycle = hamiltonian_cycle_kn(bundle, base);
  int m = 2 * n + 1;
  const Graph& kn = bundle.kn;
  int nv = kn.vertex_count();

  bool vertex_count_ok = nv == 4 * (4 * n + 2);
  bool edge_count_ok = kn.edge_count() == 20 * m;
  bool arc_count_ok = static_cast<int>(bundle.kn_prime.arcs.size()) == 12 * m;
  bool blue_count_ok = static_cast<int>(bundle.blue.size()) == 2 * (4 * n + 2);
  bool yellow_count_ok = static_cast<int>(bundle.yellow.size()) == 4 * m;
  bool five_regular_ok = kn.is_regular(5);

  bool prime_degree_ok = true;
  for (int deg : bundle.kn_prime.out_degrees())
    if (deg != 3) prime_degree_ok = false;
  for (int deg : bundle.kn_prime.in_degrees())
    if (deg != 3) prime_degree_ok = false;

  bool hamiltonian_ok = static_cast<int>(cycle.size()) == nv;
  {
    std::vector<char> seen(static_cast<std::size_t>(nv), 0);
    for (int x : cycle) {
      if (x < 0 || x >= nv || seen[static_cast<std::size_t>(x)])
        hamiltonian_ok = false;
      else
        seen[static_cast<std::size_t>(x)] = 1;
    }
    for (std::size_t i = 0; i < cycle.size() && hamiltonian_ok; ++i)
      if (!kn.has_edge(cycle[i], cycle[(i + 1) % cycle.size()]))
        hamiltonian_ok = false;
  }

  bool alternation_ok =
      static_cast<int>(bundle.cn.size()) == nv && !bundle.cn.empty();
  for (std::size_t i = 0; i < bundle.cn.size() && alternation_ok; ++i) {
    bool blue = std::binary_search(bundle.blue.begin(), bundle.blue.end(),
                                   bundle.cn[i]);
    if (blue != (i % 2 == 1)) alternation_ok = false;
  }

  bool fiber_iso_ok = true;
  for (int f = 0; f < 4; ++f) {
    std::vector<int> to_base;
    Graph fg = fiber_graph(bundle, f, &to_base);
    if (fg.vertex_count() != base.graph.vertex_count() ||
        fg.edge_count() != base.graph.edge_count()) {
      fiber_iso_ok = false;
      continue;
    }
    std::vector<int> sorted = to_base;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < fg.vertex_count(); ++i)
      if (sorted[static_cast<std::size_t>(i)] != i) fiber_iso_ok = false;
    for (const auto& [x, y] : fg.edges())
      if (!base.graph.has_edge(to_base[static_cast<std::size_t>(x)],
                               to_base[static_cast<std::size_t>(y)]))
        fiber_iso_ok = false;
  }

  bool colored_cycles_ok = true;
  {
    std::vector<std::vector<int>> copies(
        static_cast<std::size_t>(base.graph.vertex_count()));
    for (int x = 0; x < nv; ++x)
      copies[static_cast<std::size_t>(bundle.kn_base(x))].push_back(x);
    for (const auto& group : copies) {
      if (group.size() != 4) {
        colored_cycles_ok = false;
        continue;
      }
      for (int x : group) {
        int blue_deg = 0, yellow_deg = 0;
        for (int y : group) {
          int e = kn.edge_index(x, y);
          if (e < 0) continue;
          if (std::binary_search(bundle.blue.begin(), bundle.blue.end(), e))
            ++blue_deg;
          else if (std::binary_search(bundle.yellow.begin(),
                                      bundle.yellow.end(), e))
            ++yellow_deg;
          else
            colored_cycles_ok = false;
        }
        if (blue_deg != 1 || yellow_deg != 1) colored_cycles_ok = false;
      }
    }
  }

  bool independence_ok = true;
  for (int f = 0; f < 4; ++f)
    for (int step : {1, 3})
      if (blue_independence_witness(bundle, f, (f + step) % 4).has_value())
        independence_ok = false;

  bool product_iso_ok = true;
  {
    FiberedGraph product = product_c4(base.graph);
    std::vector<int> phi = kn_to_product_map(bundle);
    std::vector<int> sorted = phi;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < nv; ++i)
      if (sorted[static_cast<std::size_t>(i)] != i) product_iso_ok = false;
    if (product.graph.edge_count() != kn.edge_count()) product_iso_ok = false;
    for (const auto& [x, y] : kn.edges())
      if (!product.graph.has_edge(phi[static_cast<std::size_t>(x)],
                                  phi[static_cast<std::size_t>(y)]))
        product_iso_ok = false;
  }

  MarkedGraph marked;
  marked.graph = kn;
  marked.marked_edges = bundle.cn;
  std::sort(marked.marked_edges.begin(), marked.marked_edges.end());
  MarkedReport mr1 = marked_ball_properties(marked, bundle.fiber, 1);
  MarkedReport mr2 = marked_ball_properties(marked, bundle.fiber, 2);

  bool pass = vertex_count_ok && edge_count_ok && arc_count_ok &&
              blue_count_ok && yellow_count_ok && five_regular_ok &&
              prime_degree_ok && hamiltonian_ok && alternation_ok &&
              fiber_iso_ok && colored_cycles_ok && independence_ok &&
              product_iso_ok && mr1.pass() && mr2.pass();

  TheoremReport report;
  report.pass = pass;
  nlohmann::ordered_json& j = report.json;
  j["theorem"] = 2;
  nlohmann::ordered_json inst;
  inst["n"] = n;
  inst["seed"] = seed;
  inst["girth"] = base.achieved_girth.value();
  inst["base_vertices"] = base.graph.vertex_count();
  inst["vertices"] = nv;
  inst["expected_vertices"] = 4 * (4 * n + 2);
  inst["arcs"] = bundle.kn_prime.arcs.size();
  inst["edges"] = kn.edge_count();
  inst["blue"] = bundle.blue.size();
  inst["yellow"] = bundle.yellow.size();
  j["instance"] = std::move(inst);
  nlohmann::ordered_json checks;
  checks["vertex_count"] = vertex_count_ok;
  checks["edge_count"] = edge_count_ok;
  checks["arc_count"] = arc_count_ok;
  checks["blue_count"] = blue_count_ok;
  checks["yellow_count"] = yellow_count_ok;
  checks["five_regular"] = five_regular_ok;
  checks["prime_degrees"] = prime_degree_ok;
  checks["hamiltonian"] = hamiltonian_ok;
  checks["blue_alternation"] = alternation_ok;
  checks["fiber_isomorphic"] = fiber_iso_ok;
  checks["colored_cycles"] = colored_cycles_ok;
  checks["independence"] = independence_ok;
  checks["product_isomorphic"] = product_iso_ok;
  checks["marked_r1"] = mr1.pass();
  checks["marked_r2"] = mr2.pass();
  j["checks"] = std::move(checks);
  j["pass"] = pass;
  return report;
}

}  // namespace glim
