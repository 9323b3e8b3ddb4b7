#include "glim/census.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "glim/errors.hpp"
#include "glim/json_io.hpp"
#include "glim/parallel.hpp"
#include "glim/rng.hpp"

namespace glim {

void MarkedGraph::validate() const {
  int m = graph.edge_count();
  int prev = -1;
  for (int idx : marked_edges) {
    if (idx < 0 || idx >= m)
      throw UsageError("marked edge index out of range");
    if (idx <= prev)
      throw UsageError("marked edges must be sorted and distinct");
    prev = idx;
  }
}

bool MarkedGraph::is_marked(int edge_idx) const {
  return std::binary_search(marked_edges.begin(), marked_edges.end(),
                            edge_idx);
}

Diagram MarkedGraph::as_diagram() const {
  validate();
  Diagram d;
  d.graph = graph;
  d.labels.resize(static_cast<std::size_t>(graph.edge_count()));
  for (int e = 0; e < graph.edge_count(); ++e)
    d.labels[static_cast<std::size_t>(e)] = {is_marked(e) ? "m" : "p",
                                             EdgeDir::none};
  return d;
}

double BallCensus::frequency(const Code& code) const {
  if (total <= 0) throw UsageError("empty census has no frequencies");
  auto it = counts.find(code);
  return it == counts.end()
             ? 0.0
             : static_cast<double>(it->second) / static_cast<double>(total);
}

namespace {

template <class Src>
BallCensus census_over(const Src& src, const std::vector<int>& roots, int r,
                       bool sampled) {
  if (r < 0) throw UsageError("census radius must be nonnegative");
  BallCensus out;
  out.radius = r;
  out.sampled = sampled;
  std::vector<Code> codes(roots.size());
  CodeCache cache;
  parallel_for(0, static_cast<int>(roots.size()), [&](int i) {
    codes[static_cast<std::size_t>(i)] = cache.code_of(
        extract_ball(src, roots[static_cast<std::size_t>(i)], r));
  });
  for (const Code& code : codes) ++out.counts[code];
  out.total = static_cast<long long>(codes.size());
  return out;
}

std::vector<int> all_roots(int n) {
  std::vector<int> roots(static_cast<std::size_t>(n));
  std::iota(roots.begin(), roots.end(), 0);
  return roots;
}

std::vector<int> sampled_roots(int n, long long samples, std::uint64_t seed) {
  if (n < 1) throw UsageError("cannot sample from an empty graph");
  if (samples < 1) throw UsageError("sample count must be positive");
  Rng rng(named_stream(seed, "census-sample"));
  std::vector<int> roots(static_cast<std::size_t>(samples));
  for (long long k = 0; k < samples; ++k)
    roots[static_cast<std::size_t>(k)] =
        static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  return roots;
}

}  // namespace

BallCensus ball_census(const Graph& g, int r) {
  return census_over(g, all_roots(g.vertex_count()), r, false);
}

BallCensus ball_census(const Diagram& d, int r) {
  d.validate();
  return census_over(d, all_roots(d.graph.vertex_count()), r, false);
}

BallCensus ball_census(const MarkedGraph& k, int r) {
  return ball_census(k.as_diagram(), r);
}

BallCensus ball_census_restricted(const MarkedGraph& k, int r,
                                  const std::vector<int>& roots) {
  for (int v : roots)
    if (v < 0 || v >= k.graph.vertex_count())
      throw UsageError("census root out of range");
  return census_over(k.as_diagram(), roots, r, false);
}

BallCensus ball_census_sampled(const Graph& g, int r, long long samples,
                               std::uint64_t seed) {
  return census_over(g, sampled_roots(g.vertex_count(), samples, seed), r,
                     true);
}

BallCensus ball_census_sampled(const Diagram& d, int r, long long samples,
                               std::uint64_t seed) {
  d.validate();
  return census_over(d, sampled_roots(d.graph.vertex_count(), samples, seed),
                     r, true);
}

BallCensus ball_census_sampled(const MarkedGraph& k, int r, long long samples,
                               std::uint64_t seed) {
  return ball_census_sampled(k.as_diagram(), r, samples, seed);
}

double census_tv_distance(const BallCensus& c1, const BallCensus& c2) {
  if (c1.radius != c2.radius)
    throw UsageError("census radius mismatch");
  if (c1.total <= 0 || c2.total <= 0)
    throw UsageError("empty census has no frequencies");
  double sum = 0.0;
  auto i1 = c1.counts.begin();
  auto i2 = c2.counts.begin();
  while (i1 != c1.counts.end() || i2 != c2.counts.end()) {
    double p1 = 0.0, p2 = 0.0;
    if (i2 == c2.counts.end() ||
        (i1 != c1.counts.end() && i1->first < i2->first)) {
      p1 = static_cast<double>(i1->second) / static_cast<double>(c1.total);
      ++i1;
    } else if (i1 == c1.counts.end() || i2->first < i1->first) {
      p2 = static_cast<double>(i2->second) / static_cast<double>(c2.total);
      ++i2;
    } else {
      p1 = static_cast<double>(i1->second) / static_cast<double>(c1.total);
      p2 = static_cast<double>(i2->second) / static_cast<double>(c2.total);
      ++i1;
      ++i2;
    }
    sum += std::abs(p1 - p2);
  }
  return 0.5 * sum;
}

WilsonInterval wilson_ci(long long count, long long total) {
  if (total <= 0) throw UsageError("wilson_ci: total must be positive");
  if (count < 0 || count > total)
    throw UsageError("wilson_ci: count outside 0..total");
  const double z = 1.959963984540054;
  double n = static_cast<double>(total);
  double p = static_cast<double>(count) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  WilsonInterval ci;
  ci.lo = std::max(0.0, center - half);
  ci.hi = std::min(1.0, center + half);
  return ci;
}

double GoodFraction::fraction() const {
  if (denom <= 0) throw UsageError("good fraction over an empty graph");
  return static_cast<double>(numer) / static_cast<double>(denom);
}

namespace {

template <class Src>
GoodFraction good_fraction_impl(const Src& src, int n,
                                const RootedBall& limit) {
  Code want = canonical_code(limit);
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  CodeCache cache;
  parallel_for(0, n, [&](int v) {
    hit[static_cast<std::size_t>(v)] =
        cache.code_of(extract_ball(src, v, limit.radius)) == want ? 1 : 0;
  });
  GoodFraction out;
  out.denom = n;
  for (int v = 0; v < n; ++v)
    if (hit[static_cast<std::size_t>(v)]) {
      out.good.push_back(v);
      ++out.numer;
    }
  return out;
}

}  // namespace

GoodFraction good_fraction(const Graph& g, const RootedBall& limit) {
  if (limit.labelled())
    throw UsageError("good_fraction: payload kinds differ (plain vs labelled)");
  return good_fraction_impl(g, g.vertex_count(), limit);
}

GoodFraction good_fraction(const Diagram& d, const RootedBall& limit) {
  if (!limit.labelled())
    throw UsageError("good_fraction: payload kinds differ (plain vs labelled)");
  d.validate();
  return good_fraction_impl(d, d.graph.vertex_count(), limit);
}

namespace {

int dsu_find(std::vector<int>& up, int x) {
  while (up[static_cast<std::size_t>(x)] != x) {
    up[static_cast<std::size_t>(x)] =
        up[static_cast<std::size_t>(up[static_cast<std::size_t>(x)])];
    x = up[static_cast<std::size_t>(x)];
  }
  return x;
}

void check_fiber_map(const Graph& g, const std::vector<int>& fiber) {
  if (static_cast<int>(fiber.size()) != g.vertex_count())
    throw UsageError("fiber map length does not match the graph");
  for (int f : fiber)
    if (f < 0 || f > 3) throw UsageError("fiber value outside 0..3");
}

}  // namespace

DerivedBase derive_base(const Graph& g, const std::vector<int>& fiber) {
  check_fiber_map(g, fiber);
  int n = g.vertex_count();
  if (n == 0) throw UsageError("cannot derive a base from an empty graph");
  std::vector<int> up(static_cast<std::size_t>(n));
  std::iota(up.begin(), up.end(), 0);
  for (const auto& [u, v] : g.edges())
    if (fiber[static_cast<std::size_t>(u)] != fiber[static_cast<std::size_t>(v)])
      up[static_cast<std::size_t>(dsu_find(up, u))] = dsu_find(up, v);

  std::vector<int> column(static_cast<std::size_t>(n), -1);
  std::vector<int> order;  // columns by ascending smallest member
  for (int v = 0; v < n; ++v) {
    int r = dsu_find(up, v);
    if (column[static_cast<std::size_t>(r)] < 0) {
      column[static_cast<std::size_t>(r)] = static_cast<int>(order.size());
      order.push_back(r);
    }
  }
  int cols = static_cast<int>(order.size());
  if (n != 4 * cols)
    throw UsageError("fiber map does not describe a C4 product");
  std::vector<int> seen(static_cast<std::size_t>(cols), 0);
  DerivedBase out;
  out.base_of.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    int c = column[static_cast<std::size_t>(dsu_find(up, v))];
    out.base_of[static_cast<std::size_t>(v)] = c;
    seen[static_cast<std::size_t>(c)] |= 1 << fiber[static_cast<std::size_t>(v)];
  }
  for (int c = 0; c < cols; ++c)
    if (seen[static_cast<std::size_t>(c)] != 0xF)
      throw UsageError("fiber map does not describe a C4 product");

  std::vector<Edge> base_edges;
  for (const auto& [u, v] : g.edges()) {
    if (fiber[static_cast<std::size_t>(u)] != fiber[static_cast<std::size_t>(v)])
      continue;
    int bu = out.base_of[static_cast<std::size_t>(u)];
    int bv = out.base_of[static_cast<std::size_t>(v)];
    if (bu == bv)
      throw UsageError("fiber map does not describe a C4 product");
    base_edges.push_back(make_edge(bu, bv));
  }
  std::sort(base_edges.begin(), base_edges.end());
  base_edges.erase(std::unique(base_edges.begin(), base_edges.end()),
                   base_edges.end());
  out.base = Graph(cols, std::move(base_edges));
  return out;
}

std::vector<int> tree_base_vertices(const Graph& g,
                                    const std::vector<int>& fiber, int r) {
  if (r < 0) throw UsageError("radius must be nonnegative");
  DerivedBase db = derive_base(g, fiber);
  std::vector<char> tree(static_cast<std::size_t>(db.base.vertex_count()), 0);
  for (int b = 0; b < db.base.vertex_count(); ++b) {
    RootedBall ball = extract_ball(db.base, b, r);
    tree[static_cast<std::size_t>(b)] =
        ball.graph.edge_count() == ball.graph.vertex_count() - 1 ? 1 : 0;
  }
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (tree[static_cast<std::size_t>(db.base_of[static_cast<std::size_t>(v)])])
      out.push_back(v);
  return out;
}

MarkedReport marked_ball_properties(const MarkedGraph& k,
                                    const std::vector<int>& fiber, int r) {
  k.validate();
  const Graph& g = k.graph;
  check_fiber_map(g, fiber);
  if (r < 0) throw UsageError("radius must be nonnegative");

  int n = g.vertex_count();
  std::vector<int> mdeg(static_cast<std::size_t>(n), 0);
  for (int idx : k.marked_edges) {
    const Edge& e = g.edges()[static_cast<std::size_t>(idx)];
    ++mdeg[static_cast<std::size_t>(e.first)];
    ++mdeg[static_cast<std::size_t>(e.second)];
  }
  for (int v = 0; v < n; ++v)
    if (mdeg[static_cast<std::size_t>(v)] != 2)
      throw UsageError("marks are not a 2-regular spanning subgraph");

  DerivedBase db = derive_base(g, fiber);
  std::vector<char> tree(static_cast<std::size_t>(db.base.vertex_count()), 0);
  for (int b = 0; b < db.base.vertex_count(); ++b) {
    RootedBall ball = extract_ball(db.base, b, r);
    tree[static_cast<std::size_t>(b)] =
        ball.graph.edge_count() == ball.graph.vertex_count() - 1 ? 1 : 0;
  }

  MarkedReport report;
  report.radius = r;
  report.checked_vertices = n;
  for (int v = 0; v < n; ++v) {
    int cross = 0, intra = 0;
    for (int u : g.neighbors(v)) {
      if (!k.is_marked(g.edge_index(v, u))) continue;
      if (fiber[static_cast<std::size_t>(u)] == fiber[static_cast<std::size_t>(v)])
        ++intra;
      else
        ++cross;
    }
    if (cross != 1 || intra != 1)
      report.violations.push_back(
          {v, "alternation",
           "cross=" + std::to_string(cross) + " intra=" + std::to_string(intra)});

    if (!tree[static_cast<std::size_t>(db.base_of[static_cast<std::size_t>(v)])])
      continue;
    ++report.tree_ball_vertices;

    RootedBall ball = extract_ball(g, v, r);
    int bn = ball.graph.vertex_count();
    std::vector<std::vector<int>> madj(static_cast<std::size_t>(bn));
    for (const auto& [x, y] : ball.graph.edges()) {
      int orig = g.edge_index(ball.source[static_cast<std::size_t>(x)],
                              ball.source[static_cast<std::size_t>(y)]);
      if (orig < 0 || !k.is_marked(orig)) continue;
      madj[static_cast<std::size_t>(x)].push_back(y);
      madj[static_cast<std::size_t>(y)].push_back(x);
    }
    std::vector<int> comp;
    std::vector<char> in_comp(static_cast<std::size_t>(bn), 0);
    comp.push_back(0);
    in_comp[0] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (int w : madj[static_cast<std::size_t>(comp[head])])
        if (!in_comp[static_cast<std::size_t>(w)]) {
          in_comp[static_cast<std::size_t>(w)] = 1;
          comp.push_back(w);
        }
    long long comp_edges = 0;
    bool deg_ok = true;
    for (int w : comp) {
      comp_edges += static_cast<long long>(madj[static_cast<std::size_t>(w)].size());
      if (madj[static_cast<std::size_t>(w)].size() > 2) deg_ok = false;
    }
    comp_edges /= 2;
    std::string why;
    if (!deg_ok)
      why = "branching";
    else if (comp_edges != static_cast<long long>(comp.size()) - 1)
      why = "cycle";
    else if (madj[0].size() != 2)
      why = "root not interior";
    else if (static_cast<int>(comp.size()) < 2 * r + 1)
      why = "covers " + std::to_string(comp.size()) + " vertices, needs " +
            std::to_string(2 * r + 1);
    if (!why.empty()) report.violations.push_back({v, "path", why});
  }
  return report;
}

std::string census_to_csv(const BallCensus& c) {
  std::string s = "# glim-census version=1 radius=" +
                  std::to_string(c.radius) + " total=" +
                  std::to_string(c.total) + " sampled=" +
                  (c.sampled ? std::string("1") : std::string("0")) + "\n";
  s += "code,count,frequency\n";
  for (const auto& [code, count] : c.counts) {
    double freq = c.total > 0 ? static_cast<double>(count) /
                                    static_cast<double>(c.total)
                              : 0.0;
    s += code + "," + std::to_string(count) + "," + format_double(freq) + "\n";
  }
  return s;
}

namespace {

[[noreturn]] void bad_csv(const std::string& what) {
  throw IoError("census csv: " + what);
}

long long parse_ll(const std::string& tok, const std::string& what) {
  long long value = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || p != tok.data() + tok.size())
    bad_csv("bad " + what + " '" + tok + "'");
  return value;
}

}  // namespace

BallCensus census_from_csv(const std::string& text) {
  BallCensus out;
  bool have_header = false;
  bool have_columns = false;
  long long sum = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line = text.substr(
        pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() : nl + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# glim-census ", 0) != 0) continue;
      if (have_header) bad_csv("duplicate header");
      have_header = true;
      std::size_t at = std::string("# glim-census ").size();
      int seen = 0;
      while (at < line.size()) {
        std::size_t sp = line.find(' ', at);
        std::string tok = line.substr(
            at, sp == std::string::npos ? std::string::npos : sp - at);
        at = sp == std::string::npos ? line.size() : sp + 1;
        if (tok.empty()) continue;
        std::size_t eq = tok.find('=');
        if (eq == std::string::npos) bad_csv("malformed header token '" + tok + "'");
        std::string key = tok.substr(0, eq);
        std::string val = tok.substr(eq + 1);
        if (key == "version") {
          if (val != "1") bad_csv("unsupported version '" + val + "'");
        } else if (key == "radius") {
          out.radius = static_cast<int>(parse_ll(val, "radius"));
          if (out.radius < 0) bad_csv("negative radius");
        } else if (key == "total") {
          out.total = parse_ll(val, "total");
          if (out.total < 0) bad_csv("negative total");
        } else if (key == "sampled") {
          if (val != "0" && val != "1") bad_csv("bad sampled flag '" + val + "'");
          out.sampled = val == "1";
        } else {
          bad_csv("unknown header key '" + key + "'");
        }
        ++seen;
      }
      if (seen < 4) bad_csv("incomplete header");
      continue;
    }
    if (!have_header) bad_csv("missing header");
    if (!have_columns) {
      if (line != "code,count,frequency") bad_csv("missing column row");
      have_columns = true;
      continue;
    }
    std::size_t c1 = line.find(',');
    std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                             : line.find(',', c1 + 1);
    if (c2 == std::string::npos) bad_csv("row needs three fields");
    std::string code = line.substr(0, c1);
    long long count = parse_ll(line.substr(c1 + 1, c2 - c1 - 1), "count");
    if (code.empty()) bad_csv("empty code");
    if (count < 0) bad_csv("negative count");
    if (!out.counts.emplace(code, count).second) bad_csv("duplicate code");
    sum += count;
  }
  if (!have_header) bad_csv("missing header");
  if (!have_columns) bad_csv("missing column row");
  if (sum != out.total) bad_csv("counts do not add up to total");
  return out;
}

}  // namespace glim
