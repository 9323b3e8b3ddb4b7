// Command line front end. Every verb reads/writes file artifacts and is a
// pure function of (verb, flags, seed); see the README for the format notes.

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "glim/cayley.hpp"
#include "glim/census.hpp"
#include "glim/constructions.hpp"
#include "glim/errors.hpp"
#include "glim/graph.hpp"
#include "glim/json_io.hpp"
#include "glim/mis.hpp"
#include "glim/obstruction.hpp"
#include "glim/parallel.hpp"

using namespace glim;

namespace {

struct Opts {
  int n = 0;
  int d = 0;
  int radius = 0;
  std::uint64_t seed = 0;
  int attempts = 32;
  long long samples = 0;
  int t1_radius = 4;
  int t1_trials = 12;
  std::string strategy;
  int budget = 10000;
  int exact_cap = 150;
  int threads = 0;
  std::string payload = "auto";
  std::string in_path;
  std::string in2_path;
  std::string out_path;
};

void apply_threads(int threads) {
  if (threads == 0) return;
  set_worker_cap(threads);
}

std::uint64_t env_seed() {
  const char* env = std::getenv("GLIM_SEED");
  if (env == nullptr || *env == '\0')
    throw UsageError("a seed is required (pass --seed or set GLIM_SEED)");
  std::string s(env);
  if (s.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("GLIM_SEED must be a nonnegative integer");
  errno = 0;
  unsigned long long v = std::strtoull(s.c_str(), nullptr, 10);
  if (errno == ERANGE) throw UsageError("GLIM_SEED is out of range");
  return static_cast<std::uint64_t>(v);
}

std::uint64_t resolve_seed(bool given, std::uint64_t flag_value) {
  return given ? flag_value : env_seed();
}

void require_out(const std::string& path, const std::string& verb) {
  if (path.empty()) throw UsageError(verb + " needs --out");
}

MarkedGraph marked_of(const GraphFile& gf) {
  MarkedGraph k;
  k.graph = gf.graph;
  const std::vector<bool>& m = *gf.marks;
  for (int i = 0; i < static_cast<int>(m.size()); ++i)
    if (m[static_cast<std::size_t>(i)]) k.marked_edges.push_back(i);
  k.validate();
  return k;
}

int run_gen_rr(const Opts& o, bool seed_given) {
  std::uint64_t seed = resolve_seed(seed_given, o.seed);
  Graph g = random_regular(o.n, o.d, seed, o.budget);
  require_out(o.out_path, "gen-rr");
  GraphFile gf;
  gf.graph = g;
  write_graph_file(o.out_path, gf);
  std::cout << "gen-rr: n=" << o.n << " d=" << o.d
            << " girth=" << girth(g).str() << " -> " << o.out_path << "\n";
  return 0;
}

int run_gen_bipham(const Opts& o, bool seed_given) {
  std::uint64_t seed = resolve_seed(seed_given, o.seed);
  BaseBn b = random_bipartite_hamiltonian(o.n, seed, o.attempts, o.budget);
  require_out(o.out_path, "gen-bipham");
  GraphFile gf;
  gf.graph = b.graph;
  gf.ham_cycle = b.ham;
  write_graph_file(o.out_path, gf);
  std::cout << "gen-bipham: n=" << o.n
            << " vertices=" << b.graph.vertex_count()
            << " girth=" << b.achieved_girth.str() << " -> " << o.out_path
            << "\n";
  return 0;
}

int run_build_product(const Opts& o) {
  GraphFile gf = read_graph_file(o.in_path);
  FiberedGraph fg = product_c4(gf.graph);
  GraphFile out_gf;
  out_gf.graph = fg.graph;
  out_gf.fibers = fg.fiber;
  write_graph_file(o.out_path, out_gf);
  std::cout << "build-product: " << gf.graph.vertex_count() << " -> "
            << fg.graph.vertex_count() << " vertices -> " << o.out_path
            << "\n";
  return 0;
}

int run_build_kn(const Opts& o) {
  GraphFile gf = read_graph_file(o.in_path);
  if (!gf.ham_cycle)
    throw UsageError("build-kn input has no ham_cycle field");
  BaseBn b = base_bn_from_parts(gf.graph, *gf.ham_cycle);
  KnBundle bundle = build_kn(b);
  std::vector<int> cycle = hamiltonian_cycle_kn(bundle, b);

  GraphFile out_gf;
  out_gf.graph = bundle.kn;
  out_gf.fibers = bundle.fiber;
  std::vector<EdgeLabel> labels(
      static_cast<std::size_t>(bundle.kn.edge_count()),
      EdgeLabel{"plain", EdgeDir::none});
  for (int e : bundle.blue)
    labels[static_cast<std::size_t>(e)].label = "blue";
  for (int e : bundle.yellow)
    labels[static_cast<std::size_t>(e)].label = "yellow";
  out_gf.labels = std::move(labels);
  std::vector<bool> marks(static_cast<std::size_t>(bundle.kn.edge_count()),
                          false);
  for (int e : bundle.cn) marks[static_cast<std::size_t>(e)] = true;
  out_gf.marks = std::move(marks);
  out_gf.ham_cycle = cycle;
  write_graph_file(o.out_path, out_gf);

  std::string prime_path = o.out_path + ".kn-prime.json";
  write_digraph_file(prime_path, bundle.kn_prime);
  std::cout << "build-kn: n=" << bundle.n
            << " vertices=" << bundle.kn.vertex_count() << " -> " << o.out_path
            << " (+ " << prime_path << ")\n";
  return 0;
}

// Which view of a graph file a census runs over. "auto" prefers marks,
// then labels, then the plain graph.
std::string pick_payload(const GraphFile& gf, const std::string& asked,
                         bool allow_marks) {
  bool labelled = gf.labels.has_value();
  bool marked = allow_marks && gf.marks.has_value();
  if (asked == "auto") return marked ? "marks" : labelled ? "labels" : "plain";
  if (asked == "marks" && !allow_marks)
    throw UsageError("marks payload is not supported here");
  if (asked == "labels" && !labelled)
    throw UsageError("input file has no labels");
  if (asked == "marks" && !gf.marks.has_value())
    throw UsageError("input file has no marks");
  return asked;
}

int run_ball_census(const Opts& o, bool seed_given, bool samples_given) {
  GraphFile gf = read_graph_file(o.in_path);
  std::string payload = pick_payload(gf, o.payload, true);

  BallCensus c;
  if (samples_given) {
    std::uint64_t seed = resolve_seed(seed_given, o.seed);
    if (payload == "labels")
      c = ball_census_sampled(gf.as_diagram(), o.radius, o.samples, seed);
    else if (payload == "marks")
      c = ball_census_sampled(marked_of(gf), o.radius, o.samples, seed);
    else
      c = ball_census_sampled(gf.graph, o.radius, o.samples, seed);
  } else {
    if (payload == "labels")
      c = ball_census(gf.as_diagram(), o.radius);
    else if (payload == "marks")
      c = ball_census(marked_of(gf), o.radius);
    else
      c = ball_census(gf.graph, o.radius);
  }

  write_text_file(o.out_path, census_to_csv(c));
  std::cout << "ball-census: radius=" << c.radius
            << " codes=" << c.counts.size() << " total=" << c.total << " -> "
            << o.out_path << "\n";
  if (c.sampled) {
    for (const auto& entry : c.counts) {
      WilsonInterval w = wilson_ci(entry.second, c.total);
      std::cout << entry.second << "/" << c.total << " ["
                << format_double(w.lo) << ", " << format_double(w.hi) << "] "
                << entry.first << "\n";
    }
  }
  return 0;
}

int run_census_distance(const Opts& o) {
  BallCensus a = census_from_csv(read_text_file(o.in_path));
  BallCensus b = census_from_csv(read_text_file(o.in2_path));
  std::cout << format_double(census_tv_distance(a, b)) << "\n";
  return 0;
}

int run_good_frac(const Opts& o) {
  GraphFile gf = read_graph_file(o.in_path);
  std::string payload = pick_payload(gf, o.payload, false);
  GoodFraction fr =
      payload == "labels"
          ? good_fraction(gf.as_diagram(), limit_ball(o.radius, BallMode::diagram))
          : good_fraction(gf.graph, limit_ball(o.radius, BallMode::graph));
  std::cout << fr.numer << "/" << fr.denom << " = "
            << format_double(fr.fraction()) << "\n";
  return 0;
}

int run_girth(const Opts& o) {
  GraphFile gf = read_graph_file(o.in_path);
  std::cout << girth(gf.graph).str() << "\n";
  return 0;
}

int run_mis(const Opts& o) {
  GraphFile gf = read_graph_file(o.in_path);
  MisResult r = max_independent_set(gf.graph, o.exact_cap);
  nlohmann::ordered_json j;
  j["size"] = r.size;
  j["exact"] = r.exact;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["witness"] = r.witness;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_limit_ball(const Opts& o) {
  LimitBall lb = limit_ball_detail(o.radius);
  GraphFile gf;
  gf.graph = lb.ball.graph;
  gf.labels = lb.ball.labels;
  gf.fibers = lb.fiber;
  write_graph_file(o.out_path, gf);
  std::cout << "limit-ball: radius=" << o.radius
            << " vertices=" << lb.ball.graph.vertex_count() << " -> "
            << o.out_path << "\n";
  return 0;
}

int run_check_relators(const Opts& o) {
  GraphFile gf = read_graph_file(o.in_path);
  if (!gf.labels) throw UsageError("check-relators input has no labels");
  RelatorReport rep = check_relators(gf.as_diagram(), group_presentation());
  for (const RelatorTally& t : rep.tallies)
    std::cout << t.relator << ": closed=" << t.closed
              << " violated=" << t.violated << " truncated=" << t.truncated
              << "\n";
  std::cout << "injectivity violations: " << rep.injectivity_violations
            << "\n";
  return rep.ok() ? 0 : 3;
}

int emit_report(const TheoremReport& rep, const std::string& out,
                const std::string& verb) {
  if (out.empty()) {
    std::cout << rep.json.dump(2) << "\n";
  } else {
    write_json_file(out, rep.json);
    std::cout << verb << ": pass=" << (rep.pass ? "true" : "false") << " -> "
              << out << "\n";
  }
  return rep.pass ? 0 : 3;
}

int run_theorem1(const Opts& o, bool seed_given) {
  std::uint64_t seed = resolve_seed(seed_given, o.seed);
  std::optional<SearchStrategy> forced;
  if (!o.strategy.empty()) forced = parse_strategy(o.strategy);
  TheoremReport rep =
      theorem1_report(o.n, o.t1_radius, o.t1_trials, seed, o.exact_cap, forced);
  return emit_report(rep, o.out_path, "theorem1");
}

int run_theorem2(const Opts& o, bool seed_given) {
  std::uint64_t seed = resolve_seed(seed_given, o.seed);
  TheoremReport rep = theorem2_report(o.n, seed);
  return emit_report(rep, o.out_path, "theorem2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph limits toolkit: generators, ball censuses, validators"};
  app.require_subcommand(1);

  Opts o;
  int rc = 0;

  {
    auto* sc = app.add_subcommand("gen-rr", "sample a random d-regular graph");
    sc->add_option("--n", o.n, "vertex count")->required();
    sc->add_option("--d", o.d, "degree")->required();
    auto* seed_opt = sc->add_option("--seed", o.seed, "rng seed");
    sc->add_option("--budget", o.budget, "resampling budget");
    sc->add_option("--out", o.out_path, "output graph json");
    sc->add_option("--threads", o.threads, "worker cap");
    sc->callback([&o, &rc, seed_opt] {
      apply_threads(o.threads);
      rc = run_gen_rr(o, seed_opt->count() > 0);
    });
  }
  {
    auto* sc = app.add_subcommand(
        "gen-bipham", "sample a cubic bipartite graph with a Hamiltonian cycle");
    sc->add_option("--n", o.n, "half the cycle length is 2n+1")->required();
    auto* seed_opt = sc->add_option("--seed", o.seed, "rng seed");
    sc->add_option("--trials", o.attempts, "instances sampled, best girth kept");
    sc->add_option("--budget", o.budget, "resampling budget per instance");
    sc->add_option("--out", o.out_path, "output graph json");
    sc->add_option("--threads", o.threads, "worker cap");
    sc->callback([&o, &rc, seed_opt] {
      apply_threads(o.threads);
      rc = run_gen_bipham(o, seed_opt->count() > 0);
    });
  }
  {
    auto* sc = app.add_subcommand("build-product",
                                  "product of a base graph with the 4-cycle");
    sc->add_option("--in", o.in_path, "base graph json")->required();
    sc->add_option("--out", o.out_path, "output graph json")->required();
    sc->add_option("--threads", o.threads, "worker cap");
    sc->callback([&o, &rc] {
      apply_threads(o.threads);
      rc = run_build_product(o);
    });
  }
  {
    auto* sc = app.add_subcommand(
        "build-kn", "doubled construction over a gen-bipham instance");
    sc->add_option("--in", o.in_path, "gen-bipham graph json")->required();
    sc->add_option("--out", o.out_path, "output graph json")->required();
    sc->add_option("--threads", o.threads, "worker cap");
    sc->callback([&o, &rc] {
      apply_threads(o.threads);
      rc = run_build_kn(o);
    });
  }
  {
    auto* sc = app.add_subcommand("ball-census",
                                  "rooted ball census of a graph file");
    sc->add_option("--in", o.in_path, "graph json")->required();
    sc->add_option("--radius", o.radius, "ball radius")->required();
    sc->add_option("--payload", o.payload,
                   "census view: auto, plain, labels, marks")
        ->check(CLI::IsMember({"auto", "plain", "labels", "marks"}));
    auto* samples_opt =
        sc->add_option("--trials", o.samples, "sample roots instead of all");
    auto* seed_opt = sc->add_option("--seed", o.seed, "rng seed for sampling");
    sc->add_option("--out", o.out_path, "output census csv")->required();
    sc->add_option("--threads", o.threads, "worker cap");
    sc->callback([&o, &rc, seed_opt, samples_opt] {
      apply_threads(o.threads);
      rc = run_ball_census(o, seed_opt->count() > 0, samples_opt->count() > 0);
    });
  }
  {
    auto* sc = app.add_subcommand("census-distance",
                                  "total variation distance of two censuses");
    sc->add_option("first", o.in_path, "census csv")->required();
    sc->add_option("second", o.in2_path, "census csv")->required();
    sc->callback([&o, &rc] { rc = run_census_distance(o); });
  }
  {
    auto* sc = app.add_subcommand(
        "good-frac", "fraction of vertices matching the limit ball");
    sc->add_option("--in", o.in_path, "graph json")->required();
    sc->add_option("--radius", o.radius, "ball radius")->required();
    sc->add_option("--payload", o.payload, "view: auto, plain, labels")
        ->check(CLI::IsMember({"auto", "plain", "labels"}));
    sc->add_option("--threads", o.threads, "worker cap");
    sc->callback([&o, &rc] {
      apply_threads(o.threads);
      rc = run_good_frac(o);
    });
  }
  {
    auto* sc = app.add_subcommand("girth", "girth of a graph file");
    sc->add_option("--in", o.in_path, "graph json")->required();
    sc->callback([&o, &rc] { rc = run_girth(o); });
  }
  {
    auto* sc = app.add_subcommand("mis", "maximum independent set size");
    sc->add_option("--in", o.in_path, "graph json")->required();
    sc->add_option("--exact-cap", o.exact_cap,
                   "largest vertex count solved exactly");
    sc->callback([&o, &rc] { rc = run_mis(o); });
  }
  {
    auto* sc = app.add_subcommand("limit-ball",
                                  "labelled ball of the limit object");
    sc->add_option("--radius", o.radius, "ball radius")->required();
    sc->add_option("--out", o.out_path, "output graph json")->required();
    sc->callback([&o, &rc] { rc = run_limit_ball(o); });
  }
  {
    auto* sc = app.add_subcommand("check-relators",
                                  "trace group relators over a labelled file");
    sc->add_option("--in", o.in_path, "labelled graph json")->required();
    sc->callback([&o, &rc] { rc = run_check_relators(o); });
  }
  {
    auto* sc = app.add_subcommand(
        "theorem1", "labelling obstruction report on a random product");
    sc->add_option("--n", o.n, "base vertex count")->required();
    sc->add_option("--radius", o.t1_radius, "goodness radius");
    sc->add_option("--trials", o.t1_trials, "labelling search trials");
    auto* seed_opt = sc->add_option("--seed", o.seed, "rng seed");
    sc->add_option("--exact-cap", o.exact_cap,
                   "largest vertex count solved exactly");
    sc->add_option("--strategy", o.strategy,
                   "force one search strategy: random, propagate, anneal");
    sc->add_option("--out", o.out_path, "report json, stdout when absent");
    sc->add_option("--threads", o.threads, "worker cap");
    sc->callback([&o, &rc, seed_opt] {
      apply_threads(o.threads);
      rc = run_theorem1(o, seed_opt->count() > 0);
    });
  }
  {
    auto* sc = app.add_subcommand(
        "theorem2", "doubled construction report with all structure checks");
    sc->add_option("--n", o.n, "instance size parameter")->required();
    auto* seed_opt = sc->add_option("--seed", o.seed, "rng seed");
    sc->add_option("--out", o.out_path, "report json, stdout when absent");
    sc->add_option("--threads", o.threads, "worker cap");
    sc->callback([&o, &rc, seed_opt] {
      apply_threads(o.threads);
      rc = run_theorem2(o, seed_opt->count() > 0);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const AssertionError& e) {
    std::cerr << "assertion failure: " << e.what() << "\n";
    return 3;
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}
