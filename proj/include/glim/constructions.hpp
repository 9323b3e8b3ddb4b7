#ifndef GLIM_CONSTRUCTIONS_HPP
#define GLIM_CONSTRUCTIONS_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "glim/graph.hpp"

namespace glim {

// Product of a base graph with the 4-cycle. Vertex (b, i) is stored as
// 4b+i, so the coordinate projections are pure arithmetic; `fiber` keeps
// the explicit per-vertex map for serialization. vertical_edges are the
// indices of the edges joining consecutive fibers over one base vertex.
struct FiberedGraph {
  Graph graph;
  std::vector<int> fiber;
  int base_size = 0;
  std::vector<int> vertical_edges;

  int base_of(int v) const { return v / 4; }
  int fiber_of(int v) const { return v % 4; }
  int vertex_at(int base, int i) const { return 4 * base + i; }
};

FiberedGraph product_c4(const Graph& base);

// Configuration-model d-regular graph. Pairings producing a loop or a
// parallel edge are thrown away wholesale and resampled, so accepted
// graphs are uniform among simple ones.
Graph random_regular(int n, int d, std::uint64_t seed, int budget = 10000);

// Cubic bipartite graph with an explicit Hamiltonian cycle. Upper
// vertices are 2i, lower 2i+1 (i = 0..2n); the cycle is 0,1,...,4n+1 in
// order, and the third perfect matching joins 2i to 2*matching[i]+1.
struct BaseBn {
  Graph graph;
  int n = 0;
  std::vector<int> upper;
  std::vector<int> lower;
  std::vector<int> ham;
  std::vector<int> matching;
  Girth achieved_girth = Girth::acyclic();
};

// Samples `attempts` instances (uniform third matching, resampled while
// it collides with the cycle edges) and keeps the one with the largest
// girth.
BaseBn random_bipartite_hamiltonian(int n, std::uint64_t seed,
                                    int attempts = 32, int budget = 10000);

void validate_base_bn(const BaseBn& b);

// Base graph reconstructed from a serialized instance (graph plus ham
// cycle in the encoding above).
BaseBn base_bn_from_parts(Graph graph, std::vector<int> ham);

// The doubled construction over a base instance. kn_prime is the directed
// four-partite lift: class c copies one side of the base (classes 0 and 2
// the upper side, 1 and 3 the lower), vertex id = c*(2n+1) + index within
// the side, and every base edge contributes one arc from each class to the
// next. kn doubles each kn_prime vertex p into bar 2p and hat 2p+1; arcs
// project to bar->hat edges, blue edges join twins, yellow edges join the
// opposite twins two classes apart. Fibers: bar of class c lies in fiber
// c, hat of class c in fiber c-1 (mod 4).
struct KnBundle {
  int n = 0;
  DirectedGraph kn_prime;
  Graph kn;
  std::vector<int> blue;
  std::vector<int> yellow;
  std::vector<int> fiber;
  std::vector<int> twin;
  std::vector<int> cn;  // Hamiltonian cycle as edge indices, empty until filled

  int side_size() const { return 2 * n + 1; }
  int knp_class(int p) const { return p / side_size(); }
  int knp_index(int p) const { return p % side_size(); }
  int knp_base(int p) const;
  int kn_base(int x) const { return knp_base(x / 2); }
};

KnBundle build_kn(const BaseBn& b);

// Fills bundle.cn with the explicit Hamiltonian cycle as an edge index
// sequence (projected arc, blue, projected arc, blue, ...) and returns the
// vertex sequence.
std::vector<int> hamiltonian_cycle_kn(KnBundle& bundle, const BaseBn& b);

// Induced graph of a fiber class; base_map (when asked for) gives the base
// vertex of each local vertex, which is the isomorphism onto the base.
Graph fiber_graph(const KnBundle& bundle, int f,
                  std::vector<int>* base_map = nullptr);

// Endpoints in f_from of blue edges into the adjacent fiber f_to, checked
// for pairwise independence; returns a violating edge if one exists.
std::optional<Edge> blue_independence_witness(const KnBundle& bundle,
                                              int f_from, int f_to);

// kn vertex -> product_c4(base).graph vertex under the base/fiber
// coordinates; an isomorphism witness between the two constructions.
std::vector<int> kn_to_product_map(const KnBundle& bundle);

}  // namespace glim

#endif
