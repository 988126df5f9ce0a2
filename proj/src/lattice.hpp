#pragma once

#include <cstdint>
#include <vector>

#include "graph_state.hpp"
#include "tableau.hpp"

// Lx x Ly rectangular lattice, periodic in x, open in y. Vertex index
// (x, y) -> y * Lx + x. Graph-model circuits are one layer of CP gates on
// every edge; Clifford-model circuits are t steps of four vertex-disjoint
// gate layers (vertical even/odd y, then horizontal even/odd x), each bond
// active with probability p_gate.

namespace mipt {

struct LatticeSpec {
  size_t l_x;
  size_t l_y;
  bool periodic_x = true;

  size_t n_sites() const { return l_x * l_y; }
  size_t index(size_t x, size_t y) const { return y * l_x + x; }
  void validate() const;  // l_x >= 4 and even, l_y >= 2
};

struct CliffordCircuitSpec {
  size_t t;       // steps; each step is 4 layers
  double p_gate;  // per-bond gate probability
  void validate() const;
};

struct Bond {
  size_t u;
  size_t v;
  bool operator==(const Bond&) const = default;
};

// Cluster-state graph: every lattice edge, weight 1 for q = 2, otherwise a
// seed-keyed uniform weight in [1, q-1].
WeightedGraph build_graph_state(const LatticeSpec& spec, uint32_t q,
                                uint64_t seed, uint64_t trajectory);

// Vertex-disjoint bond layer, layer in 1..4. Layers 1/2: vertical bonds
// (y, y+1) with y even/odd; layers 3/4: horizontal bonds (x, x+1) with x
// even/odd (x+1 mod Lx when periodic).
std::vector<Bond> clifford_layer_bonds(const LatticeSpec& spec, int layer);

// Whether the diluted circuit places a gate on `bond_idx` of `layer` in
// `step`, and which Sp(4,2) element it is. Both streaming and full drivers
// call these, so gate content is independent of evaluation order.
bool gate_present(const CliffordCircuitSpec& cspec, uint64_t seed,
                  uint64_t trajectory, size_t step, int layer,
                  size_t bond_idx);
SymplecticGate gate_at(uint64_t seed, uint64_t trajectory, size_t step,
                       int layer, size_t bond_idx);

// Full-lattice reference evolution: all t steps on the complete tableau.
void apply_shallow_clifford(StabilizerTableau& t, const LatticeSpec& spec,
                            const CliffordCircuitSpec& cspec, uint64_t seed,
                            uint64_t trajectory);

}  // namespace mipt
