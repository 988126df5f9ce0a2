#pragma once

#include <span>

#include "gfq.hpp"
#include "tableau.hpp"

// Weighted qudit graph states: stabilizer states whose tableau is
// [identity | adjacency]. Entropy of a vertex subset A is the Z_q rank of
// the off-diagonal adjacency block between A and its complement, so large
// graphs stay cheap as long as regions are small. Z measurement deletes the
// measured vertex's edges; X measurement has no weighted-graph rewrite rule
// here and must go through the tableau engine.

namespace mipt {

class WeightedGraph {
 public:
  WeightedGraph(size_t n_vertices, uint32_t q);

  size_t n_vertices() const { return n_; }
  uint32_t q() const { return q_; }

  uint32_t weight(size_t u, size_t v) const { return adj_.at(u, v); }
  // Sets w_uv = w_vu = w (mod q); u == v is rejected.
  void set_weight(size_t u, size_t v, uint32_t w);

  const FpMatrix& adjacency() const { return adj_; }

 private:
  size_t n_;
  uint32_t q_;
  FpMatrix adj_;
};

// rank_q of the block A x complement(A), in dits.
size_t graph_entropy(const WeightedGraph& g, std::span<const size_t> region);

// Z-basis measurement of vertex v: removes its incident edges.
WeightedGraph z_measure_graph(const WeightedGraph& g, size_t v);

// Stabilizer generators P_n = X_n prod_m Z_m^{w_mn}.
StabilizerTableau to_tableau(const WeightedGraph& g);

}  // namespace mipt
