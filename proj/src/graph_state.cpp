#include "graph_state.hpp"

#include <stdexcept>
#include <vector>

namespace mipt {

WeightedGraph::WeightedGraph(size_t n_vertices, uint32_t q)
    : n_(n_vertices), q_(q), adj_(n_vertices, n_vertices, q) {}

void WeightedGraph::set_weight(size_t u, size_t v, uint32_t w) {
  if (u == v) throw std::invalid_argument("set_weight: self-loop");
  adj_.set(u, v, w);
  adj_.set(v, u, w);
}

size_t graph_entropy(const WeightedGraph& g, std::span<const size_t> region) {
  const size_t n = g.n_vertices();
  std::vector<char> in_a(n, 0);
  for (size_t v : region) in_a[v] = 1;
  std::vector<size_t> comp;
  comp.reserve(n - region.size());
  for (size_t v = 0; v < n; ++v)
    if (!in_a[v]) comp.push_back(v);
  FpMatrix block(region.size(), comp.size(), g.q());
  for (size_t r = 0; r < region.size(); ++r)
    for (size_t c = 0; c < comp.size(); ++c)
      block.set(r, c, g.weight(region[r], comp[c]));
  return rank_fp(block);
}

WeightedGraph z_measure_graph(const WeightedGraph& g, size_t v) {
  if (v >= g.n_vertices()) throw std::out_of_range("z_measure_graph: vertex");
  WeightedGraph out = g;
  for (size_t u = 0; u < g.n_vertices(); ++u)
    if (u != v) out.set_weight(u, v, 0);
  return out;
}

StabilizerTableau to_tableau(const WeightedGraph& g) {
  const size_t n = g.n_vertices();
  StabilizerTableau t(g.q(), n);
  for (size_t r = 0; r < n; ++r)
    for (size_t s = 0; s < n; ++s)
      if (g.weight(s, r)) t.set_z(r, s, g.weight(s, r));
  return t;
}

}  // namespace mipt
