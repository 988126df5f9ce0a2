#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lattice.hpp"

using namespace mipt;

namespace {

std::set<std::pair<size_t, size_t>> edge_set(const WeightedGraph& g) {
  std::set<std::pair<size_t, size_t>> e;
  for (size_t u = 0; u < g.n_vertices(); ++u)
    for (size_t v = u + 1; v < g.n_vertices(); ++v)
      if (g.weight(u, v)) e.insert({u, v});
  return e;
}

}  // namespace

TEST_CASE("lattice spec validation") {
  CHECK_THROWS(LatticeSpec{3, 4}.validate());
  CHECK_THROWS(LatticeSpec{5, 4}.validate());
  CHECK_THROWS(LatticeSpec{4, 1}.validate());
  CHECK_NOTHROW(LatticeSpec{4, 2}.validate());
  CHECK_THROWS(CliffordCircuitSpec{0, 0.5}.validate());
  CHECK_THROWS(CliffordCircuitSpec{1, 1.5}.validate());
}

TEST_CASE("graph-state geometry: Lx=4, Ly=2 PBC has 12 edges") {
  const auto g = build_graph_state({4, 2}, 2, 1, 0);
  CHECK(edge_set(g).size() == 12);

  // Independent enumeration: horizontal ring edges per row + vertical.
  const LatticeSpec spec{4, 2};
  std::set<std::pair<size_t, size_t>> expect;
  for (size_t y = 0; y < 2; ++y)
    for (size_t x = 0; x < 4; ++x) {
      const size_t u = spec.index(x, y), h = spec.index((x + 1) % 4, y);
      expect.insert({std::min(u, h), std::max(u, h)});
      if (y + 1 < 2) expect.insert({u, spec.index(x, y + 1)});
    }
  CHECK(edge_set(g) == expect);
}

TEST_CASE("graph-state weights: q = 2 all ones, q > 2 in [1, q-1]") {
  const auto g2 = build_graph_state({6, 3}, 2, 9, 0);
  for (auto [u, v] : edge_set(g2)) CHECK(g2.weight(u, v) == 1);
  const auto g7 = build_graph_state({6, 3}, 7, 9, 0);
  bool nontrivial = false;
  for (auto [u, v] : edge_set(g7)) {
    CHECK(g7.weight(u, v) >= 1);
    CHECK(g7.weight(u, v) <= 6);
    nontrivial |= g7.weight(u, v) > 1;
  }
  CHECK(nontrivial);
}

TEST_CASE("clifford layers are vertex-disjoint matchings") {
  const LatticeSpec spec{8, 5};
  for (int layer = 1; layer <= 4; ++layer) {
    std::set<size_t> seen;
    for (const auto& b : clifford_layer_bonds(spec, layer)) {
      CHECK(seen.insert(b.u).second);
      CHECK(seen.insert(b.v).second);
    }
  }
  CHECK_THROWS(clifford_layer_bonds(spec, 0));
  CHECK_THROWS(clifford_layer_bonds(spec, 5));
}

TEST_CASE("union of 4 layers covers every lattice edge exactly once") {
  for (const LatticeSpec spec : {LatticeSpec{4, 4}, LatticeSpec{8, 3}}) {
    std::set<std::pair<size_t, size_t>> covered;
    size_t total = 0;
    for (int layer = 1; layer <= 4; ++layer)
      for (const auto& b : clifford_layer_bonds(spec, layer)) {
        covered.insert({std::min(b.u, b.v), std::max(b.u, b.v)});
        ++total;
      }
    CHECK(total == covered.size());  // no edge in two layers
    CHECK(covered == edge_set(build_graph_state(spec, 2, 3, 0)));
  }
}

TEST_CASE("Lx=4, Ly=4 layer 3 has 8 horizontal bonds") {
  CHECK(clifford_layer_bonds({4, 4}, 3).size() == 8);
}

TEST_CASE("p_gate = 0 leaves the tableau unchanged") {
  const LatticeSpec spec{4, 2};
  StabilizerTableau t(2, spec.n_sites());
  apply_shallow_clifford(t, spec, {1, 0.0}, 5, 0);
  CHECK(t == StabilizerTableau(2, spec.n_sites()));
}

TEST_CASE("fixed seed gives a bit-identical tableau") {
  const LatticeSpec spec{6, 3};
  StabilizerTableau a(2, spec.n_sites()), b(2, spec.n_sites());
  apply_shallow_clifford(a, spec, {2, 0.7}, 42, 3);
  apply_shallow_clifford(b, spec, {2, 0.7}, 42, 3);
  CHECK(a == b);
  StabilizerTableau c(2, spec.n_sites());
  apply_shallow_clifford(c, spec, {2, 0.7}, 42, 4);
  CHECK_FALSE(c == a);
}

TEST_CASE("p_gate = 1, t = 1: boundary entropy obeys an area law") {
  // Depth-1 light cone: after measuring all bulk rows in Z, a contiguous
  // top-row interval can only be entangled across its two endpoints.
  const LatticeSpec spec{12, 4};
  StabilizerTableau t(2, spec.n_sites());
  apply_shallow_clifford(t, spec, {1, 1.0}, 11, 0);
  for (size_t y = 0; y + 1 < spec.l_y; ++y)
    for (size_t x = 0; x < spec.l_x; ++x) t.measure({spec.index(x, y), 0, 1});
  const size_t top = spec.l_y - 1;
  for (size_t la = 2; la <= 6; ++la) {
    std::vector<size_t> region;
    for (size_t x = 0; x < la; ++x) region.push_back(spec.index(x, top));
    CHECK(t.entropy(region) <= 4);  // O(1), independent of la
  }
}

TEST_CASE("gate placement matches Bernoulli(p_gate) marginals") {
  const CliffordCircuitSpec cs{1, 0.3};
  size_t on = 0;
  const size_t trials = 20000;
  for (size_t k = 0; k < trials; ++k)
    on += gate_present(cs, 7, k, 0, 1, 0);
  const double frac = static_cast<double>(on) / trials;
  CHECK(frac > 0.28);
  CHECK(frac < 0.32);
}
