#include "lattice.hpp"

#include <stdexcept>

#include "rng.hpp"

namespace mipt {

void LatticeSpec::validate() const {
  if (l_x < 4 || l_x % 2 != 0)
    throw std::invalid_argument("LatticeSpec: l_x must be even and >= 4");
  if (l_y < 2) throw std::invalid_argument("LatticeSpec: l_y must be >= 2");
}

void CliffordCircuitSpec::validate() const {
  if (t < 1) throw std::invalid_argument("CliffordCircuitSpec: t must be >= 1");
  if (p_gate < 0.0 || p_gate > 1.0)
    throw std::invalid_argument("CliffordCircuitSpec: p_gate out of [0,1]");
}

WeightedGraph build_graph_state(const LatticeSpec& spec, uint32_t q,
                                uint64_t seed, uint64_t trajectory) {
  spec.validate();
  WeightedGraph g(spec.n_sites(), q);
  auto edge_weight = [&](size_t u, size_t v) {
    if (q == 2) return 1u;
    const size_t a = std::min(u, v), b = std::max(u, v);
    return static_cast<uint32_t>(
        1 + rng::below(q - 1, seed, rng::kEdgeWeight, trajectory, a, b));
  };
  for (size_t y = 0; y < spec.l_y; ++y)
    for (size_t x = 0; x < spec.l_x; ++x) {
      const size_t u = spec.index(x, y);
      if (x + 1 < spec.l_x)
        g.set_weight(u, spec.index(x + 1, y), edge_weight(u, spec.index(x + 1, y)));
      else if (spec.periodic_x)
        g.set_weight(u, spec.index(0, y), edge_weight(u, spec.index(0, y)));
      if (y + 1 < spec.l_y)
        g.set_weight(u, spec.index(x, y + 1), edge_weight(u, spec.index(x, y + 1)));
    }
  return g;
}

std::vector<Bond> clifford_layer_bonds(const LatticeSpec& spec, int layer) {
  spec.validate();
  std::vector<Bond> bonds;
  switch (layer) {
    case 1:
    case 2: {
      // Vertical (y, y+1), y parity = layer parity's offset.
      const size_t off = (layer == 1) ? 0 : 1;
      for (size_t y = off; y + 1 < spec.l_y; y += 2)
        for (size_t x = 0; x < spec.l_x; ++x)
          bonds.push_back({spec.index(x, y), spec.index(x, y + 1)});
      break;
    }
    case 3:
    case 4: {
      const size_t off = (layer == 3) ? 0 : 1;
      for (size_t y = 0; y < spec.l_y; ++y)
        for (size_t x = off; x < spec.l_x; x += 2) {
          const size_t xn = x + 1;
          if (xn < spec.l_x)
            bonds.push_back({spec.index(x, y), spec.index(xn, y)});
          else if (spec.periodic_x)
            bonds.push_back({spec.index(x, y), spec.index(0, y)});
        }
      break;
    }
    default:
      throw std::invalid_argument("clifford_layer_bonds: layer must be 1..4");
  }
  return bonds;
}

bool gate_present(const CliffordCircuitSpec& cspec, uint64_t seed,
                  uint64_t trajectory, size_t step, int layer,
                  size_t bond_idx) {
  if (cspec.p_gate >= 1.0) return true;
  if (cspec.p_gate <= 0.0) return false;
  return rng::unit(seed, rng::kGateOn, trajectory, step,
                   static_cast<uint64_t>(layer), bond_idx) < cspec.p_gate;
}

SymplecticGate gate_at(uint64_t seed, uint64_t trajectory, size_t step,
                       int layer, size_t bond_idx) {
  return sample_two_qubit_clifford(seed, trajectory, step,
                                   static_cast<uint64_t>(layer), bond_idx);
}

void apply_shallow_clifford(StabilizerTableau& t, const LatticeSpec& spec,
                            const CliffordCircuitSpec& cspec, uint64_t seed,
                            uint64_t trajectory) {
  spec.validate();
  cspec.validate();
  if (t.q() != 2)
    throw std::invalid_argument("apply_shallow_clifford: q = 2 only");
  for (size_t step = 0; step < cspec.t; ++step)
    for (int layer = 1; layer <= 4; ++layer) {
      const auto bonds = clifford_layer_bonds(spec, layer);
      for (size_t b = 0; b < bonds.size(); ++b)
        if (gate_present(cspec, seed, trajectory, step, layer, b))
          t.apply_symplectic(gate_at(seed, trajectory, step, layer, b),
                             bonds[b].u, bonds[b].v);
    }
}

}  // namespace mipt
