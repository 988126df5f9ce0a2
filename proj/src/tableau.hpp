#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gfq.hpp"

// Generalized qudit Pauli strings and stabilizer tableaux over Z_q, q prime.
// Global phases are not tracked: every observable evaluated here
// (entanglement entropy, mutual information) is phase- and
// outcome-independent, and the measurement update needs only commutation
// phases.

namespace mipt {

struct PauliString {
  std::vector<uint32_t> x_exps;
  std::vector<uint32_t> z_exps;
  uint32_t q = 2;

  size_t n_sites() const { return x_exps.size(); }
  static PauliString single(size_t n, size_t site, uint32_t a, uint32_t b,
                            uint32_t q);
};

// Phase alpha with P1 P2 = w^alpha P2 P1, alpha = sum_i (b1_i a2_i - a1_i b2_i).
uint32_t commutation_phase(const PauliString& p1, const PauliString& p2);

// Single-site measured operator O = X^a Z^b, (a, b) != (0, 0).
struct MeasurementOp {
  size_t site;
  uint32_t a;
  uint32_t b;
};

// Two-qudit Clifford gate as its conjugation action on exponent vectors
// (a_i, b_i, a_j, b_j); phase-free by construction. The matrix must
// preserve the symplectic form so commutation phases are preserved.
class SymplecticGate {
 public:
  // Row-major 4x4 over Z_q; throws std::invalid_argument if not symplectic.
  SymplecticGate(const std::array<uint32_t, 16>& m, uint32_t q);

  static SymplecticGate identity(uint32_t q);
  static SymplecticGate cp(uint32_t w, uint32_t q);
  // Single-qudit Fourier (X -> Z, Z -> X^-1) on the first site of the pair.
  static SymplecticGate fourier_first(uint32_t q);

  uint32_t at(size_t r, size_t c) const { return m_[r * 4 + c]; }
  uint32_t q() const { return q_; }

  // Generator word ("H","S","C","W" on the pair) when the gate came from the
  // q = 2 group table; empty otherwise. Used by the dense oracle to lift the
  // gate to a unitary.
  const std::vector<char>& word() const { return word_; }

 private:
  friend SymplecticGate sample_two_qubit_clifford(uint64_t seed, uint64_t k1,
                                                  uint64_t k2, uint64_t k3,
                                                  uint64_t k4);
  friend size_t two_qubit_clifford_count();
  friend const SymplecticGate& two_qubit_clifford_element(size_t idx);
  std::array<uint32_t, 16> m_;
  uint32_t q_;
  std::vector<char> word_;
};

// Uniform sample from Sp(4,2) (720 elements, precomputed once by generator
// closure). Uniform over Sp(4,2) induces the same entropy statistics as the
// full two-qubit Clifford group: Pauli factors and phases act trivially on
// entanglement. Keys feed the counter-based stream.
SymplecticGate sample_two_qubit_clifford(uint64_t seed, uint64_t k1,
                                         uint64_t k2 = 0, uint64_t k3 = 0,
                                         uint64_t k4 = 0);
size_t two_qubit_clifford_count();
const SymplecticGate& two_qubit_clifford_element(size_t idx);

// N rows of pairwise commuting, independent generators over an active set of
// n_sites() sites. Site capacity is fixed at construction; sites can be
// appended in |+> and removed again once they are in a measured product
// state, which is what the streaming drivers rely on.
class StabilizerTableau {
 public:
  StabilizerTableau(uint32_t q, size_t n_sites, size_t capacity = 0);

  uint32_t q() const { return q_; }
  size_t n_sites() const { return n_; }
  size_t capacity() const { return cap_; }

  uint32_t x(size_t row, size_t site) const;
  uint32_t z(size_t row, size_t site) const;
  void set_x(size_t row, size_t site, uint32_t v);
  void set_z(size_t row, size_t site, uint32_t v);

  PauliString row(size_t r) const;

  void apply_cp(size_t i, size_t j, uint32_t w);
  void apply_symplectic(const SymplecticGate& g, size_t i, size_t j);

  // App.-B style projective measurement; returns false when the outcome was
  // deterministic (tableau unchanged).
  bool measure(const MeasurementOp& m);

  // Entropy (dits) of an arbitrary site subset: rank of the truncated
  // tableau minus |region|.
  size_t entropy(std::span<const size_t> region) const;

  // Appends one site in |+>; returns its index.
  size_t append_plus_site();

  // Removes a site that has just been measured with (a, b). The last site
  // index is renumbered to `site`; returns that old index so callers can fix
  // their maps.
  size_t drop_measured_site(const MeasurementOp& m);

  // Invariant checks for tests.
  bool rows_commute() const;
  bool rows_independent() const;

  bool operator==(const StabilizerTableau& o) const;

 private:
  void row_addmul(size_t dst, size_t src, uint32_t k);
  void swap_rows(size_t r1, size_t r2);
  void swap_site_columns(size_t s1, size_t s2);
  uint32_t site_multiple(size_t row, size_t site, uint32_t a, uint32_t b) const;

  uint32_t q_;
  size_t n_;    // active sites == rows
  size_t cap_;  // site capacity
  size_t words_;  // per block, q == 2 only
  std::vector<uint64_t> bits_;   // q == 2: per row 2*words_ (x then z block)
  std::vector<uint32_t> ents_;   // q > 2: per row 2*cap_ (x then z block)
};

}  // namespace mipt
