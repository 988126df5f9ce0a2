#pragma once

#include <complex>
#include <span>
#include <vector>

#include "tableau.hpp"

// Brute-force state-vector reference for differential tests. Everything here
// is O(q^n) and meant for n small enough that q^n fits in ~2^20 amplitudes;
// the point is that none of the stabilizer machinery is shared, so agreement
// is meaningful.

namespace mipt {

class DenseState {
 public:
  // |+>^n with |+> the uniform superposition (Fourier of |0>).
  DenseState(uint32_t q, size_t n);

  uint32_t q() const { return q_; }
  size_t n_sites() const { return n_; }

  void apply_cp(size_t i, size_t j, uint32_t w);
  // Lifts a q = 2 group-table gate through its generator word.
  void apply_symplectic(const SymplecticGate& g, size_t i, size_t j);
  void apply_fourier(size_t site);
  void apply_phase_gate(size_t site);  // q = 2 S = diag(1, i)
  void apply_swap(size_t i, size_t j);

  // Projective measurement of X^a Z^b at `site`; `u` in [0,1) picks the
  // outcome from the Born distribution. Returns the outcome index s
  // (eigenvalue omega^s).
  uint32_t measure(size_t site, uint32_t a, uint32_t b, double u);

  // Von Neumann entropy of `region` in dits (log base q).
  double entropy(std::span<const size_t> region) const;

  std::complex<double> amplitude(size_t basis_index) const {
    return amp_[basis_index];
  }

 private:
  uint32_t digit(size_t idx, size_t site) const;
  void apply_single_pauli(size_t site, uint32_t a, uint32_t b,
                          std::vector<std::complex<double>>& out) const;

  uint32_t q_;
  size_t n_;
  std::vector<std::complex<double>> amp_;
};

}  // namespace mipt
