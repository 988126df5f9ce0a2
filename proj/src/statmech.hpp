#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Closed-form ingredients of the replica spin model (Weingarten weights,
// contraction edge weights, the vertical/horizontal couplings and the
// plaquette interaction) plus a Metropolis Monte Carlo for the diluted
// nearest-neighbor random-bond Ising model they reduce to.

namespace mipt {

// Relative permutation between two second-moment pairings of a Haar gate.
enum class PermSpin { kIdentity, kSwap };

// Weingarten function of U(q^2) at second moment, evaluated on the relative
// permutation: 1/(q^4-1) for identity, -1/(q^2(q^4-1)) for the swap.
double weingarten2(PermSpin relative, double q);

// q^{#cycles} weight carried by a diagonal contraction edge: q^2 when the two
// spins agree, q when they differ.
double edge_weight(PermSpin relative, double q);

// J_vert = (1/2) ln((q^2+1)/(2q)); J_horiz = (1/2) ln((1+2q+4q^2+2q^3+q^4) /
// (2q(1+q+q^2))). Throw std::invalid_argument for q < 2.
double coupling_jvert(double q);
double coupling_jhoriz(double q);

// Exact plaquette weight with the constant prefactor dropped:
//   1 + A s1s2s3s4 + B (s1s2+s2s3+s3s4+s4s1) + C (s1s3+s2s4)
// with A = (q^2+1)^4 / ((q^2-1)^2 (q^4+6q^2+1)), B = (q^2+1)^3 /
// ((q^2-1)(q^4+6q^2+1)), C = (q^2+1)^2 / (q^4+6q^2+1). Spins are +-1.
double plaquette_weight(int s1, int s2, int s3, int s4, double q);

struct Couplings {
  double j_vert = 0.0;
  double j_horiz = 0.0;
  double j12 = 0.0;
  double j13 = 0.0;
  double j1234 = 0.0;
  double q = 0.0;
  // The three-up-one-down orbit weight 1 - A is negative at every finite q
  // (A > 1), so the log-Boltzmann ansatz is solved against |weight|. This
  // flag records whether all orbit weights were positive.
  bool all_orbits_positive = false;
  // max over orbits of |exp(ansatz) - |weight|| / |weight|.
  double residual = 0.0;
};

// Solves the 4x4 linear system matching ln|plaquette_weight| on the four
// global-flip orbits to c + J1234 s1s2s3s4 + J12 sum_nn + J13 sum_diag.
Couplings effective_couplings(double q);

struct RbimResult {
  double mean_abs_m = 0.0;
  double m2 = 0.0;
  double m4 = 0.0;
  double binder = 0.0;  // 1 - <m^4> / (3 <m^2>^2)
};

// Metropolis single-spin-flip Monte Carlo on an l x l periodic lattice whose
// nearest-neighbor bonds independently have strength k with probability
// p_bond and 0 otherwise (disorder keyed by seed). Temperature is absorbed
// into k. Starts from the aligned configuration; the first sweeps/5 sweeps
// are discarded as burn-in; one measurement per retained sweep.
RbimResult run_rbim_mc(std::size_t l, double k, double p_bond,
                       std::size_t sweeps, std::uint64_t seed);

// Swendsen-Wang cluster variant of run_rbim_mc (same disorder, observables
// and averaging conventions). Single-spin Metropolis freezes at large k --
// bonded clusters can never flip against their initial alignment -- so the
// strong-coupling scans toward the percolation limit use cluster updates.
RbimResult run_rbim_mc_sw(std::size_t l, double k, double p_bond,
                          std::size_t sweeps, std::uint64_t seed);

// Small-lattice variant returning the visit frequency of every one of the
// 2^(l*l) spin configurations (detailed-balance checks); requires l*l <= 20.
std::vector<double> rbim_state_histogram(std::size_t l, double k,
                                         double p_bond, std::size_t sweeps,
                                         std::uint64_t seed);

}  // namespace mipt
