#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lattice.hpp"

// Measurement protocols and observables on the 2D lattice: bulk rows are
// built, entangled and measured through a sliding window so memory and rank
// work stay proportional to the window, not to Ly. Boundary entropies,
// mutual information vs cross ratio, two-edge purification, and the
// exponent fits (alpha, Delta, lambda, p_c) live here.

namespace mipt {

enum class Model { kGraph, kClifford };
enum class GeometryKind { kStripTop, kCylinderTwoEdge };

struct MeasurementPolicy {
  double p_x = 0.0;  // graph model: X w.p. p_x else Z; Clifford: always Z
};

struct SimOptions {
  Model model = Model::kGraph;
  uint32_t q = 2;
  LatticeSpec lattice{};
  MeasurementPolicy policy{};
  CliffordCircuitSpec circuit{1, 1.0};  // Clifford model only
  GeometryKind geometry = GeometryKind::kStripTop;
  bool streaming = true;  // false: full-lattice reference path

  void validate() const;
};

// Final state after bulk measurement: the tableau holds the un-measured
// boundary row(s); `top[x]` / `bottom[x]` map boundary columns to sites.
struct BoundaryState {
  StabilizerTableau tab;
  std::vector<size_t> top;
  std::vector<size_t> bottom;  // cylinder-two-edge only
};

BoundaryState simulate_boundary(const SimOptions& opts, uint64_t seed,
                                uint64_t trajectory);

struct Interval {
  size_t start;
  size_t length;
};

struct RunRecord {
  std::string model;
  uint32_t q;
  size_t lx;
  size_t ly;
  double param;  // p_x or p_gate (or K/p_bond for the RBIM)
  std::string region;
  size_t sample;
  uint64_t seed;
  double value;
};

struct FitResult {
  std::string kind;
  double value = 0.0;
  double stderr_ = 0.0;
  std::string window;
  bool ok = false;
};

// Boundary-interval entropies; one trajectory per sample, every requested
// interval evaluated on it. Region descriptors are "start:length".
std::vector<RunRecord> run_strip_entropy(const SimOptions& opts,
                                         const std::vector<Interval>& regions,
                                         size_t samples, uint64_t seed);

// I_AB = S_A + S_B - S_AB for sorted random 4-tuples on the top boundary;
// `tuples` position draws per trajectory. Region descriptor "x1:x2:x3:x4".
std::vector<RunRecord> run_mutual_info(const SimOptions& opts, size_t samples,
                                       size_t tuples, uint64_t seed);

// eta = (x12 x34)/(x13 x24) with chord distances on the ring.
double cross_ratio(size_t x1, size_t x2, size_t x3, size_t x4, size_t l_x);

// S(top row) for each Ly in `lys`, cylinder-two-edge geometry. Region "top".
std::vector<RunRecord> run_two_edge_purification(SimOptions opts,
                                                 const std::vector<size_t>& lys,
                                                 size_t samples, uint64_t seed);

// S_A = 2 alpha log[(Lx/pi) sin(pi L_A / Lx)] slope fit over
// L_A in [Lx/8, Lx/2].
FitResult fit_alpha(const std::vector<RunRecord>& records);

// I_AB ~ eta^Delta: log-log slope over the smallest populated decade of
// eta, geometric bins.
FitResult fit_delta(const std::vector<RunRecord>& records);

// S_top ~ exp(-lambda Ly): minus-slope of log mean entropy; abscissa Ly for
// the graph model, pi Ly / Lx for the Clifford collapse convention.
FitResult fit_lambda(const std::vector<RunRecord>& records);

// Crossings of S_A(p)/log Lx between consecutive sizes, averaged.
FitResult estimate_pc(const std::vector<RunRecord>& records);

// Worker count for trajectory-level parallelism: MIPT_THREADS env var,
// default 1. Results are written to per-sample slots, so the output is
// independent of the count.
size_t worker_count();

}  // namespace mipt
