#include "statmech.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "rng.hpp"

namespace mipt {

namespace {

void require_q(double q) {
  if (!(q >= 2.0)) throw std::invalid_argument("statmech: q must be >= 2");
}

// Orbit weights of the plaquette interaction under global spin flip:
// aligned (+,+,+,+), three-vs-one (+,+,+,-), adjacent pair (+,+,-,-),
// staggered (+,-,+,-).
struct OrbitWeights {
  double aligned, three_one, pair, staggered;
};

// Cancellation-free closed forms (u = q^2, D = (u-1)^2 (u^2+6u+1)):
// aligned stays O(1); the other three orbits are O(1/u) or O(1/u^2) and the
// direct 1 + A ... evaluation loses them to rounding at large q.
OrbitWeights orbit_weights(double q) {
  const double u = q * q;
  const double d = (u - 1.0) * (u - 1.0) * (u * u + 6.0 * u + 1.0);
  return {plaquette_weight(1, 1, 1, 1, q),
          -16.0 * u * u / d,
          8.0 * u * (u * u + 1.0) / d,
          -8.0 * (u * u - 2.0 * u - 1.0) / d};
}

struct Bonds {
  std::vector<double> right, down;  // bond from site to +x / +y neighbor
};

Bonds make_bonds(std::size_t l, double k, double p_bond, uint64_t seed) {
  Bonds b{std::vector<double>(l * l, 0.0), std::vector<double>(l * l, 0.0)};
  for (std::size_t i = 0; i < l * l; ++i) {
    if (rng::unit(seed, rng::kBond, 0, i) < p_bond) b.right[i] = k;
    if (rng::unit(seed, rng::kBond, 1, i) < p_bond) b.down[i] = k;
  }
  return b;
}

// One Metropolis update of a uniformly chosen site; returns nothing. Spins
// are stored as +-1 in an l*l vector.
template <typename Lattice>
void metropolis_flip(Lattice& s, const Bonds& b, std::size_t l,
                     rng::Stream& chain) {
  const std::size_t n = l * l;
  const std::size_t i = chain.next() % n;
  const std::size_t x = i % l, y = i / l;
  const std::size_t xm = (x + l - 1) % l, xp = (x + 1) % l;
  const std::size_t ym = (y + l - 1) % l, yp = (y + 1) % l;
  const double field = b.right[i] * s[y * l + xp] +
                       b.right[y * l + xm] * s[y * l + xm] +
                       b.down[i] * s[yp * l + x] +
                       b.down[ym * l + x] * s[ym * l + x];
  const double delta = 2.0 * static_cast<double>(s[i]) * field;
  if (delta <= 0.0 ||
      static_cast<double>(chain.next() >> 11) * 0x1.0p-53 < std::exp(-delta)) {
    s[i] = static_cast<signed char>(-s[i]);
  }
}

}  // namespace

double weingarten2(PermSpin relative, double q) {
  require_q(q);
  const double q2 = q * q;
  const double d = q2 * q2 - 1.0;
  return relative == PermSpin::kIdentity ? 1.0 / d : -1.0 / (q2 * d);
}

double edge_weight(PermSpin relative, double q) {
  require_q(q);
  return relative == PermSpin::kIdentity ? q * q : q;
}

double coupling_jvert(double q) {
  require_q(q);
  return 0.5 * std::log((q * q + 1.0) / (2.0 * q));
}

double coupling_jhoriz(double q) {
  require_q(q);
  const double num = 1.0 + 2.0 * q + 4.0 * q * q + 2.0 * q * q * q +
                     q * q * q * q;
  return 0.5 * std::log(num / (2.0 * q * (1.0 + q + q * q)));
}

double plaquette_weight(int s1, int s2, int s3, int s4, double q) {
  require_q(q);
  const double q2 = q * q;
  const double p = q2 + 1.0, m = q2 - 1.0, r = q2 * q2 + 6.0 * q2 + 1.0;
  const double a = p * p * p * p / (m * m * r);
  const double b = p * p * p / (m * r);
  const double c = p * p / r;
  return 1.0 + a * s1 * s2 * s3 * s4 +
         b * (s1 * s2 + s2 * s3 + s3 * s4 + s4 * s1) +
         c * (s1 * s3 + s2 * s4);
}

Couplings effective_couplings(double q) {
  require_q(q);
  const OrbitWeights w = orbit_weights(q);
  Couplings out;
  out.q = q;
  out.j_vert = coupling_jvert(q);
  out.j_horiz = coupling_jhoriz(q);
  out.all_orbits_positive =
      w.aligned > 0.0 && w.three_one > 0.0 && w.pair > 0.0 && w.staggered > 0.0;
  const double l1 = std::log(std::fabs(w.aligned));
  const double l2 = std::log(std::fabs(w.three_one));
  const double l3 = std::log(std::fabs(w.pair));
  const double l4 = std::log(std::fabs(w.staggered));
  // ln|W| = c + J1234 P + J12 N + J13 D with (P, N, D) per orbit:
  // aligned (1, 4, 2), three-one (-1, 0, 0), pair (1, 0, -2),
  // staggered (1, -4, 2). Closed-form solve of the 4x4 system.
  out.j12 = (l1 - l4) / 8.0;
  out.j13 = ((l1 + l4) / 2.0 - l3) / 4.0;
  const double cj = (l1 + l4) / 2.0 - 2.0 * out.j13;  // c + J1234
  out.j1234 = (cj - l2) / 2.0;
  const double c0 = (cj + l2) / 2.0;
  double worst = 0.0;
  const struct {
    double lw;
    int p, n, d;
  } orbits[4] = {{l1, 1, 4, 2}, {l2, -1, 0, 0}, {l3, 1, 0, -2}, {l4, 1, -4, 2}};
  for (const auto& o : orbits) {
    const double rec =
        std::exp(c0 + out.j1234 * o.p + out.j12 * o.n + out.j13 * o.d);
    const double ex = std::exp(o.lw);
    worst = std::max(worst, std::fabs(rec - ex) / ex);
  }
  out.residual = worst;
  return out;
}

RbimResult run_rbim_mc(std::size_t l, double k, double p_bond,
                       std::size_t sweeps, uint64_t seed) {
  if (l < 2) throw std::invalid_argument("run_rbim_mc: l must be >= 2");
  if (k < 0.0) throw std::invalid_argument("run_rbim_mc: k must be >= 0");
  const std::size_t n = l * l;
  const Bonds bonds = make_bonds(l, k, p_bond, seed);
  std::vector<signed char> s(n, 1);
  rng::Stream chain(seed, rng::kFlip);
  const std::size_t burn = sweeps / 5;
  double a1 = 0.0, a2 = 0.0, a4 = 0.0;
  std::size_t kept = 0;
  for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t step = 0; step < n; ++step)
      metropolis_flip(s, bonds, l, chain);
    if (sweep < burn) continue;
    long sum = 0;
    for (signed char v : s) sum += v;
    const double m = static_cast<double>(sum) / static_cast<double>(n);
    a1 += std::fabs(m);
    a2 += m * m;
    a4 += m * m * m * m;
    ++kept;
  }
  RbimResult r;
  if (kept == 0) return r;
  r.mean_abs_m = a1 / kept;
  r.m2 = a2 / kept;
  r.m4 = a4 / kept;
  r.binder = r.m2 > 0.0 ? 1.0 - r.m4 / (3.0 * r.m2 * r.m2) : 0.0;
  return r;
}

RbimResult run_rbim_mc_sw(std::size_t l, double k, double p_bond,
                          std::size_t sweeps, uint64_t seed) {
  if (l < 2) throw std::invalid_argument("run_rbim_mc_sw: l must be >= 2");
  if (k < 0.0) throw std::invalid_argument("run_rbim_mc_sw: k must be >= 0");
  const std::size_t n = l * l;
  const Bonds bonds = make_bonds(l, k, p_bond, seed);
  std::vector<signed char> s(n, 1);
  rng::Stream chain(seed, rng::kFlip);
  const double p_join = 1.0 - std::exp(-2.0 * k);
  std::vector<std::size_t> parent(n);
  const auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const std::size_t burn = sweeps / 5;
  double a1 = 0.0, a2 = 0.0, a4 = 0.0;
  std::size_t kept = 0;
  for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    // Join equal-spin neighbors across active bonds with prob 1 - e^{-2k}.
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t x = i % l, y = i / l;
      const std::size_t right = y * l + (x + 1) % l;
      const std::size_t down = ((y + 1) % l) * l + x;
      if (bonds.right[i] != 0.0 && s[i] == s[right] && chain.unit() < p_join)
        parent[find(i)] = find(right);
      if (bonds.down[i] != 0.0 && s[i] == s[down] && chain.unit() < p_join)
        parent[find(i)] = find(down);
    }
    // Independently resample every cluster's sign.
    std::vector<signed char> sign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = find(i);
      if (sign[r] == 0) sign[r] = chain.unit() < 0.5 ? 1 : -1;
      s[i] = sign[r];
    }
    if (sweep < burn) continue;
    long sum = 0;
    for (signed char v : s) sum += v;
    const double m = static_cast<double>(sum) / static_cast<double>(n);
    a1 += std::fabs(m);
    a2 += m * m;
    a4 += m * m * m * m;
    ++kept;
  }
  RbimResult r;
  if (kept == 0) return r;
  r.mean_abs_m = a1 / kept;
  r.m2 = a2 / kept;
  r.m4 = a4 / kept;
  r.binder = r.m2 > 0.0 ? 1.0 - r.m4 / (3.0 * r.m2 * r.m2) : 0.0;
  return r;
}

std::vector<double> rbim_state_histogram(std::size_t l, double k, double p_bond,
                                         std::size_t sweeps, uint64_t seed) {
  const std::size_t n = l * l;
  if (n > 20) throw std::invalid_argument("rbim_state_histogram: l*l > 20");
  const Bonds bonds = make_bonds(l, k, p_bond, seed);
  std::vector<signed char> s(n, 1);
  rng::Stream chain(seed, rng::kFlip);
  std::vector<double> hist(std::size_t{1} << n, 0.0);
  const std::size_t burn = sweeps / 5;
  std::size_t kept = 0;
  for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t step = 0; step < n; ++step) {
      metropolis_flip(s, bonds, l, chain);
      if (sweep < burn) continue;
      std::size_t code = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (s[i] > 0) code |= std::size_t{1} << i;
      hist[code] += 1.0;
      ++kept;
    }
  }
  if (kept > 0)
    for (double& h : hist) h /= static_cast<double>(kept);
  return hist;
}

}  // namespace mipt
