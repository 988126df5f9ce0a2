#include "dense_oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mipt {

namespace {

std::complex<double> omega_pow(uint32_t q, uint64_t e) {
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(e % q) / q;
  return {std::cos(theta), std::sin(theta)};
}

size_t ipow(size_t base, size_t e) {
  size_t r = 1;
  while (e--) r *= base;
  return r;
}

}  // namespace

DenseState::DenseState(uint32_t q, size_t n) : q_(q), n_(n) {
  if (!is_prime(q)) throw std::invalid_argument("DenseState: q not prime");
  const size_t dim = ipow(q, n);
  if (dim > (1u << 20)) throw std::length_error("DenseState: dimension too large");
  amp_.assign(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
}

uint32_t DenseState::digit(size_t idx, size_t site) const {
  return static_cast<uint32_t>(idx / ipow(q_, site) % q_);
}

void DenseState::apply_cp(size_t i, size_t j, uint32_t w) {
  for (size_t idx = 0; idx < amp_.size(); ++idx) {
    const uint64_t e = static_cast<uint64_t>(w) * digit(idx, i) * digit(idx, j);
    if (e % q_) amp_[idx] *= omega_pow(q_, e);
  }
}

void DenseState::apply_fourier(size_t site) {
  const size_t stride = ipow(q_, site);
  const double norm = 1.0 / std::sqrt(static_cast<double>(q_));
  std::vector<std::complex<double>> block(q_);
  for (size_t base = 0; base < amp_.size(); ++base) {
    if (digit(base, site) != 0) continue;
    for (uint32_t a = 0; a < q_; ++a) block[a] = amp_[base + a * stride];
    for (uint32_t b = 0; b < q_; ++b) {
      std::complex<double> acc = 0.0;
      for (uint32_t a = 0; a < q_; ++a)
        acc += omega_pow(q_, static_cast<uint64_t>(a) * b) * block[a];
      amp_[base + b * stride] = acc * norm;
    }
  }
}

void DenseState::apply_phase_gate(size_t site) {
  if (q_ != 2) throw std::invalid_argument("apply_phase_gate: q = 2 only");
  for (size_t idx = 0; idx < amp_.size(); ++idx)
    if (digit(idx, site)) amp_[idx] *= std::complex<double>(0.0, 1.0);
}

void DenseState::apply_swap(size_t i, size_t j) {
  const size_t si = ipow(q_, i), sj = ipow(q_, j);
  for (size_t idx = 0; idx < amp_.size(); ++idx) {
    const uint32_t di = digit(idx, i), dj = digit(idx, j);
    if (di >= dj) continue;
    const size_t other = idx + (dj - di) * si - (dj - di) * sj;
    std::swap(amp_[idx], amp_[other]);
  }
}

void DenseState::apply_symplectic(const SymplecticGate& g, size_t i, size_t j) {
  if (g.q() != 2 || q_ != 2)
    throw std::invalid_argument("apply_symplectic: q = 2 group table only");
  if (g.word().empty()) {
    for (size_t r = 0; r < 4; ++r)
      for (size_t c = 0; c < 4; ++c)
        if (g.at(r, c) != (r == c ? 1u : 0u))
          throw std::invalid_argument(
              "apply_symplectic: gate has no generator word");
    return;
  }
  for (char c : g.word()) switch (c) {
      case 'H': apply_fourier(i); break;
      case 'S': apply_phase_gate(i); break;
      case 'C': apply_cp(i, j, 1); break;
      case 'W': apply_swap(i, j); break;
      default: throw std::logic_error("apply_symplectic: bad word char");
    }
}

void DenseState::apply_single_pauli(size_t site, uint32_t a, uint32_t b,
                                    std::vector<std::complex<double>>& out) const {
  // X^a Z^b |m> = omega^{b m} |m + a>.
  const size_t stride = ipow(q_, site);
  out.assign(amp_.size(), 0.0);
  for (size_t idx = 0; idx < amp_.size(); ++idx) {
    const uint32_t m = digit(idx, site);
    const uint32_t mp = (m + a) % q_;
    const size_t dst = idx + (static_cast<size_t>(mp) - m) * stride;
    out[dst] = omega_pow(q_, static_cast<uint64_t>(b) * m) * amp_[idx];
  }
}

uint32_t DenseState::measure(size_t site, uint32_t a, uint32_t b, double u) {
  a %= q_;
  b %= q_;
  if (a == 0 && b == 0) throw std::invalid_argument("measure: identity");
  // P_s = (1/q) sum_k omega^{-s k} O'^k with O' = gamma X^a Z^b rescaled so
  // that O'^q = 1. For odd q the bare operator already satisfies this; for
  // q = 2 the operator XZ squares to -1 and needs gamma = i (O' is then the
  // Hermitian Y).
  const std::complex<double> gamma =
      (q_ == 2 && a == 1 && b == 1) ? std::complex<double>(0.0, 1.0)
                                    : std::complex<double>(1.0, 0.0);
  std::vector<std::vector<std::complex<double>>> powers(q_);
  powers[0] = amp_;
  for (uint32_t k = 1; k < q_; ++k) {
    DenseState tmp = *this;
    tmp.amp_ = powers[k - 1];
    tmp.apply_single_pauli(site, a, b, powers[k]);
    for (auto& c : powers[k]) c *= gamma;
  }
  std::vector<std::vector<std::complex<double>>> proj(q_);
  std::vector<double> prob(q_, 0.0);
  for (uint32_t s = 0; s < q_; ++s) {
    proj[s].assign(amp_.size(), 0.0);
    for (uint32_t k = 0; k < q_; ++k) {
      const auto w = std::conj(omega_pow(q_, static_cast<uint64_t>(s) * k));
      for (size_t idx = 0; idx < amp_.size(); ++idx)
        proj[s][idx] += w * powers[k][idx];
    }
    for (auto& c : proj[s]) {
      c /= static_cast<double>(q_);
      prob[s] += std::norm(c);
    }
  }
  uint32_t pick = 0;
  double acc = 0.0;
  for (uint32_t s = 0; s < q_; ++s) {
    acc += prob[s];
    if (u < acc || s + 1 == q_) {
      pick = s;
      break;
    }
  }
  if (prob[pick] < 1e-12) throw std::logic_error("measure: zero-probability pick");
  const double norm = 1.0 / std::sqrt(prob[pick]);
  for (size_t idx = 0; idx < amp_.size(); ++idx) amp_[idx] = proj[pick][idx] * norm;
  return pick;
}

double DenseState::entropy(std::span<const size_t> region) const {
  std::vector<char> in_a(n_, 0);
  for (size_t s : region) in_a[s] = 1;
  std::vector<size_t> a_sites, b_sites;
  for (size_t s = 0; s < n_; ++s) (in_a[s] ? a_sites : b_sites).push_back(s);
  const size_t da = ipow(q_, a_sites.size()), db = ipow(q_, b_sites.size());
  Eigen::MatrixXcd m(da, db);
  for (size_t idx = 0; idx < amp_.size(); ++idx) {
    size_t ra = 0, rb = 0;
    for (size_t k = 0; k < a_sites.size(); ++k)
      ra += static_cast<size_t>(digit(idx, a_sites[k])) * ipow(q_, k);
    for (size_t k = 0; k < b_sites.size(); ++k)
      rb += static_cast<size_t>(digit(idx, b_sites[k])) * ipow(q_, k);
    m(static_cast<Eigen::Index>(ra), static_cast<Eigen::Index>(rb)) = amp_[idx];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  double s = 0.0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    const double p = svd.singularValues()(k) * svd.singularValues()(k);
    if (p > 1e-12) s -= p * std::log(p);
  }
  return s / std::log(static_cast<double>(q_));
}

}  // namespace mipt
