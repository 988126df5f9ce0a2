#include "tableau.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "rng.hpp"

namespace mipt {

PauliString PauliString::single(size_t n, size_t site, uint32_t a, uint32_t b,
                                uint32_t q) {
  PauliString p;
  p.q = q;
  p.x_exps.assign(n, 0);
  p.z_exps.assign(n, 0);
  p.x_exps[site] = a % q;
  p.z_exps[site] = b % q;
  return p;
}

uint32_t commutation_phase(const PauliString& p1, const PauliString& p2) {
  if (p1.n_sites() != p2.n_sites() || p1.q != p2.q)
    throw std::invalid_argument("commutation_phase: mismatched operands");
  const uint64_t q = p1.q;
  uint64_t acc = 0;
  for (size_t i = 0; i < p1.n_sites(); ++i) {
    acc += static_cast<uint64_t>(p1.z_exps[i]) * p2.x_exps[i] % q;
    acc += q - static_cast<uint64_t>(p1.x_exps[i]) * p2.z_exps[i] % q;
  }
  return static_cast<uint32_t>(acc % q);
}

namespace {

std::array<uint32_t, 16> matmul4(const std::array<uint32_t, 16>& a,
                                 const std::array<uint32_t, 16>& b,
                                 uint32_t q) {
  std::array<uint32_t, 16> c{};
  for (size_t r = 0; r < 4; ++r)
    for (size_t k = 0; k < 4; ++k) {
      if (!a[r * 4 + k]) continue;
      for (size_t col = 0; col < 4; ++col)
        c[r * 4 + col] = static_cast<uint32_t>(
            (c[r * 4 + col] + static_cast<uint64_t>(a[r * 4 + k]) * b[k * 4 + col]) % q);
    }
  return c;
}

// Symplectic form on (a1, b1, a2, b2): Omega(u, v) = sum_i (ub_i va_i - ua_i vb_i).
uint32_t symp_form(const std::array<uint32_t, 4>& u,
                   const std::array<uint32_t, 4>& v, uint32_t q) {
  uint64_t acc = 0;
  for (size_t i = 0; i < 2; ++i) {
    acc += static_cast<uint64_t>(u[2 * i + 1]) * v[2 * i] % q;
    acc += q - static_cast<uint64_t>(u[2 * i]) * v[2 * i + 1] % q;
  }
  return static_cast<uint32_t>(acc % q);
}

bool is_symplectic(const std::array<uint32_t, 16>& m, uint32_t q) {
  std::array<std::array<uint32_t, 4>, 4> cols;
  for (size_t c = 0; c < 4; ++c)
    for (size_t r = 0; r < 4; ++r) cols[c][r] = m[r * 4 + c];
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      std::array<uint32_t, 4> ei{}, ej{};
      ei[i] = 1;
      ej[j] = 1;
      if (symp_form(cols[i], cols[j], q) != symp_form(ei, ej, q)) return false;
    }
  return true;
}

struct Sp4Table {
  std::vector<std::array<uint32_t, 16>> mats;
  std::vector<std::vector<char>> words;
};

const Sp4Table& sp4_table() {
  static const Sp4Table table = [] {
    Sp4Table t;
    struct Gen {
      char id;
      std::array<uint32_t, 16> m;
    };
    // Conjugation matrices on (a1, b1, a2, b2) over GF(2).
    const std::vector<Gen> gens = {
        {'H', {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
        {'S', {1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
        {'C', {1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 1, 0, 0, 1}},
        {'W', {0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0}},
    };
    auto encode = [](const std::array<uint32_t, 16>& m) {
      uint16_t e = 0;
      for (size_t k = 0; k < 16; ++k)
        if (m[k]) e |= static_cast<uint16_t>(1u << k);
      return e;
    };
    std::map<uint16_t, size_t> seen;
    std::array<uint32_t, 16> id{};
    for (size_t k = 0; k < 4; ++k) id[k * 4 + k] = 1;
    t.mats.push_back(id);
    t.words.emplace_back();
    seen[encode(id)] = 0;
    for (size_t head = 0; head < t.mats.size(); ++head) {
      const auto cur = t.mats[head];
      const auto cur_word = t.words[head];
      for (const auto& g : gens) {
        auto next = matmul4(g.m, cur, 2);
        const uint16_t e = encode(next);
        if (seen.count(e)) continue;
        seen[e] = t.mats.size();
        t.mats.push_back(next);
        auto w = cur_word;
        w.push_back(g.id);
        t.words.push_back(std::move(w));
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

SymplecticGate::SymplecticGate(const std::array<uint32_t, 16>& m, uint32_t q)
    : q_(q) {
  if (!is_prime(q)) throw std::invalid_argument("SymplecticGate: q not prime");
  for (size_t k = 0; k < 16; ++k) m_[k] = m[k] % q;
  if (!is_symplectic(m_, q))
    throw std::invalid_argument("SymplecticGate: matrix is not symplectic");
}

SymplecticGate SymplecticGate::identity(uint32_t q) {
  std::array<uint32_t, 16> m{};
  for (size_t k = 0; k < 4; ++k) m[k * 4 + k] = 1;
  return SymplecticGate(m, q);
}

SymplecticGate SymplecticGate::cp(uint32_t w, uint32_t q) {
  std::array<uint32_t, 16> m{};
  for (size_t k = 0; k < 4; ++k) m[k * 4 + k] = 1;
  m[1 * 4 + 2] = w % q;  // b_i += w a_j
  m[3 * 4 + 0] = w % q;  // b_j += w a_i
  return SymplecticGate(m, q);
}

SymplecticGate SymplecticGate::fourier_first(uint32_t q) {
  std::array<uint32_t, 16> m{};
  m[0 * 4 + 1] = q - 1;  // a_i' = -b_i
  m[1 * 4 + 0] = 1;      // b_i' = a_i
  m[2 * 4 + 2] = 1;
  m[3 * 4 + 3] = 1;
  return SymplecticGate(m, q);
}

size_t two_qubit_clifford_count() { return sp4_table().mats.size(); }

const SymplecticGate& two_qubit_clifford_element(size_t idx) {
  static const std::vector<SymplecticGate> elems = [] {
    std::vector<SymplecticGate> v;
    const auto& t = sp4_table();
    v.reserve(t.mats.size());
    for (size_t k = 0; k < t.mats.size(); ++k) {
      SymplecticGate g(t.mats[k], 2);
      g.word_ = t.words[k];
      v.push_back(std::move(g));
    }
    return v;
  }();
  return elems.at(idx);
}

SymplecticGate sample_two_qubit_clifford(uint64_t seed, uint64_t k1,
                                         uint64_t k2, uint64_t k3,
                                         uint64_t k4) {
  const size_t n = two_qubit_clifford_count();
  const size_t idx = static_cast<size_t>(
      rng::below(n, seed, rng::kGateIdx, k1, k2, k3, k4));
  return two_qubit_clifford_element(idx);
}

StabilizerTableau::StabilizerTableau(uint32_t q, size_t n_sites,
                                     size_t capacity)
    : q_(q), n_(n_sites), cap_(std::max(n_sites, capacity)) {
  if (!is_prime(q)) throw std::invalid_argument("StabilizerTableau: q not prime");
  if (q == 2) {
    words_ = (cap_ + 63) / 64;
    bits_.assign(cap_ * 2 * words_, 0);
  } else {
    words_ = 0;
    ents_.assign(cap_ * 2 * cap_, 0);
  }
  for (size_t i = 0; i < n_; ++i) set_x(i, i, 1);
}

uint32_t StabilizerTableau::x(size_t row, size_t site) const {
  if (q_ == 2)
    return (bits_[row * 2 * words_ + (site >> 6)] >> (site & 63)) & 1;
  return ents_[row * 2 * cap_ + site];
}

uint32_t StabilizerTableau::z(size_t row, size_t site) const {
  if (q_ == 2)
    return (bits_[row * 2 * words_ + words_ + (site >> 6)] >> (site & 63)) & 1;
  return ents_[row * 2 * cap_ + cap_ + site];
}

void StabilizerTableau::set_x(size_t row, size_t site, uint32_t v) {
  if (q_ == 2) {
    uint64_t& w = bits_[row * 2 * words_ + (site >> 6)];
    const uint64_t mask = 1ull << (site & 63);
    w = (v & 1) ? (w | mask) : (w & ~mask);
  } else {
    ents_[row * 2 * cap_ + site] = v % q_;
  }
}

void StabilizerTableau::set_z(size_t row, size_t site, uint32_t v) {
  if (q_ == 2) {
    uint64_t& w = bits_[row * 2 * words_ + words_ + (site >> 6)];
    const uint64_t mask = 1ull << (site & 63);
    w = (v & 1) ? (w | mask) : (w & ~mask);
  } else {
    ents_[row * 2 * cap_ + cap_ + site] = v % q_;
  }
}

PauliString StabilizerTableau::row(size_t r) const {
  PauliString p;
  p.q = q_;
  p.x_exps.resize(n_);
  p.z_exps.resize(n_);
  for (size_t s = 0; s < n_; ++s) {
    p.x_exps[s] = x(r, s);
    p.z_exps[s] = z(r, s);
  }
  return p;
}

void StabilizerTableau::apply_cp(size_t i, size_t j, uint32_t w) {
  if (i == j) throw std::invalid_argument("apply_cp: i == j");
  w %= q_;
  if (w == 0) return;
  for (size_t r = 0; r < n_; ++r) {
    const uint32_t xi = x(r, i), xj = x(r, j);
    if (xi) set_z(r, j, static_cast<uint32_t>(
                            (z(r, j) + static_cast<uint64_t>(w) * xi) % q_));
    if (xj) set_z(r, i, static_cast<uint32_t>(
                            (z(r, i) + static_cast<uint64_t>(w) * xj) % q_));
  }
}

void StabilizerTableau::apply_symplectic(const SymplecticGate& g, size_t i,
                                         size_t j) {
  if (g.q() != q_) throw std::invalid_argument("apply_symplectic: q mismatch");
  if (i == j) throw std::invalid_argument("apply_symplectic: i == j");
  if (q_ == 2) {
    // Hot path: tabulate the action on the 16 possible bit patterns once,
    // then gather/scatter 4 bits per row.
    uint8_t lut[16];
    for (uint32_t v = 0; v < 16; ++v) {
      uint32_t o = 0;
      for (size_t a = 0; a < 4; ++a) {
        uint32_t acc = 0;
        for (size_t b = 0; b < 4; ++b) acc ^= g.at(a, b) & (v >> b);
        o |= (acc & 1) << a;
      }
      lut[v] = static_cast<uint8_t>(o);
    }
    const size_t xi = i >> 6, xj = j >> 6, zi = words_ + xi, zj = words_ + xj;
    const uint64_t mi = 1ull << (i & 63), mj = 1ull << (j & 63);
    for (size_t r = 0; r < n_; ++r) {
      uint64_t* row = &bits_[r * 2 * words_];
      const uint32_t v = ((row[xi] & mi) ? 1u : 0u) |
                         ((row[zi] & mi) ? 2u : 0u) |
                         ((row[xj] & mj) ? 4u : 0u) |
                         ((row[zj] & mj) ? 8u : 0u);
      const uint32_t o = lut[v];
      row[xi] = (o & 1) ? (row[xi] | mi) : (row[xi] & ~mi);
      row[zi] = (o & 2) ? (row[zi] | mi) : (row[zi] & ~mi);
      row[xj] = (o & 4) ? (row[xj] | mj) : (row[xj] & ~mj);
      row[zj] = (o & 8) ? (row[zj] | mj) : (row[zj] & ~mj);
    }
    return;
  }
  for (size_t r = 0; r < n_; ++r) {
    const std::array<uint32_t, 4> v = {x(r, i), z(r, i), x(r, j), z(r, j)};
    std::array<uint32_t, 4> out{};
    for (size_t a = 0; a < 4; ++a) {
      uint64_t acc = 0;
      for (size_t b = 0; b < 4; ++b)
        acc += static_cast<uint64_t>(g.at(a, b)) * v[b];
      out[a] = static_cast<uint32_t>(acc % q_);
    }
    set_x(r, i, out[0]);
    set_z(r, i, out[1]);
    set_x(r, j, out[2]);
    set_z(r, j, out[3]);
  }
}

void StabilizerTableau::row_addmul(size_t dst, size_t src, uint32_t k) {
  k %= q_;
  if (k == 0) return;
  if (q_ == 2) {
    uint64_t* d = &bits_[dst * 2 * words_];
    const uint64_t* s = &bits_[src * 2 * words_];
    for (size_t w = 0; w < 2 * words_; ++w) d[w] ^= s[w];
  } else {
    uint32_t* d = &ents_[dst * 2 * cap_];
    const uint32_t* s = &ents_[src * 2 * cap_];
    for (size_t c = 0; c < 2 * cap_; ++c)
      d[c] = static_cast<uint32_t>((d[c] + static_cast<uint64_t>(k) * s[c]) % q_);
  }
}

void StabilizerTableau::swap_rows(size_t r1, size_t r2) {
  if (r1 == r2) return;
  if (q_ == 2) {
    for (size_t w = 0; w < 2 * words_; ++w)
      std::swap(bits_[r1 * 2 * words_ + w], bits_[r2 * 2 * words_ + w]);
  } else {
    for (size_t c = 0; c < 2 * cap_; ++c)
      std::swap(ents_[r1 * 2 * cap_ + c], ents_[r2 * 2 * cap_ + c]);
  }
}

void StabilizerTableau::swap_site_columns(size_t s1, size_t s2) {
  if (s1 == s2) return;
  for (size_t r = 0; r < n_; ++r) {
    const uint32_t x1 = x(r, s1), z1 = z(r, s1);
    set_x(r, s1, x(r, s2));
    set_z(r, s1, z(r, s2));
    set_x(r, s2, x1);
    set_z(r, s2, z1);
  }
}

uint32_t StabilizerTableau::site_multiple(size_t row, size_t site, uint32_t a,
                                          uint32_t b) const {
  // (x, z) at `site` is a multiple of (a, b) for any row commuting with the
  // measured operator; return that multiple.
  if (a != 0)
    return static_cast<uint32_t>(
        static_cast<uint64_t>(x(row, site)) * mod_inverse(a, q_) % q_);
  return static_cast<uint32_t>(static_cast<uint64_t>(z(row, site)) *
                               mod_inverse(b, q_) % q_);
}

bool StabilizerTableau::measure(const MeasurementOp& m) {
  if (m.site >= n_) throw std::out_of_range("measure: site out of range");
  const uint32_t a = m.a % q_, b = m.b % q_;
  if (a == 0 && b == 0)
    throw std::invalid_argument("measure: identity operator");
  // alpha_r = z_r(s) a - x_r(s) b mod q. Single pass: the first
  // anticommuting row is the pivot; later ones absorb a pivot multiple.
  size_t k = n_;
  uint32_t inv_k = 0;
  for (size_t r = 0; r < n_; ++r) {
    const uint64_t alpha =
        (static_cast<uint64_t>(z(r, m.site)) * a +
         static_cast<uint64_t>(q_ - 1) * x(r, m.site) % q_ * b) %
        q_;
    if (!alpha) continue;
    if (k == n_) {
      k = r;
      inv_k = mod_inverse(static_cast<uint32_t>(alpha), q_);
    } else {
      const uint32_t beta = static_cast<uint32_t>(
          (q_ - alpha * inv_k % q_) % q_);
      row_addmul(r, k, beta);
    }
  }
  if (k == n_) return false;
  // Pivot row becomes the measured single-site operator.
  if (q_ == 2) {
    std::fill_n(&bits_[k * 2 * words_], 2 * words_, 0ull);
  } else {
    std::fill_n(&ents_[k * 2 * cap_], 2 * cap_, 0u);
  }
  set_x(k, m.site, a);
  set_z(k, m.site, b);
  return true;
}

size_t StabilizerTableau::entropy(std::span<const size_t> region) const {
  const size_t na = region.size();
  if (na == 0) return 0;
  size_t rank = 0;
  if (q_ == 2) {
    const size_t cols = 2 * na;
    const size_t w2 = (cols + 63) / 64;
    std::vector<uint64_t> sub(n_ * w2, 0);
    for (size_t r = 0; r < n_; ++r)
      for (size_t c = 0; c < na; ++c) {
        const size_t s = region[c];
        if (x(r, s)) sub[r * w2 + (c >> 6)] |= 1ull << (c & 63);
        const size_t zc = na + c;
        if (z(r, s)) sub[r * w2 + (zc >> 6)] |= 1ull << (zc & 63);
      }
    rank = rank_gf2_packed(sub, n_, w2, cols);
  } else {
    FpMatrix sub(n_, 2 * na, q_);
    for (size_t r = 0; r < n_; ++r)
      for (size_t c = 0; c < na; ++c) {
        sub.set(r, c, x(r, region[c]));
        sub.set(r, na + c, z(r, region[c]));
      }
    rank = rank_fp_generic(sub);
  }
  return rank - na;
}

size_t StabilizerTableau::append_plus_site() {
  if (n_ >= cap_) throw std::length_error("append_plus_site: capacity exhausted");
  const size_t s = n_;
  ++n_;
  // Row n-1 and column s are zero by invariant; install X_s.
  if (q_ == 2) {
    std::fill_n(&bits_[s * 2 * words_], 2 * words_, 0ull);
  } else {
    std::fill_n(&ents_[s * 2 * cap_], 2 * cap_, 0u);
  }
  set_x(s, s, 1);
  return s;
}

size_t StabilizerTableau::drop_measured_site(const MeasurementOp& m) {
  const size_t s = m.site;
  const uint32_t a = m.a % q_, b = m.b % q_;
  std::vector<size_t> touching;
  for (size_t r = 0; r < n_; ++r)
    if (x(r, s) != 0 || z(r, s) != 0) touching.push_back(r);
  if (touching.empty())
    throw std::logic_error("drop_measured_site: no stabilizer at site");
  const size_t r0 = touching.front();
  const uint32_t c0 = site_multiple(r0, s, a, b);
  const uint32_t inv_c0 = mod_inverse(c0, q_);
  for (size_t idx = 1; idx < touching.size(); ++idx) {
    const size_t r = touching[idx];
    const uint32_t c = site_multiple(r, s, a, b);
    row_addmul(r, r0, static_cast<uint32_t>(
                          (q_ - static_cast<uint64_t>(c) * inv_c0 % q_) % q_));
  }
  // r0 now generates the site's local group; replace it by the bare
  // single-site operator (same group: the site is in a measured product
  // state) and retire both the row and the site slot.
  if (q_ == 2) {
    std::fill_n(&bits_[r0 * 2 * words_], 2 * words_, 0ull);
  } else {
    std::fill_n(&ents_[r0 * 2 * cap_], 2 * cap_, 0u);
  }
  swap_rows(r0, n_ - 1);
  const size_t moved_site = n_ - 1;
  swap_site_columns(s, moved_site);
  --n_;
  // Vacated row/column stay zero for the append invariant.
  if (q_ == 2) {
    std::fill_n(&bits_[n_ * 2 * words_], 2 * words_, 0ull);
  } else {
    std::fill_n(&ents_[n_ * 2 * cap_], 2 * cap_, 0u);
  }
  return moved_site;
}

bool StabilizerTableau::rows_commute() const {
  for (size_t r1 = 0; r1 < n_; ++r1) {
    const PauliString p1 = row(r1);
    for (size_t r2 = r1 + 1; r2 < n_; ++r2)
      if (commutation_phase(p1, row(r2)) != 0) return false;
  }
  return true;
}

bool StabilizerTableau::rows_independent() const {
  FpMatrix full(n_, 2 * n_, q_);
  for (size_t r = 0; r < n_; ++r)
    for (size_t s = 0; s < n_; ++s) {
      full.set(r, s, x(r, s));
      full.set(r, n_ + s, z(r, s));
    }
  return rank_fp(full) == n_;
}

bool StabilizerTableau::operator==(const StabilizerTableau& o) const {
  if (q_ != o.q_ || n_ != o.n_) return false;
  for (size_t r = 0; r < n_; ++r)
    for (size_t s = 0; s < n_; ++s)
      if (x(r, s) != o.x(r, s) || z(r, s) != o.z(r, s)) return false;
  return true;
}

}  // namespace mipt
