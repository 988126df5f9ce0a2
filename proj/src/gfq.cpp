#include "gfq.hpp"

#include <stdexcept>

namespace mipt {

bool is_prime(uint32_t q) {
  if (q < 2) return false;
  for (uint32_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

uint32_t mod_inverse(uint32_t a, uint32_t q) {
  if (a == 0 || a >= q) throw std::domain_error("mod_inverse: a not in [1, q)");
  // Fermat: a^(q-2) mod q.
  uint64_t base = a, acc = 1, e = q - 2;
  while (e) {
    if (e & 1) acc = acc * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return static_cast<uint32_t>(acc);
}

FpMatrix::FpMatrix(size_t rows, size_t cols, uint32_t q)
    : rows_(rows), cols_(cols), q_(q), data_(rows * cols, 0) {
  if (!is_prime(q)) throw std::invalid_argument("FpMatrix: q must be prime");
}

void FpMatrix::set(size_t r, size_t c, uint32_t v) {
  data_[r * cols_ + c] = v % q_;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix t(cols_, rows_, q_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

size_t rank_fp_generic(const FpMatrix& m) {
  const size_t rows = m.rows(), cols = m.cols();
  const uint64_t q = m.q();
  std::vector<uint64_t> a(rows * cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) a[r * cols + c] = m.at(r, c);

  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (size_t c = col; c < cols; ++c)
        std::swap(a[pivot * cols + c], a[rank * cols + c]);
    const uint64_t inv = mod_inverse(static_cast<uint32_t>(a[rank * cols + col]),
                                     static_cast<uint32_t>(q));
    for (size_t r = rank + 1; r < rows; ++r) {
      const uint64_t head = a[r * cols + col];
      if (head == 0) continue;
      const uint64_t f = (q - head % q) * inv % q;
      for (size_t c = col; c < cols; ++c)
        a[r * cols + c] = (a[r * cols + c] + f * a[rank * cols + c]) % q;
    }
    ++rank;
  }
  return rank;
}

size_t rank_gf2_packed(std::vector<uint64_t>& rows, size_t nrows, size_t words,
                       size_t nbits) {
  size_t rank = 0;
  for (size_t col = 0; col < nbits && rank < nrows; ++col) {
    const size_t w = col >> 6;
    const uint64_t mask = 1ull << (col & 63);
    size_t pivot = rank;
    while (pivot < nrows && !(rows[pivot * words + w] & mask)) ++pivot;
    if (pivot == nrows) continue;
    if (pivot != rank)
      for (size_t k = 0; k < words; ++k)
        std::swap(rows[pivot * words + k], rows[rank * words + k]);
    for (size_t r = rank + 1; r < nrows; ++r) {
      if (rows[r * words + w] & mask)
        for (size_t k = w; k < words; ++k)
          rows[r * words + k] ^= rows[rank * words + k];
    }
    ++rank;
  }
  return rank;
}

size_t rank_fp(const FpMatrix& m) {
  if (m.q() != 2) return rank_fp_generic(m);
  const size_t words = (m.cols() + 63) / 64;
  std::vector<uint64_t> packed(m.rows() * words, 0);
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c)
      if (m.at(r, c)) packed[r * words + (c >> 6)] |= 1ull << (c & 63);
  return rank_gf2_packed(packed, m.rows(), words, m.cols());
}

}  // namespace mipt
