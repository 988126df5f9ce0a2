#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Exact linear algebra over the prime field Z_q. Rank via Gaussian
// elimination is the kernel under every entropy evaluation; the q = 2
// path is bit-packed and word-parallel.

namespace mipt {

bool is_prime(uint32_t q);

// Multiplicative inverse in Z_q, q prime. Throws std::domain_error for a == 0.
uint32_t mod_inverse(uint32_t a, uint32_t q);

class FpMatrix {
 public:
  FpMatrix(size_t rows, size_t cols, uint32_t q);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint32_t q() const { return q_; }

  uint32_t at(size_t r, size_t c) const { return data_[r * cols_ + c]; }
  void set(size_t r, size_t c, uint32_t v);

  FpMatrix transposed() const;

 private:
  size_t rows_;
  size_t cols_;
  uint32_t q_;
  std::vector<uint32_t> data_;
};

// Rank over Z_q. Dispatches to the packed GF(2) path when q == 2; both
// paths perform plain Gaussian elimination with first-nonzero pivoting.
size_t rank_fp(const FpMatrix& m);

// Generic elimination, any prime q. Exposed for differential testing
// against the packed path.
size_t rank_fp_generic(const FpMatrix& m);

// In-place elimination on bit-packed rows; `words` is the stride per row,
// `nbits` the number of meaningful columns.
size_t rank_gf2_packed(std::vector<uint64_t>& rows, size_t nrows, size_t words,
                       size_t nbits);

}  // namespace mipt
