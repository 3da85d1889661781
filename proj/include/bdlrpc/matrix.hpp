#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bdlrpc/rng.hpp"

namespace bdlrpc {

// Dense row-major matrix over F_q, q prime; entries are residues in [0, q).
// Matrices are plain values; every operation returns a fresh matrix.
struct MatrixFq {
  uint32_t q = 2;
  size_t rows = 0, cols = 0;
  std::vector<uint8_t> entries;

  MatrixFq() = default;
  MatrixFq(uint32_t q_, size_t rows_, size_t cols_)
      : q(q_), rows(rows_), cols(cols_), entries(rows_ * cols_, 0) {}
  static MatrixFq identity(uint32_t q, size_t n);

  uint8_t at(size_t i, size_t j) const { return entries[i * cols + j]; }
  uint8_t& at(size_t i, size_t j) { return entries[i * cols + j]; }
  std::span<const uint8_t> row(size_t i) const {
    return std::span<const uint8_t>(entries).subspan(i * cols, cols);
  }

  bool is_zero() const;
  bool operator==(const MatrixFq&) const = default;
};

struct RrefResult {
  MatrixFq rref;                   // canonical reduced row-echelon form
  size_t rank = 0;
  std::vector<size_t> pivot_cols;  // ascending
};

RrefResult rref(const MatrixFq& a);

// rank(a) == rref(a).rank; for q=2 this runs a bit-packed elimination that
// the tests cross-check against the generic path.
size_t rank(const MatrixFq& a);

MatrixFq transpose(const MatrixFq& a);
MatrixFq matmul(const MatrixFq& a, const MatrixFq& b);
MatrixFq vstack(const MatrixFq& top, const MatrixFq& bottom);

// Solution of A x = b: one particular solution plus a kernel basis; the full
// solution set is particular + span(kernel). Inconsistency is a result, not
// an exception (the decoder branches on it).
struct SolveResult {
  bool consistent = false;
  std::vector<uint8_t> particular;  // length cols(A) when consistent
  MatrixFq kernel;                  // kernel basis rows (0 rows if trivial)
};
SolveResult solve(const MatrixFq& a, std::span<const uint8_t> b);

// Simultaneous solve of A x = B[:, j] for every column j: one elimination,
// shared coefficient matrix. particular column j is the canonical solution
// with free variables set to zero (meaningful only where consistent[j]).
struct MultiSolveResult {
  std::vector<uint8_t> consistent;  // 0/1 per right-hand side
  MatrixFq particular;              // cols(A) x cols(B)
  MatrixFq kernel;                  // kernel basis of A
};
MultiSolveResult solve_multi(const MatrixFq& a, const MatrixFq& b);

// Entries i.i.d. uniform on F_q.
MatrixFq sample_matrix(uint32_t q, size_t rows, size_t cols, SplitMix64& rng);
// Uniform over matrices of rank exactly target_rank, by rejection.
MatrixFq sample_full_rank(uint32_t q, size_t rows, size_t cols, size_t target_rank,
                          SplitMix64& rng);

}  // namespace bdlrpc
