#include "bdlrpc/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace bdlrpc {

namespace {

std::vector<uint8_t> inverse_table(uint32_t q) {
  std::vector<uint8_t> inv(q, 0);
  for (uint32_t a = 1; a < q; ++a)
    for (uint32_t b = 1; b < q; ++b)
      if (a * b % q == 1) {
        inv[a] = static_cast<uint8_t>(b);
        break;
      }
  return inv;
}

// Gauss-Jordan on `a`, searching pivots only in the first pivot_limit
// columns. Returns pivot columns in ascending order.
std::vector<size_t> reduce_in_place(MatrixFq& a, size_t pivot_limit) {
  const uint32_t q = a.q;
  const auto inv = inverse_table(q);
  std::vector<size_t> pivots;
  size_t lead = 0;
  for (size_t col = 0; col < pivot_limit && lead < a.rows; ++col) {
    size_t piv = lead;
    while (piv < a.rows && a.at(piv, col) == 0) ++piv;
    if (piv == a.rows) continue;
    if (piv != lead)
      for (size_t j = 0; j < a.cols; ++j) std::swap(a.at(piv, j), a.at(lead, j));
    const uint32_t scale = inv[a.at(lead, col)];
    if (scale != 1)
      for (size_t j = 0; j < a.cols; ++j)
        a.at(lead, j) = static_cast<uint8_t>(a.at(lead, j) * scale % q);
    for (size_t i = 0; i < a.rows; ++i) {
      if (i == lead) continue;
      const uint32_t f = a.at(i, col);
      if (!f) continue;
      for (size_t j = col; j < a.cols; ++j) {
        uint32_t v = a.at(i, j) + (q - f) * a.at(lead, j);
        a.at(i, j) = static_cast<uint8_t>(v % q);
      }
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

size_t rank_f2_packed(const MatrixFq& a) {
  const size_t words = (a.cols + 63) / 64;
  std::vector<uint64_t> rows(a.rows * words, 0);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < a.cols; ++j)
      if (a.at(i, j)) rows[i * words + j / 64] |= uint64_t(1) << (j % 64);

  size_t rank = 0;
  for (size_t col = 0; col < a.cols && rank < a.rows; ++col) {
    const size_t w = col / 64;
    const uint64_t bit = uint64_t(1) << (col % 64);
    size_t piv = rank;
    while (piv < a.rows && !(rows[piv * words + w] & bit)) ++piv;
    if (piv == a.rows) continue;
    for (size_t ww = 0; ww < words; ++ww)
      std::swap(rows[piv * words + ww], rows[rank * words + ww]);
    for (size_t i = rank + 1; i < a.rows; ++i) {
      if (rows[i * words + w] & bit)
        for (size_t ww = w; ww < words; ++ww) rows[i * words + ww] ^= rows[rank * words + ww];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

MatrixFq MatrixFq::identity(uint32_t q, size_t n) {
  MatrixFq a(q, n, n);
  for (size_t i = 0; i < n; ++i) a.at(i, i) = 1;
  return a;
}

bool MatrixFq::is_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](uint8_t v) { return v == 0; });
}

RrefResult rref(const MatrixFq& a) {
  RrefResult out;
  out.rref = a;
  out.pivot_cols = reduce_in_place(out.rref, a.cols);
  out.rank = out.pivot_cols.size();
  return out;
}

size_t rank(const MatrixFq& a) {
  if (a.rows == 0 || a.cols == 0) return 0;
  if (a.q == 2) return rank_f2_packed(a);
  return rref(a).rank;
}

MatrixFq transpose(const MatrixFq& a) {
  MatrixFq out(a.q, a.cols, a.rows);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < a.cols; ++j) out.at(j, i) = a.at(i, j);
  return out;
}

MatrixFq matmul(const MatrixFq& a, const MatrixFq& b) {
  if (a.q != b.q || a.cols != b.rows)
    throw std::invalid_argument("matmul: incompatible operands");
  MatrixFq out(a.q, a.rows, b.cols);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < b.cols; ++j) {
      uint32_t acc = 0;
      for (size_t l = 0; l < a.cols; ++l) acc += a.at(i, l) * b.at(l, j);
      out.at(i, j) = static_cast<uint8_t>(acc % a.q);
    }
  return out;
}

MatrixFq vstack(const MatrixFq& top, const MatrixFq& bottom) {
  if (top.q != bottom.q || top.cols != bottom.cols)
    throw std::invalid_argument("vstack: incompatible operands");
  MatrixFq out(top.q, top.rows + bottom.rows, top.cols);
  std::copy(top.entries.begin(), top.entries.end(), out.entries.begin());
  std::copy(bottom.entries.begin(), bottom.entries.end(),
            out.entries.begin() + static_cast<long>(top.entries.size()));
  return out;
}

MultiSolveResult solve_multi(const MatrixFq& a, const MatrixFq& b) {
  if (a.q != b.q || a.rows != b.rows)
    throw std::invalid_argument("solve: dimension mismatch");
  const uint32_t q = a.q;
  MatrixFq aug(q, a.rows, a.cols + b.cols);
  for (size_t i = 0; i < a.rows; ++i) {
    for (size_t j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
    for (size_t j = 0; j < b.cols; ++j) aug.at(i, a.cols + j) = b.at(i, j);
  }
  const auto pivots = reduce_in_place(aug, a.cols);
  const size_t rk = pivots.size();

  MultiSolveResult out;
  out.consistent.assign(b.cols, 1);
  for (size_t i = rk; i < a.rows; ++i)
    for (size_t j = 0; j < b.cols; ++j)
      if (aug.at(i, a.cols + j)) out.consistent[j] = 0;

  out.particular = MatrixFq(q, a.cols, b.cols);
  for (size_t p = 0; p < rk; ++p)
    for (size_t j = 0; j < b.cols; ++j)
      out.particular.at(pivots[p], j) = aug.at(p, a.cols + j);

  std::vector<uint8_t> is_pivot(a.cols, 0);
  for (size_t p : pivots) is_pivot[p] = 1;
  const size_t nullity = a.cols - rk;
  out.kernel = MatrixFq(q, nullity, a.cols);
  size_t kr = 0;
  for (size_t f = 0; f < a.cols; ++f) {
    if (is_pivot[f]) continue;
    out.kernel.at(kr, f) = 1;
    for (size_t p = 0; p < rk; ++p)
      out.kernel.at(kr, pivots[p]) = static_cast<uint8_t>((q - aug.at(p, f)) % q);
    ++kr;
  }
  return out;
}

SolveResult solve(const MatrixFq& a, std::span<const uint8_t> b) {
  if (b.size() != a.rows) throw std::invalid_argument("solve: dimension mismatch");
  MatrixFq col(a.q, a.rows, 1);
  for (size_t i = 0; i < a.rows; ++i) col.at(i, 0) = b[i];
  MultiSolveResult multi = solve_multi(a, col);
  SolveResult out;
  out.consistent = multi.consistent[0] != 0;
  if (out.consistent) {
    out.particular.resize(a.cols);
    for (size_t j = 0; j < a.cols; ++j) out.particular[j] = multi.particular.at(j, 0);
  }
  out.kernel = std::move(multi.kernel);
  return out;
}

MatrixFq sample_matrix(uint32_t q, size_t rows, size_t cols, SplitMix64& rng) {
  MatrixFq out(q, rows, cols);
  for (auto& e : out.entries) e = static_cast<uint8_t>(rng.below(q));
  return out;
}

MatrixFq sample_full_rank(uint32_t q, size_t rows, size_t cols, size_t target_rank,
                          SplitMix64& rng) {
  if (target_rank > std::min(rows, cols))
    throw std::invalid_argument("sample_full_rank: target rank too large");
  for (;;) {
    MatrixFq cand = sample_matrix(q, rows, cols, rng);
    if (rank(cand) == target_rank) return cand;
  }
}

}  // namespace bdlrpc
