#include "bdlrpc/code.hpp"

#include <sstream>
#include <utility>

namespace bdlrpc {

namespace {

// Reduced echelon form over F_{q^m}, in place; returns pivot columns.
std::vector<size_t> ext_reduce(const FieldContext& ctx, std::vector<Word>& rows) {
  std::vector<size_t> pivots;
  if (rows.empty()) return pivots;
  const size_t ncols = rows[0].size();
  size_t lead = 0;
  for (size_t col = 0; col < ncols && lead < rows.size(); ++col) {
    size_t piv = lead;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[lead]);
    const FieldElement scale = ctx.inv(rows[lead][col]);
    for (size_t j = col; j < ncols; ++j) rows[lead][j] = ctx.mul(scale, rows[lead][j]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == lead) continue;
      const FieldElement f = rows[i][col];
      if (f.is_zero()) continue;
      for (size_t j = col; j < ncols; ++j)
        rows[i][j] = ctx.sub(rows[i][j], ctx.mul(f, rows[lead][j]));
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

// Canonical basis of {x : M x^T = 0} over F_{q^m}.
std::vector<Word> ext_right_kernel(const FieldContext& ctx, std::vector<Word> rows,
                                   size_t ncols) {
  const auto pivots = ext_reduce(ctx, rows);
  std::vector<uint8_t> is_pivot(ncols, 0);
  for (size_t p : pivots) is_pivot[p] = 1;
  std::vector<Word> kernel;
  for (size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Word v(ncols, ctx.zero());
    v[f] = ctx.one();
    for (size_t p = 0; p < pivots.size(); ++p) v[pivots[p]] = ctx.neg(rows[p][f]);
    kernel.push_back(std::move(v));
  }
  ext_reduce(ctx, kernel);
  return kernel;
}

std::vector<FieldElement> all_entries(const std::vector<Word>& rows) {
  std::vector<FieldElement> out;
  for (const auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

}  // namespace

void CodeParams::validate() const {
  if (!is_prime(q)) throw std::invalid_argument("q must be prime");
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (!(0 < k && k < n)) throw std::invalid_argument("need 0 < k < n");
  if (!(1 <= d && d <= m)) throw std::invalid_argument("need 1 <= d <= m");
}

Word word_add(const FieldContext& ctx, const Word& a, const Word& b) {
  if (a.size() != b.size()) throw std::invalid_argument("word length mismatch");
  Word out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = ctx.add(a[i], b[i]);
  return out;
}

Word word_sub(const FieldContext& ctx, const Word& a, const Word& b) {
  if (a.size() != b.size()) throw std::invalid_argument("word length mismatch");
  Word out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = ctx.sub(a[i], b[i]);
  return out;
}

bool word_is_zero(const Word& w) {
  for (const auto& e : w)
    if (!e.is_zero()) return false;
  return true;
}

SubspaceFq word_support(std::shared_ptr<const FieldContext> ctx, const Word& w) {
  return SubspaceFq::span(std::move(ctx), w);
}

MatrixFq build_h_ext(const FieldContext& ctx, const std::vector<Word>& parity_rows,
                     uint32_t d) {
  const size_t nrows = parity_rows.size();
  const size_t n = nrows ? parity_rows[0].size() : 0;
  MatrixFq ext(ctx.q(), nrows * d, n);
  for (size_t i = 0; i < nrows; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const auto& coords = parity_rows[i][j].coords;
      for (size_t v = d; v < coords.size(); ++v)
        if (coords[v])
          throw std::invalid_argument("parity entry outside the bounded-degree space");
      for (uint32_t v = 0; v < d; ++v) ext.at(i * d + v, j) = coords[v];
    }
  }
  return ext;
}

bool check_maximal_row_span(const CodeInstance& inst) {
  const SubspaceFq vd = SubspaceFq::bounded_degree(inst.ctx, inst.params.d);
  for (const auto& row : inst.parity_rows)
    if (!(SubspaceFq::span(inst.ctx, row) == vd)) return false;
  return true;
}

bool check_unique_decoding(const CodeInstance& inst) {
  if (!inst.params.unique_decoding_prereq()) return false;
  return rank(inst.h_ext) == inst.params.n;
}

std::vector<Word> derive_generator(const CodeInstance& inst) {
  return ext_right_kernel(*inst.ctx, inst.parity_rows, inst.params.n);
}

Word syndrome(const CodeInstance& inst, const Word& y) {
  const auto& ctx = *inst.ctx;
  if (y.size() != inst.params.n) throw std::invalid_argument("word length mismatch");
  Word s(inst.params.redundancy(), ctx.zero());
  for (size_t i = 0; i < s.size(); ++i) {
    FieldElement acc = ctx.zero();
    for (size_t j = 0; j < y.size(); ++j)
      acc = ctx.add(acc, ctx.mul(y[j], inst.parity_rows[i][j]));
    s[i] = acc;
  }
  return s;
}

Word encode(const CodeInstance& inst, const Word& message) {
  const auto& ctx = *inst.ctx;
  if (message.size() != inst.params.k)
    throw std::invalid_argument("message length mismatch");
  Word c(inst.params.n, ctx.zero());
  for (size_t i = 0; i < message.size(); ++i) {
    if (message[i].is_zero()) continue;
    for (size_t j = 0; j < c.size(); ++j)
      c[j] = ctx.add(c[j], ctx.mul(message[i], inst.generator_rows[i][j]));
  }
  return c;
}

Word sample_error(std::shared_ptr<const FieldContext> ctx, uint32_t n, uint32_t r,
                  SplitMix64& rng) {
  if (r > std::min(n, ctx->m()))
    throw std::invalid_argument("error rank exceeds min(n, m)");
  Word e(n, ctx->zero());
  if (r == 0) return e;
  const auto support = SubspaceFq::random(ctx, r, rng).basis_elements();
  const MatrixFq coeff = sample_full_rank(ctx->q(), r, n, r, rng);
  for (uint32_t j = 0; j < n; ++j) {
    FieldElement acc = ctx->zero();
    for (uint32_t u = 0; u < r; ++u) {
      const uint8_t c = coeff.at(u, j);
      if (!c) continue;
      FieldElement scaled = support[u];
      for (auto& coord : scaled.coords)
        coord = static_cast<uint8_t>(coord * c % ctx->q());
      acc = ctx->add(acc, scaled);
    }
    e[j] = acc;
  }
  return e;
}

CodeInstance sample_code(const CodeParams& params, SplitMix64& rng,
                         CodeRequirements require, uint64_t retry_budget) {
  params.validate();
  if (require.unique_decoding && !params.unique_decoding_prereq())
    throw std::invalid_argument(
        "unique-decoding requirement needs d >= n/(n-k)");
  auto ctx = FieldContext::make(params.q, params.m);
  const SubspaceFq vd = SubspaceFq::bounded_degree(ctx, params.d);
  const uint32_t nk = params.redundancy();

  uint64_t span_rej = 0, row_rank_rej = 0, row_span_rej = 0, uniq_rej = 0;
  for (uint64_t attempt = 0; attempt < retry_budget; ++attempt) {
    CodeInstance inst;
    inst.params = params;
    inst.ctx = ctx;
    inst.parity_rows.assign(nk, Word(params.n, ctx->zero()));
    for (auto& row : inst.parity_rows)
      for (auto& entry : row)
        for (uint32_t v = 0; v < params.d; ++v)
          entry.coords[v] = static_cast<uint8_t>(rng.below(params.q));

    // The definitional span equality: entries generate all of the
    // bounded-degree space, not a proper subspace of it.
    if (!(SubspaceFq::span(ctx, all_entries(inst.parity_rows)) == vd)) {
      ++span_rej;
      continue;
    }
    // Full row rank over the extension field.
    {
      std::vector<Word> copy = inst.parity_rows;
      if (ext_reduce(*ctx, copy).size() != nk) {
        ++row_rank_rej;
        continue;
      }
    }
    inst.h_ext = build_h_ext(*ctx, inst.parity_rows, params.d);
    inst.maximal_row_span = check_maximal_row_span(inst);
    inst.unique_decoding = check_unique_decoding(inst);
    if (require.maximal_row_span && !inst.maximal_row_span) {
      ++row_span_rej;
      continue;
    }
    if (require.unique_decoding && !inst.unique_decoding) {
      ++uniq_rej;
      continue;
    }
    inst.generator_rows = derive_generator(inst);
    return inst;
  }

  std::ostringstream msg;
  msg << "code construction exhausted " << retry_budget << " attempts (rejects:"
      << " entry-span=" << span_rej << " row-rank=" << row_rank_rej
      << " row-span=" << row_span_rej << " unique-decoding=" << uniq_rej << ")";
  throw ConstructionFailure(msg.str(), span_rej, row_rank_rej, row_span_rej, uniq_rej);
}

}  // namespace bdlrpc
