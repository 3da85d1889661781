#include "bdlrpc/decoder.hpp"

#include <stdexcept>

namespace bdlrpc {

uint32_t recommended_t(const CodeParams& params, uint32_t r) {
  const int64_t u = static_cast<int64_t>(params.n) - params.k - r;
  if (u <= 0) throw std::invalid_argument("recommended_t needs n-k-r > 0");
  const uint64_t num = static_cast<uint64_t>(r) * (params.d - 1);
  return static_cast<uint32_t>((num + u - 1) / static_cast<uint64_t>(u)) + 1;
}

const char* stage_label(DecodeStage s) {
  switch (s) {
    case DecodeStage::zero_support: return "zero-support";
    case DecodeStage::syndrome_decomposition: return "syndrome-decomposition";
    case DecodeStage::erasure_system: return "erasure-system";
    case DecodeStage::verification: return "verification";
  }
  return "?";
}

SubspaceFq expand_syndrome_support(const SubspaceFq& s, uint32_t t) {
  if (t < 1) throw std::invalid_argument("expansion parameter must be >= 1");
  return product(SubspaceFq::bounded_degree(s.context(), t), s);
}

SubspaceFq recover_support(SubspaceFq f, uint32_t steps) {
  if (steps == 0) return f;
  const FieldElement alpha_inv = f.context()->alpha_power(-1);
  for (uint32_t i = 0; i < steps; ++i)
    f = intersect(scalar_mul(alpha_inv, f), f);
  return f;
}

ErasureResult erasure_decode(const CodeInstance& inst, const SubspaceFq& support,
                             const Word& syn) {
  const auto& ctx = *inst.ctx;
  const uint32_t n = inst.params.n, nk = inst.params.redundancy(), d = inst.params.d;
  const uint32_t m = inst.params.m, q = inst.params.q;
  if (syn.size() != nk) throw std::invalid_argument("syndrome length mismatch");

  const size_t r = support.dim();
  if (r == 0) {
    // Degenerate: only the zero error has support in {0}.
    if (word_is_zero(syn)) return {true, Word(n, ctx.zero()), DecodeStage::zero_support};
    return {false, {}, DecodeStage::syndrome_decomposition};
  }
  const auto eps = support.basis_elements();

  // Decompose every syndrome coordinate over the dr products eps_u alpha^v:
  // one elimination, the coefficient matrix is shared across coordinates.
  MatrixFq prod_coords(q, m, r * d);
  for (size_t u = 0; u < r; ++u) {
    FieldElement cur = eps[u];
    for (uint32_t v = 0; v < d; ++v) {
      for (uint32_t row = 0; row < m; ++row) prod_coords.at(row, u * d + v) = cur.coords[row];
      if (v + 1 < d) cur = ctx.mul(cur, ctx.alpha());
    }
  }
  MatrixFq syn_coords(q, m, nk);
  for (uint32_t i = 0; i < nk; ++i)
    for (uint32_t row = 0; row < m; ++row) syn_coords.at(row, i) = syn[i].coords[row];

  const MultiSolveResult decomp = solve_multi(prod_coords, syn_coords);
  for (uint32_t i = 0; i < nk; ++i)
    if (!decomp.consistent[i]) return {false, {}, DecodeStage::syndrome_decomposition};

  // Expanded parity system, one right-hand side per support coordinate.
  MatrixFq rhs(q, nk * d, r);
  for (uint32_t i = 0; i < nk; ++i)
    for (size_t u = 0; u < r; ++u)
      for (uint32_t v = 0; v < d; ++v)
        rhs.at(i * d + v, u) = decomp.particular.at(u * d + v, i);

  const MultiSolveResult coeffs = solve_multi(inst.h_ext, rhs);
  for (size_t u = 0; u < r; ++u)
    if (!coeffs.consistent[u]) return {false, {}, DecodeStage::erasure_system};

  Word e(n, ctx.zero());
  for (uint32_t i = 0; i < n; ++i) {
    FieldElement acc = ctx.zero();
    for (size_t u = 0; u < r; ++u) {
      const uint8_t c = coeffs.particular.at(i, u);
      if (!c) continue;
      FieldElement scaled = eps[u];
      for (auto& coord : scaled.coords) coord = static_cast<uint8_t>(coord * c % q);
      acc = ctx.add(acc, scaled);
    }
    e[i] = acc;
  }
  return {true, std::move(e), DecodeStage::verification};
}

DecodeOutcome decode(const CodeInstance& inst, const Word& y, const DecoderConfig& cfg) {
  if (cfg.t < 1) throw std::invalid_argument("expansion parameter must be >= 1");
  const auto& ctx = *inst.ctx;

  DecodeOutcome out;
  out.support = SubspaceFq::zero(inst.ctx);

  const Word s = syndrome(inst, y);
  if (word_is_zero(s)) {
    out.success = true;
    out.codeword = y;
    out.error = Word(y.size(), ctx.zero());
    return out;
  }

  const SubspaceFq syn_support = word_support(inst.ctx, s);
  SubspaceFq f = expand_syndrome_support(syn_support, cfg.t);
  f = recover_support(std::move(f), inst.params.d + cfg.t - 2);
  if (f.dim() == 0) {
    out.stage = DecodeStage::zero_support;
    return out;
  }
  out.support = f;

  ErasureResult er = erasure_decode(inst, f, s);
  if (!er.ok) {
    out.stage = er.fail_stage;
    return out;
  }

  if (cfg.verify_final && !word_is_zero(syndrome(inst, word_sub(ctx, y, er.error)))) {
    out.stage = DecodeStage::verification;
    return out;
  }
  out.success = true;
  out.error = std::move(er.error);
  out.codeword = word_sub(ctx, y, out.error);
  return out;
}

}  // namespace bdlrpc
