#include "bdlrpc/subspace.hpp"

#include <stdexcept>
#include <utility>

namespace bdlrpc {

namespace {

// Drops zero rows of an rref matrix; the result is the canonical basis.
MatrixFq strip_zero_rows(const MatrixFq& a) {
  size_t nonzero = 0;
  for (size_t i = 0; i < a.rows; ++i) {
    bool z = true;
    for (size_t j = 0; j < a.cols; ++j)
      if (a.at(i, j)) {
        z = false;
        break;
      }
    if (!z) ++nonzero;
    else break;  // rref sorts zero rows to the bottom
  }
  MatrixFq out(a.q, nonzero, a.cols);
  std::copy(a.entries.begin(), a.entries.begin() + static_cast<long>(nonzero * a.cols),
            out.entries.begin());
  return out;
}

MatrixFq canonicalize(const MatrixFq& rows) { return strip_zero_rows(rref(rows).rref); }

void require_same_context(const SubspaceFq& a, const SubspaceFq& b) {
  if (!a.context() || !b.context() ||
      a.context()->q() != b.context()->q() || a.context()->m() != b.context()->m())
    throw std::invalid_argument("subspace operands from different field contexts");
}

}  // namespace

SubspaceFq SubspaceFq::zero(std::shared_ptr<const FieldContext> ctx) {
  MatrixFq empty(ctx->q(), 0, ctx->m());
  return SubspaceFq(std::move(ctx), std::move(empty));
}

SubspaceFq SubspaceFq::full(std::shared_ptr<const FieldContext> ctx) {
  MatrixFq id = MatrixFq::identity(ctx->q(), ctx->m());
  return SubspaceFq(std::move(ctx), std::move(id));
}

SubspaceFq SubspaceFq::from_rows(std::shared_ptr<const FieldContext> ctx,
                                 const MatrixFq& coeff_rows) {
  if (coeff_rows.cols != ctx->m() || coeff_rows.q != ctx->q())
    throw std::invalid_argument("coordinate rows do not match the field context");
  return SubspaceFq(std::move(ctx), canonicalize(coeff_rows));
}

SubspaceFq SubspaceFq::span(std::shared_ptr<const FieldContext> ctx,
                            std::span<const FieldElement> vectors) {
  MatrixFq rows(ctx->q(), vectors.size(), ctx->m());
  for (size_t i = 0; i < vectors.size(); ++i) {
    ctx->check(vectors[i]);
    for (size_t j = 0; j < ctx->m(); ++j) rows.at(i, j) = vectors[i].coords[j];
  }
  return SubspaceFq(std::move(ctx), canonicalize(rows));
}

SubspaceFq SubspaceFq::bounded_degree(std::shared_ptr<const FieldContext> ctx,
                                      uint32_t d) {
  if (d < 1 || d > ctx->m())
    throw std::invalid_argument("bounded degree must be in 1..m");
  // Powers alpha^0..alpha^(d-1) are basis vectors, so this is already
  // canonical; dimension is exactly d because alpha has degree m.
  MatrixFq rows(ctx->q(), d, ctx->m());
  for (uint32_t i = 0; i < d; ++i) rows.at(i, i) = 1;
  return SubspaceFq(std::move(ctx), std::move(rows));
}

SubspaceFq SubspaceFq::random(std::shared_ptr<const FieldContext> ctx, uint32_t r,
                              SplitMix64& rng) {
  if (r > ctx->m()) throw std::invalid_argument("subspace dimension exceeds m");
  if (r == 0) return zero(std::move(ctx));
  // Row space of a uniform rank-r matrix is uniform over dim-r subspaces.
  MatrixFq rows = sample_full_rank(ctx->q(), r, ctx->m(), r, rng);
  return SubspaceFq(std::move(ctx), canonicalize(rows));
}

std::vector<FieldElement> SubspaceFq::basis_elements() const {
  std::vector<FieldElement> out(basis_.rows);
  for (size_t i = 0; i < basis_.rows; ++i) {
    out[i].coords.assign(basis_.entries.begin() + static_cast<long>(i * basis_.cols),
                         basis_.entries.begin() + static_cast<long>((i + 1) * basis_.cols));
  }
  return out;
}

bool SubspaceFq::contains(const FieldElement& x) const {
  ctx_->check(x);
  if (x.is_zero()) return true;
  if (basis_.rows == 0) return false;
  MatrixFq stacked(basis_.q, basis_.rows + 1, basis_.cols);
  std::copy(basis_.entries.begin(), basis_.entries.end(), stacked.entries.begin());
  for (size_t j = 0; j < basis_.cols; ++j) stacked.at(basis_.rows, j) = x.coords[j];
  return rank(stacked) == basis_.rows;
}

bool SubspaceFq::operator==(const SubspaceFq& other) const {
  if (!ctx_ || !other.ctx_) return ctx_ == other.ctx_ && basis_ == other.basis_;
  return ctx_->q() == other.ctx_->q() && ctx_->m() == other.ctx_->m() &&
         basis_ == other.basis_;
}

SubspaceFq product(const SubspaceFq& e, const SubspaceFq& w) {
  require_same_context(e, w);
  const auto& ctx = *e.context();
  const auto eb = e.basis_elements();
  const auto wb = w.basis_elements();
  MatrixFq rows(ctx.q(), eb.size() * wb.size(), ctx.m());
  size_t idx = 0;
  for (const auto& be : eb)
    for (const auto& bw : wb) {
      const FieldElement p = ctx.mul(be, bw);
      for (size_t j = 0; j < ctx.m(); ++j) rows.at(idx, j) = p.coords[j];
      ++idx;
    }
  return SubspaceFq::from_rows(e.context(), rows);
}

SubspaceFq intersect(const SubspaceFq& u, const SubspaceFq& v) {
  require_same_context(u, v);
  const auto& ub = u.basis();
  const auto& vb = v.basis();
  const size_t m = ub.cols;
  MatrixFq block(ub.q, ub.rows + vb.rows, 2 * m);
  for (size_t i = 0; i < ub.rows; ++i)
    for (size_t j = 0; j < m; ++j) {
      block.at(i, j) = ub.at(i, j);
      block.at(i, m + j) = ub.at(i, j);
    }
  for (size_t i = 0; i < vb.rows; ++i)
    for (size_t j = 0; j < m; ++j) block.at(ub.rows + i, j) = vb.at(i, j);

  const RrefResult red = rref(block);
  // Rows whose left half vanished carry the intersection in the right half.
  MatrixFq inter(ub.q, 0, m);
  std::vector<uint8_t> rowbuf(m);
  for (size_t i = 0; i < red.rref.rows; ++i) {
    bool left_zero = true;
    for (size_t j = 0; j < m && left_zero; ++j) left_zero = red.rref.at(i, j) == 0;
    if (!left_zero) continue;
    bool right_zero = true;
    for (size_t j = 0; j < m; ++j) {
      rowbuf[j] = red.rref.at(i, m + j);
      if (rowbuf[j]) right_zero = false;
    }
    if (right_zero) continue;
    inter.entries.insert(inter.entries.end(), rowbuf.begin(), rowbuf.end());
    ++inter.rows;
  }
  return SubspaceFq::from_rows(u.context(), inter);
}

SubspaceFq sum(const SubspaceFq& u, const SubspaceFq& v) {
  require_same_context(u, v);
  return SubspaceFq::from_rows(u.context(), vstack(u.basis(), v.basis()));
}

SubspaceFq scalar_mul(const FieldElement& c, const SubspaceFq& u) {
  const auto& ctx = *u.context();
  ctx.check(c);
  if (c.is_zero()) throw std::invalid_argument("scalar_mul: zero scalar");
  const auto ub = u.basis_elements();
  MatrixFq rows(ctx.q(), ub.size(), ctx.m());
  for (size_t i = 0; i < ub.size(); ++i) {
    const FieldElement p = ctx.mul(c, ub[i]);
    for (size_t j = 0; j < ctx.m(); ++j) rows.at(i, j) = p.coords[j];
  }
  return SubspaceFq::from_rows(u.context(), rows);
}

}  // namespace bdlrpc
