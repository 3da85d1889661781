#pragma once

#include <memory>
#include <span>
#include <vector>

#include "bdlrpc/field.hpp"
#include "bdlrpc/matrix.hpp"
#include "bdlrpc/rng.hpp"

namespace bdlrpc {

// F_q-subspace of F_{q^m} in canonical form: the basis matrix (rows =
// coordinate vectors of basis elements) is in reduced row-echelon form with
// no zero rows, so two subspaces are equal iff their basis matrices are
// identical.
class SubspaceFq {
 public:
  SubspaceFq() = default;

  static SubspaceFq zero(std::shared_ptr<const FieldContext> ctx);
  static SubspaceFq full(std::shared_ptr<const FieldContext> ctx);
  static SubspaceFq span(std::shared_ptr<const FieldContext> ctx,
                         std::span<const FieldElement> vectors);
  // Span of the rows of `coeff_rows` read as coordinate vectors (cols == m).
  static SubspaceFq from_rows(std::shared_ptr<const FieldContext> ctx,
                              const MatrixFq& coeff_rows);
  // V generated by 1, alpha, ..., alpha^(d-1); dimension exactly d.
  static SubspaceFq bounded_degree(std::shared_ptr<const FieldContext> ctx, uint32_t d);
  // Uniform over the dim-r subspaces: row space of a uniform rank-r matrix.
  static SubspaceFq random(std::shared_ptr<const FieldContext> ctx, uint32_t r,
                           SplitMix64& rng);

  const std::shared_ptr<const FieldContext>& context() const { return ctx_; }
  size_t dim() const { return basis_.rows; }
  const MatrixFq& basis() const { return basis_; }
  std::vector<FieldElement> basis_elements() const;

  bool contains(const FieldElement& x) const;
  bool operator==(const SubspaceFq& other) const;

 private:
  SubspaceFq(std::shared_ptr<const FieldContext> ctx, MatrixFq canonical_basis)
      : ctx_(std::move(ctx)), basis_(std::move(canonical_basis)) {}

  std::shared_ptr<const FieldContext> ctx_;
  MatrixFq basis_;  // rref, no zero rows, cols == m
};

// Span of all pairwise products {e*w}; dim <= dim(E)*dim(W).
SubspaceFq product(const SubspaceFq& e, const SubspaceFq& w);
// Zassenhaus: one elimination on the [U U; V 0] block matrix yields both the
// sum (left halves) and the intersection (right halves of zero-left rows).
SubspaceFq intersect(const SubspaceFq& u, const SubspaceFq& v);
SubspaceFq sum(const SubspaceFq& u, const SubspaceFq& v);
// {c*u : u in U}; c must be nonzero so the dimension is preserved.
SubspaceFq scalar_mul(const FieldElement& c, const SubspaceFq& u);

}  // namespace bdlrpc
