#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace bdlrpc {

// Element of F_{q^m}: m residues mod q on the basis 1, alpha, ..., alpha^{m-1}.
// Plain data; all arithmetic lives on FieldContext.
struct FieldElement {
  std::vector<uint8_t> coords;

  bool is_zero() const {
    for (uint8_t c : coords)
      if (c) return false;
    return true;
  }
  bool operator==(const FieldElement&) const = default;
};

// Arithmetic context for F_q and its degree-m extension F_{q^m}.
//
// q must be prime (2..251) and 1 <= m <= 64. The modulus is the smallest
// monic irreducible of degree m over F_q, ordered by the integer value
// sum c_i q^i of the coefficient vector; irreducibility is verified by trial
// division against every monic polynomial of degree <= m/2, which costs
// ~q^(m/2) and is practical for q=2 up to m ~ 40. alpha is the residue class
// of the indeterminate, hence a root of the modulus of degree exactly m.
//
// Contexts are immutable and cached per (q, m): since the modulus is
// deterministic, two contexts with equal (q, m) are interchangeable.
class FieldContext {
 public:
  static std::shared_ptr<const FieldContext> make(uint32_t q, uint32_t m);

  uint32_t q() const { return q_; }
  uint32_t m() const { return m_; }
  // Little-endian coefficients, length m+1, leading coefficient 1.
  const std::vector<uint8_t>& modulus_poly() const { return modulus_; }

  FieldElement zero() const { return FieldElement{std::vector<uint8_t>(m_, 0)}; }
  FieldElement one() const;
  FieldElement alpha() const;
  FieldElement from_coords(std::vector<uint8_t> coords) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement inv(const FieldElement& a) const;  // throws std::domain_error on 0
  FieldElement pow(const FieldElement& a, int64_t e) const;
  FieldElement alpha_power(int64_t i) const;

  // Textual element format: little-endian coordinate digits, e.g. "101" is
  // 1 + alpha^2 for q=2, m=3. Digits 0-9a-z, so text I/O needs q <= 36.
  std::string to_string(const FieldElement& a) const;
  FieldElement from_string(const std::string& s) const;

  // Validates that `a` belongs to this context (length m, residues < q).
  void check(const FieldElement& a) const;

 private:
  FieldContext(uint32_t q, uint32_t m);

  uint32_t q_, m_;
  std::vector<uint8_t> modulus_;
  std::vector<uint8_t> inv_mod_q_;               // index 0 unused
  std::vector<std::vector<uint8_t>> reduction_;  // coords of alpha^(m+i)
  FieldElement alpha_inv_;                       // valid iff alpha_invertible_
  bool alpha_invertible_ = false;
};

bool is_prime(uint32_t n);

// Exposed for tests: the modulus-search primitive behind FieldContext::make.
std::vector<uint8_t> smallest_irreducible(uint32_t q, uint32_t m);
bool poly_is_irreducible(const std::vector<uint8_t>& f, uint32_t q);

}  // namespace bdlrpc
