#include "bdlrpc/field.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace bdlrpc {

namespace {

// Internal polynomials over F_q: little-endian coefficients, no trailing
// zeros (the zero polynomial is the empty vector).
using Poly = std::vector<uint8_t>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::vector<uint8_t> inverse_table(uint32_t q) {
  std::vector<uint8_t> inv(q, 0);
  for (uint32_t a = 1; a < q; ++a) {
    for (uint32_t b = 1; b < q; ++b) {
      if (a * b % q == 1) {
        inv[a] = static_cast<uint8_t>(b);
        break;
      }
    }
  }
  return inv;
}

// a mod b, b nonzero and normalized.
Poly poly_mod(Poly a, const Poly& b, uint32_t q, const std::vector<uint8_t>& inv) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  const uint32_t lead_inv = inv[b.back()];
  while (static_cast<int>(a.size()) - 1 >= db) {
    const uint32_t c = a.back() * lead_inv % q;
    const size_t shift = a.size() - 1 - db;
    for (int i = 0; i <= db; ++i) {
      uint32_t v = a[shift + i] + q - c * b[i] % q;
      a[shift + i] = static_cast<uint8_t>(v % q);
    }
    trim(a);
  }
  return a;
}

struct DivModResult {
  Poly quotient, remainder;
};

DivModResult poly_divmod(Poly a, const Poly& b, uint32_t q,
                         const std::vector<uint8_t>& inv) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  const uint32_t lead_inv = inv[b.back()];
  Poly quot;
  if (static_cast<int>(a.size()) - 1 >= db) quot.assign(a.size() - db, 0);
  while (static_cast<int>(a.size()) - 1 >= db) {
    const uint32_t c = a.back() * lead_inv % q;
    const size_t shift = a.size() - 1 - db;
    quot[shift] = static_cast<uint8_t>(c);
    for (int i = 0; i <= db; ++i) {
      uint32_t v = a[shift + i] + q - c * b[i] % q;
      a[shift + i] = static_cast<uint8_t>(v % q);
    }
    trim(a);
  }
  trim(quot);
  return {std::move(quot), std::move(a)};
}

Poly poly_mul(const Poly& a, const Poly& b, uint32_t q) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> conv(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) conv[i + j] += a[i] * b[j];
  Poly out(conv.size());
  for (size_t i = 0; i < conv.size(); ++i) out[i] = static_cast<uint8_t>(conv[i] % q);
  trim(out);
  return out;
}

Poly poly_sub(const Poly& a, const Poly& b, uint32_t q) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < out.size(); ++i) {
    uint32_t av = i < a.size() ? a[i] : 0;
    uint32_t bv = i < b.size() ? b[i] : 0;
    out[i] = static_cast<uint8_t>((av + q - bv) % q);
  }
  trim(out);
  return out;
}

}  // namespace

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

bool poly_is_irreducible(const std::vector<uint8_t>& f, uint32_t q) {
  Poly g;
  Poly cand = f;
  trim(cand);
  const int m = static_cast<int>(cand.size()) - 1;
  if (m <= 0) return false;
  if (m == 1) return true;
  const auto inv = inverse_table(q);
  // A reducible polynomial has an irreducible factor of degree <= m/2, which
  // appears among the monic polynomials enumerated here.
  for (int dd = 1; dd <= m / 2; ++dd) {
    g.assign(dd + 1, 0);
    g[dd] = 1;
    for (;;) {
      if (poly_mod(cand, g, q, inv).empty()) return false;
      int pos = 0;
      while (pos < dd && g[pos] == q - 1) g[pos++] = 0;
      if (pos == dd) break;
      ++g[pos];
    }
  }
  return true;
}

std::vector<uint8_t> smallest_irreducible(uint32_t q, uint32_t m) {
  // Candidates ordered by the integer value sum c_i q^i of the coefficient
  // vector (c_0 least significant), leading coefficient pinned to 1.
  Poly f(m + 1, 0);
  f[m] = 1;
  for (;;) {
    if (poly_is_irreducible(f, q)) return f;
    uint32_t pos = 0;
    while (pos < m && f[pos] == q - 1) f[pos++] = 0;
    if (pos == m) throw std::logic_error("no monic irreducible of requested degree");
    ++f[pos];
  }
}

FieldContext::FieldContext(uint32_t q, uint32_t m) : q_(q), m_(m) {
  inv_mod_q_ = inverse_table(q);
  modulus_ = smallest_irreducible(q, m);
  // Reduction rows: coords of alpha^(m+i) for i = 0..m-2. alpha^m folds to
  // -(f_0 + ... + f_{m-1} alpha^{m-1}); higher powers shift and fold again.
  if (m >= 2) {
    reduction_.resize(m - 1);
    std::vector<uint8_t> cur(m);
    for (uint32_t j = 0; j < m; ++j)
      cur[j] = static_cast<uint8_t>((q - modulus_[j]) % q);
    reduction_[0] = cur;
    for (uint32_t i = 1; i + 1 < m; ++i) {
      std::vector<uint8_t> next(m, 0);
      const uint32_t overflow = cur[m - 1];
      for (uint32_t j = m - 1; j >= 1; --j) next[j] = cur[j - 1];
      next[0] = 0;
      if (overflow) {
        for (uint32_t j = 0; j < m; ++j)
          next[j] = static_cast<uint8_t>((next[j] + overflow * reduction_[0][j]) % q);
      }
      reduction_[i] = next;
      cur = std::move(next);
    }
  }
  FieldElement a = alpha();
  if (!a.is_zero()) {
    alpha_inv_ = inv(a);
    alpha_invertible_ = true;
  }
}

std::shared_ptr<const FieldContext> FieldContext::make(uint32_t q, uint32_t m) {
  if (!is_prime(q) || q > 251)
    throw std::invalid_argument("field base must be a prime <= 251");
  if (m < 1 || m > 64)
    throw std::invalid_argument("extension degree must be in 1..64");

  static std::mutex mu;
  static std::map<std::pair<uint32_t, uint32_t>, std::shared_ptr<const FieldContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{q, m}];
  if (!slot) slot = std::shared_ptr<const FieldContext>(new FieldContext(q, m));
  return slot;
}

FieldElement FieldContext::one() const {
  FieldElement e = zero();
  e.coords[0] = 1;
  return e;
}

FieldElement FieldContext::alpha() const {
  FieldElement e = zero();
  if (m_ >= 2) {
    e.coords[1] = 1;
  } else {
    // Degree-1 extension: alpha is the residue of x mod the linear modulus,
    // i.e. -f_0.
    e.coords[0] = static_cast<uint8_t>((q_ - modulus_[0]) % q_);
  }
  return e;
}

FieldElement FieldContext::from_coords(std::vector<uint8_t> coords) const {
  FieldElement e{std::move(coords)};
  check(e);
  return e;
}

void FieldContext::check(const FieldElement& a) const {
  if (a.coords.size() != m_)
    throw std::invalid_argument("field element does not belong to this context");
  for (uint8_t c : a.coords)
    if (c >= q_)
      throw std::invalid_argument("field element coordinate out of range");
}

FieldElement FieldContext::add(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  FieldElement out = zero();
  for (uint32_t i = 0; i < m_; ++i)
    out.coords[i] = static_cast<uint8_t>((a.coords[i] + b.coords[i]) % q_);
  return out;
}

FieldElement FieldContext::sub(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  FieldElement out = zero();
  for (uint32_t i = 0; i < m_; ++i)
    out.coords[i] = static_cast<uint8_t>((a.coords[i] + q_ - b.coords[i]) % q_);
  return out;
}

FieldElement FieldContext::neg(const FieldElement& a) const {
  check(a);
  FieldElement out = zero();
  for (uint32_t i = 0; i < m_; ++i)
    out.coords[i] = static_cast<uint8_t>((q_ - a.coords[i]) % q_);
  return out;
}

FieldElement FieldContext::mul(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  std::vector<uint32_t> conv(2 * m_ - 1, 0);
  for (uint32_t i = 0; i < m_; ++i) {
    if (!a.coords[i]) continue;
    const uint32_t ai = a.coords[i];
    for (uint32_t j = 0; j < m_; ++j) conv[i + j] += ai * b.coords[j];
  }
  std::vector<uint32_t> acc(m_, 0);
  for (uint32_t i = 0; i < m_; ++i) acc[i] = conv[i] % q_;
  for (uint32_t i = m_; i < 2 * m_ - 1; ++i) {
    const uint32_t c = conv[i] % q_;
    if (!c) continue;
    const auto& red = reduction_[i - m_];
    for (uint32_t j = 0; j < m_; ++j) acc[j] += c * red[j];
  }
  FieldElement out = zero();
  for (uint32_t i = 0; i < m_; ++i) out.coords[i] = static_cast<uint8_t>(acc[i] % q_);
  return out;
}

FieldElement FieldContext::inv(const FieldElement& a) const {
  check(a);
  if (a.is_zero()) throw std::domain_error("division by zero in field inversion");
  // Extended Euclid on (modulus, a): maintains s with s*a = r (mod modulus).
  Poly r0 = modulus_, r1(a.coords);
  trim(r1);
  Poly s0, s1{1};
  while (!r1.empty()) {
    auto dm = poly_divmod(r0, r1, q_, inv_mod_q_);
    Poly s2 = poly_sub(s0, poly_mul(dm.quotient, s1, q_), q_);
    r0 = std::move(r1);
    r1 = std::move(dm.remainder);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 = gcd = nonzero constant (modulus irreducible, a nonzero); the Bezout
  // coefficient has degree below m.
  assert(s0.size() <= m_);
  const uint32_t scale = inv_mod_q_[r0[0]];
  FieldElement out = zero();
  for (size_t i = 0; i < s0.size(); ++i)
    out.coords[i] = static_cast<uint8_t>(s0[i] * scale % q_);
  return out;
}

FieldElement FieldContext::pow(const FieldElement& a, int64_t e) const {
  check(a);
  FieldElement base = a;
  if (e < 0) {
    base = inv(a);
    e = -e;
  }
  FieldElement acc = one();
  uint64_t exp = static_cast<uint64_t>(e);
  while (exp) {
    if (exp & 1) acc = mul(acc, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return acc;
}

FieldElement FieldContext::alpha_power(int64_t i) const {
  if (i >= 0 && static_cast<uint64_t>(i) < m_) {
    // Positive powers below m are basis vectors.
    FieldElement e = zero();
    e.coords[static_cast<size_t>(i)] = 1;
    return e;
  }
  if (i == -1 && alpha_invertible_) return alpha_inv_;
  return pow(alpha(), i);
}

namespace {
constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
}

std::string FieldContext::to_string(const FieldElement& a) const {
  check(a);
  if (q_ > 36) throw std::domain_error("textual element format requires q <= 36");
  std::string s(m_, '0');
  for (uint32_t i = 0; i < m_; ++i) s[i] = kDigits[a.coords[i]];
  return s;
}

FieldElement FieldContext::from_string(const std::string& s) const {
  if (q_ > 36) throw std::domain_error("textual element format requires q <= 36");
  if (s.size() != m_)
    throw std::invalid_argument("element string must have exactly m digits");
  FieldElement e = zero();
  for (uint32_t i = 0; i < m_; ++i) {
    const char* pos = std::char_traits<char>::find(kDigits, 36, s[i]);
    if (!pos || static_cast<uint32_t>(pos - kDigits) >= q_)
      throw std::invalid_argument("element string digit out of range");
    e.coords[i] = static_cast<uint8_t>(pos - kDigits);
  }
  return e;
}

}  // namespace bdlrpc
