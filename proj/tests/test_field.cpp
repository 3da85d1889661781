#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bdlrpc/field.hpp"
#include "bdlrpc/rng.hpp"

using namespace bdlrpc;

namespace {

// Test-side polynomial oracle over F_q, independent of the library's
// reduction code: plain long division on little-endian coefficient vectors.
using Poly = std::vector<uint8_t>;

void otrim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

uint32_t oinv(uint32_t a, uint32_t q) {
  for (uint32_t b = 1; b < q; ++b)
    if (a * b % q == 1) return b;
  return 0;
}

Poly oracle_mod(Poly a, const Poly& b, uint32_t q) {
  otrim(a);
  const int db = int(b.size()) - 1;
  while (int(a.size()) - 1 >= db) {
    const uint32_t c = a.back() * oinv(b.back(), q) % q;
    const size_t shift = a.size() - 1 - db;
    for (int i = 0; i <= db; ++i)
      a[shift + i] = uint8_t((a[shift + i] + q - c * b[i] % q) % q);
    otrim(a);
  }
  return a;
}

Poly oracle_mulmod(const Poly& a, const Poly& b, const Poly& mod, uint32_t q) {
  Poly conv(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      conv[i + j] = uint8_t((conv[i + j] + a[i] * b[j]) % q);
  return oracle_mod(conv, mod, q);
}

// Irreducibility by exhaustive factor search over all monic divisor degrees.
bool oracle_irreducible(const Poly& f, uint32_t q) {
  const int m = int(f.size()) - 1;
  if (m == 1) return true;
  for (int dd = 1; dd <= m / 2; ++dd) {
    Poly g(dd + 1, 0);
    g[dd] = 1;
    for (;;) {
      if (oracle_mod(f, g, q).empty()) return false;
      int pos = 0;
      while (pos < dd && g[pos] == q - 1) g[pos++] = 0;
      if (pos == dd) break;
      ++g[pos];
    }
  }
  return true;
}

FieldElement random_element(const FieldContext& ctx, SplitMix64& rng) {
  std::vector<uint8_t> coords(ctx.m());
  for (auto& c : coords) c = uint8_t(rng.below(ctx.q()));
  return ctx.from_coords(std::move(coords));
}

}  // namespace

TEST_CASE("modulus for q=2 m=3 is the enumerated smallest irreducible") {
  // Enumerate all 8 monic cubics over F_2 in integer order and take the
  // first irreducible one with the oracle.
  Poly expected;
  for (uint32_t v = 0; v < 8 && expected.empty(); ++v) {
    Poly f = {uint8_t(v & 1), uint8_t((v >> 1) & 1), uint8_t((v >> 2) & 1), 1};
    if (oracle_irreducible(f, 2)) expected = f;
  }
  CHECK(expected == Poly{1, 1, 0, 1});  // x^3 + x + 1
  auto ctx = FieldContext::make(2, 3);
  CHECK(ctx->modulus_poly() == expected);
}

TEST_CASE("degree-1 extension is the base field") {
  auto ctx = FieldContext::make(2, 1);
  const auto& mod = ctx->modulus_poly();
  REQUIRE(mod.size() == 2);
  CHECK(mod[1] == 1);  // monic linear: x or x+1
  CHECK(ctx->one().coords == std::vector<uint8_t>{1});
}

TEST_CASE("non-prime base is rejected") {
  CHECK_THROWS_AS(FieldContext::make(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(FieldContext::make(2, 0), std::invalid_argument);
}

TEST_CASE("smallest irreducible matches oracle for small degrees") {
  for (uint32_t q : {2u, 3u, 5u}) {
    for (uint32_t m = 1; m <= 6; ++m) {
      const auto lib = smallest_irreducible(q, m);
      // Walk candidates in integer order with the oracle.
      Poly f(m + 1, 0);
      f[m] = 1;
      while (!oracle_irreducible(f, q)) {
        uint32_t pos = 0;
        while (pos < m && f[pos] == q - 1) f[pos++] = 0;
        REQUIRE(pos < m);
        ++f[pos];
      }
      CHECK(lib == f);
    }
  }
}

TEST_CASE("large modulus is verified by an independent squaring test") {
  // For prime m, f of degree m over F_2 is irreducible iff x^(2^m) == x
  // mod f and gcd(x^2 - x, f) behaves trivially; the latter is just "no
  // F_2 roots", checked directly.
  auto ctx = FieldContext::make(2, 37);
  const auto& f = ctx->modulus_poly();
  REQUIRE(f.size() == 38);
  CHECK(f[0] == 1);  // no root at 0
  uint32_t parity = 0;
  for (uint8_t c : f) parity ^= c;
  CHECK(parity == 1);  // no root at 1
  Poly x = {0, 1};
  Poly acc = x;
  for (int i = 0; i < 37; ++i) acc = oracle_mulmod(acc, acc, f, 2);
  CHECK(acc == x);  // x^(2^37) == x mod f

  auto again = FieldContext::make(2, 37);
  CHECK(again->modulus_poly() == f);  // deterministic across calls
}

TEST_CASE("hand-reduced product in F_8") {
  auto ctx = FieldContext::make(2, 3);
  const FieldElement a2 = ctx->alpha_power(2);
  // alpha^4 mod (x^3+x+1): oracle long division of x^4.
  Poly x4 = {0, 0, 0, 0, 1};
  const Poly red = oracle_mod(x4, ctx->modulus_poly(), 2);
  CHECK(red == Poly{0, 1, 1});  // alpha^2 + alpha
  CHECK(ctx->mul(a2, a2).coords == std::vector<uint8_t>{0, 1, 1});
}

TEST_CASE("multiplicative identities on random elements") {
  auto ctx = FieldContext::make(2, 11);
  SplitMix64 rng(7);
  for (int it = 0; it < 200; ++it) {
    const FieldElement a = random_element(*ctx, rng);
    CHECK(ctx->mul(a, ctx->one()) == a);
    if (!a.is_zero()) CHECK(ctx->mul(a, ctx->inv(a)) == ctx->one());
  }
  CHECK_THROWS_AS(ctx->inv(ctx->zero()), std::domain_error);
}

TEST_CASE("field axioms hold on sampled triples") {
  for (uint32_t q : {2u, 3u, 7u}) {
    auto ctx = FieldContext::make(q, 5);
    SplitMix64 rng(q * 1000 + 1);
    for (int it = 0; it < 1000; ++it) {
      const FieldElement a = random_element(*ctx, rng);
      const FieldElement b = random_element(*ctx, rng);
      const FieldElement c = random_element(*ctx, rng);
      CHECK(ctx->add(a, b) == ctx->add(b, a));
      CHECK(ctx->mul(a, b) == ctx->mul(b, a));
      CHECK(ctx->mul(a, ctx->mul(b, c)) == ctx->mul(ctx->mul(a, b), c));
      CHECK(ctx->add(a, ctx->add(b, c)) == ctx->add(ctx->add(a, b), c));
      CHECK(ctx->mul(a, ctx->add(b, c)) == ctx->add(ctx->mul(a, b), ctx->mul(a, c)));
      CHECK(ctx->sub(ctx->add(a, b), b) == a);
    }
  }
}

TEST_CASE("coordinate round-trip and alpha powers") {
  auto ctx = FieldContext::make(3, 4);
  SplitMix64 rng(99);
  for (int it = 0; it < 100; ++it) {
    const FieldElement a = random_element(*ctx, rng);
    CHECK(ctx->from_coords(a.coords) == a);
  }
  CHECK(ctx->alpha_power(0) == ctx->one());
  CHECK(ctx->alpha_power(1) == ctx->alpha());
  CHECK(ctx->mul(ctx->alpha_power(-1), ctx->alpha_power(1)) == ctx->one());
  CHECK(ctx->alpha_power(7) == ctx->pow(ctx->alpha(), 7));
}

TEST_CASE("multiplication by alpha is an invertible linear map") {
  auto ctx = FieldContext::make(2, 8);
  const uint32_t m = ctx->m();
  // Columns: coords of alpha * alpha^i.
  std::vector<std::vector<uint8_t>> cols;
  for (uint32_t i = 0; i < m; ++i)
    cols.push_back(ctx->mul(ctx->alpha(), ctx->alpha_power(i)).coords);
  // Invertible iff alpha^1..alpha^m are linearly independent: test via the
  // library-free route of checking distinct nonzero preimages... simplest
  // honest check: the map has an inverse map given by alpha^-1.
  SplitMix64 rng(3);
  for (int it = 0; it < 100; ++it) {
    const FieldElement a = random_element(*ctx, rng);
    CHECK(ctx->mul(ctx->alpha_power(-1), ctx->mul(ctx->alpha(), a)) == a);
  }
}

TEST_CASE("textual element format") {
  auto ctx = FieldContext::make(2, 3);
  const FieldElement e = ctx->from_string("101");  // 1 + alpha^2
  CHECK(e.coords == std::vector<uint8_t>{1, 0, 1});
  CHECK(ctx->to_string(e) == "101");
  CHECK_THROWS_AS(ctx->from_string("12"), std::invalid_argument);
  CHECK_THROWS_AS(ctx->from_string("121"), std::invalid_argument);

  auto ctx3 = FieldContext::make(3, 2);
  CHECK(ctx3->to_string(ctx3->from_string("21")) == "21");
}

TEST_CASE("context membership is enforced") {
  auto f8 = FieldContext::make(2, 3);
  auto f16 = FieldContext::make(2, 4);
  CHECK_THROWS_AS(f8->add(f8->one(), f16->one()), std::invalid_argument);
}
