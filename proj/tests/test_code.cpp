#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "bdlrpc/code.hpp"

using namespace bdlrpc;

namespace {

Word random_word(const FieldContext& ctx, size_t n, SplitMix64& rng) {
  Word w(n, ctx.zero());
  for (auto& e : w)
    for (auto& c : e.coords) c = uint8_t(rng.below(ctx.q()));
  return w;
}

bool parity_annihilates(const CodeInstance& inst, const Word& w) {
  return word_is_zero(syndrome(inst, w));
}

}  // namespace

TEST_CASE("instance invariants on a small code") {
  SplitMix64 rng(101);
  const CodeParams params{2, 12, 10, 5, 2};
  const CodeInstance inst = sample_code(params, rng);

  CHECK(inst.maximal_row_span);
  CHECK(inst.unique_decoding);
  CHECK(inst.generator_rows.size() == params.k);
  for (const auto& g : inst.generator_rows) CHECK(parity_annihilates(inst, g));

  // Entry span equals the bounded-degree space exactly.
  std::vector<FieldElement> entries;
  for (const auto& row : inst.parity_rows)
    entries.insert(entries.end(), row.begin(), row.end());
  CHECK(SubspaceFq::span(inst.ctx, entries) ==
        SubspaceFq::bounded_degree(inst.ctx, params.d));

  // Generator has full rank: k independent codewords.
  MatrixFq flat(params.q, params.k, params.n * params.m);
  for (uint32_t i = 0; i < params.k; ++i)
    for (uint32_t j = 0; j < params.n; ++j)
      for (uint32_t v = 0; v < params.m; ++v)
        flat.at(i, j * params.m + v) = inst.generator_rows[i][j].coords[v];
  CHECK(rank(flat) == params.k);
}

TEST_CASE("expanded parity matrix round-trips the coefficients") {
  SplitMix64 rng(7);
  const CodeParams params{2, 10, 8, 4, 2};
  const CodeInstance inst = sample_code(params, rng);
  const uint32_t nk = params.redundancy();
  CHECK(inst.h_ext.rows == size_t(nk) * params.d);
  CHECK(inst.h_ext.cols == params.n);
  for (uint32_t i = 0; i < nk; ++i)
    for (uint32_t j = 0; j < params.n; ++j) {
      std::vector<uint8_t> coords(params.m, 0);
      for (uint32_t v = 0; v < params.d; ++v) coords[v] = inst.h_ext.at(i * params.d + v, j);
      CHECK(inst.ctx->from_coords(coords) == inst.parity_rows[i][j]);
    }

  // Rebuilding from H reproduces it bit-exactly.
  CHECK(build_h_ext(*inst.ctx, inst.parity_rows, params.d) == inst.h_ext);

  // An entry outside the bounded-degree space is a consistency error.
  auto bad = inst.parity_rows;
  bad[0][0].coords[params.d] = 1;
  CHECK_THROWS_AS(build_h_ext(*inst.ctx, bad, params.d), std::invalid_argument);
}

TEST_CASE("d=1 expansion is H itself over the base field") {
  SplitMix64 rng(3);
  const CodeParams params{2, 8, 6, 3, 1};
  const CodeInstance inst = sample_code(params, rng, {true, false});
  CHECK(inst.maximal_row_span);  // every nonzero entry spans the d=1 line
  for (uint32_t i = 0; i < params.redundancy(); ++i)
    for (uint32_t j = 0; j < params.n; ++j)
      CHECK(inst.h_ext.at(i, j) == inst.parity_rows[i][j].coords[0]);
}

TEST_CASE("property checks react to planted defects") {
  SplitMix64 rng(19);
  const CodeParams params{2, 10, 8, 4, 2};
  CodeInstance inst = sample_code(params, rng);
  REQUIRE(check_maximal_row_span(inst));
  REQUIRE(check_unique_decoding(inst));

  // A row forced into the d-1 subspace breaks the row-span property.
  CodeInstance damaged = inst;
  for (auto& entry : damaged.parity_rows[0]) entry.coords[params.d - 1] = 0;
  CHECK_FALSE(check_maximal_row_span(damaged));

  // d < n/(n-k) fails the definitional gate regardless of the matrix.
  const CodeParams narrow{2, 10, 8, 6, 2};  // d=2 < n/(n-k) = 4
  CHECK_FALSE(narrow.unique_decoding_prereq());
  SplitMix64 rng2(23);
  const CodeInstance no_ud = sample_code(narrow, rng2, {false, false});
  CHECK_FALSE(check_unique_decoding(no_ud));
  CHECK_THROWS_AS(sample_code(narrow, rng2, {false, true}), std::invalid_argument);
}

TEST_CASE("syndrome: codewords vanish, errors shift linearly") {
  SplitMix64 rng(211);
  const CodeParams params{2, 12, 10, 5, 2};
  const CodeInstance inst = sample_code(params, rng);
  for (int it = 0; it < 30; ++it) {
    const Word msg = random_word(*inst.ctx, params.k, rng);
    const Word c = encode(inst, msg);
    CHECK(parity_annihilates(inst, c));

    const Word e = sample_error(inst.ctx, params.n, 2, rng);
    const Word y = word_add(*inst.ctx, c, e);
    CHECK(syndrome(inst, y) == syndrome(inst, e));

    const Word y2 = random_word(*inst.ctx, params.n, rng);
    CHECK(syndrome(inst, word_add(*inst.ctx, y, y2)) ==
          word_add(*inst.ctx, syndrome(inst, y), syndrome(inst, y2)));
  }
  CHECK_THROWS_AS(syndrome(inst, Word(3, inst.ctx->zero())), std::invalid_argument);
}

TEST_CASE("syndrome support sits inside the product space") {
  SplitMix64 rng(227);
  const CodeParams params{2, 12, 10, 5, 2};
  const CodeInstance inst = sample_code(params, rng);
  const SubspaceFq vd = SubspaceFq::bounded_degree(inst.ctx, params.d);
  for (int it = 0; it < 50; ++it) {
    const Word e = sample_error(inst.ctx, params.n, 2, rng);
    const SubspaceFq prod = product(vd, word_support(inst.ctx, e));
    for (const auto& s : syndrome(inst, e)) CHECK(prod.contains(s));
  }
}

TEST_CASE("sampled errors have exact rank and uniform line supports") {
  auto ctx = FieldContext::make(2, 3);
  SplitMix64 rng(31);
  CHECK(word_is_zero(sample_error(ctx, 5, 0, rng)));
  CHECK_THROWS_AS(sample_error(ctx, 5, 4, rng), std::invalid_argument);

  auto ctx12 = FieldContext::make(2, 12);
  for (uint32_t r = 0; r <= 4; ++r)
    for (int it = 0; it < 20; ++it)
      CHECK(word_support(ctx12, sample_error(ctx12, 8, r, rng)).dim() == r);

  // Support of rank-1 errors: uniform over the 7 lines of F_8.
  const int draws = 7000;
  std::map<std::vector<uint8_t>, int> hist;
  for (int it = 0; it < draws; ++it)
    ++hist[word_support(ctx, sample_error(ctx, 6, 1, rng)).basis().entries];
  CHECK(hist.size() == 7);
  const double mean = draws / 7.0;
  const double sigma = std::sqrt(draws * (1.0 / 7) * (6.0 / 7));
  for (const auto& [line, count] : hist)
    CHECK(std::abs(count - mean) <= 3 * sigma);
}

TEST_CASE("construction in the simulation regime") {
  SplitMix64 rng(4095);
  const CodeParams params{2, 37, 32, 16, 2};
  const CodeInstance inst = sample_code(params, rng);
  CHECK(inst.maximal_row_span);
  CHECK(inst.unique_decoding);
  CHECK(inst.h_ext.rows == 32);
  CHECK(inst.h_ext.cols == 32);
  CHECK(rank(inst.h_ext) == 32);
  const Word msg = random_word(*inst.ctx, params.k, rng);
  CHECK(parity_annihilates(inst, encode(inst, msg)));
}

TEST_CASE("construction failure reports the sticking predicate") {
  SplitMix64 rng(1);
  // d = m forces every entry to span at most the full field, but the
  // budget of one attempt makes failure overwhelmingly likely for the
  // entry-span equality at these sizes.
  const CodeParams params{2, 8, 4, 2, 8};
  try {
    (void)sample_code(params, rng, {true, false}, 1);
    // One lucky draw is possible; nothing to assert in that case.
  } catch (const ConstructionFailure& e) {
    CHECK(e.span_rejects + e.row_rank_rejects + e.row_span_rejects +
              e.unique_decoding_rejects ==
          1);
  }
}
