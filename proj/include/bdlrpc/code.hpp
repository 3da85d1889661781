#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bdlrpc/field.hpp"
#include "bdlrpc/matrix.hpp"
#include "bdlrpc/rng.hpp"
#include "bdlrpc/subspace.hpp"

namespace bdlrpc {

// Length-n vector over F_{q^m}: codeword, error, received word or syndrome.
using Word = std::vector<FieldElement>;

Word word_add(const FieldContext& ctx, const Word& a, const Word& b);
Word word_sub(const FieldContext& ctx, const Word& a, const Word& b);
bool word_is_zero(const Word& w);
// supp(w): the F_q-span of the components; its dimension is rank(w).
SubspaceFq word_support(std::shared_ptr<const FieldContext> ctx, const Word& w);

struct CodeParams {
  uint32_t q = 2, m = 1, n = 2, k = 1, d = 1;

  uint32_t redundancy() const { return n - k; }
  // d >= n/(n-k), the definitional gate of the unique-decoding property.
  bool unique_decoding_prereq() const {
    return static_cast<uint64_t>(d) * (n - k) >= n;
  }
  void validate() const;  // throws std::invalid_argument
};

// A sampled code: parity-check matrix H whose entries span exactly the
// bounded-degree space of dimension d, its F_q expansion, a generator matrix,
// and truthfully recorded property flags. Immutable once constructed.
struct CodeInstance {
  CodeParams params;
  std::shared_ptr<const FieldContext> ctx;
  std::vector<Word> parity_rows;     // H: (n-k) rows of n elements
  MatrixFq h_ext;                    // (n-k)d x n over F_q
  std::vector<Word> generator_rows;  // G: k rows, G H^T = 0, rank k
  bool maximal_row_span = false;
  bool unique_decoding = false;
};

struct CodeRequirements {
  bool maximal_row_span = true;
  bool unique_decoding = true;
};

// Raised when the rejection sampler exhausts its retry budget; the counters
// say which predicate kept failing.
struct ConstructionFailure : std::runtime_error {
  ConstructionFailure(std::string msg, uint64_t span, uint64_t row_rank,
                      uint64_t row_span, uint64_t uniq)
      : std::runtime_error(std::move(msg)),
        span_rejects(span),
        row_rank_rejects(row_rank),
        row_span_rejects(row_span),
        unique_decoding_rejects(uniq) {}
  uint64_t span_rejects, row_rank_rejects, row_span_rejects, unique_decoding_rejects;
};

CodeInstance sample_code(const CodeParams& params, SplitMix64& rng,
                         CodeRequirements require = {}, uint64_t retry_budget = 1000);

// Stacks, per parity row, the d coefficient rows of its entries on the powers
// 1..alpha^(d-1). Throws std::invalid_argument if an entry falls outside the
// bounded-degree space.
MatrixFq build_h_ext(const FieldContext& ctx, const std::vector<Word>& parity_rows,
                     uint32_t d);

bool check_unique_decoding(const CodeInstance& inst);
bool check_maximal_row_span(const CodeInstance& inst);

// Canonical generator: reduced-echelon basis of the right kernel of H over
// F_{q^m}. Deterministic, so serialized instances recompute it on load.
std::vector<Word> derive_generator(const CodeInstance& inst);

// s = y H^T; zero exactly on codewords (H has full row rank).
Word syndrome(const CodeInstance& inst, const Word& y);

// Error of rank exactly r: uniform dim-r support basis times a uniform
// rank-r coefficient matrix.
Word sample_error(std::shared_ptr<const FieldContext> ctx, uint32_t n, uint32_t r,
                  SplitMix64& rng);

// Row-vector convention: codeword = message * G.
Word encode(const CodeInstance& inst, const Word& message);

}  // namespace bdlrpc
