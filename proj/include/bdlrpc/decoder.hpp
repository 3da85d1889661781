#pragma once

#include <cstdint>

#include "bdlrpc/code.hpp"
#include "bdlrpc/subspace.hpp"

namespace bdlrpc {

struct DecoderConfig {
  uint32_t t = 2;            // syndrome-support expansion parameter, >= 1
  bool verify_final = true;  // re-check (y-e)H^T = 0 before reporting success
};

// ceil(r(d-1)/u) + 1 with u = n-k-r: the t that in practice puts the
// first-phase success probability near its optimum. Helper only; any t >= 1
// is accepted by decode.
uint32_t recommended_t(const CodeParams& params, uint32_t r);

enum class DecodeStage {
  zero_support,           // support cascade collapsed to {0}
  syndrome_decomposition, // syndrome coordinates not expressible over the basis products
  erasure_system,         // expanded parity system inconsistent
  verification,           // candidate error failed the final syndrome check
};
const char* stage_label(DecodeStage s);

struct DecodeOutcome {
  bool success = false;
  DecodeStage stage = DecodeStage::zero_support;  // meaningful when !success
  Word codeword;         // y - e, set on success
  Word error;            // set on success
  SubspaceFq support;    // recovered error support (zero subspace on failure)
};

// Product with the bounded-degree space of dimension t; contains S.
SubspaceFq expand_syndrome_support(const SubspaceFq& s, uint32_t t);

// Applies F <- (alpha^-1 F) ∩ F exactly `steps` times. May legitimately
// return the zero subspace; the caller treats that as failure.
SubspaceFq recover_support(SubspaceFq f, uint32_t steps);

struct ErasureResult {
  bool ok = false;
  Word error;
  DecodeStage fail_stage = DecodeStage::syndrome_decomposition;
};

// Recovers the unique error with supp(e) ⊆ support and e H^T = s, when it
// exists: first decomposes each syndrome coordinate over the products
// (basis element * alpha^v), then solves the expanded parity system per
// support coordinate, one elimination each.
ErasureResult erasure_decode(const CodeInstance& inst, const SubspaceFq& support,
                             const Word& syn);

DecodeOutcome decode(const CodeInstance& inst, const Word& y,
                     const DecoderConfig& cfg = {});

}  // namespace bdlrpc
