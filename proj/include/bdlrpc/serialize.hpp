#pragma once

#include <json.hpp>

#include <string>

#include "bdlrpc/code.hpp"
#include "bdlrpc/decoder.hpp"
#include "bdlrpc/montecarlo.hpp"
#include "bdlrpc/probability.hpp"

// JSON and CSV schemas; docs/formats.md is the authoritative description.

namespace bdlrpc {

nlohmann::json matrix_to_json(const MatrixFq& a);
MatrixFq matrix_from_json(const nlohmann::json& j);

nlohmann::json subspace_to_json(const SubspaceFq& s);
SubspaceFq subspace_from_json(std::shared_ptr<const FieldContext> ctx,
                              const nlohmann::json& j);

// Code instances persist as {params, modulus_poly, coefficient tensor of H,
// flags}; the generator and the expanded matrix are recomputed on load (both
// are deterministic functions of H).
nlohmann::json code_to_json(const CodeInstance& inst);
CodeInstance code_from_json(const nlohmann::json& j);

nlohmann::json outcome_to_json(const CodeInstance& inst, const DecodeOutcome& out);

nlohmann::json prob_to_json(const Prob& p);
nlohmann::json bound_to_json(const BoundValue& b);
nlohmann::json report_to_json(const ProbReport& rep);

nlohmann::json stats_to_json(const TrialStats& st);
// CSV columns: q,m,n,k,d,t,r,trials,successes,rate,ci_lo,ci_hi,
// fail_zero_support,fail_syndrome_decomp,fail_erasure,fail_verify,seed
std::string stats_csv_header();
std::string stats_csv_row(const TrialStats& st);

// RFC-4180 field quoting.
std::string csv_escape(const std::string& field);

}  // namespace bdlrpc
