#include "bdlrpc/serialize.hpp"

#include <cstdio>
#include <stdexcept>

namespace bdlrpc {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json word_to_json(const FieldContext& ctx, const Word& w) {
  json arr = json::array();
  for (const auto& e : w) arr.push_back(ctx.to_string(e));
  return arr;
}

}  // namespace

json matrix_to_json(const MatrixFq& a) {
  return json{{"q", a.q},
              {"rows", a.rows},
              {"cols", a.cols},
              {"entries", a.entries}};
}

MatrixFq matrix_from_json(const json& j) {
  MatrixFq a(j.at("q").get<uint32_t>(), j.at("rows").get<size_t>(),
             j.at("cols").get<size_t>());
  const auto entries = j.at("entries").get<std::vector<uint8_t>>();
  if (entries.size() != a.rows * a.cols)
    throw std::invalid_argument("matrix entries length mismatch");
  for (uint8_t e : entries)
    if (e >= a.q) throw std::invalid_argument("matrix entry out of range");
  a.entries = entries;
  return a;
}

json subspace_to_json(const SubspaceFq& s) { return matrix_to_json(s.basis()); }

SubspaceFq subspace_from_json(std::shared_ptr<const FieldContext> ctx, const json& j) {
  return SubspaceFq::from_rows(std::move(ctx), matrix_from_json(j));
}

json code_to_json(const CodeInstance& inst) {
  const auto& p = inst.params;
  json coeffs = json::array();
  for (const auto& row : inst.parity_rows) {
    json jrow = json::array();
    for (const auto& entry : row) {
      json cell = json::array();
      for (uint32_t v = 0; v < p.d; ++v) cell.push_back(entry.coords[v]);
      jrow.push_back(std::move(cell));
    }
    coeffs.push_back(std::move(jrow));
  }
  return json{{"params", {{"q", p.q}, {"m", p.m}, {"n", p.n}, {"k", p.k}, {"d", p.d}}},
              {"modulus_poly", inst.ctx->modulus_poly()},
              {"h_coeffs", std::move(coeffs)},
              {"flags",
               {{"maximal_row_span", inst.maximal_row_span},
                {"unique_decoding", inst.unique_decoding}}}};
}

CodeInstance code_from_json(const json& j) {
  CodeInstance inst;
  const auto& jp = j.at("params");
  inst.params = CodeParams{jp.at("q").get<uint32_t>(), jp.at("m").get<uint32_t>(),
                           jp.at("n").get<uint32_t>(), jp.at("k").get<uint32_t>(),
                           jp.at("d").get<uint32_t>()};
  inst.params.validate();
  inst.ctx = FieldContext::make(inst.params.q, inst.params.m);
  if (j.at("modulus_poly").get<std::vector<uint8_t>>() != inst.ctx->modulus_poly())
    throw std::invalid_argument("stored modulus does not match the deterministic one");

  const auto& coeffs = j.at("h_coeffs");
  if (coeffs.size() != inst.params.redundancy())
    throw std::invalid_argument("parity coefficient tensor has wrong row count");
  for (const auto& jrow : coeffs) {
    if (jrow.size() != inst.params.n)
      throw std::invalid_argument("parity coefficient tensor has wrong width");
    Word row;
    for (const auto& cell : jrow) {
      if (cell.size() != inst.params.d)
        throw std::invalid_argument("parity coefficient cell has wrong depth");
      std::vector<uint8_t> coords(inst.params.m, 0);
      for (uint32_t v = 0; v < inst.params.d; ++v) coords[v] = cell[v].get<uint8_t>();
      row.push_back(inst.ctx->from_coords(std::move(coords)));
    }
    inst.parity_rows.push_back(std::move(row));
  }

  // The expansion, generator and flags are deterministic functions of H.
  inst.h_ext = build_h_ext(*inst.ctx, inst.parity_rows, inst.params.d);
  inst.maximal_row_span = check_maximal_row_span(inst);
  inst.unique_decoding = check_unique_decoding(inst);
  const auto& flags = j.at("flags");
  if (flags.at("maximal_row_span").get<bool>() != inst.maximal_row_span ||
      flags.at("unique_decoding").get<bool>() != inst.unique_decoding)
    throw std::invalid_argument("stored flags disagree with the recomputed ones");

  inst.generator_rows = derive_generator(inst);
  if (inst.generator_rows.size() != inst.params.k)
    throw std::invalid_argument("stored parity matrix does not have full row rank");
  return inst;
}

json outcome_to_json(const CodeInstance& inst, const DecodeOutcome& out) {
  json j;
  j["status"] = out.success ? "success" : "failure";
  if (out.success) {
    j["codeword"] = word_to_json(*inst.ctx, out.codeword);
    j["error"] = word_to_json(*inst.ctx, out.error);
  } else {
    j["stage"] = stage_label(out.stage);
  }
  j["support"] = subspace_to_json(out.support);
  return j;
}

json prob_to_json(const Prob& p) {
  return json{{"value", p.value},
              {"complement", p.complement},
              {"log10_complement", p.complement > 0.0 ? json(p.log10_complement())
                                                      : json(nullptr)},
              {"clamped", p.clamped}};
}

json bound_to_json(const BoundValue& b) {
  json j = prob_to_json(b.p);
  j["status"] = bound_status_label(b.status);
  return j;
}

json report_to_json(const ProbReport& rep) {
  const auto& p = rep.params;
  json j;
  j["params"] = {{"q", p.q}, {"m", p.m}, {"n", p.n}, {"k", p.k},
                 {"d", p.d}, {"t", p.t}, {"r", p.r}, {"u", p.u()}};
  j["p1"] = prob_to_json(rep.p1);
  j["p2_exact"] = bound_to_json(rep.p2_exact);
  j["p_opt"] = bound_to_json(rep.p_opt);
  j["b_lower"] = bound_to_json(rep.b_lower);
  j["b_lower_minimizing_j"] = rep.minimizing_j;
  j["b_corollary"] = bound_to_json(rep.b_corollary);
  j["p_upper"] = prob_to_json(rep.p_upper);
  j["k_constant"] = bound_to_json(rep.k_constant);
  j["p_t"] = prob_to_json(rep.p_t);
  j["p_t_source"] = rep.p_t_source;
  j["success_lower"] = bound_to_json(rep.success_lower);
  j["d_new"] = bound_to_json(rep.d_new);
  j["d_new_kind"] = "bound";
  j["d_fl"] = bound_to_json(rep.d_fl);
  j["d_fl_kind"] = "estimate";  // the source introduces it as an estimate
  j["d_g"] = bound_to_json(rep.d_g);
  j["d_g_kind"] = "bound";
  if (rep.with_d2_remark) {
    j["d2_remark_as_printed"] = bound_to_json(rep.d2_remark_as_printed);
    j["d2_remark_alt"] = bound_to_json(rep.d2_remark_alt);
  }
  return j;
}

json stats_to_json(const TrialStats& st) {
  const auto& p = st.params;
  const WilsonInterval ci = st.interval();
  json j;
  j["params"] = {{"q", p.q}, {"m", p.m}, {"n", p.n}, {"k", p.k},
                 {"d", p.d}, {"t", p.t}, {"r", p.r}};
  j["seed"] = st.seed;
  j["trials"] = st.trials;
  j["successes"] = st.successes;
  j["rate"] = st.rate();
  j["ci_lo"] = ci.lo;
  j["ci_hi"] = ci.hi;
  j["fail_zero_support"] = st.fail_zero_support;
  j["fail_syndrome_decomp"] = st.fail_syndrome_decomp;
  j["fail_erasure"] = st.fail_erasure;
  j["fail_verify"] = st.fail_verify;
  j["cond_trials"] = st.cond_trials;
  j["cond_successes"] = st.cond_successes;
  return j;
}

std::string stats_csv_header() {
  return "q,m,n,k,d,t,r,trials,successes,rate,ci_lo,ci_hi,fail_zero_support,"
         "fail_syndrome_decomp,fail_erasure,fail_verify,seed";
}

std::string stats_csv_row(const TrialStats& st) {
  const auto& p = st.params;
  const WilsonInterval ci = st.interval();
  std::string row;
  auto add = [&](const std::string& s) {
    if (!row.empty()) row += ',';
    row += s;
  };
  add(std::to_string(p.q));
  add(std::to_string(p.m));
  add(std::to_string(p.n));
  add(std::to_string(p.k));
  add(std::to_string(p.d));
  add(std::to_string(p.t));
  add(std::to_string(p.r));
  add(std::to_string(st.trials));
  add(std::to_string(st.successes));
  add(fmt_double(st.rate()));
  add(fmt_double(ci.lo));
  add(fmt_double(ci.hi));
  add(std::to_string(st.fail_zero_support));
  add(std::to_string(st.fail_syndrome_decomp));
  add(std::to_string(st.fail_erasure));
  add(std::to_string(st.fail_verify));
  add(std::to_string(st.seed));
  return row;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

}  // namespace bdlrpc
