#pragma once

#include <cstdint>
#include <vector>

#include "bdlrpc/code.hpp"
#include "bdlrpc/matrix.hpp"
#include "bdlrpc/probability.hpp"

namespace bdlrpc {

struct WilsonInterval {
  double lo = 0.0, hi = 1.0;
};
// Wilson 95% score interval; well-behaved at rates near 1, the operating
// regime here (Wald would collapse to a point at p_hat = 1).
WilsonInterval wilson_interval(uint64_t successes, uint64_t trials);

// Seeded trial batch: counts merge exactly across workers, so the result is
// a function of (params, trials, seed) alone.
struct TrialStats {
  ProbParams params;
  uint64_t seed = 0;
  uint64_t trials = 0, successes = 0;
  // Stage breakdown for decoding runs; all zero for the rank experiments.
  uint64_t fail_zero_support = 0, fail_syndrome_decomp = 0;
  uint64_t fail_erasure = 0, fail_verify = 0;
  // Diagnose mode: trials where both correctness conditions held, and how
  // many of those decoded successfully.
  uint64_t cond_trials = 0, cond_successes = 0;

  double rate() const { return trials ? double(successes) / double(trials) : 0.0; }
  WilsonInterval interval() const { return wilson_interval(successes, trials); }
  // 3-sigma convention used throughout: Wilson half-width / 1.96.
  double sigma() const;

  void merge(const TrialStats& other);
};

// Block-Toeplitz expansion matrix: block row i of t places the d blocks at
// block columns i..i+d-1; shape t(n-k) x r(d+t-1).
MatrixFq assemble_expansion_matrix(const std::vector<MatrixFq>& blocks, uint32_t t);

// Block companion matrix: given top blocks A_1..A_{d-1} (each r x r), places
// them in the first block row with identity blocks on the subdiagonal.
MatrixFq companion_block_matrix(const std::vector<MatrixFq>& top_blocks, uint32_t r);

// (Z; ZA; ...; ZA^{t-1}) stacked.
MatrixFq assemble_power_stack(const MatrixFq& z, const MatrixFq& a, uint32_t t);

// Empirical P_t: success iff the expansion matrix built from d i.i.d. uniform
// (n-k) x r blocks has full column rank r(d+t-1). Parameter sets with
// r(d+t-1) > t(n-k) are allowed and estimate a trivial zero; callers can
// recompute that predicate from the params echoed in the result.
TrialStats estimate_pt(const ProbParams& p, uint64_t trials, uint64_t seed,
                       uint32_t workers = 1);

// Empirical Q_t: success iff the power stack of a uniform (n-k-r) x r(d-1)
// matrix over the random companion matrix has rank r(d-1). d=1 is degenerate
// (zero-width matrix, rank 0 required): Q is identically 1.
TrialStats estimate_qt(const ProbParams& p, uint64_t trials, uint64_t seed,
                       uint32_t workers = 1);

struct SimulateOptions {
  uint64_t trials = 1000;
  uint64_t seed = 0;
  uint32_t workers = 1;
  bool resample_code = false;  // fresh code per trial instead of one per run
  bool diagnose = false;       // per-trial correctness-condition accounting
  bool force = false;          // run despite a violated decoding radius
};

// End-to-end decoding experiment: one sampled code per run (unless
// resample_code), per trial a uniform message plus a rank-r error, success
// iff the decoder returns the planted codeword. Refuses parameter sets with
// (d+t)r > m or r(d+t-1) > t(n-k) unless forced.
TrialStats simulate_decoding(const ProbParams& p, const SimulateOptions& opts);

}  // namespace bdlrpc
