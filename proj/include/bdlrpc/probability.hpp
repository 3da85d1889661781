#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace bdlrpc {

// Parameter record shared by the analytic formulas and the estimators.
// u = n-k-r may be <= 0; formulas answer with domain markers, never garbage.
struct ProbParams {
  uint32_t q = 2, m = 0, n = 0, k = 0, d = 2, t = 2, r = 0;
  int64_t u() const { return static_cast<int64_t>(n) - k - r; }
};

// Probability with its complement carried separately, so values like
// 1 - 2^-40 keep full relative precision on the failure side. The two fields
// are redundant (value + complement == 1 up to rounding); each is computed
// on whichever side is numerically stable. `clamped` records that a formula
// produced something outside [0,1] and was clipped.
struct Prob {
  double value = 0.0;
  double complement = 1.0;
  bool clamped = false;

  double log10_complement() const;
  static Prob from_value(double v);
  static Prob from_complement(double c);
  // exp(sum of log factors): value = e^L, complement = -expm1(L).
  static Prob from_log_value(double log_value);
  static Prob certain() { return Prob{1.0, 0.0, false}; }
  static Prob never() { return Prob{0.0, 1.0, false}; }
};

// Product over the listed exponents e of (1 - q^-e), the building block of
// every closed form here. Any e <= 0 makes the product vanish (zero or
// negative factor); that case returns never() with clamped set for e < 0.
Prob product_one_minus_qpow(uint32_t q, const std::vector<int64_t>& exponents);

enum class BoundStatus { ok, domain_violation, out_of_radius };
const char* bound_status_label(BoundStatus s);

struct BoundValue {
  Prob p;
  BoundStatus status = BoundStatus::ok;
  bool ok() const { return status == BoundStatus::ok; }
};

// Decimal round-half-up, the table-rendering convention (printf would round
// half-to-even on the binary value).
double round_half_up(double x, int digits);

// Number of k-dimensional subspaces of an n-dimensional F_q-space, exact.
// k > n returns 0 by convention.
mpz_class gaussian_binomial(uint32_t n, uint32_t k, uint32_t q);

// First-phase success of the classical decoder: prod_{i=0}^{rd-1}(1 - q^{-(n-k-i)}).
Prob p1_classical(uint32_t q, uint32_t n, uint32_t k, uint32_t d, uint32_t r);

// Exact first-phase success at the optimal expansion t = r(d-1):
// prod_{j=0}^{r-1}(1-q^{j-(n-k)}) * prod_{j=1}^{r}(1-q^{j-(n-k)}).
Prob p_opt_exact(uint32_t q, uint32_t n, uint32_t k, uint32_t r);

// The residual factor of the optimum: prod_{j=1}^{r}(1-q^{j-(n-k)}).
Prob q_opt_exact(uint32_t q, uint32_t n, uint32_t k, uint32_t r);

// Exact first-phase success for d=2, t=2 (rank split over the middle block).
Prob p2_exact_d2(uint32_t q, uint32_t n, uint32_t k, uint32_t r);

// R_j = q^(r(d-1)-uj) + sum_{i=1}^{j-1} [j,i]_q q^(-ui).
double r_term(uint32_t q, int64_t u, uint32_t d, uint32_t r, uint32_t j);

// 1 - min_{1<=j<=t} R_j, valid for ceil(r(d-1)/u) <= t <= rd and u > 0.
struct LowerBoundResult {
  BoundValue bound;
  uint32_t minimizing_j = 0;
};
LowerBoundResult p_lower_bound(uint32_t q, uint32_t n, uint32_t k, uint32_t d,
                               uint32_t r, uint32_t t);

// Closed forms at t = ceil(r(d-1)/u)+1: (i) t=2 -> 1-(q+2)q^-u;
// (ii) 2<t<=u -> 1 - q^-u - q^-(u-t)/(q-1) - 4 q^-2(u-t)/(q^4-1).
BoundValue p_corollary_bounds(uint32_t q, int64_t u, uint32_t t);

// (prod_{i=0}^{r-1}(1-q^{i-(n-k)}))^2.
Prob p_upper_bound(uint32_t q, uint32_t n, uint32_t k, uint32_t r);

// H_q(n) = prod_{i=1}^{n}(1-q^-i); H_q(0) = 1.
Prob hq(uint32_t q, int64_t n);

// K = H_q((d-1)r+u-1) / H_q(u-1), the resolved-conjecture constant.
Prob conjecture_k(uint32_t q, uint32_t d, uint32_t r, int64_t u);

// The d=2 expansion bound of the source remark, both readings: as printed the
// denominator is 1-q (negative for q >= 2, so the "bound" exceeds 1 and gets
// clamped); the alternative uses q-1.
BoundValue d2_expansion_bound(uint32_t q, int64_t u, bool as_printed);

struct FailureBounds {
  BoundValue d_new;          // bound for this decoder
  BoundValue d_fl;           // estimate for the expansion-only decoder
  BoundValue d_g;            // bound for the classical decoder
  BoundValue success_lower;  // (1 - q^{r(t+d)}/(q^m - q^{r-1})) * P_t
};
// Caller supplies the P_t to use (exact where available, else the lower
// bound); r = 0 short-circuits to no-failure.
FailureBounds failure_bounds(const ProbParams& p, const Prob& p_t);

// Exact-arithmetic sign of (d_new - d_fl) at equal P_t > 0: compares
// q^{r(d+t)}/(q^m - q^{r-1}) against q^{r(2(d+t)-3)-m} over the integers.
// Returns -1, 0, or +1; r = 0 compares equal by the no-error convention.
int compare_dnew_dfl_exact(const ProbParams& p);

// Everything above for one parameter set, with the P_t choice recorded.
struct ProbReport {
  ProbParams params;
  Prob p1;
  BoundValue p2_exact;   // d=2 exact (domain marker when d != 2)
  BoundValue p_opt;      // optimum P_{r(d-1)}
  BoundValue b_lower;    // theorem lower bound at params.t
  uint32_t minimizing_j = 0;
  BoundValue b_corollary;  // at t = recommended, else domain marker
  Prob p_upper;
  BoundValue k_constant;  // needs u >= 1
  Prob p_t;                // the value fed into the failure bounds
  // "exact-opt" | "exact-d2" | "exact-d1" | "lower-bound" | "trivial-r0" | "none"
  std::string p_t_source;
  BoundValue success_lower, d_new, d_fl, d_g;
  bool with_d2_remark = false;
  BoundValue d2_remark_as_printed, d2_remark_alt;
};
ProbReport make_report(const ProbParams& params, bool with_d2_remark = false);

}  // namespace bdlrpc
