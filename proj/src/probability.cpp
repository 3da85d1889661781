#include "bdlrpc/probability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace bdlrpc {

namespace {

double log1m_qpow(uint32_t q, int64_t e) {
  // ln(1 - q^-e), e > 0.
  return std::log1p(-std::pow(static_cast<double>(q), -static_cast<double>(e)));
}

// ln(q^a - q^b) for a > b >= 0, kept in log space for range safety.
double log_qpow_diff(uint32_t q, int64_t a, int64_t b) {
  const double lnq = std::log(static_cast<double>(q));
  return static_cast<double>(a) * lnq +
         std::log1p(-std::pow(static_cast<double>(q), static_cast<double>(b - a)));
}

double log_mpz(const mpz_class& v) {
  signed long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

// Both sides given, each computed where it is stable; clamps record formulas
// that strayed outside [0,1].
Prob prob_from_parts(double value, double complement) {
  Prob p;
  p.clamped = value < 0.0 || value > 1.0 || complement < 0.0 || complement > 1.0;
  p.value = std::clamp(value, 0.0, 1.0);
  p.complement = std::clamp(complement, 0.0, 1.0);
  return p;
}

}  // namespace

double Prob::log10_complement() const { return std::log10(complement); }

Prob Prob::from_value(double v) {
  return prob_from_parts(v, 1.0 - std::clamp(v, 0.0, 1.0));
}

Prob Prob::from_complement(double c) {
  return prob_from_parts(1.0 - std::clamp(c, 0.0, 1.0), c);
}

Prob Prob::from_log_value(double log_value) {
  Prob p;
  if (log_value > 0.0) {
    p.clamped = true;
    log_value = 0.0;
  }
  p.value = std::exp(log_value);
  p.complement = -std::expm1(log_value);
  return p;
}

Prob product_one_minus_qpow(uint32_t q, const std::vector<int64_t>& exponents) {
  bool has_zero = false, has_negative = false;
  for (int64_t e : exponents) {
    has_zero |= e == 0;
    has_negative |= e < 0;
  }
  if (has_zero) return Prob::never();  // exact zero factor
  if (has_negative) {
    Prob p = Prob::never();  // sign-flipping factors; reported as clamped zero
    p.clamped = true;
    return p;
  }
  // Descending exponents feed the smallest magnitudes first; Kahan summation
  // keeps the tiny tail alive next to the big leading term.
  std::vector<int64_t> sorted = exponents;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double sum = 0.0, carry = 0.0;
  for (int64_t e : sorted) {
    const double y = log1m_qpow(q, e) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return Prob::from_log_value(sum);
}

double round_half_up(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::floor(x * scale + 0.5) / scale;
}

const char* bound_status_label(BoundStatus s) {
  switch (s) {
    case BoundStatus::ok: return "ok";
    case BoundStatus::domain_violation: return "domain-violation";
    case BoundStatus::out_of_radius: return "out-of-radius";
  }
  return "?";
}

mpz_class gaussian_binomial(uint32_t n, uint32_t k, uint32_t q) {
  if (k > n) return 0;
  mpz_class qn, qk;
  mpz_ui_pow_ui(qn.get_mpz_t(), q, n);
  mpz_ui_pow_ui(qk.get_mpz_t(), q, k);
  mpz_class num = 1, den = 1, qpow = 1;
  for (uint32_t i = 0; i < k; ++i) {
    num *= qn - qpow;
    den *= qk - qpow;
    qpow *= q;
  }
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

Prob p1_classical(uint32_t q, uint32_t n, uint32_t k, uint32_t d, uint32_t r) {
  if (r == 0) return Prob::certain();
  const int64_t nk = static_cast<int64_t>(n) - k;
  std::vector<int64_t> exps;
  for (uint64_t i = 0; i < static_cast<uint64_t>(r) * d; ++i)
    exps.push_back(nk - static_cast<int64_t>(i));
  // rd > n-k hits a zero factor, so the product vanishes exactly.
  return product_one_minus_qpow(q, exps);
}

Prob p_opt_exact(uint32_t q, uint32_t n, uint32_t k, uint32_t r) {
  if (r == 0) return Prob::certain();
  const int64_t nk = static_cast<int64_t>(n) - k;
  std::vector<int64_t> exps;
  for (uint32_t j = 0; j < r; ++j) exps.push_back(nk - j);
  for (uint32_t j = 1; j <= r; ++j) exps.push_back(nk - j);
  return product_one_minus_qpow(q, exps);
}

Prob q_opt_exact(uint32_t q, uint32_t n, uint32_t k, uint32_t r) {
  if (r == 0) return Prob::certain();
  const int64_t nk = static_cast<int64_t>(n) - k;
  std::vector<int64_t> exps;
  for (uint32_t j = 1; j <= r; ++j) exps.push_back(nk - j);
  return product_one_minus_qpow(q, exps);
}

Prob p2_exact_d2(uint32_t q, uint32_t n, uint32_t k, uint32_t r) {
  if (r == 0) return Prob::certain();
  const int64_t nk = static_cast<int64_t>(n) - k;
  const int64_t u = nk - r;
  const int64_t vmin = (static_cast<int64_t>(r) + 1) / 2;
  const int64_t vmax = std::min<int64_t>(r, u);
  if (u <= 0 || vmin > vmax) return Prob::never();  // empty rank split

  std::vector<int64_t> pre;
  for (uint32_t j = 0; j < r; ++j) pre.push_back(nk - j);
  const Prob prefix = product_one_minus_qpow(q, pre);

  const double lnq = std::log(static_cast<double>(q));
  double split_sum = 0.0;
  for (int64_t v = vmin; v <= vmax; ++v) {
    double lt = -static_cast<double>(u) * r * lnq;
    for (int64_t i = 0; i < v; ++i)
      lt += log_qpow_diff(q, u, i) + log_qpow_diff(q, r, i) - log_qpow_diff(q, v, i);
    for (int64_t i = 0; v + i < static_cast<int64_t>(r); ++i)
      lt += log1m_qpow(q, v - i);
    split_sum += std::exp(lt);
  }
  bool clamp = false;
  if (split_sum > 1.0) {
    split_sum = 1.0;
    clamp = true;
  }
  Prob out = prob_from_parts(prefix.value * split_sum,
                             prefix.complement + prefix.value * (1.0 - split_sum));
  out.clamped |= clamp;
  return out;
}

double r_term(uint32_t q, int64_t u, uint32_t d, uint32_t r, uint32_t j) {
  const double lnq = std::log(static_cast<double>(q));
  const double lead = (static_cast<double>(r) * (static_cast<double>(d) - 1.0) -
                       static_cast<double>(u) * j) * lnq;
  double total = std::exp(lead);
  for (uint32_t i = 1; i < j; ++i) {
    const double lnbin = log_mpz(gaussian_binomial(j, i, q));
    total += std::exp(lnbin - static_cast<double>(u) * i * lnq);
  }
  return total;
}

LowerBoundResult p_lower_bound(uint32_t q, uint32_t n, uint32_t k, uint32_t d,
                               uint32_t r, uint32_t t) {
  LowerBoundResult out;
  const int64_t u = static_cast<int64_t>(n) - k - r;
  if (r == 0 || u <= 0 || t == 0) {
    out.bound.status = BoundStatus::domain_violation;
    return out;
  }
  const uint64_t rd1 = static_cast<uint64_t>(r) * (d - 1);
  const uint64_t tmin = (rd1 + static_cast<uint64_t>(u) - 1) / static_cast<uint64_t>(u);
  if (t < tmin || static_cast<uint64_t>(t) > static_cast<uint64_t>(r) * d) {
    out.bound.status = BoundStatus::domain_violation;
    return out;
  }
  double best = std::numeric_limits<double>::infinity();
  for (uint32_t j = 1; j <= t; ++j) {
    const double rj = r_term(q, u, d, r, j);
    if (rj < best) {
      best = rj;
      out.minimizing_j = j;
    }
  }
  out.bound.p = Prob::from_complement(best);
  return out;
}

BoundValue p_corollary_bounds(uint32_t q, int64_t u, uint32_t t) {
  BoundValue out;
  if (u <= 0) {
    out.status = BoundStatus::domain_violation;
    return out;
  }
  const double qd = static_cast<double>(q);
  if (t == 2) {
    out.p = Prob::from_complement((qd + 2.0) * std::pow(qd, -static_cast<double>(u)));
    return out;
  }
  if (t > 2 && static_cast<int64_t>(t) <= u) {
    const double c = std::pow(qd, -static_cast<double>(u)) +
                     std::pow(qd, -static_cast<double>(u - t)) / (qd - 1.0) +
                     4.0 * std::pow(qd, -2.0 * static_cast<double>(u - t)) /
                         (std::pow(qd, 4.0) - 1.0);
    out.p = Prob::from_complement(c);
    return out;
  }
  out.status = BoundStatus::domain_violation;
  return out;
}

Prob p_upper_bound(uint32_t q, uint32_t n, uint32_t k, uint32_t r) {
  if (r == 0) return Prob::certain();
  const int64_t nk = static_cast<int64_t>(n) - k;
  std::vector<int64_t> exps;
  for (uint32_t i = 0; i < r; ++i) {  // squared product: every factor twice
    exps.push_back(nk - i);
    exps.push_back(nk - i);
  }
  return product_one_minus_qpow(q, exps);
}

Prob hq(uint32_t q, int64_t n) {
  if (n <= 0) return Prob::certain();
  std::vector<int64_t> exps;
  for (int64_t i = 1; i <= n; ++i) exps.push_back(i);
  return product_one_minus_qpow(q, exps);
}

Prob conjecture_k(uint32_t q, uint32_t d, uint32_t r, int64_t u) {
  if (u < 1) throw std::invalid_argument("conjecture constant needs u >= 1");
  // H_q((d-1)r+u-1)/H_q(u-1) telescopes to prod_{i=u}^{(d-1)r+u-1}(1-q^-i).
  const int64_t hi = static_cast<int64_t>(d - 1) * r + u - 1;
  std::vector<int64_t> exps;
  for (int64_t i = u; i <= hi; ++i) exps.push_back(i);
  return product_one_minus_qpow(q, exps);
}

BoundValue d2_expansion_bound(uint32_t q, int64_t u, bool as_printed) {
  BoundValue out;
  if (u <= 0) {
    out.status = BoundStatus::domain_violation;
    return out;
  }
  const double qd = static_cast<double>(q);
  const double num = std::pow(qd, -static_cast<double>(u) / 2.0) +
                     std::pow(qd, -static_cast<double>(u)) +
                     std::pow(qd, -static_cast<double>(u) + 1.0);
  const double den = as_printed ? (1.0 - qd) : (qd - 1.0);
  out.p = Prob::from_value(1.0 - num / den);
  return out;
}

FailureBounds failure_bounds(const ProbParams& p, const Prob& p_t) {
  FailureBounds out;
  if (p.r == 0) {
    // No error: decoding always succeeds (zero-syndrome path).
    out.success_lower.p = Prob::certain();
    out.d_new.p = Prob::never();
    out.d_fl.p = Prob::never();
    out.d_g.p = Prob::never();
    return out;
  }
  const double lnq = std::log(static_cast<double>(p.q));
  const double md = static_cast<double>(p.m);
  const double rd = static_cast<double>(p.r);
  const double denom_corr = 1.0 - std::exp((rd - 1.0 - md) * lnq);  // 1 - q^(r-1-m)
  const double x_new =
      std::exp((rd * (static_cast<double>(p.d) + p.t) - md) * lnq) / denom_corr;
  const double y_fl =
      std::exp((2.0 * (static_cast<double>(p.d) + p.t - 1.0) * rd - rd - md) * lnq);

  out.success_lower.p =
      prob_from_parts((1.0 - x_new) * p_t.value, p_t.complement + x_new * p_t.value);
  out.d_new.p =
      prob_from_parts(p_t.complement + x_new * p_t.value, (1.0 - x_new) * p_t.value);
  out.d_fl.p =
      prob_from_parts(p_t.complement + y_fl * p_t.value, (1.0 - y_fl) * p_t.value);

  const double dg = std::exp((rd * p.d - (static_cast<double>(p.n) - p.k)) * lnq) /
                        (static_cast<double>(p.q) - 1.0) +
                    std::exp((rd * (2.0 * p.d - 1.0) - md) * lnq) / denom_corr +
                    std::exp((rd * p.d - md) * lnq) / denom_corr;
  out.d_g.p = Prob::from_value(dg);

  if (static_cast<uint64_t>(p.d + p.t) * p.r > p.m) {
    out.d_new.status = BoundStatus::out_of_radius;
    out.success_lower.status = BoundStatus::out_of_radius;
  }
  if (static_cast<uint64_t>(p.r) * p.d > p.n - p.k)
    out.d_g.status = BoundStatus::out_of_radius;
  return out;
}

int compare_dnew_dfl_exact(const ProbParams& p) {
  if (p.r == 0) return 0;  // both vanish by the no-error convention
  const uint64_t a = static_cast<uint64_t>(p.r) * (p.d + p.t);
  const uint64_t b = static_cast<uint64_t>(p.r) * (2ull * (p.d + p.t) - 3ull);
  mpz_class lhs, qm, qr1, qb;
  mpz_ui_pow_ui(lhs.get_mpz_t(), p.q, a + p.m);
  mpz_ui_pow_ui(qm.get_mpz_t(), p.q, p.m);
  mpz_ui_pow_ui(qr1.get_mpz_t(), p.q, p.r - 1);
  mpz_ui_pow_ui(qb.get_mpz_t(), p.q, b);
  const mpz_class rhs = qb * (qm - qr1);
  const int c = cmp(lhs, rhs);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

ProbReport make_report(const ProbParams& params, bool with_d2_remark) {
  ProbReport rep;
  rep.params = params;
  const uint32_t q = params.q, n = params.n, k = params.k, d = params.d,
                 t = params.t, r = params.r;
  const int64_t u = params.u();

  rep.p1 = p1_classical(q, n, k, d, r);
  if (d == 2) {
    rep.p2_exact.p = p2_exact_d2(q, n, k, r);
  } else {
    rep.p2_exact.status = BoundStatus::domain_violation;
  }
  rep.p_opt.p = p_opt_exact(q, n, k, r);

  const LowerBoundResult lb = p_lower_bound(q, n, k, d, r, t);
  rep.b_lower = lb.bound;
  rep.minimizing_j = lb.minimizing_j;

  if (r >= 1 && u >= 1) {
    const uint64_t rd1 = static_cast<uint64_t>(r) * (d - 1);
    const uint32_t t_rec =
        static_cast<uint32_t>((rd1 + static_cast<uint64_t>(u) - 1) /
                              static_cast<uint64_t>(u)) + 1;
    rep.b_corollary = t == t_rec ? p_corollary_bounds(q, u, t)
                                 : BoundValue{{}, BoundStatus::domain_violation};
  } else {
    rep.b_corollary.status = BoundStatus::domain_violation;
  }

  rep.p_upper = p_upper_bound(q, n, k, r);
  if (u >= 1) {
    rep.k_constant.p = conjecture_k(q, d, r, u);
  } else {
    rep.k_constant.status = BoundStatus::domain_violation;
  }

  if (r == 0) {
    rep.p_t = Prob::certain();
    rep.p_t_source = "trivial-r0";
  } else if (d == 1) {
    rep.p_t = p1_classical(q, n, k, 1, r);
    rep.p_t_source = "exact-d1";
  } else if (static_cast<uint64_t>(t) >= static_cast<uint64_t>(r) * (d - 1)) {
    rep.p_t = rep.p_opt.p;
    rep.p_t_source = "exact-opt";
  } else if (d == 2 && t == 2) {
    rep.p_t = rep.p2_exact.p;
    rep.p_t_source = "exact-d2";
  } else if (rep.b_lower.ok()) {
    rep.p_t = rep.b_lower.p;
    rep.p_t_source = "lower-bound";
  } else {
    rep.p_t = Prob::never();
    rep.p_t_source = "none";
  }

  const FailureBounds fb = failure_bounds(params, rep.p_t);
  rep.success_lower = fb.success_lower;
  rep.d_new = fb.d_new;
  rep.d_fl = fb.d_fl;
  rep.d_g = fb.d_g;
  if (rep.p_t_source == "none") {
    rep.success_lower.status = BoundStatus::domain_violation;
    rep.d_new.status = BoundStatus::domain_violation;
    rep.d_fl.status = BoundStatus::domain_violation;
  }

  rep.with_d2_remark = with_d2_remark;
  if (with_d2_remark) {
    if (d == 2) {
      rep.d2_remark_as_printed = d2_expansion_bound(q, u, true);
      rep.d2_remark_alt = d2_expansion_bound(q, u, false);
    } else {
      rep.d2_remark_as_printed.status = BoundStatus::domain_violation;
      rep.d2_remark_alt.status = BoundStatus::domain_violation;
    }
  }
  return rep;
}

}  // namespace bdlrpc
