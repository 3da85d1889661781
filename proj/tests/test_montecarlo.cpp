#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bdlrpc/decoder.hpp"
#include "bdlrpc/montecarlo.hpp"

using namespace bdlrpc;

namespace {

MatrixFq constant_matrix(uint32_t q, size_t rows, size_t cols, uint8_t v) {
  MatrixFq a(q, rows, cols);
  for (auto& e : a.entries) e = v;
  return a;
}

bool stats_equal(const TrialStats& a, const TrialStats& b) {
  return a.trials == b.trials && a.successes == b.successes &&
         a.fail_zero_support == b.fail_zero_support &&
         a.fail_syndrome_decomp == b.fail_syndrome_decomp &&
         a.fail_erasure == b.fail_erasure && a.fail_verify == b.fail_verify &&
         a.cond_trials == b.cond_trials && a.cond_successes == b.cond_successes;
}

}  // namespace

TEST_CASE("wilson interval basics") {
  const WilsonInterval empty = wilson_interval(0, 0);
  CHECK(empty.lo == 0.0);
  CHECK(empty.hi == 1.0);
  const WilsonInterval all = wilson_interval(100, 100);
  CHECK(all.hi == doctest::Approx(1.0));
  CHECK(all.lo > 0.9);
  CHECK(all.lo < 1.0);
  const WilsonInterval half = wilson_interval(500, 1000);
  CHECK(half.lo < 0.5);
  CHECK(half.hi > 0.5);
  CHECK(half.hi - half.lo < 0.07);
}

TEST_CASE("expansion matrix block layout") {
  const uint32_t q = 5;
  const size_t nk = 2, r = 3;
  const std::vector<MatrixFq> blocks{constant_matrix(q, nk, r, 1),
                                     constant_matrix(q, nk, r, 2)};
  const MatrixFq mt = assemble_expansion_matrix(blocks, 2);
  CHECK(mt.rows == 2 * nk);
  CHECK(mt.cols == r * 3);
  // First block row: X1 X2 0. Second: 0 X1 X2.
  for (size_t i = 0; i < nk; ++i)
    for (size_t j = 0; j < r; ++j) {
      CHECK(mt.at(i, j) == 1);
      CHECK(mt.at(i, r + j) == 2);
      CHECK(mt.at(i, 2 * r + j) == 0);
      CHECK(mt.at(nk + i, j) == 0);
      CHECK(mt.at(nk + i, r + j) == 1);
      CHECK(mt.at(nk + i, 2 * r + j) == 2);
    }
}

TEST_CASE("companion matrix block layout") {
  const uint32_t q = 5, r = 2;
  const std::vector<MatrixFq> top{constant_matrix(q, r, r, 3),
                                  constant_matrix(q, r, r, 4)};
  const MatrixFq a = companion_block_matrix(top, r);
  CHECK(a.rows == 4);
  CHECK(a.cols == 4);
  for (uint32_t i = 0; i < r; ++i)
    for (uint32_t j = 0; j < r; ++j) {
      CHECK(a.at(i, j) == 3);
      CHECK(a.at(i, r + j) == 4);
      CHECK(a.at(r + i, j) == (i == j ? 1 : 0));
      CHECK(a.at(r + i, r + j) == 0);
    }
}

TEST_CASE("power stack stacks successive products") {
  SplitMix64 rng(3);
  const MatrixFq z = sample_matrix(3, 2, 4, rng);
  const MatrixFq a = sample_matrix(3, 4, 4, rng);
  const MatrixFq st = assemble_power_stack(z, a, 3);
  CHECK(st.rows == 6);
  const MatrixFq za = matmul(z, a);
  const MatrixFq zaa = matmul(za, a);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 4; ++j) {
      CHECK(st.at(i, j) == z.at(i, j));
      CHECK(st.at(2 + i, j) == za.at(i, j));
      CHECK(st.at(4 + i, j) == zaa.at(i, j));
    }
}

TEST_CASE("degenerate estimator shapes") {
  // d=1, t=1: the matrix is X1 itself; full rank probability is the
  // standard product, checked against the analytic module.
  const ProbParams p{2, 0, 6, 0, 1, 1, 3};
  const TrialStats st = estimate_pt(p, 20000, 77);
  const double expect = p1_classical(2, 6, 0, 1, 3).value;
  CHECK(std::abs(st.rate() - expect) <= 3 * st.sigma());

  // r=0: zero-width matrix, trivially full rank.
  const ProbParams p0{2, 0, 6, 0, 2, 2, 0};
  CHECK(estimate_pt(p0, 100, 1).successes == 100);

  // d=1: Q is identically 1 by convention.
  const ProbParams pq{2, 0, 6, 0, 1, 2, 2};
  CHECK(estimate_qt(pq, 100, 1).successes == 100);
}

TEST_CASE("rank experiment matches the exact d=2 t=2 formula") {
  const ProbParams p{2, 0, 8, 2, 2, 2, 2};  // n-k = 6
  const TrialStats st = estimate_pt(p, 20000, 1234);
  const double expect = p2_exact_d2(2, 8, 2, 2).value;
  CHECK(std::abs(st.rate() - expect) <= 3 * st.sigma());
}

TEST_CASE("rank experiment matches the optimum at t = r(d-1)") {
  const ProbParams p{2, 0, 8, 2, 3, 4, 2};  // t = r(d-1) = 4
  const TrialStats st = estimate_pt(p, 20000, 4321);
  const double expect = p_opt_exact(2, 8, 2, 2).value;
  CHECK(std::abs(st.rate() - expect) <= 3 * st.sigma());
}

TEST_CASE("companion experiment matches the residual factor") {
  const ProbParams p{2, 0, 8, 2, 2, 2, 2};  // t = r(d-1) = 2
  const TrialStats st = estimate_qt(p, 20000, 99);
  const double expect = q_opt_exact(2, 8, 2, 2).value;
  CHECK(std::abs(st.rate() - expect) <= 3 * st.sigma());
  // K never exceeds the estimated residual factor.
  const double k_val = conjecture_k(2, 2, 2, 4).value;
  CHECK(k_val <= st.rate() + 3 * st.sigma());
}

TEST_CASE("reduction identity ties the two experiments together") {
  const ProbParams p{3, 0, 8, 2, 2, 2, 2};
  const TrialStats pt = estimate_pt(p, 20000, 7);
  const TrialStats qt = estimate_qt(p, 20000, 8);
  double x1_full = 1.0;
  for (uint32_t i = 0; i < p.r; ++i)
    x1_full *= 1.0 - std::pow(3.0, double(i) - 6.0);
  const double sigma = std::sqrt(pt.sigma() * pt.sigma() +
                                 x1_full * x1_full * qt.sigma() * qt.sigma());
  CHECK(std::abs(pt.rate() - qt.rate() * x1_full) <= 3 * sigma);
}

TEST_CASE("estimate sits below the upper bound and grows with t") {
  // Upper bound validity: p_upper >= empirical - 3 sigma.
  for (uint32_t r : {1u, 2u, 3u}) {
    const ProbParams p{2, 0, 8, 2, 2, 2, r};
    const TrialStats st = estimate_pt(p, 20000, 555 + r);
    CHECK(p_upper_bound(2, 8, 2, r).value >= st.rate() - 3 * st.sigma());
  }
  // Monotonicity surrogate: estimates never decrease in t beyond noise,
  // and they saturate at the optimum once t reaches r(d-1).
  const uint32_t r = 3, d = 3;
  double prev = 0.0, prev_sigma = 0.0;
  for (uint32_t t = 1; t <= r * (d - 1) + 1; ++t) {
    const ProbParams p{2, 0, 8, 2, d, t, r};
    const TrialStats st = estimate_pt(p, 20000, 700 + t);
    CHECK(st.rate() >= prev - 3 * (st.sigma() + prev_sigma));
    prev = st.rate();
    prev_sigma = st.sigma();
    if (t >= r * (d - 1))
      CHECK(std::abs(st.rate() - p_opt_exact(2, 8, 2, r).value) <= 3 * st.sigma());
  }
}

TEST_CASE("real decoder first phase dominates the uniform-model estimate") {
  // The uniform-coefficient model is a lower bound on the real first-phase
  // success: count trials where the expanded syndrome support reaches the
  // full product space and compare against the rank-experiment estimate at
  // matched parameters.
  const ProbParams p{2, 24, 12, 6, 2, 2, 2};
  SplitMix64 rng(808);
  const CodeParams cp{p.q, p.m, p.n, p.k, p.d};
  const CodeInstance inst = sample_code(cp, rng);
  const SubspaceFq vfull = SubspaceFq::bounded_degree(inst.ctx, p.d + p.t - 1);
  const int trials = 300;
  int reached = 0;
  for (int it = 0; it < trials; ++it) {
    const Word e = sample_error(inst.ctx, p.n, p.r, rng);
    const SubspaceFq ss = word_support(inst.ctx, syndrome(inst, e));
    if (expand_syndrome_support(ss, p.t) ==
        product(vfull, word_support(inst.ctx, e)))
      ++reached;
  }
  const TrialStats model = estimate_pt(p, 20000, 809);
  const double rate = double(reached) / trials;
  const double sigma =
      std::sqrt(std::max(rate * (1 - rate) / trials, 1e-9)) + model.sigma();
  CHECK(rate >= model.rate() - 3 * sigma);
}

TEST_CASE("estimators are reproducible and worker-independent") {
  const ProbParams p{2, 0, 8, 2, 2, 2, 2};
  const TrialStats a = estimate_pt(p, 5000, 42, 1);
  const TrialStats b = estimate_pt(p, 5000, 42, 3);
  const TrialStats c = estimate_pt(p, 5000, 42, 7);
  CHECK(stats_equal(a, b));
  CHECK(stats_equal(a, c));
  const TrialStats other = estimate_pt(p, 5000, 43, 1);
  CHECK_FALSE(stats_equal(a, other));  // seeds matter
}

TEST_CASE("decoding simulation: no errors, perfect decoding") {
  const ProbParams p{2, 16, 12, 6, 2, 2, 0};
  SimulateOptions opts;
  opts.trials = 50;
  opts.seed = 9;
  const TrialStats st = simulate_decoding(p, opts);
  CHECK(st.successes == 50);
}

TEST_CASE("decoding simulation beats the analytic floor") {
  const ProbParams p{2, 16, 12, 6, 2, 2, 2};
  SimulateOptions opts;
  opts.trials = 400;
  opts.seed = 2718;
  opts.diagnose = true;
  const TrialStats st = simulate_decoding(p, opts);

  const ProbReport rep = make_report(p);
  REQUIRE(rep.success_lower.ok());
  CHECK(st.rate() >= rep.success_lower.p.value - 3 * st.sigma());

  // Under both correctness conditions the decoder never misses.
  CHECK(st.cond_trials > 0);
  CHECK(st.cond_successes == st.cond_trials);

  // Stage accounting.
  CHECK(st.fail_zero_support + st.fail_syndrome_decomp + st.fail_erasure +
            st.fail_verify ==
        st.trials - st.successes);
}

TEST_CASE("decoding simulation reproducibility across workers") {
  const ProbParams p{2, 16, 12, 6, 2, 2, 2};
  SimulateOptions a;
  a.trials = 100;
  a.seed = 5;
  SimulateOptions b = a;
  b.workers = 4;
  CHECK(stats_equal(simulate_decoding(p, a), simulate_decoding(p, b)));

  SimulateOptions c = a;
  c.resample_code = true;
  SimulateOptions d = c;
  d.workers = 3;
  CHECK(stats_equal(simulate_decoding(p, c), simulate_decoding(p, d)));
}

TEST_CASE("decoding simulation refuses out-of-radius parameters") {
  const ProbParams p{2, 16, 12, 6, 2, 2, 5};  // (d+t)r = 20 > m = 16
  SimulateOptions opts;
  opts.trials = 10;
  CHECK_THROWS_AS(simulate_decoding(p, opts), std::invalid_argument);
  opts.force = true;
  const TrialStats st = simulate_decoding(p, opts);  // runs, mostly failing
  CHECK(st.trials == 10);
}
