#include "bdlrpc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "bdlrpc/decoder.hpp"

namespace bdlrpc {

namespace {
constexpr double kZ95 = 1.959963984540054;
// Stream index reserved for sampling the code instance of a run; trial
// indices are dense from zero and never reach it.
constexpr uint64_t kCodeStream = ~uint64_t{0};
}  // namespace

WilsonInterval wilson_interval(uint64_t successes, uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double TrialStats::sigma() const {
  const WilsonInterval ci = interval();
  return (ci.hi - ci.lo) / (2.0 * kZ95);
}

void TrialStats::merge(const TrialStats& other) {
  trials += other.trials;
  successes += other.successes;
  fail_zero_support += other.fail_zero_support;
  fail_syndrome_decomp += other.fail_syndrome_decomp;
  fail_erasure += other.fail_erasure;
  fail_verify += other.fail_verify;
  cond_trials += other.cond_trials;
  cond_successes += other.cond_successes;
}

MatrixFq assemble_expansion_matrix(const std::vector<MatrixFq>& blocks, uint32_t t) {
  if (blocks.empty() || t < 1)
    throw std::invalid_argument("need d >= 1 blocks and t >= 1");
  const uint32_t d = static_cast<uint32_t>(blocks.size());
  const size_t nk = blocks[0].rows, r = blocks[0].cols;
  for (const auto& b : blocks)
    if (b.rows != nk || b.cols != r || b.q != blocks[0].q)
      throw std::invalid_argument("blocks must share shape and field");
  MatrixFq out(blocks[0].q, t * nk, r * (d + t - 1));
  for (uint32_t br = 0; br < t; ++br)
    for (uint32_t l = 0; l < d; ++l)
      for (size_t i = 0; i < nk; ++i)
        for (size_t j = 0; j < r; ++j)
          out.at(br * nk + i, (br + l) * r + j) = blocks[l].at(i, j);
  return out;
}

MatrixFq companion_block_matrix(const std::vector<MatrixFq>& top_blocks, uint32_t r) {
  const uint32_t dm1 = static_cast<uint32_t>(top_blocks.size());
  if (dm1 == 0) throw std::invalid_argument("need at least one top block");
  for (const auto& b : top_blocks)
    if (b.rows != r || b.cols != r || b.q != top_blocks[0].q)
      throw std::invalid_argument("top blocks must be r x r");
  MatrixFq a(top_blocks[0].q, r * dm1, r * dm1);
  for (uint32_t l = 0; l < dm1; ++l)
    for (uint32_t i = 0; i < r; ++i)
      for (uint32_t j = 0; j < r; ++j) a.at(i, l * r + j) = top_blocks[l].at(i, j);
  for (uint32_t l = 0; l + 1 < dm1; ++l)
    for (uint32_t i = 0; i < r; ++i) a.at((l + 1) * r + i, l * r + i) = 1;
  return a;
}

MatrixFq assemble_power_stack(const MatrixFq& z, const MatrixFq& a, uint32_t t) {
  if (z.cols != a.rows || a.rows != a.cols)
    throw std::invalid_argument("power stack needs z cols == a order");
  MatrixFq out(z.q, t * z.rows, z.cols);
  MatrixFq cur = z;
  for (uint32_t j = 0; j < t; ++j) {
    std::copy(cur.entries.begin(), cur.entries.end(),
              out.entries.begin() + static_cast<long>(j * z.rows * z.cols));
    if (j + 1 < t) cur = matmul(cur, a);
  }
  return out;
}

namespace {

template <typename PerTrial>
TrialStats run_trials(const ProbParams& p, uint64_t trials, uint64_t seed,
                      uint32_t workers, PerTrial per_trial) {
  workers = std::max<uint32_t>(1, workers);
  if (trials < workers) workers = static_cast<uint32_t>(std::max<uint64_t>(1, trials));
  std::vector<TrialStats> local(workers);

  auto chunk = [&](uint32_t w) {
    const uint64_t lo = trials * w / workers;
    const uint64_t hi = trials * (w + 1) / workers;
    TrialStats& st = local[w];
    for (uint64_t i = lo; i < hi; ++i) {
      ++st.trials;
      per_trial(i, st);
    }
  };

  if (workers == 1) {
    chunk(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (uint32_t w = 0; w < workers; ++w) pool.emplace_back(chunk, w);
    for (auto& th : pool) th.join();
  }

  TrialStats out;
  out.params = p;
  out.seed = seed;
  for (const auto& st : local) out.merge(st);
  return out;
}

}  // namespace

TrialStats estimate_pt(const ProbParams& p, uint64_t trials, uint64_t seed,
                       uint32_t workers) {
  if (p.d < 1 || p.t < 1 || p.k >= p.n)
    throw std::invalid_argument("estimate needs d >= 1, t >= 1, k < n");
  const uint32_t nk = p.n - p.k;
  const size_t target = static_cast<size_t>(p.r) * (p.d + p.t - 1);
  return run_trials(p, trials, seed, workers, [&](uint64_t i, TrialStats& st) {
    SplitMix64 rng(SplitMix64::derive(seed, i));
    std::vector<MatrixFq> blocks;
    blocks.reserve(p.d);
    for (uint32_t l = 0; l < p.d; ++l)
      blocks.push_back(sample_matrix(p.q, nk, p.r, rng));
    const MatrixFq mt = assemble_expansion_matrix(blocks, p.t);
    if (rank(mt) == target) ++st.successes;
  });
}

TrialStats estimate_qt(const ProbParams& p, uint64_t trials, uint64_t seed,
                       uint32_t workers) {
  if (p.d < 1 || p.t < 1 || p.k >= p.n)
    throw std::invalid_argument("estimate needs d >= 1, t >= 1, k < n");
  if (p.u() < 0) throw std::invalid_argument("estimate_qt needs n-k-r >= 0");
  if (p.d == 1) {
    // Zero-width stack: full rank vacuously, Q is identically 1.
    TrialStats out;
    out.params = p;
    out.seed = seed;
    out.trials = out.successes = trials;
    return out;
  }
  const size_t width = static_cast<size_t>(p.r) * (p.d - 1);
  const size_t zrows = static_cast<size_t>(p.u());
  return run_trials(p, trials, seed, workers, [&](uint64_t i, TrialStats& st) {
    SplitMix64 rng(SplitMix64::derive(seed, i));
    const MatrixFq z = sample_matrix(p.q, zrows, width, rng);
    std::vector<MatrixFq> top;
    top.reserve(p.d - 1);
    for (uint32_t l = 0; l + 1 < p.d; ++l)
      top.push_back(sample_matrix(p.q, p.r, p.r, rng));
    const MatrixFq a = companion_block_matrix(top, p.r);
    const MatrixFq stack = assemble_power_stack(z, a, p.t);
    if (rank(stack) == width) ++st.successes;
  });
}

TrialStats simulate_decoding(const ProbParams& p, const SimulateOptions& opts) {
  CodeParams cp{p.q, p.m, p.n, p.k, p.d};
  cp.validate();
  const uint64_t dt = static_cast<uint64_t>(p.d) + p.t;
  const bool radius_ok =
      dt * p.r <= p.m &&
      static_cast<uint64_t>(p.r) * (p.d + p.t - 1) <=
          static_cast<uint64_t>(p.t) * (p.n - p.k);
  if (!radius_ok && !opts.force)
    throw std::invalid_argument(
        "parameters violate the decoding radius ((d+t)r <= m and "
        "r(d+t-1) <= t(n-k)); pass force to run anyway");

  auto ctx = FieldContext::make(p.q, p.m);
  const DecoderConfig cfg{p.t, true};

  CodeInstance shared_inst;
  if (!opts.resample_code) {
    SplitMix64 crng(SplitMix64::derive(opts.seed, kCodeStream));
    shared_inst = sample_code(cp, crng);
  }

  return run_trials(p, opts.trials, opts.seed, opts.workers,
                    [&](uint64_t i, TrialStats& st) {
    const uint64_t h = SplitMix64::derive(opts.seed, i);
    SplitMix64 rng(h);
    CodeInstance local_inst;
    if (opts.resample_code) {
      SplitMix64 crng(SplitMix64::derive(h, kCodeStream));
      local_inst = sample_code(cp, crng);
    }
    const CodeInstance& inst = opts.resample_code ? local_inst : shared_inst;

    Word msg(p.k, ctx->zero());
    for (auto& e : msg)
      for (auto& c : e.coords) c = static_cast<uint8_t>(rng.below(p.q));
    const Word c = encode(inst, msg);
    const Word e = sample_error(ctx, p.n, p.r, rng);
    const Word y = word_add(*ctx, c, e);

    const DecodeOutcome out = decode(inst, y, cfg);
    const bool success = out.success && out.codeword == c;
    if (success) {
      ++st.successes;
    } else if (!out.success) {
      switch (out.stage) {
        case DecodeStage::zero_support: ++st.fail_zero_support; break;
        case DecodeStage::syndrome_decomposition: ++st.fail_syndrome_decomp; break;
        case DecodeStage::erasure_system: ++st.fail_erasure; break;
        case DecodeStage::verification: ++st.fail_verify; break;
      }
    } else {
      // Verified output that is not the planted codeword: counted with the
      // verification failures (the harness's ground-truth check failed).
      ++st.fail_verify;
    }

    if (opts.diagnose) {
      bool cond = true;
      if (p.r > 0 && dt > p.m) {
        cond = false;  // dim(V E) <= m < (d+t)r, condition (ii) cannot hold
      } else if (p.r > 0) {
        const SubspaceFq err_support = word_support(ctx, e);
        const SubspaceFq syn_support = word_support(ctx, syndrome(inst, e));
        const SubspaceFq full_product =
            product(SubspaceFq::bounded_degree(ctx, p.d + p.t - 1), err_support);
        cond = expand_syndrome_support(syn_support, p.t) == full_product &&
               product(SubspaceFq::bounded_degree(ctx, p.d + p.t), err_support).dim() ==
                   dt * p.r;
      }
      if (cond) {
        ++st.cond_trials;
        if (success) ++st.cond_successes;
      }
    }
  });
}

}  // namespace bdlrpc
