#include "junta_lab/composition.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "junta_lab/rng.hpp"
#include "junta_lab/stability.hpp"

namespace junta_lab {

namespace {

void check_partition(const BudgetPartition& partition, int k) {
  if (static_cast<int>(partition.size()) != k) {
    throw ValidationError("partition has " + std::to_string(partition.size()) +
                          " parts, combiner arity is " + std::to_string(k));
  }
  for (int r : partition) {
    if (r < 0) throw ValidationError("budget parts must be nonnegative");
  }
}

Eigen::ArrayXd block_means(const ComposedInstance& inst, std::span<const std::uint32_t> blocks) {
  if (static_cast<int>(blocks.size()) != inst.k()) {
    throw ValidationError("expected " + std::to_string(inst.k()) + " blocks, got " +
                          std::to_string(blocks.size()));
  }
  Eigen::ArrayXd nu(inst.k());
  for (int i = 0; i < inst.k(); ++i) {
    if (blocks[i] >> inst.n()) {
      throw ValidationError("block " + std::to_string(i + 1) + " index out of range");
    }
    nu[i] = inst.f.expectation(blocks[i]);
  }
  return nu;
}

/// Joint law of (f output, approximator output) under D.
PairJoint block_joint(const ProbFunction& f, const Distribution& dist,
                      const JuntaApprox& approx) {
  PairJoint J;
  for (Eigen::Index x = 0; x < f.size(); ++x) {
    const double w = dist.weights[x];
    if (w == 0.0) continue;
    const double p_plus = f.p[x];
    if (approx(static_cast<std::uint32_t>(x)) > 0) {
      J.pp += w * p_plus;
      J.mp += w * (1.0 - p_plus);
    } else {
      J.pm += w * p_plus;
      J.mm += w * (1.0 - p_plus);
    }
  }
  return J;
}

double normalized_correlation(double adv, double mu) {
  return std::max(0.0, (adv - mu * mu) / (1.0 - mu * mu));
}

void check_mu_interior(double mu) {
  if (!(std::abs(mu) < 1.0 - 1e-9)) {
    throw DegenerateError("inner function is constant under D (|mu| = 1); "
                          "normalized correlations are undefined");
  }
}

std::vector<PairJoint> partition_joints(const InnerApproximators& inner,
                                        const BudgetPartition& partition, int n) {
  std::vector<PairJoint> joints;
  joints.reserve(partition.size());
  for (int r : partition) {
    joints.push_back(inner.joints[static_cast<std::size_t>(std::min(r, n))]);
  }
  return joints;
}

/// Runs fn on every composition of `budget` into k parts capped at `cap`,
/// first part descending. Partitions are reused across calls.
void for_each_partition(int k, int budget, int cap,
                        const std::function<void(const BudgetPartition&)>& fn) {
  BudgetPartition parts(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int i, int remaining) {
    if (i == k - 1) {
      if (remaining <= cap) {
        parts[static_cast<std::size_t>(i)] = remaining;
        fn(parts);
      }
      return;
    }
    for (int r = std::min(cap, remaining); r >= 0; --r) {
      parts[static_cast<std::size_t>(i)] = r;
      rec(i + 1, remaining - r);
    }
  };
  rec(0, budget);
}

}  // namespace

ComposedInstance make_instance(TruthTable g, ProbFunction f, Distribution dist) {
  if (f.n != dist.n) throw ValidationError("arity mismatch between f and its distribution");
  ComposedInstance inst{std::move(g), std::move(f), std::move(dist), 0.0};
  inst.mu = mean(inst.f, inst.dist);
  return inst;
}

ComposedInstance make_instance(TruthTable g, TruthTable f, Distribution dist) {
  return make_instance(std::move(g), as_prob(f), std::move(dist));
}

double compose_eval(const ComposedInstance& inst, std::span<const std::uint32_t> blocks) {
  return product_mean(inst.g.values, block_means(inst, blocks));
}

double compose_prob_plus(const ComposedInstance& inst, std::span<const std::uint32_t> blocks) {
  return (1.0 + compose_eval(inst, blocks)) / 2.0;
}

MaterializedComposition materialize(const ComposedInstance& inst) {
  const int bits = inst.n() * inst.k();
  if (bits > kMaxMaterializeBits) {
    throw CapacityError("composed domain needs " + std::to_string(bits) +
                        " bits; materialization is capped at " +
                        std::to_string(kMaxMaterializeBits));
  }
  const Eigen::Index size = Eigen::Index{1} << bits;
  Eigen::ArrayXd p(size);
  Eigen::ArrayXd w(size);
  const std::uint32_t block_mask = (1u << inst.n()) - 1;
  std::vector<std::uint32_t> blocks(static_cast<std::size_t>(inst.k()));
  for (Eigen::Index x = 0; x < size; ++x) {
    double weight = 1.0;
    for (int i = 0; i < inst.k(); ++i) {
      blocks[static_cast<std::size_t>(i)] =
          (static_cast<std::uint32_t>(x) >> (i * inst.n())) & block_mask;
      weight *= inst.dist.weights[blocks[static_cast<std::size_t>(i)]];
    }
    p[x] = compose_prob_plus(inst, blocks);
    w[x] = weight;
  }
  return MaterializedComposition{ProbFunction(bits, std::move(p)),
                                 Distribution(bits, std::move(w))};
}

InnerApproximators inner_approximators(const ComposedInstance& inst) {
  InnerApproximators out;
  out.curve.advantage.reserve(static_cast<std::size_t>(inst.n()) + 1);
  out.best.reserve(static_cast<std::size_t>(inst.n()) + 1);
  out.joints.reserve(static_cast<std::size_t>(inst.n()) + 1);
  for (int r = 0; r <= inst.n(); ++r) {
    out.best.push_back(optimal_junta(inst.f, inst.dist, r));
    out.curve.advantage.push_back(out.best.back().advantage);
    out.joints.push_back(block_joint(inst.f, inst.dist, out.best.back()));
  }
  return out;
}

CorrelationReport correlations(const ComposedInstance& inst, const AdvantageCurve& curve,
                               const BudgetPartition& partition) {
  check_partition(partition, inst.k());
  check_mu_interior(inst.mu);
  CorrelationReport out;
  out.alpha.resize(inst.k());
  out.beta.resize(inst.k());
  for (int i = 0; i < inst.k(); ++i) {
    const double adv = curve.at(partition[static_cast<std::size_t>(i)]);
    out.alpha[i] = normalized_correlation(adv * adv, inst.mu);
    out.beta[i] = normalized_correlation(adv, inst.mu);
  }
  return out;
}

namespace {

CanonicalCombiner canonical_h_from_joints(const ComposedInstance& inst,
                                          const std::vector<PairJoint>& joints);
double canonical_advantage_from_joints(const ComposedInstance& inst,
                                       const std::vector<PairJoint>& joints);

std::vector<PairJoint> approximator_joints(const ComposedInstance& inst,
                                           const std::vector<JuntaApprox>& approximators) {
  if (static_cast<int>(approximators.size()) != inst.k()) {
    throw ValidationError("expected one approximator per block");
  }
  std::vector<PairJoint> joints;
  joints.reserve(approximators.size());
  for (const JuntaApprox& q : approximators) {
    joints.push_back(block_joint(inst.f, inst.dist, q));
  }
  return joints;
}

}  // namespace

CanonicalCombiner canonical_h(const ComposedInstance& inst, const InnerApproximators& inner,
                              const BudgetPartition& partition) {
  check_partition(partition, inst.k());
  return canonical_h_from_joints(inst, partition_joints(inner, partition, inst.n()));
}

CanonicalCombiner canonical_h(const ComposedInstance& inst,
                              const std::vector<JuntaApprox>& approximators) {
  return canonical_h_from_joints(inst, approximator_joints(inst, approximators));
}

namespace {

CanonicalCombiner canonical_h_from_joints(const ComposedInstance& inst,
                                          const std::vector<PairJoint>& joints) {
  check_mu_interior(inst.mu);
  const int k = inst.k();

  // Conditional mean of f given the approximator output, per block.
  Eigen::ArrayXd mean_given_minus(k), mean_given_plus(k);
  CanonicalCombiner out;
  for (int i = 0; i < k; ++i) {
    const PairJoint& J = joints[static_cast<std::size_t>(i)];
    const double w_minus = J.mm + J.pm;
    const double w_plus = J.mp + J.pp;
    if (w_minus == 0.0 || w_plus == 0.0) out.constant_blocks.push_back(i + 1);
    mean_given_minus[i] = w_minus == 0.0 ? 1.0 : (J.pm - J.mm) / w_minus;
    mean_given_plus[i] = w_plus == 0.0 ? 1.0 : (J.pp - J.mp) / w_plus;
  }

  const BiasedSpectrum spec = biased_spectrum(inst.g, inst.mu);
  Eigen::ArrayXd h(Eigen::Index{1} << k);
  Eigen::ArrayXd nu(k);
  for (Eigen::Index y = 0; y < h.size(); ++y) {
    for (int i = 0; i < k; ++i) {
      nu[i] = (y >> i) & 1 ? mean_given_plus[i] : mean_given_minus[i];
    }
    h[y] = sign_pm(mean_under_product(spec, nu));
  }
  out.h = TruthTable(k, std::move(h));
  return out;
}

double canonical_advantage_from_joints(const ComposedInstance& inst,
                                       const std::vector<PairJoint>& joints) {
  check_mu_interior(inst.mu);
  // sign of the conditional table is the optimal combiner, so the
  // advantage is the absolute sum directly.
  const Eigen::ArrayXd u = joint_marginal_table(inst.g.values, joints);
  const double adv = u.abs().sum();

  Eigen::ArrayXd alpha(inst.k());
  for (int i = 0; i < inst.k(); ++i) {
    const double cross = joints[static_cast<std::size_t>(i)].cross_moment();
    alpha[i] = normalized_correlation(cross * cross, inst.mu);
  }
  const double floor = stab_fourier(biased_spectrum(inst.g, inst.mu), alpha);
  if (adv < floor - kTol.algebra) {
    throw BoundViolation("canonical advantage " + std::to_string(adv) +
                         " fell below Stab_alpha = " + std::to_string(floor));
  }
  return adv;
}

}  // namespace

double canonical_advantage(const ComposedInstance& inst, const InnerApproximators& inner,
                           const BudgetPartition& partition) {
  check_partition(partition, inst.k());
  return canonical_advantage_from_joints(inst, partition_joints(inner, partition, inst.n()));
}

double canonical_advantage(const ComposedInstance& inst,
                           const std::vector<JuntaApprox>& approximators) {
  return canonical_advantage_from_joints(inst, approximator_joints(inst, approximators));
}

double opt_upper_bound(const ComposedInstance& inst, const InnerApproximators& inner,
                       const BudgetPartition& partition) {
  const CorrelationReport corr = correlations(inst, inner.curve, partition);
  return std::sqrt(stab_fourier(biased_spectrum(inst.g, inst.mu), corr.beta));
}

PartitionChoice best_partition(const ComposedInstance& inst, const InnerApproximators& inner,
                               int budget) {
  check_mu_interior(inst.mu);
  if (budget < 0) throw ValidationError("budget must be nonnegative");
  const int k = inst.k();
  const int n = inst.n();
  const int effective = std::min(budget, k * n);
  const BiasedSpectrum spec = biased_spectrum(inst.g, inst.mu);

  PartitionChoice out;
  double best = -1.0;
  Eigen::ArrayXd beta(k);
  for_each_partition(k, effective, std::min(n, effective), [&](const BudgetPartition& parts) {
    for (int i = 0; i < k; ++i) {
      beta[i] = normalized_correlation(inner.curve.at(parts[static_cast<std::size_t>(i)]),
                                       inst.mu);
    }
    const double value = stab_fourier(spec, beta);
    if (value > best) {
      best = value;
      out.partition = parts;
      out.tied = false;
    } else if (value == best) {
      out.tied = true;
    }
  });
  out.stab_beta = best;
  return out;
}

SandwichReport sandwich_check(const ComposedInstance& inst, int budget) {
  SandwichReport report;
  report.budget = budget;
  const InnerApproximators inner = inner_approximators(inst);
  report.choice = best_partition(inst, inner, budget);
  report.stab_beta = report.choice.stab_beta;

  const CorrelationReport corr = correlations(inst, inner.curve, report.choice.partition);
  report.stab_alpha = stab_fourier(biased_spectrum(inst.g, inst.mu), corr.alpha);

  // Optimal canonical composed form: maximize the exact canonical
  // advantage over every partition, not only the stability maximizer.
  const int effective = std::min(budget, inst.k() * inst.n());
  double best_canon = -2.0;
  BudgetPartition best_parts;
  for_each_partition(inst.k(), effective, std::min(inst.n(), effective),
                     [&](const BudgetPartition& parts) {
                       const double adv = canonical_advantage(inst, inner, parts);
                       if (adv > best_canon) {
                         best_canon = adv;
                         best_parts = parts;
                       }
                     });
  report.canonical_adv = best_canon;
  report.canonical_partition = best_parts;

  const MaterializedComposition composed = materialize(inst);
  report.optimal_adv = optimal_junta(composed.q, composed.dist, budget).advantage;

  report.lower = report.stab_beta * report.stab_beta;
  report.upper = std::sqrt(report.stab_beta);
  report.bounds_ok = report.lower - kTol.algebra <= report.canonical_adv &&
                     report.canonical_adv <= report.optimal_adv + kTol.algebra &&
                     report.optimal_adv <= report.upper + kTol.algebra;
  return report;
}

Error4Report error4_check(const ComposedInstance& inst, int budget, std::uint64_t seed) {
  SandwichReport sandwich = sandwich_check(inst, budget);
  Error4Report report;
  report.budget = budget;
  report.canonical_error = (1.0 - sandwich.canonical_adv) / 2.0;
  report.optimal_error = (1.0 - sandwich.optimal_adv) / 2.0;
  report.within_factor4 =
      report.canonical_error <= 4.0 * report.optimal_error + kTol.algebra;

  // Spot-check the product inequality behind the factor: for vectors with
  // 1 - alpha_i <= 2 (1 - beta_i), 1 - prod alpha <= 2 (1 - prod beta).
  report.product_inequality_trials = 512;
  report.product_inequality_ok = true;
  CounterRng rng(seed, 0x70726f64);
  for (int t = 0; t < report.product_inequality_trials; ++t) {
    const int m = 1 + static_cast<int>(rng.next_u64() % 8);
    double prod_alpha = 1.0, prod_beta = 1.0;
    for (int i = 0; i < m; ++i) {
      const double beta = rng.next_unit();
      const double alpha_min = std::max(0.0, 2.0 * beta - 1.0);
      const double alpha = alpha_min + (1.0 - alpha_min) * rng.next_unit();
      prod_alpha *= alpha;
      prod_beta *= beta;
    }
    if (1.0 - prod_alpha > 2.0 * (1.0 - prod_beta) + kTol.normalization) {
      report.product_inequality_ok = false;
    }
  }
  return report;
}

double xor_error_bound(const AdvantageCurve& curve, int budget, int k) {
  if (budget < 0) throw ValidationError("budget must be nonnegative");
  if (k < 1) throw ValidationError("block count must be at least 1");
  const int n = curve.max_budget();
  const int effective = std::min(budget, k * n);
  // Maximize prod_i Adv(f, r_i) over partitions: separable, so a
  // blocks-by-budget table suffices.
  std::vector<double> best(static_cast<std::size_t>(effective) + 1, 0.0);
  for (int b = 0; b <= effective; ++b) best[static_cast<std::size_t>(b)] = curve.at(b);
  for (int block = 2; block <= k; ++block) {
    std::vector<double> next(static_cast<std::size_t>(effective) + 1, 0.0);
    for (int b = 0; b <= effective; ++b) {
      for (int r = 0; r <= std::min(b, n); ++r) {
        next[static_cast<std::size_t>(b)] =
            std::max(next[static_cast<std::size_t>(b)],
                     curve.at(r) * best[static_cast<std::size_t>(b - r)]);
      }
    }
    best.swap(next);
  }
  const double max_product = std::max(0.0, best[static_cast<std::size_t>(effective)]);
  return (1.0 - std::sqrt(max_product)) / 2.0;
}

double xor_error_bound(const ProbFunction& f, const Distribution& dist, int budget, int k) {
  return xor_error_bound(advantage_curve(f, dist), budget, k);
}

}  // namespace junta_lab
