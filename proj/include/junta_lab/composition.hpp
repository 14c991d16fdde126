#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "junta_lab/boolfn.hpp"
#include "junta_lab/fourier.hpp"
#include "junta_lab/junta.hpp"

namespace junta_lab {

/// The composed function g(f(x^(1)), ..., f(x^(k))) under the product base
/// distribution, which is never materialized. mu caches E_D[f].
struct ComposedInstance {
  TruthTable g;      // arity k combiner
  ProbFunction f;    // arity n inner function
  Distribution dist; // base distribution on the inner domain
  double mu = 0.0;

  int k() const { return g.n; }
  int n() const { return f.n; }
};

ComposedInstance make_instance(TruthTable g, ProbFunction f, Distribution dist);
ComposedInstance make_instance(TruthTable g, TruthTable f, Distribution dist);

/// E[(g o f)(x)] at one input given as k block indices; +/-1 valued inner
/// functions return +/-1 exactly. Lazy: no composed table is built.
double compose_eval(const ComposedInstance& inst, std::span<const std::uint32_t> blocks);

/// Pr[(g o f)(x) = +1] at one input.
double compose_prob_plus(const ComposedInstance& inst, std::span<const std::uint32_t> blocks);

/// Explicit composed table and product distribution; only for cross-check
/// oracles, guarded by n*k <= kMaxMaterializeBits.
struct MaterializedComposition {
  ProbFunction q;
  Distribution dist;
};
MaterializedComposition materialize(const ComposedInstance& inst);

/// Best inner approximators, advantage curve, and the per-budget joint law
/// of (f, best r-junta) under D. Everything downstream reads budgets from
/// here so each budget is solved once.
struct InnerApproximators {
  AdvantageCurve curve;
  std::vector<JuntaApprox> best;   // indexed by budget r = 0..n
  std::vector<PairJoint> joints;   // joint of (f output, approximator output)
};
InnerApproximators inner_approximators(const ComposedInstance& inst);

using BudgetPartition = std::vector<int>;

/// Lower (alpha) and upper (beta) normalized correlations of a partition:
///   alpha_i = max(0, (Adv(f,r_i)^2 - mu^2) / (1 - mu^2))
///   beta_i  = max(0, (Adv(f,r_i)   - mu^2) / (1 - mu^2))
struct CorrelationReport {
  Eigen::ArrayXd alpha;
  Eigen::ArrayXd beta;
};
CorrelationReport correlations(const ComposedInstance& inst, const AdvantageCurve& curve,
                               const BudgetPartition& partition);

/// The combiner h(y) = sign E[(g o f)(x) | per-block approximator outputs
/// equal y], computed from per-block conditional means by block
/// independence. Rows conditioned on an unreachable approximator value get
/// +1 and the block is flagged.
struct CanonicalCombiner {
  TruthTable h;
  std::vector<int> constant_blocks;  // blocks whose approximator is constant
};
CanonicalCombiner canonical_h(const ComposedInstance& inst, const InnerApproximators& inner,
                              const BudgetPartition& partition);
/// General form: one arbitrary per-block approximator each, not
/// necessarily the optimal junta for any budget.
CanonicalCombiner canonical_h(const ComposedInstance& inst,
                              const std::vector<JuntaApprox>& approximators);

/// Exact advantage of h(f~_{r_1}, ..., f~_{r_k}) against g o f, from the k
/// per-block joint laws: O(2^k * k) plus the inner-junta solves. Certified
/// to be at least Stab_{mu,alpha}(g) - tol, with alpha built from the
/// per-block correlations E[f * approximator].
double canonical_advantage(const ComposedInstance& inst, const InnerApproximators& inner,
                           const BudgetPartition& partition);
double canonical_advantage(const ComposedInstance& inst,
                           const std::vector<JuntaApprox>& approximators);

/// sqrt(Stab_{mu,beta}(g)): the advantage ceiling for any junta honoring
/// the partition's per-block budgets.
double opt_upper_bound(const ComposedInstance& inst, const InnerApproximators& inner,
                       const BudgetPartition& partition);

/// Maximizes Stab_{mu,beta(r_1..r_k)}(g) over compositions of R into k
/// nonnegative parts (parts capped at n; only curve values matter). Ties
/// keep the first maximizer in descending enumeration order, so equal-value
/// partitions come out front-loaded, e.g. (3,3,0).
struct PartitionChoice {
  BudgetPartition partition;
  double stab_beta = 0.0;
  bool tied = false;
};
PartitionChoice best_partition(const ComposedInstance& inst, const InnerApproximators& inner,
                               int budget);

/// All four quantities of the advantage sandwich at the maximizing
/// correlation vector, with the exhaustive optimal R-junta over the
/// materialized composed space (block-respecting sets and not).
struct SandwichReport {
  int budget = 0;
  PartitionChoice choice;
  double stab_beta = 0.0;
  double stab_alpha = 0.0;
  double canonical_adv = 0.0;   // max over partitions
  BudgetPartition canonical_partition;
  double optimal_adv = 0.0;     // exhaustive search over the composed domain
  double lower = 0.0;           // stab_beta^2
  double upper = 0.0;           // sqrt(stab_beta)
  bool bounds_ok = false;
};
SandwichReport sandwich_check(const ComposedInstance& inst, int budget);

/// Canonical error within a factor 4 of the exhaustive optimum, plus a
/// seeded spot-check of the product inequality
/// 1 - prod alpha_i <= 2 (1 - prod beta_i) used in its proof.
struct Error4Report {
  int budget = 0;
  double canonical_error = 0.0;
  double optimal_error = 0.0;
  bool within_factor4 = false;
  int product_inequality_trials = 0;
  bool product_inequality_ok = false;
};
Error4Report error4_check(const ComposedInstance& inst, int budget, std::uint64_t seed = 0);

/// min over partitions of (1 - sqrt(prod_i (1 - 2 error(f, r_i)))) / 2:
/// the error floor for parity combiners, from the advantage curve alone.
double xor_error_bound(const ProbFunction& f, const Distribution& dist, int budget, int k);
double xor_error_bound(const AdvantageCurve& curve, int budget, int k);

}  // namespace junta_lab
