#include "junta_lab/experiments.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "junta_lab/composition.hpp"
#include "junta_lab/rng.hpp"
#include "junta_lab/stability.hpp"

namespace junta_lab {

ExperimentReport counterexample_majority_parity(int k, int n) {
  if (k < 1 || k % 2 == 0) throw ValidationError("k must be odd and positive");
  if (n < k) throw ValidationError("n must be at least k");
  const int budget = (n - 1) * k;

  ExperimentReport report;
  report.name = "majority-of-parities budget split";
  report.add_param("k", k);
  report.add_param("n", n);
  report.add_param("budget", budget);

  const TruthTable g = make_majority(k);
  const TruthTable f = make_xor(n);
  const Distribution dist = uniform_dist(n).to_distribution();
  const ComposedInstance inst = make_instance(g, f, dist);
  const InnerApproximators inner = inner_approximators(inst);

  // Equal split: each block gets n-1, where parity admits no advantage.
  const std::vector<PairJoint> equal_joints(
      static_cast<std::size_t>(k), inner.joints[static_cast<std::size_t>(n - 1)]);
  const double equal_adv = joint_correlation(g.values, g.values, equal_joints);
  const double equal_error = (1.0 - equal_adv) / 2.0;
  report.add_quantity("equal_split_error", equal_error);
  report.assert_that("equal_split_error", "equals 1/2 exactly", equal_error,
                     equal_error == 0.5);

  // Lopsided allocation: k-1 exact parities combined by the smaller
  // majority, within 2/sqrt(k) of the target.
  double disagree = 0.0;
  for (std::uint32_t y = 0; y < (1u << k); ++y) {
    const int ones_all = popcount32(y);
    const int ones_head = popcount32(y & ((1u << (k - 1)) - 1));
    const double maj_k = 2 * ones_all - k >= 0 ? 1.0 : -1.0;
    const double maj_head = 2 * ones_head - (k - 1) >= 0 ? 1.0 : -1.0;
    if (maj_k != maj_head) disagree += 1.0;
  }
  const double lopsided_error = disagree / std::pow(2.0, k);
  const double bound = 2.0 / std::sqrt(static_cast<double>(k));
  report.add_quantity("lopsided_error", lopsided_error);
  report.add_quantity("lopsided_bound", bound);
  report.assert_that("lopsided_error", "at most 2/sqrt(k)", lopsided_error,
                     lopsided_error <= bound);

  const PartitionChoice choice = best_partition(inst, inner, budget);
  for (int i = 0; i < k; ++i) {
    report.add_quantity("partition_" + std::to_string(i + 1),
                        choice.partition[static_cast<std::size_t>(i)]);
  }
  report.add_quantity("stab_beta", choice.stab_beta);
  const double canonical_adv = canonical_advantage(inst, inner, choice.partition);
  const double canonical_error = (1.0 - canonical_adv) / 2.0;
  report.add_quantity("best_canonical_error", canonical_error);
  report.assert_that("best_canonical_error", "no worse than the equal split", canonical_error,
                     canonical_error <= equal_error + kTol.algebra);
  return report;
}

namespace {

/// Strictly positive conditional means over every restriction with at most
/// half the coordinates fixed; returns false (and the offending minimum)
/// as soon as one fails.
bool all_small_sets_positive(const TruthTable& f, double* min_seen) {
  const int n = f.n;
  *min_seen = 1.0;
  const double cell_weight = 1.0;  // uniform weights cancel in the sign
  for (int size = 0; size <= n / 2; ++size) {
    std::uint32_t mask = size == 0 ? 0 : (1u << size) - 1;
    while (true) {
      const int cells = 1 << size;
      std::vector<double> signed_mass(static_cast<std::size_t>(cells), 0.0);
      for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(f.size()); ++x) {
        signed_mass[compress_bits(x, mask)] += cell_weight * f.values[x];
      }
      for (double m : signed_mass) {
        const double mean = m / static_cast<double>(f.size() / cells);
        if (mean < *min_seen) *min_seen = mean;
        if (mean <= 0.0) return false;
      }
      if (size == 0) break;
      mask = next_same_popcount(mask);
      if (mask >= (1u << n) || mask == 0) break;
    }
  }
  return true;
}

}  // namespace

ExperimentReport counterexample_random_and(int n, int k, std::uint64_t seed) {
  if (n < 2 || n > 16) throw ValidationError("n must lie in [2, 16]");
  if (k < 1) throw ValidationError("k must be at least 1");

  ExperimentReport report;
  report.name = "random inner function under AND";
  report.add_param("n", n);
  report.add_param("k", k);
  report.add_param("seed", static_cast<double>(seed));

  // Ideal analysis: when every small junta collapses to the constant +1,
  // the composed-form error against AND_j is exactly 1 - q^j.
  const double q_ideal = 0.75;
  report.add_param("q_ideal", q_ideal);
  for (int j = 1; j <= 10; ++j) {
    const TruthTable g = make_and(j);
    const PairJoint J{0.0, 1.0 - q_ideal, 0.0, q_ideal};  // approximator pinned at +1
    const std::vector<PairJoint> joints(static_cast<std::size_t>(j), J);
    const TruthTable plus_one(j, Eigen::ArrayXd::Ones(Eigen::Index{1} << j));
    const double adv = joint_correlation(g.values, plus_one.values, joints);
    const double error = (1.0 - adv) / 2.0;
    report.add_quantity("ideal_error_k" + std::to_string(j), error);
    const double expected = 1.0 - std::pow(q_ideal, j);
    report.assert_that("ideal_error_k" + std::to_string(j), "equals 1 - (3/4)^k", error,
                       std::abs(error - expected) <= 1e-15);
  }

  // Sampled instance: values are +1 with probability 3/4; retry until the
  // mean is at most 1/2 and every small-set conditional mean is strictly
  // positive.
  const int retry_cap = 500;
  int attempts = 0;
  TruthTable f;
  double min_cond = 0.0;
  bool found = false;
  for (; attempts < retry_cap; ++attempts) {
    CounterRng rng(seed, static_cast<std::uint64_t>(attempts));
    Eigen::ArrayXd values(Eigen::Index{1} << n);
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      values[i] = rng.next_unit() < q_ideal ? 1.0 : -1.0;
    }
    TruthTable candidate(n, std::move(values));
    if (candidate.values.mean() > 0.5) continue;
    if (!all_small_sets_positive(candidate, &min_cond)) continue;
    f = std::move(candidate);
    found = true;
    ++attempts;
    break;
  }
  report.add_quantity("attempts", attempts);
  report.assert_that("sampling", "positivity conditions met within the retry cap",
                     attempts, found);
  if (!found) return report;

  const double mu = f.values.mean();
  const double q_hat = (1.0 + mu) / 2.0;
  report.add_quantity("mean", mu);
  report.add_quantity("q_hat", q_hat);
  report.add_quantity("min_conditional_mean", min_cond);
  report.assert_that("mean", "at most 1/2", mu, mu <= 0.5);
  report.assert_that("min_conditional_mean", "strictly positive", min_cond, min_cond > 0.0);

  // Every junta on at most n/2 coordinates is therefore the constant +1,
  // so every composed form collapses to the constant +1 as well.
  const Distribution dist = uniform_dist(n).to_distribution();
  bool all_constant = true;
  for (int r = 0; r <= n / 2; ++r) {
    const JuntaApprox best = optimal_junta(f, dist, r);
    if (!(best.table == 1.0).all()) all_constant = false;
  }
  report.assert_that("small_juntas", "every budget up to n/2 yields the constant +1",
                     all_constant ? 1.0 : 0.0, all_constant);

  // Composed acceptance probability factorizes across blocks; route the
  // left side through the biased spectrum so the check is two-path.
  const TruthTable g = make_and(k);
  const BiasedSpectrum spec = biased_spectrum(g, 0.0);
  const double composed_mean =
      mean_under_product(spec, Eigen::ArrayXd::Constant(k, mu));
  const double prob_plus = (1.0 + composed_mean) / 2.0;
  const double prob_expected = std::pow(q_hat, k);
  report.add_quantity("composed_prob_plus", prob_plus);
  report.assert_that("composed_prob_plus", "equals Pr[f = +1]^k", prob_plus,
                     std::abs(prob_plus - prob_expected) <= kTol.algebra);

  const double composed_error = 1.0 - prob_plus;
  report.add_quantity("constant_plus_error", composed_error);
  if (k >= 3 && q_hat <= 0.75) {
    report.assert_that("constant_plus_error", "exceeds 1/2 for k >= 3 when q <= 3/4",
                       composed_error, composed_error > 0.5);
  }
  return report;
}

ExperimentReport counterexample_noncomposed() {
  ExperimentReport report;
  report.name = "optimal approximator is not of composed form";
  report.add_param("k", 2);
  report.add_param("n", 2);
  report.add_param("budget", 4);

  // Acceptance probabilities per block input, index bit 1 meaning +1.
  Eigen::ArrayXd p(4);
  p << 0.6, 0.75, 0.75, 1.0;
  const ProbFunction f(2, p);
  const Distribution dist = uniform_dist(2).to_distribution();
  const TruthTable g = make_and(2);

  // Pointwise optimum: accept where p1*p2 >= 1/2.
  double optimal_error = 0.0;
  for (int x1 = 0; x1 < 4; ++x1) {
    for (int x2 = 0; x2 < 4; ++x2) {
      const double prod = p[x1] * p[x2];
      optimal_error += std::min(prod, 1.0 - prod) / 16.0;
    }
  }
  report.add_quantity("optimal_error", optimal_error);

  // Same optimum through the module route: exhaustive 4-junta search on
  // the materialized composed instance.
  const ComposedInstance inst = make_instance(g, f, dist);
  const MaterializedComposition composed = materialize(inst);
  const double optimal_error_search =
      (1.0 - optimal_junta(composed.q, composed.dist, 4).advantage) / 2.0;
  report.add_quantity("optimal_error_search", optimal_error_search);
  report.assert_that("optimal_error", "pointwise rule matches exhaustive search",
                     optimal_error_search,
                     std::abs(optimal_error - optimal_error_search) <= kTol.algebra);

  // The accept rule on the probability levels themselves.
  report.assert_that("rule_accepts_3/4_3/4", "0.75 * 0.75 >= 1/2", 0.75 * 0.75,
                     0.75 * 0.75 >= 0.5);
  report.assert_that("rule_rejects_3/5_3/4", "0.6 * 0.75 < 1/2", 0.6 * 0.75,
                     0.6 * 0.75 < 0.5);

  // Exhaust h(q1, q2) over all 16^3 candidates.
  double best_composed = 1.0;
  int best_h = 0, best_q1 = 0, best_q2 = 0;
  int case_levels34_1 = 0, case_levels35_34 = 0, case_levels35_1 = 0;
  for (int q1 = 0; q1 < 16; ++q1) {
    // Which probability levels does q1 classify the same way? The 3/4
    // level has two inputs (indices 1 and 2) and only counts as merged
    // with another level when q1 agrees on both.
    const int v35 = q1 & 1;
    const int v34a = (q1 >> 1) & 1;
    const int v34b = (q1 >> 2) & 1;
    const int v1 = (q1 >> 3) & 1;
    const bool level34_uniform = v34a == v34b;
    if (level34_uniform && v34a == v1) ++case_levels34_1;
    if (level34_uniform && v34a == v35) ++case_levels35_34;
    if (v35 == v1) ++case_levels35_1;
    for (int q2 = 0; q2 < 16; ++q2) {
      for (int h = 0; h < 16; ++h) {
        double error = 0.0;
        for (int x1 = 0; x1 < 4; ++x1) {
          for (int x2 = 0; x2 < 4; ++x2) {
            const int y1 = (q1 >> x1) & 1;
            const int y2 = (q2 >> x2) & 1;
            const int accept = (h >> (y1 | (y2 << 1))) & 1;
            const double prod = p[x1] * p[x2];
            error += (accept ? 1.0 - prod : prod) / 16.0;
          }
        }
        if (error < best_composed) {
          best_composed = error;
          best_h = h;
          best_q1 = q1;
          best_q2 = q2;
        }
      }
    }
  }
  report.add_quantity("composed_min_error", best_composed);
  report.add_quantity("composed_argmin_h", best_h);
  report.add_quantity("composed_argmin_q1", best_q1);
  report.add_quantity("composed_argmin_q2", best_q2);
  report.add_quantity("case_count_34_with_1", case_levels34_1);
  report.add_quantity("case_count_35_with_34", case_levels35_34);
  report.add_quantity("case_count_35_with_1", case_levels35_1);

  const double gap = best_composed - optimal_error;
  report.add_quantity("gap", gap);
  report.assert_that("gap", "composed minimum strictly above the optimum", gap, gap > 1e-4);
  report.assert_that("case_analysis", "all three level-merge branches occur",
                     static_cast<double>(std::min({case_levels34_1, case_levels35_34,
                                                   case_levels35_1})),
                     case_levels34_1 > 0 && case_levels35_34 > 0 && case_levels35_1 > 0);
  return report;
}

}  // namespace junta_lab
