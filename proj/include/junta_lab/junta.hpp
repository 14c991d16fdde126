#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "junta_lab/boolfn.hpp"

namespace junta_lab {

/// A junta approximator: the relevant coordinate set as a bitmask, its
/// decision table indexed by the restriction of the input to that set, and
/// its advantage E_D[f * approx].
struct JuntaApprox {
  std::uint32_t coords = 0;
  Eigen::ArrayXd table;  // 2^{|coords|} entries in {-1, +1}
  double advantage = 0.0;

  double operator()(std::uint32_t x) const { return table[compress_bits(x, coords)]; }
};

/// Materializes a JuntaApprox as a full truth table on n variables.
TruthTable expand_junta(const JuntaApprox& approx, int n);

/// Adv_D(q, r) for r = 0..n. Nondecreasing in r; 1 at r = n for
/// deterministic q.
struct AdvantageCurve {
  std::vector<double> advantage;

  int max_budget() const { return static_cast<int>(advantage.size()) - 1; }
  double at(int r) const;
  double error(int r) const { return (1.0 - at(r)) / 2.0; }
};

/// E_{y~D}[output | y_S = x_S], exact. Returns nullopt when the
/// conditioning event has D-probability zero.
std::optional<double> conditional_mean(const ProbFunction& q, const Distribution& dist,
                                       std::uint32_t coords, std::uint32_t x);

/// E_D[ |conditional mean| ]: the advantage of the best S-junta.
/// Zero-probability cells contribute zero weight.
double advantage_of_set(const ProbFunction& q, const Distribution& dist, std::uint32_t coords);

/// The optimal S-junta: sign of the conditional mean per restriction, with
/// sign(0) = +1 and +1 on zero-probability cells.
JuntaApprox best_junta_on_set(const ProbFunction& q, const Distribution& dist,
                              std::uint32_t coords);

/// Exhaustive maximization of advantage_of_set over all |S| <= r. Ties
/// break toward the smallest bitmask. Guarded by kMaxJuntaSearchArity and
/// kMaxJuntaSearchSets.
JuntaApprox optimal_junta(const ProbFunction& q, const Distribution& dist, int r);

AdvantageCurve advantage_curve(const ProbFunction& q, const Distribution& dist);

/// Smallest r with (1 - Adv(q, r)) / 2 <= eps; nullopt if even the full
/// budget misses (possible for randomized q).
std::optional<int> junta_complexity(const AdvantageCurve& curve, double eps);

// TruthTable conveniences.
double advantage_of_set(const TruthTable& f, const Distribution& dist, std::uint32_t coords);
JuntaApprox optimal_junta(const TruthTable& f, const Distribution& dist, int r);
AdvantageCurve advantage_curve(const TruthTable& f, const Distribution& dist);

}  // namespace junta_lab
