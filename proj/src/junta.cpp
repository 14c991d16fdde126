#include "junta_lab/junta.hpp"

#include <cmath>
#include <string>

namespace junta_lab {

namespace {

void check_pair(const ProbFunction& q, const Distribution& dist) {
  if (q.n != dist.n) throw ValidationError("arity mismatch between function and distribution");
}

void check_coords(std::uint32_t coords, int n) {
  if (n < 32 && (coords >> n) != 0) {
    throw ValidationError("coordinate set " + std::to_string(coords) +
                          " references coordinates beyond arity " + std::to_string(n));
  }
}

/// Per-restriction sums of w*(2p-1) and of w over the cells of S.
struct CellSums {
  Eigen::ArrayXd signed_mass;  // sum of weight * E[output]
  Eigen::ArrayXd weight;       // sum of weight
};

CellSums cell_sums(const ProbFunction& q, const Distribution& dist, std::uint32_t coords) {
  const int cells = 1 << popcount32(coords);
  CellSums out{Eigen::ArrayXd::Zero(cells), Eigen::ArrayXd::Zero(cells)};
  const Eigen::Index size = q.size();
  for (Eigen::Index x = 0; x < size; ++x) {
    const double w = dist.weights[x];
    if (w == 0.0) continue;
    const std::uint32_t cell = compress_bits(static_cast<std::uint32_t>(x), coords);
    out.signed_mass[cell] += w * (2.0 * q.p[x] - 1.0);
    out.weight[cell] += w;
  }
  return out;
}

}  // namespace

TruthTable expand_junta(const JuntaApprox& approx, int n) {
  Eigen::ArrayXd v(Eigen::Index{1} << n);
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    v[x] = approx(static_cast<std::uint32_t>(x));
  }
  return TruthTable(n, std::move(v));
}

double AdvantageCurve::at(int r) const {
  if (r < 0) throw ValidationError("budget must be nonnegative");
  if (r >= static_cast<int>(advantage.size())) return advantage.back();
  return advantage[static_cast<std::size_t>(r)];
}

std::optional<double> conditional_mean(const ProbFunction& q, const Distribution& dist,
                                       std::uint32_t coords, std::uint32_t x) {
  check_pair(q, dist);
  check_coords(coords, q.n);
  const CellSums sums = cell_sums(q, dist, coords);
  const std::uint32_t cell = compress_bits(x, coords);
  if (sums.weight[cell] == 0.0) return std::nullopt;
  return sums.signed_mass[cell] / sums.weight[cell];
}

double advantage_of_set(const ProbFunction& q, const Distribution& dist, std::uint32_t coords) {
  check_pair(q, dist);
  check_coords(coords, q.n);
  return cell_sums(q, dist, coords).signed_mass.abs().sum();
}

JuntaApprox best_junta_on_set(const ProbFunction& q, const Distribution& dist,
                              std::uint32_t coords) {
  check_pair(q, dist);
  check_coords(coords, q.n);
  const CellSums sums = cell_sums(q, dist, coords);
  JuntaApprox out;
  out.coords = coords;
  out.table = sums.signed_mass.unaryExpr([](double v) { return sign_pm(v); });
  out.advantage = sums.signed_mass.abs().sum();
  return out;
}

JuntaApprox optimal_junta(const ProbFunction& q, const Distribution& dist, int r) {
  check_pair(q, dist);
  if (r < 0) throw ValidationError("budget must be nonnegative");
  const int n = q.n;
  if (r > n) r = n;
  if (n > kMaxJuntaSearchArity) {
    throw CapacityError("arity " + std::to_string(n) + " too large for exhaustive junta search");
  }
  if (binomial(n, r) > kMaxJuntaSearchSets) {
    throw CapacityError("C(" + std::to_string(n) + "," + std::to_string(r) +
                        ") candidate sets exceed the search limit");
  }

  std::uint32_t best_mask = 0;
  double best_adv = advantage_of_set(q, dist, 0);
  for (int size = 1; size <= r; ++size) {
    for (std::uint32_t mask = (1u << size) - 1; mask < (1u << n);
         mask = next_same_popcount(mask)) {
      const double adv = advantage_of_set(q, dist, mask);
      if (adv > best_adv || (adv == best_adv && mask < best_mask)) {
        best_adv = adv;
        best_mask = mask;
      }
      if (mask == 0) break;
    }
  }
  return best_junta_on_set(q, dist, best_mask);
}

AdvantageCurve advantage_curve(const ProbFunction& q, const Distribution& dist) {
  AdvantageCurve curve;
  curve.advantage.reserve(static_cast<std::size_t>(q.n) + 1);
  for (int r = 0; r <= q.n; ++r) {
    curve.advantage.push_back(optimal_junta(q, dist, r).advantage);
  }
  return curve;
}

std::optional<int> junta_complexity(const AdvantageCurve& curve, double eps) {
  for (int r = 0; r < static_cast<int>(curve.advantage.size()); ++r) {
    if (curve.error(r) <= eps + kTol.normalization) return r;
  }
  return std::nullopt;
}

double advantage_of_set(const TruthTable& f, const Distribution& dist, std::uint32_t coords) {
  return advantage_of_set(as_prob(f), dist, coords);
}

JuntaApprox optimal_junta(const TruthTable& f, const Distribution& dist, int r) {
  return optimal_junta(as_prob(f), dist, r);
}

AdvantageCurve advantage_curve(const TruthTable& f, const Distribution& dist) {
  return advantage_curve(as_prob(f), dist);
}

}  // namespace junta_lab
