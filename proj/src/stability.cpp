#include "junta_lab/stability.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "junta_lab/rng.hpp"

namespace junta_lab {

namespace {

void check_same_arity(const TruthTable& g, const Eigen::ArrayXd& rho) {
  if (rho.size() != g.n) {
    throw ValidationError("correlation vector has " + std::to_string(rho.size()) +
                          " entries, function arity is " + std::to_string(g.n));
  }
}

int ceil_fraction(double delta, int k) {
  int m = static_cast<int>(std::ceil(delta * k - 1e-9));
  if (m < 0) m = 0;
  if (m > k) m = k;
  return m;
}

}  // namespace

void validate_correlations(const Eigen::ArrayXd& rho) {
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    if (!(rho[i] >= 0.0 && rho[i] <= 1.0)) {
      throw ValidationError("rho[" + std::to_string(i + 1) + "] = " + std::to_string(rho[i]) +
                            " outside [0,1]");
    }
  }
}

bool is_symmetric(const TruthTable& g) {
  for (int i = 0; i + 1 < g.n; ++i) {
    const std::uint32_t bit_lo = 1u << i;
    const std::uint32_t bit_hi = 1u << (i + 1);
    for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(g.size()); ++x) {
      const bool has_lo = x & bit_lo;
      const bool has_hi = x & bit_hi;
      if (has_lo == has_hi) continue;
      const std::uint32_t swapped = x ^ bit_lo ^ bit_hi;
      if (g.values[x] != g.values[swapped]) return false;
    }
  }
  return true;
}

double stab_fourier(const BiasedSpectrum& spec, const Eigen::ArrayXd& rho) {
  if (rho.size() != spec.k) {
    throw ValidationError("correlation vector arity " + std::to_string(rho.size()) +
                          " does not match spectrum arity " + std::to_string(spec.k));
  }
  return subset_product_dot(spec.coeffs.square(), rho);
}

double stab_fourier(const BiasedSpectrum& spec, double rho) {
  return stab_fourier(spec, Eigen::ArrayXd::Constant(spec.k, rho));
}

double stab_fourier(const TruthTable& g, double mu, const Eigen::ArrayXd& rho) {
  check_same_arity(g, rho);
  validate_correlations(rho);
  return stab_fourier(biased_spectrum(g, mu), rho);
}

SampledStability stab_sampled(const TruthTable& g, double mu, const Eigen::ArrayXd& rho,
                              std::int64_t samples, std::uint64_t seed) {
  check_same_arity(g, rho);
  validate_correlations(rho);
  if (samples < 1) throw ValidationError("sample count must be at least 1");
  const int k = g.n;
  double sum = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    CounterRng rng(seed, static_cast<std::uint64_t>(s));
    std::uint32_t y = 0;
    std::uint32_t z = 0;
    for (int i = 0; i < k; ++i) {
      const double yi = rng.next_pm(mu);
      if (yi > 0) y |= 1u << i;
      double zi = yi;
      if (rho[i] < 1.0 && rng.next_unit() >= rho[i]) zi = rng.next_pm(mu);
      if (zi > 0) z |= 1u << i;
    }
    sum += g(y) * g(z);
  }
  SampledStability out;
  out.samples = samples;
  out.value = sum / static_cast<double>(samples);
  if (samples > 1) {
    // Products are +/-1, so the sample variance is N(1 - mean^2)/(N-1).
    const double var = (1.0 - out.value * out.value) * static_cast<double>(samples) /
                       static_cast<double>(samples - 1);
    out.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(samples));
  }
  return out;
}

double stab_xor_closed(double mu, const Eigen::ArrayXd& rho) {
  validate_correlations(rho);
  double out = 1.0;
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    out *= rho[i] + (1.0 - rho[i]) * mu * mu;
  }
  return out;
}

namespace {

/// Per-coordinate joint of (x, y) with x ~ pi_mu and the (a, b) channel.
PairJoint unbal_joint(double mu, const UnbalParams& params) {
  const double p = (1.0 + mu) / 2.0;
  const double q = (1.0 - mu) / 2.0;
  PairJoint J;
  J.mm = q * params.a;
  J.mp = q * (1.0 - params.a);
  J.pm = p * (1.0 - params.b);
  J.pp = p * params.b;
  return J;
}

void check_unbal_params(const UnbalParams& params) {
  if (!(params.a >= 0.0 && params.a <= 1.0) || !(params.b >= 0.0 && params.b <= 1.0)) {
    throw ValidationError("stay-probabilities (a, b) must lie in [0,1]");
  }
}

}  // namespace

double unbal_stab(const TruthTable& g, const TruthTable& h, double mu, const UnbalParams& params) {
  if (g.n != h.n) throw ValidationError("arity mismatch between g and h");
  check_unbal_params(params);
  std::vector<PairJoint> joints(static_cast<std::size_t>(g.n), unbal_joint(mu, params));
  return joint_correlation(g.values, h.values, joints);
}

BestResponse unbal_best_h(const TruthTable& g, double mu, const UnbalParams& params) {
  check_unbal_params(params);
  const PairJoint J = unbal_joint(mu, params);
  std::vector<PairJoint> joints(static_cast<std::size_t>(g.n), J);
  const Eigen::ArrayXd u = joint_marginal_table(g.values, joints);

  BestResponse out;
  out.h = TruthTable(g.n, u.unaryExpr([](double v) { return sign_pm(v); }));
  out.advantage = u.abs().sum();

  const double cross = J.cross_moment();
  const double alpha = std::max(0.0, (cross * cross - mu * mu) / (1.0 - mu * mu));
  out.alpha = Eigen::ArrayXd::Constant(g.n, alpha);
  out.stab_alpha = stab_fourier(biased_spectrum(g, mu), out.alpha);
  if (out.advantage < out.stab_alpha - kTol.algebra) {
    throw BoundViolation("best-response advantage " + std::to_string(out.advantage) +
                         " fell below its certified floor " + std::to_string(out.stab_alpha));
  }
  return out;
}

PartialNoiseStability delta_eps_stab(const TruthTable& g, double delta, double eps, double mu) {
  if (!(delta > 0.0 && delta <= 1.0)) throw ValidationError("delta must lie in (0, 1]");
  if (!(eps >= 0.0 && eps < 0.5)) throw ValidationError("eps must lie in [0, 1/2)");
  const int k = g.n;
  if (k > kMaxSpectrumArity) {
    throw CapacityError("arity " + std::to_string(k) + " too large for subset enumeration");
  }
  const int noised = ceil_fraction(delta, k);
  const double low = 1.0 - 2.0 * eps;

  const BiasedSpectrum spec = biased_spectrum(g, mu);
  auto rho_for = [&](std::uint32_t mask) {
    Eigen::ArrayXd rho = Eigen::ArrayXd::Ones(k);
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) rho[i] = low;
    }
    return rho;
  };

  PartialNoiseStability out;
  if (noised == 0) {
    out.value = stab_fourier(spec, Eigen::ArrayXd::Ones(k));
    out.witness = Eigen::ArrayXd::Ones(k);
    out.noised = 0;
    return out;
  }

  std::uint32_t first = (1u << noised) - 1;
  if (is_symmetric(g)) {
    out.noised = first;
    out.witness = rho_for(first);
    out.value = stab_fourier(spec, out.witness);
    return out;
  }

  // m(T) = sum_S w(S) * low^{|S & T|} for every mask T at once, via one
  // 2x2 pass per coordinate over the squared-coefficient table.
  Eigen::ArrayXd m = spec.coeffs.square();
  for (int i = 0; i < k; ++i) {
    const Eigen::Index stride = Eigen::Index{1} << i;
    for (Eigen::Index base = 0; base < m.size(); base += 2 * stride) {
      for (Eigen::Index j = base; j < base + stride; ++j) {
        const double without = m[j];
        const double with = m[j + stride];
        m[j] = without + with;
        m[j + stride] = without + low * with;
      }
    }
  }

  std::uint32_t best_mask = first;
  double best = -1.0;
  for (std::uint32_t mask = first; mask < (1u << k) && mask != 0;
       mask = next_same_popcount(mask)) {
    if (m[mask] > best) {
      best = m[mask];
      best_mask = mask;
    }
  }
  out.noised = best_mask;
  out.witness = rho_for(best_mask);
  out.value = stab_fourier(spec, out.witness);
  return out;
}

StabilitySandwich am_gm_sandwich(const TruthTable& g, double mu, const Eigen::ArrayXd& rho,
                                 SymmetryMode mode) {
  check_same_arity(g, rho);
  validate_correlations(rho);
  if (mode == SymmetryMode::kRequireSymmetric && !is_symmetric(g)) {
    throw ValidationError("function is not symmetric (not invariant under a transposition)");
  }
  const int k = g.n;
  const BiasedSpectrum spec = biased_spectrum(g, mu);

  double gm = 1.0;
  for (Eigen::Index i = 0; i < rho.size(); ++i) gm *= rho[i];
  gm = std::pow(gm, 1.0 / k);
  const double am = rho.mean();

  StabilitySandwich out;
  out.gm_lower = stab_fourier(spec, gm);
  out.exact = stab_fourier(spec, rho);
  out.am_upper = stab_fourier(spec, am);
  out.upper_certified = mode == SymmetryMode::kRequireSymmetric;

  if (out.gm_lower > out.exact + kTol.algebra) {
    throw BoundViolation("geometric-mean lower bound exceeded the exact stability");
  }
  if (out.upper_certified && out.exact > out.am_upper + kTol.algebra) {
    throw BoundViolation("exact stability exceeded the arithmetic-mean upper bound");
  }
  return out;
}

RhoStarBracket rho_star_bracket(const TruthTable& g, double delta, double eps, double mu) {
  const int k = g.n;
  const BiasedSpectrum spec = biased_spectrum(g, mu);
  const Eigen::ArrayXd mass = spec.coeffs.square();
  double offdiag = 0.0;
  for (Eigen::Index s = 1; s < mass.size(); ++s) offdiag += mass[s];
  if (offdiag <= kTol.normalization) {
    throw DegenerateError("univariate stability of a constant function has no unique root");
  }

  const PartialNoiseStability target = delta_eps_stab(g, delta, eps, mu);

  RhoStarBracket out;
  out.stability = target.value;
  double lo_r = 0.0, hi_r = 1.0;
  if (target.value >= stab_fourier(spec, 1.0) - 1e-15) {
    lo_r = hi_r = 1.0;
  } else {
    for (int it = 0; it < 200 && hi_r - lo_r > 1e-10; ++it) {
      const double mid = (lo_r + hi_r) / 2.0;
      if (stab_fourier(spec, mid) < target.value) {
        lo_r = mid;
      } else {
        hi_r = mid;
      }
    }
  }
  out.rho_star = (lo_r + hi_r) / 2.0;

  const double delta_prime = static_cast<double>(ceil_fraction(delta, k)) / k;
  out.hi = 1.0 - 2.0 * delta_prime * eps;
  out.lo = out.hi - 4.0 * eps * eps;
  if (out.rho_star < out.lo - kTol.algebra || out.rho_star > out.hi + kTol.algebra) {
    throw BoundViolation("rho* = " + std::to_string(out.rho_star) + " escaped its bracket [" +
                         std::to_string(out.lo) + ", " + std::to_string(out.hi) + "]");
  }
  return out;
}

}  // namespace junta_lab
