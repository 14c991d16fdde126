#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "junta_lab/boolfn.hpp"
#include "junta_lab/fourier.hpp"

namespace junta_lab {

/// Stay-probabilities for the asymmetric noise channel: a on -1 inputs,
/// b on +1 inputs.
struct UnbalParams {
  double a = 1.0;
  double b = 1.0;
};

struct SampledStability {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

struct PartialNoiseStability {
  double value = 0.0;
  Eigen::ArrayXd witness;       // a maximizing correlation vector
  std::uint32_t noised = 0;     // mask of coordinates held at 1 - 2*eps
};

struct StabilitySandwich {
  double gm_lower = 0.0;
  double exact = 0.0;
  double am_upper = 0.0;
  bool upper_certified = true;  // false when symmetry was only asserted
};

struct RhoStarBracket {
  double rho_star = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double stability = 0.0;  // the partial-noise stability being matched
};

struct BestResponse {
  TruthTable h;
  double advantage = 0.0;
  double stab_alpha = 0.0;
  Eigen::ArrayXd alpha;
};

enum class SymmetryMode {
  kRequireSymmetric,   // verify invariance under adjacent transpositions
  kAssumeTransitive,   // caller vouches; only the lower bound is certified
};

/// Is the table invariant under every adjacent transposition of
/// coordinates? (Those generate the full symmetric group.)
bool is_symmetric(const TruthTable& g);

/// Noise stability sum_S g_hat(S)^2 prod_{i in S} rho_i, rho in [0,1]^k.
double stab_fourier(const TruthTable& g, double mu, const Eigen::ArrayXd& rho);
double stab_fourier(const BiasedSpectrum& spec, const Eigen::ArrayXd& rho);
/// Scalar-rho special case.
double stab_fourier(const BiasedSpectrum& spec, double rho);

/// Monte-Carlo estimate of E[g(y) g(z)] under the rerandomization process:
/// z_i = y_i with probability rho_i, otherwise a fresh draw. Reproducible
/// for a fixed seed regardless of sample scheduling.
SampledStability stab_sampled(const TruthTable& g, double mu, const Eigen::ArrayXd& rho,
                              std::int64_t samples, std::uint64_t seed);

/// Closed form for parity: prod_i (rho_i + (1 - rho_i) mu^2).
double stab_xor_closed(double mu, const Eigen::ArrayXd& rho);

/// E[g(x) h(y)] where x ~ (pi_mu)^k and y keeps each coordinate with
/// stay-probability a (on -1) or b (on +1), flipping otherwise. Computed
/// from per-coordinate joint laws, never the 4^k joint space.
double unbal_stab(const TruthTable& g, const TruthTable& h, double mu, const UnbalParams& params);

/// The best response to the asymmetric channel: h = sign E[g(x) | y],
/// whose advantage is certified to be at least Stab_{mu,alpha}(g) with
/// alpha_i = max(0, (E[x_i y_i]^2 - mu^2) / (1 - mu^2)).
BestResponse unbal_best_h(const TruthTable& g, double mu, const UnbalParams& params);

/// Maximum of Stab over correlation vectors with ceil(delta * k)
/// coordinates at 1 - 2*eps and the rest at 1, maximizing over which
/// coordinates are noised. Symmetric g short-circuits to a fixed subset.
PartialNoiseStability delta_eps_stab(const TruthTable& g, double delta, double eps, double mu);

/// Stab at the scalar geometric / arithmetic means of rho, bracketing the
/// exact multivariate value. The upper bound needs symmetry; the lower
/// bound survives under transitivity, which the caller must assert.
StabilitySandwich am_gm_sandwich(const TruthTable& g, double mu, const Eigen::ArrayXd& rho,
                                 SymmetryMode mode = SymmetryMode::kRequireSymmetric);

/// Solves Stab_{mu,rho*}(g) = (delta,eps)-noise stability for the scalar
/// rho* by bisection and certifies the bracket
/// 1 - 2 delta' eps - 4 eps^2 <= rho* <= 1 - 2 delta' eps with
/// delta' = ceil(k delta) / k. Rejects constant g (no unique root).
RhoStarBracket rho_star_bracket(const TruthTable& g, double delta, double eps, double mu);

/// Entry-wise validation helper shared with the CLI: throws naming the
/// first offending coordinate (1-based).
void validate_correlations(const Eigen::ArrayXd& rho);

}  // namespace junta_lab
