#pragma once

#include <Eigen/Core>
#include <cmath>
#include <span>

#include "junta_lab/boolfn.hpp"
#include "junta_lab/common.hpp"

namespace junta_lab {

/// Fourier coefficients of a k-variable function in the orthonormal basis
/// prod_{i in S} phi_mu(y_i) under the mu-biased product measure, where
/// phi_mu(x) = (x - mu) / sigma and sigma = sqrt(1 - mu^2). coeffs is
/// indexed by subset bitmask.
struct BiasedSpectrum {
  int k = 0;
  double mu = 0.0;
  double sigma = 1.0;
  Eigen::ArrayXd coeffs;
};

/// In-place butterfly turning a value table into biased Fourier
/// coefficients, one coordinate per pass: k * 2^k work. With index bit 0
/// meaning y_i = -1, the pair (lo, hi) maps to
///   (q*lo + p*hi, (sigma/2)*(hi - lo))
/// where p = (1+mu)/2 and q = (1-mu)/2; the second slot is the
/// E[g * phi_mu(y_i)] half of the decomposition.
template <typename Scalar>
void biased_transform_inplace(Eigen::Ref<Eigen::Array<Scalar, Eigen::Dynamic, 1>> a, Scalar mu) {
  const Scalar p = (Scalar(1) + mu) / Scalar(2);
  const Scalar q = (Scalar(1) - mu) / Scalar(2);
  const Scalar half_sigma = std::sqrt(Scalar(1) - mu * mu) / Scalar(2);
  for (Eigen::Index stride = 1; stride < a.size(); stride <<= 1) {
    for (Eigen::Index base = 0; base < a.size(); base += 2 * stride) {
      for (Eigen::Index j = base; j < base + stride; ++j) {
        const Scalar lo = a[j];
        const Scalar hi = a[j + stride];
        a[j] = q * lo + p * hi;
        a[j + stride] = half_sigma * (hi - lo);
      }
    }
  }
}

/// Inverse butterfly: coefficients back to a value table.
template <typename Scalar>
void biased_inverse_inplace(Eigen::Ref<Eigen::Array<Scalar, Eigen::Dynamic, 1>> a, Scalar mu) {
  const Scalar sigma = std::sqrt(Scalar(1) - mu * mu);
  const Scalar phi_lo = (Scalar(-1) - mu) / sigma;
  const Scalar phi_hi = (Scalar(1) - mu) / sigma;
  for (Eigen::Index stride = 1; stride < a.size(); stride <<= 1) {
    for (Eigen::Index base = 0; base < a.size(); base += 2 * stride) {
      for (Eigen::Index j = base; j < base + stride; ++j) {
        const Scalar c0 = a[j];
        const Scalar c1 = a[j + stride];
        a[j] = c0 + phi_lo * c1;
        a[j + stride] = c0 + phi_hi * c1;
      }
    }
  }
}

/// Decomposes g over the mu-biased measure. Requires |mu| < 1 - 1e-9.
BiasedSpectrum biased_spectrum(const TruthTable& g, double mu);
BiasedSpectrum biased_spectrum_of_values(const Eigen::ArrayXd& values, double mu);

/// Reconstructs the value table from a spectrum.
Eigen::ArrayXd inverse_spectrum(const BiasedSpectrum& spec);

/// sum_S coeffs[S] * prod_{i in S} per_coord[i], computed in O(2^k) by
/// sharing subset products.
double subset_product_dot(const Eigen::ArrayXd& coeffs, const Eigen::ArrayXd& per_coord);

/// E_{y ~ pi_nu}[g(y)] evaluated through the spectrum:
/// sum_S g_hat(S) prod_{i in S} phi_mu(nu_i).
double mean_under_product(const BiasedSpectrum& spec, const Eigen::ArrayXd& nu);

/// Direct evaluation of E_{y ~ pi_nu}[g(y)] by folding the value table;
/// no bias parameter involved.
double product_mean(const Eigen::ArrayXd& table, const Eigen::ArrayXd& nu);

/// The distribution on subset masks with mass coeffs[S]^2. Rejects spectra
/// whose squared mass differs from 1 by more than kTol.algebra (the source
/// was not +/-1-valued); the returned masses are normalized exactly.
Distribution spectral_sample(const BiasedSpectrum& spec);

/// Joint law of one coordinate pair (x_i, y_i) in {-1,+1}^2.
/// Field order: first index is x, second is y.
struct PairJoint {
  double mm = 0.0;  // x = -1, y = -1
  double mp = 0.0;  // x = -1, y = +1
  double pm = 0.0;  // x = +1, y = -1
  double pp = 0.0;  // x = +1, y = +1

  double x_mean() const { return pp + pm - mp - mm; }
  double y_mean() const { return pp + mp - pm - mm; }
  double cross_moment() const { return pp - pm - mp + mm; }
};

/// U(y) = sum_x g(x) * prod_i J_i(x_i, y_i), i.e. Pr[y] * E[g(x) | y] when
/// the J_i are probability kernels. One 2x2 pass per coordinate.
Eigen::ArrayXd joint_marginal_table(const Eigen::ArrayXd& g, std::span<const PairJoint> joints);

/// E[g(x) h(y)] for per-coordinate independent pairs with joint laws J_i.
double joint_correlation(const Eigen::ArrayXd& g, const Eigen::ArrayXd& h,
                         std::span<const PairJoint> joints);

}  // namespace junta_lab
