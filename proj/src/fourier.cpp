#include "junta_lab/fourier.hpp"

#include <cmath>
#include <string>

namespace junta_lab {

namespace {

void check_mu(double mu) {
  if (!(std::abs(mu) < 1.0 - 1e-9)) {
    throw ValidationError("bias mu = " + std::to_string(mu) +
                          " must lie strictly inside (-1, 1) with margin 1e-9");
  }
}

int arity_of_size(Eigen::Index size) {
  int k = 0;
  while ((Eigen::Index{1} << k) < size) ++k;
  return k;
}

void check_spectrum_arity(int k) {
  if (k > kMaxSpectrumArity) {
    throw CapacityError("spectrum arity " + std::to_string(k) + " exceeds limit " +
                        std::to_string(kMaxSpectrumArity));
  }
}

}  // namespace

BiasedSpectrum biased_spectrum_of_values(const Eigen::ArrayXd& values, double mu) {
  check_mu(mu);
  const int k = arity_of_size(values.size());
  check_spectrum_arity(k);
  BiasedSpectrum spec;
  spec.k = k;
  spec.mu = mu;
  spec.sigma = std::sqrt(1.0 - mu * mu);
  spec.coeffs = values;
  biased_transform_inplace<double>(spec.coeffs, mu);
  return spec;
}

BiasedSpectrum biased_spectrum(const TruthTable& g, double mu) {
  return biased_spectrum_of_values(g.values, mu);
}

Eigen::ArrayXd inverse_spectrum(const BiasedSpectrum& spec) {
  Eigen::ArrayXd values = spec.coeffs;
  biased_inverse_inplace<double>(values, spec.mu);
  return values;
}

double subset_product_dot(const Eigen::ArrayXd& coeffs, const Eigen::ArrayXd& per_coord) {
  const Eigen::Index size = coeffs.size();
  Eigen::ArrayXd prod(size);
  prod[0] = 1.0;
  double acc = coeffs[0];
  for (Eigen::Index mask = 1; mask < size; ++mask) {
    const auto low = static_cast<std::uint32_t>(mask & -mask);
    const int bit = std::countr_zero(low);
    prod[mask] = prod[mask ^ low] * per_coord[bit];
    acc += coeffs[mask] * prod[mask];
  }
  return acc;
}

double mean_under_product(const BiasedSpectrum& spec, const Eigen::ArrayXd& nu) {
  if (nu.size() != spec.k) {
    throw ValidationError("mean vector arity " + std::to_string(nu.size()) +
                          " does not match spectrum arity " + std::to_string(spec.k));
  }
  Eigen::ArrayXd phi = (nu - spec.mu) / spec.sigma;
  return subset_product_dot(spec.coeffs, phi);
}

double product_mean(const Eigen::ArrayXd& table, const Eigen::ArrayXd& nu) {
  Eigen::ArrayXd acc = table;
  for (Eigen::Index i = nu.size() - 1; i >= 0; --i) {
    const double p_hi = (1.0 + nu[i]) / 2.0;
    const double p_lo = (1.0 - nu[i]) / 2.0;
    const Eigen::Index half = acc.size() / 2;
    Eigen::ArrayXd next(half);
    for (Eigen::Index j = 0; j < half; ++j) {
      next[j] = p_lo * acc[j] + p_hi * acc[j + half];
    }
    acc.swap(next);
  }
  return acc[0];
}

Distribution spectral_sample(const BiasedSpectrum& spec) {
  Eigen::ArrayXd mass = spec.coeffs.square();
  const double total = mass.sum();
  if (std::abs(total - 1.0) > kTol.algebra) {
    throw ValidationError("squared spectral mass is " + std::to_string(total) +
                          "; source function is not +/-1-valued");
  }
  mass /= total;
  return Distribution(spec.k, std::move(mass));
}

Eigen::ArrayXd joint_marginal_table(const Eigen::ArrayXd& g, std::span<const PairJoint> joints) {
  Eigen::ArrayXd a = g;
  for (std::size_t i = 0; i < joints.size(); ++i) {
    const PairJoint& J = joints[i];
    const Eigen::Index stride = Eigen::Index{1} << i;
    for (Eigen::Index base = 0; base < a.size(); base += 2 * stride) {
      for (Eigen::Index j = base; j < base + stride; ++j) {
        const double x_lo = a[j];
        const double x_hi = a[j + stride];
        a[j] = J.mm * x_lo + J.pm * x_hi;
        a[j + stride] = J.mp * x_lo + J.pp * x_hi;
      }
    }
  }
  return a;
}

double joint_correlation(const Eigen::ArrayXd& g, const Eigen::ArrayXd& h,
                         std::span<const PairJoint> joints) {
  if (g.size() != h.size()) throw ValidationError("arity mismatch between the two functions");
  if ((Eigen::Index{1} << joints.size()) != g.size()) {
    throw ValidationError("joint count does not match function arity");
  }
  Eigen::ArrayXd u = joint_marginal_table(g, joints);
  return (u * h).sum();
}

}  // namespace junta_lab
