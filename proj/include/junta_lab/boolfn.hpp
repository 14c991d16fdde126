#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "junta_lab/common.hpp"

namespace junta_lab {

/// A +/-1-valued function on {-1,+1}^n stored densely. Entry j gives the
/// value at the input whose i-th coordinate is +1 iff bit i of j is set.
struct TruthTable {
  int n = 0;
  Eigen::ArrayXd values;

  TruthTable() = default;
  TruthTable(int arity, Eigen::ArrayXd vals);

  double operator()(std::uint32_t x) const { return values[x]; }
  Eigen::Index size() const { return values.size(); }
};

/// A randomized Boolean function: p(x) = Pr[output = +1].
struct ProbFunction {
  int n = 0;
  Eigen::ArrayXd p;

  ProbFunction() = default;
  ProbFunction(int arity, Eigen::ArrayXd probs);

  /// E[output] at x, in [-1, 1].
  double expectation(std::uint32_t x) const { return 2.0 * p[x] - 1.0; }
  Eigen::Index size() const { return p.size(); }
};

/// Deterministic tables embed with probabilities in {0, 1}.
ProbFunction as_prob(const TruthTable& f);

/// Is every probability 0 or 1?
bool is_deterministic(const ProbFunction& q);

/// Rounds a {0,1}-valued ProbFunction back to a TruthTable.
TruthTable to_truth_table(const ProbFunction& q);

/// A weight vector over {-1,+1}^n. Weights are nonnegative and sum to 1
/// within kTol.normalization.
struct Distribution {
  int n = 0;
  Eigen::ArrayXd weights;

  Distribution() = default;
  Distribution(int arity, Eigen::ArrayXd w);

  double operator()(std::uint32_t x) const { return weights[x]; }
};

/// A product distribution given by its coordinatewise mean vector
/// nu in [-1,1]^n; weight(x) = prod_i (1 + x_i nu_i) / 2.
struct ProductDist {
  Eigen::ArrayXd nu;

  ProductDist() = default;
  explicit ProductDist(Eigen::ArrayXd means);

  int arity() const { return static_cast<int>(nu.size()); }
  double weight(std::uint32_t x) const;
  Distribution to_distribution() const;
};

ProductDist uniform_dist(int n);

// Named function constructors. MAJ and THRESH resolve the tie
// "sum >= threshold" toward +1.
TruthTable make_xor(int n);
TruthTable make_majority(int n);
TruthTable make_and(int n);
TruthTable make_or(int n);
TruthTable make_dictator(int n, int coord);  // coord is 1-based
TruthTable make_threshold(int n, double threshold);

/// Dispatch on a spelled-out name: xor, maj, and, or, dict:i, thresh:t
/// (case-insensitive).
TruthTable make_named(const std::string& name, int arity);

double mean(const TruthTable& f, const Distribution& dist);
double mean(const ProbFunction& q, const Distribution& dist);
double mean(const TruthTable& f, const ProductDist& dist);

// Text formats.
//   TruthTable:   "n=<arity>" then one line of 2^n characters from {+,-}.
//   Distribution: "n=<arity>" then 2^n whitespace-separated weights.
//   ProbFunction: "n=<arity>" then 2^n whitespace-separated probabilities.
TruthTable parse_truth_table(std::istream& in);
ProbFunction parse_prob_function(std::istream& in);
Distribution parse_distribution(std::istream& in);
void write_truth_table(std::ostream& out, const TruthTable& f);
void write_prob_function(std::ostream& out, const ProbFunction& q);
void write_distribution(std::ostream& out, const Distribution& dist);

TruthTable load_truth_table(const std::string& path);
ProbFunction load_prob_function(const std::string& path);
Distribution load_distribution(const std::string& path);

}  // namespace junta_lab
