#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "junta_lab/boolfn.hpp"
#include "junta_lab/junta.hpp"

namespace junta_lab {

/// Tolerant testing regime: Yes when the target is eps_yes-close to an
/// r-junta, No when it is eps_no-far from every r_prime-junta.
struct TesterParams {
  double eps_yes = 0.0;
  double eps_no = 0.0;
  int r = 0;
  int r_prime = 0;
};

struct LabeledSample {
  std::uint32_t x = 0;
  double value = 0.0;  // +/-1
};

/// Query and sample access to an unknown function, with tamper-proof
/// invocation counters: the wrappers count, subclasses only answer.
class Oracle {
 public:
  virtual ~Oracle() = default;

  double query(std::uint32_t x) {
    ++queries_;
    return do_query(x);
  }
  LabeledSample sample() {
    ++samples_;
    return do_sample();
  }

  virtual int arity() const = 0;
  std::int64_t query_count() const { return queries_; }
  std::int64_t sample_count() const { return samples_; }

 private:
  virtual double do_query(std::uint32_t x) = 0;
  virtual LabeledSample do_sample() = 0;

  std::int64_t queries_ = 0;
  std::int64_t samples_ = 0;
};

/// Oracle backed by an explicit table and sampling distribution.
class TableOracle : public Oracle {
 public:
  TableOracle(TruthTable f, Distribution dist, std::uint64_t seed);

  int arity() const override { return f_.n; }

 private:
  double do_query(std::uint32_t x) override;
  LabeledSample do_sample() override;

  TruthTable f_;
  Distribution dist_;
  Eigen::ArrayXd cumulative_;
  std::uint64_t seed_ = 0;
  std::uint64_t draws_ = 0;
};

/// A tester is a procedure holding the whole exchange: it requests oracle
/// operations and finally returns accept / reject. The declared budgets are
/// enforced by the harness; exceeding them is a protocol violation.
struct TesterSpec {
  std::function<bool(Oracle&)> run;
  TesterParams params;
  std::int64_t query_budget = 0;
  std::int64_t sample_budget = 0;
};

/// Wraps a tester declared for the composed regime into one for the inner
/// oracle: each composed query costs k inner queries, each composed sample
/// k inner samples, and the verdict passes through unchanged.
TesterSpec boost_tester(const TesterSpec& weak, const TruthTable& g, int inner_arity);

/// Desk-scale stand-in for a weak tester: reads the full table through
/// queries and decides exactly against the supplied distribution. Rejects
/// precisely the certified-No instances (distance to r_prime-juntas above
/// eps_no); everything else is accepted.
TesterSpec brute_force_tester(const TesterParams& params, Distribution dist);

/// eps_large = (1 - (1 - 2 eps_small)^{(1-lambda) k / 2}) / 2.
double eps_large(double eps_small, int k, double lambda);

/// Composed-regime parameters for tolerant boosting at distance eps:
/// k = ceil(1/(4 eps)) (floored instead when the ceiling breaks
/// k * eps <= 1/4), composed thresholds 1/4 and 1/3, budgets scaled by k.
struct TolerantBoostPlan {
  int k = 0;
  bool k_adjusted = false;
  TesterParams composed;  // the regime handed to the weak tester
  TesterParams outer;     // the regime the boosted tester solves
  double lambda = 0.0;
};
TolerantBoostPlan tolerant_boost_params(double eps, int r = 1, double lambda = 0.5);

/// A cover instance: n subsets of a universe [m].
struct SetCoverInstance {
  int m = 0;
  std::vector<std::vector<int>> sets;  // 1-based elements

  int n() const { return static_cast<int>(sets.size()); }
};

/// File format: first line "m n", then n lines each listing one set's
/// elements as space-separated 1-based integers (a blank line is an empty
/// set).
SetCoverInstance parse_setcover(std::istream& in);
void write_setcover(std::ostream& out, const SetCoverInstance& inst);
SetCoverInstance load_setcover(const std::string& path);

/// The testing instance a cover instance maps to: f = x_1 or ... or x_n
/// and the uniform distribution over the m membership vectors plus the
/// all-false point. A size-r cover yields an r-junta with zero error;
/// without one, every junta errs on at least 1/(m+1) of the mass.
struct SetCoverReduction {
  TruthTable f;
  Distribution dist;
  std::vector<std::uint32_t> support;  // the m+1 weighted points
};
SetCoverReduction setcover_reduce(const SetCoverInstance& inst);

}  // namespace junta_lab
