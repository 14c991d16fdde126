#include "junta_lab/boosting.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "junta_lab/rng.hpp"

namespace junta_lab {

TableOracle::TableOracle(TruthTable f, Distribution dist, std::uint64_t seed)
    : f_(std::move(f)), dist_(std::move(dist)), seed_(seed) {
  if (f_.n != dist_.n) throw ValidationError("oracle table and distribution arity mismatch");
  cumulative_.resize(dist_.weights.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < dist_.weights.size(); ++i) {
    acc += dist_.weights[i];
    cumulative_[i] = acc;
  }
}

double TableOracle::do_query(std::uint32_t x) {
  if (x >> f_.n) throw ValidationError("query index out of range");
  return f_(x);
}

LabeledSample TableOracle::do_sample() {
  CounterRng rng(seed_, draws_++);
  const double u = rng.next_unit();
  // First index with cumulative weight above u.
  Eigen::Index lo = 0, hi = cumulative_.size() - 1;
  while (lo < hi) {
    const Eigen::Index mid = (lo + hi) / 2;
    if (cumulative_[mid] > u) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const auto x = static_cast<std::uint32_t>(lo);
  return LabeledSample{x, f_(x)};
}

namespace {

/// Presents g o f through k-fold access to the inner oracle while
/// enforcing the declared composed budgets.
class ComposedOracle : public Oracle {
 public:
  ComposedOracle(Oracle& inner, const TruthTable& g, int inner_arity, std::int64_t query_budget,
                 std::int64_t sample_budget)
      : inner_(inner),
        g_(g),
        n_(inner_arity),
        query_budget_(query_budget),
        sample_budget_(sample_budget) {}

  int arity() const override { return n_ * g_.n; }

 private:
  double do_query(std::uint32_t x) override {
    if (query_count() > query_budget_) {
      throw ProtocolViolation("tester exceeded its declared query budget of " +
                              std::to_string(query_budget_));
    }
    std::uint32_t y = 0;
    const std::uint32_t mask = (1u << n_) - 1;
    for (int i = 0; i < g_.n; ++i) {
      if (inner_.query((x >> (i * n_)) & mask) > 0) y |= 1u << i;
    }
    return g_(y);
  }

  LabeledSample do_sample() override {
    if (sample_count() > sample_budget_) {
      throw ProtocolViolation("tester exceeded its declared sample budget of " +
                              std::to_string(sample_budget_));
    }
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    for (int i = 0; i < g_.n; ++i) {
      const LabeledSample s = inner_.sample();
      x |= s.x << (i * n_);
      if (s.value > 0) y |= 1u << i;
    }
    return LabeledSample{x, g_(y)};
  }

  Oracle& inner_;
  const TruthTable& g_;
  int n_;
  std::int64_t query_budget_;
  std::int64_t sample_budget_;
};

}  // namespace

TesterSpec boost_tester(const TesterSpec& weak, const TruthTable& g, int inner_arity) {
  if (inner_arity < 1) throw ValidationError("inner arity must be at least 1");
  const int k = g.n;
  TesterSpec boosted;
  boosted.params = weak.params;  // the composed regime, recorded as-is
  boosted.query_budget = k * weak.query_budget;
  boosted.sample_budget = k * weak.sample_budget;
  TruthTable combiner = g;
  std::function<bool(Oracle&)> weak_run = weak.run;
  const std::int64_t weak_queries = weak.query_budget;
  const std::int64_t weak_samples = weak.sample_budget;
  boosted.run = [combiner, inner_arity, weak_run, weak_queries, weak_samples](Oracle& inner) {
    ComposedOracle composed(inner, combiner, inner_arity, weak_queries, weak_samples);
    return weak_run(composed);
  };
  return boosted;
}

TesterSpec brute_force_tester(const TesterParams& params, Distribution dist) {
  if (params.eps_yes > params.eps_no) {
    throw ValidationError("eps_yes must not exceed eps_no");
  }
  if (params.r > params.r_prime) throw ValidationError("r must not exceed r_prime");
  TesterSpec spec;
  spec.params = params;
  spec.query_budget = Eigen::Index{1} << dist.n;
  spec.sample_budget = 0;
  spec.run = [params, dist = std::move(dist)](Oracle& oracle) {
    if (oracle.arity() != dist.n) {
      throw ValidationError("oracle arity does not match the tester's distribution");
    }
    const Eigen::Index size = Eigen::Index{1} << oracle.arity();
    Eigen::ArrayXd values(size);
    for (Eigen::Index x = 0; x < size; ++x) {
      values[x] = oracle.query(static_cast<std::uint32_t>(x));
    }
    TruthTable f(oracle.arity(), std::move(values));
    const double dist_far = (1.0 - optimal_junta(f, dist, params.r_prime).advantage) / 2.0;
    return dist_far <= params.eps_no + kTol.normalization;
  };
  return spec;
}

double eps_large(double eps_small, int k, double lambda) {
  if (!(eps_small >= 0.0 && eps_small <= 0.5)) {
    throw ValidationError("eps_small must lie in [0, 1/2]");
  }
  if (!(lambda > 0.0 && lambda < 1.0)) throw ValidationError("lambda must lie in (0, 1)");
  if (k < 1) throw ValidationError("k must be at least 1");
  return (1.0 - std::pow(1.0 - 2.0 * eps_small, (1.0 - lambda) * k / 2.0)) / 2.0;
}

TolerantBoostPlan tolerant_boost_params(double eps, int r, double lambda) {
  if (!(eps > 0.0 && eps <= 1.0 / 16.0)) throw ValidationError("eps must lie in (0, 1/16]");
  if (!(lambda > 0.0 && lambda < 1.0)) throw ValidationError("lambda must lie in (0, 1)");
  if (r < 1) throw ValidationError("r must be at least 1");
  TolerantBoostPlan plan;
  plan.lambda = lambda;
  plan.k = static_cast<int>(std::ceil(1.0 / (4.0 * eps) - 1e-12));
  if (plan.k * eps > 0.25 + 1e-12) {
    plan.k = static_cast<int>(std::floor(1.0 / (4.0 * eps)));
    plan.k_adjusted = true;
  }
  const int r_prime = static_cast<int>(std::ceil(r / lambda - 1e-12));
  plan.composed = TesterParams{0.25, 1.0 / 3.0, plan.k * r, plan.k * r_prime};
  plan.outer = TesterParams{eps, 5.0 * eps / (1.0 - lambda), r, r_prime};
  return plan;
}

SetCoverInstance parse_setcover(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty cover instance");
  std::istringstream head(line);
  SetCoverInstance inst;
  int n = 0;
  if (!(head >> inst.m >> n)) {
    throw ValidationError("line 1: expected 'm n' header, got '" + line + "'");
  }
  if (inst.m < 1) throw ValidationError("line 1: universe size must be at least 1");
  if (n < 1 || n > kMaxJuntaSearchArity) {
    throw ValidationError("line 1: set count must lie in [1, " +
                          std::to_string(kMaxJuntaSearchArity) + "]");
  }
  inst.sets.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) {
      throw ValidationError("line " + std::to_string(i + 2) + ": missing set " +
                            std::to_string(i + 1));
    }
    std::istringstream row(line);
    int element = 0;
    while (row >> element) {
      if (element < 1 || element > inst.m) {
        throw ValidationError("line " + std::to_string(i + 2) + ": element " +
                              std::to_string(element) + " outside universe [1," +
                              std::to_string(inst.m) + "]");
      }
      inst.sets[static_cast<std::size_t>(i)].push_back(element);
    }
  }
  return inst;
}

void write_setcover(std::ostream& out, const SetCoverInstance& inst) {
  out << inst.m << ' ' << inst.n() << '\n';
  for (const auto& set : inst.sets) {
    for (std::size_t j = 0; j < set.size(); ++j) {
      out << set[j] << (j + 1 == set.size() ? "" : " ");
    }
    out << '\n';
  }
}

SetCoverInstance load_setcover(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file '" + path + "'");
  return parse_setcover(in);
}

SetCoverReduction setcover_reduce(const SetCoverInstance& inst) {
  const int n = inst.n();
  SetCoverReduction out;
  out.f = make_or(n);

  // Membership vectors: coordinate i of u^(j) is +1 iff j is in set i.
  out.support.reserve(static_cast<std::size_t>(inst.m) + 1);
  for (int j = 1; j <= inst.m; ++j) {
    std::uint32_t u = 0;
    for (int i = 0; i < n; ++i) {
      for (int element : inst.sets[static_cast<std::size_t>(i)]) {
        if (element == j) {
          u |= 1u << i;
          break;
        }
      }
    }
    if (u == 0) {
      // An element outside every set collides with the all-false point
      // and voids the error separation; the instance has no cover at all.
      throw ValidationError("element " + std::to_string(j) +
                            " is in no set; the instance is uncoverable");
    }
    out.support.push_back(u);
  }
  out.support.push_back(0);  // the all-false point

  Eigen::ArrayXd w = Eigen::ArrayXd::Zero(Eigen::Index{1} << n);
  const double mass = 1.0 / static_cast<double>(inst.m + 1);
  for (std::uint32_t point : out.support) w[point] += mass;
  out.dist = Distribution(n, std::move(w));
  return out;
}

}  // namespace junta_lab
