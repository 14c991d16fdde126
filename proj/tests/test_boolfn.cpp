#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "junta_lab/boolfn.hpp"

using namespace junta_lab;

TEST_CASE("named constructors match their definitions") {
  // Index order 00, 01, 10, 11 with bit 1 meaning +1.
  const TruthTable x2 = make_xor(2);
  CHECK(x2.values[0] == 1.0);
  CHECK(x2.values[1] == -1.0);
  CHECK(x2.values[2] == -1.0);
  CHECK(x2.values[3] == 1.0);

  const TruthTable a2 = make_and(2);
  CHECK(a2.values[0] == -1.0);
  CHECK(a2.values[1] == -1.0);
  CHECK(a2.values[2] == -1.0);
  CHECK(a2.values[3] == 1.0);

  // (+1, -1, +1) is index 0b101.
  CHECK(make_majority(3)(0b101) == 1.0);
  // Ties resolve to +1.
  CHECK(make_majority(2)(0b01) == 1.0);
  CHECK(make_majority(2)(0b10) == 1.0);

  const TruthTable o2 = make_or(2);
  CHECK(o2.values[0] == -1.0);
  CHECK(o2.values[3] == 1.0);

  const TruthTable d = make_dictator(3, 2);
  for (std::uint32_t x = 0; x < 8; ++x) {
    CHECK(d(x) == ((x >> 1) & 1 ? 1.0 : -1.0));
  }

  // sum of signs at k = 12 is even, so threshold 0.06 means sum >= 2.
  const TruthTable t = make_threshold(4, 0.5);
  CHECK(t(0b0111) == 1.0);   // sum 2
  CHECK(t(0b0011) == -1.0);  // sum 0
}

TEST_CASE("make_named dispatch and errors") {
  CHECK(make_named("XOR", 2).values[3] == 1.0);
  CHECK(make_named("dict:1", 4)(0b0001) == 1.0);
  CHECK(make_named("thresh:0.5", 4)(0b0111) == 1.0);
  CHECK_THROWS_AS(make_named("nand", 2), ValidationError);
  CHECK_THROWS_AS(make_named("dict:9", 4), ValidationError);
  CHECK_THROWS_AS(make_named("xor", 29), CapacityError);
  CHECK_THROWS_AS(make_named("xor", 0), ValidationError);
}

TEST_CASE("uniform distribution and means") {
  const ProductDist u2 = uniform_dist(2);
  CHECK(u2.nu.size() == 2);
  CHECK(u2.nu[0] == 0.0);
  CHECK(uniform_dist(3).weight(5) == doctest::Approx(1.0 / 8).epsilon(1e-15));

  const Distribution d2 = u2.to_distribution();
  CHECK(mean(make_xor(2), d2) == 0.0);
  CHECK(mean(make_and(2), d2) == doctest::Approx(-0.5).epsilon(1e-15));

  // Probability table {3/5, 3/4, 3/4, 1} has mean 11/20 under uniform.
  Eigen::ArrayXd p(4);
  p << 0.6, 0.75, 0.75, 1.0;
  CHECK(mean(ProbFunction(2, p), d2) == doctest::Approx(0.55).epsilon(1e-15));

  for (int n = 1; n <= 10; ++n) {
    CHECK(mean(make_xor(n), uniform_dist(n).to_distribution()) == 0.0);
    CHECK(mean(make_xor(n), uniform_dist(n)) == 0.0);
  }
}

TEST_CASE("product distributions normalize for random means") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 8);
    Eigen::ArrayXd nu(n);
    for (int i = 0; i < n; ++i) nu[i] = unit(gen);
    const Distribution dist = ProductDist(nu).to_distribution();
    CHECK((dist.weights >= 0.0).all());
    CHECK(std::abs(dist.weights.sum() - 1.0) <= kTol.normalization);
  }
}

TEST_CASE("type invariants are enforced") {
  Eigen::ArrayXd bad(4);
  bad << 1.0, -1.0, 0.5, 1.0;
  CHECK_THROWS_AS(TruthTable(2, bad), ValidationError);

  Eigen::ArrayXd short_vals = Eigen::ArrayXd::Ones(3);
  CHECK_THROWS_AS(TruthTable(2, short_vals), ValidationError);

  Eigen::ArrayXd w(4);
  w << 0.5, 0.5, 0.25, 0.25;
  CHECK_THROWS_AS(Distribution(2, w), ValidationError);

  Eigen::ArrayXd nu(2);
  nu << 0.0, 1.5;
  CHECK_THROWS_AS((ProductDist(nu)), ValidationError);

  Eigen::ArrayXd p(2);
  p << 0.25, 1.25;
  CHECK_THROWS_AS(ProbFunction(1, p), ValidationError);
}

TEST_CASE("text round trips are exact") {
  std::mt19937_64 gen(11);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 6);
    Eigen::ArrayXd v(Eigen::Index{1} << n);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = coin(gen) ? 1.0 : -1.0;
    const TruthTable f(n, v);
    std::stringstream buf;
    write_truth_table(buf, f);
    const TruthTable back = parse_truth_table(buf);
    CHECK(back.n == f.n);
    CHECK((back.values == f.values).all());
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 6);
    Eigen::ArrayXd w(Eigen::Index{1} << n);
    double total = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      w[i] = unit(gen);
      total += w[i];
    }
    w /= total;
    const Distribution dist(n, w);
    std::stringstream buf;
    write_distribution(buf, dist);
    const Distribution back = parse_distribution(buf);
    CHECK((back.weights == dist.weights).all());
  }

  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 6);
    Eigen::ArrayXd p(Eigen::Index{1} << n);
    for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = unit(gen);
    const ProbFunction q(n, p);
    std::stringstream buf;
    write_prob_function(buf, q);
    const ProbFunction back = parse_prob_function(buf);
    CHECK((back.p == q.p).all());
  }
}

TEST_CASE("parse errors name the problem") {
  std::stringstream missing("m=2\n++--\n");
  CHECK_THROWS_AS(parse_truth_table(missing), ValidationError);
  std::stringstream short_line("n=2\n++-\n");
  CHECK_THROWS_AS(parse_truth_table(short_line), ValidationError);
  std::stringstream bad_char("n=2\n++-x\n");
  CHECK_THROWS_AS(parse_truth_table(bad_char), ValidationError);
  std::stringstream truncated("n=2\n0.5 0.5 0.25\n");
  CHECK_THROWS_AS(parse_distribution(truncated), ValidationError);
}

TEST_CASE("deterministic embedding round trip") {
  const TruthTable f = make_majority(3);
  const ProbFunction q = as_prob(f);
  CHECK(is_deterministic(q));
  CHECK((to_truth_table(q).values == f.values).all());
  CHECK(q.expectation(0b111) == 1.0);
}
