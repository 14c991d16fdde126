#include "junta_lab/boolfn.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace junta_lab {

namespace {

void check_arity(int n) {
  if (n < 1) throw ValidationError("arity must be at least 1, got " + std::to_string(n));
  if (n > kMaxTableArity) {
    throw CapacityError("arity " + std::to_string(n) + " exceeds dense-table limit " +
                        std::to_string(kMaxTableArity));
  }
}

Eigen::Index table_size(int n) { return Eigen::Index{1} << n; }

}  // namespace

TruthTable::TruthTable(int arity, Eigen::ArrayXd vals) : n(arity), values(std::move(vals)) {
  check_arity(n);
  if (values.size() != table_size(n)) {
    throw ValidationError("truth table for arity " + std::to_string(n) + " needs " +
                          std::to_string(table_size(n)) + " entries, got " +
                          std::to_string(values.size()));
  }
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] != 1.0 && values[i] != -1.0) {
      throw ValidationError("truth table entry " + std::to_string(i) + " is not +/-1");
    }
  }
}

ProbFunction::ProbFunction(int arity, Eigen::ArrayXd probs) : n(arity), p(std::move(probs)) {
  check_arity(n);
  if (p.size() != table_size(n)) {
    throw ValidationError("probability table for arity " + std::to_string(n) + " needs " +
                          std::to_string(table_size(n)) + " entries, got " +
                          std::to_string(p.size()));
  }
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) {
      throw ValidationError("probability entry " + std::to_string(i) + " outside [0,1]");
    }
  }
}

ProbFunction as_prob(const TruthTable& f) {
  return ProbFunction(f.n, (1.0 + f.values) / 2.0);
}

bool is_deterministic(const ProbFunction& q) {
  return ((q.p == 0.0) || (q.p == 1.0)).all();
}

TruthTable to_truth_table(const ProbFunction& q) {
  if (!is_deterministic(q)) throw ValidationError("probability table is not {0,1}-valued");
  return TruthTable(q.n, 2.0 * q.p - 1.0);
}

Distribution::Distribution(int arity, Eigen::ArrayXd w) : n(arity), weights(std::move(w)) {
  check_arity(n);
  if (weights.size() != table_size(n)) {
    throw ValidationError("distribution for arity " + std::to_string(n) + " needs " +
                          std::to_string(table_size(n)) + " weights, got " +
                          std::to_string(weights.size()));
  }
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) {
      throw ValidationError("distribution weight " + std::to_string(i) + " is negative");
    }
  }
  if (std::abs(weights.sum() - 1.0) > kTol.normalization) {
    throw ValidationError("distribution weights sum to " + std::to_string(weights.sum()) +
                          ", not 1");
  }
}

ProductDist::ProductDist(Eigen::ArrayXd means) : nu(std::move(means)) {
  check_arity(arity());
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    if (!(nu[i] >= -1.0 && nu[i] <= 1.0)) {
      throw ValidationError("product mean nu[" + std::to_string(i + 1) + "] outside [-1,1]");
    }
  }
}

double ProductDist::weight(std::uint32_t x) const {
  double w = 1.0;
  for (int i = 0; i < arity(); ++i) {
    double xi = (x >> i) & 1u ? 1.0 : -1.0;
    w *= (1.0 + xi * nu[i]) / 2.0;
  }
  return w;
}

Distribution ProductDist::to_distribution() const {
  const int n = arity();
  Eigen::ArrayXd w = Eigen::ArrayXd::Ones(table_size(n));
  // Tensor the per-coordinate (q_i, p_i) pair across the table.
  for (int i = 0; i < n; ++i) {
    const double p_hi = (1.0 + nu[i]) / 2.0;
    const double p_lo = (1.0 - nu[i]) / 2.0;
    const Eigen::Index stride = Eigen::Index{1} << i;
    for (Eigen::Index base = 0; base < w.size(); base += 2 * stride) {
      for (Eigen::Index j = base; j < base + stride; ++j) {
        w[j] *= p_lo;
        w[j + stride] *= p_hi;
      }
    }
  }
  return Distribution(n, std::move(w));
}

ProductDist uniform_dist(int n) {
  check_arity(n);
  return ProductDist(Eigen::ArrayXd::Zero(n));
}

TruthTable make_xor(int n) {
  check_arity(n);
  Eigen::ArrayXd v(table_size(n));
  // Index bit 1 encodes +1, so the product of signs is parity of zeros.
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    int minus = n - popcount32(static_cast<std::uint32_t>(x));
    v[x] = (minus % 2 == 0) ? 1.0 : -1.0;
  }
  return TruthTable(n, std::move(v));
}

TruthTable make_threshold(int n, double threshold) {
  check_arity(n);
  Eigen::ArrayXd v(table_size(n));
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    int ones = popcount32(static_cast<std::uint32_t>(x));
    double sum = 2.0 * ones - n;
    v[x] = sum >= threshold ? 1.0 : -1.0;
  }
  return TruthTable(n, std::move(v));
}

TruthTable make_majority(int n) { return make_threshold(n, 0.0); }

TruthTable make_and(int n) {
  check_arity(n);
  Eigen::ArrayXd v = Eigen::ArrayXd::Constant(table_size(n), -1.0);
  v[v.size() - 1] = 1.0;
  return TruthTable(n, std::move(v));
}

TruthTable make_or(int n) {
  check_arity(n);
  Eigen::ArrayXd v = Eigen::ArrayXd::Constant(table_size(n), 1.0);
  v[0] = -1.0;
  return TruthTable(n, std::move(v));
}

TruthTable make_dictator(int n, int coord) {
  check_arity(n);
  if (coord < 1 || coord > n) {
    throw ValidationError("dictator coordinate " + std::to_string(coord) + " outside [1," +
                          std::to_string(n) + "]");
  }
  Eigen::ArrayXd v(table_size(n));
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    v[x] = (x >> (coord - 1)) & 1 ? 1.0 : -1.0;
  }
  return TruthTable(n, std::move(v));
}

TruthTable make_named(const std::string& name, int arity) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "xor") return make_xor(arity);
  if (lower == "maj") return make_majority(arity);
  if (lower == "and") return make_and(arity);
  if (lower == "or") return make_or(arity);
  if (lower.rfind("dict:", 0) == 0) {
    int coord = 0;
    try {
      coord = std::stoi(lower.substr(5));
    } catch (const std::exception&) {
      throw ValidationError("cannot parse dictator coordinate in '" + name + "'");
    }
    return make_dictator(arity, coord);
  }
  if (lower.rfind("thresh:", 0) == 0) {
    double t = 0.0;
    try {
      t = std::stod(lower.substr(7));
    } catch (const std::exception&) {
      throw ValidationError("cannot parse threshold in '" + name + "'");
    }
    return make_threshold(arity, t);
  }
  throw ValidationError("unknown function name '" + name +
                        "' (expected xor, maj, and, or, dict:i, thresh:t)");
}

double mean(const TruthTable& f, const Distribution& dist) {
  if (f.n != dist.n) throw ValidationError("arity mismatch between function and distribution");
  return (f.values * dist.weights).sum();
}

double mean(const ProbFunction& q, const Distribution& dist) {
  if (q.n != dist.n) throw ValidationError("arity mismatch between function and distribution");
  return (dist.weights * (2.0 * q.p - 1.0)).sum();
}

double mean(const TruthTable& f, const ProductDist& dist) {
  if (f.n != dist.arity()) {
    throw ValidationError("arity mismatch between function and distribution");
  }
  // Fold one coordinate at a time; O(2^n) total.
  Eigen::ArrayXd acc = f.values;
  for (int i = f.n - 1; i >= 0; --i) {
    const double p_hi = (1.0 + dist.nu[i]) / 2.0;
    const double p_lo = (1.0 - dist.nu[i]) / 2.0;
    const Eigen::Index half = acc.size() / 2;
    Eigen::ArrayXd next(half);
    const Eigen::Index stride = half;
    for (Eigen::Index j = 0; j < half; ++j) {
      next[j] = p_lo * acc[j] + p_hi * acc[j + stride];
    }
    acc.swap(next);
  }
  return acc[0];
}

namespace {

int parse_header(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    break;
  }
  if (line.rfind("n=", 0) != 0) {
    throw ValidationError("expected header line 'n=<arity>', got '" + line + "'");
  }
  int n = 0;
  const char* begin = line.data() + 2;
  const char* end = line.data() + line.size();
  auto res = std::from_chars(begin, end, n);
  if (res.ec != std::errc{}) {
    throw ValidationError("cannot parse arity in header '" + line + "'");
  }
  check_arity(n);
  return n;
}

Eigen::ArrayXd parse_reals(std::istream& in, Eigen::Index count, const char* what) {
  Eigen::ArrayXd out(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    if (!(in >> out[i])) {
      throw ValidationError(std::string("expected ") + std::to_string(count) + " " + what +
                            ", failed at entry " + std::to_string(i + 1));
    }
  }
  return out;
}

}  // namespace

TruthTable parse_truth_table(std::istream& in) {
  const int n = parse_header(in);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  std::string signs;
  for (char c : line) {
    if (c == '+' || c == '-') signs.push_back(c);
    else if (!std::isspace(static_cast<unsigned char>(c)))
      throw ValidationError(std::string("unexpected character '") + c + "' in truth table line");
  }
  if (static_cast<Eigen::Index>(signs.size()) != table_size(n)) {
    throw ValidationError("truth table line has " + std::to_string(signs.size()) +
                          " symbols, expected " + std::to_string(table_size(n)));
  }
  Eigen::ArrayXd v(table_size(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = signs[i] == '+' ? 1.0 : -1.0;
  return TruthTable(n, std::move(v));
}

ProbFunction parse_prob_function(std::istream& in) {
  const int n = parse_header(in);
  return ProbFunction(n, parse_reals(in, table_size(n), "probabilities"));
}

Distribution parse_distribution(std::istream& in) {
  const int n = parse_header(in);
  return Distribution(n, parse_reals(in, table_size(n), "weights"));
}

namespace {

void write_reals(std::ostream& out, const Eigen::ArrayXd& v) {
  char buf[64];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
    out << buf << (i + 1 == v.size() ? '\n' : ' ');
  }
}

}  // namespace

void write_truth_table(std::ostream& out, const TruthTable& f) {
  out << "n=" << f.n << '\n';
  for (Eigen::Index i = 0; i < f.values.size(); ++i) out << (f.values[i] > 0 ? '+' : '-');
  out << '\n';
}

void write_prob_function(std::ostream& out, const ProbFunction& q) {
  out << "n=" << q.n << '\n';
  write_reals(out, q.p);
}

void write_distribution(std::ostream& out, const Distribution& dist) {
  out << "n=" << dist.n << '\n';
  write_reals(out, dist.weights);
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file '" + path + "'");
  return in;
}

}  // namespace

TruthTable load_truth_table(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_truth_table(in);
}

ProbFunction load_prob_function(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_prob_function(in);
}

Distribution load_distribution(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_distribution(in);
}

}  // namespace junta_lab
