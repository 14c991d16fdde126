#include "junta_lab/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "junta_lab/boosting.hpp"
#include "junta_lab/composition.hpp"
#include "junta_lab/experiments.hpp"
#include "junta_lab/stability.hpp"

namespace junta_lab {

namespace {

using Json = nlohmann::ordered_json;

Json json_array(const Eigen::ArrayXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json json_array(const std::vector<int>& v) {
  Json out = Json::array();
  for (int x : v) out.push_back(x);
  return out;
}

std::vector<int> coords_list(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if (mask & (1u << i)) out.push_back(i + 1);
  }
  return out;
}

Eigen::ArrayXd parse_csv_reals(const std::string& csv, const std::string& flag) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      vals.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ValidationError("cannot parse entry '" + tok + "' of " + flag);
    }
  }
  if (vals.empty()) throw ValidationError(flag + " must not be empty");
  Eigen::ArrayXd out(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) out[static_cast<Eigen::Index>(i)] = vals[i];
  return out;
}

std::vector<int> parse_csv_ints(const std::string& csv, const std::string& flag) {
  const Eigen::ArrayXd reals = parse_csv_reals(csv, flag);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(reals.size()));
  for (Eigen::Index i = 0; i < reals.size(); ++i) out.push_back(static_cast<int>(reals[i]));
  return out;
}

bool looks_named(const std::string& spec) {
  return spec == "xor" || spec == "maj" || spec == "and" || spec == "or" ||
         spec.rfind("dict:", 0) == 0 || spec.rfind("thresh:", 0) == 0;
}

TruthTable resolve_function(const std::string& spec, int arity) {
  if (looks_named(spec)) {
    if (arity <= 0) {
      throw ValidationError("named function '" + spec + "' needs --k to fix its arity");
    }
    return make_named(spec, arity);
  }
  return load_truth_table(spec);
}

Distribution resolve_distribution(const std::string& spec, int arity) {
  if (spec.empty() || spec == "uniform") {
    if (arity <= 0) throw ValidationError("uniform distribution needs a known arity");
    return uniform_dist(arity).to_distribution();
  }
  return load_distribution(spec);
}

struct OutputOptions {
  std::string path;
  std::string format = "json";
};

void emit(const OutputOptions& opts, const Json& payload, const std::string& text,
          std::ostream& out) {
  const std::string body = opts.format == "text" ? text : payload.dump(2) + "\n";
  if (opts.path.empty()) {
    out << body;
  } else {
    std::ofstream file(opts.path);
    if (!file) throw ValidationError("cannot open output file '" + opts.path + "'");
    file << body;
  }
}

Json to_json(const ExperimentReport& report) {
  Json out;
  out["schema"] = 1;
  out["name"] = report.name;
  Json params = Json::object();
  for (const auto& [key, value] : report.parameters) params[key] = value;
  out["parameters"] = params;
  Json quantities = Json::object();
  for (const auto& [key, value] : report.quantities) quantities[key] = value;
  out["quantities"] = quantities;
  Json assertions = Json::array();
  for (const auto& a : report.assertions) {
    Json row;
    row["name"] = a.name;
    row["relation"] = a.relation;
    row["observed"] = a.observed;
    row["pass"] = a.pass;
    assertions.push_back(row);
  }
  out["assertions"] = assertions;
  out["all_pass"] = report.all_pass();
  return out;
}

void add_output_options(CLI::App* cmd, OutputOptions* opts) {
  cmd->add_option("--out", opts->path, "write the report to this file instead of stdout");
  cmd->add_option("--format", opts->format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
}

struct StabArgs {
  std::string kind = "fourier";
  std::string g_spec;
  std::string h_spec;
  int k = 0;
  double mu = 0.0;
  std::string rho_csv;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  double a = 1.0, b = 1.0;
  double delta = 0.5, eps = 0.25;
  bool include_spectrum = false;
  OutputOptions out;
};

/// {mu, k, coeffs} with coefficients in ascending subset-mask order.
Json spectrum_json(const BiasedSpectrum& spec) {
  Json out;
  out["mu"] = spec.mu;
  out["k"] = spec.k;
  out["coeffs"] = json_array(spec.coeffs);
  return out;
}

int run_stab(const StabArgs& args, std::ostream& out) {
  Json payload;
  payload["schema"] = 1;
  payload["kind"] = args.kind;
  payload["mu"] = args.mu;
  std::ostringstream text;

  if (args.kind == "xor") {
    const Eigen::ArrayXd rho = parse_csv_reals(args.rho_csv, "--rho");
    validate_correlations(rho);
    const double value = stab_xor_closed(args.mu, rho);
    payload["rho"] = json_array(rho);
    payload["value"] = value;
    text << "parity stability = " << value << "\n";
    emit(args.out, payload, text.str(), out);
    return 0;
  }

  const TruthTable g = resolve_function(args.g_spec, args.k);
  if (args.include_spectrum) {
    payload["spectrum"] = spectrum_json(biased_spectrum(g, args.mu));
  }

  if (args.kind == "fourier" || args.kind == "sampled") {
    const Eigen::ArrayXd rho = parse_csv_reals(args.rho_csv, "--rho");
    payload["rho"] = json_array(rho);
    if (args.kind == "fourier") {
      const double value = stab_fourier(g, args.mu, rho);
      payload["value"] = value;
      text << "stability = " << value << "\n";
    } else {
      const SampledStability est = stab_sampled(g, args.mu, rho, args.samples, args.seed);
      payload["value"] = est.value;
      payload["stderr"] = est.std_error;
      payload["samples"] = est.samples;
      payload["seed"] = args.seed;
      text << "stability ~ " << est.value << " +/- " << est.std_error << "\n";
    }
  } else if (args.kind == "unbal" || args.kind == "unbal-best") {
    const UnbalParams params{args.a, args.b};
    payload["a"] = args.a;
    payload["b"] = args.b;
    if (args.kind == "unbal") {
      const TruthTable h =
          args.h_spec.empty() ? g : resolve_function(args.h_spec, args.k);
      const double value = unbal_stab(g, h, args.mu, params);
      payload["value"] = value;
      text << "asymmetric-channel stability = " << value << "\n";
    } else {
      const BestResponse best = unbal_best_h(g, args.mu, params);
      payload["advantage"] = best.advantage;
      payload["stab_alpha"] = best.stab_alpha;
      payload["alpha"] = json_array(best.alpha);
      text << "best-response advantage = " << best.advantage << " (floor "
           << best.stab_alpha << ")\n";
    }
  } else if (args.kind == "delta-eps") {
    const PartialNoiseStability result = delta_eps_stab(g, args.delta, args.eps, args.mu);
    payload["delta"] = args.delta;
    payload["eps"] = args.eps;
    payload["value"] = result.value;
    payload["witness"] = json_array(result.witness);
    text << "partial-noise stability = " << result.value << "\n";
  } else if (args.kind == "amgm") {
    const Eigen::ArrayXd rho = parse_csv_reals(args.rho_csv, "--rho");
    const StabilitySandwich s = am_gm_sandwich(g, args.mu, rho);
    payload["rho"] = json_array(rho);
    payload["gm_lower"] = s.gm_lower;
    payload["value"] = s.exact;
    payload["am_upper"] = s.am_upper;
    text << s.gm_lower << " <= " << s.exact << " <= " << s.am_upper << "\n";
  } else {  // rho-star
    const RhoStarBracket b = rho_star_bracket(g, args.delta, args.eps, args.mu);
    payload["delta"] = args.delta;
    payload["eps"] = args.eps;
    payload["value"] = b.stability;
    payload["rho_star"] = b.rho_star;
    payload["bracket_lo"] = b.lo;
    payload["bracket_hi"] = b.hi;
    text << "rho* = " << b.rho_star << " in [" << b.lo << ", " << b.hi << "]\n";
  }
  emit(args.out, payload, text.str(), out);
  return 0;
}

struct JuntaArgs {
  std::string f_spec;
  std::string q_path;
  std::string dist_spec = "uniform";
  int k = 0;
  int r = -1;
  double eps = -1.0;
  OutputOptions out;
};

int run_junta(const JuntaArgs& args, std::ostream& out) {
  ProbFunction q;
  if (!args.q_path.empty()) {
    q = load_prob_function(args.q_path);
  } else if (!args.f_spec.empty()) {
    q = as_prob(resolve_function(args.f_spec, args.k));
  } else {
    throw ValidationError("provide a function via --f or --q");
  }
  const Distribution dist = resolve_distribution(args.dist_spec, q.n);

  Json payload;
  payload["schema"] = 1;
  payload["n"] = q.n;
  Json rows = Json::array();
  std::ostringstream text;
  const int lo = args.r >= 0 ? args.r : 0;
  const int hi = args.r >= 0 ? args.r : q.n;
  std::vector<double> curve_vals;
  for (int r = lo; r <= hi; ++r) {
    const JuntaApprox best = optimal_junta(q, dist, r);
    Json row;
    row["r"] = r;
    row["advantage"] = best.advantage;
    row["error"] = (1.0 - best.advantage) / 2.0;
    row["coords"] = json_array(coords_list(best.coords));
    rows.push_back(row);
    curve_vals.push_back(best.advantage);
    text << "r=" << r << "  advantage=" << best.advantage
         << "  error=" << (1.0 - best.advantage) / 2.0 << "\n";
  }
  payload["rows"] = rows;
  if (args.eps >= 0.0 && args.r < 0) {
    AdvantageCurve curve{curve_vals};
    const auto complexity = junta_complexity(curve, args.eps);
    if (complexity) {
      payload["junta_complexity"] = *complexity;
      text << "junta complexity at eps=" << args.eps << ": " << *complexity << "\n";
    } else {
      payload["junta_complexity"] = nullptr;
      text << "junta complexity at eps=" << args.eps << ": unreachable\n";
    }
  }
  emit(args.out, payload, text.str(), out);
  return 0;
}

struct ComposeArgs {
  std::string g_spec;
  std::string f_spec;
  std::string q_path;
  std::string dist_spec = "uniform";
  int k = 0;
  int inner_k = 0;
  int budget = 0;
  std::string check = "none";
  std::string partition_csv;
  std::uint64_t seed = 0;
  OutputOptions out;
};

int run_compose(const ComposeArgs& args, std::ostream& out) {
  const TruthTable g = resolve_function(args.g_spec, args.k);
  ProbFunction f;
  if (!args.q_path.empty()) {
    f = load_prob_function(args.q_path);
  } else if (!args.f_spec.empty()) {
    f = as_prob(resolve_function(args.f_spec, args.inner_k));
  } else {
    throw ValidationError("provide an inner function via --f or --q");
  }
  const Distribution dist = resolve_distribution(args.dist_spec, f.n);
  const ComposedInstance inst = make_instance(g, f, dist);

  Json payload;
  payload["schema"] = 1;
  payload["mu"] = inst.mu;
  payload["budget"] = args.budget;
  std::ostringstream text;
  bool ok = true;

  if (args.check == "xorbound") {
    const double bound = xor_error_bound(inst.f, inst.dist, args.budget, inst.k());
    payload["xor_error_bound"] = bound;
    text << "parity-combiner error floor = " << bound << "\n";
    emit(args.out, payload, text.str(), out);
    return 0;
  }

  const InnerApproximators inner = inner_approximators(inst);
  BudgetPartition partition;
  if (!args.partition_csv.empty()) {
    partition = parse_csv_ints(args.partition_csv, "--partition");
  } else {
    partition = best_partition(inst, inner, args.budget).partition;
  }
  const CorrelationReport corr = correlations(inst, inner.curve, partition);
  const BiasedSpectrum spec = biased_spectrum(inst.g, inst.mu);
  payload["partition"] = json_array(partition);
  payload["alpha"] = json_array(corr.alpha);
  payload["beta"] = json_array(corr.beta);
  payload["stab_alpha"] = stab_fourier(spec, corr.alpha);
  payload["stab_beta"] = stab_fourier(spec, corr.beta);
  payload["canonical_adv"] = canonical_advantage(inst, inner, partition);
  text << "partition:";
  for (int r : partition) text << ' ' << r;
  text << "\ncanonical advantage = " << payload["canonical_adv"].get<double>() << "\n";

  if (args.check == "sandwich") {
    const SandwichReport report = sandwich_check(inst, args.budget);
    payload["opt_adv"] = report.optimal_adv;
    payload["lower"] = report.lower;
    payload["upper"] = report.upper;
    payload["bounds_ok"] = report.bounds_ok;
    ok = report.bounds_ok;
    text << "chain " << report.lower << " <= " << report.canonical_adv << " <= "
         << report.optimal_adv << " <= " << report.upper
         << (report.bounds_ok ? " holds\n" : " FAILS\n");
  } else if (args.check == "error4") {
    const Error4Report report = error4_check(inst, args.budget, args.seed);
    payload["canonical_error"] = report.canonical_error;
    payload["optimal_error"] = report.optimal_error;
    payload["within_factor4"] = report.within_factor4;
    payload["product_inequality_ok"] = report.product_inequality_ok;
    ok = report.within_factor4 && report.product_inequality_ok;
    text << "canonical error " << report.canonical_error << " vs 4 * optimal "
         << 4.0 * report.optimal_error << (report.within_factor4 ? " holds\n" : " FAILS\n");
  } else {
    payload["bounds_ok"] = true;
  }
  emit(args.out, payload, text.str(), out);
  return ok ? 0 : 1;
}

struct BoostArgs {
  std::string mode = "run";
  std::string f_spec;
  std::string dist_spec = "uniform";
  int inner_k = 0;
  int k = 4;
  int r = 1;
  double eps_small = 0.2;
  double eps = 1.0 / 16.0;
  double lambda = 0.5;
  std::uint64_t seed = 0;
  OutputOptions out;
};

int run_boost(const BoostArgs& args, std::ostream& out) {
  Json payload;
  payload["schema"] = 1;
  std::ostringstream text;

  if (args.mode == "eps-large") {
    const double value = eps_large(args.eps_small, args.k, args.lambda);
    payload["eps_small"] = args.eps_small;
    payload["k"] = args.k;
    payload["lambda"] = args.lambda;
    payload["eps_large"] = value;
    text << "eps_large = " << value << "\n";
    emit(args.out, payload, text.str(), out);
    return 0;
  }

  if (args.mode == "params") {
    const TolerantBoostPlan plan = tolerant_boost_params(args.eps, args.r, args.lambda);
    payload["eps"] = args.eps;
    payload["k"] = plan.k;
    payload["k_adjusted"] = plan.k_adjusted;
    payload["composed"] = Json{{"eps_yes", plan.composed.eps_yes},
                               {"eps_no", plan.composed.eps_no},
                               {"r", plan.composed.r},
                               {"r_prime", plan.composed.r_prime}};
    payload["outer"] = Json{{"eps_yes", plan.outer.eps_yes},
                            {"eps_no", plan.outer.eps_no},
                            {"r", plan.outer.r},
                            {"r_prime", plan.outer.r_prime}};
    text << "k = " << plan.k << ", composed thresholds 1/4 vs 1/3\n";
    emit(args.out, payload, text.str(), out);
    return 0;
  }

  // run: boosted zero-error junta test of the provided function.
  const TruthTable f = resolve_function(args.f_spec, args.inner_k);
  const Distribution dist = resolve_distribution(args.dist_spec, f.n);
  const double el = eps_large(args.eps_small, args.k, args.lambda);
  const TesterParams composed_params{0.0, el, args.k * args.r, args.k * args.r};

  const MaterializedComposition composed =
      materialize(make_instance(make_xor(args.k), f, dist));
  const TesterSpec weak = brute_force_tester(composed_params, composed.dist);
  const TesterSpec boosted = boost_tester(weak, make_xor(args.k), f.n);

  TableOracle oracle(f, dist, args.seed);
  const bool accept = boosted.run(oracle);
  payload["k"] = args.k;
  payload["eps_large"] = el;
  payload["accept"] = accept;
  payload["inner_queries"] = oracle.query_count();
  payload["inner_samples"] = oracle.sample_count();
  payload["composed_queries"] = oracle.query_count() / args.k;
  payload["accounting_ok"] = oracle.query_count() % args.k == 0;
  text << (accept ? "accept" : "reject") << " after " << oracle.query_count()
       << " inner queries\n";
  emit(args.out, payload, text.str(), out);
  return payload["accounting_ok"].get<bool>() ? 0 : 1;
}

struct ReduceArgs {
  std::string in_path;
  std::string f_out;
  std::string dist_out;
  int r = -1;
  OutputOptions out;
};

int run_reduce(const ReduceArgs& args, std::ostream& out) {
  const SetCoverInstance inst = load_setcover(args.in_path);
  const SetCoverReduction reduction = setcover_reduce(inst);

  Json payload;
  payload["schema"] = 1;
  payload["m"] = inst.m;
  payload["n"] = inst.n();
  Json support = Json::array();
  for (std::uint32_t x : reduction.support) support.push_back(x);
  payload["support"] = support;
  std::ostringstream text;
  text << "reduced " << inst.n() << " sets over universe of " << inst.m << "\n";

  if (!args.f_out.empty()) {
    std::ofstream file(args.f_out);
    if (!file) throw ValidationError("cannot open output file '" + args.f_out + "'");
    write_truth_table(file, reduction.f);
    payload["f_path"] = args.f_out;
  }
  if (!args.dist_out.empty()) {
    std::ofstream file(args.dist_out);
    if (!file) throw ValidationError("cannot open output file '" + args.dist_out + "'");
    write_distribution(file, reduction.dist);
    payload["dist_path"] = args.dist_out;
  }
  if (args.r >= 0) {
    const double error =
        (1.0 - optimal_junta(reduction.f, reduction.dist, args.r).advantage) / 2.0;
    payload["junta_error_at_r"] = error;
    payload["zero_error_junta_exists"] = error <= kTol.normalization;
    text << "best " << args.r << "-junta error = " << error << "\n";
  }
  emit(args.out, payload, text.str(), out);
  return 0;
}

struct CounterArgs {
  int which = 1;
  int k = 3;
  int n = 3;
  std::uint64_t seed = 0;
  OutputOptions out;
};

int run_counterexample(const CounterArgs& args, std::ostream& out) {
  ExperimentReport report;
  if (args.which == 1) {
    report = counterexample_majority_parity(args.k, args.n);
  } else if (args.which == 2) {
    report = counterexample_random_and(args.n, args.k, args.seed);
  } else {
    report = counterexample_noncomposed();
  }
  emit(args.out, to_json(report), to_text(report), out);
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"junta-lab: junta complexity under composition, noise stability, and tester boosting"};
  app.require_subcommand(1);

  StabArgs stab;
  CLI::App* stab_cmd = app.add_subcommand(
      "stab", "noise stability: spectral, sampled, closed-form parity, asymmetric channels, "
              "partial noise, and mean-based brackets");
  stab_cmd->add_option("--kind", stab.kind, "quantity to compute")
      ->check(CLI::IsMember(
          {"fourier", "sampled", "xor", "unbal", "unbal-best", "delta-eps", "amgm", "rho-star"}))
      ->capture_default_str();
  stab_cmd->add_option("--g", stab.g_spec, "function: xor|maj|and|or|dict:i|thresh:t or a file");
  stab_cmd->add_option("--h2", stab.h_spec, "second function for --kind unbal (defaults to --g)");
  stab_cmd->add_option("--k", stab.k, "arity for named functions (1..28)");
  stab_cmd->add_option("--mu", stab.mu, "bias in (-1,1)")->capture_default_str();
  stab_cmd->add_option("--rho", stab.rho_csv, "comma-separated correlations, each in [0,1]");
  stab_cmd->add_option("--samples", stab.samples, "Monte-Carlo samples (>= 1)")
      ->capture_default_str();
  stab_cmd->add_option("--seed", stab.seed, "Monte-Carlo seed")->capture_default_str();
  stab_cmd->add_option("--a", stab.a, "stay-probability on -1 inputs, in [0,1]");
  stab_cmd->add_option("--b", stab.b, "stay-probability on +1 inputs, in [0,1]");
  stab_cmd->add_option("--delta", stab.delta, "noised fraction, in (0,1]");
  stab_cmd->add_option("--eps", stab.eps, "noise rate, in [0,1/2)");
  stab_cmd->add_flag("--spectrum", stab.include_spectrum,
                     "include the biased Fourier coefficients in the report");
  add_output_options(stab_cmd, &stab.out);

  JuntaArgs junta;
  CLI::App* junta_cmd = app.add_subcommand(
      "junta", "exact junta approximation: best sets, advantage/error curves, complexity");
  junta_cmd->add_option("--f", junta.f_spec, "deterministic function: named or a file");
  junta_cmd->add_option("--q", junta.q_path, "randomized function: probability-table file");
  junta_cmd->add_option("--dist", junta.dist_spec, "distribution file or 'uniform'")
      ->capture_default_str();
  junta_cmd->add_option("--k", junta.k, "arity for named functions");
  junta_cmd->add_option("--r", junta.r, "single budget (omit for the full curve)");
  junta_cmd->add_option("--eps", junta.eps, "error target for the complexity readout");
  add_output_options(junta_cmd, &junta.out);

  ComposeArgs compose;
  CLI::App* compose_cmd = app.add_subcommand(
      "compose", "composed-function budget analysis: correlation vectors, canonical combiners, "
                 "advantage sandwich, factor-4 error check, parity error floor");
  compose_cmd->add_option("--g", compose.g_spec, "combiner: named or a file")->required();
  compose_cmd->add_option("--k", compose.k, "combiner arity for named functions");
  compose_cmd->add_option("--f", compose.f_spec, "inner deterministic function");
  compose_cmd->add_option("--q", compose.q_path, "inner randomized function (file)");
  compose_cmd->add_option("--inner-k", compose.inner_k, "inner arity for named functions");
  compose_cmd->add_option("--dist", compose.dist_spec, "base distribution file or 'uniform'")
      ->capture_default_str();
  compose_cmd->add_option("--budget", compose.budget, "total junta budget R")->required();
  compose_cmd->add_option("--check", compose.check, "verification to run")
      ->check(CLI::IsMember({"none", "sandwich", "error4", "xorbound"}))
      ->capture_default_str();
  compose_cmd->add_option("--partition", compose.partition_csv,
                          "fixed comma-separated budget split (default: best split)");
  compose_cmd->add_option("--seed", compose.seed, "seed for the error4 spot checks")
      ->capture_default_str();
  add_output_options(compose_cmd, &compose.out);

  BoostArgs boost;
  CLI::App* boost_cmd = app.add_subcommand(
      "boost", "tester boosting: wrap a brute-force weak tester around parity composition, "
               "or evaluate the boosting parameter formulas");
  boost_cmd->add_option("--mode", boost.mode, "run | params | eps-large")
      ->check(CLI::IsMember({"run", "params", "eps-large"}))
      ->capture_default_str();
  boost_cmd->add_option("--f", boost.f_spec, "inner function: named or a file");
  boost_cmd->add_option("--dist", boost.dist_spec, "inner distribution file or 'uniform'")
      ->capture_default_str();
  boost_cmd->add_option("--inner-k", boost.inner_k, "inner arity for named functions");
  boost_cmd->add_option("--k", boost.k, "number of composed blocks (>= 1)")
      ->capture_default_str();
  boost_cmd->add_option("--r", boost.r, "junta size of the Yes case (>= 1)")
      ->capture_default_str();
  boost_cmd->add_option("--eps-small", boost.eps_small, "inner distance parameter, in (0,1/2)")
      ->capture_default_str();
  boost_cmd->add_option("--eps", boost.eps, "target distance for --mode params, in (0,1/16]")
      ->capture_default_str();
  boost_cmd->add_option("--lambda", boost.lambda, "strength parameter, in (0,1)")
      ->capture_default_str();
  boost_cmd->add_option("--seed", boost.seed, "oracle sampling seed")->capture_default_str();
  add_output_options(boost_cmd, &boost.out);

  ReduceArgs reduce;
  CLI::App* reduce_cmd = app.add_subcommand(
      "reduce-setcover", "map a cover instance to a disjunction plus support distribution "
                         "whose junta error separates cover sizes");
  reduce_cmd->add_option("--in", reduce.in_path, "cover instance file ('m n' header)")
      ->required();
  reduce_cmd->add_option("--f-out", reduce.f_out, "write the disjunction truth table here");
  reduce_cmd->add_option("--dist-out", reduce.dist_out, "write the support distribution here");
  reduce_cmd->add_option("--r", reduce.r, "report the best r-junta error under the reduction");
  add_output_options(reduce_cmd, &reduce.out);

  CounterArgs counter;
  CLI::App* counter_cmd = app.add_subcommand(
      "counterexample", "scripted refutations of the three natural budget-splitting conjectures");
  counter_cmd->add_option("which", counter.which, "which counterexample: 1, 2, or 3")
      ->required()
      ->check(CLI::Range(1, 3));
  counter_cmd->add_option("--k", counter.k, "block count")->capture_default_str();
  counter_cmd->add_option("--n", counter.n, "inner arity")->capture_default_str();
  counter_cmd->add_option("--seed", counter.seed, "sampling seed")->capture_default_str();
  add_output_options(counter_cmd, &counter.out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (stab_cmd->parsed()) return run_stab(stab, out);
    if (junta_cmd->parsed()) return run_junta(junta, out);
    if (compose_cmd->parsed()) return run_compose(compose, out);
    if (boost_cmd->parsed()) return run_boost(boost, out);
    if (reduce_cmd->parsed()) return run_reduce(reduce, out);
    if (counter_cmd->parsed()) return run_counterexample(counter, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace junta_lab
