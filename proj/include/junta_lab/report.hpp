#pragma once

#include <string>
#include <utility>
#include <vector>

namespace junta_lab {

struct Assertion {
  std::string name;
  std::string relation;  // human-readable statement of the expected relation
  double observed = 0.0;
  bool pass = false;
};

/// A named run with its parameters, measured quantities, and the
/// assertions recomputed from them.
struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::pair<std::string, double>> quantities;
  std::vector<Assertion> assertions;

  bool all_pass() const;
  void add_param(const std::string& key, double value);
  void add_quantity(const std::string& key, double value);
  void assert_that(const std::string& name, const std::string& relation, double observed,
                   bool pass);
};

std::string to_text(const ExperimentReport& report);

}  // namespace junta_lab
