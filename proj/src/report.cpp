#include "junta_lab/report.hpp"

#include <cstdio>
#include <sstream>

namespace junta_lab {

bool ExperimentReport::all_pass() const {
  for (const auto& a : assertions) {
    if (!a.pass) return false;
  }
  return true;
}

void ExperimentReport::add_param(const std::string& key, double value) {
  parameters.emplace_back(key, value);
}

void ExperimentReport::add_quantity(const std::string& key, double value) {
  quantities.emplace_back(key, value);
}

void ExperimentReport::assert_that(const std::string& name, const std::string& relation,
                                   double observed, bool pass) {
  assertions.push_back(Assertion{name, relation, observed, pass});
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string to_text(const ExperimentReport& report) {
  std::ostringstream out;
  out << "experiment: " << report.name << '\n';
  for (const auto& [key, value] : report.parameters) {
    out << "  param " << key << " = " << fmt(value) << '\n';
  }
  for (const auto& [key, value] : report.quantities) {
    out << "  " << key << " = " << fmt(value) << '\n';
  }
  for (const auto& a : report.assertions) {
    out << "  [" << (a.pass ? "pass" : "FAIL") << "] " << a.name << ": " << a.relation
        << " (observed " << fmt(a.observed) << ")\n";
  }
  out << (report.all_pass() ? "result: pass" : "result: FAIL") << '\n';
  return out.str();
}

}  // namespace junta_lab
