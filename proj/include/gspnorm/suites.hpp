#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gspnorm/numkit.hpp"
#include "gspnorm/report.hpp"

namespace gspnorm::suites {

struct RunConfig {
  double tol = 1e-6;  // pass threshold floor for numeric checks; exact checks ignore it
  numkit::PrecisionConfig prec;
  std::uint64_t seed = 20240611;
  int jobs = 1;

  void validate() const;
};

struct Check {
  std::string id;
  std::string paper_ref;
  std::function<CheckReport(const RunConfig&)> run;
};

// special, whittaker-ds, whittaker-ps, padic, archzeta, constants, all.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Throws DomainError for an unknown name.
std::vector<Check> suite_checks(const std::string& name);

// Runs up to cfg.jobs checks at a time; the result is sorted by id.
std::vector<CheckReport> run_suite(const std::string& name, const RunConfig& cfg);

}  // namespace gspnorm::suites
