#pragma once

#include <string>
#include <vector>

#include "gspnorm/numkit.hpp"
#include "gspnorm/rational.hpp"
#include "json.hpp"

namespace gspnorm {

using numkit::cplx;

enum class Status { pass, fail, skipped };

const char* status_name(Status s);

struct CheckReport {
  std::string id;
  std::string paper_ref;
  cplx lhs = 0.0;
  cplx rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  Status status = Status::skipped;
  std::string detail;  // free text, not part of the JSON record
};

// pass iff rel_err <= tol, or abs_err <= tol when rhs = 0.
CheckReport make_report(std::string id, std::string ref, cplx lhs, cplx rhs, double tol);
// Zero-tolerance comparison of two exact values.
CheckReport make_exact_report(std::string id, std::string ref, const Rational& lhs, const Rational& rhs);
CheckReport skipped_report(std::string id, std::string ref, std::string why);

nlohmann::ordered_json to_json(const CheckReport& r);
// Array of records, sorted by id.
std::string reports_json(std::vector<CheckReport> reports);
// One line per record, sorted by id.
std::string reports_text(std::vector<CheckReport> reports);

bool all_passed(const std::vector<CheckReport>& reports);

}  // namespace gspnorm
