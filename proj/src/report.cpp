#include "gspnorm/report.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>

namespace gspnorm {

namespace {

void sort_by_id(std::vector<CheckReport>& v) {
  std::stable_sort(v.begin(), v.end(), [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
}

std::string fmt(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string fmt(cplx z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i";
}

// Non-finite doubles have no JSON literal.
nlohmann::ordered_json num(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

nlohmann::ordered_json num(cplx z) { return {{"re", num(z.real())}, {"im", num(z.imag())}}; }

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

CheckReport make_report(std::string id, std::string ref, cplx lhs, cplx rhs, double tol) {
  CheckReport r;
  r.id = std::move(id);
  r.paper_ref = std::move(ref);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tol = tol;
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = std::abs(rhs) > 0.0 ? r.abs_err / std::abs(rhs) : r.abs_err;
  const double err = std::abs(rhs) > 0.0 ? r.rel_err : r.abs_err;
  r.status = std::isfinite(err) && err <= tol ? Status::pass : Status::fail;
  return r;
}

CheckReport make_exact_report(std::string id, std::string ref, const Rational& lhs, const Rational& rhs) {
  CheckReport r = make_report(std::move(id), std::move(ref), to_double(lhs), to_double(rhs), 0.0);
  r.status = lhs == rhs ? Status::pass : Status::fail;
  if (lhs == rhs) r.abs_err = r.rel_err = 0.0;
  r.detail = to_string(lhs) + " vs " + to_string(rhs);
  return r;
}

CheckReport skipped_report(std::string id, std::string ref, std::string why) {
  CheckReport r;
  r.id = std::move(id);
  r.paper_ref = std::move(ref);
  r.status = Status::skipped;
  r.detail = std::move(why);
  return r;
}

nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["paper_ref"] = r.paper_ref;
  j["lhs"] = num(r.lhs);
  j["rhs"] = num(r.rhs);
  j["abs_err"] = num(r.abs_err);
  j["rel_err"] = num(r.rel_err);
  j["tol"] = num(r.tol);
  j["status"] = status_name(r.status);
  return j;
}

std::string reports_json(std::vector<CheckReport> reports) {
  sort_by_id(reports);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr.dump(2);
}

std::string reports_text(std::vector<CheckReport> reports) {
  sort_by_id(reports);
  std::string out;
  for (const auto& r : reports) {
    out += std::string(status_name(r.status)) + "  " + r.id;
    if (r.status != Status::skipped)
      out += "  lhs=" + fmt(r.lhs) + "  rhs=" + fmt(r.rhs) + "  rel_err=" + fmt(r.rel_err) + "  tol=" + fmt(r.tol);
    if (!r.detail.empty()) out += "  [" + r.detail + "]";
    out += "\n";
  }
  return out;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.status != Status::fail; });
}

}  // namespace gspnorm
