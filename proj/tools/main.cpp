#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gspnorm/archzeta.hpp"
#include "gspnorm/constants.hpp"
#include "gspnorm/padic.hpp"
#include "gspnorm/special.hpp"
#include "gspnorm/suites.hpp"
#include "gspnorm/whittaker.hpp"
#include "json.hpp"
#include "spec_file.hpp"

using namespace gspnorm;
using numkit::cplx;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string shortest(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string show(cplx z) {
  if (z.imag() == 0.0) return shortest(z.real());
  return shortest(z.real()) + (z.imag() < 0 ? "" : "+") + shortest(z.imag()) + "i";
}

// ---------------------------------------------------------------------------
// eval

struct Params {
  std::map<std::string, std::string> values;
  std::set<std::string> flags;

  bool has(const std::string& k) const { return values.count(k) > 0; }
  const std::string& raw(const std::string& k) const {
    auto it = values.find(k);
    if (it == values.end()) throw UsageError("missing --" + k);
    return it->second;
  }
  long integer(const std::string& k) const {
    const std::string& s = raw(k);
    long v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw UsageError("--" + k + " needs an integer, got '" + s + "'");
    return v;
  }
  long integer(const std::string& k, long dflt) const { return has(k) ? integer(k) : dflt; }
  cplx complex(const std::string& k) const {
    try {
      return cli::parse_complex(raw(k));
    } catch (const cli::InputError& e) {
      throw UsageError("--" + k + ": " + e.what());
    }
  }
  cplx complex(const std::string& k, cplx dflt) const { return has(k) ? complex(k) : dflt; }
  double real(const std::string& k) const {
    const cplx z = complex(k);
    if (z.imag() != 0.0) throw UsageError("--" + k + " must be real");
    return z.real();
  }
  double real(const std::string& k, double dflt) const { return has(k) ? real(k) : dflt; }
  bool flag(const std::string& k) const { return flags.count(k) > 0; }
};

struct EvalOut {
  cplx value;
  std::optional<std::string> exact;
  bool exact_first = false;  // print the exact form as the primary line
};

struct EvalTarget {
  std::string ref;
  std::set<std::string> params;
  std::function<EvalOut(const Params&, const numkit::PrecisionConfig&)> run;
};

const std::vector<std::string> kValueOptions = {"q",  "c",  "s",  "l1", "l2", "a1",     "a2", "place", "mu", "mu1",
                                                "mu2", "lambda", "eps", "n", "m", "r1", "r2", "r3", "a", "b", "method"};
const std::vector<std::string> kFlagOptions = {"w", "in-s"};

whittaker::TorusPoint torus(const Params& p) { return {p.real("a1", 1.0), p.real("a2", 1.0)}; }

std::string method(const Params& p) {
  const std::string m = p.has("method") ? p.raw("method") : "mb";
  if (m != "mb" && m != "direct") throw UsageError("--method must be mb or direct");
  return m;
}

const std::map<std::string, EvalTarget>& eval_targets() {
  static const std::map<std::string, EvalTarget> targets = {
      {"zeta-local",
       {"local zeta factor", {"q", "s"},
        [](const Params& p, const numkit::PrecisionConfig&) {
          const cplx s = p.complex("s");
          if (!p.has("q")) return EvalOut{special::zeta_real(s)};
          const long q = p.integer("q");
          if (s.imag() == 0.0 && s.real() == std::floor(s.real())) {
            const Rational z = special::zeta_local_exact(q, static_cast<long>(s.real()));
            return EvalOut{to_double(z), to_string(z), true};
          }
          return EvalOut{special::zeta_local(special::LocalZetaPlace::finite(q), s)};
        }}},
      {"iia-zeta",
       {"local Rallis zeta integral, type IIa", {"q", "c"},
        [](const Params& p, const numkit::PrecisionConfig&) {
          const Rational z = padic::iia_rallis_zeta_closed({p.integer("q"), p.integer("c", 0)});
          return EvalOut{to_double(z), to_string(z), true};
        }}},
      {"constant",
       {"per-place constant of the Petersson norm formula", {"place", "q", "c", "l1", "l2"},
        [](const Params& p, const numkit::PrecisionConfig&) {
          const std::string kind = p.raw("place");
          constants::PlaceSpec spec;
          if (kind == "unram" || kind == "unramified")
            spec = constants::Unramified{p.integer("q"), p.integer("c", 0), 0.0, 0.0};
          else if (kind == "iia")
            spec = constants::IIa{p.integer("q"), p.integer("c", 0), 0, 0.0};
          else if (kind == "ds")
            spec = constants::DS{static_cast<int>(p.integer("l1")), static_cast<int>(p.integer("l2")), false};
          else if (kind == "ps")
            spec = constants::PS{};
          else
            throw UsageError("--place must be one of unram, iia, ds, ps");
          const constants::PiRational c = constants::c_constant(spec);
          return EvalOut{c.value(), c.str()};
        }}},
      {"whittaker-ds",
       {"discrete series Whittaker function at a torus point", {"l1", "l2", "a1", "a2", "method"},
        [](const Params& p, const numkit::PrecisionConfig& cfg) {
          const whittaker::DSParams d{static_cast<int>(p.integer("l1")), static_cast<int>(p.integer("l2"))};
          const auto t = torus(p);
          return EvalOut{method(p) == "mb" ? whittaker::ds_whittaker_mb(d, t, cfg)
                                           : whittaker::ds_whittaker_direct(d, t, cfg)};
        }}},
      {"whittaker-ps",
       {"principal series Whittaker function at a torus point", {"l1", "l2", "a1", "a2", "method"},
        [](const Params& p, const numkit::PrecisionConfig& cfg) {
          const whittaker::PSParams s{p.complex("l1"), p.complex("l2")};
          const auto t = torus(p);
          return EvalOut{method(p) == "mb" ? whittaker::ps_whittaker_mb(s, t, cfg)
                                           : whittaker::ps_whittaker_direct(s, t, cfg)};
        }}},
      {"ds-zeta",
       {"discrete series local Rallis zeta integral", {"l1", "l2", "in-s"},
        [](const Params& p, const numkit::PrecisionConfig&) {
          const auto w = archzeta::DSWeight::from_lambda(static_cast<int>(p.integer("l1")),
                                                         static_cast<int>(p.integer("l2")));
          const Rational z = archzeta::ds_rallis_zeta_closed_exact(w, p.flag("in-s"));
          return EvalOut{to_double(z), to_string(z), true};
        }}},
      {"ps-zeta",
       {"principal series local Rallis zeta integral", {"mu1", "mu2"},
        [](const Params& p, const numkit::PrecisionConfig& cfg) {
          return EvalOut{archzeta::ps_rallis_zeta({p.complex("mu1", 0.0), p.complex("mu2", 0.0)}, cfg).value};
        }}},
      {"bessel-norm",
       {"K Bessel norm", {"mu"},
        [](const Params& p, const numkit::PrecisionConfig& cfg) {
          return EvalOut{archzeta::bessel_norm(p.complex("mu"), cfg).first};
        }}},
      {"f-n0",
       {"Gaussian moments of the Weil representation", {"n", "a", "b"},
        [](const Params& p, const numkit::PrecisionConfig&) {
          return EvalOut{archzeta::f_n0_closed(static_cast<int>(p.integer("n")), p.real("a"), p.real("b"))};
        }}},
      {"j",
       {"J_n closed form", {"n", "r1", "r2", "r3"},
        [](const Params& p, const numkit::PrecisionConfig&) {
          return EvalOut{whittaker::j_closed(static_cast<int>(p.integer("n")), p.real("r1"), p.real("r2"), p.real("r3"))};
        }}},
      {"macdonald",
       {"type IIa matrix coefficient on a double coset", {"q", "c", "eps", "lambda", "n", "m", "w"},
        [](const Params& p, const numkit::PrecisionConfig&) {
          const padic::Cell cell{static_cast<int>(p.integer("n")), static_cast<int>(p.integer("m")), p.flag("w")};
          return EvalOut{padic::macdonald_iia({p.integer("q"), p.integer("c", 0)},
                                              {static_cast<int>(p.integer("eps", 0)), p.complex("lambda", 0.0)}, cell,
                                              padic::SingularMode::limit)};
        }}},
  };
  return targets;
}

int cmd_eval(const std::string& target, const Params& params, const numkit::PrecisionConfig& cfg, bool json) {
  const auto& targets = eval_targets();
  const auto it = targets.find(target);
  if (it == targets.end()) throw UsageError("unknown eval target '" + target + "'");
  for (const auto& [k, v] : params.values)
    if (!it->second.params.count(k)) throw UsageError("--" + k + " does not apply to '" + target + "'");
  for (const auto& k : params.flags)
    if (!it->second.params.count(k)) throw UsageError("--" + k + " does not apply to '" + target + "'");

  const EvalOut out = it->second.run(params, cfg);
  if (json) {
    nlohmann::ordered_json j;
    j["target"] = target;
    j["value"] = {{"re", out.value.real()}, {"im", out.value.imag()}};
    if (out.exact) j["exact"] = *out.exact;
    j["paper_ref"] = it->second.ref;
    std::cout << j.dump(2) << "\n";
  } else {
    if (out.exact && out.exact_first) {
      std::cout << *out.exact << "\n" << "value: " << show(out.value) << "\n";
    } else {
      std::cout << show(out.value) << "\n";
      if (out.exact) std::cout << "exact: " << *out.exact << "\n";
    }
    std::cout << "ref: " << it->second.ref << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

void print_reports(const std::vector<CheckReport>& reports, bool json, const std::string& header) {
  if (json) {
    std::cout << reports_json(reports) << "\n";
    return;
  }
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const auto& r : reports) {
    if (r.status == Status::pass) ++pass;
    else if (r.status == Status::fail) ++fail;
    else ++skipped;
  }
  std::cout << "# " << header << "\n" << reports_text(reports);
  std::cout << "# " << pass << " passed, " << fail << " failed, " << skipped << " skipped\n";
}

int cmd_check(const std::string& suite, const suites::RunConfig& cfg, bool json) {
  const auto reports = suites::run_suite(suite, cfg);
  char header[160];
  std::snprintf(header, sizeof header, "suite=%s seed=%llu tol=%g", suite.c_str(),
                static_cast<unsigned long long>(cfg.seed), cfg.tol);
  print_reports(reports, json, header);
  return all_passed(reports) ? 0 : kExitFail;
}

int cmd_spec(const std::string& path, const suites::RunConfig& cfg, bool json) {
  const constants::GlobalSpec g = cli::load_spec_file(path);
  g.validate();

  std::vector<CheckReport> reports;
  if (g.endoscopic) {
    CheckReport r = constants::rallis_assembly_check(g, cfg.prec, std::max(cfg.tol, 1e-8));
    r.id = "spec.rallis_assembly";
    reports.push_back(r);
  } else {
    reports.push_back(skipped_report("spec.rallis_assembly", "Rallis inner product formula vs explicit assembly",
                                     "stable spec: the explicit formula needs an endoscopic form"));
  }

  const std::string norm_ref = "Petersson norm formula";
  if (!g.l_ad_at_1) {
    reports.push_back(skipped_report("spec.petersson_norm", norm_ref, "no l_ad_at_1 in the spec file"));
  } else {
    const double value = constants::petersson_norm(g, *g.l_ad_at_1);
    // Endoscopic: the explicit Rallis table gives the same number independently.
    double other = value;
    std::string note = "stable: no second table";
    if (g.endoscopic) {
      double prod = 1.0;
      for (const auto& p : g.places) prod *= constants::c_prime_constant(p).value();
      other = 4.0 * *g.l_ad_at_1 / constants::delta_pgsp4(g) * prod;
      note = "theorem table vs explicit Rallis table";
    }
    CheckReport r = make_report("spec.petersson_norm", norm_ref, value, other, 1e-12);
    r.detail = note;
    reports.push_back(r);
  }
  print_reports(reports, json, "spec=" + path);
  return all_passed(reports) ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local formula checks for Petersson norms of GSp(4) forms"};
  app.fallthrough();
  app.require_subcommand(1);

  bool json = false;
  suites::RunConfig cfg;
  std::string prec_mode = "double";
  app.add_flag("--json", json, "JSON output");
  app.add_option("--tol", cfg.tol, "pass threshold for numeric checks")->capture_default_str();
  app.add_option("--prec", prec_mode, "summation mode")->check(CLI::IsMember({"double", "extended"}))->capture_default_str();
  app.add_option("--max-nodes", cfg.prec.max_nodes, "quadrature node budget")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "parallel checks")->capture_default_str();

  std::string suite;
  auto* check = app.add_subcommand("check", "run a verification suite");
  check->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suites::suite_names()));

  std::string target;
  auto* eval = app.add_subcommand("eval", "evaluate one formula");
  eval->add_option("target", target, "formula name")->required();
  std::map<std::string, std::string> values;
  for (const auto& k : kValueOptions) eval->add_option("--" + k, values[k]);
  std::map<std::string, bool> flags;
  for (const auto& k : kFlagOptions) eval->add_flag("--" + k, flags[k]);
  eval->footer([] {
    std::string s = "Targets:";
    for (const auto& [name, t] : eval_targets()) s += "\n  " + name + "  (" + t.ref + ")";
    return s;
  }());

  std::string spec_path;
  auto* spec = app.add_subcommand("spec", "check a global spec file");
  spec->add_option("file", spec_path, "YAML spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    cfg.prec.mode = prec_mode == "extended" ? numkit::WorkingMode::extended : numkit::WorkingMode::machine_double;
    cfg.prec.jobs = cfg.jobs;
    cfg.validate();
    if (*check) return cmd_check(suite, cfg, json);
    if (*eval) {
      Params p;
      for (const auto& k : kValueOptions)
        if (eval->count("--" + k) > 0) p.values[k] = values[k];
      for (const auto& k : kFlagOptions)
        if (flags[k]) p.flags.insert(k);
      return cmd_eval(target, p, cfg.prec, json);
    }
    if (*spec) return cmd_spec(spec_path, cfg, json);
  } catch (const cli::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << eval->help();
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PoleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
