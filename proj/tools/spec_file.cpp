#include "spec_file.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace gspnorm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty()) throw InputError("malformed number '" + whole + "'");
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(x))
    throw InputError("malformed number '" + whole + "'");
  return x;
}

// Coefficient of i: "", "+", "-" stand for 1, 1, -1.
double parse_imag(const std::string& s, const std::string& whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, whole);
}

[[noreturn]] void fail_at(const YAML::Node& n, const std::string& what) {
  throw InputError(what, n.Mark().line + 1, n.Mark().column + 1);
}

std::string scalar(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) fail_at(n, "field '" + key + "' must be a scalar");
  return n.Scalar();
}

numkit::cplx get_complex(const YAML::Node& n, const std::string& key) {
  try {
    return parse_complex(scalar(n, key));
  } catch (const InputError& e) {
    fail_at(n, "field '" + key + "': " + e.what());
  }
}

double get_real(const YAML::Node& n, const std::string& key) {
  try {
    return parse_real(trim(scalar(n, key)), scalar(n, key));
  } catch (const InputError& e) {
    fail_at(n, "field '" + key + "': " + e.what());
  }
}

template <class T>
T get_as(const YAML::Node& n, const std::string& key, const char* type) {
  try {
    return n.as<T>();
  } catch (const YAML::BadConversion&) {
    fail_at(n, "field '" + key + "' must be " + type);
  }
}

long get_long(const YAML::Node& n, const std::string& key) { return get_as<long>(n, key, "an integer"); }
int get_int(const YAML::Node& n, const std::string& key) { return get_as<int>(n, key, "an integer"); }
bool get_bool(const YAML::Node& n, const std::string& key) { return get_as<bool>(n, key, "true or false"); }

void check_keys(const YAML::Node& map, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& kv : map) {
    const std::string k = kv.first.as<std::string>();
    if (!allowed.count(k)) fail_at(kv.first, "unknown field '" + k + "' in " + where);
  }
}

YAML::Node require(const YAML::Node& map, const std::string& key, const std::string& where) {
  const YAML::Node n = map[key];
  if (!n) fail_at(map, "missing field '" + key + "' in " + where);
  return n;
}

constants::PlaceSpec parse_place(const YAML::Node& n) {
  using namespace constants;
  if (!n.IsMap()) fail_at(n, "each place must be a mapping");
  const YAML::Node kind_node = require(n, "kind", "place");
  const std::string kind = scalar(kind_node, "kind");
  if (kind == "unramified") {
    check_keys(n, {"kind", "q", "c", "lambda1", "lambda2"}, "unramified place");
    Unramified u;
    u.q = get_long(require(n, "q", "unramified place"), "q");
    if (n["c"]) u.c = get_long(n["c"], "c");
    if (n["lambda1"]) u.lambda1 = get_complex(n["lambda1"], "lambda1");
    if (n["lambda2"]) u.lambda2 = get_complex(n["lambda2"], "lambda2");
    return u;
  }
  if (kind == "iia") {
    check_keys(n, {"kind", "q", "c", "epsilon", "lambda"}, "IIa place");
    IIa f;
    f.q = get_long(require(n, "q", "IIa place"), "q");
    if (n["c"]) f.c = get_long(n["c"], "c");
    if (n["epsilon"]) f.epsilon = get_int(n["epsilon"], "epsilon");
    if (n["lambda"]) f.lambda = get_complex(n["lambda"], "lambda");
    return f;
  }
  if (kind == "ds") {
    check_keys(n, {"kind", "lambda1", "lambda2", "in_S"}, "DS place");
    DS d;
    d.lambda1 = get_int(require(n, "lambda1", "DS place"), "lambda1");
    d.lambda2 = get_int(require(n, "lambda2", "DS place"), "lambda2");
    if (n["in_S"]) d.in_S = get_bool(n["in_S"], "in_S");
    return d;
  }
  if (kind == "ps") {
    check_keys(n, {"kind", "lambda1", "lambda2", "epsilon"}, "PS place");
    PS s;
    if (n["lambda1"]) s.lambda1 = get_complex(n["lambda1"], "lambda1");
    if (n["lambda2"]) s.lambda2 = get_complex(n["lambda2"], "lambda2");
    if (n["epsilon"]) s.epsilon = get_int(n["epsilon"], "epsilon");
    return s;
  }
  fail_at(kind_node, "unknown place kind '" + kind + "' (unramified, iia, ds, ps)");
}

}  // namespace

numkit::cplx parse_complex(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw InputError("empty complex number");
  if (s.back() != 'i') return {parse_real(s, text), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E')
      return {parse_real(body.substr(0, k), text), parse_imag(body.substr(k), text)};
  }
  return {0.0, parse_imag(body, text)};
}

Rational parse_rational(const std::string& text) {
  static const std::regex re(R"(\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw InputError("malformed rational '" + text + "'");
  const Integer num(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str());
  const Integer den(m[2].matched ? m[2].str() : "1");
  if (den == 0) throw InputError("zero denominator in '" + text + "'");
  return Rational(num, den);
}

constants::GlobalSpec parse_spec_text(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw InputError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  if (!root.IsMap()) throw InputError("spec document must be a mapping");
  check_keys(root, {"endoscopic", "discriminant", "real_places", "zeta2", "zeta4", "l_ad_at_1", "places"}, "spec");

  constants::GlobalSpec g;
  if (root["endoscopic"]) g.endoscopic = get_bool(root["endoscopic"], "endoscopic");
  if (root["discriminant"]) {
    try {
      g.discriminant = parse_rational(scalar(root["discriminant"], "discriminant"));
    } catch (const InputError& e) {
      fail_at(root["discriminant"], std::string("field 'discriminant': ") + e.what());
    }
  }
  if (root["real_places"]) g.real_places = get_int(root["real_places"], "real_places");
  if (root["zeta2"]) g.zeta2 = get_real(root["zeta2"], "zeta2");
  if (root["zeta4"]) g.zeta4 = get_real(root["zeta4"], "zeta4");
  if (root["l_ad_at_1"]) g.l_ad_at_1 = get_real(root["l_ad_at_1"], "l_ad_at_1");

  const YAML::Node places = require(root, "places", "spec");
  if (!places.IsSequence()) fail_at(places, "'places' must be a list");
  for (const auto& p : places) g.places.push_back(parse_place(p));
  return g;
}

constants::GlobalSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str());
}

}  // namespace gspnorm::cli
