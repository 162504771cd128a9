#pragma once

#include <json.hpp>

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "semiflux/distributions.hpp"
#include "semiflux/interval_topology.hpp"
#include "semiflux/piecewise.hpp"
#include "semiflux/smooth.hpp"

namespace semiflux::io {

using json = nlohmann::json;

// ---- number formatting ---------------------------------------------------

/// 17 significant digits, '.' decimal independent of locale; integral values
/// keep a trailing ".0" so they read back as reals.
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  for (char& c : s)
    if (c == ',') c = '.';
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

inline std::string fnv1a_digest(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

inline json result_record(const std::string& op, const json& inputs, const json& value, double tolerance) {
  return json{{"op", op}, {"inputs_digest", fnv1a_digest(inputs.dump())}, {"value", value}, {"tolerance", tolerance}};
}

// ---- extended reals and interval sets -----------------------------------

inline json to_json(ExtReal x) {
  if (!x.is_finite()) return x < 0.0 ? json("-inf") : json("+inf");
  return json(double(x));
}

inline ExtReal ext_real_from_json(const json& j) {
  if (j.is_number()) return ExtReal(j.get<double>());
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "-inf") return ExtReal::neg_inf();
    if (s == "+inf" || s == "inf") return ExtReal::pos_inf();
  }
  throw std::invalid_argument("expected a number, \"-inf\" or \"+inf\"");
}

inline json to_json(const IntervalSet& s) {
  json pieces = json::array();
  for (const auto& p : s.pieces())
    pieces.push_back({{"lo", to_json(p.lo)}, {"hi", to_json(p.hi)}, {"lo_inc", p.lo_inc}, {"hi_inc", p.hi_inc}});
  return json{{"pieces", pieces}};
}

inline IntervalSet interval_set_from_json(const json& j) {
  std::vector<Interval> out;
  for (const auto& p : j.at("pieces"))
    out.emplace_back(ext_real_from_json(p.at("lo")), ext_real_from_json(p.at("hi")), p.at("lo_inc").get<bool>(),
                     p.at("hi_inc").get<bool>());
  return IntervalSet(std::move(out));
}

/// Parses interval notation such as "(0,1]", "[-inf,2)" or "(0,1] u [2,3]".
inline IntervalSet parse_interval_set(const std::string& text) {
  std::vector<Interval> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == 'u' || text[i] == 'U')) ++i;
  };
  auto bound = [&](char stop) {
    std::size_t j = text.find(stop, i);
    if (j == std::string::npos) throw std::invalid_argument("malformed interval '" + text + "'");
    std::string tok = text.substr(i, j - i);
    tok.erase(0, tok.find_first_not_of(' '));
    tok.erase(tok.find_last_not_of(' ') + 1);
    i = j;
    if (tok == "-inf") return ExtReal::neg_inf();
    if (tok == "+inf" || tok == "inf") return ExtReal::pos_inf();
    try {
      std::size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("");
      return ExtReal(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed interval bound '" + tok + "'");
    }
  };
  skip();
  while (i < text.size()) {
    char open = text[i];
    if (open != '(' && open != '[') throw std::invalid_argument("malformed interval '" + text + "'");
    ++i;
    ExtReal lo = bound(',');
    ++i;
    std::size_t close_pos = text.find_first_of(")]", i);
    if (close_pos == std::string::npos) throw std::invalid_argument("malformed interval '" + text + "'");
    ExtReal hi = bound(text[close_pos]);
    char close = text[i];
    ++i;
    out.emplace_back(lo, hi, open == '[', close == ']');
    skip();
  }
  return IntervalSet(std::move(out));
}

// ---- smooth functions ----------------------------------------------------

inline json to_json(const SmoothFn& f) {
  json terms = json::array();
  for (const auto& t : f.terms())
    terms.push_back({{"poly", t.poly.coeffs()}, {"exp", {t.exponent.c0, t.exponent.c1, t.exponent.c2}}});
  return json{{"terms", terms}};
}

/// Registered test functions: gaussian, x-gaussian, hermite-gaussian-k.
inline SmoothFn test_function(const std::string& name) {
  if (name == "gaussian") return SmoothFn::gaussian();
  if (name == "x-gaussian") return SmoothFn::identity() * SmoothFn::gaussian();
  const std::string prefix = "hermite-gaussian-";
  if (name.rfind(prefix, 0) == 0) {
    std::string k = name.substr(prefix.size());
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad Hermite order in '" + name + "'");
    return SmoothFn::hermite_gaussian(unsigned(std::stoul(k)));
  }
  throw std::invalid_argument("unknown test function '" + name + "' (gaussian, x-gaussian, hermite-gaussian-k)");
}

inline SmoothFn smooth_from_json(const json& j) {
  if (j.is_string()) return test_function(j.get<std::string>());
  if (j.contains("terms")) {
    std::vector<SmoothFn::Term> terms;
    for (const auto& t : j.at("terms")) {
      auto e = t.at("exp").get<std::vector<double>>();
      if (e.size() != 3) throw std::invalid_argument("exponent needs three coefficients");
      terms.push_back({Polynomial(t.at("poly").get<std::vector<double>>()), {e[0], e[1], e[2]}});
    }
    return SmoothFn(std::move(terms));
  }
  const std::string name = j.at("name").get<std::string>();
  const json params = j.value("params", json::object());
  if (name == "const") return SmoothFn::constant(params.value("value", j.value("value", 0.0)));
  if (name == "poly") return SmoothFn::polynomial(params.value("coeffs", j.value("coeffs", std::vector<double>{})));
  if (name == "gaussian")
    return SmoothFn::gaussian(params.value("center", 0.0), params.value("scale", 1.0), params.value("amplitude", 1.0));
  if (name == "exp") return SmoothFn::exponential(params.value("rate", 1.0), params.value("amplitude", 1.0));
  return test_function(name);
}

// ---- piecewise functions and distributions ------------------------------

inline json to_json(const PiecewiseFn& f) {
  json pieces = json::array(), values = json::array();
  for (const auto& p : f.pieces()) pieces.push_back(to_json(p));
  for (const auto& v : f.point_values()) values.push_back(v ? json(*v) : json(nullptr));
  return json{{"breakpoints", f.breakpoints()}, {"pieces", pieces}, {"values", values},
              {"orientation", to_string(f.orientation_hint())}};
}

inline PiecewiseFn piecewise_from_json(const json& j) {
  std::vector<SmoothFn> pieces;
  for (const auto& p : j.at("pieces")) pieces.push_back(smooth_from_json(p));
  std::vector<std::optional<double>> values;
  for (const auto& v : j.value("values", json::array()))
    values.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
  return PiecewiseFn(j.value("breakpoints", std::vector<double>{}), std::move(pieces), std::move(values),
                     parse_orientation(j.value("orientation", std::string("standard"))));
}

inline json to_json(const Distribution& d) {
  json atoms = json::array();
  for (const auto& a : d.atoms()) atoms.push_back({{"x", a.point}, {"order", a.order}, {"w", a.weight}});
  return json{{"regular", to_json(d.regular())}, {"atoms", atoms}};
}

inline Distribution distribution_from_json(const json& j) {
  std::vector<DistAtom> atoms;
  for (const auto& a : j.value("atoms", json::array()))
    atoms.push_back({a.at("x").get<double>(), a.at("order").get<unsigned>(), a.at("w").get<double>()});
  PiecewiseFn reg = j.contains("regular") ? piecewise_from_json(j.at("regular")) : PiecewiseFn::constant(0.0);
  return Distribution(std::move(reg), std::move(atoms));
}

/// Named piecewise functions used by the command line.
inline PiecewiseFn named_function(const std::string& name) {
  if (name == "sgn_L") return sgn(Orientation::Left);
  if (name == "sgn_R") return sgn(Orientation::Right);
  if (name == "sgn_twosided") return sgn_two_sided();
  if (name == "H_L") return heaviside(Orientation::Left);
  if (name == "H_R") return heaviside(Orientation::Right);
  if (name == "lsgn1") return subtract(heaviside(Orientation::Left), reflect(heaviside(Orientation::Left)));
  if (name == "chi_L") return indicator(Interval::left_open(0.0, 1.0));
  if (name == "chi_R") return indicator(Interval::right_open(0.0, 1.0));
  if (name == "identity") return PiecewiseFn::smooth(SmoothFn::identity());
  if (name == "one") return PiecewiseFn::constant(1.0);
  if (name == "zero") return PiecewiseFn::constant(0.0);
  try {
    return PiecewiseFn::smooth(test_function(name));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("unknown function '" + name +
                                "' (sgn_L, sgn_R, sgn_twosided, H_L, H_R, lsgn1, chi_L, chi_R, identity, one, zero, "
                                "gaussian, x-gaussian, hermite-gaussian-k)");
  }
}

// ---- CSV -----------------------------------------------------------------

inline std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + format_real(r[i]);
    out += '\n';
  }
  return out;
}

// ---- minimal TOML --------------------------------------------------------

using TomlValue = std::variant<bool, std::int64_t, double, std::string>;
using TomlTable = std::map<std::string, std::map<std::string, TomlValue>>;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reads the subset of TOML used by experiment configs: [section] headers
/// and scalar key = value pairs (strings, integers, floats, booleans).
inline TomlTable parse_toml(std::istream& in, const std::string& source = "<config>") {
  TomlTable table;
  std::string section, line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError(source + ":" + std::to_string(lineno) + ": " + msg);
  };
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_str = !in_str;
      if (line[i] == '#' && !in_str) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail("empty section name");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = trim(line.substr(0, eq)), raw = trim(line.substr(eq + 1));
    if (key.empty() || raw.empty()) fail("expected key = value");
    TomlValue value;
    if (raw.front() == '"') {
      if (raw.size() < 2 || raw.back() != '"') fail("unterminated string");
      std::string s;
      for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
        if (raw[i] == '\\' && i + 2 < raw.size()) {
          char e = raw[++i];
          s += e == 'n' ? '\n' : e == 't' ? '\t' : e;
        } else {
          s += raw[i];
        }
      }
      value = s;
    } else if (raw == "true" || raw == "false") {
      value = raw == "true";
    } else {
      std::string num;
      for (char c : raw)
        if (c != '_') num += c;
      try {
        std::size_t used = 0;
        if (num.find_first_of(".eEn") == std::string::npos) {
          std::int64_t v = std::stoll(num, &used);
          if (used != num.size()) fail("bad integer '" + raw + "'");
          value = v;
        } else {
          double v = num == "inf" || num == "+inf" ? kInf : num == "-inf" ? -kInf : std::stod(num, &used);
          if (std::isfinite(v) && used != num.size()) fail("bad number '" + raw + "'");
          value = v;
        }
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception&) {
        fail("unsupported value '" + raw + "'");
      }
    }
    table[section][key] = value;
  }
  return table;
}

inline TomlTable load_toml(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_toml(in, path);
}

inline std::optional<double> toml_number(const TomlTable& t, const std::string& section, const std::string& key) {
  auto s = t.find(section);
  if (s == t.end()) return std::nullopt;
  auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  if (auto d = std::get_if<double>(&k->second)) return *d;
  if (auto i = std::get_if<std::int64_t>(&k->second)) return double(*i);
  throw ConfigError("[" + section + "] " + key + " must be a number");
}

inline std::optional<std::string> toml_string(const TomlTable& t, const std::string& section, const std::string& key) {
  auto s = t.find(section);
  if (s == t.end()) return std::nullopt;
  auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  if (auto v = std::get_if<std::string>(&k->second)) return *v;
  throw ConfigError("[" + section + "] " + key + " must be a string");
}

inline std::optional<bool> toml_bool(const TomlTable& t, const std::string& section, const std::string& key) {
  auto s = t.find(section);
  if (s == t.end()) return std::nullopt;
  auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  if (auto v = std::get_if<bool>(&k->second)) return *v;
  throw ConfigError("[" + section + "] " + key + " must be a boolean");
}

}  // namespace semiflux::io
