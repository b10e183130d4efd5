#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "linkvol/coloring.hpp"
#include "linkvol/engine.hpp"
#include "linkvol/error.hpp"
#include "linkvol/potential.hpp"
#include "linkvol/representation.hpp"

namespace linkvol {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

namespace detail {

// strtod on a view; returns the number of characters consumed (0 on failure)
inline std::size_t read_real(std::string_view s, double& out) {
  std::string buf(s);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return static_cast<std::size_t>(end - buf.c_str());
}

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? s.npos : p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

}  // namespace detail

// "a+bi", "a-bi", "a", "bi", "i", "-i", "1e-3-2.5E2i"; whitespace ignored
inline Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto bad = [&]() { return InputError("cannot parse complex number '" + std::string(text) + "'"); };
  if (s.empty()) throw bad();
  if (s.back() != 'i' && s.back() != 'j') {
    double re;
    if (detail::read_real(s, re) != s.size()) throw bad();
    return {re, 0.0};
  }
  s.pop_back();
  // find the sign that starts the imaginary part (not one inside an exponent)
  std::size_t split = 0;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re_part = s.substr(0, split), im_part = s.substr(split);
  double re = 0, im;
  if (!re_part.empty() && detail::read_real(re_part, re) != re_part.size()) throw bad();
  if (im_part.empty() || im_part == "+") im = 1;
  else if (im_part == "-") im = -1;
  else if (detail::read_real(im_part, im) != im_part.size()) throw bad();
  Complex z(re, im);
  if (!is_finite(z)) throw bad();
  return z;
}

inline std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  for (const auto& t : detail::split(text, ',')) out.push_back(parse_complex(t));
  return out;
}

inline std::string format_complex(Complex z, int digits = 6) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*f%+.*fi", digits, z.real(), digits, z.imag());
  return buf;
}

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError(what + ": expected [re, im]");
  Complex z(j[0].get<double>(), j[1].get<double>());
  if (!is_finite(z)) throw InputError(what + ": non-finite value");
  return z;
}

inline std::vector<Complex> complex_list_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected a list of [re, im]");
  std::vector<Complex> out;
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(complex_from_json(j[k], what + "[" + std::to_string(k) + "]"));
  return out;
}

inline json to_json(const std::vector<Complex>& v) {
  json a = json::array();
  for (auto z : v) a.push_back(to_json(z));
  return a;
}

inline Vec2 vec2_from_json(const json& j, const std::string& what) {
  auto v = complex_list_from_json(j, what);
  if (v.size() != 2) throw InputError(what + ": expected two entries");
  return {v[0], v[1]};
}

// ---- representation ----

inline json to_json(const Mat2& M) { return json::array({to_json(M.a), to_json(M.b), to_json(M.c), to_json(M.d)}); }

// {"generators": {"g1": [[re,im] x 4], ...}}, row-major. Keys are 1-based.
inline std::map<std::size_t, Mat2> parse_representation(const std::string& text) {
  json doc = parse_json(text, "representation");
  if (!doc.is_object() || !doc.contains("generators") || !doc["generators"].is_object())
    throw InputError("representation: missing \"generators\" object");
  std::map<std::size_t, Mat2> out;
  for (const auto& [key, val] : doc["generators"].items()) {
    if (key.size() < 2 || key[0] != 'g') throw InputError("representation: bad generator name '" + key + "'");
    std::size_t idx = 0;
    for (std::size_t k = 1; k < key.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(key[k])))
        throw InputError("representation: bad generator name '" + key + "'");
      idx = idx * 10 + static_cast<std::size_t>(key[k] - '0');
    }
    if (idx == 0) throw InputError("representation: generators are numbered from g1");
    auto e = complex_list_from_json(val, key);
    if (e.size() != 4) throw InputError("representation: " + key + " needs 4 entries");
    out[idx - 1] = Mat2{e[0], e[1], e[2], e[3]};
  }
  if (out.empty()) throw InputError("representation: no generators given");
  return out;
}

inline json representation_to_json(const std::map<std::size_t, Mat2>& gens) {
  json g = json::object();
  for (const auto& [i, M] : gens) g["g" + std::to_string(i + 1)] = to_json(M);
  return json{{"generators", g}};
}

// ---- coloring ----

struct ColoringChoice {
  std::optional<Vec2> seedV, W;
  std::optional<std::size_t> seed_region;  // 0-based
};

// {"seedV": [[re,im],[re,im]], "W": [...], "seed_region": k (1-based)}
inline ColoringChoice parse_coloring(const std::string& text) {
  json doc = parse_json(text, "coloring");
  if (!doc.is_object()) throw InputError("coloring: expected an object");
  ColoringChoice c;
  if (doc.contains("seedV")) c.seedV = vec2_from_json(doc["seedV"], "seedV");
  if (doc.contains("W")) c.W = vec2_from_json(doc["W"], "W");
  if (doc.contains("seed_region")) {
    if (!doc["seed_region"].is_number_integer() || doc["seed_region"].get<long long>() < 1)
      throw InputError("coloring: seed_region must be a positive integer");
    c.seed_region = static_cast<std::size_t>(doc["seed_region"].get<long long>() - 1);
  }
  return c;
}

// ---- solution ----

inline json to_json(const Solution& s) { return json{{"w", to_json(s.w)}, {"m", to_json(s.m)}}; }

inline Solution solution_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("w") || !doc.contains("m"))
    throw InputError("solution: expected {\"w\": [...], \"m\": [...]}");
  Solution s;
  s.w = complex_list_from_json(doc["w"], "w");
  s.m = complex_list_from_json(doc["m"], "m");
  return s;
}

// Accepts a plain solution or a solver report; returns every solution listed.
inline std::vector<Solution> parse_solutions(const std::string& text) {
  json doc = parse_json(text, "solution");
  std::vector<Solution> out;
  if (doc.is_object() && doc.contains("solutions")) {
    for (const auto& x : doc["solutions"]) out.push_back(solution_from_json(x));
  } else {
    out.push_back(solution_from_json(doc));
  }
  return out;
}

// ---- filling ----

// "2/3", "-5", "-5/2", "inf"
inline ComponentFilling parse_slope(std::string_view text) {
  std::string t = detail::trim(text);
  if (t == "inf" || t == "infinity" || t == "oo") return ComponentFilling::unfilled();
  auto bad = [&]() { return InputError("cannot parse slope '" + t + "' (expected r/s, r or inf)"); };
  auto parse_int = [&](const std::string& x) {
    if (x.empty()) throw bad();
    std::size_t used = 0;
    long v;
    try {
      v = std::stol(x, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != x.size()) throw bad();
    return v;
  };
  std::size_t slash = t.find('/');
  long r = parse_int(t.substr(0, slash)), s = 1;
  if (slash != std::string::npos) s = parse_int(t.substr(slash + 1));
  if (s == 0) throw InputError("meridional filling (s = 0) is not supported");
  // keep s > 0 so r/s keeps the user's sign
  if (s < 0) {
    r = -r;
    s = -s;
  }
  return ComponentFilling::slope(r, s);
}

inline FillingSpec parse_filling_flag(std::string_view text) {
  FillingSpec f;
  for (const auto& t : detail::split(text, ',')) f.components.push_back(parse_slope(t));
  return f;
}

// Attach longitude eigenvalues: either one per component or one per finite slope.
inline void attach_longitudes(FillingSpec& f, const std::vector<Complex>& l) {
  if (l.empty()) return;
  std::vector<std::size_t> finite;
  for (std::size_t i = 0; i < f.components.size(); ++i)
    if (!f.components[i].infinite) finite.push_back(i);
  if (l.size() == f.components.size()) {
    for (std::size_t i = 0; i < l.size(); ++i) f.components[i].l = l[i];
  } else if (l.size() == finite.size()) {
    for (std::size_t k = 0; k < l.size(); ++k) f.components[finite[k]].l = l[k];
  } else {
    throw InputError("--l gives " + std::to_string(l.size()) + " values for " +
                     std::to_string(f.components.size()) + " components");
  }
}

// {"slopes": ["inf" | [r,s]], "l": [[re,im],...], "uv": [[u,v],...]}
inline FillingSpec parse_filling(const std::string& text) {
  json doc = parse_json(text, "filling");
  if (!doc.is_object() || !doc.contains("slopes") || !doc["slopes"].is_array())
    throw InputError("filling: missing \"slopes\" list");
  FillingSpec f;
  for (const auto& s : doc["slopes"]) {
    if (s.is_string()) {
      f.components.push_back(parse_slope(s.get<std::string>()));
    } else if (s.is_array() && s.size() == 2 && s[0].is_number_integer() && s[1].is_number_integer()) {
      long r = s[0].get<long>(), q = s[1].get<long>();
      if (q == 0) throw InputError("meridional filling (s = 0) is not supported");
      f.components.push_back(ComponentFilling::slope(r, q));
    } else {
      throw InputError("filling: each slope is \"inf\" or [r, s]");
    }
  }
  if (doc.contains("l")) {
    auto l = complex_list_from_json(doc["l"], "l");
    attach_longitudes(f, l);
  }
  if (doc.contains("uv")) {
    const auto& uv = doc["uv"];
    if (!uv.is_array()) throw InputError("filling: \"uv\" must be a list");
    std::vector<std::size_t> finite;
    for (std::size_t i = 0; i < f.components.size(); ++i)
      if (!f.components[i].infinite) finite.push_back(i);
    if (uv.size() != finite.size() && uv.size() != f.components.size())
      throw InputError("filling: \"uv\" length does not match the slopes");
    for (std::size_t k = 0; k < uv.size(); ++k) {
      std::size_t i = uv.size() == f.components.size() ? k : finite[k];
      if (uv[k].is_null() || uv[k].is_string()) continue;
      if (!uv[k].is_array() || uv[k].size() != 2 || !uv[k][0].is_number_integer() ||
          !uv[k][1].is_number_integer())
        throw InputError("filling: each uv entry is [u, v]");
      if (!f.components[i].infinite) f.components[i].uv = {uv[k][0].get<long>(), uv[k][1].get<long>()};
    }
  }
  return f;
}

inline json to_json(const FillingSpec& f) {
  json slopes = json::array(), l = json::array(), uv = json::array();
  bool have_l = false;
  for (const auto& c : f.components) {
    if (c.infinite) {
      slopes.push_back("inf");
    } else {
      slopes.push_back(json::array({c.r, c.s}));
    }
    if (c.l) have_l = true;
    l.push_back(c.l ? to_json(*c.l) : json(nullptr));
    uv.push_back(c.uv ? json::array({c.uv->first, c.uv->second}) : json(nullptr));
  }
  json out{{"slopes", slopes}, {"uv", uv}};
  if (have_l) out["l"] = l;
  return out;
}

// ---- reports ----

inline json to_json(const GluingReport& g, double tol) {
  return json{{"regional_max_dev", g.regional_dev},
              {"over_max_dev", g.over_dev},
              {"under_max_dev", g.under_dev},
              {"octahedron_max_dev", g.octahedron_dev},
              {"passed", g.passed(tol)}};
}

inline json to_json(const VolumeResult& v) {
  return json{{"W0", to_json(v.W0)},
              {"vol", v.vol},
              {"cs", v.cs},
              {"residual_max", v.residual_max},
              {"nondegenerate", v.nondegenerate}};
}

// Per solution {w, m, residual_max, W0, vol, cs, gluing_report}.
inline json solution_report(const Solution& s, const VolumeResult& v, const GluingReport& g, double tol) {
  json j = to_json(s);
  j["residual_max"] = v.residual_max;
  j["W0"] = to_json(v.W0);
  j["vol"] = v.vol;
  j["cs"] = v.cs;
  j["nondegenerate"] = v.nondegenerate;
  j["gluing_report"] = to_json(g, tol);
  return j;
}

inline void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << doc.dump(2) << '\n';
}

}  // namespace linkvol
