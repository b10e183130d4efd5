#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "linkvol/diagram.hpp"
#include "linkvol/error.hpp"
#include "linkvol/numerics.hpp"

namespace linkvol {

using Vec2 = std::array<Complex, 2>;

struct Mat2 {
  Complex a{1}, b{0}, c{0}, d{1};

  static Mat2 identity() { return {}; }
  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }
  Mat2 inverse() const {
    Complex D = det();
    return {d / D, -b / D, -c / D, a / D};
  }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Vec2 operator*(const Vec2& v) const { return {a * v[0] + b * v[1], c * v[0] + d * v[1]}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  // max-entry norm
  double norm() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  }
  Mat2 power(int k) const {
    Mat2 base = k < 0 ? inverse() : *this, r;
    for (int t = 0; t < std::abs(k); ++t) r = r * base;
    return r;
  }
};

inline double distance(const Mat2& x, const Mat2& y) { return (x - y).norm(); }

inline bool is_plus_minus_identity(const Mat2& x, double tol = 1e-6) {
  return distance(x, Mat2::identity()) <= tol || distance(x, -Mat2::identity()) <= tol;
}

struct Representation {
  std::vector<Mat2> generators;  // indexed by arc / generator
};

inline double relation_residual(const LinkDiagram& d, const Representation& rho) {
  double r = 0;
  for (const auto& rel : wirtinger(d).relations) {
    Mat2 o = rho.generators[rel.over].power(rel.sign);
    r = std::max(r, distance(o * rho.generators[rel.in] * o.inverse(), rho.generators[rel.out]));
  }
  return r;
}

inline Mat2 evaluate_word(const Representation& rho, const Word& w) {
  Mat2 r;
  for (const auto& x : w) {
    if (x.generator >= rho.generators.size()) throw InputError("word uses an unknown generator");
    r = r * rho.generators[x.generator].power(x.exponent);
  }
  return r;
}

// Fills every generator from a generating subset using the crossing
// relations, then checks all relations and the meridian condition.
inline Representation complete_representation(const LinkDiagram& d,
                                              const std::map<std::size_t, Mat2>& partial) {
  const std::size_t ng = d.n_generators();
  std::vector<std::optional<Mat2>> g(ng);
  for (const auto& [i, M] : partial) {
    if (i >= ng) throw InputError("representation names generator g" + std::to_string(i + 1) +
                                  " but the diagram has " + std::to_string(ng));
    if (!is_finite(M.a) || !is_finite(M.b) || !is_finite(M.c) || !is_finite(M.d))
      throw InputError("matrix for g" + std::to_string(i + 1) + " has non-finite entries");
    if (std::abs(M.det() - 1.0) > 1e-9)
      throw InputError("matrix for g" + std::to_string(i + 1) + " does not have unit determinant");
    g[i] = M;
  }
  const auto rels = wirtinger(d).relations;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rels) {
      if (!g[r.over]) continue;
      Mat2 o = g[r.over]->power(r.sign);
      if (g[r.in] && !g[r.out]) {
        g[r.out] = o * *g[r.in] * o.inverse();
        changed = true;
      } else if (g[r.out] && !g[r.in]) {
        g[r.in] = o.inverse() * *g[r.out] * o;
        changed = true;
      }
    }
  }
  Representation rho;
  for (std::size_t i = 0; i < ng; ++i) {
    if (!g[i]) throw InputError("insufficient generators: g" + std::to_string(i + 1) +
                                " cannot be reached through the relations");
    rho.generators.push_back(*g[i]);
  }
  double res = relation_residual(d, rho);
  if (res > 1e-6)
    throw InputError("relations inconsistent (residual " + std::to_string(res) + ")");
  for (std::size_t i = 0; i < d.n_components(); ++i)
    if (is_plus_minus_identity(rho.generators[d.components[i].meridian]))
      throw InputError("ρ(μ_i) ≠ ±I violated for component " + std::to_string(i + 1));
  return rho;
}

namespace detail {

// Unit eigenvector of M for eigenvalue lambda.
inline Vec2 eigenvector(const Mat2& M, Complex lambda) {
  Vec2 v1{M.b, lambda - M.a}, v2{lambda - M.d, M.c};
  auto n = [](const Vec2& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); };
  Vec2 v = n(v1) >= n(v2) ? v1 : v2;
  double s = n(v);
  if (s == 0) return {Complex(1), Complex(0)};  // scalar matrix
  return {v[0] / s, v[1] / s};
}

}  // namespace detail

inline Complex meridian_eigenvalue(const LinkDiagram& d, const Representation& rho, std::size_t i) {
  check_component(d, i);
  const Mat2& M = rho.generators[d.components[i].meridian];
  if (is_plus_minus_identity(M))
    throw InputError("ρ(μ_" + std::to_string(i + 1) + ") = ±I");
  if (std::abs(M.c) <= 1e-14 * M.norm()) return M.a;
  Complex t = M.trace();
  Complex sq = std::sqrt(t * t - 4.0);
  Complex r1 = (t + sq) / 2.0, r2 = (t - sq) / 2.0;
  double a1 = std::arg(r1), a2 = std::arg(r2);
  bool ok1 = a1 >= 0, ok2 = a2 >= 0;
  if (ok1 != ok2) return ok1 ? r1 : r2;
  return std::abs(r1) >= std::abs(r2) ? r1 : r2;
}

// Eigenvalue of rho(lambda_i) on the eigenvector of rho(mu_i) for m_i.
inline Complex longitude_eigenvalue(const LinkDiagram& d, const Representation& rho,
                                    std::size_t i) {
  Complex m = meridian_eigenvalue(d, rho, i);
  const Mat2& M = rho.generators[d.components[i].meridian];
  Mat2 L = evaluate_word(rho, longitude_word(d, i));
  Vec2 v = detail::eigenvector(M, m);
  Vec2 Lv = L * v;
  Complex l = std::conj(v[0]) * Lv[0] + std::conj(v[1]) * Lv[1];
  double dev = std::max(std::abs(Lv[0] - l * v[0]), std::abs(Lv[1] - l * v[1]));
  if (dev > 1e-6 * std::max(1.0, L.norm()))
    throw InputError("ρ(λ_" + std::to_string(i + 1) + ") and ρ(μ_" + std::to_string(i + 1) +
                     ") share no eigenvector; representation invalid");
  return l;
}

struct ComponentFilling {
  bool infinite = true;
  long r = 1, s = 0;
  std::optional<Complex> l;
  std::optional<std::pair<long, long>> uv;

  static ComponentFilling unfilled() { return {}; }
  static ComponentFilling slope(long r, long s) {
    ComponentFilling f;
    f.infinite = false;
    f.r = r;
    f.s = s;
    return f;
  }
};

// One entry per component; an empty spec means every component is unfilled.
struct FillingSpec {
  std::vector<ComponentFilling> components;
};

namespace detail {

// a*x + b*y = g = gcd(a, b) >= 0
inline long ext_gcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::abs(a);
  }
  long x1, y1;
  long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace detail

// Integers (u, v) with r log m + s log l + pi i (r u + s v) = 0. Among the
// solution line the pair with the smallest |u| + |v| is returned, ties going
// to smaller |u| and then u >= 0.
inline std::pair<long, long> solve_uv(Complex m, Complex l, long r, long s, double tol = 1e-6) {
  long x, y;
  if (r == 0 && s == 0) throw InputError("slope (0,0) is not a filling");
  if (detail::ext_gcd(r, s, x, y) != 1) throw InputError("slope (r,s) must be coprime");
  Complex X = double(r) * principal_log(m) + double(s) * principal_log(l);
  Complex q = X / Complex(0, std::numbers::pi);
  double nr = std::round(q.real());
  if (std::abs(X - Complex(0, std::numbers::pi) * nr) > tol)
    throw InputError("not a valid filling pair: m^r l^s ≠ ±1");
  long N = static_cast<long>(nr);  // r u + s v = -N
  long u0 = -N * x, v0 = -N * y;
  // u = u0 + s t, v = v0 - r t; scan around the real minimiser of |u| + |v|
  auto cost = [&](long t) {
    long u = u0 + s * t, v = v0 - r * t;
    return std::make_tuple(std::labs(u) + std::labs(v), std::labs(u), u < 0 ? 1 : 0);
  };
  double centre = 0;
  if (s != 0) centre = -double(u0) / double(s);
  else centre = double(v0) / double(r);
  long best = static_cast<long>(std::llround(centre));
  long lo = best - 2 - std::labs(r) - std::labs(s), hi = best + 2 + std::labs(r) + std::labs(s);
  for (long t = lo; t <= hi; ++t)
    if (cost(t) < cost(best)) best = t;
  return {u0 + s * best, v0 - r * best};
}

// Checks coprimality and the filling equation; fills in missing (u, v) when
// l is known.
inline FillingSpec validate_filling(const std::vector<Complex>& m, FillingSpec f, double tol = 1e-6) {
  if (f.components.empty()) f.components.assign(m.size(), ComponentFilling::unfilled());
  if (f.components.size() != m.size())
    throw InputError("filling lists " + std::to_string(f.components.size()) +
                     " slopes but the link has " + std::to_string(m.size()) + " components");
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto& c = f.components[i];
    if (c.infinite) continue;
    long x, y;
    if (detail::ext_gcd(c.r, c.s, x, y) != 1)
      throw InputError("slope for component " + std::to_string(i + 1) + " is not coprime");
    if (!c.uv) {
      if (!c.l) throw InputError("component " + std::to_string(i + 1) +
                                 ": finite slope needs the longitude eigenvalue l or (u,v)");
      try {
        c.uv = solve_uv(m[i], *c.l, c.r, c.s, tol);
      } catch (const InputError& e) {
        throw InputError("representation does not satisfy the filling on component " +
                         std::to_string(i + 1) + " (" + e.what() + ")");
      }
    }
    if (c.l) {
      Complex X = double(c.r) * principal_log(m[i]) + double(c.s) * principal_log(*c.l) +
                  Complex(0, std::numbers::pi) * double(c.r * c.uv->first + c.s * c.uv->second);
      if (std::abs(X) > tol)
        throw InputError("representation does not satisfy the filling on component " +
                         std::to_string(i + 1));
    }
  }
  return f;
}

// |tr rho(mu_i) -+ 2| and |tr rho(lambda_i) -+ 2| both small.
inline bool is_boundary_parabolic(const LinkDiagram& d, const Representation& rho, std::size_t i,
                                  double tol = 1e-6) {
  auto near2 = [&](Complex t) { return std::min(std::abs(t - 2.0), std::abs(t + 2.0)) <= tol; };
  return near2(rho.generators[d.components[i].meridian].trace()) &&
         near2(evaluate_word(rho, longitude_word(d, i)).trace());
}

}  // namespace linkvol
