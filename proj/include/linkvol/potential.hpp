#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "linkvol/coloring.hpp"
#include "linkvol/diagram.hpp"
#include "linkvol/error.hpp"
#include "linkvol/numerics.hpp"
#include "linkvol/representation.hpp"

namespace linkvol {

// Variables are numbered w_0..w_{n-1}, then m_0..m_{h-1}.
struct Factor {
  std::size_t var = 0;
  int exponent = 1;
};

struct Monomial {
  std::array<Factor, 4> f{};
  int size = 0;

  Monomial& times(std::size_t var, int e) {
    f[size++] = {var, e};
    return *this;
  }
  int exponent_of(std::size_t var) const {
    int e = 0;
    for (int t = 0; t < size; ++t)
      if (f[t].var == var) e += f[t].exponent;
    return e;
  }
};

struct DilogTerm {
  int coef = 1;
  Monomial z;
};

// W_c = sum coef Li2(z) + constant + loglog_coef log(z1) log(z2)
struct CrossingTerms {
  std::array<DilogTerm, 5> dilogs;
  double constant = 0;
  int loglog_coef = 1;
  Monomial log1, log2;
};

inline CrossingTerms crossing_terms(const Crossing& c, std::size_t n_regions) {
  const std::size_t j = c.j, k = c.k, l = c.l, m = c.m;
  const std::size_t ma = n_regions + c.alpha, mb = n_regions + c.beta;
  CrossingTerms t;
  auto mono = [](std::initializer_list<std::pair<std::size_t, int>> fs) {
    Monomial x;
    for (auto [v, e] : fs) x.times(v, e);
    return x;
  };
  const Monomial five = mono({{j, 1}, {l, 1}, {m, -1}, {k, -1}});
  if (c.sign > 0) {
    t.dilogs = {DilogTerm{1, mono({{m, 1}, {mb, -1}, {j, -1}})},
                DilogTerm{1, mono({{k, 1}, {ma, -1}, {j, -1}})},
                DilogTerm{-1, mono({{l, 1}, {mb, -1}, {k, -1}})},
                DilogTerm{-1, mono({{l, 1}, {ma, -1}, {m, -1}})},
                DilogTerm{1, five}};
    t.constant = -pi_squared<double> / 6;
    t.loglog_coef = 1;
    t.log1 = t.dilogs[0].z;
    t.log2 = t.dilogs[1].z;
  } else {
    t.dilogs = {DilogTerm{-1, mono({{mb, 1}, {m, 1}, {j, -1}})},
                DilogTerm{-1, mono({{ma, 1}, {k, 1}, {j, -1}})},
                DilogTerm{1, mono({{mb, 1}, {l, 1}, {k, -1}})},
                DilogTerm{1, mono({{ma, 1}, {l, 1}, {m, -1}})},
                DilogTerm{-1, five}};
    t.constant = pi_squared<double> / 6;
    t.loglog_coef = -1;
    t.log1 = t.dilogs[0].z;
    t.log2 = t.dilogs[1].z;
  }
  return t;
}

inline void check_solution_shape(const LinkDiagram& d, const Solution& s) {
  if (s.w.size() != d.n_regions)
    throw InputError("solution has " + std::to_string(s.w.size()) + " w-values but the diagram has " +
                     std::to_string(d.n_regions) + " regions");
  if (s.m.size() != d.n_components())
    throw InputError("solution has " + std::to_string(s.m.size()) +
                     " m-values but the diagram has " + std::to_string(d.n_components()) +
                     " components");
  for (auto z : s.w)
    if (z == Complex(0) || !is_finite(z)) throw InputError("w-values must be finite and nonzero");
  for (auto z : s.m)
    if (z == Complex(0) || !is_finite(z)) throw InputError("m-values must be finite and nonzero");
}

inline Complex variable(const Solution& s, std::size_t var) {
  return var < s.w.size() ? s.w[var] : s.m[var - s.w.size()];
}

inline Complex evaluate(const Monomial& x, const Solution& s) {
  Complex r = 1;
  for (int t = 0; t < x.size; ++t) {
    Complex v = variable(s, x.f[t].var);
    r = x.f[t].exponent > 0 ? r * v : r / v;
  }
  return r;
}

struct CrossingValue {
  Complex value;
  bool degenerate = false;
};

inline CrossingValue crossing_potential(const LinkDiagram& d, std::size_t ci, const Solution& s) {
  const CrossingTerms t = crossing_terms(d.crossings[ci], d.n_regions);
  CrossingValue out;
  Complex sum = t.constant;
  for (const auto& term : t.dilogs) {
    Complex z = evaluate(term.z, s);
    if (std::abs(z - 1.0) <= 1e-8) out.degenerate = true;
    sum += double(term.coef) * dilog(z);
  }
  sum += double(t.loglog_coef) * principal_log(evaluate(t.log1, s)) *
         principal_log(evaluate(t.log2, s));
  out.value = sum;
  return out;
}

inline Complex total_potential(const LinkDiagram& d, const Solution& s) {
  check_solution_shape(d, s);
  Complex sum = 0;
  for (std::size_t c = 0; c < d.n_crossings(); ++c) sum += crossing_potential(d, c, s).value;
  return sum;
}

namespace detail {

inline Complex minus_log_one_minus(Complex z) {
  if (z == Complex(1)) throw DegenerateError("degenerate crossing: singular log(1 - z)");
  return -principal_log(Complex(1) - z);
}

// x d/dx of W_c for the variable `var`.
inline Complex crossing_log_derivative(const CrossingTerms& t, const Solution& s, std::size_t var) {
  Complex sum = 0;
  for (const auto& term : t.dilogs) {
    int e = term.z.exponent_of(var);
    if (e != 0) sum += double(term.coef * e) * minus_log_one_minus(evaluate(term.z, s));
  }
  int e1 = t.log1.exponent_of(var), e2 = t.log2.exponent_of(var);
  if (e1 != 0) sum += double(t.loglog_coef * e1) * principal_log(evaluate(t.log2, s));
  if (e2 != 0) sum += double(t.loglog_coef * e2) * principal_log(evaluate(t.log1, s));
  return sum;
}

}  // namespace detail

// w_j dW_c/dw_j for a single crossing.
inline Complex crossing_wdW(const LinkDiagram& d, std::size_t ci, const Solution& s, std::size_t j) {
  return detail::crossing_log_derivative(crossing_terms(d.crossings[ci], d.n_regions), s, j);
}

inline Complex wdW(const LinkDiagram& d, const Solution& s, std::size_t j) {
  check_solution_shape(d, s);
  if (j >= d.n_regions) throw InputError("region index out of range");
  Complex sum = 0;
  for (std::size_t c = 0; c < d.n_crossings(); ++c) {
    const auto r = d.crossings[c].regions();
    if (std::find(r.begin(), r.end(), j) == r.end()) continue;
    sum += crossing_wdW(d, c, s, j);
  }
  return sum;
}

inline Complex mdW(const LinkDiagram& d, const Solution& s, std::size_t i) {
  check_solution_shape(d, s);
  if (i >= d.n_components()) throw InputError("component index out of range");
  Complex sum = 0;
  for (std::size_t c = 0; c < d.n_crossings(); ++c) {
    const Crossing& X = d.crossings[c];
    if (X.alpha != i && X.beta != i) continue;
    sum += detail::crossing_log_derivative(crossing_terms(X, d.n_regions), s, d.n_regions + i);
  }
  return sum;
}

// Closed-form tau_{c,j}; the product over every position of c labelled j.
inline Complex tau(const LinkDiagram& d, std::size_t ci, std::size_t j, const Solution& s) {
  const Crossing& c = d.crossings[ci];
  const Complex wj = s.w[c.j], wk = s.w[c.k], wl = s.w[c.l], wm = s.w[c.m];
  const Complex ma = s.m[c.alpha], mb = s.m[c.beta];
  std::array<Complex, 4> num, den;  // j, k, l, m
  if (c.sign > 0) {
    num = {(ma * wj - wk) * (mb * wj - wm), wj * wl - wk * wm, (wl / mb - wk) * (wl / ma - wm),
           wj * wl - wk * wm};
    den = {wk * wm - wj * wl, (wk / ma - wj) * (mb * wk - wl), wk * wm - wj * wl,
           (wm / mb - wj) * (ma * wm - wl)};
  } else {
    num = {wk * wm - wj * wl, (ma * wk - wj) * (wk / mb - wl), wk * wm - wj * wl,
           (mb * wm - wj) * (wm / ma - wl)};
    den = {(wj / ma - wk) * (wj / mb - wm), wj * wl - wk * wm, (mb * wl - wk) * (ma * wl - wm),
           wj * wl - wk * wm};
  }
  const auto r = c.regions();
  Complex out = 1;
  for (int p = 0; p < 4; ++p) {
    if (r[p] != j) continue;
    if (den[p] == Complex(0)) throw DegenerateError("degenerate crossing: vanishing τ denominator");
    out *= num[p] / den[p];
  }
  return out;
}

struct DegeneracyFailure {
  std::size_t crossing = 0;
  int ratio = 0;  // 0..4, in the order of the five Li2 arguments
  Complex value;
};

struct NondegeneracyReport {
  bool ok = true;
  std::vector<DegeneracyFailure> failures;
};

inline NondegeneracyReport is_nondegenerate(const LinkDiagram& d, const Solution& s) {
  check_solution_shape(d, s);
  NondegeneracyReport rep;
  for (std::size_t c = 0; c < d.n_crossings(); ++c) {
    const CrossingTerms t = crossing_terms(d.crossings[c], d.n_regions);
    for (int q = 0; q < 5; ++q) {
      Complex z = evaluate(t.dilogs[q].z, s);
      if (!is_finite(z) || z == Complex(0) || std::abs(z - 1.0) <= 1e-8) {
        rep.ok = false;
        rep.failures.push_back({c, q, z});
      }
    }
  }
  return rep;
}

struct CriticalResiduals {
  std::vector<Complex> exp_form;  // exp(w_j dW/dw_j) - 1
  std::vector<Complex> tau_form;  // prod_c tau_{c,j} - 1
  double max_abs = 0;
};

inline CriticalResiduals critical_residuals(const LinkDiagram& d, const Solution& s) {
  check_solution_shape(d, s);
  CriticalResiduals r;
  for (std::size_t j = 0; j < d.n_regions; ++j) {
    Complex e = std::exp(wdW(d, s, j)) - 1.0;
    Complex p = 1;
    for (std::size_t c = 0; c < d.n_crossings(); ++c) p *= tau(d, c, j, s);
    p -= 1.0;
    r.exp_form.push_back(e);
    r.tau_form.push_back(p);
    r.max_abs = std::max({r.max_abs, std::abs(e), std::abs(p)});
  }
  return r;
}

struct VolumeResult {
  Complex W0;
  double vol = 0;
  double cs = 0;  // in [0, pi^2)
  double residual_max = 0;
  bool nondegenerate = true;
};

// W - sum_j (w_j dW/dw_j) log w_j
//   - sum_{finite i} [(m_i dW/dm_i)(log m_i + u_i pi i) - (r_i/s_i)(log m_i + u_i pi i)^2]
inline VolumeResult W0(const LinkDiagram& d, const Solution& s, const FillingSpec& f) {
  check_solution_shape(d, s);
  std::vector<ComponentFilling> comps = f.components;
  if (comps.empty()) comps.assign(d.n_components(), ComponentFilling::unfilled());
  if (comps.size() != d.n_components())
    throw InputError("filling has " + std::to_string(comps.size()) + " entries for " +
                     std::to_string(d.n_components()) + " components");
  VolumeResult out;
  out.nondegenerate = is_nondegenerate(d, s).ok;
  out.residual_max = critical_residuals(d, s).max_abs;
  Complex value = total_potential(d, s);
  for (std::size_t j = 0; j < d.n_regions; ++j) value -= wdW(d, s, j) * principal_log(s.w[j]);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    if (c.infinite) continue;
    if (c.s == 0) throw InputError("meridional filling (s = 0) is not supported");
    if (!c.uv) throw InputError("component " + std::to_string(i + 1) + ": missing (u, v)");
    Complex L = principal_log(s.m[i]) + Complex(0, std::numbers::pi * double(c.uv->first));
    value -= mdW(d, s, i) * L - (double(c.r) / double(c.s)) * L * L;
  }
  out.W0 = value;
  out.vol = value.imag();
  out.cs = reduce_mod_pi2(-value.real());
  return out;
}

}  // namespace linkvol
