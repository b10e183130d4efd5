#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "linkvol/diagram.hpp"
#include "linkvol/error.hpp"
#include "linkvol/numerics.hpp"
#include "linkvol/potential.hpp"

namespace linkvol {

// Per crossing: h^1, h^3, h^5 (over side), h_1, h_3 (under side).
using CrossRatioSheet = std::vector<std::array<Complex, 5>>;

inline CrossRatioSheet cross_ratios(const LinkDiagram& d, const Solution& s) {
  check_solution_shape(d, s);
  CrossRatioSheet sheet;
  for (const auto& c : d.crossings) {
    const Complex wj = s.w[c.j], wk = s.w[c.k], wl = s.w[c.l], wm = s.w[c.m];
    const Complex ma = s.m[c.alpha], mb = s.m[c.beta];
    std::array<Complex, 5> h;
    if (c.sign > 0) {
      h = {wm / (mb * wj), mb * wk / wl, wj * wl / (wm * wk), wk / (ma * wj), ma * wm / wl};
    } else {
      h = {wj / (ma * wk), ma * wl / wm, wm * wk / (wj * wl), wj / (mb * wm), mb * wl / wk};
    }
    for (const auto& z : h)
      if (!is_finite(z) || z == Complex(0) || z == Complex(1))
        throw DegenerateError("degenerate cross-ratio at crossing " + std::to_string(&c - d.crossings.data() + 1));
    sheet.push_back(h);
  }
  return sheet;
}

struct GluingReport {
  std::vector<Complex> regional;    // prod_c tau_{c,j}, one per region
  std::vector<Complex> over;        // one per Wirtinger arc
  std::vector<Complex> under;       // one per under-arc
  std::vector<Complex> octahedron;  // two internal-edge products per crossing
  double regional_dev = 0, over_dev = 0, under_dev = 0, octahedron_dev = 0;

  bool passed(double tol) const {
    return regional_dev <= tol && over_dev <= tol && under_dev <= tol && octahedron_dev <= tol;
  }
};

inline GluingReport gluing_check(const LinkDiagram& d, const Solution& s) {
  const CrossRatioSheet h = cross_ratios(d, s);
  GluingReport rep;
  auto dev = [](const std::vector<Complex>& v) {
    double r = 0;
    for (auto z : v) r = std::max(r, std::abs(z - 1.0));
    return r;
  };
  for (std::size_t j = 0; j < d.n_regions; ++j) {
    Complex p = 1;
    for (std::size_t c = 0; c < d.n_crossings(); ++c) p *= tau(d, c, j, s);
    rep.regional.push_back(p);
  }
  for (const auto& x : h) {
    rep.octahedron.push_back(x[0] * x[1] * x[2]);
    rep.octahedron.push_back(x[3] * x[4] * x[2]);
  }
  for (const auto& a : d.arcs) {
    Complex p = h[a.start_crossing][3];
    for (std::size_t c : a.over_crossings) p /= h[c][0] * h[c][1];
    p *= h[a.end_crossing][4];
    rep.over.push_back(p);
  }
  for (const auto& u : d.under_arcs) {
    Complex p = h[u.start_crossing][0];
    for (std::size_t c : u.under_crossings) p /= h[c][3] * h[c][4];
    p *= h[u.end_crossing][1];
    rep.under.push_back(p);
  }
  rep.regional_dev = dev(rep.regional);
  rep.over_dev = dev(rep.over);
  rep.under_dev = dev(rep.under);
  rep.octahedron_dev = dev(rep.octahedron);
  return rep;
}

// Largest |log|h|| over all cross-ratios. A shape near 0 or infinity is as
// flat as one near 1 (its sibling 1/(1-h) tends to 1), and Newton runs from
// random seeds like to creep towards those limits.
inline double shape_spread(const LinkDiagram& d, const Solution& s) {
  double r = 0;
  for (const auto& x : cross_ratios(d, s))
    for (auto z : x) r = std::max(r, std::abs(std::log(std::abs(z))));
  return r;
}

struct SolveConfig {
  int max_iterations = 50;
  double residual_tol = 1e-10;
  int seeds = 64;
  std::uint64_t rng_seed = 0;
  double damping = 1.0;
};

struct NewtonResult {
  bool converged = false;
  Solution solution;
  int iterations = 0;
  double residual = 0;
  std::string diagnostic;
};

namespace detail {

// F_j = w_j dW/dw_j and J_jr = dF_j / d log w_r.
inline void w_gradient_and_jacobian(const LinkDiagram& d, const Solution& s,
                                    std::vector<Complex>& F, Eigen::MatrixXcd& J) {
  const std::size_t n = d.n_regions;
  F.assign(n, Complex(0));
  J.setZero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& c : d.crossings) {
    const CrossingTerms t = crossing_terms(c, n);
    for (const auto& term : t.dilogs) {
      const Complex z = evaluate(term.z, s);
      const Complex g = minus_log_one_minus(z);
      const Complex h = z / (1.0 - z);
      for (int a = 0; a < term.z.size; ++a) {
        const std::size_t x = term.z.f[a].var;
        if (x >= n) continue;
        const double ex = term.coef * term.z.f[a].exponent;
        F[x] += ex * g;
        for (int b = 0; b < term.z.size; ++b) {
          const std::size_t y = term.z.f[b].var;
          if (y >= n) continue;
          J(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) +=
              ex * term.z.f[b].exponent * h;
        }
      }
    }
    const Complex L1 = principal_log(evaluate(t.log1, s)), L2 = principal_log(evaluate(t.log2, s));
    for (int a = 0; a < t.log1.size; ++a) {
      const std::size_t x = t.log1.f[a].var;
      if (x >= n) continue;
      F[x] += double(t.loglog_coef * t.log1.f[a].exponent) * L2;
      for (int b = 0; b < t.log2.size; ++b) {
        const std::size_t y = t.log2.f[b].var;
        if (y >= n) continue;
        const double v = t.loglog_coef * t.log1.f[a].exponent * t.log2.f[b].exponent;
        J(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) += v;
        J(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) += v;
      }
    }
    for (int a = 0; a < t.log2.size; ++a) {
      const std::size_t x = t.log2.f[a].var;
      if (x >= n) continue;
      F[x] += double(t.loglog_coef * t.log2.f[a].exponent) * L1;
    }
  }
}

inline Complex wrap_2pi_i(Complex f) {
  const double two_pi = 2 * std::numbers::pi;
  return f - Complex(0, two_pi * std::round(f.imag() / two_pi));
}

inline double exp_residual(const std::vector<Complex>& F) {
  double r = 0;
  for (auto f : F) r = std::max(r, std::abs(std::exp(f) - 1.0));
  return r;
}

}  // namespace detail

// Damped Newton in log w on F_j - 2 pi i k_j (k_j the nearest integer), with
// w_{n-1} pinned and the last equation dropped (the F_j sum to zero).
inline NewtonResult newton_solve(const LinkDiagram& d, const std::vector<Complex>& m,
                                 const std::vector<Complex>& seed, const SolveConfig& cfg) {
  NewtonResult out;
  const std::size_t n = d.n_regions;
  if (m.size() != d.n_components() || seed.size() != n)
    throw InputError("newton_solve: dimension mismatch");
  for (auto z : m)
    if (z == Complex(0) || !is_finite(z)) throw InputError("m-values must be finite and nonzero");
  Solution s{seed, m};
  if (!is_nondegenerate(d, s).ok) {
    out.diagnostic = "degenerate seed";
    return out;
  }
  const Eigen::Index k = static_cast<Eigen::Index>(n - 1);
  std::vector<Complex> F;
  Eigen::MatrixXcd J;
  auto evaluate_all = [&](const Solution& x, std::vector<Complex>& Fx, Eigen::MatrixXcd& Jx) {
    try {
      if (!is_nondegenerate(d, x).ok) return false;
      detail::w_gradient_and_jacobian(d, x, Fx, Jx);
    } catch (const std::exception&) {
      return false;
    }
    for (auto f : Fx)
      if (!is_finite(f)) return false;
    return true;
  };
  auto merit = [&](const std::vector<Complex>& Fx) {
    double r = 0;
    for (Eigen::Index i = 0; i < k; ++i) r += std::norm(detail::wrap_2pi_i(Fx[i]));
    return r;
  };
  if (!evaluate_all(s, F, J)) {
    out.diagnostic = "degenerate seed";
    return out;
  }
  for (int it = 0; it < cfg.max_iterations; ++it) {
    out.iterations = it;
    out.residual = detail::exp_residual(F);
    if (out.residual <= cfg.residual_tol) {
      out.converged = true;
      out.solution = s;
      return out;
    }
    Eigen::VectorXcd r(k);
    for (Eigen::Index i = 0; i < k; ++i) r(i) = detail::wrap_2pi_i(F[i]);
    Eigen::MatrixXcd Jr = J.topLeftCorner(k, k);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(Jr);
    if (lu.rank() < k) {
      out.diagnostic = "singular Jacobian";
      return out;
    }
    Eigen::VectorXcd step = lu.solve(-r);
    if (!step.allFinite()) {
      out.diagnostic = "singular Jacobian";
      return out;
    }
    const double f0 = merit(F);
    double alpha = cfg.damping;
    bool accepted = false;
    std::vector<Complex> Fn;
    Eigen::MatrixXcd Jn;
    Solution trial = s;
    while (alpha >= 1e-6) {
      for (Eigen::Index i = 0; i < k; ++i) trial.w[i] = s.w[i] * std::exp(alpha * step(i));
      if (evaluate_all(trial, Fn, Jn) && merit(Fn) <= (1.0 - 1e-4 * alpha) * f0) {
        accepted = true;
        break;
      }
      alpha /= 2;
    }
    if (!accepted) {
      out.diagnostic = "line search failed";
      out.solution = s;
      return out;
    }
    s = trial;
    F = std::move(Fn);
    J = std::move(Jn);
  }
  out.iterations = cfg.max_iterations;
  out.residual = detail::exp_residual(F);
  out.converged = out.residual <= cfg.residual_tol;
  out.solution = s;
  if (!out.converged) out.diagnostic = "no convergence within max_iterations";
  return out;
}

struct RankedSolution {
  Solution solution;
  VolumeResult volume;  // without filling corrections
  int seed_index = 0;
};

inline std::vector<Complex> normalized_w(const Solution& s) {
  std::vector<Complex> w = s.w;
  const Complex last = w.back();
  for (auto& z : w) z /= last;
  return w;
}

inline std::vector<RankedSolution> multi_start(const LinkDiagram& d, const std::vector<Complex>& m,
                                               const SolveConfig& cfg) {
  std::vector<RankedSolution> found;
  for (auto z : m)
    if (!is_finite(z) || z == Complex(0)) return found;
  const std::size_t n = d.n_regions;
  std::normal_distribution<double> radius(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int k = 0; k < cfg.seeds; ++k) {
    std::mt19937_64 rng(cfg.rng_seed * 1000003ULL + static_cast<std::uint64_t>(k));
    std::optional<NewtonResult> res;
    for (int attempt = 0; attempt < 10; ++attempt) {
      std::vector<Complex> seed(n);
      for (auto& z : seed) z = std::polar(std::exp(radius(rng)), angle(rng));
      NewtonResult r = newton_solve(d, m, seed, cfg);
      if (r.diagnostic == "degenerate seed") continue;
      res = r;
      break;
    }
    if (!res || !res->converged) continue;
    const Solution& s = res->solution;
    if (!is_nondegenerate(d, s).ok) continue;
    if (shape_spread(d, s) > std::log(1e6)) continue;
    VolumeResult v;
    try {
      v = W0(d, s, FillingSpec{});
    } catch (const std::exception&) {
      continue;
    }
    if (v.residual_max > cfg.residual_tol * 10 || !std::isfinite(v.vol)) continue;
    const auto wn = normalized_w(s);
    bool duplicate = false;
    for (const auto& f : found) {
      const auto wf = normalized_w(f.solution);
      double dist = 0;
      for (std::size_t j = 0; j < n; ++j)
        dist = std::max(dist, std::abs(wn[j] - wf[j]) / std::max(1.0, std::abs(wf[j])));
      if (dist <= 1e-6) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) found.push_back({s, v, k});
  }
  std::stable_sort(found.begin(), found.end(), [](const RankedSolution& a, const RankedSolution& b) {
    return a.volume.vol > b.volume.vol;
  });
  return found;
}

struct VolCsResult {
  VolumeResult volume;
  GluingReport gluing;
};

inline VolCsResult vol_cs(const LinkDiagram& d, const Solution& s, const FillingSpec& f) {
  VolCsResult r;
  r.gluing = gluing_check(d, s);
  r.volume = W0(d, s, f);
  return r;
}

}  // namespace linkvol
