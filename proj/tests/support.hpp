#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "linkvol/linkvol.hpp"
#include "linkvol/reference.hpp"

namespace testing_support {

using namespace linkvol;

inline LinkDiagram diagram(const char* pd) { return build_diagram(parse_pd(pd)); }

inline FromRepResult golden_run(const reference::GoldenExample& g) {
  const LinkDiagram d = diagram(g.pd);
  return from_representation(d, g.generators, ColoringSeed{g.seedV, g.W, g.seed_region}, FillingSpec{g.filling});
}

// Distance of z from the cut (-inf, 0] of log.
inline double log_cut_distance(Complex z) {
  if (z.real() > 0) return std::abs(z);
  return std::abs(z.imag());
}

// Distance of z from the cut [1, inf) of Li2.
inline double dilog_cut_distance(Complex z) {
  if (z.real() < 1) return std::abs(z - 1.0);
  return std::abs(z.imag());
}

// A random point whose Li2 and log arguments all stay at least `margin` away
// from their branch cuts, so finite differences and identities are clean.
inline Solution random_point(const LinkDiagram& d, std::mt19937_64& rng, double margin = 0.02,
                             bool unit_m = false) {
  std::normal_distribution<double> N(0.0, 0.35);
  std::uniform_real_distribution<double> U(-std::numbers::pi, std::numbers::pi);
  while (true) {
    Solution s;
    for (std::size_t j = 0; j < d.n_regions; ++j) s.w.push_back(std::polar(std::exp(N(rng)), U(rng)));
    for (std::size_t i = 0; i < d.n_components(); ++i)
      s.m.push_back(unit_m ? Complex(1) : std::polar(std::exp(N(rng)), U(rng) / 3));
    bool ok = true;
    for (const auto& c : d.crossings) {
      const CrossingTerms t = crossing_terms(c, d.n_regions);
      for (const auto& term : t.dilogs) {
        Complex z = evaluate(term.z, s);
        ok = ok && dilog_cut_distance(z) > margin && log_cut_distance(1.0 - z) > margin &&
             log_cut_distance(z) > margin;
      }
      ok = ok && log_cut_distance(evaluate(t.log1, s)) > margin && log_cut_distance(evaluate(t.log2, s)) > margin;
    }
    for (auto w : s.w) ok = ok && log_cut_distance(w) > margin;
    for (auto m : s.m) ok = ok && (unit_m || log_cut_distance(m) > margin);
    if (ok) return s;
  }
}

inline Solution conjugate(const Solution& s) {
  Solution c = s;
  for (auto& z : c.w) z = std::conj(z);
  for (auto& z : c.m) z = std::conj(z);
  return c;
}

}  // namespace testing_support
