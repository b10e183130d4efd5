#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include "linkvol/diagram.hpp"
#include "linkvol/error.hpp"
#include "linkvol/representation.hpp"

namespace linkvol {

// One vector per region. Crossing an edge from its right side to its left
// side applies the edge's generator: V_left = rho(g) V_right.
struct RegionColoring {
  std::vector<Vec2> V;
  Vec2 Wvec{Complex(0), Complex(0)};
  std::size_t seed_region = 0;
};

struct Solution {
  std::vector<Complex> w;  // one per region
  std::vector<Complex> m;  // one per component
};

inline Complex det2(const Vec2& x, const Vec2& y) { return x[0] * y[1] - x[1] * y[0]; }
inline double norm2(const Vec2& x) { return std::sqrt(std::norm(x[0]) + std::norm(x[1])); }

inline double transport_residual(const LinkDiagram& d, const Representation& rho,
                                 const std::vector<Vec2>& V) {
  double r = 0;
  for (const auto& e : d.edges) {
    Vec2 t = rho.generators[e.arc] * V[e.right_region];
    const Vec2& L = V[e.left_region];
    double scale = std::max({1.0, norm2(L), norm2(t)});
    r = std::max(r, std::max(std::abs(t[0] - L[0]), std::abs(t[1] - L[1])) / scale);
  }
  return r;
}

inline RegionColoring propagate(const LinkDiagram& d, const Representation& rho,
                                std::size_t seed_region, const Vec2& seedV) {
  if (seed_region >= d.n_regions)
    throw InputError("seed region r" + std::to_string(seed_region + 1) + " out of range");
  if (seedV[0] == Complex(0) && seedV[1] == Complex(0))
    throw InputError("seed vector must be nonzero");
  std::vector<std::vector<std::size_t>> incident(d.n_regions);
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    incident[d.edges[e].left_region].push_back(e);
    incident[d.edges[e].right_region].push_back(e);
  }
  RegionColoring col;
  col.seed_region = seed_region;
  col.V.assign(d.n_regions, Vec2{});
  std::vector<bool> done(d.n_regions, false);
  col.V[seed_region] = seedV;
  done[seed_region] = true;
  std::deque<std::size_t> queue{seed_region};
  while (!queue.empty()) {
    std::size_t f = queue.front();
    queue.pop_front();
    for (std::size_t e : incident[f]) {
      const Edge& E = d.edges[e];
      const Mat2& g = rho.generators[E.arc];
      if (E.right_region == f && !done[E.left_region]) {
        col.V[E.left_region] = g * col.V[f];
        done[E.left_region] = true;
        queue.push_back(E.left_region);
      } else if (E.left_region == f && !done[E.right_region]) {
        col.V[E.right_region] = g.inverse() * col.V[f];
        done[E.right_region] = true;
        queue.push_back(E.right_region);
      }
    }
  }
  double res = transport_residual(d, rho, col.V);
  if (res > 1e-9)
    throw InputError("representation/transport convention mismatch (cycle residual " +
                     std::to_string(res) + ")");
  return col;
}

struct GenericityIssue {
  enum class Kind { ZeroDeterminant, WEigenvector, VEigenvector };
  Kind kind;
  std::size_t region = 0;     // for ZeroDeterminant and VEigenvector
  std::size_t generator = 0;  // for the eigenvector conditions

  std::string describe() const {
    switch (kind) {
      case Kind::ZeroDeterminant:
        return "(i) det(W, V" + std::to_string(region + 1) + ") = 0";
      case Kind::WEigenvector:
        return "(ii) W is an eigenvector of ρ(g" + std::to_string(generator + 1) + ")";
      case Kind::VEigenvector:
        return "(iii) V" + std::to_string(region + 1) + " is an eigenvector of ρ(g" +
               std::to_string(generator + 1) + ")";
    }
    return {};
  }
};

namespace detail {

inline bool parallel(const Vec2& x, const Vec2& y) {
  return std::abs(det2(x, y)) <= 1e-9 * norm2(x) * norm2(y);
}

inline bool is_eigenvector(const Mat2& g, const Vec2& v) {
  return std::abs(det2(v, g * v)) <= 1e-9 * norm2(v) * norm2(v) * std::max(1.0, g.norm());
}

}  // namespace detail

inline std::vector<GenericityIssue> check_genericity(const RegionColoring& col,
                                                     const Representation& rho) {
  using K = GenericityIssue::Kind;
  std::vector<GenericityIssue> out;
  for (std::size_t j = 0; j < col.V.size(); ++j)
    if (detail::parallel(col.Wvec, col.V[j])) out.push_back({K::ZeroDeterminant, j, 0});
  for (std::size_t g = 0; g < rho.generators.size(); ++g)
    if (detail::is_eigenvector(rho.generators[g], col.Wvec)) out.push_back({K::WEigenvector, 0, g});
  for (std::size_t j = 0; j < col.V.size(); ++j)
    for (std::size_t g = 0; g < rho.generators.size(); ++g)
      if (detail::is_eigenvector(rho.generators[g], col.V[j]))
        out.push_back({K::VEigenvector, j, g});
  return out;
}

// w_j = det(W, V_j), m_i = meridian eigenvalue.
inline Solution assemble_solution(const LinkDiagram& d, const RegionColoring& col,
                                  const Representation& rho) {
  auto issues = check_genericity(col, rho);
  if (!issues.empty())
    throw DegenerateError("degenerate coloring: " + issues.front().describe() +
                          "; retry with other seed vectors");
  Solution s;
  for (const auto& v : col.V) s.w.push_back(det2(col.Wvec, v));
  for (std::size_t i = 0; i < d.n_components(); ++i) s.m.push_back(meridian_eigenvalue(d, rho, i));
  return s;
}

// Seed vectors with entries in {-3..3} + {-3..3}i (each entry nonzero),
// seeded at region 0; deterministic in rng_seed.
inline RegionColoring random_generic_coloring(const LinkDiagram& d, const Representation& rho,
                                              std::uint64_t rng_seed, int max_attempts = 1000) {
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<int> pick(-3, 3);
  auto entry = [&]() {
    while (true) {
      Complex z(pick(rng), pick(rng));
      if (z != Complex(0)) return z;
    }
  };
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Vec2 v{entry(), entry()}, w{entry(), entry()};
    RegionColoring col = propagate(d, rho, 0, v);
    col.Wvec = w;
    if (check_genericity(col, rho).empty()) return col;
  }
  throw DegenerateError("no generic coloring found after " + std::to_string(max_attempts) +
                        " attempts");
}

}  // namespace linkvol
