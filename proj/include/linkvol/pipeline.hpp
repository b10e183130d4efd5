#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "linkvol/coloring.hpp"
#include "linkvol/diagram.hpp"
#include "linkvol/engine.hpp"
#include "linkvol/error.hpp"
#include "linkvol/potential.hpp"
#include "linkvol/representation.hpp"

namespace linkvol {

struct ColoringSeed {
  Vec2 seedV, W;
  std::size_t seed_region = 0;
};

struct FromRepResult {
  Representation rho;
  RegionColoring coloring;
  Solution solution;
  FillingSpec filling;  // with l and (u, v) filled in
  VolumeResult volume;
  GluingReport gluing;
};

// Representation -> coloring -> (w, m) -> W0. Longitude eigenvalues come from
// the representation; (u, v) are solved unless already supplied.
inline FromRepResult from_representation(const LinkDiagram& d,
                                         const std::map<std::size_t, Mat2>& partial,
                                         const std::optional<ColoringSeed>& pinned,
                                         FillingSpec filling, std::uint64_t rng_seed = 0) {
  FromRepResult r;
  r.rho = complete_representation(d, partial);
  if (pinned) {
    r.coloring = propagate(d, r.rho, pinned->seed_region, pinned->seedV);
    r.coloring.Wvec = pinned->W;
  } else {
    r.coloring = random_generic_coloring(d, r.rho, rng_seed);
  }
  r.solution = assemble_solution(d, r.coloring, r.rho);
  if (filling.components.empty())
    filling.components.assign(d.n_components(), ComponentFilling::unfilled());
  if (filling.components.size() != d.n_components())
    throw InputError("filling lists " + std::to_string(filling.components.size()) +
                     " slopes but the link has " + std::to_string(d.n_components()) + " components");
  for (std::size_t i = 0; i < d.n_components(); ++i) {
    auto& c = filling.components[i];
    if (c.infinite) {
      if (!is_boundary_parabolic(d, r.rho, i))
        throw InputError("component " + std::to_string(i + 1) +
                         " is unfilled but the representation is not boundary-parabolic there; give a slope");
      continue;
    }
    c.l = longitude_eigenvalue(d, r.rho, i);
  }
  r.filling = validate_filling(r.solution.m, filling);
  r.volume = W0(d, r.solution, r.filling);
  r.gluing = gluing_check(d, r.solution);
  return r;
}

}  // namespace linkvol
