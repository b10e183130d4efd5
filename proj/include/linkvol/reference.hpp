#pragma once

// Golden inputs and printed values for the two worked examples, plus a few
// standard diagrams. Region and generator indices here are 0-based.

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "linkvol/coloring.hpp"
#include "linkvol/representation.hpp"

namespace linkvol::reference {

inline constexpr const char* trefoil_pd = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
inline constexpr const char* figure8_pd = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
// figure-eight with a positive Reidemeister-I kink on edge 8
inline constexpr const char* figure8_kink_pd = "X[4,2,5,1] X[10,6,1,5] X[6,3,7,4] X[2,7,3,8] X[8,10,9,9]";
// L5a1 with the circular component reversed and labels made consecutive per component
inline constexpr const char* whitehead_pd = "X[6,1,7,4] X[10,7,5,8] X[1,6,2,5] X[3,9,4,10] X[8,2,9,3]";

struct GoldenExample {
  const char* pd;
  std::map<std::size_t, Mat2> generators;  // generating subset, by our generator index
  std::size_t seed_region;                 // our region carrying seedV
  Vec2 seedV, W;
  std::vector<ComponentFilling> filling;   // slopes with the printed (u, v)
  std::vector<Complex> printed_w;          // printed table, in its own order
  std::vector<std::size_t> printed_index;    // our region j is printed w_{printed_index[j]} (1-based)
  std::vector<Complex> printed_m, printed_l;
  Complex printed_W0;
};

// Printed m is refined so that the filling equation holds to double precision.
inline GoldenExample figure8() {
  const Complex m(-1.30664234951159126703, 0.04987583023179272905);
  const Complex y(0.3200084859207434876, 0.8099538863469927588);
  GoldenExample g;
  g.pd = figure8_pd;
  // printed g1 is our g1, printed g4 is our g2
  g.generators = {{0, Mat2{m, 1.0, 0.0, 1.0 / m}}, {1, Mat2{m, 0.0, y, 1.0 / m}}};
  g.seed_region = 1;  // printed V6
  g.seedV = {Complex(1), Complex(0, 1)};
  g.W = {Complex(2), Complex(1)};
  auto f = ComponentFilling::slope(2, 3);
  f.uv = std::pair<long, long>{-2, 0};
  g.filling = {f};
  g.printed_w = {{-0.04931, 1.48991}, {0.12818, -1.20327}, {0.00054, -2.62681},
                 {1.63204, 4.20107},  {0.66446, -1.58411}, {-1, 2}};
  g.printed_index = {5, 6, 1, 2, 3, 4};
  g.printed_m = {{-1.30664, 0.04987}};
  g.printed_l = {{-0.43642, 0.71337}};
  g.printed_W0 = {-3.33836, 1.73712};
  return g;
}

inline GoldenExample whitehead() {
  const Complex m1(0.6043082979380525, 1.3591677854323396);
  const Complex m2(1.4324890480784709, 1.0804697726523478);
  const Complex y(1.3498703134332788, -2.7972092031576636);
  GoldenExample g;
  g.pd = whitehead_pd;
  // printed g1 is our g2 (component 1), printed g2 is our g5 (component 2)
  g.generators = {{1, Mat2{m1, 1.0, 0.0, 1.0 / m1}}, {4, Mat2{m2, 0.0, y, 1.0 / m2}}};
  g.seed_region = 3;  // printed V1
  g.seedV = {Complex(1), Complex(0, 1)};
  g.W = {Complex(2), Complex(1)};
  auto f1 = ComponentFilling::slope(-5, 1);
  f1.uv = std::pair<long, long>{0, 2};
  auto f2 = ComponentFilling::slope(-5, 2);
  f2.uv = std::pair<long, long>{-1, -1};
  g.filling = {f1, f2};
  g.printed_w = {{-1, 2},           {1.93847, -5.78499}, {-3.05190, -3.60342}, {0.62430, -1.81291},
                 {-0.59085, -0.74757}, {-1.23298, 2.38517}, {-4.06837, -1.29382}};
  g.printed_index = {6, 5, 7, 1, 4, 3, 2};
  g.printed_m = {{0.60430, 1.35917}, {1.43249, 1.08047}};
  g.printed_l = {{6.31525, -3.62462}, {-4.30814, -0.19296}};
  g.printed_W0 = {1.18520, 0.94270};
  return g;
}

// Complete hyperbolic structure of the figure-eight complement:
// m = 1 and y a root of y^2 - y + 1 = 0, sign chosen for positive volume.
inline std::map<std::size_t, Mat2> figure8_parabolic() {
  const Complex y(0.5, std::sqrt(3.0) / 2);
  return {{0, Mat2{1.0, 1.0, 0.0, 1.0}}, {1, Mat2{1.0, 0.0, y, 1.0}}};
}

// 2 Cl2(pi/3): two regular ideal tetrahedra
inline constexpr double figure8_volume = 2.029883212819307;
// one regular ideal octahedron
inline constexpr double whitehead_volume = 3.663862376708876;

}  // namespace linkvol::reference
