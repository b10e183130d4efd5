#include <random>

#include <gtest/gtest.h>

#include "linkvol/representation.hpp"
#include "linkvol/reference.hpp"
#include "support.hpp"

using namespace linkvol;
using testing_support::diagram;

namespace {

Mat2 conj_by(const Mat2& P, const Mat2& M) { return P * M * P.inverse(); }

TEST(CompleteRepresentation, FigureEightFromTwoGenerators) {
  const auto g = reference::figure8();
  const LinkDiagram d = diagram(g.pd);
  const Representation rho = complete_representation(d, g.generators);
  ASSERT_EQ(rho.generators.size(), 4u);
  EXPECT_LE(relation_residual(d, rho), 1e-12);
  for (const auto& M : rho.generators) EXPECT_NEAR(std::abs(M.det() - 1.0), 0, 1e-12);
  EXPECT_LE(distance(rho.generators[0], g.generators.at(0)), 0.0);
  // all meridians of a knot are conjugate
  for (const auto& M : rho.generators) EXPECT_NEAR(std::abs(M.trace() - rho.generators[0].trace()), 0, 1e-12);
}

TEST(CompleteRepresentation, Whitehead) {
  const auto g = reference::whitehead();
  const LinkDiagram d = diagram(g.pd);
  const Representation rho = complete_representation(d, g.generators);
  ASSERT_EQ(rho.generators.size(), 5u);
  EXPECT_LE(relation_residual(d, rho), 1e-12);
}

TEST(CompleteRepresentation, Errors) {
  const LinkDiagram d = diagram(reference::figure8_pd);
  const auto g = reference::figure8();
  auto message = [&](const std::map<std::size_t, Mat2>& p) {
    try {
      complete_representation(d, p);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(message({{0, Mat2::identity()}, {1, Mat2::identity()}}), "ρ(μ_i) ≠ ±I violated for component 1");
  EXPECT_NE(message({{0, g.generators.at(0)}}).find("insufficient generators"), std::string::npos);
  auto bad = g.generators;
  bad[2] = Mat2{2.0, 1.0, 1.0, 1.0};
  EXPECT_NE(message(bad).find("relations inconsistent"), std::string::npos);
  auto det2 = g.generators;
  det2[0] = Mat2{2.0, 0.0, 0.0, 1.0};
  EXPECT_NE(message(det2).find("unit determinant"), std::string::npos);
  EXPECT_NE(message({{7, Mat2::identity()}}).find("diagram has 4"), std::string::npos);
  auto nan = g.generators;
  nan[0].b = Complex(NAN, 0);
  EXPECT_NE(message(nan).find("non-finite"), std::string::npos);
}

TEST(EvaluateWord, Basics) {
  Representation rho{{Mat2{2.0, 1.0, 1.0, 1.0}, Mat2{1.0, 0.0, 3.0, 1.0}}};
  EXPECT_EQ(distance(evaluate_word(rho, {}), Mat2::identity()), 0);
  EXPECT_LE(distance(evaluate_word(rho, {{0, 1}, {1, 2}, {1, -2}, {0, -1}}), Mat2::identity()), 1e-14);
  EXPECT_LE(distance(evaluate_word(rho, {{0, 2}}), rho.generators[0] * rho.generators[0]), 0);
  EXPECT_THROW(evaluate_word(rho, {{2, 1}}), InputError);
}

TEST(Eigenvalues, GoldenMeridiansAndLongitudes) {
  for (const auto& g : {reference::figure8(), reference::whitehead()}) {
    const LinkDiagram d = diagram(g.pd);
    const Representation rho = complete_representation(d, g.generators);
    for (std::size_t i = 0; i < d.n_components(); ++i) {
      EXPECT_LE(std::abs(meridian_eigenvalue(d, rho, i) - g.printed_m[i]), 1e-4) << i;
      EXPECT_LE(std::abs(longitude_eigenvalue(d, rho, i) - g.printed_l[i]), 1e-4) << i;
    }
  }
}

TEST(Eigenvalues, FrozenFigureEightLongitude) {
  const auto g = reference::figure8();
  const LinkDiagram d = diagram(g.pd);
  const Representation rho = complete_representation(d, g.generators);
  EXPECT_LE(std::abs(longitude_eigenvalue(d, rho, 0) - Complex(-0.436423, 0.713371)), 1e-6);
  // m^2 l^3 = 1 along the slope 2/3
  Complex m = meridian_eigenvalue(d, rho, 0), l = longitude_eigenvalue(d, rho, 0);
  EXPECT_LE(std::abs(m * m * l * l * l - 1.0), 1e-12);
}

TEST(Eigenvalues, LongitudeCommutesWithMeridian) {
  for (const auto& g : {reference::figure8(), reference::whitehead()}) {
    const LinkDiagram d = diagram(g.pd);
    const Representation rho = complete_representation(d, g.generators);
    for (std::size_t i = 0; i < d.n_components(); ++i) {
      Mat2 M = rho.generators[d.components[i].meridian], L = evaluate_word(rho, longitude_word(d, i));
      EXPECT_LE(distance(M * L, L * M), 1e-10);
    }
  }
}

TEST(Eigenvalues, AbelianRepresentationHasTrivialLongitude) {
  const LinkDiagram d = diagram(reference::figure8_pd);
  const Complex m(0.7, 1.2);
  const Representation rho = complete_representation(d, {{0, Mat2{m, 1.0, 0.0, 1.0 / m}}, {1, Mat2{m, 1.0, 0.0, 1.0 / m}}});
  EXPECT_LE(std::abs(meridian_eigenvalue(d, rho, 0) - m), 1e-14);
  EXPECT_LE(std::abs(longitude_eigenvalue(d, rho, 0) - 1.0), 1e-12);
}

TEST(Eigenvalues, InvariantUnderConjugation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  for (const auto& g : {reference::figure8(), reference::whitehead()}) {
    const LinkDiagram d = diagram(g.pd);
    const Representation rho = complete_representation(d, g.generators);
    for (int t = 0; t < 5; ++t) {
      Mat2 P{Complex(U(rng), U(rng)), Complex(U(rng), U(rng)), Complex(U(rng), U(rng)), Complex(0)};
      P.d = (1.0 + P.b * P.c) / P.a;
      Representation c = rho;
      for (auto& M : c.generators) M = conj_by(P, M);
      for (std::size_t i = 0; i < d.n_components(); ++i) {
        EXPECT_LE(std::abs(meridian_eigenvalue(d, c, i) - meridian_eigenvalue(d, rho, i)), 1e-9);
        EXPECT_LE(std::abs(longitude_eigenvalue(d, c, i) - longitude_eigenvalue(d, rho, i)), 1e-8);
      }
    }
  }
}

TEST(Eigenvalues, PeripheralFillingWordIsPlusMinusIdentity) {
  for (const auto& g : {reference::figure8(), reference::whitehead()}) {
    const LinkDiagram d = diagram(g.pd);
    const Representation rho = complete_representation(d, g.generators);
    for (std::size_t i = 0; i < d.n_components(); ++i) {
      const auto& f = g.filling[i];
      Mat2 M = rho.generators[d.components[i].meridian], L = evaluate_word(rho, longitude_word(d, i));
      EXPECT_TRUE(is_plus_minus_identity(M.power(int(f.r)) * L.power(int(f.s)), 1e-8)) << i;
    }
  }
}

TEST(SolveUv, WorkedExamples) {
  const auto f8 = reference::figure8();
  const auto wh = reference::whitehead();
  const LinkDiagram d8 = diagram(f8.pd), dw = diagram(wh.pd);
  const Representation r8 = complete_representation(d8, f8.generators);
  const Representation rw = complete_representation(dw, wh.generators);
  using P = std::pair<long, long>;
  EXPECT_EQ(solve_uv(meridian_eigenvalue(d8, r8, 0), longitude_eigenvalue(d8, r8, 0), 2, 3), P(-2, 0));
  EXPECT_EQ(solve_uv(meridian_eigenvalue(dw, rw, 0), longitude_eigenvalue(dw, rw, 0), -5, 1), P(0, 2));
  EXPECT_EQ(solve_uv(meridian_eigenvalue(dw, rw, 1), longitude_eigenvalue(dw, rw, 1), -5, 2), P(-1, -1));
  EXPECT_EQ(solve_uv(1.0, 1.0, 1, 1), P(0, 0));
  EXPECT_EQ(solve_uv(-1.0, 1.0, 1, 2), P(-1, 0));
}

TEST(SolveUv, SolvesTheEquationExactly) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> I(-7, 7);
  std::uniform_real_distribution<double> A(-3, 3);
  for (int t = 0; t < 200; ++t) {
    long r = I(rng), s = I(rng), x, y;
    if (detail::ext_gcd(r, s, x, y) != 1) continue;
    // choose l so that r log m + s log l = pi i k for some integer k
    Complex logm(A(rng), A(rng));
    long k = I(rng);
    if (s == 0) continue;
    Complex logl = (Complex(0, std::numbers::pi * double(k)) - double(r) * logm) / double(s);
    Complex m = std::exp(logm), l = std::exp(logl);
    auto [u, v] = solve_uv(m, l, r, s);
    Complex X = double(r) * principal_log(m) + double(s) * principal_log(l) +
                Complex(0, std::numbers::pi * double(r * u + s * v));
    EXPECT_LE(std::abs(X), 1e-9) << r << "/" << s;
  }
}

TEST(SolveUv, Errors) {
  EXPECT_THROW(solve_uv(1.0, 1.0, 0, 0), InputError);
  EXPECT_THROW(solve_uv(1.0, 1.0, 2, 4), InputError);
  try {
    solve_uv(Complex(1.1, 0.2), 1.0, 1, 1);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "not a valid filling pair: m^r l^s ≠ ±1");
  }
}

TEST(ValidateFilling, FillsMissingPairsAndChecksGiven) {
  auto f = ComponentFilling::slope(2, 3);
  f.l = Complex(-0.436423, 0.713371);
  const Complex m = reference::figure8().generators.at(0).a;
  // printed l has 6 digits
  EXPECT_THROW(validate_filling({m}, FillingSpec{{f}}), InputError);
  FillingSpec ok = validate_filling({m}, FillingSpec{{f}}, 1e-5);
  EXPECT_EQ(ok.components[0].uv, (std::pair<long, long>{-2, 0}));
  f.uv = std::pair<long, long>{1, 0};
  EXPECT_THROW(validate_filling({m}, FillingSpec{{f}}, 1e-5), InputError);
}

TEST(ValidateFilling, Errors) {
  EXPECT_THROW(validate_filling({1.0, 1.0}, FillingSpec{{ComponentFilling::unfilled()}}), InputError);
  EXPECT_THROW(validate_filling({1.0}, FillingSpec{{ComponentFilling::slope(2, 4)}}), InputError);
  try {
    validate_filling({1.0}, FillingSpec{{ComponentFilling::slope(1, 2)}});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("needs the longitude eigenvalue"), std::string::npos);
  }
  EXPECT_EQ(validate_filling({1.0, 2.0}, FillingSpec{}).components.size(), 2u);
}

TEST(BoundaryParabolic, Detection) {
  const LinkDiagram d = diagram(reference::figure8_pd);
  EXPECT_TRUE(is_boundary_parabolic(d, complete_representation(d, reference::figure8_parabolic()), 0));
  EXPECT_FALSE(is_boundary_parabolic(d, complete_representation(d, reference::figure8().generators), 0));
}

TEST(BoundaryParabolic, ParabolicFigureEightLongitude) {
  const LinkDiagram d = diagram(reference::figure8_pd);
  const Representation rho = complete_representation(d, reference::figure8_parabolic());
  EXPECT_LE(std::abs(meridian_eigenvalue(d, rho, 0) - 1.0), 1e-14);
  // the cusp shape of the figure-eight is 2 sqrt(3) i
  Mat2 L = evaluate_word(rho, longitude_word(d, 0));
  const Mat2& M = rho.generators[d.components[0].meridian];
  EXPECT_NEAR(std::abs(L.b / M.b), 2 * std::sqrt(3.0), 1e-12);
}

}  // namespace
