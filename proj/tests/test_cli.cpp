#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "linkvol/cli.hpp"
#include "linkvol/io.hpp"

using namespace linkvol;

namespace {

struct Invocation {
  int code;
  std::string out, err;
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(LINKVOL_DATA_DIR) + "/" + name; }

std::string temp(const std::string& name) { return ::testing::TempDir() + "linkvol_" + name; }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

json load(const std::string& path) { return parse_json(read_file(path), path); }

TEST(Cli, AnalyzeFigureEight) {
  const Invocation r = run({"analyze", data("figure8.pd")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "n=6 regions, 4 crossings, 1 component")) << r.out;
  EXPECT_TRUE(contains(r.out, "component 1: meridian g1, writhe 0, longitude g3 g2^-1 g1 g4^-1")) << r.out;
  EXPECT_TRUE(contains(r.out, "g3 = g1 g2 g1^-1")) << r.out;
}

TEST(Cli, AnalyzeJson) {
  const std::string path = temp("analyze.json");
  ASSERT_EQ(run({"analyze", data("whitehead.pd"), "--json", path}).code, 0);
  const json doc = load(path);
  EXPECT_EQ(doc["n_regions"], 7);
  EXPECT_EQ(doc["n_components"], 2);
  EXPECT_EQ(doc["relations"].size(), 5u);
  EXPECT_EQ(doc["components"][1]["writhe"], -1);
  EXPECT_EQ(doc["components"][0]["longitude"].size(), 2u);
}

TEST(Cli, FromRepFigureEight) {
  const std::string path = temp("f8.json");
  const Invocation r = run({"from-rep", data("figure8.pd"), data("figure8_rep.json"), data("figure8_coloring.json"),
                     "--filling", "2/3", "--json", path});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "W0 = 6.531247530+1.737123881i")) << r.out;
  EXPECT_TRUE(contains(r.out, "(u,v) = (-2,0)")) << r.out;
  EXPECT_TRUE(contains(r.out, "w2 = -1.000000+2.000000i")) << r.out;
  EXPECT_TRUE(contains(r.out, "PASS"));
  const json doc = load(path);
  EXPECT_NEAR(doc["vol"].get<double>(), 1.737123881, 1e-9);
  EXPECT_NEAR(doc["cs"].get<double>(), 3.338356871, 1e-9);
  EXPECT_TRUE(doc["passed"].get<bool>());
}

TEST(Cli, FromRepWhitehead) {
  const Invocation r = run({"from-rep", data("whitehead.pd"), data("whitehead_rep.json"), data("whitehead_coloring.json"),
                     "--filling", "-5,-5/2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "W0 = 1.185202630+0.942707363i")) << r.out;
  EXPECT_TRUE(contains(r.out, "(u,v) = (0,2)")) << r.out;
  EXPECT_TRUE(contains(r.out, "(u,v) = (-1,-1)")) << r.out;
}

TEST(Cli, FromRepSeedFlags) {
  // flags alone give the same coloring as the file
  const Invocation a = run({"from-rep", data("figure8.pd"), data("figure8_rep.json"), "--filling", "2/3", "--seedV", "1,i",
                     "--W", "2,1", "--seed-region", "2"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_TRUE(contains(a.out, "W0 = 6.531247530+1.737123881i")) << a.out;
  // only one of the two vectors is an input error
  EXPECT_EQ(run({"from-rep", data("figure8.pd"), data("figure8_rep.json"), "--filling", "2/3", "--seedV", "1,i"}).code, 2);
}

TEST(Cli, FromRepRandomColoringAgreesModPi2) {
  const Invocation r = run({"from-rep", data("figure8.pd"), data("figure8_rep.json"), "--filling", "2/3", "--rng-seed", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "vol = 1.737123881")) << r.out;
  EXPECT_TRUE(contains(r.out, "cs = 3.338356871")) << r.out;
}

TEST(Cli, FromRepParabolic) {
  const Invocation r = run({"from-rep", data("figure8.pd"), data("figure8_parabolic_rep.json"), "--filling", "inf"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "vol = 2.029883213")) << r.out;
  EXPECT_TRUE(contains(r.out, "cs = 0.000000000")) << r.out;
}

TEST(Cli, FromRepNeedsASlopeWhenNotParabolic) {
  const Invocation r = run({"from-rep", data("figure8.pd"), data("figure8_rep.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "not boundary-parabolic")) << r.err;
}

TEST(Cli, FromRepWrongSlopeFailsAsInput) {
  const Invocation r = run({"from-rep", data("figure8.pd"), data("figure8_rep.json"), "--filling", "1/3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "does not satisfy the filling")) << r.err;
}

TEST(Cli, SolveThenVerifyRoundTrip) {
  const std::string path = temp("solve.json");
  const Invocation s = run({"solve", data("figure8.pd"), "--m", "1", "--json", path});
  EXPECT_EQ(s.code, 0) << s.err;
  EXPECT_TRUE(contains(s.out, "#1  vol 2.029883213")) << s.out;
  const json doc = load(path);
  EXPECT_GE(doc["solutions"].size(), 2u);
  const Invocation v = run({"verify", data("figure8.pd"), path});
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_FALSE(contains(v.out, "FAIL"));
}

TEST(Cli, SolveIsDeterministic) {
  const Invocation a = run({"solve", data("figure8.pd"), "--m", "1", "--seeds", "12", "--rng-seed", "4"});
  const Invocation b = run({"solve", data("figure8.pd"), "--m", "1", "--seeds", "12", "--rng-seed", "4"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SolveWithFilling) {
  const Invocation r = run({"solve", data("figure8.pd"), "--m", "-1.3066423495115913+0.04987583023179273i", "--filling",
                     "2/3", "--l", "-0.43642348242988493+0.713370735854032i"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "vol 1.737123881")) << r.out;
}

TEST(Cli, SolveAbsurdMeridianFindsNothing) {
  const Invocation r = run({"solve", data("figure8.pd"), "--m", "1e200", "--seeds", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "0 distinct solutions")) << r.out;
}

TEST(Cli, VerifyPrintedSolution) {
  // five printed digits pass the critical equations at 1e-4 but not the filling at 1e-6
  const Invocation strict = run({"verify", data("figure8.pd"), data("figure8_printed_solution.json"), data("figure8_filling.json")});
  EXPECT_EQ(strict.code, 1);
  EXPECT_TRUE(contains(strict.out, "FAIL"));
  const Invocation loose = run({"verify", data("figure8.pd"), data("figure8_printed_solution.json"), data("figure8_filling.json"),
                         "--tol", "1e-3"});
  EXPECT_EQ(loose.code, 0) << loose.out;
  EXPECT_TRUE(contains(loose.out, "vol = 1.7371")) << loose.out;
}

TEST(Cli, VerifyWhiteheadSolution) {
  const Invocation r = run({"verify", data("whitehead.pd"), data("whitehead_solution.json"), data("whitehead_filling.json")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(contains(r.out, "W0 = 1.185202630+0.942707363i")) << r.out;
}

TEST(Cli, VerifyRejectsAPerturbedPoint) {
  json doc = load(data("whitehead_solution.json"));
  doc["w"][0][0] = doc["w"][0][0].get<double>() + 0.01;
  const std::string path = temp("perturbed.json");
  write_json(path, doc);
  const Invocation r = run({"verify", data("whitehead.pd"), path, data("whitehead_filling.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "FAIL"));
}

TEST(Cli, VerifyReportsDegeneratePoints) {
  const std::string path = temp("ones.json");
  write_json(path, json{{"w", json::array({{1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 0}})}, {"m", json::array({{1, 0}})}});
  const Invocation r = run({"verify", data("figure8.pd"), path});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "FAIL"));
}

TEST(Cli, VerifyShapeMismatchIsAnInputError) {
  const Invocation r = run({"verify", data("whitehead.pd"), data("figure8_printed_solution.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "w-values")) << r.err;
}

TEST(Cli, InputErrors) {
  const std::string bad = temp("bad.pd");
  std::ofstream(bad) << "X[1,4,2,5]\nX[3,6,4,1] X[5,2,6;3]";
  Invocation r = run({"analyze", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "line 2, column 19")) << r.err;
  const std::string missing = temp("missing.pd");
  std::ofstream(missing) << "X[1,4,2,5] X[3,6,4,1] X[5,7,6,3]";
  r = run({"analyze", missing});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "arc label count")) << r.err;
  EXPECT_EQ(run({"analyze", temp("does_not_exist.pd")}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"solve", data("figure8.pd"), "--m", "banana"}).code, 2);
  EXPECT_EQ(run({"solve", data("figure8.pd"), "--filling", "2/0"}).code, 2);
  EXPECT_EQ(run({"solve", data("figure8.pd"), "--filling", "2/4", "--l", "1"}).code, 2);
  EXPECT_EQ(run({"from-rep", data("figure8.pd"), data("figure8.pd")}).code, 2);
}

TEST(Cli, HelpIsNotAnError) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, Selftest) {
  const Invocation r = run({"selftest"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "selftest PASS")) << r.out;
  for (const auto& c : cli::selftest_checks()) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Io, ParseComplex) {
  EXPECT_EQ(parse_complex("1"), Complex(1));
  EXPECT_EQ(parse_complex("i"), Complex(0, 1));
  EXPECT_EQ(parse_complex("-i"), Complex(0, -1));
  EXPECT_EQ(parse_complex("-1.5+2i"), Complex(-1.5, 2));
  EXPECT_EQ(parse_complex(" 2.5e-1-3e2i "), Complex(0.25, -300));
  EXPECT_EQ(parse_complex("4i"), Complex(0, 4));
  EXPECT_THROW(parse_complex(""), InputError);
  EXPECT_THROW(parse_complex("1+"), InputError);
  EXPECT_THROW(parse_complex("x"), InputError);
  EXPECT_EQ(parse_complex_list("1,i"), (std::vector<Complex>{1.0, Complex(0, 1)}));
}

TEST(Io, ParseFillingFlag) {
  FillingSpec f = parse_filling_flag("-5,-5/2");
  ASSERT_EQ(f.components.size(), 2u);
  EXPECT_EQ(f.components[0].r, -5);
  EXPECT_EQ(f.components[0].s, 1);
  EXPECT_EQ(f.components[1].r, -5);
  EXPECT_EQ(f.components[1].s, 2);
  f = parse_filling_flag("inf,2/-3");
  EXPECT_TRUE(f.components[0].infinite);
  EXPECT_EQ(f.components[1].r, -2);
  EXPECT_EQ(f.components[1].s, 3);
  EXPECT_THROW(parse_filling_flag("1/0"), InputError);
  EXPECT_THROW(parse_filling_flag("a/b"), InputError);
}

TEST(Io, SolutionJsonRoundTrip) {
  const Solution s{{Complex(1, 2), Complex(-0.5, 1e-17)}, {Complex(3, -4)}};
  const auto back = parse_solutions(to_json(s).dump());
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].w, s.w);
  EXPECT_EQ(back[0].m, s.m);
}

}  // namespace
