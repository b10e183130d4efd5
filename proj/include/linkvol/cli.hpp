#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linkvol/coloring.hpp"
#include "linkvol/diagram.hpp"
#include "linkvol/engine.hpp"
#include "linkvol/error.hpp"
#include "linkvol/io.hpp"
#include "linkvol/numerics.hpp"
#include "linkvol/pipeline.hpp"
#include "linkvol/potential.hpp"
#include "linkvol/reference.hpp"
#include "linkvol/representation.hpp"

namespace linkvol::cli {

enum ExitCode : int { Ok = 0, VerifyFailed = 1, BadInput = 2 };

struct Options {
  std::string diagram, rep, coloring, solution, filling_file, json_path;
  std::string filling, l, m, seedV, W;
  std::size_t seed_region = 0;  // 1-based, 0 = not given
  double tol = 0;               // 0 = command default
  int seeds = 64;
  std::uint64_t rng_seed = 0;
};

inline LinkDiagram load_diagram(const std::string& path) { return build_diagram(parse_pd(read_file(path))); }

inline std::string word_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& x : w) {
    if (!s.empty()) s += ' ';
    s += "g" + std::to_string(x.generator + 1);
    if (x.exponent != 1) s += "^" + std::to_string(x.exponent);
  }
  return s;
}

inline json word_json(const Word& w) {
  json a = json::array();
  for (const auto& x : w) a.push_back(json::array({x.generator + 1, x.exponent}));
  return a;
}

inline std::string slope_string(const ComponentFilling& c) {
  if (c.infinite) return "inf";
  return c.s == 1 ? std::to_string(c.r) : std::to_string(c.r) + "/" + std::to_string(c.s);
}

inline void print_w(std::ostream& out, const std::vector<Complex>& w) {
  for (std::size_t j = 0; j < w.size(); ++j) out << "  w" << j + 1 << " = " << format_complex(w[j]) << '\n';
}

inline void print_gluing(std::ostream& out, const GluingReport& g) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "  gluing: regional %.2e  over %.2e  under %.2e  octahedron %.2e\n",
                g.regional_dev, g.over_dev, g.under_dev, g.octahedron_dev);
  out << buf;
}

inline void print_volume(std::ostream& out, const VolumeResult& v) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "  W0 = %s\n  vol = %.9f\n  cs = %.9f (mod pi^2)\n  residual = %.2e\n",
                format_complex(v.W0, 9).c_str(), v.vol, v.cs, v.residual_max);
  out << buf;
}

// ---- analyze ----

inline int cmd_analyze(const Options& o, std::ostream& out) {
  const LinkDiagram d = load_diagram(o.diagram);
  const Presentation p = wirtinger(d);
  out << "n=" << d.n_regions << " regions, " << d.n_crossings() << " crossings, " << d.n_components()
      << (d.n_components() == 1 ? " component" : " components") << '\n';
  json doc{{"n_regions", d.n_regions}, {"n_crossings", d.n_crossings()}, {"n_components", d.n_components()}};

  out << "crossings (regions j k l m, components alpha beta):\n";
  json cj = json::array();
  for (std::size_t c = 0; c < d.n_crossings(); ++c) {
    const Crossing& x = d.crossings[c];
    out << "  c" << c + 1 << " X[" << x.pd[0] << ',' << x.pd[1] << ',' << x.pd[2] << ',' << x.pd[3] << "] "
        << (x.sign > 0 ? '+' : '-') << "  r" << x.j + 1 << " r" << x.k + 1 << " r" << x.l + 1 << " r" << x.m + 1
        << "  alpha=" << x.alpha + 1 << " beta=" << x.beta + 1 << "  over g" << x.over_arc + 1 << '\n';
    cj.push_back({{"pd", x.pd},
                  {"sign", x.sign},
                  {"regions", {x.j + 1, x.k + 1, x.l + 1, x.m + 1}},
                  {"alpha", x.alpha + 1},
                  {"beta", x.beta + 1},
                  {"over_generator", x.over_arc + 1}});
  }
  doc["crossings"] = cj;

  out << "generators (over-arcs):\n";
  json gj = json::array();
  for (std::size_t a = 0; a < d.arcs.size(); ++a) {
    std::vector<int> labels;
    for (auto e : d.arcs[a].edges) labels.push_back(d.edges[e].label);
    out << "  g" << a + 1 << ": component " << d.arcs[a].component + 1 << ", edges";
    for (int l : labels) out << ' ' << l;
    out << '\n';
    gj.push_back({{"component", d.arcs[a].component + 1}, {"edges", labels}});
  }
  doc["generators"] = gj;

  out << "relations:\n";
  json rj = json::array();
  for (const auto& r : p.relations) {
    out << "  g" << r.out + 1 << " = g" << r.over + 1 << (r.sign > 0 ? "" : "^-1") << " g" << r.in + 1 << " g"
        << r.over + 1 << (r.sign > 0 ? "^-1" : "") << '\n';
    rj.push_back({{"out", r.out + 1}, {"over", r.over + 1}, {"in", r.in + 1}, {"sign", r.sign}});
  }
  doc["relations"] = rj;

  out << "components:\n";
  json kj = json::array();
  for (std::size_t i = 0; i < d.n_components(); ++i) {
    const Word lw = longitude_word(d, i);
    out << "  component " << i + 1 << ": meridian g" << d.components[i].meridian + 1 << ", writhe " << writhe(d, i)
        << ", longitude " << word_string(lw) << '\n';
    kj.push_back({{"meridian", d.components[i].meridian + 1}, {"writhe", writhe(d, i)}, {"longitude", word_json(lw)}});
  }
  doc["components"] = kj;
  if (!o.json_path.empty()) write_json(o.json_path, doc);
  return Ok;
}

// ---- from-rep ----

inline std::optional<ColoringSeed> coloring_from_options(const Options& o) {
  ColoringChoice c;
  if (!o.coloring.empty()) c = parse_coloring(read_file(o.coloring));
  if (!o.seedV.empty()) {
    auto v = parse_complex_list(o.seedV);
    if (v.size() != 2) throw InputError("--seedV needs two complex entries");
    c.seedV = Vec2{v[0], v[1]};
  }
  if (!o.W.empty()) {
    auto v = parse_complex_list(o.W);
    if (v.size() != 2) throw InputError("--W needs two complex entries");
    c.W = Vec2{v[0], v[1]};
  }
  if (o.seed_region > 0) c.seed_region = o.seed_region - 1;
  if (!c.seedV && !c.W) return std::nullopt;
  if (!c.seedV || !c.W) throw InputError("give both seedV and W, or neither for a random coloring");
  return ColoringSeed{*c.seedV, *c.W, c.seed_region.value_or(0)};
}

inline int cmd_from_rep(const Options& o, std::ostream& out) {
  const LinkDiagram d = load_diagram(o.diagram);
  const auto partial = parse_representation(read_file(o.rep));
  FillingSpec f;
  if (!o.filling.empty()) f = parse_filling_flag(o.filling);
  const double tol = o.tol > 0 ? o.tol : 1e-6;
  const auto pinned = coloring_from_options(o);
  const FromRepResult r = from_representation(d, partial, pinned, f, o.rng_seed);

  out << "coloring: seed region r" << r.coloring.seed_region + 1 << ", seedV = ("
      << format_complex(r.coloring.V[r.coloring.seed_region][0]) << ", "
      << format_complex(r.coloring.V[r.coloring.seed_region][1]) << "), W = (" << format_complex(r.coloring.Wvec[0])
      << ", " << format_complex(r.coloring.Wvec[1]) << ")\n";
  out << "solution:\n";
  print_w(out, r.solution.w);
  for (std::size_t i = 0; i < r.solution.m.size(); ++i) {
    const auto& c = r.filling.components[i];
    out << "  m" << i + 1 << " = " << format_complex(r.solution.m[i]) << "  slope " << slope_string(c);
    if (c.l) out << "  l" << i + 1 << " = " << format_complex(*c.l);
    if (c.uv) out << "  (u,v) = (" << c.uv->first << "," << c.uv->second << ")";
    out << '\n';
  }
  print_volume(out, r.volume);
  print_gluing(out, r.gluing);
  const bool ok = r.volume.nondegenerate && r.volume.residual_max <= tol && r.gluing.passed(tol);
  out << (ok ? "PASS" : "FAIL") << '\n';

  if (!o.json_path.empty()) {
    json doc = solution_report(r.solution, r.volume, r.gluing, tol);
    doc["filling"] = to_json(r.filling);
    doc["coloring"] = {{"seedV", to_json(std::vector<Complex>{r.coloring.V[r.coloring.seed_region][0],
                                                              r.coloring.V[r.coloring.seed_region][1]})},
                       {"W", to_json(std::vector<Complex>{r.coloring.Wvec[0], r.coloring.Wvec[1]})},
                       {"seed_region", r.coloring.seed_region + 1}};
    doc["passed"] = ok;
    write_json(o.json_path, doc);
  }
  return ok ? Ok : VerifyFailed;
}

// ---- solve ----

inline FillingSpec filling_from_options(const Options& o, std::size_t h) {
  FillingSpec f;
  if (!o.filling_file.empty()) f = parse_filling(read_file(o.filling_file));
  if (!o.filling.empty()) f = parse_filling_flag(o.filling);
  if (!o.l.empty()) attach_longitudes(f, parse_complex_list(o.l));
  if (f.components.empty()) f.components.assign(h, ComponentFilling::unfilled());
  if (f.components.size() != h)
    throw InputError("filling lists " + std::to_string(f.components.size()) + " slopes but the link has " +
                     std::to_string(h) + " components");
  return f;
}

inline int cmd_solve(const Options& o, std::ostream& out) {
  const LinkDiagram d = load_diagram(o.diagram);
  const std::size_t h = d.n_components();
  std::vector<Complex> m(h, Complex(1));
  if (!o.m.empty()) {
    m = parse_complex_list(o.m);
    if (m.size() == 1 && h > 1) m.assign(h, m[0]);
    if (m.size() != h)
      throw InputError("--m gives " + std::to_string(m.size()) + " values for " + std::to_string(h) + " components");
  }
  FillingSpec f = validate_filling(m, filling_from_options(o, h));
  for (std::size_t i = 0; i < h; ++i)
    if (!f.components[i].infinite && f.components[i].s == 0)
      throw InputError("meridional filling (s = 0) is not supported");
  SolveConfig cfg;
  cfg.seeds = o.seeds;
  cfg.rng_seed = o.rng_seed;
  if (o.tol > 0) cfg.residual_tol = o.tol;
  if (cfg.seeds <= 0) throw InputError("--seeds must be positive");

  const auto sols = multi_start(d, m, cfg);
  out << sols.size() << " distinct solution" << (sols.size() == 1 ? "" : "s") << " from " << cfg.seeds
      << " seeds\n";
  json list = json::array();
  for (std::size_t k = 0; k < sols.size(); ++k) {
    const auto& s = sols[k];
    const VolumeResult v = W0(d, s.solution, f);
    const GluingReport g = gluing_check(d, s.solution);
    char buf[240];
    std::snprintf(buf, sizeof buf, "#%zu  vol %.9f  cs %.9f  W0 %s  residual %.1e  seed %d\n", k + 1, v.vol, v.cs,
                  format_complex(v.W0, 6).c_str(), v.residual_max, s.seed_index);
    out << buf;
    list.push_back(solution_report(s.solution, v, g, 1e-6));
  }
  if (!o.json_path.empty()) write_json(o.json_path, json{{"solutions", list}, {"filling", to_json(f)}});
  return Ok;
}

// ---- verify ----

inline int cmd_verify(const Options& o, std::ostream& out) {
  const LinkDiagram d = load_diagram(o.diagram);
  const auto sols = parse_solutions(read_file(o.solution));
  const double tol = o.tol > 0 ? o.tol : 1e-6;
  bool all_ok = true;
  json list = json::array();
  for (std::size_t k = 0; k < sols.size(); ++k) {
    const Solution& s = sols[k];
    check_solution_shape(d, s);
    if (sols.size() > 1) out << "solution #" << k + 1 << ":\n";
    json rep = to_json(s);
    const auto nd = is_nondegenerate(d, s);
    if (!nd.ok) {
      out << "  degenerate point; violated non-degeneracy conditions:\n";
      json fails = json::array();
      for (const auto& x : nd.failures) {
        out << "    crossing c" << x.crossing + 1 << ", ratio " << x.ratio + 1 << " = " << format_complex(x.value)
            << '\n';
        fails.push_back({{"crossing", x.crossing + 1}, {"ratio", x.ratio + 1}, {"value", to_json(x.value)}});
      }
      out << "  FAIL\n";
      rep["nondegenerate"] = false;
      rep["failures"] = fails;
      rep["passed"] = false;
      list.push_back(rep);
      all_ok = false;
      continue;
    }
    const auto cr = critical_residuals(d, s);
    const auto g = gluing_check(d, s);
    out << "  region  |exp(w dW/dw) - 1|  |prod tau - 1|\n";
    json rows = json::array();
    for (std::size_t j = 0; j < d.n_regions; ++j) {
      char buf[120];
      std::snprintf(buf, sizeof buf, "  r%-5zu  %.3e          %.3e\n", j + 1, std::abs(cr.exp_form[j]),
                    std::abs(cr.tau_form[j]));
      out << buf;
      rows.push_back({std::abs(cr.exp_form[j]), std::abs(cr.tau_form[j])});
    }
    print_gluing(out, g);
    bool ok = cr.max_abs <= tol && g.passed(tol);
    rep["nondegenerate"] = true;
    rep["residuals"] = rows;
    rep["residual_max"] = cr.max_abs;
    rep["gluing_report"] = to_json(g, tol);
    const FillingSpec given = filling_from_options(o, d.n_components());
    try {
      const FillingSpec f = validate_filling(s.m, given, std::max(tol, 1e-6));
      const VolumeResult v = W0(d, s, f);
      print_volume(out, v);
      rep["W0"] = to_json(v.W0);
      rep["vol"] = v.vol;
      rep["cs"] = v.cs;
      rep["filling"] = to_json(f);
    } catch (const InputError& e) {
      // a well-formed filling that this point does not satisfy
      out << "  filling: " << e.what() << '\n';
      rep["filling_error"] = e.what();
      ok = false;
    }
    out << "  " << (ok ? "PASS" : "FAIL") << '\n';
    rep["passed"] = ok;
    list.push_back(rep);
    all_ok = all_ok && ok;
  }
  if (!o.json_path.empty()) write_json(o.json_path, json{{"solutions", list}, {"passed", all_ok}, {"tol", tol}});
  return all_ok ? Ok : VerifyFailed;
}

// ---- selftest ----

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline std::vector<Check> selftest_checks() {
  std::vector<Check> out;
  auto add = [&](std::string name, bool ok, std::string detail) { out.push_back({std::move(name), ok, std::move(detail)}); };
  auto sci = [](double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2e", x);
    return std::string(b);
  };
  const double p2 = pi_squared<double>;

  double e1 = std::abs(dilog(Complex(1)) - p2 / 6) + std::abs(dilog(Complex(-1)) + p2 / 12);
  add("dilog special values", e1 <= 1e-13, "error " + sci(e1));

  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> U(-3, 3);
  double inv = 0, refl = 0, deriv = 0;
  for (int k = 0; k < 300; ++k) {
    Complex z(U(rng), U(rng));
    if (std::abs(z.imag()) < 1e-3) continue;  // keep off the real axis cuts
    Complex a = dilog(z) + dilog(1.0 / z) + p2 / 6 + 0.5 * std::pow(principal_log(-z), 2);
    Complex b = dilog(z) + dilog(1.0 - z) - p2 / 6 + principal_log(z) * principal_log(1.0 - z);
    const double hh = 1e-5;
    Complex fd = (dilog(z + hh) - dilog(z - hh)) / (2 * hh);
    Complex an = -principal_log(1.0 - z) / z;
    inv = std::max(inv, std::abs(a));
    refl = std::max(refl, std::abs(b));
    deriv = std::max(deriv, std::abs(fd - an));
  }
  add("dilog inversion identity", inv <= 1e-10, "max error " + sci(inv));
  add("dilog reflection identity", refl <= 1e-10, "max error " + sci(refl));
  add("dilog derivative", deriv <= 1e-6, "max error " + sci(deriv));

  // analytic log-derivatives against central differences at a random point
  {
    const LinkDiagram d = build_diagram(parse_pd(reference::figure8_pd));
    Solution s;
    for (std::size_t j = 0; j < d.n_regions; ++j) s.w.push_back(std::polar(std::exp(U(rng) / 3), U(rng)));
    s.m = {std::polar(1.2, 0.3)};
    double err = 0;
    const double hh = 1e-6;
    for (std::size_t j = 0; j < d.n_regions; ++j) {
      Solution a = s, b = s;
      a.w[j] *= std::exp(hh);
      b.w[j] *= std::exp(-hh);
      Complex fd = (total_potential(d, a) - total_potential(d, b)) / (2 * hh);
      err = std::max(err, std::abs(fd - wdW(d, s, j)));
    }
    add("potential derivative", err <= 1e-5, "max error " + sci(err));
  }

  auto golden = [&](const std::string& name, const reference::GoldenExample& g) {
    const LinkDiagram d = build_diagram(parse_pd(g.pd));
    FillingSpec f{g.filling};
    auto r = from_representation(d, g.generators, ColoringSeed{g.seedV, g.W, g.seed_region}, f);
    double werr = 0;
    for (std::size_t j = 0; j < d.n_regions; ++j)
      werr = std::max(werr, std::abs(r.solution.w[j] - g.printed_w[g.printed_index[j] - 1]));
    bool ok = werr <= 1e-4 && mod_pi2_equal(r.volume.W0, g.printed_W0, 1e-4) && r.gluing.passed(1e-6);
    add(name, ok, "W0 " + format_complex(r.volume.W0, 5) + ", w error " + sci(werr));
  };
  golden("figure-eight golden example", reference::figure8());
  golden("Whitehead golden example", reference::whitehead());

  {
    const LinkDiagram d = build_diagram(parse_pd(reference::figure8_pd));
    auto r = from_representation(d, reference::figure8_parabolic(), std::nullopt, FillingSpec{});
    double err = std::abs(r.volume.vol - reference::figure8_volume);
    add("figure-eight complete structure", err <= 1e-9, "vol " + std::to_string(r.volume.vol));
  }
  return out;
}

inline int cmd_selftest(const Options&, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  bool all = true;
  for (const auto& c : selftest_checks()) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
    all = all && c.passed;
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s\n", dt);
  out << (all ? "selftest PASS in " : "selftest FAIL in ") << buf;
  return all ? Ok : VerifyFailed;
}

// ---- dispatch ----

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Volume and Chern-Simons invariants of link representations from a diagram", "linkvol"};
  app.require_subcommand(1);
  Options o;

  auto common_json = [&](CLI::App* c) { c->add_option("--json", o.json_path, "write a machine-readable report here"); };
  auto filling_flags = [&](CLI::App* c) {
    c->add_option("--filling", o.filling, "slopes per component, e.g. 2/3 or -5,-5/2 or inf");
  };

  auto* analyze = app.add_subcommand("analyze", "diagram combinatorics, Wirtinger presentation, longitudes");
  analyze->add_option("diagram", o.diagram, "PD code file")->required();
  common_json(analyze);

  auto* from_rep = app.add_subcommand("from-rep", "volume and CS of a given representation");
  from_rep->add_option("diagram", o.diagram, "PD code file")->required();
  from_rep->add_option("representation", o.rep, "representation JSON")->required();
  from_rep->add_option("coloring", o.coloring, "optional coloring JSON");
  filling_flags(from_rep);
  from_rep->add_option("--seedV", o.seedV, "seed vector, e.g. 1,i");
  from_rep->add_option("--W", o.W, "auxiliary vector, e.g. 2,1");
  from_rep->add_option("--seed-region", o.seed_region, "region (1-based) carrying seedV");
  from_rep->add_option("--rng-seed", o.rng_seed, "seed for the random coloring");
  from_rep->add_option("--tol", o.tol, "pass tolerance (default 1e-6)");
  common_json(from_rep);

  auto* solve = app.add_subcommand("solve", "find solutions of the critical equations at fixed m");
  solve->add_option("diagram", o.diagram, "PD code file")->required();
  solve->add_option("--m", o.m, "meridian eigenvalues, e.g. 1 or -1.30664+0.04987i");
  filling_flags(solve);
  solve->add_option("--l", o.l, "longitude eigenvalues for finite slopes");
  solve->add_option("--seeds", o.seeds, "number of random starts (default 64)");
  solve->add_option("--rng-seed", o.rng_seed, "random seed");
  solve->add_option("--tol", o.tol, "Newton residual tolerance (default 1e-10)");
  common_json(solve);

  auto* verify = app.add_subcommand("verify", "check a solution: non-degeneracy, critical equations, gluing");
  verify->add_option("diagram", o.diagram, "PD code file")->required();
  verify->add_option("solution", o.solution, "solution JSON or solver report")->required();
  verify->add_option("filling-file", o.filling_file, "optional filling JSON");
  filling_flags(verify);
  verify->add_option("--l", o.l, "longitude eigenvalues for finite slopes");
  verify->add_option("--tol", o.tol, "pass tolerance (default 1e-6)");
  common_json(verify);

  auto* selftest = app.add_subcommand("selftest", "dilogarithm identities and both worked examples");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? Ok : BadInput;
  }

  std::function<int(const Options&, std::ostream&)> cmd;
  if (analyze->parsed()) cmd = cmd_analyze;
  else if (from_rep->parsed()) cmd = cmd_from_rep;
  else if (solve->parsed()) cmd = cmd_solve;
  else if (verify->parsed()) cmd = cmd_verify;
  else if (selftest->parsed()) cmd = cmd_selftest;
  try {
    return cmd(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DegenerateError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return BadInput;
}

}  // namespace linkvol::cli
