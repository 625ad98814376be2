// arlab: numerical laboratory for root monodromy, commutator words and
// radical-expression continuation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arlab/arlab.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using arlab::cplx;
using arlab::json;

cplx parse_complex_token(const std::string& tok) {
  size_t comma = tok.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(tok), 0.0};
    return {std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1))};
  } catch (const std::exception&) {
    throw arlab::InputError("cannot parse coefficient '" + tok +
                            "' (expected re or re,im)");
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw arlab::InputError("cannot open file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw arlab::InputError("bad JSON in '" + path + "': " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw arlab::InputError("cannot write file '" + path + "'");
  out << content;
}

void write_json(const std::string& path, const json& j) {
  write_file(path, j.dump(2) + "\n");
}

struct ManifestSink {
  std::string path;  // empty = disabled
  std::string subcommand;
  json config = json::object();
  std::vector<std::string> outputs;

  void record(const std::string& file) { outputs.push_back(file); }
  void flush() const {
    if (path.empty()) return;
    json j{{"schema", "manifest-v1"},
           {"tool", "arlab"},
           {"version", kVersion},
           {"subcommand", subcommand},
           {"config", config},
           {"outputs", outputs}};
    write_json(path, j);
  }
};

unsigned long seed_or_env(CLI::Option* opt, unsigned long value) {
  if (opt->count() > 0) return value;
  if (const char* env = std::getenv("ARLAB_SEED")) {
    try {
      return std::stoul(env);
    } catch (const std::exception&) {
      throw arlab::InputError("ARLAB_SEED is not a number");
    }
  }
  return value;
}

// ---------------------------------------------------------------------------

int cmd_solve(const std::vector<std::string>& coeff_tokens, int degree,
              bool machine, const std::string& out_file, ManifestSink& manifest) {
  std::vector<cplx> descending;
  for (const auto& tok : coeff_tokens) descending.push_back(parse_complex_token(tok));
  if (degree == 0) degree = static_cast<int>(descending.size());
  if (degree < 1) throw arlab::InputError("degree must be at least 1");
  if (static_cast<int>(descending.size()) != degree)
    throw arlab::InputError("expected " + std::to_string(degree) +
                            " coefficients (z^" + std::to_string(degree - 1) +
                            " first, constant last)");

  arlab::PolynomialSpec poly;
  poly.coeffs.assign(descending.rbegin(), descending.rend());

  std::vector<cplx> roots;
  std::string method;
  std::string note;
  if (degree == 1) {
    roots = {-poly.coeffs[0]};
    method = "linear";
  } else if (degree == 2) {
    auto r = arlab::solve_quadratic(poly.coeffs[1], poly.coeffs[0]);
    roots = {r[0], r[1]};
    method = "closed-form";
  } else if (degree == 3) {
    auto s = arlab::solve_cubic(poly.coeffs[2], poly.coeffs[1], poly.coeffs[0]);
    roots = {s.roots[0], s.roots[1], s.roots[2]};
    method = "closed-form";
  } else if (degree == 4) {
    auto r = arlab::solve_quartic(poly.coeffs[3], poly.coeffs[2], poly.coeffs[1],
                                  poly.coeffs[0]);
    roots = {r[0], r[1], r[2], r[3]};
    method = "closed-form";
  } else {
    roots = arlab::all_roots(poly);
    method = "numeric";
    note =
        "no radical formula exists for degree >= 5; these roots are numeric. "
        "Run 'arlab witness' for the loop-based demonstration.";
  }

  json j{{"schema", "solve-v1"},
         {"degree", degree},
         {"method", method},
         {"polynomial", arlab::poly_to_json(poly)}};
  json roots_j = json::array(), residuals = json::array();
  for (const cplx& r : roots) {
    roots_j.push_back({r.real(), r.imag()});
    residuals.push_back(std::abs(arlab::eval_poly(poly, r)));
  }
  j["roots"] = std::move(roots_j);
  j["residuals"] = std::move(residuals);
  if (!note.empty()) j["note"] = note;

  if (!out_file.empty()) {
    write_json(out_file, j);
    manifest.record(out_file);
  }
  if (machine) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "degree " << degree << " (" << method << ")\n";
    for (size_t i = 0; i < roots.size(); ++i)
      std::cout << "  root " << i + 1 << ": " << roots[i].real() << " + "
                << roots[i].imag() << "i   |p(root)| = "
                << std::abs(arlab::eval_poly(poly, roots[i])) << "\n";
    if (!note.empty()) std::cout << "  note: " << note << "\n";
  }
  manifest.config = {{"degree", degree}, {"polynomial", arlab::poly_to_json(poly)}};
  return 0;
}

int cmd_trace(const std::string& poly_file, const std::string& path_file,
              bool machine, const std::string& out_file,
              const std::string& svg_file, const arlab::Tolerances& tol,
              ManifestSink& manifest) {
  arlab::PolynomialSpec poly = arlab::poly_from_json(load_json(poly_file));

  json pj = load_json(path_file);
  arlab::PathBundle bundle;
  if (pj.contains("paths")) {
    bundle = arlab::bundle_from_json(pj, tol.closure);
  } else {
    // single-path shorthand: the loop drives c0, other coefficients hold
    arlab::PathSpec gamma = arlab::path_from_json(pj, tol.closure);
    bundle.t = gamma.t;
    bundle.members.push_back(gamma.v);
    for (int k = 1; k < poly.degree(); ++k)
      bundle.members.emplace_back(gamma.v.size(), poly.coeffs[k]);
  }

  arlab::MonodromyTrace trace = arlab::trace_roots(poly, bundle, tol);
  json j = arlab::trace_to_json(trace);

  if (!out_file.empty()) {
    write_json(out_file, j);
    manifest.record(out_file);
  }
  if (!svg_file.empty()) {
    using namespace arlab;
    using namespace arlab::svg_style;
    SvgCanvas canvas;
    detail::Bounds lb, rb;
    for (const auto& m : trace.coeff_paths.members) lb.add(m);
    for (const auto& m : trace.root_paths.members) rb.add(m);
    auto left = detail::fit(canvas, 10, 10, 385, 540, lb);
    auto right = detail::fit(canvas, 405, 10, 385, 540, rb);
    canvas.frame(left, "coefficient paths");
    const char* colors[] = {kOrange, kViolet, kCyan, kRed, kGray, kDark};
    for (size_t k = 0; k < trace.coeff_paths.size(); ++k)
      canvas.polyline(left, trace.coeff_paths.members[k], colors[k % 6], 2.2, true);
    canvas.frame(right, "root trajectories");
    for (size_t k = 0; k < trace.root_paths.size(); ++k) {
      canvas.polyline(right, trace.root_paths.members[k], colors[k % 6], 2.2, true);
      canvas.dot(right, trace.root_paths.members[k].front(), 4, kDark);
    }
    canvas.caption("induced permutation: " + trace.induced.to_cycle_string());
    write_file(svg_file, canvas.str());
    manifest.record(svg_file);
  }

  if (machine) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "induced permutation: " << trace.induced.to_cycle_string()
              << "\nclosure error: " << trace.closure_error
              << "\nsteps: " << trace.steps
              << "  refinements: " << trace.refinements << "\n";
  }
  manifest.config = {{"polynomial", poly_file}, {"path", path_file}};
  return 0;
}

json control_to_json(const arlab::ControlReport& rep,
                     const arlab::WitnessConfig& quad_cfg,
                     const arlab::WitnessConfig& cubic_cfg) {
  auto formula = [](const arlab::FormulaControl& f) {
    return json{{"expression", f.expression},
                {"consistent_assignments", f.consistent_assignments},
                {"moved", f.moved},
                {"lands_on_other_root", f.lands_on_other_root},
                {"min_closure_error", f.min_closure_error}};
  };
  return json{{"schema", "controls-v1"},
              {"quadratic_run", arlab::witness_to_json(rep.quadratic_run, quad_cfg)},
              {"quadratic_formula", formula(rep.quadratic_formula)},
              {"cubic_run", arlab::witness_to_json(rep.cubic_run, cubic_cfg)},
              {"cubic_formula", formula(rep.cubic_formula)},
              {"all_hold", rep.all_hold}};
}

int cmd_witness(int degree, int depth, int exprs, int expr_max_depth,
                unsigned long seed, int samples, bool table2,
                const std::string& control, bool machine,
                const std::string& out_file, const arlab::Tolerances& tol,
                ManifestSink& manifest) {
  using namespace arlab;
  auto t0 = std::chrono::steady_clock::now();

  if (!control.empty()) {
    if (control != "quadratic-formula" && control != "cubic-formula")
      throw InputError("unknown control '" + control +
                       "' (have: quadratic-formula, cubic-formula)");
    ControlReport rep = positive_controls(seed, tol);
    WitnessConfig quad_cfg, cubic_cfg;  // echo of what positive_controls runs
    quad_cfg.degree = 2;
    quad_cfg.target = SignedCycle({1, 2});
    quad_cfg.commutator_depth = 0;
    quad_cfg.expression_count = 100;
    quad_cfg.seed = seed;
    cubic_cfg.degree = 3;
    cubic_cfg.commutator_depth = 1;
    cubic_cfg.expression_count = 60;
    cubic_cfg.seed = seed;
    json j = control_to_json(rep, quad_cfg, cubic_cfg);
    if (!out_file.empty()) {
      write_json(out_file, j);
      manifest.record(out_file);
    }
    const FormulaControl& f =
        control == "quadratic-formula" ? rep.quadratic_formula : rep.cubic_formula;
    if (machine) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "control " << control << ": "
                << (f.moved ? "expression moved" : "expression DID NOT move")
                << " (smallest move " << f.min_closure_error << ", "
                << f.consistent_assignments << " consistent branch choices, "
                << (f.lands_on_other_root ? "lands on another solution"
                                          : "does not land on a solution")
                << ")\n";
    }
    manifest.config = {{"control", control}, {"seed", seed}};
    return rep.all_hold ? 0 : 4;
  }

  WitnessConfig cfg;
  cfg.degree = degree;
  cfg.commutator_depth = depth;
  cfg.expression_count = exprs;
  cfg.expression_max_depth = expr_max_depth;
  cfg.seed = seed;
  cfg.stage_samples = samples;
  cfg.tol = tol;
  if (table2) {
    cfg.word_kind = WitnessConfig::WordKind::DoubleCommutator;
    cfg.commutator_depth = 2;
    if (degree < 4) throw InputError("--table2 needs degree >= 4");
  }
  if (degree == 2) cfg.target = SignedCycle({1, 2});

  WitnessReport rep = run_witness(cfg);
  json j = witness_to_json(rep, cfg);
  if (!out_file.empty()) {
    write_json(out_file, j);
    manifest.record(out_file);
  }

  double wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  if (machine) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "word: " << rep.word_text << "\n"
              << "stages: " << rep.stage_count
              << "   induced: " << rep.induced << " (target " << rep.target
              << (rep.induced_matches_target ? ", match" : ", MISMATCH") << ")\n";
    std::map<int, std::pair<int, int>> by_depth;  // depth -> (count, closed)
    std::map<int, double> worst;
    for (const auto& r : rep.expressions) {
      by_depth[r.depth].first++;
      if (r.returns_to_start) by_depth[r.depth].second++;
      worst[r.depth] = std::max(worst[r.depth], r.relative_error);
    }
    std::cout << "depth  exprs  closed  worst relative error\n";
    for (const auto& [d, counts] : by_depth)
      std::cout << "  " << d << "     " << counts.first << "     "
                << counts.second << "      " << worst[d] << "\n";
    std::cout << "verdict: "
              << (rep.witness_holds ? "witness holds" : "WITNESS FAILED") << "\n"
              << "wall clock: " << wall_ms << " ms\n";
  }
  manifest.config = {{"degree", cfg.degree},
                     {"depth", cfg.commutator_depth},
                     {"exprs", cfg.expression_count},
                     {"seed", cfg.seed}};
  return rep.witness_holds ? 0 : 4;
}

int cmd_figure(const std::string& name, const std::string& out_file,
               ManifestSink& manifest) {
  std::string svg = arlab::build_figure(name);
  if (out_file.empty()) {
    std::cout << svg;
  } else {
    write_file(out_file, svg);
    manifest.record(out_file);
    std::cout << "wrote " << out_file << "\n";
  }
  manifest.config = {{"figure", name}};
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arlab: polynomial root monodromy, commutator words and "
               "radical continuation"};
  app.set_version_flag("--version", std::string("arlab ") + kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  bool machine = false;
  std::string manifest_file;
  app.add_flag("--json", machine, "machine-readable standard output");
  app.add_option("--manifest", manifest_file, "write a run manifest to this file");

  double tol_closure = arlab::Tolerances{}.closure;
  double tol_collision = arlab::Tolerances{}.collision;
  app.add_option("--tol-closure", tol_closure, "loop-closure tolerance");
  app.add_option("--tol-collision", tol_collision, "collision epsilon");

  auto* solve = app.add_subcommand("solve", "roots of a monic polynomial");
  std::vector<std::string> coeff_tokens;
  int solve_degree = 0;
  std::string solve_out;
  solve->add_option("coefficients", coeff_tokens,
                    "coefficients below the leading 1, highest power first; "
                    "each as re or re,im")
      ->required();
  solve->add_option("--degree", solve_degree, "expected degree (checked)");
  solve->add_option("--out", solve_out, "write the JSON report here");

  auto* trace = app.add_subcommand("trace", "follow roots along a coefficient loop");
  std::string trace_poly, trace_path, trace_out, trace_svg;
  trace->add_option("--poly", trace_poly, "polynomial JSON file")->required();
  trace->add_option("--path", trace_path,
                    "coefficient path JSON (bundle, or one path driving c0)")
      ->required();
  trace->add_option("--out", trace_out, "write the trace JSON here");
  trace->add_option("--svg", trace_svg, "write an SVG of the trace here");

  auto* witness = app.add_subcommand(
      "witness", "realize a commutator word and test radical closure");
  int w_degree = 5, w_depth = 3, w_exprs = 200, w_expr_max_depth = -1;
  int w_samples = 129;
  unsigned long w_seed = 42;
  bool w_table2 = false;
  std::string w_control, w_out;
  witness->add_option("--degree", w_degree, "polynomial degree (>= 2)");
  witness->add_option("--depth", w_depth, "commutator nesting depth N");
  witness->add_option("--exprs", w_exprs, "total number of sampled expressions");
  witness->add_option("--expr-max-depth", w_expr_max_depth,
                      "max expression depth (default: N)");
  auto* seed_opt = witness->add_option("--seed", w_seed,
                                       "RNG seed (ARLAB_SEED as fallback)");
  witness->add_option("--samples", w_samples, "samples per swap stage");
  witness->add_flag("--table2", w_table2,
                    "run the degree-4 double-commutator row");
  witness->add_option("--control", w_control,
                      "run a positive control: quadratic-formula or cubic-formula");
  witness->add_option("--out", w_out, "write the witness JSON here");

  auto* figure = app.add_subcommand("figure", "emit a deterministic SVG figure");
  std::string fig_name, fig_out;
  figure->add_option("name", fig_name, "fig1, fig2, fig4 or fig5")->required();
  figure->add_option("--out", fig_out, "output SVG path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  ManifestSink manifest;
  manifest.path = manifest_file;

  arlab::Tolerances tol;
  tol.closure = tol_closure;
  tol.collision = tol_collision;

  try {
    int rc = 0;
    if (solve->parsed()) {
      manifest.subcommand = "solve";
      rc = cmd_solve(coeff_tokens, solve_degree, machine, solve_out, manifest);
    } else if (trace->parsed()) {
      manifest.subcommand = "trace";
      rc = cmd_trace(trace_poly, trace_path, machine, trace_out, trace_svg, tol,
                     manifest);
    } else if (witness->parsed()) {
      manifest.subcommand = "witness";
      rc = cmd_witness(w_degree, w_depth, w_exprs, w_expr_max_depth,
                       seed_or_env(seed_opt, w_seed), w_samples, w_table2,
                       w_control, machine, w_out, tol, manifest);
    } else if (figure->parsed()) {
      manifest.subcommand = "figure";
      rc = cmd_figure(fig_name, fig_out, manifest);
    }
    manifest.flush();
    return rc;
  } catch (const arlab::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const arlab::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
