#pragma once

#include <string>
#include <vector>

#include "arlab/monodromy.hpp"
#include "arlab/svg.hpp"
#include "arlab/witness.hpp"

namespace arlab {

namespace detail {

struct Bounds {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  void add(cplx z) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  void add(const std::vector<cplx>& pts) {
    for (const cplx& z : pts) add(z);
  }
  void pad(double f) {
    double dx = std::max(xmax - xmin, 0.5) * f, dy = std::max(ymax - ymin, 0.5) * f;
    xmin -= dx, xmax += dx, ymin -= dy, ymax += dy;
  }
};

inline SvgCanvas::Viewport fit(const SvgCanvas& canvas, double px, double py,
                               double pw, double ph, Bounds b) {
  b.pad(0.12);
  return canvas.viewport(px, py, pw, ph, b.xmin, b.xmax, b.ymin, b.ymax);
}

}  // namespace detail

/// Root paths inducing the transposition (12) and the cycle (123) on the
/// solutions of z^3 - 1.
inline std::string figure_permutations() {
  using namespace svg_style;
  PolynomialSpec cubic{{cplx{-1, 0}, 0, 0}};
  std::vector<cplx> roots = all_roots(cubic);

  RealizedWord swap12 =
      realize_word(CommutatorWord::leaf(SignedCycle({1, 2})), roots, 129);
  RealizedWord cycle123 =
      realize_word(CommutatorWord::leaf(SignedCycle({1, 2, 3})), roots, 129);

  SvgCanvas canvas;
  detail::Bounds b;
  for (const cplx& r : roots) b.add(r);
  for (const auto& st : swap12.stages)
    for (const auto& m : st.members) b.add(m);
  for (const auto& st : cycle123.stages)
    for (const auto& m : st.members) b.add(m);

  auto left = detail::fit(canvas, 10, 10, 385, 540, b);
  auto right = detail::fit(canvas, 405, 10, 385, 540, b);

  canvas.frame(left, "transposition (1 2)");
  canvas.polyline(left, swap12.stages[0].members[0], kCyan, 2.5, true);
  canvas.polyline(left, swap12.stages[0].members[1], kCyan, 2.5, true);
  for (size_t i = 0; i < roots.size(); ++i) {
    canvas.dot(left, roots[i], 4, kDark);
    canvas.label(left, roots[i], "s" + std::to_string(i + 1), kDark);
  }

  canvas.frame(right, "cycle (1 2 3)");
  const char* stage_colors[2] = {kRed, kOrange};
  for (size_t s = 0; s < cycle123.stages.size(); ++s)
    for (size_t m = 0; m < 3; ++m)
      canvas.polyline(right, cycle123.stages[s].members[m], stage_colors[s % 2],
                      2.5, true);
  for (size_t i = 0; i < roots.size(); ++i) {
    canvas.dot(right, roots[i], 4, kDark);
    canvas.label(right, roots[i], "s" + std::to_string(i + 1), kDark);
  }
  canvas.caption("paths in the solution plane inducing a transposition and a 3-cycle");
  return canvas.str();
}

/// A loop that does not wind about 0 keeps every cube root on a loop; a
/// loop that winds once advances each cube root to its neighbor.
inline std::string figure_root_loops() {
  using namespace svg_style;
  const int k = 3;
  PathSpec quiet = circle_loop({2.4, 0.9}, 1.0, 1, 257);
  PathSpec winding = circle_loop({0, 0}, 2.0, 1, 257);

  SvgCanvas canvas;
  detail::Bounds lb;
  lb.add(quiet.v);
  lb.add(winding.v);
  lb.add(cplx{0, 0});
  auto left = detail::fit(canvas, 10, 10, 385, 540, lb);

  canvas.frame(left, "z follows a loop");
  canvas.polyline(left, quiet.v, kCyan, 2.5, true);
  canvas.polyline(left, winding.v, kRed, 2.5, true);
  canvas.dot(left, {0, 0}, 3, kDark);
  canvas.label(left, {0, 0}, "0", kDark);

  detail::Bounds rb;
  std::vector<std::vector<cplx>> quiet_paths, winding_paths;
  for (int l = 0; l < k; ++l) {
    cplx wq = detail::kth_root_branch(quiet.start(), k, l);
    cplx ww = detail::kth_root_branch(winding.start(), k, l);
    quiet_paths.push_back(continue_kth_root(quiet, k, wq).v);
    winding_paths.push_back(continue_kth_root(winding, k, ww).v);
    rb.add(quiet_paths.back());
    rb.add(winding_paths.back());
  }
  rb.add(cplx{0, 0});
  auto right = detail::fit(canvas, 405, 10, 385, 540, rb);
  canvas.frame(right, "its cube roots");
  for (int l = 0; l < k; ++l) {
    canvas.polyline(right, quiet_paths[l], kCyan, 2.5, true);
    canvas.polyline(right, winding_paths[l], kRed, 2.5, true);
    canvas.dot(right, winding_paths[l].front(), 3.5, kDark);
  }
  canvas.dot(right, {0, 0}, 3, kDark);
  canvas.caption("no winding: roots loop (cyan); winding once: roots shift to a neighbor (red)");
  return canvas.str();
}

/// Vieta in motion: swapping the two solutions of z^2 - 1 drives the
/// coefficients (c0, c1) around closed loops.
inline std::string figure_vieta_loop() {
  using namespace svg_style;
  PolynomialSpec quad{{cplx{-1, 0}, cplx{0, 0}}};
  std::vector<cplx> roots = all_roots(quad);
  PathBundle arcs = swap_arcs(roots, 0, 1, 1.0, 257);
  PathBundle coeffs = coefficient_paths_from_root_paths(arcs);

  SvgCanvas canvas;
  detail::Bounds lb;
  for (const auto& m : arcs.members) lb.add(m);
  auto left = detail::fit(canvas, 10, 10, 385, 540, lb);
  canvas.frame(left, "solutions swap: (1 2)");
  canvas.polyline(left, arcs.members[0], kCyan, 2.5, true);
  canvas.polyline(left, arcs.members[1], kCyan, 2.5, true);
  canvas.dot(left, roots[0], 4, kDark);
  canvas.dot(left, roots[1], 4, kDark);
  canvas.label(left, roots[0], "s1", kDark);
  canvas.label(left, roots[1], "s2", kDark);

  detail::Bounds rb;
  for (const auto& m : coeffs.members) rb.add(m);
  rb.add(cplx{0, 0});
  auto right = detail::fit(canvas, 405, 10, 385, 540, rb);
  canvas.frame(right, "coefficients follow loops");
  canvas.polyline(right, coeffs.members[0], kOrange, 2.5, true);
  canvas.dot(right, coeffs.members[0].front(), 4, kOrange);
  canvas.label(right, coeffs.members[0].front(), "c0", kOrange);
  canvas.dot(right, coeffs.members[1].front(), 4, kViolet);
  canvas.label(right, coeffs.members[1].front(), "c1 (still)", kViolet);
  canvas.caption("a permutation of the solutions induces loops on the coefficients");
  return canvas.str();
}

/// Effect of the commutator [(1 2),(2 3)] on a coefficient, an F-function
/// and a square root of it: four unclosed quarters composing to a loop.
inline std::string figure_commutator_loop() {
  using namespace svg_style;
  PolynomialSpec cubic{{cplx{-4, 0}, cplx{-2, 0}, cplx{0, 0}}};  // z^3 - 2z - 4
  std::vector<cplx> roots = all_roots(cubic);
  RealizedWord rw =
      realize_word_clear_of_origin(single_commutator_word(1, 2, 3), roots, 257);
  std::vector<PathBundle> coeff_stages;
  for (const PathBundle& st : rw.stages)
    coeff_stages.push_back(coefficient_paths_from_root_paths(st));
  PathBundle loop = concat_bundles(coeff_stages);

  RadicalExpr f_expr = RadicalExpr::coeff(1) - RadicalExpr::coeff(0);
  ExprContinuation f = continue_expr(f_expr, loop, BranchAssignment{});
  ExprContinuation sf = continue_expr(RadicalExpr::root(2, f_expr), loop,
                                      BranchAssignment{{0}});

  SvgCanvas canvas;
  const std::vector<cplx>& c0 = loop.members[0];

  auto panel = [&](double px, const std::vector<cplx>& pts, const char* title) {
    detail::Bounds b;
    b.add(pts);
    auto vp = detail::fit(canvas, px, 10, 255, 540, b);
    canvas.frame(vp, title);
    // quarter coloring: the four commutator stages
    const char* qc[4] = {kCyan, kRed, kCyan, kRed};
    size_t n = pts.size();
    for (int q = 0; q < 4; ++q) {
      size_t a = q * (n - 1) / 4, bnd = (q + 1) * (n - 1) / 4;
      std::vector<cplx> seg(pts.begin() + a, pts.begin() + bnd + 1);
      canvas.polyline(vp, seg, qc[q], 2.2, true, q >= 2);
    }
    canvas.dot(vp, pts.front(), 4, kDark);
  };

  panel(10, c0, "coefficient c0");
  panel(275, f.value_path.v, "F = c1 - c0");
  panel(540, sf.value_path.v, "sqrt(F)");
  canvas.caption(
      "commutator [(1 2),(2 3)]: each value runs w1 w2 w1' w2' and returns");
  return canvas.str();
}

inline std::string build_figure(const std::string& name) {
  if (name == "fig1") return figure_permutations();
  if (name == "fig2") return figure_root_loops();
  if (name == "fig4") return figure_vieta_loop();
  if (name == "fig5") return figure_commutator_loop();
  throw InputError("unknown figure '" + name + "' (have: fig1, fig2, fig4, fig5)");
}

}  // namespace arlab
