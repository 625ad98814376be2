#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "arlab/path.hpp"
#include "arlab/perm.hpp"
#include "arlab/roots.hpp"

namespace arlab {

// polynomials whose start discriminant magnitude falls below this are
// rejected for tracing
inline constexpr double kMinStartDiscriminant = 1e-12;

namespace detail {

inline cplx kth_root_branch(cplx z, int k, int branch) {
  double r = std::abs(z), theta = std::arg(z);
  return std::pow(r, 1.0 / k) *
         std::exp(cplx(0, (theta + 2.0 * kPi * branch) / k));
}

inline cplx nearest_kth_root(cplx z, int k, cplx ref) {
  cplx best{0.0, 0.0};
  double best_d = 1e300;
  for (int l = 0; l < k; ++l) {
    cplx cand = kth_root_branch(z, k, l);
    double d = std::abs(cand - ref);
    if (d < best_d) {
      best_d = d;
      best = cand;
    }
  }
  return best;
}

}  // namespace detail

/// Follows one k-th root branch along a radicand path. At every step the
/// root of the new value closest to the previous root value is selected;
/// steps whose radicand argument moves by pi/2 or more are bisected on the
/// chord. The output keeps the input grid.
inline PathSpec continue_kth_root(const PathSpec& radicand, int k,
                                  cplx initial_branch,
                                  const Tolerances& tol = Tolerances{},
                                  long* refinements = nullptr) {
  if (k < 2) throw InputError("continue_kth_root: k must be at least 2");
  cplx z0 = radicand.start();
  if (std::abs(z0) <= tol.collision)
    throw NumericError("branch point encountered: radicand starts near 0");
  if (std::abs(std::pow(initial_branch, k) - z0) > 1e-6 * (1.0 + std::abs(z0)))
    throw InputError("continue_kth_root: initial branch does not match radicand start");
  cplx w = detail::nearest_kth_root(z0, k, initial_branch);

  long refine_count = 0;
  // advances the branch across one radicand chord
  auto advance = [&](auto&& self, cplx a, cplx b, cplx cur, int depth) -> cplx {
    if (std::abs(b) <= tol.collision)
      throw NumericError("branch point encountered: radicand too close to 0");
    if (std::abs(std::arg(b / a)) < 0.5 * kPi)
      return detail::nearest_kth_root(b, k, cur);
    if (depth >= 20) throw NumericError("refinement exhausted in branch tracking");
    ++refine_count;
    cplx mid = 0.5 * (a + b);
    cplx wm = self(self, a, mid, cur, depth + 1);
    return self(self, mid, b, wm, depth + 1);
  };

  PathSpec out;
  out.t = radicand.t;
  out.v.resize(radicand.size());
  out.v[0] = w;
  for (size_t s = 0; s + 1 < radicand.size(); ++s) {
    w = advance(advance, radicand.v[s], radicand.v[s + 1], w, 0);
    out.v[s + 1] = w;
  }
  out.closed = std::abs(out.end() - out.start()) <=
               tol.closure * (1.0 + std::abs(out.start()));
  if (refinements) *refinements += refine_count;
  return out;
}

/// Pointwise Vieta map: root trajectories to coefficient trajectories.
/// A bundle realizing a permutation (same endpoint multiset) therefore
/// yields closed coefficient paths.
inline PathBundle coefficient_paths_from_root_paths(const PathBundle& roots) {
  size_t n = roots.size();
  PathBundle out;
  out.t = roots.t;
  out.members.assign(n, std::vector<cplx>(roots.samples()));
  std::vector<cplx> column(n);
  for (size_t s = 0; s < roots.samples(); ++s) {
    for (size_t k = 0; k < n; ++k) column[k] = roots.members[k][s];
    PolynomialSpec p = coefficients_from_roots(column);
    for (size_t k = 0; k < n; ++k) out.members[k][s] = p.coeffs[k];
  }
  return out;
}

struct MonodromyTrace {
  PathBundle coeff_paths;
  PathBundle root_paths;
  std::vector<double> min_separation;  // per retained sample
  Permutation induced;
  double closure_error = 0.0;  // max over coefficients of |end - start|
  long steps = 0;
  long refinements = 0;
  Tolerances tol;
};

namespace detail {

// Aligns candidate roots with previous labels. Succeeds only when every
// candidate lies within `radius` of exactly one previous root and the
// assignment is a bijection.
inline std::optional<std::vector<cplx>> match_roots(
    const std::vector<cplx>& prev, const std::vector<cplx>& cand, double radius) {
  size_t n = prev.size();
  std::vector<cplx> aligned(n);
  std::vector<bool> used(n, false);
  for (size_t i = 0; i < n; ++i) {
    int hit = -1;
    for (size_t j = 0; j < n; ++j) {
      if (std::abs(cand[i] - prev[j]) < radius) {
        hit = static_cast<int>(j);
        break;  // radius balls are disjoint, at most one can match
      }
    }
    if (hit < 0 || used[hit]) return std::nullopt;
    used[hit] = true;
    aligned[hit] = cand[i];
  }
  return aligned;
}

}  // namespace detail

/// Continues all roots of a polynomial along a closed coefficient loop and
/// reports the induced permutation. Adaptive: a step is accepted only when
/// every new root lands within half the previous minimum pairwise
/// separation of a unique previous root; otherwise the step is bisected in
/// coefficient space (cap 20 levels). Touching the discriminant locus is a
/// hard error, not a refinable one.
inline MonodromyTrace trace_roots(const PolynomialSpec& start_poly,
                                  const PathBundle& coeff_bundle,
                                  const Tolerances& tol = Tolerances{}) {
  int n = start_poly.degree();
  if (static_cast<int>(coeff_bundle.size()) != n)
    throw InputError("trace_roots: bundle must have one path per coefficient");
  if (!bundle_closed(coeff_bundle, tol.closure))
    throw InputError("trace_roots: coefficient bundle must be closed");
  for (int k = 0; k < n; ++k)
    if (std::abs(coeff_bundle.members[k].front() - start_poly.coeffs[k]) >
        tol.closure * (1.0 + std::abs(start_poly.coeffs[k])))
      throw InputError("trace_roots: bundle does not start at the polynomial");

  std::vector<cplx> start_roots = all_roots(start_poly, tol.root_residual);
  if (n > 1) {
    if (min_pairwise_separation(start_roots) <= tol.collision)
      throw NumericError("root collision on path: start roots too close");
    if (discriminant_magnitude(start_roots) < kMinStartDiscriminant)
      throw NumericError("degenerate polynomial at path start: discriminant too small");
  }

  MonodromyTrace trace{coeff_bundle,
                       PathBundle{},
                       {},
                       Permutation(n),
                       0.0,
                       0,
                       0,
                       tol};
  trace.root_paths.t = coeff_bundle.t;
  trace.root_paths.members.assign(n, {});
  for (int k = 0; k < n; ++k) trace.root_paths.members[k].push_back(start_roots[k]);
  trace.min_separation.push_back(
      n > 1 ? min_pairwise_separation(start_roots) : 1e300);

  std::vector<cplx> column_a(n), column_b(n);
  auto poly_at = [&](const std::vector<cplx>& c) { return PolynomialSpec{c}; };

  std::vector<cplx> current = start_roots;
  // one chord in coefficient space, bisected on matching failure
  auto advance = [&](auto&& self, const std::vector<cplx>& ca,
                     const std::vector<cplx>& cb, int depth) -> void {
    std::vector<cplx> cand =
        all_roots_from(poly_at(cb), current, tol.root_residual);
    double sep = (n > 1) ? min_pairwise_separation(current) : 1e300;
    auto aligned = detail::match_roots(current, cand, 0.5 * sep);
    if (!aligned) {
      if (depth >= 20) throw NumericError("refinement exhausted in root tracking");
      ++trace.refinements;
      std::vector<cplx> mid(n);
      for (int k = 0; k < n; ++k) mid[k] = 0.5 * (ca[k] + cb[k]);
      self(self, ca, mid, depth + 1);
      self(self, mid, cb, depth + 1);
      return;
    }
    if (n > 1 && min_pairwise_separation(*aligned) <= tol.collision)
      throw NumericError("root collision on path");
    current = std::move(*aligned);
    ++trace.steps;
  };

  for (size_t s = 0; s + 1 < coeff_bundle.samples(); ++s) {
    for (int k = 0; k < n; ++k) {
      column_a[k] = coeff_bundle.members[k][s];
      column_b[k] = coeff_bundle.members[k][s + 1];
    }
    advance(advance, column_a, column_b, 0);
    for (int k = 0; k < n; ++k) trace.root_paths.members[k].push_back(current[k]);
    trace.min_separation.push_back(
        n > 1 ? min_pairwise_separation(current) : 1e300);
  }

  double root_scale = 0.0;
  for (const cplx& r : start_roots) root_scale = std::max(root_scale, std::abs(r));
  double match_tol = tol.closure * (1.0 + root_scale);

  // induced[j] = label of the root that arrived at start slot j; with that
  // reading a physical swap sequence composes left to right
  std::vector<int> images(n, -1);
  std::vector<bool> used(n, false);
  for (int r = 0; r < n; ++r) {
    cplx endpoint = trace.root_paths.members[r].back();
    int slot = -1;
    for (int j = 0; j < n; ++j)
      if (!used[j] && std::abs(endpoint - start_roots[j]) <= match_tol) {
        slot = j;
        break;
      }
    if (slot < 0)
      throw NumericError("trace endpoints do not land on the start roots");
    used[slot] = true;
    images[slot] = r;
  }
  trace.induced = Permutation::from_images(images);

  for (int k = 0; k < n; ++k)
    trace.closure_error =
        std::max(trace.closure_error,
                 std::abs(coeff_bundle.members[k].back() -
                          coeff_bundle.members[k].front()));
  return trace;
}

}  // namespace arlab
