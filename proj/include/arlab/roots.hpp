#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "arlab/common.hpp"

namespace arlab {

/// Monic polynomial z^n + c_{n-1} z^{n-1} + ... + c_1 z + c_0, stored as
/// the ascending coefficient array (c_0, ..., c_{n-1}); the leading 1 is
/// implicit.
struct PolynomialSpec {
  std::vector<cplx> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()); }
};

inline cplx eval_poly(const PolynomialSpec& p, cplx z) {
  cplx acc{1.0, 0.0};
  for (int k = p.degree() - 1; k >= 0; --k) acc = acc * z + p.coeffs[k];
  return acc;
}

inline cplx eval_poly_deriv(const PolynomialSpec& p, cplx z) {
  int n = p.degree();
  cplx acc{static_cast<double>(n), 0.0};
  for (int k = n - 1; k >= 1; --k)
    acc = acc * z + static_cast<double>(k) * p.coeffs[k];
  return acc;
}

inline double coeff_scale(const PolynomialSpec& p) {
  double m = 0.0;
  for (const cplx& c : p.coeffs) m = std::max(m, std::abs(c));
  return 1.0 + m;
}

namespace detail {
// canonical root order: lexicographic by (re, im); makes results depend
// only on the multiset
inline void sort_canonical(std::vector<cplx>& v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}
}  // namespace detail

/// Elementary symmetric expansion of prod (z - s_i). Roots are sorted
/// internally, so permuting the input yields bit-identical coefficients.
inline PolynomialSpec coefficients_from_roots(std::vector<cplx> roots) {
  detail::sort_canonical(roots);
  std::vector<cplx> c{cplx{1.0, 0.0}};  // ascending, degree grows as we multiply
  for (cplx s : roots) {
    std::vector<cplx> next(c.size() + 1, cplx{0.0, 0.0});
    for (size_t i = 0; i < c.size(); ++i) {
      next[i] += -s * c[i];
      next[i + 1] += c[i];
    }
    c = std::move(next);
  }
  c.pop_back();  // drop the leading 1
  return PolynomialSpec{std::move(c)};
}

inline double discriminant_magnitude(const std::vector<cplx>& roots) {
  double m = 1.0;
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j) {
      double d = std::abs(roots[i] - roots[j]);
      m *= d * d;
    }
  return m;
}

inline double min_pairwise_separation(const std::vector<cplx>& pts) {
  double m = 1e300;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      m = std::min(m, std::abs(pts[i] - pts[j]));
  return m;
}

namespace detail {

// One Ehrlich-Aberth sweep over all iterates; returns the largest
// correction magnitude.
inline double aberth_sweep(const PolynomialSpec& p, std::vector<cplx>& z) {
  int n = p.degree();
  double biggest = 0.0;
  for (int i = 0; i < n; ++i) {
    cplx pv = eval_poly(p, z[i]);
    if (pv == cplx{0.0, 0.0}) continue;
    cplx dv = eval_poly_deriv(p, z[i]);
    if (dv == cplx{0.0, 0.0}) {
      z[i] += cplx(1e-8, 1e-8);
      biggest = std::max(biggest, 1e-8);
      continue;
    }
    cplx newton = pv / dv;
    cplx repel{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      cplx diff = z[i] - z[j];
      if (std::abs(diff) < 1e-300) diff = cplx(1e-12, 1e-12);
      repel += 1.0 / diff;
    }
    cplx denom = 1.0 - newton * repel;
    cplx step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
    z[i] -= step;
    biggest = std::max(biggest, std::abs(step));
  }
  return biggest;
}

inline double max_residual(const PolynomialSpec& p, const std::vector<cplx>& z) {
  double r = 0.0;
  for (const cplx& zi : z) r = std::max(r, std::abs(eval_poly(p, zi)));
  return r;
}

}  // namespace detail

/// Simultaneous iteration for all n roots, warm-started from `guesses`.
/// Converged when max |p(z_i)| / (1 + max|c_k|) <= tol.
inline std::vector<cplx> all_roots_from(const PolynomialSpec& p,
                                        std::vector<cplx> guesses,
                                        double tol = Tolerances{}.root_residual,
                                        int max_sweeps = 500) {
  int n = p.degree();
  if (n < 1) throw InputError("root finding needs degree >= 1");
  if (static_cast<int>(guesses.size()) != n)
    throw InputError("root finding: guess count must equal the degree");
  if (n == 1) return {-p.coeffs[0]};

  double scale = coeff_scale(p);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double step = detail::aberth_sweep(p, guesses);
    if (detail::max_residual(p, guesses) <= tol * scale) return guesses;
    if (step == 0.0) break;  // stalled without meeting the target
  }
  double res = detail::max_residual(p, guesses) / scale;
  std::ostringstream msg;
  msg << "root finding failed: residual " << res << " after " << max_sweeps
      << " sweeps (target " << tol << ")";
  throw NumericError(msg.str());
}

/// All n roots from the deterministic starting ring of radius
/// 1 + max|c_k|; output sorted lexicographically by (re, im).
inline std::vector<cplx> all_roots(const PolynomialSpec& p,
                                   double tol = Tolerances{}.root_residual,
                                   int max_sweeps = 500) {
  int n = p.degree();
  if (n < 1) throw InputError("root finding needs degree >= 1");
  if (n == 1) return {-p.coeffs[0]};
  double radius = coeff_scale(p);
  // fixed irrational phase offset keeps the ring off symmetry axes
  const double phase = 2.0 * kPi * 0.618033988749894848;
  std::vector<cplx> guesses(n);
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * kPi * k / n + phase;
    guesses[k] = radius * cplx(std::cos(ang), std::sin(ang));
  }
  auto roots = all_roots_from(p, std::move(guesses), tol, max_sweeps);
  detail::sort_canonical(roots);
  return roots;
}

}  // namespace arlab
