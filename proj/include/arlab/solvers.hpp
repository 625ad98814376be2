#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include "arlab/common.hpp"

namespace arlab {

// pivot / zero thresholds of the closed-form solvers, kept in one place
struct SolverLimits {
  double quartic_pivot = 1e-10;  // |P - 2A| below this takes the biquadratic path
  double zero = 1e-12;
};

/// Both branch values of -c1/2 + (1/2) sqrt(c1^2 - 4 c0).
inline std::array<cplx, 2> solve_quadratic(cplx c1, cplx c0) {
  cplx d = std::sqrt(c1 * c1 - 4.0 * c0);
  return {-0.5 * c1 + 0.5 * d, -0.5 * c1 - 0.5 * d};
}

struct DepressedCubic {
  cplx P, Q;
};

/// Z = z + c2/3 turns z^3 + c2 z^2 + c1 z + c0 into Z^3 + 3 P Z + 2 Q.
inline DepressedCubic depress_cubic(cplx c2, cplx c1, cplx c0) {
  return {c1 / 3.0 - c2 * c2 / 9.0,
          c0 / 2.0 + c2 * c2 * c2 / 27.0 - c1 * c2 / 6.0};
}

struct CubicSolution {
  std::array<cplx, 3> roots;
  std::array<std::pair<cplx, cplx>, 3> vw;  // the paired radicals per root
  DepressedCubic depressed;
};

/// Cube-root construction: s = -c2/3 + v + w over the three cube-root
/// branches v of -Q + sqrt(Q^2 + P^3), each paired with w so that
/// v w = -P. The square-root branch with the larger |{-Q + d}| is used,
/// which avoids cancellation; either branch is mathematically valid.
inline CubicSolution solve_cubic(cplx c2, cplx c1, cplx c0,
                                 const SolverLimits& lim = SolverLimits{}) {
  DepressedCubic d = depress_cubic(c2, c1, c0);
  const cplx shift = -c2 / 3.0;
  cplx disc = std::sqrt(d.Q * d.Q + d.P * d.P * d.P);
  cplx u_plus = -d.Q + disc, u_minus = -d.Q - disc;
  cplx u = (std::abs(u_plus) >= std::abs(u_minus)) ? u_plus : u_minus;
  cplx u_other = (std::abs(u_plus) >= std::abs(u_minus)) ? u_minus : u_plus;

  CubicSolution out{{shift, shift, shift}, {}, d};
  if (std::abs(u) == 0.0) {  // P = Q = 0: triple root
    for (auto& p : out.vw) p = {cplx{0, 0}, cplx{0, 0}};
    return out;
  }

  const cplx omega = std::exp(cplx(0, 2.0 * kPi / 3.0));
  cplx v0 = std::pow(u, 1.0 / 3.0);
  std::array<cplx, 3> vs{v0, v0 * omega, v0 * omega * omega};
  cplx w0 = std::pow(u_other, 1.0 / 3.0);
  std::array<cplx, 3> ws{w0, w0 * omega, w0 * omega * omega};
  std::array<bool, 3> used{false, false, false};

  for (int l = 0; l < 3; ++l) {
    cplx v = vs[l], w;
    if (std::abs(v) > lim.zero) {
      w = -d.P / v;
    } else {
      int best = -1;
      double best_err = 1e300;
      for (int m = 0; m < 3; ++m) {
        if (used[m]) continue;
        double err = std::abs(v * ws[m] + d.P);
        if (err < best_err) {
          best_err = err;
          best = m;
        }
      }
      used[best] = true;
      w = ws[best];
    }
    out.vw[l] = {v, w};
    out.roots[l] = shift + v + w;
  }
  return out;
}

struct DepressedQuartic {
  cplx P, Q, R;
  cplx resolvent_A{0, 0};
};

/// Z = z + c3/4 turns the quartic into Z^4 + P Z^2 + Q Z + R.
inline DepressedQuartic depress_quartic(cplx c3, cplx c2, cplx c1, cplx c0) {
  DepressedQuartic d;
  d.P = c2 - 3.0 * c3 * c3 / 8.0;
  d.Q = c1 - c2 * c3 / 2.0 + c3 * c3 * c3 / 8.0;
  d.R = c0 - c1 * c3 / 4.0 + c2 * c3 * c3 / 16.0 - 3.0 * c3 * c3 * c3 * c3 / 256.0;
  return d;
}

/// Root A of the quartic's factorization cubic
///   8A^3 - 4PA^2 - 8RA + 4PR - Q^2 = 0,
/// the vanishing-discriminant condition for (P-2A)Z^2 + QZ + (R-A^2).
/// Among the three roots the one with maximal |P - 2A| is returned; any
/// root works algebraically, the largest pivot is the stable choice.
inline cplx resolvent_root(cplx P, cplx Q, cplx R) {
  CubicSolution sol =
      solve_cubic(-P / 2.0, -R, P * R / 2.0 - Q * Q / 8.0);
  cplx best = sol.roots[0];
  double best_pivot = -1.0;
  for (const cplx& a : sol.roots) {
    double pivot = std::abs(P - 2.0 * a);
    if (pivot > best_pivot) {
      best_pivot = pivot;
      best = a;
    }
  }
  return best;
}

/// Ferrari-style factorization into two quadratics via the resolvent root;
/// falls back to the biquadratic W^2 + PW + R when the pivot P - 2A is
/// negligible (then Q is negligible as well).
inline std::array<cplx, 4> solve_quartic(cplx c3, cplx c2, cplx c1, cplx c0,
                                         const SolverLimits& lim = SolverLimits{}) {
  DepressedQuartic d = depress_quartic(c3, c2, c1, c0);
  d.resolvent_A = resolvent_root(d.P, d.Q, d.R);
  const cplx shift = -c3 / 4.0;
  cplx pivot = d.P - 2.0 * d.resolvent_A;

  std::array<cplx, 4> out;
  if (std::abs(pivot) > lim.quartic_pivot) {
    cplx e = std::sqrt(-pivot);
    cplx b = -d.Q / (2.0 * pivot);
    // (Z^2 + A)^2 - e^2 (Z - B)^2 factors as a difference of squares
    auto q1 = solve_quadratic(e, d.resolvent_A - e * b);
    auto q2 = solve_quadratic(-e, d.resolvent_A + e * b);
    out = {q1[0] + shift, q1[1] + shift, q2[0] + shift, q2[1] + shift};
  } else {
    auto ws = solve_quadratic(d.P, d.R);
    cplx r0 = std::sqrt(ws[0]), r1 = std::sqrt(ws[1]);
    out = {r0 + shift, -r0 + shift, r1 + shift, -r1 + shift};
  }
  return out;
}

}  // namespace arlab
