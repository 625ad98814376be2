#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "arlab/common.hpp"

namespace arlab {

/// Discretized path in the complex plane: a polyline over samples
/// (t, value) with strictly increasing t, t0 = 0, t_last = 1. Values
/// between samples are read linearly. Indices everywhere are 0-based.
struct PathSpec {
  std::vector<double> t;
  std::vector<cplx> v;
  bool closed = false;

  size_t size() const { return t.size(); }
  cplx start() const { return v.front(); }
  cplx end() const { return v.back(); }
};

namespace detail {
inline void check_grid(const std::vector<double>& t) {
  if (t.size() < 2) throw InputError("path needs at least 2 samples");
  if (t.front() != 0.0 || t.back() != 1.0)
    throw InputError("path parameter must run from 0 to 1");
  for (size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw InputError("path parameters must increase strictly");
}
}  // namespace detail

inline PathSpec make_path(std::vector<double> t, std::vector<cplx> v,
                          double closure_tol = Tolerances{}.closure) {
  detail::check_grid(t);
  if (t.size() != v.size()) throw InputError("parameter/value count mismatch");
  PathSpec p{std::move(t), std::move(v), false};
  p.closed = std::abs(p.end() - p.start()) <= closure_tol;
  return p;
}

/// Uniform dyadic grid with `samples` points (samples-1 should be a power
/// of two so that reversal and midpoint refinement stay exact).
inline std::vector<double> uniform_grid(int samples) {
  if (samples < 2) throw InputError("grid needs at least 2 samples");
  std::vector<double> t(samples);
  for (int i = 0; i < samples; ++i)
    t[i] = static_cast<double>(i) / (samples - 1);
  t.back() = 1.0;
  return t;
}

inline PathSpec constant_path(cplx value, int samples = 2) {
  return PathSpec{uniform_grid(samples), std::vector<cplx>(samples, value), true};
}

/// Circle about `center`: starts at center + radius, counterclockwise for
/// positive turns. turns = 0 yields the constant path at the start point.
inline PathSpec circle_loop(cplx center, double radius, int turns, int samples) {
  if (radius <= 0.0) throw InputError("circle radius must be positive");
  if (samples < std::max(2, 16 * std::abs(turns)))
    throw InputError("too few samples for the requested number of turns");
  PathSpec p;
  p.t = uniform_grid(samples);
  p.v.resize(samples);
  for (int i = 0; i < samples; ++i) {
    double ang = 2.0 * kPi * turns * p.t[i];
    p.v[i] = center + radius * cplx(std::cos(ang), std::sin(ang));
  }
  p.v.back() = p.v.front();  // snap the joint
  p.closed = true;
  return p;
}

inline PathSpec reverse(const PathSpec& p) {
  size_t n = p.size();
  PathSpec r;
  r.t.resize(n);
  r.v.resize(n);
  for (size_t i = 0; i < n; ++i) {
    r.t[i] = 1.0 - p.t[n - 1 - i];
    r.v[i] = p.v[n - 1 - i];
  }
  r.t.front() = 0.0;
  r.t.back() = 1.0;
  r.closed = p.closed;
  return r;
}

inline PathSpec concat(const PathSpec& p, const PathSpec& q,
                       double closure_tol = Tolerances{}.closure) {
  if (std::abs(p.end() - q.start()) > closure_tol)
    throw InputError("paths not composable: endpoint mismatch");
  PathSpec r;
  r.t.reserve(p.size() + q.size() - 1);
  r.v.reserve(p.size() + q.size() - 1);
  for (size_t i = 0; i < p.size(); ++i) {
    r.t.push_back(0.5 * p.t[i]);
    r.v.push_back(p.v[i]);
  }
  for (size_t i = 1; i < q.size(); ++i) {
    r.t.push_back(0.5 + 0.5 * q.t[i]);
    r.v.push_back(q.v[i]);
  }
  r.t.back() = 1.0;
  r.closed = std::abs(r.end() - r.start()) <= closure_tol;
  return r;
}

/// Doubles the sampling by inserting chord midpoints. A polyline is
/// unchanged as a set of points in the plane, so winding numbers, closure
/// and induced permutations are unaffected.
inline PathSpec refine(const PathSpec& p) {
  PathSpec r;
  r.t.reserve(2 * p.size() - 1);
  r.v.reserve(2 * p.size() - 1);
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    r.t.push_back(p.t[i]);
    r.v.push_back(p.v[i]);
    r.t.push_back(0.5 * (p.t[i] + p.t[i + 1]));
    r.v.push_back(0.5 * (p.v[i] + p.v[i + 1]));
  }
  r.t.push_back(p.t.back());
  r.v.push_back(p.v.back());
  r.closed = p.closed;
  return r;
}

/// Net number of counterclockwise turns of a closed path about z0, by
/// summing per-segment argument increments.
inline int winding_number(const PathSpec& p, cplx z0,
                          double collision_eps = Tolerances{}.collision) {
  if (!p.closed) throw InputError("winding number needs a closed path");
  for (const cplx& z : p.v)
    if (std::abs(z - z0) <= collision_eps)
      throw NumericError("winding undefined near base point");
  double total = 0.0;
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    double step = std::arg((p.v[i + 1] - z0) / (p.v[i] - z0));
    if (std::abs(step) >= 0.5 * kPi)
      throw NumericError("insufficient sampling: winding step too coarse");
    total += step;
  }
  double w = total / (2.0 * kPi);
  double rounded = std::round(w);
  if (std::abs(w - rounded) >= 0.1)
    throw NumericError("insufficient sampling: winding residue too large");
  return static_cast<int>(rounded);
}

/// Paths over one shared parameter grid, one per tracked quantity.
struct PathBundle {
  std::vector<double> t;
  std::vector<std::vector<cplx>> members;  // [member][sample]

  size_t samples() const { return t.size(); }
  size_t size() const { return members.size(); }
};

inline PathBundle bundle_from_paths(const std::vector<PathSpec>& paths) {
  if (paths.empty()) throw InputError("bundle needs at least one path");
  PathBundle b;
  b.t = paths.front().t;
  for (const auto& p : paths) {
    if (p.t != b.t) throw InputError("bundle paths must share one parameter grid");
    b.members.push_back(p.v);
  }
  return b;
}

inline PathSpec member_path(const PathBundle& b, size_t k,
                            double closure_tol = Tolerances{}.closure) {
  PathSpec p{b.t, b.members.at(k), false};
  p.closed = std::abs(p.end() - p.start()) <= closure_tol;
  return p;
}

inline bool bundle_closed(const PathBundle& b,
                          double closure_tol = Tolerances{}.closure) {
  for (const auto& m : b.members)
    if (std::abs(m.back() - m.front()) > closure_tol) return false;
  return true;
}

inline PathBundle reverse(const PathBundle& b) {
  PathBundle r;
  size_t n = b.t.size();
  r.t.resize(n);
  for (size_t i = 0; i < n; ++i) r.t[i] = 1.0 - b.t[n - 1 - i];
  r.t.front() = 0.0;
  r.t.back() = 1.0;
  for (const auto& m : b.members)
    r.members.emplace_back(m.rbegin(), m.rend());
  return r;
}

inline PathBundle refine(const PathBundle& b) {
  PathBundle r;
  size_t n = b.t.size();
  r.t.reserve(2 * n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    r.t.push_back(b.t[i]);
    r.t.push_back(0.5 * (b.t[i] + b.t[i + 1]));
  }
  r.t.push_back(b.t.back());
  for (const auto& m : b.members) {
    std::vector<cplx> mv;
    mv.reserve(2 * n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
      mv.push_back(m[i]);
      mv.push_back(0.5 * (m[i] + m[i + 1]));
    }
    mv.push_back(m.back());
    r.members.push_back(std::move(mv));
  }
  return r;
}

/// Concatenation of stages onto one grid; stage k occupies
/// [k/S, (k+1)/S]. Stage joints must match exactly in value order.
inline PathBundle concat_bundles(const std::vector<PathBundle>& stages,
                                 double closure_tol = Tolerances{}.closure) {
  if (stages.empty()) throw InputError("no stages to concatenate");
  size_t nmem = stages.front().size();
  double share = 1.0 / stages.size();
  PathBundle out;
  out.members.resize(nmem);
  for (size_t s = 0; s < stages.size(); ++s) {
    const PathBundle& st = stages[s];
    if (st.size() != nmem) throw InputError("stage member count mismatch");
    if (s > 0)
      for (size_t k = 0; k < nmem; ++k)
        if (std::abs(st.members[k].front() - out.members[k].back()) > closure_tol)
          throw InputError("paths not composable: stage joint mismatch");
    size_t begin = (s == 0) ? 0 : 1;  // drop duplicate joint sample
    for (size_t i = begin; i < st.samples(); ++i)
      out.t.push_back(share * (s + st.t[i]));
    for (size_t k = 0; k < nmem; ++k)
      for (size_t i = begin; i < st.samples(); ++i)
        out.members[k].push_back(st.members[k][i]);
  }
  out.t.front() = 0.0;
  out.t.back() = 1.0;
  return out;
}

/// Swap geometry: roots i and j trade places along opposite half-turn arcs
/// about their midpoint (elliptical when bulge != 1); every other position
/// holds still. Throws if no bulge scaling yields a collision-free bundle.
inline PathBundle swap_arcs(const std::vector<cplx>& positions, int i, int j,
                            double bulge = 1.0, int samples = 129,
                            int direction = +1,
                            double collision_eps = Tolerances{}.collision) {
  int n = static_cast<int>(positions.size());
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw InputError("swap_arcs: bad indices");
  if (bulge <= 0.0) throw InputError("swap_arcs: bulge must be positive");
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (std::abs(positions[a] - positions[b]) <= collision_eps)
        throw InputError("swap_arcs: positions must be pairwise distinct");

  const cplx mid = 0.5 * (positions[i] + positions[j]);
  const cplx arm = positions[i] - mid;
  const double scalings[] = {1.0, 0.5, 2.0, 0.25, 4.0, 0.125, 8.0, 0.0625, 16.0};

  for (double scale : scalings) {
    double b = bulge * scale;
    PathBundle bun;
    bun.t = uniform_grid(samples);
    bun.members.assign(n, std::vector<cplx>(samples));
    for (int k = 0; k < n; ++k)
      if (k != i && k != j)
        bun.members[k].assign(samples, positions[k]);
    for (int s = 0; s < samples; ++s) {
      double ang = kPi * bun.t[s];
      cplx turn = cplx(std::cos(ang), direction * b * std::sin(ang));
      bun.members[i][s] = mid + arm * turn;
      bun.members[j][s] = mid - arm * turn;
    }
    // endpoints snap exactly so stages chain without drift
    bun.members[i][0] = positions[i];
    bun.members[j][0] = positions[j];
    bun.members[i][samples - 1] = positions[j];
    bun.members[j][samples - 1] = positions[i];

    double min_sep = 1e300;
    for (int a = 0; a < n; ++a)
      for (int c = a + 1; c < n; ++c)
        for (int s = 0; s < samples; ++s)
          min_sep = std::min(min_sep, std::abs(bun.members[a][s] - bun.members[c][s]));
    if (min_sep > collision_eps) return bun;
  }
  throw NumericError("swap geometry infeasible: no collision-free bulge found");
}

}  // namespace arlab
