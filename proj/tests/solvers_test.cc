#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arlab/radical.hpp"
#include "arlab/roots.hpp"
#include "arlab/solvers.hpp"

using namespace arlab;

namespace {

bool multiset_match(std::vector<cplx> got, std::vector<cplx> want, double tol) {
  if (got.size() != want.size()) return false;
  for (const cplx& w : want) {
    double best = 1e300;
    size_t best_i = 0;
    for (size_t i = 0; i < got.size(); ++i) {
      double d = std::abs(got[i] - w);
      if (d < best) best = d, best_i = i;
    }
    if (best > tol) return false;
    got.erase(got.begin() + best_i);
  }
  return true;
}

double rel_residual(const PolynomialSpec& p, cplx r) {
  return std::abs(eval_poly(p, r)) / std::pow(coeff_scale(p), p.degree());
}

cplx rand_c(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double re = u(rng), im = u(rng);
  return {re, im};
}

}  // namespace

TEST(Quadratic, Examples) {
  auto r = solve_quadratic({0, 0}, {-1, 0});
  EXPECT_TRUE(multiset_match({r[0], r[1]}, {cplx(1, 0), cplx(-1, 0)}, 1e-14));
  r = solve_quadratic({-3, 0}, {2, 0});
  EXPECT_TRUE(multiset_match({r[0], r[1]}, {cplx(1, 0), cplx(2, 0)}, 1e-14));
}

TEST(Quadratic, RandomAgainstNumericRoots) {
  std::mt19937 rng(41);
  for (int rep = 0; rep < 100; ++rep) {
    cplx c1 = rand_c(rng), c0 = rand_c(rng);
    PolynomialSpec p{{c0, c1}};
    auto r = solve_quadratic(c1, c0);
    EXPECT_TRUE(multiset_match({r[0], r[1]}, all_roots(p), 1e-8));
    for (const cplx& root : r) EXPECT_LE(std::abs(eval_poly(p, root)),
                                         1e-10 * std::pow(coeff_scale(p), 2));
  }
}

TEST(DepressCubic, Identities) {
  DepressedCubic d = depress_cubic({3, 0}, {3, 0}, {1, 0});
  EXPECT_NEAR(std::abs(d.P), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d.Q), 0.0, 1e-15);

  d = depress_cubic({0, 0}, {2, 1}, {4, -2});
  EXPECT_EQ(d.P, cplx(2, 1) / 3.0);
  EXPECT_EQ(d.Q, cplx(4, -2) / 2.0);

  // roots of the depressed form shifted by -c2/3 equal roots of the original
  std::mt19937 rng(43);
  for (int rep = 0; rep < 20; ++rep) {
    cplx c2 = rand_c(rng), c1 = rand_c(rng), c0 = rand_c(rng);
    DepressedCubic dc = depress_cubic(c2, c1, c0);
    PolynomialSpec depressed{{2.0 * dc.Q, 3.0 * dc.P, {0, 0}}};
    PolynomialSpec original{{c0, c1, c2}};
    std::vector<cplx> shifted;
    for (cplx z : all_roots(depressed)) shifted.push_back(z - c2 / 3.0);
    EXPECT_TRUE(multiset_match(shifted, all_roots(original), 1e-7));
  }
}

TEST(Cubic, UnityAndTripleRoot) {
  CubicSolution s = solve_cubic({0, 0}, {0, 0}, {-1, 0});
  EXPECT_NEAR(std::abs(s.depressed.P), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.depressed.Q - cplx(-0.5, 0)), 0.0, 1e-15);
  std::vector<cplx> unity{{1, 0},
                          {-0.5, std::sqrt(3.0) / 2.0},
                          {-0.5, -std::sqrt(3.0) / 2.0}};
  EXPECT_TRUE(multiset_match({s.roots[0], s.roots[1], s.roots[2]}, unity, 1e-12));

  s = solve_cubic({3, 0}, {3, 0}, {1, 0});
  for (const cplx& r : s.roots) EXPECT_NEAR(std::abs(r - cplx(-1, 0)), 0.0, 1e-12);
}

TEST(Cubic, RandomAgainstNumericRootsWithPairing) {
  std::mt19937 rng(47);
  for (int rep = 0; rep < 100; ++rep) {
    cplx c2 = rand_c(rng), c1 = rand_c(rng), c0 = rand_c(rng);
    PolynomialSpec p{{c0, c1, c2}};
    CubicSolution s = solve_cubic(c2, c1, c0);
    EXPECT_TRUE(multiset_match({s.roots[0], s.roots[1], s.roots[2]},
                               all_roots(p), 1e-8));
    for (const cplx& r : s.roots) EXPECT_LE(rel_residual(p, r), 1e-9);
    for (const auto& [v, w] : s.vw)
      EXPECT_LE(std::abs(v * w + s.depressed.P),
                1e-8 * (1.0 + std::abs(s.depressed.P)));
  }
}

TEST(DepressQuartic, Identities) {
  DepressedQuartic d = depress_quartic({0, 0}, {2, 0}, {3, 0}, {4, 0});
  EXPECT_EQ(d.P, cplx(2, 0));
  EXPECT_EQ(d.Q, cplx(3, 0));
  EXPECT_EQ(d.R, cplx(4, 0));

  // biquadratic: odd terms absent
  d = depress_quartic({0, 0}, {2, 1}, {0, 0}, {-1, 0});
  EXPECT_EQ(d.Q, cplx(0, 0));

  // substitution identity z^4 + ... == Z^4 + P Z^2 + Q Z + R at sample points
  std::mt19937 rng(53);
  for (int rep = 0; rep < 10; ++rep) {
    cplx c3 = rand_c(rng), c2 = rand_c(rng), c1 = rand_c(rng), c0 = rand_c(rng);
    DepressedQuartic q = depress_quartic(c3, c2, c1, c0);
    PolynomialSpec original{{c0, c1, c2, c3}};
    PolynomialSpec depressed{{q.R, q.Q, q.P, {0, 0}}};
    for (int pt = 0; pt < 10; ++pt) {
      cplx z = rand_c(rng);
      cplx lhs = eval_poly(original, z);
      cplx rhs = eval_poly(depressed, z + c3 / 4.0);
      EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::pow(coeff_scale(original), 4) *
                                         (1.0 + std::pow(std::abs(z), 4)));
    }
  }
}

TEST(Resolvent, SelectionAndResidual) {
  // Q = R = 0: condition reduces to (P - 2A) A^2 = 0; picked root is A = 0,
  // recovered at sqrt(eps) accuracy since it is a double root of the cubic
  cplx a = resolvent_root({3, 1}, {0, 0}, {0, 0});
  EXPECT_NEAR(std::abs(a), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(resolvent_root({0, 0}, {0, 0}, {0, 0})), 0.0, 1e-15);

  std::mt19937 rng(59);
  for (int rep = 0; rep < 100; ++rep) {
    cplx P = rand_c(rng), Q = rand_c(rng), R = rand_c(rng);
    cplx A = resolvent_root(P, Q, R);
    cplx residual = 8.0 * A * A * A - 4.0 * P * A * A - 8.0 * R * A +
                    4.0 * P * R - Q * Q;
    double scale = 1.0 + std::abs(P) + std::abs(Q) + std::abs(R);
    EXPECT_LE(std::abs(residual), 1e-9 * scale * scale * scale);
  }
}

TEST(Quartic, FourthRootsOfUnityAndFactoredForm) {
  auto r = solve_quartic({0, 0}, {0, 0}, {0, 0}, {-1, 0});
  EXPECT_TRUE(multiset_match({r[0], r[1], r[2], r[3]},
                             {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)},
                             1e-10));
  // (z^2 - 1)(z^2 - 4) = z^4 - 5 z^2 + 4
  r = solve_quartic({0, 0}, {-5, 0}, {0, 0}, {4, 0});
  EXPECT_TRUE(multiset_match({r[0], r[1], r[2], r[3]},
                             {cplx(1, 0), cplx(-1, 0), cplx(2, 0), cplx(-2, 0)},
                             1e-10));
}

TEST(Quartic, RandomAgainstNumericRoots) {
  std::mt19937 rng(61);
  for (int rep = 0; rep < 100; ++rep) {
    cplx c3 = rand_c(rng), c2 = rand_c(rng), c1 = rand_c(rng), c0 = rand_c(rng);
    PolynomialSpec p{{c0, c1, c2, c3}};
    auto r = solve_quartic(c3, c2, c1, c0);
    EXPECT_TRUE(multiset_match({r[0], r[1], r[2], r[3]}, all_roots(p), 1e-8));
    for (const cplx& root : r) EXPECT_LE(rel_residual(p, root), 1e-8);
  }
}

TEST(NestingDepthAudit, FormulaTrees) {
  // the cubic formula as an ingredient-tower expression: two nested levels
  RadicalExpr P = RadicalExpr::coeff(1) / RadicalExpr::integer(3) -
                  RadicalExpr::coeff(2) * RadicalExpr::coeff(2) / RadicalExpr::integer(9);
  RadicalExpr Q = RadicalExpr::coeff(0) / RadicalExpr::integer(2) +
                  RadicalExpr::coeff(2) * RadicalExpr::coeff(2) * RadicalExpr::coeff(2) /
                      RadicalExpr::integer(27) -
                  RadicalExpr::coeff(1) * RadicalExpr::coeff(2) / RadicalExpr::integer(6);
  RadicalExpr disc = RadicalExpr::root(2, Q * Q + P * P * P);
  RadicalExpr zero = RadicalExpr::integer(0);
  RadicalExpr formula = zero - RadicalExpr::coeff(2) / RadicalExpr::integer(3) +
                        RadicalExpr::root(3, zero - Q + disc) +
                        RadicalExpr::root(3, zero - Q - disc);
  EXPECT_EQ(P.depth(), 0);
  EXPECT_EQ(disc.depth(), 1);
  EXPECT_EQ(formula.depth(), 2);
  // one more radical over an H-function gives the quartic's three levels
  EXPECT_EQ(RadicalExpr::root(2, formula).depth(), 3);
}
