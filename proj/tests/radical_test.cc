#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arlab/json_io.hpp"
#include "arlab/radical.hpp"

using namespace arlab;

namespace {

RadicalExpr quadratic_radical() {
  // root(2, c1*c1 - 4*c0)
  return RadicalExpr::root(2, RadicalExpr::coeff(1) * RadicalExpr::coeff(1) -
                                  RadicalExpr::integer(4) * RadicalExpr::coeff(0));
}

// (c0, c1) coefficient loop of the quadratic whose roots swap along arcs:
// c0 = -e^{2 i pi t}, c1 = 0
PathBundle quadratic_swap_loop(int samples = 257) {
  PathSpec circle = circle_loop({0, 0}, 1.0, 1, samples);
  PathBundle b;
  b.t = circle.t;
  std::vector<cplx> c0(circle.v.size());
  for (size_t i = 0; i < c0.size(); ++i) c0[i] = -circle.v[i];
  b.members = {c0, std::vector<cplx>(circle.v.size(), cplx{0, 0})};
  return b;
}

}  // namespace

TEST(RadicalExpr, DepthClassification) {
  RadicalExpr f = RadicalExpr::coeff(8) * RadicalExpr::coeff(8) -
                  RadicalExpr::integer(7) * RadicalExpr::coeff(2);
  EXPECT_EQ(f.depth(), 0);

  RadicalExpr g =
      RadicalExpr::integer(0) - RadicalExpr::coeff(5) / RadicalExpr::integer(2) +
      RadicalExpr::root(2, RadicalExpr::coeff(4) * RadicalExpr::coeff(4) -
                               RadicalExpr::integer(4) * RadicalExpr::coeff(1)) /
          RadicalExpr::integer(2);
  EXPECT_EQ(g.depth(), 1);

  RadicalExpr h =
      RadicalExpr::coeff(4) -
      RadicalExpr::root(3, RadicalExpr::integer(7) * RadicalExpr::coeff(2)) +
      RadicalExpr::root(
          5, RadicalExpr::integer(0) - RadicalExpr::coeff(0) / RadicalExpr::integer(2) +
                 RadicalExpr::root(5, RadicalExpr::coeff(1) * RadicalExpr::coeff(1) -
                                          RadicalExpr::integer(4) * RadicalExpr::coeff(6)));
  EXPECT_EQ(h.depth(), 2);
  EXPECT_EQ(RadicalExpr::root(2, RadicalExpr::root(2, RadicalExpr::coeff(0))).depth(), 2);
}

TEST(RadicalExpr, EvalConstantsAndBranches) {
  std::vector<cplx> coeffs{{-1, 0}, {0, 0}};
  EXPECT_EQ(eval_initial(RadicalExpr::integer(1), coeffs, BranchAssignment{}),
            cplx(1, 0));
  RadicalExpr e = quadratic_radical();
  EXPECT_EQ(e.root_node_count(), 1);
  cplx b0 = eval_initial(e, coeffs, BranchAssignment{{0}});
  cplx b1 = eval_initial(e, coeffs, BranchAssignment{{1}});
  EXPECT_NEAR(std::abs(b0 - cplx(2, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(b1 + cplx(2, 0)), 0.0, 1e-12);
}

TEST(RadicalExpr, EvalGuards) {
  std::vector<cplx> coeffs{{0, 0}};
  RadicalExpr div = RadicalExpr::integer(1) / RadicalExpr::coeff(0);
  EXPECT_THROW(eval_initial(div, coeffs, BranchAssignment{}), NumericError);
  RadicalExpr rt = RadicalExpr::root(3, RadicalExpr::coeff(0));
  EXPECT_THROW(eval_initial(rt, coeffs, BranchAssignment{{0}}), NumericError);
}

TEST(RadicalExpr, BranchCovering) {
  std::vector<cplx> coeffs{{2, 1}};
  RadicalExpr e = RadicalExpr::root(3, RadicalExpr::coeff(0));
  auto assignments = all_branch_assignments(e);
  ASSERT_EQ(assignments.size(), 3u);
  std::vector<cplx> vals;
  for (const auto& a : assignments) vals.push_back(eval_initial(e, coeffs, a));
  double mod = std::pow(std::abs(coeffs[0]), 1.0 / 3.0);
  for (const cplx& v : vals) EXPECT_NEAR(std::abs(v), mod, 1e-12);
  // equally spaced arguments, 2 pi / 3 apart on the circle
  for (int l = 0; l < 3; ++l) {
    double diff = std::arg(vals[(l + 1) % 3] / vals[l]);
    EXPECT_NEAR(std::remainder(diff - 2.0 * kPi / 3.0, 2.0 * kPi), 0.0, 1e-12);
  }
}

TEST(RadicalExpr, PrintParseRoundTrip) {
  EXPECT_EQ(quadratic_radical().str(), "root(2, c1 * c1 - 4 * c0)");
  for (const char* text :
       {"c0", "-3", "c1 + 2 * c0", "(c0 + c1) / (c2 - 5)",
        "root(2, c1 * c1 - 4 * c0)", "c0 - (c1 - c2)",
        "root(5, -1 + root(3, c0))"}) {
    RadicalExpr e = RadicalExpr::parse(text);
    EXPECT_EQ(RadicalExpr::parse(e.str()).str(), e.str());
    EXPECT_TRUE(RadicalExpr::parse(e.str()).equals(e));
  }
  std::vector<cplx> audit{{-1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}};
  for (int i = 0; i < 60; ++i) {
    RadicalExpr e = random_expr(i % 4, 5, 14, 9000 + i, audit);
    EXPECT_TRUE(RadicalExpr::parse(e.str()).equals(e)) << e.str();
  }
}

TEST(RadicalExpr, JsonMirrorsTree) {
  std::vector<cplx> audit{{-1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}};
  for (int i = 0; i < 40; ++i) {
    RadicalExpr e = random_expr(i % 4, 5, 14, 7700 + i, audit);
    EXPECT_TRUE(expr_from_json(expr_to_json(e)).equals(e)) << e.str();
  }
  json j = expr_to_json(RadicalExpr::parse("root(2, c1 * c1 - 4 * c0)"));
  EXPECT_EQ(j["op"], "root");
  EXPECT_EQ(j["k"], 2);
  EXPECT_THROW(expr_from_json(json{{"op", "pow"}}), InputError);
}

TEST(RadicalExpr, ParseErrors) {
  EXPECT_THROW(RadicalExpr::parse(""), InputError);
  EXPECT_THROW(RadicalExpr::parse("c"), InputError);
  EXPECT_THROW(RadicalExpr::parse("c0 +"), InputError);
  EXPECT_THROW(RadicalExpr::parse("root(2 c0)"), InputError);
  EXPECT_THROW(RadicalExpr::parse("root(1, c0)"), InputError);
  EXPECT_THROW(RadicalExpr::parse("x + 1"), InputError);
  EXPECT_THROW(RadicalExpr::parse("(c0"), InputError);
}

TEST(ContinueExpr, DepthZeroAlwaysCloses) {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 10; ++rep) {
    // random closed coefficient loops on a shared grid
    PathBundle b;
    int degree = 2 + static_cast<int>(rng() % 3);
    int samples = 129;
    for (int k = 0; k < degree; ++k) {
      cplx center(double(rng() % 7) - 3.0, double(rng() % 7) - 3.0);
      double radius = 0.5 + 0.25 * double(rng() % 4);
      int turns = static_cast<int>(rng() % 3) - 1;
      PathSpec c = circle_loop(center, radius, turns, samples);
      if (k == 0) b.t = c.t;
      b.members.push_back(c.v);
    }
    std::vector<cplx> start(degree);
    for (int k = 0; k < degree; ++k) start[k] = b.members[k][0];
    for (int i = 0; i < 10; ++i) {
      RadicalExpr e = random_expr(0, degree, 12, 100 * rep + i, start);
      ExprContinuation r = continue_expr(e, b, BranchAssignment{});
      EXPECT_TRUE(r.returns_to_start) << e.str();
      EXPECT_EQ(r.closure_error, 0.0);  // loop endpoints are bitwise equal
    }
  }
}

TEST(ContinueExpr, QuadraticRadicalDoesNotCloseOnSwapLoop) {
  PathBundle loop = quadratic_swap_loop();
  ExprContinuation r =
      continue_expr(quadratic_radical(), loop, BranchAssignment{{0}});
  EXPECT_FALSE(r.returns_to_start);
  EXPECT_NEAR(r.closure_error, 4.0, 1e-9);  // 2 moved to -2
  // the value path is 2 e^{i pi t}
  for (size_t s = 0; s < loop.samples(); s += 16) {
    cplx expect = 2.0 * std::exp(cplx(0, kPi * loop.t[s]));
    EXPECT_NEAR(std::abs(r.value_path.v[s] - expect), 0.0, 1e-9);
  }
}

TEST(ContinueExpr, VerdictStableUnderRefinement) {
  PathBundle loop = quadratic_swap_loop(129);
  RadicalExpr e = quadratic_radical();
  ExprContinuation coarse = continue_expr(e, loop, BranchAssignment{{0}});
  ExprContinuation fine = continue_expr(e, refine(loop), BranchAssignment{{0}});
  EXPECT_EQ(coarse.returns_to_start, fine.returns_to_start);
  EXPECT_NEAR(coarse.closure_error, fine.closure_error, 1e-9);

  RadicalExpr f = RadicalExpr::coeff(0) * RadicalExpr::coeff(0) -
                  RadicalExpr::coeff(1);
  EXPECT_TRUE(continue_expr(f, loop, BranchAssignment{}).returns_to_start);
  EXPECT_TRUE(continue_expr(f, refine(loop), BranchAssignment{}).returns_to_start);
}

TEST(RandomExpr, DeterministicAndExactDepth) {
  std::vector<cplx> audit{{-1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}};
  RadicalExpr a = random_expr(0, 5, 12, 42, audit);
  RadicalExpr b = random_expr(0, 5, 12, 42, audit);
  EXPECT_TRUE(a.equals(b));
  EXPECT_EQ(a.str(), b.str());
  for (int d = 0; d <= 3; ++d) {
    RadicalExpr e = random_expr(d, 5, 16, 1234 + d, audit);
    EXPECT_EQ(e.depth(), d);
  }
}

TEST(RandomExpr, AuditedSamplesEvaluateAtWitnessStart) {
  // start coefficients of z^5 - 1
  std::vector<cplx> coeffs{{-1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}};
  for (int i = 0; i < 200; ++i) {
    int d = i % 3;
    RadicalExpr e = random_expr(d, 5, 14, 5000 + i, coeffs);
    EXPECT_EQ(e.depth(), d);
    std::vector<BranchAssignment> suite;
    if (e.root_node_count() <= 2)
      suite = all_branch_assignments(e);
    else
      suite.push_back(seeded_assignment(e, 5000 + i));
    for (const auto& br : suite) {
      cplx v = eval_initial(e, coeffs, br);
      EXPECT_LE(std::abs(v), 1e6);
    }
  }
}
