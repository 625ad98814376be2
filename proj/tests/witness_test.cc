#include <gtest/gtest.h>

#include "arlab/witness.hpp"

using namespace arlab;

namespace {

PathBundle loop_of(const RealizedWord& rw, double closure_tol = 1e-9) {
  std::vector<PathBundle> coeff_stages;
  for (const PathBundle& st : rw.stages)
    coeff_stages.push_back(coefficient_paths_from_root_paths(st));
  return concat_bundles(coeff_stages, closure_tol);
}

}  // namespace

TEST(RealizeWord, StageCountsAndChaining) {
  PolynomialSpec start5{{cplx{-1, 0}, 0, 0, 0, 0}};
  std::vector<cplx> pos5 = all_roots(start5);

  RealizedWord bare = realize_word(CommutatorWord::leaf(SignedCycle({1, 2})),
                                   pos5, 65);
  EXPECT_EQ(bare.stages.size(), 1u);

  RealizedWord leaf3 = realize_word(CommutatorWord::leaf(SignedCycle({1, 2, 3})),
                                    pos5, 65);
  EXPECT_EQ(leaf3.stages.size(), 2u);

  RealizedWord depth1 =
      realize_word(expand_to_depth(SignedCycle({1, 2, 3}), 1, 5), pos5, 65);
  EXPECT_EQ(depth1.stages.size(), 8u);

  RealizedWord depth2 =
      realize_word(expand_to_depth(SignedCycle({1, 2, 3}), 2, 5), pos5, 65);
  EXPECT_EQ(depth2.stages.size(), 32u);

  // stages chain end-to-start bitwise
  for (const RealizedWord* rw : {&bare, &leaf3, &depth1, &depth2})
    for (size_t s = 1; s < rw->stages.size(); ++s)
      for (size_t k = 0; k < rw->stages[s].size(); ++k)
        EXPECT_EQ(rw->stages[s].members[k].front(),
                  rw->stages[s - 1].members[k].back());
}

TEST(RealizeWord, NetPositionsMatchWordValue) {
  PolynomialSpec start{{cplx{-1, 0}, 0, 0, 0, 0}};
  std::vector<cplx> pos = all_roots(start);
  for (int n_levels = 0; n_levels <= 2; ++n_levels) {
    CommutatorWord w = expand_to_depth(SignedCycle({1, 2, 3}), n_levels, 5);
    RealizedWord rw = realize_word(w, pos, 65);
    Permutation sigma = evaluate_word(w, 5);
    Permutation inv = inverse(sigma);
    // root r ends on the start slot that sigma sends to r
    for (int r = 0; r < 5; ++r)
      EXPECT_EQ(rw.final_positions[r], pos[inv(r)]) << "levels " << n_levels;
  }
}

TEST(RealizeWord, TraceAgreesWithWordValue) {
  PolynomialSpec start{{cplx{-1, 0}, 0, 0, 0, 0}};
  std::vector<cplx> pos = all_roots(start);
  CommutatorWord w = expand_to_depth(SignedCycle({1, 2, 3}), 1, 5);
  RealizedWord rw = realize_word(w, pos, 129);
  MonodromyTrace tr = trace_roots(start, loop_of(rw));
  EXPECT_EQ(tr.induced, evaluate_word(w, 5));
  EXPECT_EQ(tr.closure_error, 0.0);  // snapped stages close bitwise
}

TEST(RealizeWord, PermutationDecomposition) {
  PolynomialSpec start{{cplx{-1, 0}, 0, 0, 0}};
  std::vector<cplx> pos = all_roots(start);
  Permutation p = Permutation::parse(4, "(1 2 3 4)");
  RealizedWord rw = realize_permutation(p, pos, 129);
  EXPECT_EQ(rw.stages.size(), 3u);
  MonodromyTrace tr = trace_roots(start, loop_of(rw));
  EXPECT_EQ(tr.induced, p);
}

TEST(WitnessWord, BuildersAndErrors) {
  EXPECT_EQ(evaluate_word(single_commutator_word(1, 2, 3), 3),
            three_cycle(3, 1, 2, 3));
  EXPECT_EQ(evaluate_word(double_commutator_word(), 4),
            Permutation::parse(4, "(1 4)(2 3)"));
  EXPECT_EQ(double_commutator_word().depth(), 2);

  WitnessConfig bad;
  bad.degree = 4;
  bad.commutator_depth = 1;
  bad.target = SignedCycle({1, 2});
  EXPECT_THROW(build_witness_word(bad), InputError);

  bad.word_kind = WitnessConfig::WordKind::Expanded;
  EXPECT_THROW(build_witness_word(bad), InputError);
}

TEST(Witness, QuadraticFirstImpossibility) {
  WitnessConfig cfg;
  cfg.degree = 2;
  cfg.target = SignedCycle({1, 2});
  cfg.commutator_depth = 0;
  cfg.expression_count = 30;
  cfg.seed = 7;
  WitnessReport rep = run_witness(cfg);
  EXPECT_EQ(rep.induced, "(1 2)");
  EXPECT_TRUE(rep.induced_matches_target);
  EXPECT_TRUE(rep.all_bounded_depth_closed);
  EXPECT_TRUE(rep.witness_holds);
  EXPECT_EQ(rep.stage_count, 1);
  for (const auto& rec : rep.expressions) {
    EXPECT_EQ(rec.depth, 0);
    EXPECT_TRUE(rec.returns_to_start);
    EXPECT_LT(rec.relative_error, 1e-9);
  }
}

TEST(Witness, CubicSingleCommutatorClosesDepthOne) {
  WitnessConfig cfg;
  cfg.degree = 3;
  cfg.target = SignedCycle({1, 2, 3});
  cfg.commutator_depth = 1;
  cfg.expression_count = 24;
  cfg.seed = 11;
  WitnessReport rep = run_witness(cfg);
  EXPECT_EQ(rep.induced, "(1 2 3)");
  EXPECT_EQ(rep.stage_count, 4);  // four transposition stages
  EXPECT_TRUE(rep.witness_holds);
  for (const auto& rec : rep.expressions)
    EXPECT_TRUE(rec.returns_to_start) << rec.text;
}

TEST(Witness, QuadraticRadicalClosesOnCommutatorLoop) {
  // the same radical that refuses to close under a bare swap does close
  // once the 3-cycle is driven as a commutator
  PolynomialSpec start{{cplx{-1, 0}, 0, 0}};
  std::vector<cplx> pos = all_roots(start);
  RealizedWord rw =
      realize_word_clear_of_origin(single_commutator_word(1, 2, 3), pos, 129);
  PathBundle loop = loop_of(rw);
  RadicalExpr radical =
      RadicalExpr::root(2, RadicalExpr::coeff(1) * RadicalExpr::coeff(1) -
                               RadicalExpr::integer(4) * RadicalExpr::coeff(0));
  for (const auto& br : all_branch_assignments(radical)) {
    ExprContinuation r = continue_expr(radical, loop, br);
    EXPECT_TRUE(r.returns_to_start);
    EXPECT_LT(r.closure_error, 1e-9);
  }
}

TEST(Witness, DegreeSixUsesTwoSmallestSpareIndices) {
  WitnessConfig cfg;
  cfg.degree = 6;
  cfg.commutator_depth = 1;
  cfg.expression_count = 10;
  cfg.seed = 29;
  WitnessReport rep = run_witness(cfg);
  EXPECT_EQ(rep.word_text, "[(4 1 2),(2 5 3)]");  // spares of (1 2 3) are 4, 5
  EXPECT_EQ(rep.induced, "(1 2 3)");
  EXPECT_TRUE(rep.witness_holds);
}

TEST(Witness, QuarticDoubleCommutatorClosesDepthTwo) {
  WitnessConfig cfg;
  cfg.degree = 4;
  cfg.commutator_depth = 2;
  cfg.word_kind = WitnessConfig::WordKind::DoubleCommutator;
  cfg.expression_count = 24;
  cfg.seed = 13;
  WitnessReport rep = run_witness(cfg);
  EXPECT_EQ(rep.induced, "(1 4)(2 3)");
  EXPECT_EQ(rep.stage_count, 16);
  EXPECT_TRUE(rep.witness_holds);
}

TEST(Witness, QuinticExpandedDepthOne) {
  WitnessConfig cfg;
  cfg.degree = 5;
  cfg.commutator_depth = 1;
  cfg.expression_count = 15;
  cfg.seed = 17;
  WitnessReport rep = run_witness(cfg);
  EXPECT_EQ(rep.word_text, "[(4 1 2),(2 5 3)]");
  EXPECT_EQ(rep.induced, "(1 2 3)");
  EXPECT_EQ(rep.stage_count, 8);
  EXPECT_TRUE(rep.witness_holds);
}

TEST(Witness, DeterministicReports) {
  WitnessConfig cfg;
  cfg.degree = 3;
  cfg.commutator_depth = 1;
  cfg.expression_count = 10;
  cfg.seed = 23;
  WitnessReport a = run_witness(cfg);
  WitnessReport b = run_witness(cfg);
  ASSERT_EQ(a.expressions.size(), b.expressions.size());
  for (size_t i = 0; i < a.expressions.size(); ++i) {
    EXPECT_EQ(a.expressions[i].text, b.expressions[i].text);
    EXPECT_EQ(a.expressions[i].closure_error, b.expressions[i].closure_error);
  }
  EXPECT_EQ(a.induced, b.induced);
}

TEST(Controls, QuadraticAndCubicFormulasMove) {
  ControlReport rep = positive_controls(42);
  EXPECT_TRUE(rep.quadratic_run.witness_holds);
  EXPECT_GT(rep.quadratic_formula.consistent_assignments, 0);
  EXPECT_TRUE(rep.quadratic_formula.moved);
  EXPECT_TRUE(rep.quadratic_formula.lands_on_other_root);
  EXPECT_GT(rep.quadratic_formula.min_closure_error, 1.0);

  EXPECT_TRUE(rep.cubic_run.witness_holds);
  EXPECT_GT(rep.cubic_formula.consistent_assignments, 0);
  EXPECT_TRUE(rep.cubic_formula.moved);
  EXPECT_TRUE(rep.cubic_formula.lands_on_other_root);
  EXPECT_TRUE(rep.all_hold);
}
