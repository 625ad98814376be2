#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arlab/monodromy.hpp"
#include "arlab/radical.hpp"
#include "arlab/solvers.hpp"
#include "arlab/words.hpp"

namespace arlab {

// ---------------------------------------------------------------------------
// realizing words as root-space path stages

struct RealizedWord {
  std::vector<PathBundle> stages;     // chained end-to-start, exactly
  std::vector<cplx> final_positions;  // per label, after the last stage
};

namespace detail {

inline std::vector<cplx> stage_endpoints(const PathBundle& b) {
  std::vector<cplx> out(b.size());
  for (size_t k = 0; k < b.size(); ++k) out[k] = b.members[k].back();
  return out;
}

// The two transpositions on the cycle's own symbols whose left-to-right
// composition equals the 3-cycle; the first match in a fixed enumeration
// keeps the choice deterministic.
inline std::pair<std::pair<int, int>, std::pair<int, int>>
transposition_pair_for(const std::vector<int>& cyc, int degree) {
  std::vector<int> s = cyc;
  std::sort(s.begin(), s.end());
  const std::pair<int, int> cands[3] = {
      {s[0], s[1]}, {s[0], s[2]}, {s[1], s[2]}};
  Permutation target = Permutation::from_cycle(degree, cyc);
  for (const auto& t1 : cands)
    for (const auto& t2 : cands) {
      if (t1 == t2) continue;
      if (compose(transposition(degree, t1.first, t1.second),
                  transposition(degree, t2.first, t2.second)) == target)
        return {t1, t2};
    }
  throw InputError("no transposition pair realizes the cycle");  // unreachable
}

struct RealizeContext {
  int degree;
  int samples;
  double bulge;
  Tolerances tol;
};

// one transposition stage from the current labeled positions (1-based i, j)
inline PathBundle swap_stage(std::vector<cplx>& positions, int i, int j,
                             const RealizeContext& ctx) {
  PathBundle stage = swap_arcs(positions, i - 1, j - 1, ctx.bulge, ctx.samples,
                               +1, ctx.tol.collision);
  positions = stage_endpoints(stage);
  return stage;
}

// Replays a block of stages backwards: bundles reversed in order and in
// time, members relabeled so each label's path starts where that label
// currently sits. The configuration (as a multiset trajectory) is exactly
// the forward block reversed, which is what makes winding contributions
// cancel pairwise in a commutator.
inline std::vector<PathBundle> inverse_block(const std::vector<PathBundle>& block,
                                             std::vector<cplx>& positions) {
  std::vector<PathBundle> out;
  for (auto it = block.rbegin(); it != block.rend(); ++it) {
    PathBundle rev_bundle = reverse(*it);
    PathBundle relabeled;
    relabeled.t = rev_bundle.t;
    relabeled.members.resize(rev_bundle.size());
    std::vector<bool> taken(rev_bundle.size(), false);
    for (size_t r = 0; r < positions.size(); ++r) {
      int hit = -1;
      for (size_t m = 0; m < rev_bundle.size(); ++m) {
        if (taken[m]) continue;
        if (rev_bundle.members[m].front() == positions[r]) {
          hit = static_cast<int>(m);
          break;
        }
      }
      if (hit < 0)
        throw NumericError("inverse stage does not chain to the current positions");
      taken[hit] = true;
      relabeled.members[r] = std::move(rev_bundle.members[hit]);
    }
    positions = stage_endpoints(relabeled);
    out.push_back(std::move(relabeled));
  }
  return out;
}

// Emits stages whose net effect is the word's value (inverted when asked).
//
// A commutator [x, y] is realized as four blocks: X, Y~, rev(X), rev(Y~),
// where Y~ realizes y^-1 and rev(.) replays a block's paths backwards with
// labels following continuity. Replaying a block backwards after other
// moves conjugates its arrival permutation, and the four blocks compose to
// [alpha, beta^-1] for block values alpha, beta; realizing the right child
// inverted therefore yields exactly [x, y]. The reversal structure is what
// matters downstream: the configuration retraces, so every symmetric
// function's loop is gamma1 gamma2 gamma1^-1 gamma2^-1 and winding
// contributions cancel pairwise.
inline void realize_into(const CommutatorWord& w, bool inverted,
                         std::vector<cplx>& positions,
                         const RealizeContext& ctx, std::vector<PathBundle>& out) {
  if (w.is_leaf()) {
    SignedCycle c = inverted ? w.leaf_cycle().inverse() : w.leaf_cycle();
    std::vector<int> cyc = c.effective_indices();
    for (int idx : cyc)
      if (idx < 1 || idx > ctx.degree)
        throw InputError("word index exceeds the number of roots");
    if (cyc.size() == 2) {
      out.push_back(swap_stage(positions, cyc[0], cyc[1], ctx));
    } else {
      auto [t1, t2] = transposition_pair_for(cyc, ctx.degree);
      out.push_back(swap_stage(positions, t1.first, t1.second, ctx));
      out.push_back(swap_stage(positions, t2.first, t2.second, ctx));
    }
    return;
  }
  // [x, y]^-1 = [y, x], so inversion just swaps the children
  CommutatorWord first = inverted ? w.right() : w.left();
  CommutatorWord second = inverted ? w.left() : w.right();

  size_t begin = out.size();
  realize_into(first, false, positions, ctx, out);
  size_t mid = out.size();
  realize_into(second, true, positions, ctx, out);

  std::vector<PathBundle> block_a(out.begin() + begin, out.begin() + mid);
  std::vector<PathBundle> block_b(out.begin() + mid, out.end());
  for (PathBundle& b : inverse_block(block_a, positions)) out.push_back(std::move(b));
  for (PathBundle& b : inverse_block(block_b, positions)) out.push_back(std::move(b));
}

}  // namespace detail

/// Turns a commutator word into a chain of swap-arc stages on the given
/// root positions. A 3-cycle leaf costs two transposition stages, so a
/// fully expanded depth-N word yields 2 * 4^N stages. Commutator halves
/// are realized as exact path reversals of their forward blocks.
inline RealizedWord realize_word(const CommutatorWord& word,
                                 const std::vector<cplx>& positions,
                                 int stage_samples = 129, double bulge = 1.0,
                                 const Tolerances& tol = Tolerances{}) {
  detail::RealizeContext ctx{static_cast<int>(positions.size()), stage_samples,
                             bulge, tol};
  RealizedWord out;
  out.final_positions = positions;
  detail::realize_into(word, false, out.final_positions, ctx, out.stages);
  return out;
}

/// Smallest distance of any root to the origin across all stages. Roots
/// passing through 0 zero out c_0 and break radicands built on it.
inline double origin_clearance(const RealizedWord& rw) {
  double m = 1e300;
  for (const PathBundle& st : rw.stages)
    for (const auto& member : st.members)
      for (const cplx& z : member) m = std::min(m, std::abs(z));
  return m;
}

/// realize_word with the bulge retried over a few scalings until every
/// root keeps a healthy distance from the origin; the best attempt wins.
inline RealizedWord realize_word_clear_of_origin(
    const CommutatorWord& word, const std::vector<cplx>& positions,
    int stage_samples = 129, double bulge = 1.0,
    const Tolerances& tol = Tolerances{}) {
  double min_start = 1e300;
  for (const cplx& p : positions) min_start = std::min(min_start, std::abs(p));
  const double target = std::min(0.05, 0.5 * min_start);

  RealizedWord best;
  double best_clearance = -1.0;
  for (double scale : {1.0, 1.25, 0.75, 1.5, 0.5}) {
    RealizedWord cand = realize_word(word, positions, stage_samples,
                                     bulge * scale, tol);
    double c = origin_clearance(cand);
    if (c > best_clearance) {
      best_clearance = c;
      best = std::move(cand);
    }
    if (best_clearance >= target) break;
  }
  return best;
}

/// Realizes a bare permutation as a sequence of transposition stages
/// (cycle decomposition, no commutator structure).
inline RealizedWord realize_permutation(const Permutation& p,
                                        const std::vector<cplx>& positions,
                                        int stage_samples = 129,
                                        double bulge = 1.0,
                                        const Tolerances& tol = Tolerances{}) {
  detail::RealizeContext ctx{static_cast<int>(positions.size()), stage_samples,
                             bulge, tol};
  RealizedWord out;
  out.final_positions = positions;
  std::vector<bool> seen(p.degree(), false);
  for (int start = 0; start < p.degree(); ++start) {
    if (seen[start] || p(start) == start) continue;
    std::vector<int> cyc;
    int cur = start;
    do {
      seen[cur] = true;
      cyc.push_back(cur + 1);
      cur = p(cur);
    } while (cur != start);
    for (size_t i = 1; i < cyc.size(); ++i)
      out.stages.push_back(
          detail::swap_stage(out.final_positions, cyc[0], cyc[i], ctx));
  }
  return out;
}

// ---------------------------------------------------------------------------
// historical word builders (the table rows)

/// [(ij),(jk)] = (ijk): one commutator of transpositions, needs 3 symbols.
inline CommutatorWord single_commutator_word(int i, int j, int k) {
  return CommutatorWord::bracket(CommutatorWord::leaf(SignedCycle({i, j})),
                                 CommutatorWord::leaf(SignedCycle({j, k})));
}

/// [[(12),(23)],[(23),(34)]] = (14)(23): commutator of commutators of
/// transpositions, needs 4 symbols.
inline CommutatorWord double_commutator_word() {
  return CommutatorWord::bracket(single_commutator_word(1, 2, 3),
                                 single_commutator_word(2, 3, 4));
}

// ---------------------------------------------------------------------------
// witness runs

struct WitnessConfig {
  int degree = 5;
  std::optional<PolynomialSpec> start_poly;  // default: z^n - 1
  SignedCycle target{{1, 2, 3}};
  int commutator_depth = 0;  // N
  int expression_count = 100;
  int expression_max_depth = -1;  // default: N
  int expression_size_budget = 14;
  unsigned long seed = 42;
  int stage_samples = 129;
  double bulge = 1.0;
  Tolerances tol;

  enum class WordKind {
    Auto,              // N = 0 bare leaf; N = 1 tables row; N >= 1 expansion if degree >= 5
    SingleCommutator,  // [(ij),(jk)] on the target 3-cycle
    DoubleCommutator,  // the fixed degree-4 table row
    Expanded           // iterated 5-symbol expansion
  } word_kind = WordKind::Auto;
};

struct ExpressionRecord {
  std::string text;
  int depth = 0;
  int assignments_tested = 0;
  bool returns_to_start = false;  // across every tested assignment
  double closure_error = 0.0;     // worst absolute |end - start|
  double relative_error = 0.0;    // worst |end - start| / (1 + |start|)
};

struct WitnessReport {
  int degree = 0;
  int commutator_depth = 0;
  unsigned long seed = 0;
  std::string word_text;
  std::vector<std::string> flattened_word;
  long stage_count = 0;
  std::string induced;
  std::string target;
  bool induced_matches_target = false;
  std::vector<ExpressionRecord> expressions;
  double max_closure_error_closing = 0.0;
  bool all_bounded_depth_closed = false;  // every expression of depth <= N closed
  bool witness_holds = false;
  double coefficient_closure_error = 0.0;
  long trace_steps = 0;
  long trace_refinements = 0;
};

inline CommutatorWord build_witness_word(const WitnessConfig& cfg) {
  const SignedCycle& c = cfg.target;
  int n = cfg.degree, N = cfg.commutator_depth;
  if (N == 0) return CommutatorWord::leaf(c);
  switch (cfg.word_kind) {
    case WitnessConfig::WordKind::SingleCommutator: {
      if (N != 1) throw InputError("single-commutator word has depth exactly 1");
      std::vector<int> v = c.effective_indices();
      if (v.size() != 3) throw InputError("single-commutator word needs a 3-cycle target");
      return single_commutator_word(v[0], v[1], v[2]);
    }
    case WitnessConfig::WordKind::DoubleCommutator: {
      if (N != 2 || n < 4)
        throw InputError("double-commutator word needs depth 2 and degree >= 4");
      return double_commutator_word();
    }
    case WitnessConfig::WordKind::Expanded:
      return expand_to_depth(c, N, n);
    case WitnessConfig::WordKind::Auto:
    default:
      if (n >= 5) return expand_to_depth(c, N, n);
      if (N == 1 && n >= 3) {
        std::vector<int> v = c.effective_indices();
        if (v.size() == 3) return single_commutator_word(v[0], v[1], v[2]);
      }
      throw InputError(
          "commutator depth over 0 needs degree >= 5 (or depth 1 with a 3-cycle "
          "target on degree >= 3)");
  }
}

namespace detail {

template <typename F>
auto witness_stage(const char* stage, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    throw InputError(std::string("witness stage '") + stage + "': " + e.what());
  } catch (const NumericError& e) {
    throw NumericError(std::string("witness stage '") + stage + "': " + e.what());
  }
}

}  // namespace detail

/// The full pipeline: expand the target to a depth-N word, realize it as
/// swap stages, push through Vieta to one closed coefficient loop, verify
/// the traced permutation, then continue M seeded random expressions and
/// record which return to their starting value.
inline WitnessReport run_witness(const WitnessConfig& cfg) {
  if (cfg.degree < 2) throw InputError("witness needs degree >= 2");
  if (cfg.commutator_depth < 0) throw InputError("commutator depth must be >= 0");
  for (int idx : cfg.target.indices)
    if (idx < 1 || idx > cfg.degree)
      throw InputError("target cycle index exceeds the degree");

  PolynomialSpec start;
  if (cfg.start_poly) {
    start = *cfg.start_poly;
    if (start.degree() != cfg.degree)
      throw InputError("start polynomial degree mismatch");
  } else {
    start.coeffs.assign(cfg.degree, cplx{0, 0});
    start.coeffs[0] = cplx{-1, 0};  // z^n - 1
  }

  WitnessReport rep;
  rep.degree = cfg.degree;
  rep.commutator_depth = cfg.commutator_depth;
  rep.seed = cfg.seed;

  CommutatorWord word =
      detail::witness_stage("build word", [&] { return build_witness_word(cfg); });
  rep.word_text = word.str();
  for (const SignedCycle& c : flatten(word)) rep.flattened_word.push_back(c.str());
  Permutation expected = evaluate_word(word, cfg.degree);
  rep.target = expected.to_cycle_string();

  std::vector<cplx> positions = detail::witness_stage(
      "start roots", [&] { return all_roots(start, cfg.tol.root_residual); });

  RealizedWord realized = detail::witness_stage("realize word", [&] {
    return realize_word_clear_of_origin(word, positions, cfg.stage_samples,
                                        cfg.bulge, cfg.tol);
  });
  rep.stage_count = static_cast<long>(realized.stages.size());

  PathBundle loop = detail::witness_stage("coefficient loop", [&] {
    std::vector<PathBundle> coeff_stages;
    coeff_stages.reserve(realized.stages.size());
    for (const PathBundle& st : realized.stages)
      coeff_stages.push_back(coefficient_paths_from_root_paths(st));
    return concat_bundles(coeff_stages, cfg.tol.closure);
  });

  MonodromyTrace trace = detail::witness_stage(
      "trace roots", [&] { return trace_roots(start, loop, cfg.tol); });
  rep.induced = trace.induced.to_cycle_string();
  rep.induced_matches_target = (trace.induced == expected);
  rep.coefficient_closure_error = trace.closure_error;
  rep.trace_steps = trace.steps;
  rep.trace_refinements = trace.refinements;

  std::vector<cplx> start_coeffs(cfg.degree);
  for (int k = 0; k < cfg.degree; ++k) start_coeffs[k] = loop.members[k][0];

  int max_depth =
      cfg.expression_max_depth < 0 ? cfg.commutator_depth : cfg.expression_max_depth;
  bool all_bounded_closed = true;
  double worst_closing = 0.0;

  for (int i = 0; i < cfg.expression_count; ++i) {
    int d = i % (max_depth + 1);
    unsigned long expr_seed = cfg.seed * 1000003ULL + static_cast<unsigned long>(i);
    RadicalExpr e = detail::witness_stage("generate expressions", [&] {
      return random_expr(d, cfg.degree, cfg.expression_size_budget, expr_seed,
                         start_coeffs);
    });

    std::vector<BranchAssignment> suite;
    if (e.root_node_count() <= 2)
      suite = all_branch_assignments(e);
    else
      suite.push_back(seeded_assignment(e, expr_seed));

    ExpressionRecord rec;
    rec.text = e.str();
    rec.depth = e.depth();
    rec.assignments_tested = static_cast<int>(suite.size());
    rec.returns_to_start = true;
    for (const BranchAssignment& br : suite) {
      ExprContinuation r = detail::witness_stage("continue expressions", [&] {
        return continue_expr(e, loop, br, cfg.tol);
      });
      rec.returns_to_start = rec.returns_to_start && r.returns_to_start;
      rec.closure_error = std::max(rec.closure_error, r.closure_error);
      rec.relative_error = std::max(
          rec.relative_error,
          r.closure_error / (1.0 + std::abs(r.value_path.start())));
    }
    if (rec.returns_to_start)
      worst_closing = std::max(worst_closing, rec.closure_error);
    if (rec.depth <= cfg.commutator_depth && !rec.returns_to_start)
      all_bounded_closed = false;
    rep.expressions.push_back(std::move(rec));
  }

  rep.max_closure_error_closing = worst_closing;
  rep.all_bounded_depth_closed = all_bounded_closed;
  rep.witness_holds = rep.induced_matches_target && all_bounded_closed;
  return rep;
}

// ---------------------------------------------------------------------------
// positive controls: the closed-form expressions really do move

/// The quadratic formula -c1/2 + (1/2) root(2, c1^2 - 4 c0).
inline RadicalExpr quadratic_formula_expr() {
  RadicalExpr zero = RadicalExpr::integer(0);
  RadicalExpr radicand = RadicalExpr::coeff(1) * RadicalExpr::coeff(1) -
                         RadicalExpr::integer(4) * RadicalExpr::coeff(0);
  return zero - RadicalExpr::coeff(1) / RadicalExpr::integer(2) +
         RadicalExpr::root(2, radicand) / RadicalExpr::integer(2);
}

/// Cube-root construction for the general cubic as an expression tree;
/// depth 2 (a root over a root). The discriminant radical appears twice,
/// once under each cube root.
inline RadicalExpr cubic_formula_expr() {
  RadicalExpr zero = RadicalExpr::integer(0);
  RadicalExpr P = RadicalExpr::coeff(1) / RadicalExpr::integer(3) -
                  RadicalExpr::coeff(2) * RadicalExpr::coeff(2) / RadicalExpr::integer(9);
  RadicalExpr Q = RadicalExpr::coeff(0) / RadicalExpr::integer(2) +
                  RadicalExpr::coeff(2) * RadicalExpr::coeff(2) * RadicalExpr::coeff(2) /
                      RadicalExpr::integer(27) -
                  RadicalExpr::coeff(1) * RadicalExpr::coeff(2) / RadicalExpr::integer(6);
  RadicalExpr disc = RadicalExpr::root(2, Q * Q + P * P * P);
  return zero - RadicalExpr::coeff(2) / RadicalExpr::integer(3) +
         RadicalExpr::root(3, zero - Q + disc) +
         RadicalExpr::root(3, zero - Q - disc);
}

struct FormulaControl {
  std::string expression;
  int consistent_assignments = 0;  // assignments whose start value is a root
  bool moved = false;              // every consistent assignment left its start
  bool lands_on_other_root = false;
  double min_closure_error = 0.0;  // smallest move distance observed
};

struct ControlReport {
  WitnessReport quadratic_run;  // degree 2, bare (12), depth-0 suite closes
  FormulaControl quadratic_formula;
  WitnessReport cubic_run;  // degree 3, [(12),(23)], depth-<=1 suite closes
  FormulaControl cubic_formula;
  bool all_hold = false;
};

namespace detail {

inline FormulaControl formula_control(const RadicalExpr& formula,
                                      const PolynomialSpec& start,
                                      const PathBundle& loop,
                                      const Tolerances& tol) {
  FormulaControl out;
  out.expression = formula.str();
  std::vector<cplx> roots = all_roots(start, tol.root_residual);
  std::vector<cplx> start_coeffs(start.degree());
  for (int k = 0; k < start.degree(); ++k) start_coeffs[k] = loop.members[k][0];

  out.moved = true;
  out.lands_on_other_root = true;
  out.min_closure_error = 1e300;
  for (const BranchAssignment& br : all_branch_assignments(formula)) {
    cplx v0 = eval_initial(formula, start_coeffs, br, tol);
    auto near_root = [&](cplx v) -> int {
      for (size_t j = 0; j < roots.size(); ++j)
        if (std::abs(v - roots[j]) <= 1e-6) return static_cast<int>(j);
      return -1;
    };
    int start_idx = near_root(v0);
    if (start_idx < 0) continue;  // inconsistent branch pairing, not a solution
    ++out.consistent_assignments;
    ExprContinuation r = continue_expr(formula, loop, br, tol);
    int end_idx = near_root(r.value_path.end());
    out.moved = out.moved && !r.returns_to_start;
    out.lands_on_other_root =
        out.lands_on_other_root && end_idx >= 0 && end_idx != start_idx;
    out.min_closure_error = std::min(out.min_closure_error, r.closure_error);
  }
  if (out.consistent_assignments == 0) {
    out.moved = false;
    out.lands_on_other_root = false;
    out.min_closure_error = 0.0;
  }
  return out;
}

inline PathBundle witness_loop_for(const WitnessConfig& cfg,
                                   const PolynomialSpec& start) {
  std::vector<cplx> positions = all_roots(start, cfg.tol.root_residual);
  CommutatorWord word = build_witness_word(cfg);
  RealizedWord realized =
      realize_word_clear_of_origin(word, positions, cfg.stage_samples,
                                   cfg.bulge, cfg.tol);
  std::vector<PathBundle> coeff_stages;
  for (const PathBundle& st : realized.stages)
    coeff_stages.push_back(coefficient_paths_from_root_paths(st));
  return concat_bundles(coeff_stages, cfg.tol.closure);
}

}  // namespace detail

/// Runs the two calibration controls: under a bare transposition the
/// quadratic-formula value must move to the other solution, and under a
/// single commutator the cubic-formula value (depth 2) must move to
/// another solution while every depth-<=1 expression closes.
inline ControlReport positive_controls(unsigned long seed = 42,
                                       const Tolerances& tol = Tolerances{}) {
  ControlReport out;

  WitnessConfig quad;
  quad.degree = 2;
  quad.target = SignedCycle({1, 2});
  quad.commutator_depth = 0;
  quad.expression_count = 100;
  quad.seed = seed;
  quad.tol = tol;
  out.quadratic_run = run_witness(quad);
  {
    PolynomialSpec start{{cplx{-1, 0}, cplx{0, 0}}};
    PathBundle loop = detail::witness_loop_for(quad, start);
    out.quadratic_formula =
        detail::formula_control(quadratic_formula_expr(), start, loop, tol);
  }

  WitnessConfig cubic;
  cubic.degree = 3;
  cubic.target = SignedCycle({1, 2, 3});
  cubic.commutator_depth = 1;
  cubic.word_kind = WitnessConfig::WordKind::SingleCommutator;
  cubic.expression_count = 60;
  cubic.seed = seed;
  cubic.tol = tol;
  // z^3 - 2z - 4 = (z - 2)(z^2 + 2z + 2): well-separated roots and a
  // non-degenerate discriminant radical, unlike z^3 - 1 whose formula has
  // a cube root of exactly 0
  cubic.start_poly = PolynomialSpec{{cplx{-4, 0}, cplx{-2, 0}, cplx{0, 0}}};
  out.cubic_run = run_witness(cubic);
  {
    PathBundle loop = detail::witness_loop_for(cubic, *cubic.start_poly);
    out.cubic_formula =
        detail::formula_control(cubic_formula_expr(), *cubic.start_poly, loop, tol);
  }

  out.all_hold = out.quadratic_run.witness_holds &&
                 out.quadratic_formula.moved &&
                 out.quadratic_formula.lands_on_other_root &&
                 out.cubic_run.witness_holds && out.cubic_formula.moved &&
                 out.cubic_formula.lands_on_other_root;
  return out;
}

}  // namespace arlab
