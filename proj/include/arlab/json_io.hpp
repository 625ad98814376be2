#pragma once

#include <json.hpp>

#include "arlab/monodromy.hpp"
#include "arlab/path.hpp"
#include "arlab/radical.hpp"
#include "arlab/roots.hpp"
#include "arlab/witness.hpp"

namespace arlab {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// paths and bundles: {"closed": bool, "samples": [[t, re, im], ...]}

inline json path_to_json(const PathSpec& p) {
  json samples = json::array();
  for (size_t i = 0; i < p.size(); ++i)
    samples.push_back({p.t[i], p.v[i].real(), p.v[i].imag()});
  return json{{"closed", p.closed}, {"samples", std::move(samples)}};
}

inline PathSpec path_from_json(const json& j,
                               double closure_tol = Tolerances{}.closure) {
  if (!j.contains("samples") || !j["samples"].is_array())
    throw InputError("path JSON needs a 'samples' array");
  std::vector<double> t;
  std::vector<cplx> v;
  for (const json& s : j["samples"]) {
    if (!s.is_array() || s.size() != 3)
      throw InputError("path sample must be [t, re, im]");
    t.push_back(s[0].get<double>());
    v.emplace_back(s[1].get<double>(), s[2].get<double>());
  }
  PathSpec p = make_path(std::move(t), std::move(v), closure_tol);
  if (j.contains("closed")) p.closed = j["closed"].get<bool>();
  return p;
}

inline json bundle_to_json(const PathBundle& b,
                           double closure_tol = Tolerances{}.closure) {
  json paths = json::array();
  for (size_t k = 0; k < b.size(); ++k)
    paths.push_back(path_to_json(member_path(b, k, closure_tol)));
  return json{{"paths", std::move(paths)}};
}

inline PathBundle bundle_from_json(const json& j,
                                   double closure_tol = Tolerances{}.closure) {
  if (!j.contains("paths") || !j["paths"].is_array() || j["paths"].empty())
    throw InputError("bundle JSON needs a non-empty 'paths' array");
  std::vector<PathSpec> paths;
  for (const json& pj : j["paths"]) paths.push_back(path_from_json(pj, closure_tol));
  return bundle_from_paths(paths);
}

// ---------------------------------------------------------------------------
// polynomials: {"degree": n, "coefficients": [[re, im], ...]} ascending,
// leading coefficient implicit 1

inline json poly_to_json(const PolynomialSpec& p) {
  json coeffs = json::array();
  for (const cplx& c : p.coeffs) coeffs.push_back({c.real(), c.imag()});
  return json{{"degree", p.degree()}, {"coefficients", std::move(coeffs)}};
}

inline PolynomialSpec poly_from_json(const json& j) {
  if (!j.contains("coefficients") || !j["coefficients"].is_array())
    throw InputError("polynomial JSON needs a 'coefficients' array");
  PolynomialSpec p;
  for (const json& c : j["coefficients"]) {
    if (!c.is_array() || c.size() != 2)
      throw InputError("coefficient must be [re, im]");
    p.coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  if (j.contains("degree") && j["degree"].get<int>() != p.degree())
    throw InputError("polynomial JSON degree does not match coefficient count");
  if (p.degree() < 1) throw InputError("polynomial needs degree >= 1");
  return p;
}

// ---------------------------------------------------------------------------
// traces: schema "trace-v1"

inline json tolerances_to_json(const Tolerances& t) {
  return json{{"root_residual", t.root_residual},
              {"closure", t.closure},
              {"collision", t.collision},
              {"zero_guard", t.zero_guard}};
}

inline json trace_to_json(const MonodromyTrace& tr) {
  json j;
  j["schema"] = "trace-v1";
  j["config"] = json{{"tolerances", tolerances_to_json(tr.tol)}};
  j["coefficient_paths"] = bundle_to_json(tr.coeff_paths, tr.tol.closure);
  j["root_paths"] = bundle_to_json(tr.root_paths, tr.tol.closure);
  j["min_separation"] = tr.min_separation;
  j["induced"] = tr.induced.to_cycle_string();
  j["closure_error"] = tr.closure_error;
  j["steps"] = tr.steps;
  j["refinements"] = tr.refinements;
  return j;
}

// ---------------------------------------------------------------------------
// radical expressions: JSON mirrors the tree

inline json expr_to_json(const RadicalExpr& e) {
  switch (e.kind()) {
    case ExprKind::IntConst:
      return json{{"int", e.int_value()}};
    case ExprKind::CoeffRef:
      return json{{"coeff", e.coeff_index()}};
    case ExprKind::Root:
      return json{{"op", "root"}, {"k", e.root_exponent()}, {"arg", expr_to_json(e.root_arg())}};
    default: {
      const char* op = e.kind() == ExprKind::Add   ? "+"
                       : e.kind() == ExprKind::Sub ? "-"
                       : e.kind() == ExprKind::Mul ? "*"
                                                   : "/";
      return json{{"op", op}, {"lhs", expr_to_json(e.lhs())}, {"rhs", expr_to_json(e.rhs())}};
    }
  }
}

inline RadicalExpr expr_from_json(const json& j) {
  if (j.contains("int")) return RadicalExpr::integer(j["int"].get<long>());
  if (j.contains("coeff")) return RadicalExpr::coeff(j["coeff"].get<int>());
  if (!j.contains("op")) throw InputError("expression JSON needs 'int', 'coeff' or 'op'");
  std::string op = j["op"].get<std::string>();
  if (op == "root")
    return RadicalExpr::root(j["k"].get<int>(), expr_from_json(j["arg"]));
  ExprKind kind = op == "+"   ? ExprKind::Add
                  : op == "-" ? ExprKind::Sub
                  : op == "*" ? ExprKind::Mul
                  : op == "/" ? ExprKind::Div
                              : throw InputError("unknown expression op '" + op + "'");
  return RadicalExpr::binary(kind, expr_from_json(j["lhs"]), expr_from_json(j["rhs"]));
}

// ---------------------------------------------------------------------------
// witness reports: schema "witness-v1"

inline json witness_to_json(const WitnessReport& rep, const WitnessConfig& cfg) {
  json j;
  j["schema"] = "witness-v1";
  j["config"] = json{{"degree", cfg.degree},
                     {"commutator_depth", cfg.commutator_depth},
                     {"expression_count", cfg.expression_count},
                     {"expression_max_depth",
                      cfg.expression_max_depth < 0 ? cfg.commutator_depth
                                                   : cfg.expression_max_depth},
                     {"seed", cfg.seed},
                     {"stage_samples", cfg.stage_samples},
                     {"target", cfg.target.str()},
                     {"tolerances", tolerances_to_json(cfg.tol)}};
  j["word"] = rep.word_text;
  j["flattened_word"] = rep.flattened_word;
  j["stage_count"] = rep.stage_count;
  j["induced"] = rep.induced;
  j["word_value"] = rep.target;
  j["induced_matches_target"] = rep.induced_matches_target;
  j["coefficient_closure_error"] = rep.coefficient_closure_error;
  j["trace_steps"] = rep.trace_steps;
  j["trace_refinements"] = rep.trace_refinements;
  json table = json::array();
  for (const ExpressionRecord& r : rep.expressions)
    table.push_back(json{{"expression", r.text},
                         {"depth", r.depth},
                         {"assignments_tested", r.assignments_tested},
                         {"returns_to_start", r.returns_to_start},
                         {"closure_error", r.closure_error},
                         {"relative_error", r.relative_error}});
  j["expressions"] = std::move(table);
  j["max_closure_error_closing"] = rep.max_closure_error_closing;
  j["all_bounded_depth_closed"] = rep.all_bounded_depth_closed;
  j["witness_holds"] = rep.witness_holds;
  return j;
}

}  // namespace arlab
