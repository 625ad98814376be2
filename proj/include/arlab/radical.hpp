#pragma once

#include <cctype>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arlab/monodromy.hpp"
#include "arlab/path.hpp"

namespace arlab {

enum class ExprKind { IntConst, CoeffRef, Add, Sub, Mul, Div, Root };

/// Expression tree over polynomial coefficients built from integers,
/// c0..c_{n-1}, the four arithmetic operations and k-th roots. Immutable;
/// nodes are shared. Nesting depth = max number of Root nodes on any
/// root-to-leaf path (0 = F-function, 1 = G, 2 = H, ...).
class RadicalExpr {
public:
  static RadicalExpr integer(long v) {
    return RadicalExpr(std::make_shared<Node>(Node{ExprKind::IntConst, v, 0, 0, nullptr, nullptr}));
  }
  static RadicalExpr coeff(int index) {
    if (index < 0) throw InputError("coefficient index must be non-negative");
    return RadicalExpr(std::make_shared<Node>(Node{ExprKind::CoeffRef, 0, index, 0, nullptr, nullptr}));
  }
  static RadicalExpr binary(ExprKind kind, RadicalExpr a, RadicalExpr b) {
    return RadicalExpr(std::make_shared<Node>(Node{kind, 0, 0, 0, a.node_, b.node_}));
  }
  static RadicalExpr root(int k, RadicalExpr arg) {
    if (k < 2) throw InputError("root exponent must be at least 2");
    return RadicalExpr(std::make_shared<Node>(Node{ExprKind::Root, 0, 0, k, arg.node_, nullptr}));
  }

  friend RadicalExpr operator+(RadicalExpr a, RadicalExpr b) { return binary(ExprKind::Add, a, b); }
  friend RadicalExpr operator-(RadicalExpr a, RadicalExpr b) { return binary(ExprKind::Sub, a, b); }
  friend RadicalExpr operator*(RadicalExpr a, RadicalExpr b) { return binary(ExprKind::Mul, a, b); }
  friend RadicalExpr operator/(RadicalExpr a, RadicalExpr b) { return binary(ExprKind::Div, a, b); }

  ExprKind kind() const { return node_->kind; }
  long int_value() const { return node_->ivalue; }
  int coeff_index() const { return node_->index; }
  int root_exponent() const { return node_->k; }
  RadicalExpr lhs() const { return RadicalExpr(node_->a); }
  RadicalExpr rhs() const { return RadicalExpr(node_->b); }
  RadicalExpr root_arg() const { return RadicalExpr(node_->a); }

  int depth() const { return depth_of(node_.get()); }
  int root_node_count() const { return roots_of(node_.get()); }
  int max_coeff_index() const { return max_coeff_of(node_.get()); }

  bool equals(const RadicalExpr& o) const { return eq(node_.get(), o.node_.get()); }

  std::string str() const {
    std::ostringstream out;
    print(node_.get(), out, 0, false);
    return out.str();
  }

  static RadicalExpr parse(const std::string& text);

private:
  struct Node {
    ExprKind kind;
    long ivalue;
    int index;
    int k;
    std::shared_ptr<const Node> a, b;
  };

  explicit RadicalExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static int depth_of(const Node* n) {
    switch (n->kind) {
      case ExprKind::IntConst:
      case ExprKind::CoeffRef:
        return 0;
      case ExprKind::Root:
        return 1 + depth_of(n->a.get());
      default:
        return std::max(depth_of(n->a.get()), depth_of(n->b.get()));
    }
  }

  static int roots_of(const Node* n) {
    switch (n->kind) {
      case ExprKind::IntConst:
      case ExprKind::CoeffRef:
        return 0;
      case ExprKind::Root:
        return 1 + roots_of(n->a.get());
      default:
        return roots_of(n->a.get()) + roots_of(n->b.get());
    }
  }

  static int max_coeff_of(const Node* n) {
    switch (n->kind) {
      case ExprKind::IntConst:
        return -1;
      case ExprKind::CoeffRef:
        return n->index;
      case ExprKind::Root:
        return max_coeff_of(n->a.get());
      default:
        return std::max(max_coeff_of(n->a.get()), max_coeff_of(n->b.get()));
    }
  }

  static bool eq(const Node* x, const Node* y) {
    if (x->kind != y->kind) return false;
    switch (x->kind) {
      case ExprKind::IntConst: return x->ivalue == y->ivalue;
      case ExprKind::CoeffRef: return x->index == y->index;
      case ExprKind::Root: return x->k == y->k && eq(x->a.get(), y->a.get());
      default: return eq(x->a.get(), y->a.get()) && eq(x->b.get(), y->b.get());
    }
  }

  static int precedence(ExprKind k) {
    switch (k) {
      case ExprKind::Add:
      case ExprKind::Sub: return 1;
      case ExprKind::Mul:
      case ExprKind::Div: return 2;
      default: return 3;
    }
  }

  static void print(const Node* n, std::ostringstream& out, int parent_prec,
                    bool right_side) {
    switch (n->kind) {
      case ExprKind::IntConst:
        out << n->ivalue;
        return;
      case ExprKind::CoeffRef:
        out << 'c' << n->index;
        return;
      case ExprKind::Root:
        out << "root(" << n->k << ", ";
        print(n->a.get(), out, 0, false);
        out << ')';
        return;
      default: {
        int prec = precedence(n->kind);
        bool parens = prec < parent_prec || (prec == parent_prec && right_side);
        if (parens) out << '(';
        print(n->a.get(), out, prec, false);
        switch (n->kind) {
          case ExprKind::Add: out << " + "; break;
          case ExprKind::Sub: out << " - "; break;
          case ExprKind::Mul: out << " * "; break;
          default: out << " / "; break;
        }
        print(n->b.get(), out, prec, true);
        if (parens) out << ')';
        return;
      }
    }
  }

  std::shared_ptr<const Node> node_;
};

namespace detail {

class ExprParser {
public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  RadicalExpr run() {
    RadicalExpr e = parse_sum();
    skip_ws();
    if (pos_ != s_.size())
      throw InputError("expression parse: trailing input at '" + s_.substr(pos_) + "'");
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  RadicalExpr parse_sum() {
    RadicalExpr e = parse_product();
    while (true) {
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        RadicalExpr r = parse_product();
        e = RadicalExpr::binary(c == '+' ? ExprKind::Add : ExprKind::Sub, e, r);
      } else {
        return e;
      }
    }
  }

  RadicalExpr parse_product() {
    RadicalExpr e = parse_primary();
    while (true) {
      char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        RadicalExpr r = parse_primary();
        e = RadicalExpr::binary(c == '*' ? ExprKind::Mul : ExprKind::Div, e, r);
      } else {
        return e;
      }
    }
  }

  long parse_int() {
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw InputError("expression parse: expected integer");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      v = 10 * v + (s_[pos_++] - '0');
    return neg ? -v : v;
  }

  RadicalExpr parse_primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      RadicalExpr e = parse_sum();
      if (!eat(')')) throw InputError("expression parse: missing ')'");
      return e;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c)))
      return RadicalExpr::integer(parse_int());
    if (c == 'c') {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw InputError("expression parse: expected coefficient index after 'c'");
      int idx = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        idx = 10 * idx + (s_[pos_++] - '0');
      return RadicalExpr::coeff(idx);
    }
    if (c == 'r') {
      static const std::string kw = "root";
      if (s_.compare(pos_, kw.size(), kw) != 0)
        throw InputError("expression parse: unknown token");
      pos_ += kw.size();
      if (!eat('(')) throw InputError("expression parse: expected '(' after root");
      long k = parse_int();
      if (!eat(',')) throw InputError("expression parse: expected ',' in root()");
      RadicalExpr arg = parse_sum();
      if (!eat(')')) throw InputError("expression parse: missing ')' in root()");
      return RadicalExpr::root(static_cast<int>(k), arg);
    }
    throw InputError("expression parse: unexpected input");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline RadicalExpr RadicalExpr::parse(const std::string& text) {
  return detail::ExprParser(text).run();
}

/// Chosen initial branch index, one entry per Root node in depth-first
/// pre-order (the order in which `root(` appears in the printed form).
struct BranchAssignment {
  std::vector<int> branches;
};

inline BranchAssignment zero_branches(const RadicalExpr& e) {
  return BranchAssignment{std::vector<int>(e.root_node_count(), 0)};
}

/// Root exponents in depth-first pre-order; positions match
/// BranchAssignment entries.
inline std::vector<int> root_exponents(const RadicalExpr& e) {
  std::vector<int> exponents;
  auto collect = [&](auto&& self, const RadicalExpr& x) -> void {
    switch (x.kind()) {
      case ExprKind::IntConst:
      case ExprKind::CoeffRef:
        return;
      case ExprKind::Root:
        exponents.push_back(x.root_exponent());
        self(self, x.root_arg());
        return;
      default:
        self(self, x.lhs());
        self(self, x.rhs());
        return;
    }
  };
  collect(collect, e);
  return exponents;
}

/// All branch assignments of an expression, in lexicographic order.
inline std::vector<BranchAssignment> all_branch_assignments(const RadicalExpr& e) {
  std::vector<int> exponents = root_exponents(e);
  std::vector<BranchAssignment> out;
  BranchAssignment cur{std::vector<int>(exponents.size(), 0)};
  while (true) {
    out.push_back(cur);
    int i = static_cast<int>(exponents.size()) - 1;
    while (i >= 0 && cur.branches[i] + 1 == exponents[i]) cur.branches[i--] = 0;
    if (i < 0) break;
    ++cur.branches[i];
  }
  return out;
}

/// One deterministic branch assignment drawn from `seed`; this is the
/// assignment the witness samples when exhaustive enumeration would be
/// too wide.
inline BranchAssignment seeded_assignment(const RadicalExpr& e,
                                          unsigned long seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  BranchAssignment out;
  for (int k : root_exponents(e))
    out.branches.push_back(static_cast<int>(rng() % k));
  return out;
}

namespace detail {

struct EvalCursor {
  const std::vector<int>* branches;
  size_t next = 0;
};

inline cplx eval_node(const RadicalExpr& e, const std::vector<cplx>& coeffs,
                      EvalCursor& cur, double zero_guard) {
  switch (e.kind()) {
    case ExprKind::IntConst:
      return cplx(static_cast<double>(e.int_value()), 0.0);
    case ExprKind::CoeffRef:
      if (e.coeff_index() >= static_cast<int>(coeffs.size()))
        throw InputError("expression refers to coefficient beyond the degree");
      return coeffs[e.coeff_index()];
    case ExprKind::Root: {
      if (cur.next >= cur.branches->size())
        throw InputError("branch assignment does not cover every root node");
      int l = (*cur.branches)[cur.next++];
      cplx v = eval_node(e.root_arg(), coeffs, cur, zero_guard);
      if (std::abs(v) < zero_guard) throw NumericError("root at branch point");
      return kth_root_branch(v, e.root_exponent(), l);
    }
    default: {
      cplx a = eval_node(e.lhs(), coeffs, cur, zero_guard);
      cplx b = eval_node(e.rhs(), coeffs, cur, zero_guard);
      switch (e.kind()) {
        case ExprKind::Add: return a + b;
        case ExprKind::Sub: return a - b;
        case ExprKind::Mul: return a * b;
        default:
          if (std::abs(b) < zero_guard) throw NumericError("division near zero");
          return a / b;
      }
    }
  }
}

}  // namespace detail

/// Single-point evaluation with explicit branch choices.
inline cplx eval_initial(const RadicalExpr& e, const std::vector<cplx>& coeffs,
                         const BranchAssignment& branches,
                         const Tolerances& tol = Tolerances{}) {
  detail::EvalCursor cur{&branches.branches, 0};
  return detail::eval_node(e, coeffs, cur, tol.zero_guard);
}

struct ExprContinuation {
  PathSpec value_path;
  bool returns_to_start = false;
  double closure_error = 0.0;  // absolute |end - start|
  long refinements = 0;
};

namespace detail {

inline std::vector<cplx> continue_node(const RadicalExpr& e,
                                       const PathBundle& coeffs,
                                       EvalCursor& cur, const Tolerances& tol,
                                       long* refinements) {
  size_t m = coeffs.samples();
  switch (e.kind()) {
    case ExprKind::IntConst:
      return std::vector<cplx>(m, cplx(static_cast<double>(e.int_value()), 0.0));
    case ExprKind::CoeffRef:
      if (e.coeff_index() >= static_cast<int>(coeffs.size()))
        throw InputError("expression refers to coefficient beyond the degree");
      return coeffs.members[e.coeff_index()];
    case ExprKind::Root: {
      if (cur.next >= cur.branches->size())
        throw InputError("branch assignment does not cover every root node");
      int l = (*cur.branches)[cur.next++];
      std::vector<cplx> child = continue_node(e.root_arg(), coeffs, cur, tol, refinements);
      int k = e.root_exponent();
      if (std::abs(child.front()) < tol.zero_guard)
        throw NumericError("root at branch point");
      cplx w0 = kth_root_branch(child.front(), k, l);
      PathSpec radicand{coeffs.t, std::move(child), false};
      PathSpec w = continue_kth_root(radicand, k, w0, tol, refinements);
      return std::move(w.v);
    }
    default: {
      std::vector<cplx> a = continue_node(e.lhs(), coeffs, cur, tol, refinements);
      std::vector<cplx> b = continue_node(e.rhs(), coeffs, cur, tol, refinements);
      std::vector<cplx> out(m);
      for (size_t s = 0; s < m; ++s) {
        switch (e.kind()) {
          case ExprKind::Add: out[s] = a[s] + b[s]; break;
          case ExprKind::Sub: out[s] = a[s] - b[s]; break;
          case ExprKind::Mul: out[s] = a[s] * b[s]; break;
          default:
            if (std::abs(b[s]) < tol.zero_guard)
              throw NumericError("division near zero along path");
            out[s] = a[s] / b[s];
        }
      }
      return out;
    }
  }
}

}  // namespace detail

/// Branch-continuous evaluation of an expression along a closed
/// coefficient bundle: arithmetic nodes are evaluated pointwise, every
/// Root node is continued along its (already continued) child path.
inline ExprContinuation continue_expr(const RadicalExpr& e,
                                      const PathBundle& coeff_bundle,
                                      const BranchAssignment& branches,
                                      const Tolerances& tol = Tolerances{}) {
  ExprContinuation out;
  detail::EvalCursor cur{&branches.branches, 0};
  std::vector<cplx> vals =
      detail::continue_node(e, coeff_bundle, cur, tol, &out.refinements);
  out.value_path = PathSpec{coeff_bundle.t, std::move(vals), false};
  out.closure_error = std::abs(out.value_path.end() - out.value_path.start());
  out.returns_to_start =
      out.closure_error <= tol.closure * (1.0 + std::abs(out.value_path.start()));
  out.value_path.closed = out.returns_to_start;
  return out;
}

namespace detail {

// Magnitude audit for generated expressions. The upper bound 1e6 applies
// to every intermediate; the lower bound 1e-6 applies where smallness is
// harmful: radicands, divisors and the values roots produce. Zero-valued
// sums and coefficient leaves (z^n - 1 has mostly zero coefficients) are
// fine as long as nothing divides by them or takes their root.
inline bool audit_eval(const RadicalExpr& e, const std::vector<cplx>& coeffs,
                       EvalCursor& cur, cplx& out) {
  constexpr double lo = 1e-6, hi = 1e6;
  auto in_range = [&](cplx v) {
    double m = std::abs(v);
    return m >= lo && m <= hi;
  };
  switch (e.kind()) {
    case ExprKind::IntConst:
      out = cplx(static_cast<double>(e.int_value()), 0.0);
      return true;
    case ExprKind::CoeffRef: {
      if (e.coeff_index() >= static_cast<int>(coeffs.size())) return false;
      out = coeffs[e.coeff_index()];
      return std::abs(out) <= hi;
    }
    case ExprKind::Root: {
      int l = (*cur.branches)[cur.next++];
      cplx v;
      if (!audit_eval(e.root_arg(), coeffs, cur, v)) return false;
      if (!in_range(v)) return false;
      out = kth_root_branch(v, e.root_exponent(), l);
      return in_range(out);
    }
    default: {
      cplx a, b;
      if (!audit_eval(e.lhs(), coeffs, cur, a)) return false;
      if (!audit_eval(e.rhs(), coeffs, cur, b)) return false;
      switch (e.kind()) {
        case ExprKind::Add: out = a + b; break;
        case ExprKind::Sub: out = a - b; break;
        case ExprKind::Mul: out = a * b; break;
        default:
          if (!in_range(b)) return false;
          out = a / b;
      }
      return std::abs(out) <= hi;
    }
  }
}

}  // namespace detail

/// Deterministic random expression of exact nesting depth `target_depth`
/// over the coefficients of a degree-n polynomial. Root exponents come
/// from {2, 3, 5}, integer constants from -9..9 without 0. When
/// `audit_coeffs` is non-empty, candidates are rejected (up to 100 tries)
/// until every intermediate magnitude at that point stays within
/// [1e-6, 1e6] for every branch assignment that the witness would sample.
inline RadicalExpr random_expr(int target_depth, int degree, int size_budget,
                               unsigned long seed,
                               const std::vector<cplx>& audit_coeffs = {}) {
  if (target_depth < 0) throw InputError("expression depth must be non-negative");
  if (degree < 1) throw InputError("expression degree must be positive");
  std::mt19937_64 rng(seed);
  auto pick_int = [&]() -> long {
    long v = 1 + static_cast<long>(rng() % 9);
    return (rng() % 2) ? v : -v;
  };
  auto pick_k = [&]() -> int {
    const int ks[] = {2, 3, 5};
    return ks[rng() % 3];
  };

  // depth-0 arithmetic tree over constants and coefficient references
  auto gen_f = [&](auto&& self, int budget) -> RadicalExpr {
    if (budget <= 1 || rng() % 3 == 0) {
      if (rng() % 2)
        return RadicalExpr::coeff(static_cast<int>(rng() % degree));
      return RadicalExpr::integer(pick_int());
    }
    RadicalExpr a = self(self, budget / 2);
    RadicalExpr b = self(self, budget / 2);
    switch (rng() % 4) {
      case 0: return a + b;
      case 1: return a - b;
      case 2: return a * b;
      default: return a / b;
    }
  };

  auto gen = [&](auto&& self, int d, int budget) -> RadicalExpr {
    if (d == 0) return gen_f(gen_f, budget);
    RadicalExpr core =
        RadicalExpr::root(pick_k(), self(self, d - 1, std::max(1, budget - 2)));
    switch (rng() % 5) {
      case 0: return core;
      case 1: return core + gen_f(gen_f, budget / 3);
      case 2: return gen_f(gen_f, budget / 3) - core;
      case 3: return gen_f(gen_f, budget / 3) * core;
      default: return core + RadicalExpr::integer(pick_int());
    }
  };

  for (int attempt = 0; attempt < 100; ++attempt) {
    RadicalExpr e = gen(gen, target_depth, size_budget);
    if (e.depth() != target_depth) continue;
    if (audit_coeffs.empty()) return e;
    // audit exactly the assignments the witness will run: all of them for
    // narrow expressions, the seeded one otherwise
    std::vector<BranchAssignment> suite;
    if (e.root_node_count() <= 2)
      suite = all_branch_assignments(e);
    else
      suite.push_back(seeded_assignment(e, seed));
    bool ok = true;
    for (const auto& branches : suite) {
      detail::EvalCursor cur{&branches.branches, 0};
      cplx v;
      if (!detail::audit_eval(e, audit_coeffs, cur, v)) {
        ok = false;
        break;
      }
    }
    if (ok) return e;
  }
  throw NumericError("generation failed: no admissible expression after 100 tries");
}

}  // namespace arlab
