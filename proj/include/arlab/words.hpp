#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "arlab/perm.hpp"

namespace arlab {

/// A transposition or 3-cycle with an orientation flag. The inverse of a
/// flattened word then stays within the same leaf alphabet: (abc)^-1 is
/// stored as (abc) with inverted=true and behaves like (acb).
struct SignedCycle {
  std::vector<int> indices;  // 1-based, size 2 or 3, pairwise distinct
  bool inverted = false;

  SignedCycle(std::initializer_list<int> idx, bool inv = false)
      : indices(idx), inverted(inv) {}
  SignedCycle(std::vector<int> idx, bool inv = false)
      : indices(std::move(idx)), inverted(inv) {}

  SignedCycle inverse() const { return SignedCycle(indices, !inverted); }

  // index order with the orientation applied
  std::vector<int> effective_indices() const {
    std::vector<int> v = indices;
    if (inverted) std::reverse(v.begin(), v.end());
    return v;
  }

  Permutation to_permutation(int degree) const {
    return Permutation::from_cycle(degree, effective_indices());
  }

  bool operator==(const SignedCycle& o) const {
    return indices == o.indices && inverted == o.inverted;
  }

  std::string str() const {
    std::ostringstream out;
    out << '(';
    for (size_t i = 0; i < indices.size(); ++i) {
      if (i) out << ' ';
      out << indices[i];
    }
    out << ')';
    if (inverted) out << "^-1";
    return out.str();
  }
};

/// Commutator word: a binary tree whose leaves are signed cycles and whose
/// internal nodes mean [left, right]. Immutable once built.
class CommutatorWord {
public:
  static CommutatorWord leaf(SignedCycle c) {
    CommutatorWord w;
    w.node_ = std::make_shared<Node>(Node{std::move(c), nullptr, nullptr});
    return w;
  }

  static CommutatorWord bracket(CommutatorWord left, CommutatorWord right) {
    CommutatorWord w;
    w.node_ = std::make_shared<Node>(
        Node{SignedCycle({0, 0}), left.node_, right.node_});
    return w;
  }

  bool is_leaf() const { return node_->left == nullptr; }

  const SignedCycle& leaf_cycle() const {
    if (!is_leaf()) throw InputError("word node is not a leaf");
    return node_->cycle;
  }

  CommutatorWord left() const { return CommutatorWord(node_->left); }
  CommutatorWord right() const { return CommutatorWord(node_->right); }

  /// Number of commutator levels above the deepest leaf.
  int depth() const { return depth_of(node_.get()); }

  std::string str() const { return str_of(node_.get()); }

private:
  struct Node {
    SignedCycle cycle;
    std::shared_ptr<const Node> left, right;
  };

  CommutatorWord() = default;
  explicit CommutatorWord(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static int depth_of(const Node* n) {
    if (!n->left) return 0;
    return 1 + std::max(depth_of(n->left.get()), depth_of(n->right.get()));
  }

  static std::string str_of(const Node* n) {
    if (!n->left) return n->cycle.str();
    return "[" + str_of(n->left.get()) + "," + str_of(n->right.get()) + "]";
  }

  std::shared_ptr<const Node> node_;
};

inline Permutation evaluate_word(const CommutatorWord& w, int degree) {
  if (w.is_leaf()) return w.leaf_cycle().to_permutation(degree);
  return commutator(evaluate_word(w.left(), degree),
                    evaluate_word(w.right(), degree));
}

namespace detail {
inline void flatten_into(const CommutatorWord& w, std::vector<SignedCycle>& out) {
  if (w.is_leaf()) {
    out.push_back(w.leaf_cycle());
    return;
  }
  size_t begin = out.size();
  flatten_into(w.left(), out);
  size_t mid = out.size();
  flatten_into(w.right(), out);
  size_t end = out.size();
  // [a, b] linearizes to a b a^-1 b^-1; a word inverts by reversing the
  // sequence and flipping every orientation flag.
  for (size_t i = mid; i-- > begin;) out.push_back(out[i].inverse());
  for (size_t i = end; i-- > mid;) out.push_back(out[i].inverse());
}
}  // namespace detail

/// Left-to-right sequence of signed cycles whose composition equals the
/// word's value. Length is 4^depth for a full binary word.
inline std::vector<SignedCycle> flatten(const CommutatorWord& w) {
  std::vector<SignedCycle> out;
  detail::flatten_into(w, out);
  return out;
}

inline Permutation evaluate_flat(const std::vector<SignedCycle>& seq, int degree) {
  Permutation p(degree);
  for (const auto& c : seq) p = compose(p, c.to_permutation(degree));
  return p;
}

namespace detail {
// For a target (j k m) picks the two smallest indices unused by the cycle,
// i < l, and forms [(i j k), (k l m)].
inline std::pair<SignedCycle, SignedCycle> split_three_cycle(
    const SignedCycle& c, int degree) {
  if (degree < 5)
    throw InputError("insufficient degree for expansion: need at least 5 symbols");
  std::vector<int> eff = c.effective_indices();
  if (eff.size() != 3) throw InputError("expansion requires a 3-cycle leaf");
  if (eff[0] == eff[1] || eff[1] == eff[2] || eff[0] == eff[2])
    throw InputError("3-cycle indices must be distinct");
  int j = eff[0], k = eff[1], m = eff[2];
  std::vector<int> unused;
  for (int x = 1; x <= degree && unused.size() < 2; ++x)
    if (x != j && x != k && x != m) unused.push_back(x);
  int i = unused[0], l = unused[1];
  return {SignedCycle({i, j, k}), SignedCycle({k, l, m})};
}
}  // namespace detail

/// One expansion step: rewrites a 3-cycle as a commutator of two 3-cycles
/// on five symbols. Requires degree >= 5 because the construction must
/// reach two fresh indices.
inline CommutatorWord expand_three_cycle(const SignedCycle& c, int degree) {
  auto [a, b] = detail::split_three_cycle(c, degree);
  return CommutatorWord::bracket(CommutatorWord::leaf(a),
                                 CommutatorWord::leaf(b));
}

/// Expands a 3-cycle into a word with exactly n_levels nested commutator
/// levels above every leaf. Flattening the result yields 4^n_levels cycles.
inline CommutatorWord expand_to_depth(const SignedCycle& c, int n_levels,
                                      int degree) {
  if (n_levels < 0) throw InputError("expansion depth must be non-negative");
  if (n_levels == 0) return CommutatorWord::leaf(c);
  if (degree < 5)
    throw InputError("insufficient degree for expansion: need at least 5 symbols");
  auto [a, b] = detail::split_three_cycle(c, degree);
  return CommutatorWord::bracket(expand_to_depth(a, n_levels - 1, degree),
                                 expand_to_depth(b, n_levels - 1, degree));
}

}  // namespace arlab
