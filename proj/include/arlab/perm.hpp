#pragma once

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "arlab/common.hpp"

namespace arlab {

/// A permutation of {1..n}, stored as 0-based images: index i maps to
/// images()[i]. Products are read left to right, so compose(a, b) applies
/// a first and then b; with that convention (12)(23) equals (132).
class Permutation {
public:
  explicit Permutation(int degree) : images_(degree) {
    if (degree < 1) throw InputError("permutation degree must be positive");
    std::iota(images_.begin(), images_.end(), 0);
  }

  // images are 0-based and must form a bijection on {0..n-1}
  static Permutation from_images(std::vector<int> images) {
    Permutation p(static_cast<int>(images.size()));
    p.images_ = std::move(images);
    p.check_bijection();
    return p;
  }

  // one cycle in 1-based indices, e.g. {1,2,3} for (123)
  static Permutation from_cycle(int degree, std::initializer_list<int> cyc) {
    return from_cycle(degree, std::vector<int>(cyc));
  }

  static Permutation from_cycle(int degree, const std::vector<int>& cyc) {
    Permutation p(degree);
    p.apply_cycle(cyc);
    p.check_bijection();
    return p;
  }

  int degree() const { return static_cast<int>(images_.size()); }
  const std::vector<int>& images() const { return images_; }

  // 0-based application
  int operator()(int i) const { return images_[i]; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  bool operator==(const Permutation& o) const { return images_ == o.images_; }
  bool operator!=(const Permutation& o) const { return !(*this == o); }
  bool operator<(const Permutation& o) const { return images_ < o.images_; }

  friend Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree())
      throw InputError("compose: degree mismatch (" +
                       std::to_string(a.degree()) + " vs " +
                       std::to_string(b.degree()) + ")");
    std::vector<int> img(a.degree());
    for (int i = 0; i < a.degree(); ++i) img[i] = b.images_[a.images_[i]];
    return from_images(std::move(img));
  }

  friend Permutation inverse(const Permutation& p) {
    std::vector<int> img(p.degree());
    for (int i = 0; i < p.degree(); ++i) img[p.images_[i]] = i;
    return from_images(std::move(img));
  }

  /// [a, b] = a b a^-1 b^-1, applied left to right.
  friend Permutation commutator(const Permutation& a, const Permutation& b) {
    return compose(compose(compose(a, b), inverse(a)), inverse(b));
  }

  /// Disjoint-cycle text form, 1-based, fixed points omitted: "(1 2)(3 4 5)".
  /// The identity prints as "()".
  std::string to_cycle_string() const {
    std::ostringstream out;
    std::vector<bool> seen(degree(), false);
    bool any = false;
    for (int start = 0; start < degree(); ++start) {
      if (seen[start] || images_[start] == start) continue;
      any = true;
      out << '(';
      int cur = start;
      bool first = true;
      do {
        seen[cur] = true;
        if (!first) out << ' ';
        out << (cur + 1);
        first = false;
        cur = images_[cur];
      } while (cur != start);
      out << ')';
    }
    if (!any) return "()";
    return out.str();
  }

  /// Parses the text form produced by to_cycle_string. Cycles that share
  /// indices are composed left to right. Degree must be given explicitly
  /// since fixed points are not written.
  static Permutation parse(int degree, const std::string& text) {
    Permutation result(degree);
    size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    bool any = false;
    while (pos < text.size()) {
      if (text[pos] != '(') throw InputError("cycle parse: expected '(' in \"" + text + "\"");
      ++pos;
      std::vector<int> cyc;
      skip_ws();
      while (pos < text.size() && text[pos] != ')') {
        if (!std::isdigit(static_cast<unsigned char>(text[pos])))
          throw InputError("cycle parse: expected index in \"" + text + "\"");
        int v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          v = 10 * v + (text[pos++] - '0');
        cyc.push_back(v);
        skip_ws();
      }
      if (pos >= text.size()) throw InputError("cycle parse: unterminated cycle");
      ++pos;  // ')'
      if (!cyc.empty()) {
        Permutation c(degree);
        c.apply_cycle(cyc);
        result = compose(result, c);
      }
      any = true;
      skip_ws();
    }
    if (!any) throw InputError("cycle parse: empty input");
    return result;
  }

private:
  void apply_cycle(const std::vector<int>& cyc) {
    if (cyc.size() < 2) throw InputError("cycle must move at least two indices");
    for (size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
      if (from < 1 || from > degree() || to < 1 || to > degree())
        throw InputError("cycle index out of range");
      if (images_[from - 1] != from - 1)
        throw InputError("repeated index inside one cycle");
      images_[from - 1] = to - 1;
    }
  }

  void check_bijection() const {
    std::vector<bool> hit(images_.size(), false);
    for (int v : images_) {
      if (v < 0 || v >= degree() || hit[v])
        throw InputError("images do not form a bijection");
      hit[v] = true;
    }
  }

  std::vector<int> images_;
};

inline Permutation transposition(int degree, int i, int j) {
  return Permutation::from_cycle(degree, {i, j});
}

inline Permutation three_cycle(int degree, int i, int j, int k) {
  return Permutation::from_cycle(degree, {i, j, k});
}

}  // namespace arlab
