#pragma once

#include <set>
#include <vector>

#include "arlab/perm.hpp"

namespace arlab {

struct SubgroupInfo {
  long order = 0;
  std::vector<Permutation> generators;
};

struct DerivedSeries {
  std::vector<SubgroupInfo> groups;  // S_n first, then successive derived subgroups
  bool solvable = false;             // reached the trivial group
  bool stalled = false;              // hit G' = G with |G| > 1
};

namespace detail {

inline std::set<Permutation> generate_subgroup(const std::vector<Permutation>& gens,
                                               int degree) {
  std::set<Permutation> elems{Permutation(degree)};
  std::vector<Permutation> frontier(elems.begin(), elems.end());
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& e : frontier)
      for (const auto& g : gens) {
        Permutation p = compose(e, g);
        if (elems.insert(p).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return elems;
}

// greedy sift keeps descriptors small: an element joins the generating set
// only if it is not already generated
inline std::vector<Permutation> reduce_generators(const std::set<Permutation>& elems,
                                                  int degree) {
  std::vector<Permutation> gens;
  std::set<Permutation> span{Permutation(degree)};
  for (const auto& e : elems) {
    if (span.count(e)) continue;
    gens.push_back(e);
    span = generate_subgroup(gens, degree);
    if (span.size() == elems.size()) break;
  }
  return gens;
}

}  // namespace detail

/// Derived series of S_n by exhaustive commutator closure, n in 2..5.
/// Reports group orders until the series reaches the trivial group or
/// stalls with G' = G (the stalled order is included once).
inline DerivedSeries derived_series(int n) {
  if (n < 2 || n > 5) throw InputError("enumeration scale exceeded: need 2 <= n <= 5");

  std::vector<Permutation> sym_gens;
  sym_gens.push_back(transposition(n, 1, 2));
  if (n > 2) {
    std::vector<int> full(n);
    for (int i = 0; i < n; ++i) full[i] = i + 1;
    sym_gens.push_back(Permutation::from_cycle(n, full));
  }
  std::set<Permutation> current = detail::generate_subgroup(sym_gens, n);

  DerivedSeries out;
  out.groups.push_back({static_cast<long>(current.size()), sym_gens});

  while (true) {
    std::set<Permutation> comms;
    for (const auto& a : current)
      for (const auto& b : current) comms.insert(commutator(a, b));
    std::vector<Permutation> comm_gens(comms.begin(), comms.end());
    std::set<Permutation> derived = detail::generate_subgroup(comm_gens, n);

    out.groups.push_back({static_cast<long>(derived.size()),
                          detail::reduce_generators(derived, n)});
    if (derived.size() == current.size()) {
      out.stalled = true;
      break;
    }
    if (derived.size() == 1) {
      out.solvable = true;
      break;
    }
    current = std::move(derived);
  }
  return out;
}

}  // namespace arlab
