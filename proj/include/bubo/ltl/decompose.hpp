#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "formula.hpp"
#include "partition.hpp"

namespace bubo {

/// One component of a decomposed specification: a conjunction of the
/// original conjuncts whose output variables are disjoint from every other
/// component's.
struct sub_specification {
  formula f;
  std::vector<std::string> outputs; // subset of the partition's outputs
};

namespace detail {

inline void flatten_and(const formula& f, std::vector<formula>& out) {
  if (f.is(op::and_)) {
    flatten_and(f.child(0), out);
    flatten_and(f.child(1), out);
    return;
  }
  out.push_back(f);
}

inline formula rebuild_and(const std::vector<formula>& cs) {
  formula acc = cs.front();
  for (size_t i = 1; i < cs.size(); ++i)
    acc = formula::and_(acc, cs[i]);
  return acc;
}

} // namespace detail

/// Split a specification into sub-specifications with pairwise disjoint
/// output variables.  Conjuncts are grouped by the connected components of
/// the shared-output relation; conjuncts without any output variable join
/// the first group so their constraint is not lost.
inline std::vector<sub_specification> decompose(const formula& f,
                                                const signal_partition& p) {
  p.check_covers(f);
  std::vector<formula> conjuncts;
  detail::flatten_and(f, conjuncts);

  size_t n = conjuncts.size();
  std::vector<std::vector<std::string>> outs(n);
  for (size_t i = 0; i < n; ++i)
    for (const std::string& a : conjuncts[i].aps())
      if (p.is_output(a))
        outs[i].push_back(a);

  // Union-find over conjuncts sharing an output variable.
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](size_t a, size_t b) { parent[find(a)] = find(b); };

  for (const std::string& o : p.outputs) {
    size_t first = n;
    for (size_t i = 0; i < n; ++i) {
      bool has = std::find(outs[i].begin(), outs[i].end(), o) != outs[i].end();
      if (!has)
        continue;
      if (first == n)
        first = i;
      else
        unite(first, i);
    }
  }

  // Conjuncts with no outputs attach to the first output-bearing conjunct.
  size_t anchor = n;
  for (size_t i = 0; i < n; ++i)
    if (!outs[i].empty()) {
      anchor = i;
      break;
    }
  if (anchor != n)
    for (size_t i = 0; i < n; ++i)
      if (outs[i].empty())
        unite(i, anchor);

  // Emit components in order of first conjunct appearance.
  std::vector<sub_specification> result;
  std::vector<size_t> root_component(n, size_t(-1));
  for (size_t i = 0; i < n; ++i) {
    size_t r = find(i);
    if (root_component[r] == size_t(-1)) {
      root_component[r] = result.size();
      result.push_back({});
    }
    sub_specification& sub = result[root_component[r]];
    if (sub.f)
      sub.f = formula::and_(sub.f, conjuncts[i]);
    else
      sub.f = conjuncts[i];
    for (const std::string& o : outs[i])
      if (std::find(sub.outputs.begin(), sub.outputs.end(), o) ==
          sub.outputs.end())
        sub.outputs.push_back(o);
  }
  return result;
}

} // namespace bubo
