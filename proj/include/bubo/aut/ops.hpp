#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "automaton.hpp"

namespace bubo {

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Synchronized product.  Colors of `b` are shifted above those of `a`; the
/// acceptance is the conjunction of both, so the product accepts the
/// intersection of the two languages.
inline automaton product(const automaton& a, const automaton& b) {
  if (a.aps != b.aps)
    throw std::invalid_argument("product: different alphabets");
  automaton out;
  out.aps = a.aps;
  unsigned shift = a.acc.num_colors();
  out.acc = acceptance::conj(a.acc, b.acc.shifted(shift, shift + b.acc.num_colors()));

  std::map<std::pair<unsigned, unsigned>, unsigned> ids;
  std::vector<std::pair<unsigned, unsigned>> todo;
  auto lookup = [&](unsigned sa, unsigned sb) {
    auto [it, fresh] = ids.try_emplace({sa, sb}, out.num_states());
    if (fresh) {
      out.add_state();
      todo.push_back({sa, sb});
    }
    return it->second;
  };
  if (a.states.empty() || b.states.empty()) {
    out.add_state();
    out.initial = 0;
    out.recompute_flags();
    return out;
  }
  out.initial = lookup(a.initial, b.initial);
  while (!todo.empty()) {
    auto [sa, sb] = todo.back();
    todo.pop_back();
    unsigned src = ids.at({sa, sb});
    for (const automaton::edge& ea : a.states[sa])
      for (const automaton::edge& eb : b.states[sb]) {
        label l = ea.lab & eb.lab;
        if (l.is_false())
          continue;
        out.add_edge(src, std::move(l), ea.colors | (eb.colors << shift),
                     lookup(ea.dst, eb.dst));
      }
  }
  out.recompute_flags();
  return out;
}

namespace detail {

// Is some color set satisfying `term` realizable by a cycle inside the
// strongly connected component `members` (given as state flags)?
inline bool term_realizable_in_scc(const automaton& a,
                                   const std::vector<bool>& members,
                                   const acceptance::dnf_term& term) {
  // Work on the subgraph of member-internal edges avoiding Fin colors.
  struct sub_edge {
    unsigned src, dst;
    color_set colors;
  };
  std::vector<sub_edge> edges;
  for (unsigned s = 0; s < a.num_states(); ++s) {
    if (!members[s])
      continue;
    for (const automaton::edge& e : a.states[s])
      if (members[e.dst] && (e.colors & term.fin) == 0)
        edges.push_back({s, e.dst, e.colors});
  }
  if (edges.empty())
    return false;
  scc_result sub = compute_sccs(a.num_states(), [&](unsigned s, auto&& cb) {
    for (const sub_edge& e : edges)
      if (e.src == s)
        cb(e.dst);
  });
  // A sub-SCC qualifies if it contains a cycle and its color union covers
  // the Inf requirement.
  std::vector<color_set> colors(sub.count, 0);
  std::vector<bool> has_cycle(sub.count, false);
  for (const sub_edge& e : edges)
    if (sub.id[e.src] == sub.id[e.dst]) {
      colors[sub.id[e.src]] |= e.colors;
      has_cycle[sub.id[e.src]] = true;
    }
  for (unsigned c = 0; c < sub.count; ++c)
    if (has_cycle[c] && (term.inf & ~colors[c]) == 0)
      return true;
  return false;
}

} // namespace detail

/// Language emptiness for arbitrary Emerson-Lei acceptance (exact).  The
/// acceptance formula is put in disjunctive normal form and each disjunct is
/// checked per reachable SCC; exponential in the number of colors, so the
/// color budget is capped at 16.
inline bool is_empty(const automaton& a) {
  if (a.states.empty())
    return true;
  unsigned colors_in_use = 0;
  color_set used = a.acc.used_colors() | a.edge_colors_used();
  for (unsigned c = 0; c < max_colors; ++c)
    if (used >> c & 1)
      colors_in_use = c + 1;
  if (colors_in_use > 16)
    throw budget_error("is_empty: more than 16 colors");
  if (a.acc.is_ff())
    return true;

  std::vector<bool> reach = a.reachable();
  scc_result sccs = a.sccs();
  std::vector<acceptance::dnf_term> terms = a.acc.to_dnf();
  for (unsigned comp = 0; comp < sccs.count; ++comp) {
    std::vector<bool> members(a.num_states(), false);
    bool any = false;
    for (unsigned s = 0; s < a.num_states(); ++s)
      if (reach[s] && sccs.id[s] == comp) {
        members[s] = true;
        any = true;
      }
    if (!any)
      continue;
    for (const acceptance::dnf_term& t : terms)
      if (detail::term_realizable_in_scc(a, members, t))
        return false;
  }
  return true;
}

/// Give every edge at least one color, preserving the language.  Only
/// meaningful for max-odd parity automata; uncolored cycles are accepting
/// under the canonical condition, so uncolored edges become a fresh bottom
/// odd color.
inline automaton colorize_parity(const automaton& a) {
  std::optional<unsigned> k = a.acc.parity_max_odd_size();
  if (!k)
    throw std::invalid_argument("colorize_parity: not max-odd parity");
  bool any_uncolored = false;
  for (const auto& es : a.states)
    for (const automaton::edge& e : es)
      if (e.colors == 0)
        any_uncolored = true;
  if (!any_uncolored && *k > 0)
    return a;
  automaton out = a;
  if (*k == 0) {
    // "f" acceptance: everything rejects; color 0 keeps it that way.
    for (auto& es : out.states)
      for (automaton::edge& e : es)
        e.colors = 1; // color 0
    out.acc = acceptance::parity_max_odd(1);
    return out;
  }
  for (auto& es : out.states)
    for (automaton::edge& e : es)
      e.colors = e.colors == 0 ? color_set(1) << 1 : e.colors << 2;
  out.acc = acceptance::parity_max_odd(*k + 2);
  return out;
}

/// Complement of a deterministic complete max-odd parity automaton: shift
/// every color up by one, flipping the parity of every cycle.
inline automaton complement_parity(const automaton& a) {
  std::optional<unsigned> k = a.acc.parity_max_odd_size();
  if (!k)
    throw std::invalid_argument("complement_parity: acceptance is not "
                                "canonical max-odd parity");
  if (!a.deterministic || !a.complete)
    throw std::invalid_argument(
        "complement_parity: automaton must be deterministic and complete");
  automaton out = colorize_parity(a);
  unsigned kk = out.acc.num_colors();
  for (auto& es : out.states)
    for (automaton::edge& e : es)
      e.colors <<= 1;
  out.acc = acceptance::parity_max_odd(kk + 1);
  return out;
}

/// Complete an automaton by routing missing letters into a rejecting trap.
inline void make_complete_rejecting(automaton& a) {
  if (a.states.empty()) {
    a.add_state();
    a.initial = 0;
  }
  // Find a self-loop color set that no accepting run may settle on.
  std::optional<color_set> trap;
  if (!a.acc.eval(0))
    trap = 0;
  for (unsigned c = 0; !trap && c < a.acc.num_colors(); ++c)
    if (!a.acc.eval(color_set(1) << c))
      trap = color_set(1) << c;
  if (!trap)
    throw std::invalid_argument(
        "make_complete_rejecting: no rejecting self-loop color found");

  unsigned trap_state = unsigned(-1);
  for (unsigned s = 0; s < a.num_states(); ++s) {
    label u = label::ff();
    for (const automaton::edge& e : a.states[s])
      u = u | e.lab;
    label missing = !u;
    if (missing.is_false())
      continue;
    if (trap_state == unsigned(-1)) {
      trap_state = a.add_state();
      a.add_edge(trap_state, label::tt(), *trap, trap_state);
    }
    a.add_edge(s, missing, 0, trap_state);
  }
  a.recompute_flags();
}

/// Membership of the ultimately periodic word prefix . period^w, where each
/// step is a full assignment over the automaton's propositions.
inline bool accepts_lasso(const automaton& a,
                          const std::vector<assignment>& prefix,
                          const std::vector<assignment>& period) {
  if (period.empty())
    throw std::invalid_argument("accepts_lasso: empty period");
  if (!a.deterministic && a.num_states() > 12)
    throw budget_error("accepts_lasso: nondeterministic automaton too large");

  automaton word;
  word.aps = a.aps;
  unsigned p = unsigned(prefix.size()), q = unsigned(period.size());
  for (unsigned i = 0; i < p + q; ++i)
    word.add_state();
  word.initial = 0;
  uint32_t mask = a.ap_mask();
  for (unsigned i = 0; i < p + q; ++i) {
    assignment v = i < p ? prefix[i] : period[i - p];
    unsigned dst = i + 1 < p + q ? i + 1 : p;
    word.add_edge(i, label::of_assignment(v, mask), 0, dst);
  }
  word.acc = acceptance::tt(0);
  word.recompute_flags();
  return !is_empty(product(a, word));
}

} // namespace bubo
