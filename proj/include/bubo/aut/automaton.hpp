#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "acceptance.hpp"
#include "label.hpp"
#include "scc.hpp"

namespace bubo {

/// Omega-automaton with transition-based Emerson-Lei acceptance.  Labels
/// are Boolean functions over the automaton's proposition list; colors live
/// on edges.  The `deterministic` and `complete` flags are derived data and
/// can always be recomputed with `recompute_flags`.
struct automaton {
  struct edge {
    label lab;
    color_set colors = 0;
    unsigned dst = 0;

    friend bool operator==(const edge&, const edge&) = default;
  };

  std::vector<std::string> aps;
  unsigned initial = 0;
  std::vector<std::vector<edge>> states;
  acceptance acc = acceptance::tt(0);
  bool deterministic = false;
  bool complete = false;

  unsigned num_states() const { return unsigned(states.size()); }

  unsigned add_state() {
    states.emplace_back();
    return unsigned(states.size() - 1);
  }

  void add_edge(unsigned src, label lab, color_set colors, unsigned dst) {
    if (src >= states.size() || dst >= states.size())
      throw std::out_of_range("automaton::add_edge: state out of range");
    if (lab.is_false())
      return;
    states[src].push_back(edge{std::move(lab), colors, dst});
  }

  uint32_t ap_mask() const {
    return aps.size() >= 32 ? ~uint32_t(0) : (uint32_t(1) << aps.size()) - 1;
  }

  unsigned ap_index(const std::string& name) const {
    for (size_t i = 0; i < aps.size(); ++i)
      if (aps[i] == name)
        return unsigned(i);
    throw std::out_of_range("automaton: unknown proposition '" + name + "'");
  }

  size_t num_edges() const {
    size_t n = 0;
    for (const auto& es : states)
      n += es.size();
    return n;
  }

  color_set edge_colors_used() const {
    color_set s = 0;
    for (const auto& es : states)
      for (const edge& e : es)
        s |= e.colors;
    return s;
  }

  bool compute_deterministic() const {
    for (const auto& es : states)
      for (size_t i = 0; i < es.size(); ++i)
        for (size_t j = i + 1; j < es.size(); ++j)
          if (!(es[i].lab & es[j].lab).is_false())
            return false;
    return true;
  }

  bool compute_complete() const {
    for (const auto& es : states) {
      label u = label::ff();
      for (const edge& e : es)
        u = u | e.lab;
      if (!u.is_true())
        return false;
    }
    return !states.empty();
  }

  void recompute_flags() {
    deterministic = compute_deterministic();
    complete = compute_complete();
  }

  /// Structural sanity: labels stay inside the alphabet, colors inside the
  /// declared color count, flags match the structure.
  void check_invariants() const {
    uint32_t mask = ap_mask();
    color_set cmask = acc.num_colors() >= 32
                          ? ~color_set(0)
                          : (color_set(1) << acc.num_colors()) - 1;
    for (const auto& es : states)
      for (const edge& e : es) {
        if (e.lab.support() & ~mask)
          throw std::logic_error("automaton: label uses undeclared proposition");
        if (e.colors & ~cmask)
          throw std::logic_error("automaton: edge color out of range");
        if (e.dst >= states.size())
          throw std::logic_error("automaton: dangling edge");
      }
    if (initial >= states.size() && !states.empty())
      throw std::logic_error("automaton: initial state out of range");
    if (deterministic != compute_deterministic())
      throw std::logic_error("automaton: stale deterministic flag");
    if (complete != compute_complete())
      throw std::logic_error("automaton: stale complete flag");
  }

  scc_result sccs() const {
    return compute_sccs(num_states(), [&](unsigned s, auto&& cb) {
      for (const edge& e : states[s])
        cb(e.dst);
    });
  }

  std::vector<bool> reachable() const {
    std::vector<bool> seen(num_states(), false);
    if (states.empty())
      return seen;
    std::vector<unsigned> todo{initial};
    seen[initial] = true;
    while (!todo.empty()) {
      unsigned s = todo.back();
      todo.pop_back();
      for (const edge& e : states[s])
        if (!seen[e.dst]) {
          seen[e.dst] = true;
          todo.push_back(e.dst);
        }
    }
    return seen;
  }

  /// Drop unreachable states, renumbering the rest in order.
  void purge_unreachable() {
    std::vector<bool> keep = reachable();
    std::vector<unsigned> remap(num_states(), unsigned(-1));
    unsigned next = 0;
    for (unsigned s = 0; s < num_states(); ++s)
      if (keep[s])
        remap[s] = next++;
    std::vector<std::vector<edge>> new_states(next);
    for (unsigned s = 0; s < num_states(); ++s) {
      if (!keep[s])
        continue;
      for (edge e : states[s]) {
        e.dst = remap[e.dst];
        new_states[remap[s]].push_back(std::move(e));
      }
    }
    states = std::move(new_states);
    initial = remap[initial];
  }
};

} // namespace bubo
