#pragma once

#include <cstdint>
#include <vector>

namespace bubo {

/// Strongly connected components.  Component ids are in reverse topological
/// order: every edge between distinct components goes from a higher id to a
/// lower id (sinks get the smallest ids).
struct scc_result {
  std::vector<unsigned> id; // per state
  unsigned count = 0;
};

/// `succ(s, cb)` must invoke `cb(t)` for every successor t of s.
template <typename Succ>
scc_result compute_sccs(unsigned num_states, Succ&& succ) {
  scc_result res;
  res.id.assign(num_states, unsigned(-1));

  constexpr unsigned undef = unsigned(-1);
  std::vector<unsigned> index(num_states, undef), low(num_states, 0);
  std::vector<bool> on_stack(num_states, false);
  std::vector<unsigned> stack;
  unsigned next_index = 0;

  // Iterative Tarjan; frame = (state, position into its successor list).
  struct frame {
    unsigned state;
    std::vector<unsigned> succs;
    size_t next = 0;
  };

  for (unsigned root = 0; root < num_states; ++root) {
    if (index[root] != undef)
      continue;
    std::vector<frame> work;
    auto push_state = [&](unsigned s) {
      index[s] = low[s] = next_index++;
      stack.push_back(s);
      on_stack[s] = true;
      frame f{s, {}, 0};
      succ(s, [&](unsigned t) { f.succs.push_back(t); });
      work.push_back(std::move(f));
    };
    push_state(root);
    while (!work.empty()) {
      frame& f = work.back();
      if (f.next < f.succs.size()) {
        unsigned t = f.succs[f.next++];
        if (index[t] == undef) {
          push_state(t);
        } else if (on_stack[t]) {
          if (index[t] < low[f.state])
            low[f.state] = index[t];
        }
        continue;
      }
      unsigned s = f.state;
      if (low[s] == index[s]) {
        while (true) {
          unsigned t = stack.back();
          stack.pop_back();
          on_stack[t] = false;
          res.id[t] = res.count;
          if (t == s)
            break;
        }
        ++res.count;
      }
      work.pop_back();
      if (!work.empty() && low[s] < low[work.back().state])
        low[work.back().state] = low[s];
    }
  }
  return res;
}

} // namespace bubo
