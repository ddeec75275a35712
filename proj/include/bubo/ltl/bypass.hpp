#pragma once

#include <optional>

#include "decompose.hpp"
#include "formula.hpp"
#include "nnf.hpp"
#include "partition.hpp"

namespace bubo {

/// Specification shape  G(b1) & (phi <-> GF b2)  for which a strategy can be
/// built straight from a deterministic Büchi automaton for phi, skipping the
/// parity game.  `negated` records that the equivalence appeared negated
/// (phi <-> !GF b2), which is handled by complementing phi.
struct bypass_pattern {
  formula b1;  // Boolean, over inputs and outputs
  formula phi; // inputs only, may be temporal
  formula b2;  // Boolean, outputs only
  bool negated = false;
};

namespace detail {

inline bool uses_only_inputs(const formula& f, const signal_partition& p) {
  for (const std::string& a : f.aps())
    if (!p.is_input(a))
      return false;
  return true;
}

inline bool uses_only_outputs(const formula& f, const signal_partition& p) {
  for (const std::string& a : f.aps())
    if (!p.is_output(a))
      return false;
  return true;
}

// Matches GF b2 with b2 Boolean over outputs only.
inline std::optional<formula> match_gf_outputs(const formula& f,
                                               const signal_partition& p) {
  if (!f.is(op::globally) || !f.child(0).is(op::eventually))
    return std::nullopt;
  formula b2 = f.child(0).child(0);
  if (!b2.is_boolean() || !uses_only_outputs(b2, p))
    return std::nullopt;
  return b2;
}

} // namespace detail

/// Recognize the game-bypass shape up to commutativity of the top-level
/// conjunction and of the equivalence.  A missing G(b1) conjunct defaults to
/// b1 = true; a missing equivalence defaults to phi = b2 = true, covering
/// pure-invariant specifications G(b1).
inline std::optional<bypass_pattern> detect_bypass(const formula& f,
                                                   const signal_partition& p) {
  std::vector<formula> conjuncts;
  detail::flatten_and(f, conjuncts);

  formula b1 = formula::tt();
  std::optional<formula> phi, b2;
  bool negated = false;

  for (const formula& c : conjuncts) {
    if (c.is(op::tt))
      continue;
    if (c.is(op::globally) && c.child(0).is_boolean()) {
      b1 = detail::fold_and(b1, c.child(0));
      continue;
    }
    // Equivalence conjunct, possibly under a negation or spelled with xor.
    formula eq = c;
    bool neg = false;
    if (eq.is(op::not_)) {
      eq = eq.child(0);
      neg = true;
    }
    if (eq.is(op::xor_))
      neg = !neg;
    else if (!eq.is(op::iff))
      return std::nullopt;
    if (phi) // at most one equivalence conjunct
      return std::nullopt;
    formula lhs = eq.child(0), rhs = eq.child(1);
    for (int swap = 0; swap < 2; ++swap) {
      if (auto b = detail::match_gf_outputs(rhs, p);
          b && detail::uses_only_inputs(lhs, p)) {
        phi = lhs;
        b2 = *b;
        negated = neg;
        break;
      }
      std::swap(lhs, rhs);
    }
    if (!phi)
      return std::nullopt;
  }

  bypass_pattern pat;
  pat.b1 = b1;
  pat.phi = phi.value_or(formula::tt());
  pat.b2 = b2.value_or(formula::tt());
  pat.negated = negated;
  return pat;
}

} // namespace bubo
