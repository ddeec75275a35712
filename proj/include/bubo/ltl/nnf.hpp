#pragma once

#include "formula.hpp"

namespace bubo {

namespace detail {

inline formula fold_and(formula a, formula b) {
  if (a.is(op::ff) || b.is(op::ff))
    return formula::ff();
  if (a.is(op::tt))
    return b;
  if (b.is(op::tt))
    return a;
  if (a == b)
    return a;
  return formula::and_(a, b);
}

inline formula fold_or(formula a, formula b) {
  if (a.is(op::tt) || b.is(op::tt))
    return formula::tt();
  if (a.is(op::ff))
    return b;
  if (b.is(op::ff))
    return a;
  if (a == b)
    return a;
  return formula::or_(a, b);
}

inline formula nnf_rec(const formula& f, bool neg) {
  switch (f.kind()) {
  case op::ap:
    return neg ? formula::not_(f) : f;
  case op::tt:
    return neg ? formula::ff() : formula::tt();
  case op::ff:
    return neg ? formula::tt() : formula::ff();
  case op::not_:
    return nnf_rec(f.child(0), !neg);
  case op::and_:
    if (neg)
      return fold_or(nnf_rec(f.child(0), true), nnf_rec(f.child(1), true));
    return fold_and(nnf_rec(f.child(0), false), nnf_rec(f.child(1), false));
  case op::or_:
    if (neg)
      return fold_and(nnf_rec(f.child(0), true), nnf_rec(f.child(1), true));
    return fold_or(nnf_rec(f.child(0), false), nnf_rec(f.child(1), false));
  case op::implies:
    // a -> b  ==  !a | b
    if (neg)
      return fold_and(nnf_rec(f.child(0), false), nnf_rec(f.child(1), true));
    return fold_or(nnf_rec(f.child(0), true), nnf_rec(f.child(1), false));
  case op::iff: {
    formula a0 = nnf_rec(f.child(0), false), a1 = nnf_rec(f.child(0), true);
    formula b0 = nnf_rec(f.child(1), false), b1 = nnf_rec(f.child(1), true);
    if (neg) // a xor b
      return fold_or(fold_and(a0, b1), fold_and(a1, b0));
    return fold_or(fold_and(a0, b0), fold_and(a1, b1));
  }
  case op::xor_: {
    formula a0 = nnf_rec(f.child(0), false), a1 = nnf_rec(f.child(0), true);
    formula b0 = nnf_rec(f.child(1), false), b1 = nnf_rec(f.child(1), true);
    if (neg) // a <-> b
      return fold_or(fold_and(a0, b0), fold_and(a1, b1));
    return fold_or(fold_and(a0, b1), fold_and(a1, b0));
  }
  case op::next:
    return formula::X(nnf_rec(f.child(0), neg));
  case op::eventually:
    if (neg)
      return formula::G(nnf_rec(f.child(0), true));
    return formula::F(nnf_rec(f.child(0), false));
  case op::globally:
    if (neg)
      return formula::F(nnf_rec(f.child(0), true));
    return formula::G(nnf_rec(f.child(0), false));
  case op::until:
    if (neg)
      return formula::R(nnf_rec(f.child(0), true), nnf_rec(f.child(1), true));
    return formula::U(nnf_rec(f.child(0), false), nnf_rec(f.child(1), false));
  case op::release:
    if (neg)
      return formula::U(nnf_rec(f.child(0), true), nnf_rec(f.child(1), true));
    return formula::R(nnf_rec(f.child(0), false), nnf_rec(f.child(1), false));
  case op::weak_until:
    // !(a W b) == !b U (!a & !b)
    if (neg) {
      formula na = nnf_rec(f.child(0), true), nb = nnf_rec(f.child(1), true);
      return formula::U(nb, fold_and(na, nb));
    }
    return formula::W(nnf_rec(f.child(0), false), nnf_rec(f.child(1), false));
  }
  throw std::logic_error("nnf: unhandled operator");
}

} // namespace detail

/// Negation normal form: negations only on atoms, xor/iff/implies expanded,
/// constants folded.
inline formula to_nnf(const formula& f) { return detail::nnf_rec(f, false); }

/// NNF of the negation.
inline formula to_nnf_negated(const formula& f) {
  return detail::nnf_rec(f, true);
}

} // namespace bubo
