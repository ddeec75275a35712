#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bubo {

/// Maximum number of atomic propositions a label may reference.
inline constexpr unsigned max_props = 31;

/// Truth assignment over proposition indices, bit i = value of proposition i.
using assignment = uint32_t;

/// Conjunction of literals over proposition indices.  `pos` and `neg` are
/// disjoint bit masks; a proposition in neither mask is unconstrained.
/// The empty cube (pos == neg == 0) is the constant true.
struct cube {
  uint32_t pos = 0;
  uint32_t neg = 0;

  bool satisfiable() const { return (pos & neg) == 0; }
  uint32_t vars() const { return pos | neg; }

  bool matches(assignment a) const {
    return (a & pos) == pos && (a & neg) == 0;
  }

  /// c implies this cube (this cube's literals are a subset of c's).
  bool absorbs(const cube& c) const {
    return (pos & ~c.pos) == 0 && (neg & ~c.neg) == 0;
  }

  friend bool operator==(const cube&, const cube&) = default;
  friend auto operator<=>(const cube&, const cube&) = default;
};

/// Boolean function over propositions, stored as its Blake canonical form
/// (the set of all prime implicants, sorted).  Two labels denote the same
/// function iff their cube vectors compare equal, so equality and hashing
/// are structural.
class label {
public:
  label() = default;

  static label ff() { return label{}; }
  static label tt() { return label(std::vector<cube>{cube{}}); }

  static label var(unsigned v, bool positive = true) {
    check_var(v);
    cube c;
    (positive ? c.pos : c.neg) = 1u << v;
    return label(std::vector<cube>{c});
  }

  static label of_cube(const cube& c) {
    if (!c.satisfiable())
      return ff();
    return label(std::vector<cube>{c});
  }

  /// Cube for a full assignment over the propositions in `mask`.
  static label of_assignment(assignment a, uint32_t mask) {
    return of_cube(cube{a & mask, ~a & mask});
  }

  const std::vector<cube>& cubes() const { return cubes_; }
  bool is_false() const { return cubes_.empty(); }
  bool is_true() const { return cubes_.size() == 1 && cubes_[0] == cube{}; }

  bool eval(assignment a) const {
    for (const cube& c : cubes_)
      if (c.matches(a))
        return true;
    return false;
  }

  /// Union of propositions occurring in the canonical form.  For a Blake
  /// canonical form this coincides with the semantic support.
  uint32_t support() const {
    uint32_t s = 0;
    for (const cube& c : cubes_)
      s |= c.vars();
    return s;
  }

  friend label operator&(const label& a, const label& b) {
    std::vector<cube> out;
    out.reserve(a.cubes_.size() * b.cubes_.size());
    for (const cube& x : a.cubes_)
      for (const cube& y : b.cubes_) {
        cube c{x.pos | y.pos, x.neg | y.neg};
        if (c.satisfiable())
          out.push_back(c);
      }
    return label(std::move(out));
  }

  friend label operator|(const label& a, const label& b) {
    std::vector<cube> out = a.cubes_;
    out.insert(out.end(), b.cubes_.begin(), b.cubes_.end());
    return label(std::move(out));
  }

  friend label operator!(const label& a) {
    // De Morgan over the cube list: conjunction of the negated cubes.
    label acc = tt();
    for (const cube& c : a.cubes_) {
      std::vector<cube> neg;
      uint32_t vs = c.vars();
      for (unsigned v = 0; v < max_props; ++v)
        if (vs & (1u << v)) {
          cube lit;
          if (c.pos & (1u << v))
            lit.neg = 1u << v;
          else
            lit.pos = 1u << v;
          neg.push_back(lit);
        }
      acc = acc & label(std::move(neg));
      if (acc.is_false())
        return acc;
    }
    return acc;
  }

  bool implies(const label& other) const {
    return (*this & !other).is_false();
  }

  /// Existentially quantify the propositions in `mask`.
  label exists(uint32_t mask) const {
    std::vector<cube> out;
    out.reserve(cubes_.size());
    for (const cube& c : cubes_)
      out.push_back(cube{c.pos & ~mask, c.neg & ~mask});
    return label(std::move(out));
  }

  /// Restrict by a cube: fix its literals, then drop them.
  label cofactor(const cube& fix) const {
    std::vector<cube> out;
    for (const cube& c : cubes_) {
      if ((c.pos & fix.neg) || (c.neg & fix.pos))
        continue;
      out.push_back(cube{c.pos & ~fix.vars(), c.neg & ~fix.vars()});
    }
    return label(std::move(out));
  }

  /// Enumerate the assignments over `mask` satisfying this label, restricted
  /// to the propositions in `mask` (other propositions are ignored, i.e.
  /// existentially quantified first).
  std::vector<assignment> satisfying_assignments(uint32_t mask) const {
    std::vector<assignment> out;
    label proj = exists(~mask);
    unsigned nbits = 0;
    std::vector<unsigned> bits;
    for (unsigned v = 0; v < max_props; ++v)
      if (mask & (1u << v)) {
        bits.push_back(v);
        ++nbits;
      }
    for (uint64_t i = 0; i < (uint64_t(1) << nbits); ++i) {
      assignment a = 0;
      for (unsigned k = 0; k < nbits; ++k)
        if (i & (uint64_t(1) << k))
          a |= 1u << bits[k];
      if (proj.eval(a))
        out.push_back(a);
    }
    return out;
  }

  /// Some satisfying cube, canonical (first of the canonical form).
  cube first_cube() const {
    if (is_false())
      throw std::logic_error("label::first_cube: unsatisfiable label");
    return cubes_[0];
  }

  size_t hash() const {
    size_t h = cubes_.size();
    for (const cube& c : cubes_) {
      h = h * 0x9e3779b97f4a7c15ull + c.pos;
      h = h * 0x9e3779b97f4a7c15ull + c.neg;
    }
    return h;
  }

  friend bool operator==(const label&, const label&) = default;
  friend auto operator<=>(const label&, const label&) = default;

private:
  explicit label(std::vector<cube> cs) : cubes_(std::move(cs)) { canonicalize(); }

  static void check_var(unsigned v) {
    if (v >= max_props)
      throw std::invalid_argument("label: proposition index " +
                                  std::to_string(v) + " out of range");
  }

  // Blake canonical form: iterated consensus to closure, then absorption.
  void canonicalize() {
    std::erase_if(cubes_, [](const cube& c) { return !c.satisfiable(); });
    absorb();
    bool grew = true;
    while (grew) {
      grew = false;
      size_t n = cubes_.size();
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
          cube c;
          if (!consensus(cubes_[i], cubes_[j], c))
            continue;
          bool subsumed = false;
          for (const cube& d : cubes_)
            if (d.absorbs(c)) {
              subsumed = true;
              break;
            }
          if (!subsumed) {
            cubes_.push_back(c);
            grew = true;
          }
        }
      if (grew)
        absorb();
    }
    absorb();
    std::sort(cubes_.begin(), cubes_.end());
  }

  // Consensus exists iff the cubes clash on exactly one proposition.
  static bool consensus(const cube& a, const cube& b, cube& out) {
    uint32_t clash = (a.pos & b.neg) | (a.neg & b.pos);
    if (clash == 0 || (clash & (clash - 1)) != 0)
      return false;
    out.pos = (a.pos | b.pos) & ~clash;
    out.neg = (a.neg | b.neg) & ~clash;
    return out.satisfiable();
  }

  void absorb() {
    std::vector<cube> kept;
    for (size_t i = 0; i < cubes_.size(); ++i) {
      bool dead = false;
      for (size_t j = 0; j < cubes_.size(); ++j)
        if (i != j && cubes_[j].absorbs(cubes_[i]) &&
            !(cubes_[i] == cubes_[j] && i < j)) {
          dead = true;
          break;
        }
      if (!dead)
        kept.push_back(cubes_[i]);
    }
    cubes_ = std::move(kept);
  }

  std::vector<cube> cubes_;
};

} // namespace bubo

template <>
struct std::hash<bubo::label> {
  size_t operator()(const bubo::label& l) const { return l.hash(); }
};
