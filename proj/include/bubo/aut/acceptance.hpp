#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bubo {

/// Set of transition colors, bit c = color c.
using color_set = uint32_t;

inline constexpr unsigned max_colors = 31;

enum class acc_kind { buchi, parity_max_odd, generalized_buchi, arbitrary };

/// Positive Boolean formula over Inf(c)/Fin(c) atoms, the HOA acceptance
/// condition language.  Kept flattened with deterministically sorted
/// children so structural equality is insensitive to associativity and
/// commutativity.
class acceptance {
public:
  enum class kind : uint8_t { tt, ff, inf, fin, conj, disj };

  struct node {
    kind k = kind::tt;
    unsigned color = 0;
    std::vector<node> kids;

    friend bool operator==(const node&, const node&) = default;
  };

  acceptance() : root_{kind::tt, 0, {}}, num_colors_(0) {}

  static acceptance tt(unsigned colors = 0) { return acceptance(node{kind::tt, 0, {}}, colors); }
  static acceptance ff(unsigned colors = 0) { return acceptance(node{kind::ff, 0, {}}, colors); }
  static acceptance inf(unsigned c, unsigned colors) {
    return acceptance(node{kind::inf, c, {}}, colors);
  }
  static acceptance fin(unsigned c, unsigned colors) {
    return acceptance(node{kind::fin, c, {}}, colors);
  }
  static acceptance buchi() { return inf(0, 1); }

  static acceptance generalized_buchi(unsigned n) {
    if (n == 0)
      return tt(0);
    node conj{kind::conj, 0, {}};
    for (unsigned c = 0; c < n; ++c)
      conj.kids.push_back(node{kind::inf, c, {}});
    return acceptance(std::move(conj), n);
  }

  /// Canonical transition-based max-odd parity condition over colors
  /// 0..k-1: accept iff the maximal recurring color is odd.
  static acceptance parity_max_odd(unsigned k) {
    if (k == 0)
      return ff(0);
    node chain{kind::fin, 0, {}}; // color 0 is even, hence rejecting
    for (unsigned c = 1; c < k; ++c) {
      node atom{c & 1 ? kind::inf : kind::fin, c, {}};
      node combined{c & 1 ? kind::disj : kind::conj, 0, {}};
      combined.kids.push_back(atom);
      combined.kids.push_back(chain);
      chain = std::move(combined);
    }
    return acceptance(std::move(chain), k);
  }

  static acceptance conj(const acceptance& a, const acceptance& b) {
    node n{kind::conj, 0, {a.root_, b.root_}};
    return acceptance(std::move(n), std::max(a.num_colors_, b.num_colors_));
  }
  static acceptance disj(const acceptance& a, const acceptance& b) {
    node n{kind::disj, 0, {a.root_, b.root_}};
    return acceptance(std::move(n), std::max(a.num_colors_, b.num_colors_));
  }

  unsigned num_colors() const { return num_colors_; }
  const node& root() const { return root_; }

  bool is_tt() const { return root_.k == kind::tt; }
  bool is_ff() const { return root_.k == kind::ff; }

  /// Is a run with recurring color set `s` accepting?
  bool eval(color_set s) const { return eval_node(root_, s); }

  /// Colors mentioned by the formula.
  color_set used_colors() const {
    color_set s = 0;
    collect_colors(root_, s);
    return s;
  }

  acceptance shifted(unsigned by, unsigned new_num_colors) const {
    node r = root_;
    shift_node(r, by);
    return acceptance(std::move(r), new_num_colors);
  }

  /// Dual condition: Inf/Fin and conj/disj swapped.  For a deterministic
  /// automaton this complements the accepted language.
  acceptance negated() const {
    node r = root_;
    negate_node(r);
    return acceptance(std::move(r), num_colors_);
  }

  /// Disjunct of a disjunctive normal form: accept when every color of
  /// `inf` recurs and no color of `fin` does.
  struct dnf_term {
    color_set inf = 0;
    color_set fin = 0;
  };

  std::vector<dnf_term> to_dnf() const {
    std::vector<dnf_term> terms = dnf_node(root_);
    // Drop terms subsumed by a weaker one.
    std::vector<dnf_term> kept;
    for (size_t i = 0; i < terms.size(); ++i) {
      bool dead = false;
      for (size_t j = 0; j < terms.size() && !dead; ++j)
        if (i != j && (terms[j].inf & ~terms[i].inf) == 0 &&
            (terms[j].fin & ~terms[i].fin) == 0 &&
            !(terms[i].inf == terms[j].inf && terms[i].fin == terms[j].fin &&
              i < j))
          dead = true;
      if (!dead)
        kept.push_back(terms[i]);
    }
    return kept;
  }

  acc_kind detect_kind() const {
    if (root_.k == kind::inf && root_.color == 0 && num_colors_ == 1)
      return acc_kind::buchi;
    if (parity_max_odd_size())
      return acc_kind::parity_max_odd;
    if (root_.k == kind::conj) {
      bool all_inf = true;
      for (const node& kid : root_.kids)
        all_inf = all_inf && kid.k == kind::inf;
      if (all_inf)
        return acc_kind::generalized_buchi;
    }
    return acc_kind::arbitrary;
  }

  /// If this formula is the canonical max-odd parity condition over colors
  /// 0..k-1 (with k == num_colors), return k.
  std::optional<unsigned> parity_max_odd_size() const {
    if (root_ == parity_max_odd(num_colors_).root_)
      return num_colors_;
    return std::nullopt;
  }

  std::string to_string() const {
    std::ostringstream os;
    print_node(os, root_);
    return os.str();
  }

  /// HOA "Acceptance:" payload, e.g. "Inf(1) | Fin(0)".
  static acceptance parse(const std::string& text, unsigned num_colors);

  friend bool operator==(const acceptance& a, const acceptance& b) {
    return a.root_ == b.root_ && a.num_colors_ == b.num_colors_;
  }

private:
  acceptance(node r, unsigned colors) : root_(std::move(r)), num_colors_(colors) {
    normalize(root_);
    color_set used = used_colors();
    for (unsigned c = 0; c < max_colors; ++c)
      if ((used >> c & 1) && c >= num_colors_)
        throw std::invalid_argument("acceptance: color " + std::to_string(c) +
                                    " not below declared count " +
                                    std::to_string(num_colors_));
  }

  static bool eval_node(const node& n, color_set s) {
    switch (n.k) {
    case kind::tt: return true;
    case kind::ff: return false;
    case kind::inf: return (s >> n.color) & 1;
    case kind::fin: return !((s >> n.color) & 1);
    case kind::conj:
      for (const node& kid : n.kids)
        if (!eval_node(kid, s))
          return false;
      return true;
    case kind::disj:
      for (const node& kid : n.kids)
        if (eval_node(kid, s))
          return true;
      return false;
    }
    return false;
  }

  static void collect_colors(const node& n, color_set& s) {
    if (n.k == kind::inf || n.k == kind::fin)
      s |= color_set(1) << n.color;
    for (const node& kid : n.kids)
      collect_colors(kid, s);
  }

  static void shift_node(node& n, unsigned by) {
    if (n.k == kind::inf || n.k == kind::fin) {
      if (n.color + by >= max_colors)
        throw std::invalid_argument("acceptance: color overflow in shift");
      n.color += by;
    }
    for (node& kid : n.kids)
      shift_node(kid, by);
  }

  static void negate_node(node& n) {
    switch (n.k) {
    case kind::tt: n.k = kind::ff; break;
    case kind::ff: n.k = kind::tt; break;
    case kind::inf: n.k = kind::fin; break;
    case kind::fin: n.k = kind::inf; break;
    case kind::conj: n.k = kind::disj; break;
    case kind::disj: n.k = kind::conj; break;
    }
    for (node& kid : n.kids)
      negate_node(kid);
  }

  static std::vector<dnf_term> dnf_node(const node& n) {
    switch (n.k) {
    case kind::tt: return {dnf_term{}};
    case kind::ff: return {};
    case kind::inf: return {dnf_term{color_set(1) << n.color, 0}};
    case kind::fin: return {dnf_term{0, color_set(1) << n.color}};
    case kind::disj: {
      std::vector<dnf_term> out;
      for (const node& kid : n.kids) {
        std::vector<dnf_term> sub = dnf_node(kid);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    case kind::conj: {
      std::vector<dnf_term> out{dnf_term{}};
      for (const node& kid : n.kids) {
        std::vector<dnf_term> sub = dnf_node(kid);
        std::vector<dnf_term> next;
        for (const dnf_term& a : out)
          for (const dnf_term& b : sub) {
            dnf_term t{a.inf | b.inf, a.fin | b.fin};
            if ((t.inf & t.fin) == 0) // Inf(c) & Fin(c) is unsatisfiable
              next.push_back(t);
          }
        out = std::move(next);
      }
      return out;
    }
    }
    return {};
  }

  // Flatten nested conj/disj, fold constants, sort children: atoms first
  // (higher colors first, Inf before Fin), composites after.
  static void normalize(node& n) {
    for (node& kid : n.kids)
      normalize(kid);
    if (n.k != kind::conj && n.k != kind::disj)
      return;
    std::vector<node> flat;
    for (node& kid : n.kids) {
      if (kid.k == n.k) {
        for (node& g : kid.kids)
          flat.push_back(std::move(g));
      } else {
        flat.push_back(std::move(kid));
      }
    }
    kind unit = n.k == kind::conj ? kind::tt : kind::ff;
    kind zero = n.k == kind::conj ? kind::ff : kind::tt;
    std::vector<node> kept;
    for (node& kid : flat) {
      if (kid.k == zero) {
        n = node{zero, 0, {}};
        return;
      }
      if (kid.k != unit)
        kept.push_back(std::move(kid));
    }
    std::sort(kept.begin(), kept.end(), node_less);
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) {
      n = node{unit, 0, {}};
      return;
    }
    if (kept.size() == 1) {
      n = std::move(kept[0]);
      return;
    }
    n.kids = std::move(kept);
  }

  static bool node_less(const node& a, const node& b) {
    bool aa = a.kids.empty() && (a.k == kind::inf || a.k == kind::fin);
    bool bb = b.kids.empty() && (b.k == kind::inf || b.k == kind::fin);
    if (aa != bb)
      return aa; // atoms first
    if (aa) {
      if (a.color != b.color)
        return a.color > b.color;
      return a.k == kind::inf && b.k == kind::fin;
    }
    if (a.k != b.k)
      return int(a.k) < int(b.k);
    if (a.kids.size() != b.kids.size())
      return a.kids.size() < b.kids.size();
    for (size_t i = 0; i < a.kids.size(); ++i) {
      if (node_less(a.kids[i], b.kids[i]))
        return true;
      if (node_less(b.kids[i], a.kids[i]))
        return false;
    }
    if (a.k != b.k)
      return int(a.k) < int(b.k);
    return a.color < b.color;
  }

  static void print_node(std::ostream& os, const node& n) {
    switch (n.k) {
    case kind::tt: os << 't'; return;
    case kind::ff: os << 'f'; return;
    case kind::inf: os << "Inf(" << n.color << ')'; return;
    case kind::fin: os << "Fin(" << n.color << ')'; return;
    case kind::conj:
    case kind::disj: {
      const char* sep = n.k == kind::conj ? " & " : " | ";
      for (size_t i = 0; i < n.kids.size(); ++i) {
        if (i)
          os << sep;
        const node& kid = n.kids[i];
        bool paren = !kid.kids.empty();
        if (paren)
          os << '(';
        print_node(os, kid);
        if (paren)
          os << ')';
      }
      return;
    }
    }
  }

  node root_;
  unsigned num_colors_;
};

namespace detail {

class acc_parser {
public:
  explicit acc_parser(const std::string& s) : s_(s) {}

  acceptance::node parse() {
    acceptance::node n = parse_disj();
    skip();
    if (pos_ != s_.size())
      throw std::invalid_argument("acceptance: trailing characters: " +
                                  s_.substr(pos_));
    return n;
  }

private:
  acceptance::node parse_disj() {
    acceptance::node n = parse_conj();
    skip();
    while (pos_ < s_.size() && s_[pos_] == '|') {
      ++pos_;
      acceptance::node d{acceptance::kind::disj, 0, {n, parse_conj()}};
      n = std::move(d);
      skip();
    }
    return n;
  }

  acceptance::node parse_conj() {
    acceptance::node n = parse_atom();
    skip();
    while (pos_ < s_.size() && s_[pos_] == '&') {
      ++pos_;
      acceptance::node c{acceptance::kind::conj, 0, {n, parse_atom()}};
      n = std::move(c);
      skip();
    }
    return n;
  }

  acceptance::node parse_atom() {
    skip();
    if (pos_ >= s_.size())
      throw std::invalid_argument("acceptance: unexpected end");
    if (s_[pos_] == '(') {
      ++pos_;
      acceptance::node n = parse_disj();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')')
        throw std::invalid_argument("acceptance: missing ')'");
      ++pos_;
      return n;
    }
    if (s_[pos_] == 't') {
      ++pos_;
      return {acceptance::kind::tt, 0, {}};
    }
    if (s_[pos_] == 'f') {
      ++pos_;
      return {acceptance::kind::ff, 0, {}};
    }
    acceptance::kind k;
    if (s_.compare(pos_, 3, "Inf") == 0)
      k = acceptance::kind::inf;
    else if (s_.compare(pos_, 3, "Fin") == 0)
      k = acceptance::kind::fin;
    else
      throw std::invalid_argument("acceptance: expected Inf/Fin/t/f at '" +
                                  s_.substr(pos_) + "'");
    pos_ += 3;
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '(')
      throw std::invalid_argument("acceptance: expected '(' after Inf/Fin");
    ++pos_;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '!')
      throw std::invalid_argument(
          "acceptance: negated color sets are not supported");
    size_t start = pos_;
    while (pos_ < s_.size() && isdigit((unsigned char)s_[pos_]))
      ++pos_;
    if (start == pos_)
      throw std::invalid_argument("acceptance: expected color number");
    unsigned c = unsigned(std::stoul(s_.substr(start, pos_ - start)));
    skip();
    if (pos_ >= s_.size() || s_[pos_] != ')')
      throw std::invalid_argument("acceptance: missing ')'");
    ++pos_;
    return {k, c, {}};
  }

  void skip() {
    while (pos_ < s_.size() && isspace((unsigned char)s_[pos_]))
      ++pos_;
  }

  const std::string& s_;
  size_t pos_ = 0;
};

} // namespace detail

inline acceptance acceptance::parse(const std::string& text,
                                    unsigned num_colors) {
  return acceptance(detail::acc_parser(text).parse(), num_colors);
}

} // namespace bubo
