#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace bubo {

enum class op : uint8_t {
  ap,
  tt,
  ff,
  not_,
  and_,
  or_,
  xor_,
  iff,
  implies,
  next,     // X
  until,    // U
  release,  // R
  weak_until, // W
  eventually, // F
  globally,   // G
};

inline bool is_binary(op o) {
  switch (o) {
  case op::and_:
  case op::or_:
  case op::xor_:
  case op::iff:
  case op::implies:
  case op::until:
  case op::release:
  case op::weak_until:
    return true;
  default:
    return false;
  }
}

inline bool is_unary(op o) {
  return o == op::not_ || o == op::next || o == op::eventually ||
         o == op::globally;
}

/// Immutable, hash-consed LTL formula.  Structurally equal formulas share a
/// node, so equality is a pointer comparison and sets of subformulas can be
/// keyed on the node id.
class formula {
  struct node {
    op kind;
    uint64_t id;
    std::string name;             // kind == ap
    std::vector<formula> children;
  };

public:
  formula() : n_(nullptr) {}

  static formula ap(const std::string& name) {
    if (name.empty())
      throw std::invalid_argument("formula::ap: empty proposition name");
    return intern(op::ap, name, {});
  }
  static formula tt() { return intern(op::tt, "", {}); }
  static formula ff() { return intern(op::ff, "", {}); }
  static formula make(op o, formula a) {
    if (!is_unary(o))
      throw std::invalid_argument("formula::make: operator is not unary");
    return intern(o, "", {a});
  }
  static formula make(op o, formula a, formula b) {
    if (!is_binary(o))
      throw std::invalid_argument("formula::make: operator is not binary");
    return intern(o, "", {a, b});
  }

  static formula not_(formula a) { return make(op::not_, a); }
  static formula and_(formula a, formula b) { return make(op::and_, a, b); }
  static formula or_(formula a, formula b) { return make(op::or_, a, b); }
  static formula xor_(formula a, formula b) { return make(op::xor_, a, b); }
  static formula iff(formula a, formula b) { return make(op::iff, a, b); }
  static formula implies(formula a, formula b) { return make(op::implies, a, b); }
  static formula X(formula a) { return make(op::next, a); }
  static formula F(formula a) { return make(op::eventually, a); }
  static formula G(formula a) { return make(op::globally, a); }
  static formula U(formula a, formula b) { return make(op::until, a, b); }
  static formula R(formula a, formula b) { return make(op::release, a, b); }
  static formula W(formula a, formula b) { return make(op::weak_until, a, b); }

  op kind() const { return n_->kind; }
  uint64_t id() const { return n_->id; }
  const std::string& name() const { return n_->name; }
  const std::vector<formula>& children() const { return n_->children; }
  formula child(size_t i) const { return n_->children.at(i); }
  size_t arity() const { return n_->children.size(); }
  explicit operator bool() const { return n_ != nullptr; }

  bool is(op o) const { return n_->kind == o; }
  bool is_boolean() const {
    switch (kind()) {
    case op::ap:
    case op::tt:
    case op::ff:
      return true;
    case op::not_:
    case op::and_:
    case op::or_:
    case op::xor_:
    case op::iff:
    case op::implies:
      for (const formula& c : children())
        if (!c.is_boolean())
          return false;
      return true;
    default:
      return false;
    }
  }

  /// Collect atomic proposition names, in first-occurrence order.
  void collect_aps(std::vector<std::string>& out) const {
    if (is(op::ap)) {
      for (const std::string& s : out)
        if (s == name())
          return;
      out.push_back(name());
      return;
    }
    for (const formula& c : children())
      c.collect_aps(out);
  }

  std::vector<std::string> aps() const {
    std::vector<std::string> out;
    collect_aps(out);
    return out;
  }

  friend bool operator==(const formula& a, const formula& b) {
    return a.n_ == b.n_;
  }
  friend bool operator!=(const formula& a, const formula& b) = default;
  /// Orders by interning id; stable within one process.
  friend bool operator<(const formula& a, const formula& b) {
    return a.n_->id < b.n_->id;
  }

  size_t hash() const { return std::hash<uint64_t>()(n_->id); }

private:
  explicit formula(std::shared_ptr<const node> n) : n_(std::move(n)) {}

  struct key {
    op kind;
    std::string name;
    std::vector<uint64_t> child_ids;
    bool operator==(const key&) const = default;
  };
  struct key_hash {
    size_t operator()(const key& k) const {
      size_t h = std::hash<int>()(int(k.kind)) ^ std::hash<std::string>()(k.name);
      for (uint64_t c : k.child_ids)
        h = h * 0x100000001b3ull + c;
      return h;
    }
  };

  // The hash-cons table is the only shared mutable state; guarded by a mutex
  // so formulas can be built from several threads.
  struct table {
    std::mutex mu;
    std::unordered_map<key, std::weak_ptr<const node>, key_hash> map;
    uint64_t next_id = 0;
  };
  static table& tbl() {
    static table t;
    return t;
  }

  static formula intern(op o, const std::string& name,
                        std::vector<formula> children) {
    key k{o, name, {}};
    k.child_ids.reserve(children.size());
    for (const formula& c : children) {
      if (!c)
        throw std::invalid_argument("formula: null child");
      k.child_ids.push_back(c.id());
    }
    table& t = tbl();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.map.find(k);
    if (it != t.map.end())
      if (auto sp = it->second.lock())
        return formula(sp);
    auto n = std::make_shared<node>(node{o, t.next_id++, name, std::move(children)});
    t.map[k] = n;
    return formula(n);
  }

  std::shared_ptr<const node> n_;
};

/// Fully parenthesized canonical printing; parses back to the same AST.
inline void print_ltl(std::ostream& os, const formula& f) {
  switch (f.kind()) {
  case op::ap: {
    // Quote names that are not plain identifiers.
    const std::string& n = f.name();
    bool plain = !n.empty() && (isalpha((unsigned char)n[0]) || n[0] == '_');
    for (char c : n)
      if (!isalnum((unsigned char)c) && c != '_')
        plain = false;
    if (plain)
      os << n;
    else {
      os << '"';
      for (char c : n) {
        if (c == '"' || c == '\\')
          os << '\\';
        os << c;
      }
      os << '"';
    }
    return;
  }
  case op::tt:
    os << "true";
    return;
  case op::ff:
    os << "false";
    return;
  case op::not_:
    os << "(!";
    print_ltl(os, f.child(0));
    os << ')';
    return;
  case op::next:
    os << "(X";
    print_ltl(os, f.child(0));
    os << ')';
    return;
  case op::eventually:
    os << "(F";
    print_ltl(os, f.child(0));
    os << ')';
    return;
  case op::globally:
    os << "(G";
    print_ltl(os, f.child(0));
    os << ')';
    return;
  default:
    break;
  }
  const char* sym = nullptr;
  switch (f.kind()) {
  case op::and_: sym = " & "; break;
  case op::or_: sym = " | "; break;
  case op::xor_: sym = " xor "; break;
  case op::iff: sym = " <-> "; break;
  case op::implies: sym = " -> "; break;
  case op::until: sym = " U "; break;
  case op::release: sym = " R "; break;
  case op::weak_until: sym = " W "; break;
  default: throw std::logic_error("print_ltl: unhandled operator");
  }
  os << '(';
  print_ltl(os, f.child(0));
  os << sym;
  print_ltl(os, f.child(1));
  os << ')';
}

inline std::string print_ltl(const formula& f) {
  std::ostringstream os;
  print_ltl(os, f);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const formula& f) {
  print_ltl(os, f);
  return os;
}

} // namespace bubo

template <>
struct std::hash<bubo::formula> {
  size_t operator()(const bubo::formula& f) const { return f.hash(); }
};
