#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "automaton.hpp"

namespace bubo {

struct hoa_error : std::runtime_error {
  hoa_error(unsigned line, const std::string& what)
      : std::runtime_error("HOA line " + std::to_string(line) + ": " + what),
        line(line) {}
  unsigned line;
};

namespace detail {

// Boolean label expression over AP indices: t, f, !, &, |, parentheses.
class hoa_label_parser {
public:
  hoa_label_parser(const std::string& s, unsigned num_aps, unsigned line)
      : s_(s), num_aps_(num_aps), line_(line) {}

  label parse() {
    label l = parse_or();
    skip();
    if (pos_ != s_.size())
      throw hoa_error(line_, "trailing characters in label: '" +
                                 s_.substr(pos_) + "'");
    return l;
  }

private:
  label parse_or() {
    label l = parse_and();
    skip();
    while (pos_ < s_.size() && s_[pos_] == '|') {
      ++pos_;
      l = l | parse_and();
      skip();
    }
    return l;
  }

  label parse_and() {
    label l = parse_atom();
    skip();
    while (pos_ < s_.size() && s_[pos_] == '&') {
      ++pos_;
      l = l & parse_atom();
      skip();
    }
    return l;
  }

  label parse_atom() {
    skip();
    if (pos_ >= s_.size())
      throw hoa_error(line_, "unexpected end of label");
    char c = s_[pos_];
    if (c == '!') {
      ++pos_;
      return !parse_atom();
    }
    if (c == '(') {
      ++pos_;
      label l = parse_or();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')')
        throw hoa_error(line_, "missing ')' in label");
      ++pos_;
      return l;
    }
    if (c == 't') {
      ++pos_;
      return label::tt();
    }
    if (c == 'f') {
      ++pos_;
      return label::ff();
    }
    if (c == '@')
      throw hoa_error(line_, "label aliases are not supported");
    if (isdigit((unsigned char)c)) {
      size_t start = pos_;
      while (pos_ < s_.size() && isdigit((unsigned char)s_[pos_]))
        ++pos_;
      unsigned ap = unsigned(std::stoul(s_.substr(start, pos_ - start)));
      if (ap >= num_aps_)
        throw hoa_error(line_, "undeclared atomic proposition " +
                                   std::to_string(ap));
      return label::var(ap);
    }
    throw hoa_error(line_, std::string("unexpected character '") + c +
                               "' in label");
  }

  void skip() {
    while (pos_ < s_.size() && isspace((unsigned char)s_[pos_]))
      ++pos_;
  }

  const std::string& s_;
  size_t pos_ = 0;
  unsigned num_aps_;
  unsigned line_;
};

inline std::string hoa_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

} // namespace detail

/// Parse the supported HOA v1 subset: explicit transition labels,
/// transition-based colors, a single initial state.  Determinism and
/// completeness flags are recomputed from the body, not read from headers.
inline automaton parse_hoa(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  unsigned lineno = 0;

  automaton a;
  std::optional<unsigned> num_states, start, num_aps, num_acc;
  std::optional<std::string> acc_formula, acc_name;
  unsigned acc_line = 0;
  bool saw_hoa = false, in_body = false, saw_end = false;
  int cur_state = -1;
  std::vector<bool> state_seen;

  auto trim = [](std::string s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '/')
      continue;
    if (!saw_hoa) {
      if (line.rfind("HOA:", 0) != 0)
        throw hoa_error(lineno, "expected 'HOA: v1'");
      if (trim(line.substr(4)) != "v1")
        throw hoa_error(lineno, "unsupported HOA version");
      saw_hoa = true;
      continue;
    }
    if (line == "--BODY--") {
      if (in_body)
        throw hoa_error(lineno, "duplicate --BODY--");
      if (!num_states || !num_aps || !acc_formula || !start)
        throw hoa_error(lineno,
                        "missing States:, Start:, AP: or Acceptance: header");
      in_body = true;
      a.aps.resize(*num_aps);
      for (unsigned s = 0; s < *num_states; ++s)
        a.add_state();
      state_seen.assign(*num_states, false);
      a.initial = *start;
      if (*start >= *num_states)
        throw hoa_error(lineno, "initial state out of range");
      try {
        a.acc = acceptance::parse(*acc_formula, *num_acc);
      } catch (const std::exception& e) {
        throw hoa_error(acc_line, e.what());
      }
      continue;
    }
    if (line == "--END--") {
      if (!in_body)
        throw hoa_error(lineno, "--END-- before --BODY--");
      saw_end = true;
      break;
    }
    if (!in_body) {
      size_t colon = line.find(':');
      if (colon == std::string::npos)
        throw hoa_error(lineno, "malformed header line");
      std::string key = line.substr(0, colon);
      std::string val = trim(line.substr(colon + 1));
      if (key == "States") {
        if (num_states)
          throw hoa_error(lineno, "duplicate States:");
        num_states = unsigned(std::stoul(val));
        if (*num_states == 0)
          throw hoa_error(lineno, "empty automata are not supported");
      } else if (key == "Start") {
        if (start)
          throw hoa_error(lineno, "multiple initial states are not supported");
        if (val.find('&') != std::string::npos ||
            val.find(' ') != std::string::npos)
          throw hoa_error(lineno, "conjunct/multiple start states unsupported");
        start = unsigned(std::stoul(val));
      } else if (key == "AP") {
        std::istringstream aps(val);
        unsigned n;
        if (!(aps >> n))
          throw hoa_error(lineno, "malformed AP: line");
        if (n > max_props)
          throw hoa_error(lineno, "too many atomic propositions");
        num_aps = n;
        a.aps.clear();
        std::string rest;
        std::getline(aps, rest);
        size_t pos = 0;
        for (unsigned i = 0; i < n; ++i) {
          pos = rest.find('"', pos);
          if (pos == std::string::npos)
            throw hoa_error(lineno, "expected quoted AP name");
          std::string name;
          ++pos;
          while (pos < rest.size() && rest[pos] != '"') {
            if (rest[pos] == '\\' && pos + 1 < rest.size())
              ++pos;
            name += rest[pos++];
          }
          if (pos >= rest.size())
            throw hoa_error(lineno, "unterminated AP name");
          ++pos;
          a.aps.push_back(name);
        }
      } else if (key == "Acceptance") {
        std::istringstream acc(val);
        unsigned n;
        if (!(acc >> n))
          throw hoa_error(lineno, "malformed Acceptance: line");
        if (n > max_colors)
          throw hoa_error(lineno, "too many acceptance sets");
        num_acc = n;
        std::string rest;
        std::getline(acc, rest);
        acc_formula = trim(rest);
        acc_line = lineno;
      } else if (key == "acc-name") {
        acc_name = val;
      } else if (key == "tool" || key == "name" || key == "properties" ||
                 key == "owner" || key == "controllable-AP") {
        // informational only
      } else if (key == "Alias") {
        throw hoa_error(lineno, "aliases are not supported");
      } else {
        throw hoa_error(lineno, "unsupported header '" + key + "'");
      }
      continue;
    }
    // Body.
    if (line.rfind("State:", 0) == 0) {
      std::string rest = trim(line.substr(6));
      if (!rest.empty() && rest[0] == '[')
        throw hoa_error(lineno, "state labels are not supported");
      std::istringstream ss(rest);
      unsigned id;
      if (!(ss >> id))
        throw hoa_error(lineno, "malformed State: line");
      if (id >= a.num_states())
        throw hoa_error(lineno, "state id out of range");
      if (state_seen[id])
        throw hoa_error(lineno, "duplicate State: " + std::to_string(id));
      state_seen[id] = true;
      std::string tail;
      std::getline(ss, tail);
      tail = trim(tail);
      if (!tail.empty() && tail[0] == '"') {
        size_t close = tail.find('"', 1);
        while (close != std::string::npos && tail[close - 1] == '\\')
          close = tail.find('"', close + 1);
        if (close == std::string::npos)
          throw hoa_error(lineno, "unterminated state name");
        tail = trim(tail.substr(close + 1));
      }
      if (!tail.empty()) {
        if (tail[0] == '{')
          throw hoa_error(lineno, "state-based acceptance is not supported");
        throw hoa_error(lineno, "unexpected tokens after State:");
      }
      cur_state = int(id);
      continue;
    }
    if (cur_state < 0)
      throw hoa_error(lineno, "edge before any State:");
    if (line[0] != '[')
      throw hoa_error(lineno,
                      "implicit edge labels are not supported (expected '[')");
    size_t close = line.find(']');
    if (close == std::string::npos)
      throw hoa_error(lineno, "unterminated label");
    label lab = detail::hoa_label_parser(line.substr(1, close - 1), *num_aps,
                                         lineno)
                    .parse();
    std::string rest = trim(line.substr(close + 1));
    color_set colors = 0;
    size_t brace = rest.find('{');
    if (brace != std::string::npos) {
      size_t endb = rest.find('}', brace);
      if (endb == std::string::npos)
        throw hoa_error(lineno, "unterminated color set");
      std::istringstream cs(rest.substr(brace + 1, endb - brace - 1));
      unsigned c;
      while (cs >> c) {
        if (c >= *num_acc)
          throw hoa_error(lineno, "color index " + std::to_string(c) +
                                      " exceeds declared count");
        colors |= color_set(1) << c;
      }
      rest = trim(rest.substr(0, brace));
    }
    std::istringstream ds(rest);
    unsigned dst;
    if (!(ds >> dst))
      throw hoa_error(lineno, "malformed edge destination");
    std::string extra;
    if (ds >> extra)
      throw hoa_error(lineno, "conjunct destinations are not supported");
    if (dst >= a.num_states())
      throw hoa_error(lineno, "edge destination out of range");
    if (lab.is_false())
      continue; // unsatisfiable label: dead edge
    a.add_edge(unsigned(cur_state), std::move(lab), colors, dst);
  }
  if (!saw_hoa)
    throw hoa_error(lineno, "empty input");
  if (!saw_end)
    throw hoa_error(lineno, "missing --END--");
  a.recompute_flags();
  // acc-name, when present and recognized, must agree with the formula.
  if (acc_name) {
    std::istringstream ns(*acc_name);
    std::string head;
    ns >> head;
    if (head == "Buchi" && a.acc.detect_kind() != acc_kind::buchi)
      throw hoa_error(acc_line, "acc-name Buchi does not match Acceptance");
    if (head == "parity") {
      std::string maxmin, oddeven;
      unsigned k = 0;
      ns >> maxmin >> oddeven >> k;
      if (maxmin != "max" || oddeven != "odd" ||
          a.acc.parity_max_odd_size() != std::optional<unsigned>(k))
        throw hoa_error(acc_line,
                        "acc-name parity does not match Acceptance formula");
    }
  }
  return a;
}

inline std::string label_to_hoa(const label& l) {
  if (l.is_true())
    return "t";
  if (l.is_false())
    return "f";
  std::string out;
  const std::vector<cube>& cs = l.cubes();
  for (size_t i = 0; i < cs.size(); ++i) {
    if (i)
      out += " | ";
    std::string part;
    uint32_t vars = cs[i].vars();
    for (unsigned v = 0; v < max_props; ++v)
      if (vars >> v & 1) {
        if (!part.empty())
          part += '&';
        if (cs[i].neg >> v & 1)
          part += '!';
        part += std::to_string(v);
      }
    out += part;
  }
  return out;
}

/// Print in the same subset that parse_hoa reads; deterministic output, so
/// printing is a canonical normalization.
inline std::string print_hoa(const automaton& a) {
  std::ostringstream os;
  os << "HOA: v1\n";
  os << "States: " << a.num_states() << "\n";
  os << "Start: " << a.initial << "\n";
  os << "AP: " << a.aps.size();
  for (const std::string& ap : a.aps)
    os << ' ' << detail::hoa_quote(ap);
  os << "\n";
  switch (a.acc.detect_kind()) {
  case acc_kind::buchi:
    os << "acc-name: Buchi\n";
    break;
  case acc_kind::parity_max_odd:
    os << "acc-name: parity max odd " << a.acc.num_colors() << "\n";
    break;
  case acc_kind::generalized_buchi:
    os << "acc-name: generalized-Buchi " << a.acc.num_colors() << "\n";
    break;
  case acc_kind::arbitrary:
    if (a.acc.is_tt())
      os << "acc-name: all\n";
    else if (a.acc.is_ff())
      os << "acc-name: none\n";
    break;
  }
  os << "Acceptance: " << a.acc.num_colors() << ' ' << a.acc.to_string()
     << "\n";
  os << "properties: trans-labels explicit-labels trans-acc";
  if (a.deterministic)
    os << " deterministic";
  if (a.complete)
    os << " complete";
  os << "\n--BODY--\n";
  for (unsigned s = 0; s < a.num_states(); ++s) {
    os << "State: " << s << "\n";
    for (const automaton::edge& e : a.states[s]) {
      os << '[' << label_to_hoa(e.lab) << "] " << e.dst;
      if (e.colors) {
        os << " {";
        bool first = true;
        for (unsigned c = 0; c < max_colors; ++c)
          if (e.colors >> c & 1) {
            if (!first)
              os << ' ';
            os << c;
            first = false;
          }
        os << '}';
      }
      os << "\n";
    }
  }
  os << "--END--\n";
  return os.str();
}

} // namespace bubo
