#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "formula.hpp"

namespace bubo {

struct parse_error : std::runtime_error {
  parse_error(size_t offset, std::vector<std::string> expected, std::string found)
      : std::runtime_error(render(offset, expected, found)),
        offset(offset),
        expected(std::move(expected)),
        found(std::move(found)) {}

  size_t offset;
  std::vector<std::string> expected;
  std::string found;

private:
  static std::string render(size_t off, const std::vector<std::string>& exp,
                            const std::string& found) {
    std::string m = "syntax error at byte " + std::to_string(off) + ": expected ";
    for (size_t i = 0; i < exp.size(); ++i) {
      if (i)
        m += i + 1 == exp.size() ? " or " : ", ";
      m += exp[i];
    }
    m += ", found " + found;
    return m;
  }
};

namespace detail {

class ltl_parser {
public:
  explicit ltl_parser(std::string_view text) : text_(text) {}

  formula parse() {
    formula f = parse_iff_implies();
    skip_ws();
    if (pos_ != text_.size())
      fail({"end of input", "binary operator"});
    return f;
  }

private:
  // implies/iff level, right-associative
  formula parse_iff_implies() {
    formula lhs = parse_or();
    skip_ws();
    if (eat("->"))
      return formula::implies(lhs, parse_iff_implies());
    if (eat("<->"))
      return formula::iff(lhs, parse_iff_implies());
    return lhs;
  }

  formula parse_or() {
    formula lhs = parse_xor();
    while (true) {
      skip_ws();
      if (peek("->") || peek("<->"))
        return lhs;
      if (eat("||") || eat("|"))
        lhs = formula::or_(lhs, parse_xor());
      else
        return lhs;
    }
  }

  formula parse_xor() {
    formula lhs = parse_and();
    while (true) {
      skip_ws();
      if (eat_word("xor") || eat("^"))
        lhs = formula::xor_(lhs, parse_and());
      else
        return lhs;
    }
  }

  formula parse_and() {
    formula lhs = parse_temporal_bin();
    while (true) {
      skip_ws();
      if (eat("&&") || eat("&"))
        lhs = formula::and_(lhs, parse_temporal_bin());
      else
        return lhs;
    }
  }

  // U/R/W level, right-associative
  formula parse_temporal_bin() {
    formula lhs = parse_unary();
    skip_ws();
    if (eat_word("U"))
      return formula::U(lhs, parse_temporal_bin());
    if (eat_word("R"))
      return formula::R(lhs, parse_temporal_bin());
    if (eat_word("W"))
      return formula::W(lhs, parse_temporal_bin());
    return lhs;
  }

  formula parse_unary() {
    skip_ws();
    if (eat("!"))
      return formula::not_(parse_unary());
    if (eat_word("X"))
      return formula::X(parse_unary());
    if (eat_word("F"))
      return formula::F(parse_unary());
    if (eat_word("G"))
      return formula::G(parse_unary());
    return parse_atom();
  }

  formula parse_atom() {
    skip_ws();
    if (pos_ >= text_.size())
      fail({"atomic proposition", "(", "!", "X", "F", "G"});
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      formula f = parse_iff_implies();
      skip_ws();
      if (!eat(")"))
        fail({")"});
      return f;
    }
    if (c == '"')
      return formula::ap(parse_quoted());
    if (c == '0' || c == '1') {
      ++pos_;
      return c == '1' ? formula::tt() : formula::ff();
    }
    if (isalpha((unsigned char)c) || c == '_') {
      std::string word = parse_word();
      if (word == "true")
        return formula::tt();
      if (word == "false")
        return formula::ff();
      if (word == "xor" || word == "U" || word == "R" || word == "W") {
        pos_ -= word.size();
        fail({"atomic proposition"});
      }
      return formula::ap(word);
    }
    fail({"atomic proposition", "(", "!", "X", "F", "G"});
  }

  std::string parse_word() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string parse_quoted() {
    ++pos_; // opening quote
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size())
        ++pos_;
      out += text_[pos_++];
    }
    if (pos_ >= text_.size())
      fail({"closing quote"});
    ++pos_;
    if (out.empty())
      fail({"nonempty proposition name"});
    return out;
  }

  void skip_ws() {
    while (pos_ < text_.size() && isspace((unsigned char)text_[pos_]))
      ++pos_;
  }

  bool peek(std::string_view s) const {
    return text_.substr(pos_, s.size()) == s;
  }

  bool eat(std::string_view s) {
    skip_ws();
    if (!peek(s))
      return false;
    pos_ += s.size();
    return true;
  }

  // A word token: must not be followed by an identifier character, so the
  // proposition "Ux" is not read as an operator.
  bool eat_word(std::string_view s) {
    skip_ws();
    if (!peek(s))
      return false;
    size_t end = pos_ + s.size();
    if (end < text_.size() &&
        (isalnum((unsigned char)text_[end]) || text_[end] == '_'))
      return false;
    pos_ = end;
    return true;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string found = pos_ >= text_.size()
                            ? std::string("end of input")
                            : "'" + std::string(1, text_[pos_]) + "'";
    throw parse_error(pos_, std::move(expected), std::move(found));
  }

  std::string_view text_;
  size_t pos_ = 0;
};

} // namespace detail

inline formula parse_ltl(std::string_view text) {
  return detail::ltl_parser(text).parse();
}

} // namespace bubo
