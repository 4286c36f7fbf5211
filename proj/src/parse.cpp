#include "bess/parse.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "bess/errors.hpp"

namespace bess {

namespace {

// Precedence-climbing parser over a cursor into the source text.  Positions
// are byte offsets converted to line/column only when an error is reported.
class Parser {
 public:
  Parser(std::string_view src, const FieldSpec& spec, int nvars)
      : src_(src), spec_(spec), nvars_(nvars) {}

  RatFunc parse_scalar() {
    RatFunc v = parse_expr(0);
    expect_end();
    return v;
  }

  RatMatrix parse_matrix_or_scalar() {
    skip_ws();
    if (peek() != '[') return RatMatrix::from_rows({{parse_scalar()}});
    std::vector<std::vector<RatFunc>> rows;
    consume('[');
    for (;;) {
      rows.push_back(parse_row());
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    consume(']');
    expect_end();
    if (!rows.empty())
      for (const auto& row : rows)
        if (row.size() != rows[0].size()) fail("ragged matrix rows");
    return RatMatrix::from_rows(rows);
  }

 private:
  std::string_view src_;
  const FieldSpec& spec_;
  int nvars_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& message) const {
    int line = 1, col = 1;
    for (size_t i = 0; i < pos_ && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(message + " at line " + std::to_string(line) + ", column " +
                      std::to_string(col));
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  void consume(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void expect_end() {
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
  }

  std::vector<RatFunc> parse_row() {
    consume('[');
    std::vector<RatFunc> row;
    for (;;) {
      row.push_back(parse_expr(0));
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    consume(']');
    return row;
  }

  // prec 1: + -, prec 2: * /; '^' is a postfix integer power.  A '*' may be
  // omitted before a factor that starts with a variable, the adjoined root,
  // or '(' (juxtaposition), but not before a bare literal, so "2 3" stays a
  // syntax error instead of silently multiplying.
  RatFunc parse_expr(int min_prec) {
    RatFunc lhs = parse_unary();
    for (;;) {
      skip_ws();
      const char next = peek();
      const bool implicit = next == 'z' || next == 'g' || next == '(';
      const char op = implicit ? '*' : next;
      int prec;
      if (op == '+' || op == '-')
        prec = 1;
      else if (op == '*' || op == '/')
        prec = 2;
      else
        break;
      if (prec < min_prec) break;
      if (!implicit) ++pos_;
      RatFunc rhs = parse_expr(prec + 1);
      switch (op) {
        case '+':
          lhs = lhs + rhs;
          break;
        case '-':
          lhs = lhs - rhs;
          break;
        case '*':
          lhs = lhs * rhs;
          break;
        default:
          if (rhs.is_zero()) fail("division by the zero function");
          lhs = lhs / rhs;
      }
    }
    return lhs;
  }

  RatFunc parse_unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -parse_unary();
    }
    if (peek() == '+') {
      ++pos_;
      return parse_unary();
    }
    return parse_power();
  }

  RatFunc parse_power() {
    RatFunc base = parse_primary();
    skip_ws();
    while (peek() == '^') {
      ++pos_;
      skip_ws();
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        ++pos_;
      }
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent");
      long e = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        e = e * 10 + (src_[pos_] - '0');
        if (e > 1'000'000) fail("exponent too large");
        ++pos_;
      }
      if (neg && base.is_zero()) fail("negative power of the zero function");
      base = base.pow(int(neg ? -e : e));
      skip_ws();
    }
    return base;
  }

  RatFunc parse_primary() {
    skip_ws();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      RatFunc v = parse_expr(0);
      consume(')');
      return v;
    }
    if (c == 'z') return parse_variable();
    if (c == 'g') {
      ++pos_;
      return RatFunc::constant(spec_, nvars_, spec_.adjoined_root());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_literal();
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  RatFunc parse_variable() {
    const size_t start = pos_;
    ++pos_;  // 'z'
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a variable index");
    long idx = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      idx = idx * 10 + (src_[pos_] - '0');
      if (idx > 1'000'000) fail("variable index too large");
      ++pos_;
    }
    if (idx < 1 || idx > nvars_) {
      pos_ = start;
      throw UnknownVariable("z" + std::to_string(idx) + " is outside z1..z" +
                            std::to_string(nvars_));
    }
    return RatFunc::variable(spec_, nvars_, int(idx));
  }

  RatFunc parse_literal() {
    const size_t start = pos_;
    if (peek() == '0' && pos_ + 1 < src_.size() &&
        (src_[pos_ + 1] == 'x' || src_[pos_ + 1] == 'X')) {
      pos_ += 2;
      while (std::isxdigit(static_cast<unsigned char>(peek()))) ++pos_;
    } else {
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    return RatFunc::constant(spec_, nvars_, spec_.parse_element(text));
  }
};

}  // namespace

RatFunc parse_ratfunc(std::string_view src, const FieldSpec& spec, int nvars) {
  return Parser(src, spec, nvars).parse_scalar();
}

RatMatrix parse_matrix(std::string_view src, const FieldSpec& spec, int nvars) {
  return Parser(src, spec, nvars).parse_matrix_or_scalar();
}

}  // namespace bess
