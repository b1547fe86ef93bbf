#include "pqcurve/expression.hpp"

#include <cctype>

namespace pqcurve {

namespace {

using Node = std::shared_ptr<const Expression>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression parse() {
    Node root = sum();
    skip_space();
    if (pos_ < text_.size()) throw SyntaxError(pos_, "operator or end of input");
    return *root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  static Node make(Expression::Kind k, std::size_t off, std::vector<Node> args) {
    auto e = std::make_shared<Expression>();
    e->kind = k;
    e->offset = off;
    e->args = std::move(args);
    return e;
  }

  Node sum() {
    Node lhs = product();
    for (;;) {
      if (peek('+') || peek('-')) {
        auto kind = text_[pos_] == '+' ? Expression::Kind::Add : Expression::Kind::Sub;
        std::size_t off = pos_++;
        lhs = make(kind, off, {lhs, product()});
      } else {
        return lhs;
      }
    }
  }

  Node product() {
    Node lhs = unary();
    for (;;) {
      if (peek('*') || peek('/')) {
        auto kind = text_[pos_] == '*' ? Expression::Kind::Mul : Expression::Kind::Div;
        std::size_t off = pos_++;
        lhs = make(kind, off, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  Node unary() {
    if (peek('-')) {
      std::size_t off = pos_++;
      return make(Expression::Kind::Neg, off, {unary()});
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Node power() {
    Node base = atom();
    if (!peek('^')) return base;
    std::size_t off = pos_++;
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
      skip_space();
    }
    std::size_t start = pos_;
    long long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000) throw SyntaxError(start, "exponent of at most 1000");
      ++pos_;
    }
    if (pos_ == start) throw SyntaxError(pos_, "integer exponent");
    auto e = std::make_shared<Expression>();
    e->kind = Expression::Kind::Pow;
    e->offset = off;
    e->exponent = static_cast<int>(negative ? -value : value);
    e->args = {base};
    return e;
  }

  Node atom() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "operand");
    const char c = text_[pos_];
    const std::size_t off = pos_;
    if (c == '(') {
      ++pos_;
      Node inner = sum();
      if (!peek(')')) throw SyntaxError(pos_, "')'");
      ++pos_;
      return inner;
    }
    if (c == 'z') {
      ++pos_;
      return make(Expression::Kind::Variable, off, {});
    }
    if (c == 'i') {
      ++pos_;
      auto e = std::make_shared<Expression>();
      e->kind = Expression::Kind::Literal;
      e->offset = off;
      e->literal = GaussQ::i_unit();
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    throw SyntaxError(pos_, "operand");
  }

  Node number() {
    const std::size_t off = pos_;
    std::string digits;
    std::size_t decimals = 0;
    bool dot = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (dot) ++decimals;
      } else if (c == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) throw SyntaxError(off, "digits");
    mpz_class num(digits);
    mpz_class den = 1;
    for (std::size_t k = 0; k < decimals; ++k) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    auto e = std::make_shared<Expression>();
    e->kind = Expression::Kind::Literal;
    e->offset = off;
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      ++pos_;
      e->literal = GaussQ(mpq_class(0), q);
    } else {
      e->literal = GaussQ(q);
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

using Fraction = std::pair<ExactPoly, ExactPoly>;

Fraction lower(const Expression& e) {
  const ExactPoly one = ExactPoly::constant(GaussQ(1));
  switch (e.kind) {
    case Expression::Kind::Variable:
      return {ExactPoly::x(), one};
    case Expression::Kind::Literal:
      return {ExactPoly::constant(e.literal), one};
    case Expression::Kind::Neg: {
      auto [n, d] = lower(*e.args[0]);
      return {-n, d};
    }
    case Expression::Kind::Add:
    case Expression::Kind::Sub: {
      auto [an, ad] = lower(*e.args[0]);
      auto [bn, bd] = lower(*e.args[1]);
      ExactPoly g = gcd(ad, bd);
      ExactPoly ad_g = exact_div(ad, g);
      ExactPoly bd_g = exact_div(bd, g);
      ExactPoly num = e.kind == Expression::Kind::Add ? an * bd_g + bn * ad_g : an * bd_g - bn * ad_g;
      return {num, ad_g * bd};
    }
    case Expression::Kind::Mul: {
      auto [an, ad] = lower(*e.args[0]);
      auto [bn, bd] = lower(*e.args[1]);
      return {an * bn, ad * bd};
    }
    case Expression::Kind::Div: {
      auto [an, ad] = lower(*e.args[0]);
      auto [bn, bd] = lower(*e.args[1]);
      if (bn.is_zero()) throw ZeroDenominator(e.offset);
      return {an * bd, ad * bn};
    }
    case Expression::Kind::Pow: {
      auto [n, d] = lower(*e.args[0]);
      if (e.exponent < 0) {
        if (n.is_zero()) throw ZeroDenominator(e.offset);
        return {pow(d, -e.exponent), pow(n, -e.exponent)};
      }
      return {pow(n, e.exponent), pow(d, e.exponent)};
    }
  }
  throw std::logic_error("unknown expression node");
}

}  // namespace

Expression parse_expression(std::string_view text) { return Parser(text).parse(); }

std::pair<ExactPoly, ExactPoly> lower_fraction(const Expression& e) { return lower(e); }

RationalFunction parse_function(std::string_view text) {
  auto [n, d] = lower(parse_expression(text));
  if (d.is_zero()) throw ZeroDenominator();
  return RationalFunction::normalize(n, d);
}

}  // namespace pqcurve
