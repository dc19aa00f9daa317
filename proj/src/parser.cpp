#include "ncque/parser.hpp"

#include <cctype>

namespace ncque {

Element ParsedValue::as_primal(const AlgebraPtr& algebra) const
{
  if (kind == Kind::primal) return *primal;
  if (kind == Kind::scalar) return algebra->scalar(scalar);
  throw std::invalid_argument("expected a primal element, got a dual one");
}

DualElement ParsedValue::as_dual(int truncation) const
{
  if (kind == Kind::dual) return *dual;
  if (kind == Kind::scalar) return DualElement::monomial(DualMonomial{}, scalar);
  (void)truncation;
  throw std::invalid_argument("expected a dual element, got a primal one");
}

namespace {

using Kind = ParsedValue::Kind;

class Parser {
 public:
  Parser(std::string_view text, AlgebraPtr algebra)
      : s_(text), alg_(std::move(algebra)), order_(alg_->truncation())
  {
  }

  ParsedValue run()
  {
    ParsedValue v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c)
  {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c)
  {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool starts_with(std::string_view w) const { return s_.substr(pos_, w.size()) == w; }

  ParsedValue scalar(const Series& c) const { return {Kind::scalar, c, std::nullopt, std::nullopt}; }
  ParsedValue primal(Element e) const { return {Kind::primal, Series(order_), std::move(e), std::nullopt}; }
  ParsedValue dual(DualElement d) const { return {Kind::dual, Series(order_), std::nullopt, std::move(d)}; }

  Kind joint(const ParsedValue& a, const ParsedValue& b) const
  {
    if (a.kind == Kind::scalar) return b.kind;
    if (b.kind == Kind::scalar || a.kind == b.kind) return a.kind;
    fail("mixed primal and dual tokens");
  }

  ParsedValue add(const ParsedValue& a, const ParsedValue& b, bool subtract) const
  {
    switch (joint(a, b)) {
      case Kind::scalar:
        return scalar(subtract ? a.scalar - b.scalar : a.scalar + b.scalar);
      case Kind::primal: {
        Element x = a.as_primal(alg_);
        const Element y = b.as_primal(alg_);
        return primal(subtract ? x - y : x + y);
      }
      case Kind::dual: {
        DualElement x = a.as_dual(order_);
        const DualElement y = b.as_dual(order_);
        return dual(subtract ? x - y : x + y);
      }
    }
    return a;
  }

  ParsedValue mul(const ParsedValue& a, const ParsedValue& b) const
  {
    switch (joint(a, b)) {
      case Kind::scalar:
        return scalar(a.scalar * b.scalar);
      case Kind::primal:
        return primal(a.as_primal(alg_) * b.as_primal(alg_));
      case Kind::dual:
        return dual(label_product(a.as_dual(order_), b.as_dual(order_)));
    }
    return a;
  }

  ParsedValue negate(const ParsedValue& a) const
  {
    ParsedValue v = a;
    v.scalar = -v.scalar;
    if (v.primal) v.primal = -*v.primal;
    if (v.dual) v.dual = -*v.dual;
    return v;
  }

  ParsedValue expr()
  {
    skip();
    ParsedValue v = term();
    while (true) {
      if (eat('+'))
        v = add(v, term(), false);
      else if (eat('-'))
        v = add(v, term(), true);
      else
        return v;
    }
  }

  ParsedValue term()
  {
    ParsedValue v = factor();
    while (eat('*')) v = mul(v, factor());
    return v;
  }

  ParsedValue factor()
  {
    skip();
    if (eat('-')) return negate(factor());
    ParsedValue base = atom();
    if (!eat('^')) return base;
    const unsigned n = natural();
    ParsedValue v = scalar(Series::constant(1, order_));
    for (unsigned k = 0; k < n; ++k) v = mul(v, base);
    return v;
  }

  unsigned natural()
  {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    return static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
  }

  Rational rational_literal()
  {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      const std::size_t d = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (d == pos_) fail("expected a denominator");
    }
    try {
      return parse_rational(s_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  template <std::size_t N>
  MultiIndex<N> index_list()
  {
    expect('[');
    MultiIndex<N> m{};
    for (std::size_t k = 0; k < N; ++k) {
      if (k) expect(',');
      m[k] = static_cast<int>(natural());
    }
    expect(']');
    return m;
  }

  // exp( [-] [rational ['*']] rho )
  ParsedValue exp_rho()
  {
    expect('(');
    skip();
    Rational c = 1;
    if (eat('-')) c = -1;
    skip();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      c *= rational_literal();
      eat('*');
    } else if (eat('(')) {
      Rational sign = eat('-') ? -1 : 1;
      c *= sign * rational_literal();
      expect(')');
      eat('*');
    }
    skip();
    if (!starts_with("rho")) fail("exp() accepts only c*rho");
    pos_ += 3;
    expect(')');
    return primal(alg_->exp_rho(c));
  }

  ParsedValue atom()
  {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      ParsedValue v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return scalar(Series::constant(rational_literal(), order_));

    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string_view word = s_.substr(start, pos_ - start);
    if (word.empty()) fail("unexpected '" + std::string(1, ch) + "'");

    for (int g = 0; g < kNumGenerators; ++g)
      if (word == generator_token(static_cast<Generator>(g))) return primal(alg_->generator(static_cast<Generator>(g)));
    if (word.size() == 2 && word[0] == 'h' && word[1] >= '1' && word[1] <= '3')
      return scalar(Series::hbar(word[1] - '0', order_));
    if (word.size() == 2 && word[0] == 'x' && word[1] >= '1' && word[1] <= '7')
      return dual(DualElement::monomial(chi(word[1] - '0'), order_));
    if (word == "rho") return primal(alg_->rho());
    if (word == "lambda") return primal(alg_->lambda());
    if (word == "exp") return exp_rho();
    if (word == "W") {
      DualMonomial m;
      m.w = index_list<3>();
      return dual(DualElement::monomial(m, order_));
    }
    if (word == "Y") {
      DualMonomial m;
      m.y = index_list<4>();
      return dual(DualElement::monomial(m, order_));
    }
    pos_ = start;
    fail("unknown token '" + std::string(word) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  AlgebraPtr alg_;
  int order_;
};

}  // namespace

ParsedValue parse_expression(std::string_view text, const AlgebraPtr& algebra)
{
  return Parser(text, algebra).run();
}

Element parse_element(std::string_view text, const AlgebraPtr& algebra)
{
  const ParsedValue v = parse_expression(text, algebra);
  if (v.kind == Kind::dual) throw ParseError("expected a primal expression", 0);
  return v.as_primal(algebra);
}

DualElement parse_dual(std::string_view text, int truncation)
{
  DeformParams p;
  p.truncation = truncation;
  const ParsedValue v = parse_expression(text, Algebra::create(p));
  if (v.kind == Kind::primal) throw ParseError("expected a dual expression", 0);
  return v.as_dual(truncation);
}

}  // namespace ncque
