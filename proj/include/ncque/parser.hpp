#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ncque/algebra.hpp"
#include "ncque/dual.hpp"

namespace ncque {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position)
  {
  }
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Result of evaluating an expression: a scalar series, a primal element, or a dual element.
struct ParsedValue {
  enum class Kind { scalar, primal, dual };
  Kind kind = Kind::scalar;
  Series scalar;
  std::optional<Element> primal;
  std::optional<DualElement> dual;

  Element as_primal(const AlgebraPtr& algebra) const;
  DualElement as_dual(int truncation) const;
};

/// expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
/// factor := atom ('^' nat)?; atom := rational | token | '(' expr ')' | '-' factor.
///
/// Tokens: h1 h2 h3, Th Ph Ps Q1 Q2 P1 P2, rho, lambda, exp(c*rho),
/// W[i,j,k], Y[a,b,c,d], x1..x7. Products are taken left to right and
/// normal-ordered in `algebra`; a product of dual tokens is the commutative
/// label product W^K Y^L . W^K' Y^L' = W^{K+K'} Y^{L+L'}.
/// Mixing primal and dual tokens throws ParseError.
ParsedValue parse_expression(std::string_view text, const AlgebraPtr& algebra);

Element parse_element(std::string_view text, const AlgebraPtr& algebra);
DualElement parse_dual(std::string_view text, int truncation);

}  // namespace ncque
