#ifndef PEDOPS_EXPRESSION_HPP
#define PEDOPS_EXPRESSION_HPP

#include <memory>
#include <stdexcept>
#include <string>

namespace pedops {

/// Parse or evaluation failure; carries the byte offset for parse
/// errors (-1 when not applicable).
class ExpressionError : public std::runtime_error {
 public:
  ExpressionError(const std::string& what, long offset = -1)
      : std::runtime_error(what), offset_(offset) {}
  long offset() const { return offset_; }

 private:
  long offset_;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { number, variable, negate, add, sub, mul, div, pow, call };
  Kind kind;
  double value = 0.0;      // number
  std::string name;        // call
  ExprPtr lhs;
  ExprPtr rhs;             // binary only
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' factor)?          -- '^' right-associative
//   base   := number | 'x' | ident '(' expr ')' | '(' expr ')' | '-' base
// Known idents: sin cos exp log sqrt abs. No implicit multiplication.
ExprPtr parse_expression(const std::string& src);

// Fully parenthesized form; parse(print(e)) reproduces e.
std::string print_expression(const ExprPtr& expr);

bool expressions_equal(const ExprPtr& a, const ExprPtr& b);

// Throws ExpressionError on log of a nonpositive argument, sqrt of a
// negative one, or division by zero.
double evaluate_expression(const ExprPtr& expr, double x);

}  // namespace pedops

#endif
