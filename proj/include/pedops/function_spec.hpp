#ifndef PEDOPS_FUNCTION_SPEC_HPP
#define PEDOPS_FUNCTION_SPEC_HPP

#include <optional>
#include <string>

#include "pedops/expression.hpp"
#include "pedops/operator_core.hpp"

namespace pedops {

enum class Builtin {
  constant,   // 1
  identity,   // x
  square,     // x^2
  cube,       // x^3
  quartic,    // x^4
  exp_neg,    // exp(-x)
  sin_fn,     // sin(x)
  abs_shift,  // |x - 1/2|
  sqrt_fn,    // sqrt(x)
};

std::optional<Builtin> builtin_from_name(const std::string& name);
std::string builtin_name(Builtin b);
double evaluate_builtin(Builtin b, double x);

/// An evaluable real function: a named builtin or a parsed expression.
class FunctionSpec {
 public:
  FunctionSpec() : builtin_(Builtin::identity) {}
  explicit FunctionSpec(Builtin b) : builtin_(b) {}
  explicit FunctionSpec(ExprPtr expr) : expr_(std::move(expr)) {}

  // Accepts a builtin name first, otherwise parses src as an expression.
  static FunctionSpec parse(const std::string& src);

  double operator()(double x) const {
    return expr_ ? evaluate_expression(expr_, x)
                 : evaluate_builtin(*builtin_, x);
  }

  RealFunction as_function() const {
    FunctionSpec copy = *this;
    return [copy](double x) { return copy(x); };
  }

  std::string description() const;

 private:
  std::optional<Builtin> builtin_;
  ExprPtr expr_;
};

}  // namespace pedops

#endif
