#include <string>
#include <vector>

#include "doctest.h"
#include "pedops/expression.hpp"
#include "pedops/function_spec.hpp"

using namespace pedops;

namespace {

double eval(const std::string& src, double x) {
  return evaluate_expression(parse_expression(src), x);
}

}  // namespace

TEST_CASE("basic evaluation") {
  CHECK(eval("x^2", 3.0) == 9.0);
  CHECK(eval("exp(-x)*(1+x)", 0.0) == 1.0);
  CHECK(eval("2^3^2", 0.0) == 512.0);  // right-associative
  CHECK(eval("2-3-4", 0.0) == -5.0);   // left-associative
  CHECK(eval("1+2*3", 0.0) == 7.0);
  CHECK(eval("-x^2", 2.0) == doctest::Approx(4.0));  // (-x)^2 per grammar
  CHECK(eval("abs(x-0.5)", 0.2) == doctest::Approx(0.3));
  CHECK(eval("sqrt(x)", 4.0) == 2.0);
  CHECK(eval("cos(0)", 1.0) == 1.0);
  CHECK(eval("log(x)", 1.0) == 0.0);
  CHECK(eval(" ( x + 1 ) / 2 ", 3.0) == 2.0);
}

TEST_CASE("syntax errors carry a byte offset") {
  CHECK_THROWS_AS(parse_expression(""), ExpressionError);
  CHECK_THROWS_AS(parse_expression("x+"), ExpressionError);
  CHECK_THROWS_AS(parse_expression("(x"), ExpressionError);
  CHECK_THROWS_AS(parse_expression("x y"), ExpressionError);
  CHECK_THROWS_AS(parse_expression("2**3"), ExpressionError);
  try {
    parse_expression("x + foo(x)");
    CHECK(false);
  } catch (const ExpressionError& e) {
    CHECK(e.offset() == 4);
    CHECK(std::string(e.what()).find("foo") != std::string::npos);
  }
}

TEST_CASE("no implicit multiplication") {
  CHECK_THROWS_AS(parse_expression("2x"), ExpressionError);
  CHECK_THROWS_AS(parse_expression("2(x+1)"), ExpressionError);
}

TEST_CASE("evaluation errors instead of silent infinities") {
  CHECK_THROWS_AS(eval("log(x)", 0.0), ExpressionError);
  CHECK_THROWS_AS(eval("log(x-1)", 0.5), ExpressionError);
  CHECK_THROWS_AS(eval("1/x", 0.0), ExpressionError);
  CHECK_THROWS_AS(eval("sqrt(-x)", 2.0), ExpressionError);
}

TEST_CASE("print-parse round trip on an expression corpus") {
  const std::vector<std::string> corpus = {
      "x", "1", "0.5", "-x", "x+1", "x-1", "1-x", "x*x", "x/2", "x^2",
      "x^3", "2^x", "x^0.5", "-x^2", "-(x+1)", "x+2*3", "(x+2)*3",
      "x*(1-x)", "x/(1+x)", "1/(1+x^2)", "sin(x)", "cos(x)", "exp(x)",
      "exp(-x)", "log(1+x)", "sqrt(x)", "abs(x-0.5)", "sin(x)^2",
      "sin(x^2)", "sin(x)+cos(x)", "exp(-x)*(1+x)", "x^2-2*x+1",
      "2^3^2", "1+2+3+4", "1*2*3*4", "x-x", "x/x", "x^x",
      "sqrt(1+x^2)", "abs(sin(3*x))", "exp(-x^2/2)", "(1-x)^4",
      "x^2/(1+x)", "log(exp(x))", "cos(x)^2+sin(x)^2", "-1",
      "0.123456789012345", "x*2+x/2", "((x))", "sin(cos(exp(x)))"};
  CHECK(corpus.size() >= 50);
  for (const std::string& src : corpus) {
    const ExprPtr ast = parse_expression(src);
    const std::string printed = print_expression(ast);
    const ExprPtr reparsed = parse_expression(printed);
    CHECK_MESSAGE(expressions_equal(ast, reparsed), src, " -> ", printed);
  }
}

TEST_CASE("function spec selects builtins before expressions") {
  const FunctionSpec sq = FunctionSpec::parse("square");
  CHECK(sq(3.0) == 9.0);
  CHECK(sq.description() == "square");
  const FunctionSpec expr = FunctionSpec::parse("x^2+1");
  CHECK(expr(3.0) == 10.0);
  const FunctionSpec shift = FunctionSpec::parse("abs_shift");
  CHECK(shift(0.1) == doctest::Approx(0.4));
  CHECK_THROWS_AS(FunctionSpec::parse("not a function"), ExpressionError);
}
