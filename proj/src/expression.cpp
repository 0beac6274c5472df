#include "pedops/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace pedops {

namespace {

ExprPtr make_node(ExprNode node) {
  return std::make_shared<const ExprNode>(std::move(node));
}

bool known_function(const std::string& name) {
  return name == "sin" || name == "cos" || name == "exp" || name == "log" ||
         name == "sqrt" || name == "abs";
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  ExprPtr parse() {
    skip_space();
    if (pos_ >= src_.size()) {
      throw ExpressionError("empty expression", 0);
    }
    ExprPtr e = expr();
    skip_space();
    if (pos_ < src_.size()) {
      fail("expected operator or end of input");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::ostringstream os;
    os << "syntax error at offset " << pos_ << ": " << expected;
    throw ExpressionError(os.str(), static_cast<long>(pos_));
  }

  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (true) {
      if (consume('+')) {
        e = make_node({ExprNode::Kind::add, 0, "", e, term()});
      } else if (consume('-')) {
        e = make_node({ExprNode::Kind::sub, 0, "", e, term()});
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (true) {
      if (consume('*')) {
        e = make_node({ExprNode::Kind::mul, 0, "", e, factor()});
      } else if (consume('/')) {
        e = make_node({ExprNode::Kind::div, 0, "", e, factor()});
      } else {
        return e;
      }
    }
  }

  ExprPtr factor() {
    ExprPtr b = base();
    if (consume('^')) {
      return make_node({ExprNode::Kind::pow, 0, "", b, factor()});
    }
    return b;
  }

  ExprPtr base() {
    skip_space();
    if (pos_ >= src_.size()) {
      fail("expected number, 'x', identifier, '(' or '-'");
    }
    char c = src_[pos_];
    if (c == '-') {
      ++pos_;
      return make_node({ExprNode::Kind::negate, 0, "", base(), nullptr});
    }
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return number();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      }
      std::string ident = src_.substr(start, pos_ - start);
      if (ident == "x") {
        return make_node({ExprNode::Kind::variable, 0, "", nullptr, nullptr});
      }
      if (!known_function(ident)) {
        std::ostringstream os;
        os << "unknown identifier '" << ident << "' at offset " << start;
        throw ExpressionError(os.str(), static_cast<long>(start));
      }
      if (!consume('(')) fail("expected '(' after function name");
      ExprPtr arg = expr();
      if (!consume(')')) fail("expected ')'");
      return make_node({ExprNode::Kind::call, 0, ident, arg, nullptr});
    }
    fail("expected number, 'x', identifier, '(' or '-'");
  }

  ExprPtr number() {
    const char* begin = src_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("expected number");
    pos_ += static_cast<std::size_t>(end - begin);
    return make_node({ExprNode::Kind::number, v, "", nullptr, nullptr});
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

void print_rec(const ExprPtr& e, std::ostringstream& os) {
  switch (e->kind) {
    case ExprNode::Kind::number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", e->value);
      os << buf;
      return;
    }
    case ExprNode::Kind::variable:
      os << 'x';
      return;
    case ExprNode::Kind::negate:
      os << "(-";
      print_rec(e->lhs, os);
      os << ')';
      return;
    case ExprNode::Kind::call:
      os << e->name << '(';
      print_rec(e->lhs, os);
      os << ')';
      return;
    default: {
      char op = '?';
      switch (e->kind) {
        case ExprNode::Kind::add: op = '+'; break;
        case ExprNode::Kind::sub: op = '-'; break;
        case ExprNode::Kind::mul: op = '*'; break;
        case ExprNode::Kind::div: op = '/'; break;
        case ExprNode::Kind::pow: op = '^'; break;
        default: break;
      }
      os << '(';
      print_rec(e->lhs, os);
      os << op;
      print_rec(e->rhs, os);
      os << ')';
      return;
    }
  }
}

}  // namespace

ExprPtr parse_expression(const std::string& src) { return Parser(src).parse(); }

std::string print_expression(const ExprPtr& expr) {
  std::ostringstream os;
  print_rec(expr, os);
  return os.str();
}

bool expressions_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprNode::Kind::number:
      return a->value == b->value;
    case ExprNode::Kind::variable:
      return true;
    case ExprNode::Kind::negate:
      return expressions_equal(a->lhs, b->lhs);
    case ExprNode::Kind::call:
      return a->name == b->name && expressions_equal(a->lhs, b->lhs);
    default:
      return expressions_equal(a->lhs, b->lhs) &&
             expressions_equal(a->rhs, b->rhs);
  }
}

double evaluate_expression(const ExprPtr& e, double x) {
  switch (e->kind) {
    case ExprNode::Kind::number:
      return e->value;
    case ExprNode::Kind::variable:
      return x;
    case ExprNode::Kind::negate:
      return -evaluate_expression(e->lhs, x);
    case ExprNode::Kind::add:
      return evaluate_expression(e->lhs, x) + evaluate_expression(e->rhs, x);
    case ExprNode::Kind::sub:
      return evaluate_expression(e->lhs, x) - evaluate_expression(e->rhs, x);
    case ExprNode::Kind::mul:
      return evaluate_expression(e->lhs, x) * evaluate_expression(e->rhs, x);
    case ExprNode::Kind::div: {
      double num = evaluate_expression(e->lhs, x);
      double den = evaluate_expression(e->rhs, x);
      if (den == 0.0) {
        throw ExpressionError("division by zero at x=" + std::to_string(x));
      }
      return num / den;
    }
    case ExprNode::Kind::pow:
      return std::pow(evaluate_expression(e->lhs, x),
                      evaluate_expression(e->rhs, x));
    case ExprNode::Kind::call: {
      double a = evaluate_expression(e->lhs, x);
      if (e->name == "sin") return std::sin(a);
      if (e->name == "cos") return std::cos(a);
      if (e->name == "exp") return std::exp(a);
      if (e->name == "abs") return std::fabs(a);
      if (e->name == "sqrt") {
        if (a < 0.0) {
          throw ExpressionError("sqrt of negative argument at x=" +
                                std::to_string(x));
        }
        return std::sqrt(a);
      }
      if (e->name == "log") {
        // nonpositive log is an evaluation error, not -inf
        if (a <= 0.0) {
          throw ExpressionError("log of nonpositive argument at x=" +
                                std::to_string(x));
        }
        return std::log(a);
      }
      throw ExpressionError("unknown function '" + e->name + "'");
    }
  }
  throw ExpressionError("malformed expression node");
}

}  // namespace pedops
