#include "sgl/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "sgl/errors.hpp"

namespace sgl {

struct Expression::Node {
  enum class Kind { number, variable, unary_minus, add, sub, mul, div, pow, call } kind;
  double value = 0.0;
  std::string function;
  std::vector<std::shared_ptr<const Node>> args;

  double eval(double n) const {
    switch (kind) {
      case Kind::number: return value;
      case Kind::variable: return n;
      case Kind::unary_minus: return -args[0]->eval(n);
      case Kind::add: return args[0]->eval(n) + args[1]->eval(n);
      case Kind::sub: return args[0]->eval(n) - args[1]->eval(n);
      case Kind::mul: return args[0]->eval(n) * args[1]->eval(n);
      case Kind::div: return args[0]->eval(n) / args[1]->eval(n);
      case Kind::pow: return std::pow(args[0]->eval(n), args[1]->eval(n));
      case Kind::call: {
        const double a = args[0]->eval(n);
        if (function == "floor") return std::floor(a);
        if (function == "ceil") return std::ceil(a);
        if (function == "sqrt") return std::sqrt(a);
        if (function == "log") return std::log(a);
        if (function == "exp") return std::exp(a);
        return std::fabs(a);
      }
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidInput("cannot parse expression '" + s_ + "' at offset " + std::to_string(pos_) +
                       ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static NodePtr binary(Kind k, NodePtr a, NodePtr b) {
    auto node = std::make_shared<Expression::Node>();
    node->kind = k;
    node->args = {std::move(a), std::move(b)};
    return node;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Kind::add, lhs, term());
      } else if (accept('-')) {
        lhs = binary(Kind::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }
  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Kind::mul, lhs, factor());
      } else if (accept('/')) {
        lhs = binary(Kind::div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }
  // Exponentiation is right-associative and binds tighter than unary minus.
  NodePtr factor() {
    if (accept('-')) {
      auto node = std::make_shared<Expression::Node>();
      node->kind = Kind::unary_minus;
      node->args = {factor()};
      return node;
    }
    NodePtr base = primary();
    if (accept('^')) return binary(Kind::pow, base, factor());
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (accept('(')) {
      NodePtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      auto node = std::make_shared<Expression::Node>();
      node->kind = Kind::number;
      node->value = v;
      return node;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      auto node = std::make_shared<Expression::Node>();
      if (name == "n") {
        node->kind = Kind::variable;
        return node;
      }
      if (name != "floor" && name != "ceil" && name != "sqrt" && name != "log" && name != "exp" &&
          name != "abs") {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      if (!accept('(')) fail("expected '(' after " + name);
      node->kind = Kind::call;
      node->function = name;
      node->args = {expr()};
      if (!accept(')')) fail("expected ')'");
      return node;
    }
    fail("unexpected character");
  }
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(text).parse();
  return e;
}

double Expression::operator()(double n) const { return root_->eval(n); }

}  // namespace sgl
