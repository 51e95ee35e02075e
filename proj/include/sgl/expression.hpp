#pragma once

#include <memory>
#include <string>

namespace sgl {

// Tiny arithmetic expression in one variable `n`, used for antitree branching
// functions such as "n+1" or "floor(2^(n/3))".
// Grammar: + - * / ^, unary minus, parentheses, numbers, n, and the functions
// floor, ceil, sqrt, log, exp, abs.
class Expression {
 public:
  static Expression parse(const std::string& text);
  double operator()(double n) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace sgl
