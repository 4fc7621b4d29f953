#pragma once

#include <map>
#include <memory>
#include <string>

namespace conemink {

/// Tiny closed-form expression evaluator for tail-family generators.
/// Grammar: + - * / ^ (right-assoc), unary minus, parentheses, decimal
/// numbers, identifiers resolved from an environment (k, beta0, params).
class Expr {
 public:
  struct Node;

  static Expr parse(const std::string& text);
  double eval(const std::map<std::string, double>& env) const;
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace conemink
