/*
 * Copyright (c) 2026 The kenverify Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KENVERIFY_EXPR_HPP
#define KENVERIFY_EXPR_HPP

#include "jet2.hpp"

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kv::expr {

enum class NodeKind { Number, Constant, Variable, Negate, Binary, Call };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Sin, Cos, Tan, Exp, Log, Sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node
{
  NodeKind kind = NodeKind::Number;
  double number = 0.0; // Number literal, or the value of a Constant
  std::string name;    // Variable or Constant name
  BinaryOp op = BinaryOp::Add;
  Function fn = Function::Sin;
  NodePtr lhs; // Negate / Call operand, or left operand of Binary
  NodePtr rhs;
};

/// Immutable expression tree. Copies share structure.
class Expr
{
public:
  Expr();

  static Expr number(double value); // negative values become Negate(Number)
  static Expr variable(std::string name);
  static Expr constant(std::string_view name); // "pi" or "e"
  static Expr call(Function fn, const Expr &arg);

  friend Expr operator-(const Expr &a);
  friend Expr operator+(const Expr &a, const Expr &b);
  friend Expr operator-(const Expr &a, const Expr &b);
  friend Expr operator*(const Expr &a, const Expr &b);
  friend Expr operator/(const Expr &a, const Expr &b);
  friend Expr pow(const Expr &a, const Expr &b);

  const Node &root() const { return *root_; }
  const NodePtr &node() const { return root_; }

  /// Surface-grammar text; parse(to_string()) is structurally identical.
  std::string to_string() const;
  std::set<std::string> variables() const;
  bool structurally_equal(const Expr &other) const;
  bool references(std::string_view name) const;

  explicit Expr(NodePtr root) : root_(std::move(root)) {}

private:
  NodePtr root_;
};

std::string to_string(const Node &node);
std::string function_name(Function fn);

/// Standard precedence: ^ (right associative) > unary minus > * / > + -.
/// Implicit multiplication is a syntax error.
Expr parse(std::string_view text);

double eval(const Expr &e, const std::map<std::string, double> &binding);
Jet2 eval_jet2(const Expr &e, const std::map<std::string, Jet2> &binding);

/// Expression with variable references resolved to slots in a fixed name list.
/// Evaluation is a tree walk without any string lookups.
class Compiled
{
public:
  Compiled() = default;
  Compiled(const Expr &e, std::span<const std::string> names);

  double eval(std::span<const double> values) const;
  /// All jets must have the same size; constants are created with that size.
  Jet2 eval(std::span<const Jet2> values, Index jet_size) const;

  const Expr &source() const { return source_; }

private:
  struct CNode
  {
    NodeKind kind;
    double number;
    int slot;
    BinaryOp op;
    Function fn;
    int lhs;
    int rhs;
  };

  int build(const Node &n, std::span<const std::string> names);

  Expr source_;
  std::vector<CNode> nodes_;
  std::vector<NodePtr> origin_; // for error messages
  int root_ = -1;

  template <class T, class Ctx> friend struct Walker;
};

} // namespace kv::expr

#endif // KENVERIFY_EXPR_HPP
