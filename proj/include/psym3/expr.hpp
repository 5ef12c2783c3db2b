#ifndef PSYM3_EXPR_HPP
#define PSYM3_EXPR_HPP

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psym3/linalg.hpp"

namespace psym3 {

enum class UnaryOp { Neg, Sin, Cos, Exp, Log, Sqrt, Sinh, Cosh, Tanh };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree over the chart coordinates x0, x1, x2 and a set
// of named real parameters. Nodes are shared freely across trees; all
// operations are pure.
class Expr {
public:
  enum class Kind { Constant, Var, Param, Unary, Binary };

  static ExprPtr constant(double v);
  static ExprPtr var(int axis);                       // 0..2
  static ExprPtr param(int index, std::string name);  // index into the value table
  static ExprPtr unary(UnaryOp op, ExprPtr a);        // folds constants
  static ExprPtr binary(BinaryOp op, ExprPtr a, ExprPtr b);

  Kind kind() const { return kind_; }
  double constant_value() const { return value_; }
  int index() const { return index_; }
  const std::string& param_name() const { return name_; }
  UnaryOp unary_op() const { return uop_; }
  BinaryOp binary_op() const { return bop_; }
  const ExprPtr& child_a() const { return a_; }
  const ExprPtr& child_b() const { return b_; }

  // Evaluates at a point. Throws EvalError on domain violations
  // (division by zero, log of a non-positive value, pow with negative base
  // and non-integer exponent, ...) and on non-finite results.
  double eval(const Vec3& x, std::span<const double> params) const;

  std::size_t node_count() const;
  std::string to_string() const;

private:
  Expr() = default;

  Kind kind_ = Kind::Constant;
  double value_ = 0.0;
  int index_ = 0;
  std::string name_;
  UnaryOp uop_ = UnaryOp::Neg;
  BinaryOp bop_ = BinaryOp::Add;
  ExprPtr a_, b_;
};

// Parses an infix expression over x0,x1,x2, the declared parameter names,
// real literals, `+ - * / ^`, unary minus, and the function set
// sin cos exp log sqrt sinh cosh tanh. Throws ParseError with a position.
ExprPtr parse_expr(std::string_view source,
                   std::span<const std::string> param_names);

// Exact partial derivative with respect to coordinate axis 0..2.
ExprPtr differentiate(const ExprPtr& e, int axis);

// Derivative with respect to a declared parameter (by table index).
ExprPtr differentiate_param(const ExprPtr& e, int param_index);

} // namespace psym3

#endif
