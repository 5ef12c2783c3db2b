#include "psym3/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "psym3/errors.hpp"

namespace psym3 {

namespace {

bool is_const(const ExprPtr& e, double v) {
  return e->kind() == Expr::Kind::Constant && e->constant_value() == v;
}

double apply_unary(UnaryOp op, double a) {
  switch (op) {
    case UnaryOp::Neg: return -a;
    case UnaryOp::Sin: return std::sin(a);
    case UnaryOp::Cos: return std::cos(a);
    case UnaryOp::Exp: return std::exp(a);
    case UnaryOp::Log:
      if (a <= 0.0) throw EvalError("log of a non-positive value");
      return std::log(a);
    case UnaryOp::Sqrt:
      if (a < 0.0) throw EvalError("sqrt of a negative value");
      return std::sqrt(a);
    case UnaryOp::Sinh: return std::sinh(a);
    case UnaryOp::Cosh: return std::cosh(a);
    case UnaryOp::Tanh: return std::tanh(a);
  }
  throw EvalError("unknown unary op");
}

double apply_binary(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div:
      if (b == 0.0) throw EvalError("division by zero");
      return a / b;
    case BinaryOp::Pow: {
      if (a > 0.0) return std::pow(a, b);
      const bool integral = std::nearbyint(b) == b && std::abs(b) < 1e15;
      if (a == 0.0) {
        if (b > 0.0) return 0.0;
        if (b == 0.0) return 1.0;
        throw EvalError("zero base with negative exponent");
      }
      if (!integral)
        throw EvalError("pow with negative base requires an integer exponent");
      return std::pow(a, b);
    }
  }
  throw EvalError("unknown binary op");
}

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Log: return "log";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Sinh: return "sinh";
    case UnaryOp::Cosh: return "cosh";
    case UnaryOp::Tanh: return "tanh";
  }
  return "?";
}

const char* binary_name(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Pow: return "^";
  }
  return "?";
}

} // namespace

ExprPtr Expr::constant(double v) {
  auto e = std::shared_ptr<Expr>(new Expr());
  e->kind_ = Kind::Constant;
  e->value_ = v;
  return e;
}

ExprPtr Expr::var(int axis) {
  auto e = std::shared_ptr<Expr>(new Expr());
  e->kind_ = Kind::Var;
  e->index_ = axis;
  return e;
}

ExprPtr Expr::param(int index, std::string name) {
  auto e = std::shared_ptr<Expr>(new Expr());
  e->kind_ = Kind::Param;
  e->index_ = index;
  e->name_ = std::move(name);
  return e;
}

ExprPtr Expr::unary(UnaryOp op, ExprPtr a) {
  if (a->kind() == Kind::Constant) {
    try {
      return constant(apply_unary(op, a->constant_value()));
    } catch (const EvalError&) {
      // keep the node; the error surfaces at evaluation time
    }
  }
  if (op == UnaryOp::Neg && a->kind() == Kind::Unary &&
      a->unary_op() == UnaryOp::Neg)
    return a->child_a();
  auto e = std::shared_ptr<Expr>(new Expr());
  e->kind_ = Kind::Unary;
  e->uop_ = op;
  e->a_ = std::move(a);
  return e;
}

ExprPtr Expr::binary(BinaryOp op, ExprPtr a, ExprPtr b) {
  if (a->kind() == Kind::Constant && b->kind() == Kind::Constant) {
    try {
      return constant(apply_binary(op, a->constant_value(), b->constant_value()));
    } catch (const EvalError&) {
    }
  }
  switch (op) {
    case BinaryOp::Add:
      if (is_const(a, 0.0)) return b;
      if (is_const(b, 0.0)) return a;
      break;
    case BinaryOp::Sub:
      if (is_const(b, 0.0)) return a;
      if (is_const(a, 0.0)) return unary(UnaryOp::Neg, b);
      break;
    case BinaryOp::Mul:
      if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
      if (is_const(a, 1.0)) return b;
      if (is_const(b, 1.0)) return a;
      break;
    case BinaryOp::Div:
      if (is_const(a, 0.0) && !is_const(b, 0.0)) return constant(0.0);
      if (is_const(b, 1.0)) return a;
      break;
    case BinaryOp::Pow:
      if (is_const(b, 1.0)) return a;
      if (is_const(b, 0.0)) return constant(1.0);
      break;
  }
  auto e = std::shared_ptr<Expr>(new Expr());
  e->kind_ = Kind::Binary;
  e->bop_ = op;
  e->a_ = std::move(a);
  e->b_ = std::move(b);
  return e;
}

double Expr::eval(const Vec3& x, std::span<const double> params) const {
  double v = 0.0;
  switch (kind_) {
    case Kind::Constant: v = value_; break;
    case Kind::Var: v = x[static_cast<std::size_t>(index_)]; break;
    case Kind::Param:
      if (index_ < 0 || static_cast<std::size_t>(index_) >= params.size())
        throw EvalError("parameter '" + name_ + "' has no value");
      v = params[static_cast<std::size_t>(index_)];
      break;
    case Kind::Unary: v = apply_unary(uop_, a_->eval(x, params)); break;
    case Kind::Binary:
      v = apply_binary(bop_, a_->eval(x, params), b_->eval(x, params));
      break;
  }
  if (!std::isfinite(v)) throw EvalError("expression evaluated to a non-finite value");
  return v;
}

std::size_t Expr::node_count() const {
  std::size_t n = 1;
  if (a_) n += a_->node_count();
  if (b_) n += b_->node_count();
  return n;
}

std::string Expr::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant: os << value_; break;
    case Kind::Var: os << "x" << index_; break;
    case Kind::Param: os << name_; break;
    case Kind::Unary:
      if (uop_ == UnaryOp::Neg)
        os << "(-" << a_->to_string() << ")";
      else
        os << unary_name(uop_) << "(" << a_->to_string() << ")";
      break;
    case Kind::Binary:
      os << "(" << a_->to_string() << " " << binary_name(bop_) << " "
         << b_->to_string() << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser: recursive descent.
//
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?          (right associative, -x^2 = -(x^2))
//   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
// ---------------------------------------------------------------------------

namespace {

struct Parser {
  std::string_view src;
  std::size_t pos = 0;
  std::span<const std::string> params;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      throw ParseError(std::string("expected '") + c + "'", pos);
  }

  ExprPtr parse_expression() {
    ExprPtr e = parse_term();
    for (;;) {
      if (accept('+'))
        e = Expr::binary(BinaryOp::Add, e, parse_term());
      else if (accept('-'))
        e = Expr::binary(BinaryOp::Sub, e, parse_term());
      else
        return e;
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_unary();
    for (;;) {
      if (accept('*'))
        e = Expr::binary(BinaryOp::Mul, e, parse_unary());
      else if (accept('/'))
        e = Expr::binary(BinaryOp::Div, e, parse_unary());
      else
        return e;
    }
  }

  ExprPtr parse_unary() {
    if (accept('-')) return Expr::unary(UnaryOp::Neg, parse_unary());
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (accept('^')) return Expr::binary(BinaryOp::Pow, base, parse_unary());
    return base;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos >= src.size()) throw ParseError("unexpected end of input", pos);
    const char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_ident();
    if (c == '(') {
      ++pos;
      ExprPtr e = parse_expression();
      expect(')');
      return e;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }

  ExprPtr parse_number() {
    const std::size_t start = pos;
    while (pos < src.size() &&
           (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.'))
      ++pos;
    if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
      std::size_t p = pos + 1;
      if (p < src.size() && (src[p] == '+' || src[p] == '-')) ++p;
      if (p < src.size() && std::isdigit(static_cast<unsigned char>(src[p]))) {
        pos = p;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
          ++pos;
      }
    }
    const std::string text(src.substr(start, pos - start));
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Expr::constant(v);
    } catch (const std::exception&) {
      throw ParseError("malformed numeric literal '" + text + "'", start);
    }
  }

  ExprPtr parse_ident() {
    const std::size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    const std::string name(src.substr(start, pos - start));

    static const std::pair<const char*, UnaryOp> fns[] = {
        {"sin", UnaryOp::Sin},   {"cos", UnaryOp::Cos},  {"exp", UnaryOp::Exp},
        {"log", UnaryOp::Log},   {"sqrt", UnaryOp::Sqrt}, {"sinh", UnaryOp::Sinh},
        {"cosh", UnaryOp::Cosh}, {"tanh", UnaryOp::Tanh}};
    for (const auto& [fname, op] : fns) {
      if (name == fname) {
        skip_ws();
        if (!accept('('))
          throw ParseError("function '" + name + "' needs an argument list", pos);
        ExprPtr arg = parse_expression();
        if (accept(','))
          throw ParseError("function '" + name + "' takes exactly one argument",
                           pos - 1);
        expect(')');
        return Expr::unary(op, arg);
      }
    }

    if (name.size() == 2 && name[0] == 'x' && name[1] >= '0' && name[1] <= '2')
      return Expr::var(name[1] - '0');

    for (std::size_t i = 0; i < params.size(); ++i)
      if (params[i] == name) return Expr::param(static_cast<int>(i), name);

    throw ParseError("unknown identifier '" + name + "'", start);
  }
};

} // namespace

ExprPtr parse_expr(std::string_view source,
                   std::span<const std::string> param_names) {
  Parser p{source, 0, param_names};
  ExprPtr e = p.parse_expression();
  if (!p.eof())
    throw ParseError("trailing input after expression", p.pos);
  return e;
}

// ---------------------------------------------------------------------------
// Symbolic differentiation
// ---------------------------------------------------------------------------

namespace {

ExprPtr d(const ExprPtr& e, Expr::Kind wrt_kind, int wrt_index);

ExprPtr d_unary(const ExprPtr& e, Expr::Kind k, int i) {
  const ExprPtr& a = e->child_a();
  const ExprPtr da = d(a, k, i);
  using U = UnaryOp;
  using B = BinaryOp;
  switch (e->unary_op()) {
    case U::Neg: return Expr::unary(U::Neg, da);
    case U::Sin: return Expr::binary(B::Mul, Expr::unary(U::Cos, a), da);
    case U::Cos:
      return Expr::binary(B::Mul,
                          Expr::unary(U::Neg, Expr::unary(U::Sin, a)), da);
    case U::Exp: return Expr::binary(B::Mul, Expr::unary(U::Exp, a), da);
    case U::Log: return Expr::binary(B::Div, da, a);
    case U::Sqrt:
      return Expr::binary(
          B::Div, da,
          Expr::binary(B::Mul, Expr::constant(2.0), Expr::unary(U::Sqrt, a)));
    case U::Sinh: return Expr::binary(B::Mul, Expr::unary(U::Cosh, a), da);
    case U::Cosh: return Expr::binary(B::Mul, Expr::unary(U::Sinh, a), da);
    case U::Tanh: {
      // (1 - tanh^2 a) a'
      ExprPtr t = Expr::unary(U::Tanh, a);
      ExprPtr one_m = Expr::binary(
          B::Sub, Expr::constant(1.0),
          Expr::binary(B::Mul, t, t));
      return Expr::binary(B::Mul, one_m, da);
    }
  }
  throw EvalError("unknown unary op in differentiation");
}

ExprPtr d_binary(const ExprPtr& e, Expr::Kind k, int i) {
  const ExprPtr& a = e->child_a();
  const ExprPtr& b = e->child_b();
  const ExprPtr da = d(a, k, i);
  const ExprPtr db = d(b, k, i);
  using B = BinaryOp;
  switch (e->binary_op()) {
    case B::Add: return Expr::binary(B::Add, da, db);
    case B::Sub: return Expr::binary(B::Sub, da, db);
    case B::Mul:
      return Expr::binary(B::Add, Expr::binary(B::Mul, da, b),
                          Expr::binary(B::Mul, a, db));
    case B::Div:
      // (a'b - ab') / b^2
      return Expr::binary(
          B::Div,
          Expr::binary(B::Sub, Expr::binary(B::Mul, da, b),
                       Expr::binary(B::Mul, a, db)),
          Expr::binary(B::Mul, b, b));
    case B::Pow: {
      if (b->kind() == Expr::Kind::Constant) {
        // c a^(c-1) a'
        const double c = b->constant_value();
        return Expr::binary(
            B::Mul, Expr::constant(c),
            Expr::binary(B::Mul,
                         Expr::binary(B::Pow, a, Expr::constant(c - 1.0)), da));
      }
      // a^b (b' log a + b a'/a)
      ExprPtr log_a = Expr::unary(UnaryOp::Log, a);
      ExprPtr term1 = Expr::binary(B::Mul, db, log_a);
      ExprPtr term2 =
          Expr::binary(B::Mul, b, Expr::binary(B::Div, da, a));
      return Expr::binary(B::Mul, e, Expr::binary(B::Add, term1, term2));
    }
  }
  throw EvalError("unknown binary op in differentiation");
}

ExprPtr d(const ExprPtr& e, Expr::Kind wrt_kind, int wrt_index) {
  switch (e->kind()) {
    case Expr::Kind::Constant: return Expr::constant(0.0);
    case Expr::Kind::Var:
      return Expr::constant(
          wrt_kind == Expr::Kind::Var && e->index() == wrt_index ? 1.0 : 0.0);
    case Expr::Kind::Param:
      return Expr::constant(
          wrt_kind == Expr::Kind::Param && e->index() == wrt_index ? 1.0 : 0.0);
    case Expr::Kind::Unary: return d_unary(e, wrt_kind, wrt_index);
    case Expr::Kind::Binary: return d_binary(e, wrt_kind, wrt_index);
  }
  throw EvalError("unknown node kind in differentiation");
}

} // namespace

ExprPtr differentiate(const ExprPtr& e, int axis) {
  return d(e, Expr::Kind::Var, axis);
}

ExprPtr differentiate_param(const ExprPtr& e, int param_index) {
  return d(e, Expr::Kind::Param, param_index);
}

} // namespace psym3
