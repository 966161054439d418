#include "lipfree/expr.hpp"

#include <cctype>
#include <cmath>

#include "lipfree/errors.hpp"

namespace lipfree {

std::size_t Table::find(std::span<const double> x) const {
  for (std::size_t i = 0; i < points_d.size(); ++i) {
    const auto& p = points_d[i];
    if (p.size() == x.size() && std::equal(p.begin(), p.end(), x.begin())) return i;
  }
  throw PointNotInTable("point is not a table point");
}

std::size_t Table::find(std::span<const Rational> x) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.size() == x.size() && std::equal(p.begin(), p.end(), x.begin())) return i;
  }
  throw PointNotInTable("point is not a table point");
}

namespace expr {

namespace {

using Kind = Expr::Kind;

std::shared_ptr<Expr> make(Kind k) { return std::make_shared<Expr>(k); }

ExprPtr unary(Kind k, ExprPtr a) {
  auto e = make(k);
  e->lhs = std::move(a);
  return e;
}

ExprPtr binary(Kind k, ExprPtr a, ExprPtr b) {
  auto e = make(k);
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

}  // namespace

ExprPtr constant(const Rational& q) {
  auto e = make(Kind::Const);
  e->value = q;
  e->value_d = q.get_d();
  return e;
}

ExprPtr variable(std::size_t i) {
  auto e = make(Kind::Var);
  e->index = i;
  return e;
}

ExprPtr neg(ExprPtr a) { return unary(Kind::Neg, std::move(a)); }
ExprPtr add(ExprPtr a, ExprPtr b) { return binary(Kind::Add, std::move(a), std::move(b)); }
ExprPtr sub(ExprPtr a, ExprPtr b) { return binary(Kind::Sub, std::move(a), std::move(b)); }
ExprPtr mul(ExprPtr a, ExprPtr b) { return binary(Kind::Mul, std::move(a), std::move(b)); }
ExprPtr abs(ExprPtr a) { return unary(Kind::Abs, std::move(a)); }
ExprPtr min(ExprPtr a, ExprPtr b) { return binary(Kind::Min, std::move(a), std::move(b)); }
ExprPtr max(ExprPtr a, ExprPtr b) { return binary(Kind::Max, std::move(a), std::move(b)); }
ExprPtr sin(ExprPtr a) { return unary(Kind::Sin, std::move(a)); }
ExprPtr cos(ExprPtr a) { return unary(Kind::Cos, std::move(a)); }

ExprPtr table_lookup(std::shared_ptr<const Table> t, std::size_t component) {
  auto e = make(Kind::TableLookup);
  e->table = std::move(t);
  e->index = component;
  return e;
}

ExprPtr native(std::shared_ptr<const NativeFn> fn) {
  auto e = make(Kind::Native);
  e->native = std::move(fn);
  return e;
}

ExprPtr shift(ExprPtr point_leaf, const Point<Rational>& offset) {
  auto e = make(Kind::Shift);
  e->lhs = std::move(point_leaf);
  e->offset = offset;
  e->offset_d = to_double_point(offset);
  return e;
}

ExprPtr translate(const ExprPtr& e, const Point<Rational>& c) {
  switch (e->kind) {
    case Kind::Const:
      return e;
    case Kind::Var:
      if (e->index < c.size() && c[e->index] != 0) return add(e, constant(c[e->index]));
      return e;
    case Kind::Neg:
    case Kind::Abs:
    case Kind::Sin:
    case Kind::Cos:
      return unary(e->kind, translate(e->lhs, c));
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Min:
    case Kind::Max:
      return binary(e->kind, translate(e->lhs, c), translate(e->rhs, c));
    case Kind::Shift:
      return shift(e->lhs, lipfree::add(e->offset, c));
    case Kind::TableLookup:
    case Kind::Native:
      return shift(e, c);
  }
  return e;
}

bool exact_capable(const Expr& e) {
  switch (e.kind) {
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Native:
      return false;
    default:
      break;
  }
  if (e.lhs && !exact_capable(*e.lhs)) return false;
  if (e.rhs && !exact_capable(*e.rhs)) return false;
  return true;
}

std::optional<std::pair<Point<Rational>, Rational>> affine_form(const Expr& e, std::size_t dim) {
  using Form = std::pair<Point<Rational>, Rational>;
  auto is_const = [](const Form& f) { return is_zero(f.first); };
  switch (e.kind) {
    case Kind::Const:
      return Form{zero_point<Rational>(dim), e.value};
    case Kind::Var:
      if (e.index >= dim) return std::nullopt;
      return Form{unit_vector<Rational>(dim, e.index), Rational(0)};
    case Kind::Neg: {
      auto a = affine_form(*e.lhs, dim);
      if (!a) return std::nullopt;
      return Form{scale(Rational(-1), a->first), Rational(-a->second)};
    }
    case Kind::Add:
    case Kind::Sub: {
      auto a = affine_form(*e.lhs, dim);
      auto b = affine_form(*e.rhs, dim);
      if (!a || !b) return std::nullopt;
      if (e.kind == Kind::Add) return Form{lipfree::add(a->first, b->first), Rational(a->second + b->second)};
      return Form{lipfree::sub(a->first, b->first), Rational(a->second - b->second)};
    }
    case Kind::Mul: {
      auto a = affine_form(*e.lhs, dim);
      auto b = affine_form(*e.rhs, dim);
      if (!a || !b) return std::nullopt;
      if (is_const(*a)) return Form{scale(a->second, b->first), Rational(a->second * b->second)};
      if (is_const(*b)) return Form{scale(b->second, a->first), Rational(a->second * b->second)};
      return std::nullopt;
    }
    case Kind::Abs: {
      auto a = affine_form(*e.lhs, dim);
      if (!a || !is_const(*a)) return std::nullopt;
      return Form{zero_point<Rational>(dim), Rational(lipfree::abs_value(a->second))};
    }
    case Kind::Min:
    case Kind::Max: {
      auto a = affine_form(*e.lhs, dim);
      auto b = affine_form(*e.rhs, dim);
      if (!a || !b) return std::nullopt;
      // Identical affine arguments collapse; constant arguments fold.
      if (a->first == b->first && a->second == b->second) return a;
      if (!is_const(*a) || !is_const(*b)) return std::nullopt;
      bool take_a = e.kind == Kind::Min ? a->second <= b->second : a->second >= b->second;
      return take_a ? a : b;
    }
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Shift:
    case Kind::TableLookup:
    case Kind::Native:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case Kind::Add:
    case Kind::Sub:
      return 1;
    case Kind::Mul:
      return 2;
    case Kind::Neg:
      return 3;
    case Kind::Const:
      return sgn(e.value) < 0 ? 3 : 4;
    default:
      return 4;
  }
}

void print(const Expr& e, int min_prec, std::string& out);

void print_child(const Expr& e, int min_prec, std::string& out) {
  bool paren = precedence(e) < min_prec;
  if (paren) out += '(';
  print(e, 0, out);
  if (paren) out += ')';
}

void print(const Expr& e, int /*min_prec*/, std::string& out) {
  switch (e.kind) {
    case Kind::Const:
      out += format_rational(e.value);
      return;
    case Kind::Var:
      out += 'x';
      out += std::to_string(e.index);
      return;
    case Kind::Neg:
      out += '-';
      print_child(*e.lhs, 3, out);
      return;
    case Kind::Add:
    case Kind::Sub:
      print_child(*e.lhs, 1, out);
      out += e.kind == Kind::Add ? " + " : " - ";
      print_child(*e.rhs, 2, out);
      return;
    case Kind::Mul:
      print_child(*e.lhs, 2, out);
      out += '*';
      print_child(*e.rhs, 3, out);
      return;
    case Kind::Abs:
    case Kind::Sin:
    case Kind::Cos:
      out += e.kind == Kind::Abs ? "abs(" : e.kind == Kind::Sin ? "sin(" : "cos(";
      print(*e.lhs, 0, out);
      out += ')';
      return;
    case Kind::Min:
    case Kind::Max:
      out += e.kind == Kind::Min ? "min(" : "max(";
      print(*e.lhs, 0, out);
      out += ", ";
      print(*e.rhs, 0, out);
      out += ')';
      return;
    case Kind::Shift: {
      out += "shift[";
      for (std::size_t i = 0; i < e.offset.size(); ++i) {
        if (i) out += ',';
        out += format_rational(e.offset[i]);
      }
      out += "](";
      print(*e.lhs, 0, out);
      out += ')';
      return;
    }
    case Kind::TableLookup:
      out += "table[" + std::to_string(e.index) + "]";
      return;
    case Kind::Native:
      out += "native";
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

template <class S>
S evaluate(const Expr& e, std::span<const S> x) {
  switch (e.kind) {
    case Kind::Const:
      if constexpr (is_exact_v<S>) {
        return e.value;
      } else {
        return e.value_d;
      }
    case Kind::Var:
      return x[e.index];
    case Kind::Neg:
      return S(-evaluate(*e.lhs, x));
    case Kind::Add:
      return S(evaluate(*e.lhs, x) + evaluate(*e.rhs, x));
    case Kind::Sub:
      return S(evaluate(*e.lhs, x) - evaluate(*e.rhs, x));
    case Kind::Mul:
      return S(evaluate(*e.lhs, x) * evaluate(*e.rhs, x));
    case Kind::Abs:
      return abs_value(evaluate(*e.lhs, x));
    case Kind::Min: {
      S a = evaluate(*e.lhs, x);
      S b = evaluate(*e.rhs, x);
      return b < a ? b : a;
    }
    case Kind::Max: {
      S a = evaluate(*e.lhs, x);
      S b = evaluate(*e.rhs, x);
      return a < b ? b : a;
    }
    case Kind::Sin:
    case Kind::Cos:
      if constexpr (is_exact_v<S>) {
        throw InexactOperation("sin/cos are not available in exact mode");
      } else {
        double a = evaluate(*e.lhs, x);
        return e.kind == Kind::Sin ? std::sin(a) : std::cos(a);
      }
    case Kind::Shift: {
      if constexpr (is_exact_v<S>) {
        Point<S> y(x.begin(), x.end());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += e.offset[i];
        return evaluate<S>(*e.lhs, y);
      } else {
        Point<S> y(x.begin(), x.end());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += e.offset_d[i];
        return evaluate<S>(*e.lhs, y);
      }
    }
    case Kind::TableLookup: {
      std::size_t row = e.table->find(x);
      if constexpr (is_exact_v<S>) {
        return e.table->values[row][e.index];
      } else {
        return e.table->values_d[row][e.index];
      }
    }
    case Kind::Native:
      if constexpr (is_exact_v<S>) {
        throw InexactOperation("native functions are float-only");
      } else {
        return (*e.native)(x);
      }
  }
  return S(0);
}

template double evaluate<double>(const Expr&, std::span<const double>);
template Rational evaluate<Rational>(const Expr&, std::span<const Rational>);

namespace {

// expr   := term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := '-' factor | number | 'x'INDEX | '(' expr ')' | FUNC '(' expr (',' expr)? ')'
class Parser {
 public:
  Parser(std::string_view text, std::size_t dim) : text_(text), dim_(dim) {}

  std::vector<ExprPtr> components() {
    std::vector<ExprPtr> out;
    out.push_back(parse_expr());
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == ';') {
      ++pos_;
      out.push_back(parse_expr());
      skip_ws();
    }
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = add(lhs, parse_term());
      } else if (accept('-')) {
        lhs = sub(lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    while (accept('*')) lhs = mul(lhs, parse_factor());
    return lhs;
  }

  static bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

  std::size_t scan_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    return pos_ - start;
  }

  ExprPtr parse_number() {
    std::size_t start = pos_;
    std::size_t int_digits = scan_digits();
    bool decimal = false;
    std::size_t frac_digits = 0;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      decimal = true;
      ++pos_;
      frac_digits = scan_digits();
    }
    if (int_digits + frac_digits == 0) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      decimal = true;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (scan_digits() == 0) fail("malformed exponent");
    }
    if (!decimal && pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      if (scan_digits() == 0) fail("expected denominator digits");
    }
    auto token = text_.substr(start, pos_ - start);
    try {
      return constant(parse_rational(token));
    } catch (const FormatError& e) {
      throw SyntaxError(e.what(), start);
    }
  }

  ExprPtr parse_factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return neg(parse_factor());
    }
    if (is_digit(c) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      ExprPtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "x") {
        std::size_t digit_start = pos_;
        if (scan_digits() == 0) fail("expected variable index after 'x'");
        std::size_t index = std::stoul(std::string(text_.substr(digit_start, pos_ - digit_start)));
        if (index >= dim_) {
          pos_ = start;
          fail("variable x" + std::to_string(index) + " exceeds domain dimension " + std::to_string(dim_));
        }
        return variable(index);
      }
      const bool two_args = name == "min" || name == "max";
      const bool one_arg = name == "abs" || name == "sin" || name == "cos";
      if (!one_arg && !two_args) {
        pos_ = start;
        fail("unknown function '" + name + "'");
      }
      expect('(');
      ExprPtr a = parse_expr();
      ExprPtr b;
      if (two_args) {
        expect(',');
        b = parse_expr();
      }
      expect(')');
      if (name == "abs") return expr::abs(a);
      if (name == "sin") return expr::sin(a);
      if (name == "cos") return expr::cos(a);
      if (name == "min") return expr::min(a, b);
      return expr::max(a, b);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse(std::string_view text, std::size_t dim) {
  auto comps = Parser(text, dim).components();
  if (comps.size() != 1) throw SyntaxError("expected a single component", 0);
  return comps.front();
}

std::vector<ExprPtr> parse_components(std::string_view text, std::size_t dim) {
  return Parser(text, dim).components();
}

}  // namespace expr

}  // namespace lipfree
