#include "fravar/lagexpr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

#include "fravar/error.hpp"

namespace fravar {

namespace {

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

bool is_const(const ExprPtr& e, double v) {
  return e->kind == Expr::Kind::constant && e->value == v;
}

// folding must not manufacture non-finite literals; those have no text form
bool foldable(double v) { return std::isfinite(v); }

std::string axis_name(Axis a) { return a == Axis::t ? "t" : "x"; }

}  // namespace

ExprPtr Expr::constant(double v) {
  Expr e{};
  e.kind = Kind::constant;
  e.value = v;
  return node(std::move(e));
}

ExprPtr Expr::coordinate_of(Axis axis) {
  Expr e{};
  e.kind = Kind::coordinate;
  e.coordinate = axis;
  return node(std::move(e));
}

ExprPtr Expr::jet_var(JetVar v) {
  Expr e{};
  e.kind = Kind::jet;
  e.jet = std::move(v);
  return node(std::move(e));
}

ExprPtr Expr::symbol(const std::string& name) { return jet_var(JetVar{name, Axis::none, 0}); }

ExprPtr Expr::unary(const std::string& func, ExprPtr arg) {
  if (arg->kind == Kind::constant) {
    double v = 0.0;
    if (func == "sin") v = std::sin(arg->value);
    else if (func == "cos") v = std::cos(arg->value);
    else v = std::exp(arg->value);
    if (foldable(v)) return constant(v);
  }
  Expr e{};
  e.kind = Kind::unary;
  e.func = func;
  e.lhs = std::move(arg);
  return node(std::move(e));
}

ExprPtr Expr::binary(char op, ExprPtr lhs, ExprPtr rhs) {
  const bool lc = lhs->kind == Kind::constant;
  const bool rc = rhs->kind == Kind::constant;
  if (lc && rc) {
    double v = 0.0;
    bool have = true;
    switch (op) {
      case '+': v = lhs->value + rhs->value; break;
      case '-': v = lhs->value - rhs->value; break;
      case '*': v = lhs->value * rhs->value; break;
      case '/':
        if (rhs->value != 0.0) v = lhs->value / rhs->value;
        else have = false;
        break;
    }
    if (have && foldable(v)) return constant(v);
  }
  switch (op) {
    case '+':
      if (is_const(lhs, 0.0)) return rhs;
      if (is_const(rhs, 0.0)) return lhs;
      break;
    case '-':
      if (is_const(rhs, 0.0)) return lhs;
      break;
    case '*':
      if (is_const(lhs, 0.0) || is_const(rhs, 0.0)) return constant(0.0);
      if (is_const(lhs, 1.0)) return rhs;
      if (is_const(rhs, 1.0)) return lhs;
      // pull nested constant factors together: c1 * (c2 * e) -> (c1*c2) * e
      if (lc && rhs->kind == Kind::binary && rhs->op == '*' &&
          rhs->lhs->kind == Kind::constant && foldable(lhs->value * rhs->lhs->value)) {
        return binary('*', constant(lhs->value * rhs->lhs->value), rhs->rhs);
      }
      if (rc) return binary('*', rhs, lhs);  // canonical constant-first product
      break;
    case '/':
      if (is_const(lhs, 0.0)) return constant(0.0);
      if (is_const(rhs, 1.0)) return lhs;
      break;
  }
  Expr e{};
  e.kind = Kind::binary;
  e.op = op;
  e.lhs = std::move(lhs);
  e.rhs = std::move(rhs);
  return node(std::move(e));
}

ExprPtr Expr::power(ExprPtr base, int exponent) {
  if (exponent == 0) return constant(1.0);
  if (exponent == 1) return base;
  if (base->kind == Kind::constant && foldable(std::pow(base->value, exponent))) {
    return constant(std::pow(base->value, exponent));
  }
  Expr e{};
  e.kind = Kind::power;
  e.exponent = exponent;
  e.lhs = std::move(base);
  return node(std::move(e));
}

ExprPtr Expr::negate(ExprPtr e) {
  if (e->kind == Kind::constant) return constant(-e->value);
  return binary('*', constant(-1.0), std::move(e));
}

// ---------------------------------------------------------------------------
// lexer / parser

namespace {

struct Token {
  enum class Kind { number, identifier, punct, end };
  Kind kind;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_space_and_comments();
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= src_.size()) {
      current_.kind = Token::Kind::end;
      current_.text = "<end>";
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_')) {
        bump();
      }
      current_.kind = Token::Kind::identifier;
      current_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (std::string_view("+-*/^()[],").find(c) != std::string_view::npos) {
      current_.kind = Token::Kind::punct;
      current_.text = std::string(1, c);
      bump();
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
  }

  void lex_number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '.')) {
      bump();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      bump();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) bump();
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
      } else {
        pos_ = save;  // 'e' belongs to the next token
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      throw ParseError("malformed numeric literal '" + text + "'", current_.line,
                       current_.column);
    }
    current_.kind = Token::Kind::number;
    current_.text = text;
    current_.number = v;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token current_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  ExprPtr run() {
    ExprPtr e = parse_sum();
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::end) {
      throw ParseError("unexpected token '" + t.text + "'", t.line, t.column);
    }
    return e;
  }

 private:
  bool at_punct(const char* p) const {
    return lex_.peek().kind == Token::Kind::punct && lex_.peek().text == p;
  }

  Token expect_punct(const char* p, const char* what) {
    if (!at_punct(p)) {
      const Token& t = lex_.peek();
      throw ParseError(std::string("expected '") + p + "' " + what + ", found '" + t.text + "'",
                       t.line, t.column);
    }
    return lex_.take();
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_product();
    while (at_punct("+") || at_punct("-")) {
      const char op = lex_.take().text[0];
      e = Expr::binary(op, e, parse_product());
    }
    return e;
  }

  ExprPtr parse_product() {
    ExprPtr e = parse_unary();
    while (at_punct("*") || at_punct("/")) {
      const char op = lex_.take().text[0];
      e = Expr::binary(op, e, parse_unary());
    }
    return e;
  }

  ExprPtr parse_unary() {
    if (at_punct("-")) {
      lex_.take();
      return Expr::negate(parse_unary());
    }
    if (at_punct("+")) {
      lex_.take();
      return parse_unary();
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (at_punct("^")) {
      const Token caret = lex_.take();
      if (lex_.peek().kind != Token::Kind::number) {
        throw ParseError("exponent must be a nonnegative integer", caret.line, caret.column);
      }
      const Token t = lex_.take();
      if (t.number != std::floor(t.number) || t.text.find('.') != std::string::npos ||
          t.text.find('e') != std::string::npos || t.text.find('E') != std::string::npos) {
        throw ParseError("exponent must be a nonnegative integer", t.line, t.column);
      }
      const int k = static_cast<int>(t.number);
      ExprPtr e = Expr::power(base, k);
      if (at_punct("^")) {
        const Token& extra = lex_.peek();
        throw ParseError("chained '^' is ambiguous, parenthesize", extra.line, extra.column);
      }
      return e;
    }
    return base;
  }

  ExprPtr parse_primary() {
    const Token t = lex_.take();
    if (t.kind == Token::Kind::number) return Expr::constant(t.number);
    if (t.kind == Token::Kind::punct && t.text == "(") {
      ExprPtr e = parse_sum();
      expect_punct(")", "to close parenthesis");
      return e;
    }
    if (t.kind == Token::Kind::identifier) {
      if (t.text == "D" && at_punct("[")) return parse_jet(t);
      if (at_punct("(")) {
        if (t.text == "sin" || t.text == "cos" || t.text == "exp") {
          lex_.take();
          ExprPtr arg = parse_sum();
          expect_punct(")", "to close function argument");
          return Expr::unary(t.text, arg);
        }
        throw ParseError("unknown function '" + t.text + "'", t.line, t.column);
      }
      if (t.text == "t") return Expr::coordinate_of(Axis::t);
      if (t.text == "x") return Expr::coordinate_of(Axis::x);
      return Expr::symbol(t.text);
    }
    throw ParseError("expected an expression, found '" + t.text + "'", t.line, t.column);
  }

  ExprPtr parse_jet(const Token& dtok) {
    expect_punct("[", "after D");
    const Token name = lex_.take();
    if (name.kind != Token::Kind::identifier) {
      throw ParseError("expected field name in D[...]", name.line, name.column);
    }
    expect_punct(",", "after field name");
    const Token axis = lex_.take();
    if (axis.kind != Token::Kind::identifier || (axis.text != "t" && axis.text != "x")) {
      throw ParseError("expected axis t or x in D[...]", axis.line, axis.column);
    }
    expect_punct(",", "after axis");
    const Token mult = lex_.take();
    if (mult.kind != Token::Kind::number || mult.number != std::floor(mult.number)) {
      throw ParseError("expected integer multiplicity in D[...]", mult.line, mult.column);
    }
    const int m = static_cast<int>(mult.number);
    if (m > 4) {
      throw ParseError("multiplicity exceeds 4", mult.line, mult.column);
    }
    if (m < 1) {
      throw ParseError("multiplicity must be at least 1; write the bare field instead",
                       mult.line, mult.column);
    }
    expect_punct("]", "to close D[...]");
    (void)dtok;
    return Expr::jet_var(JetVar{name.text, axis.text == "t" ? Axis::t : Axis::x, m});
  }

  Lexer lex_;
};

}  // namespace

ExprPtr parse(std::string_view src) { return Parser(src).run(); }

// ---------------------------------------------------------------------------
// evaluation

double evaluate(const ExprPtr& e, const Bindings& b) {
  switch (e->kind) {
    case Expr::Kind::constant:
      return e->value;
    case Expr::Kind::coordinate: {
      const std::optional<double>& v = e->coordinate == Axis::t ? b.t : b.x;
      if (!v) throw EvalError("unbound coordinate " + axis_name(e->coordinate));
      return *v;
    }
    case Expr::Kind::jet: {
      auto it = b.jets.find(e->jet);
      if (it == b.jets.end()) throw EvalError("unbound symbol '" + format(e) + "'");
      return it->second;
    }
    case Expr::Kind::unary: {
      const double a = evaluate(e->lhs, b);
      if (e->func == "sin") return std::sin(a);
      if (e->func == "cos") return std::cos(a);
      return std::exp(a);
    }
    case Expr::Kind::power: {
      const double a = evaluate(e->lhs, b);
      return std::pow(a, e->exponent);
    }
    case Expr::Kind::binary: {
      const double a = evaluate(e->lhs, b);
      const double c = evaluate(e->rhs, b);
      double r = 0.0;
      switch (e->op) {
        case '+': r = a + c; break;
        case '-': r = a - c; break;
        case '*': r = a * c; break;
        case '/':
          if (c == 0.0) throw EvalError("division by zero");
          r = a / c;
          break;
      }
      if (!std::isfinite(r)) throw EvalError("non-finite value in evaluation");
      return r;
    }
  }
  throw EvalError("corrupt expression node");
}

// ---------------------------------------------------------------------------
// structural differentiation

namespace {

template <typename LeafRule>
ExprPtr differentiate(const ExprPtr& e, const LeafRule& leaf) {
  switch (e->kind) {
    case Expr::Kind::constant:
      return Expr::constant(0.0);
    case Expr::Kind::coordinate:
    case Expr::Kind::jet:
      return leaf(e);
    case Expr::Kind::unary: {
      ExprPtr da = differentiate(e->lhs, leaf);
      if (is_const(da, 0.0)) return da;
      ExprPtr outer;
      if (e->func == "sin") {
        outer = Expr::unary("cos", e->lhs);
      } else if (e->func == "cos") {
        outer = Expr::negate(Expr::unary("sin", e->lhs));
      } else {
        outer = Expr::unary("exp", e->lhs);
      }
      return Expr::binary('*', outer, da);
    }
    case Expr::Kind::power: {
      ExprPtr da = differentiate(e->lhs, leaf);
      if (is_const(da, 0.0)) return da;
      ExprPtr term = Expr::binary('*', Expr::constant(e->exponent),
                                  Expr::power(e->lhs, e->exponent - 1));
      return Expr::binary('*', term, da);
    }
    case Expr::Kind::binary: {
      ExprPtr da = differentiate(e->lhs, leaf);
      ExprPtr db = differentiate(e->rhs, leaf);
      switch (e->op) {
        case '+': return Expr::binary('+', da, db);
        case '-': return Expr::binary('-', da, db);
        case '*':
          return Expr::binary('+', Expr::binary('*', da, e->rhs),
                              Expr::binary('*', e->lhs, db));
        case '/': {
          // (da*b - a*db) / b^2
          ExprPtr num = Expr::binary('-', Expr::binary('*', da, e->rhs),
                                     Expr::binary('*', e->lhs, db));
          return Expr::binary('/', num, Expr::power(e->rhs, 2));
        }
      }
      break;
    }
  }
  throw EvalError("corrupt expression node");
}

}  // namespace

ExprPtr partial_jet(const ExprPtr& e, const JetVar& v) {
  return differentiate(e, [&](const ExprPtr& leaf) {
    if (leaf->kind == Expr::Kind::jet && leaf->jet == v) return Expr::constant(1.0);
    return Expr::constant(0.0);
  });
}

ExprPtr partial_coord(const ExprPtr& e, Axis axis) {
  return differentiate(e, [&](const ExprPtr& leaf) {
    if (leaf->kind == Expr::Kind::coordinate && leaf->coordinate == axis) {
      return Expr::constant(1.0);
    }
    return Expr::constant(0.0);
  });
}

// ---------------------------------------------------------------------------
// formatting

namespace {

// precedence: sum 1, product 2, power 3, atom 4
int precedence(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::binary:
      return (e->op == '+' || e->op == '-') ? 1 : 2;
    case Expr::Kind::power:
      return 3;
    case Expr::Kind::constant:
      return e->value < 0.0 ? 2 : 4;  // leading '-' of a negative literal binds like unary
    default:
      return 4;
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void format_into(const ExprPtr& e, std::string& out, int min_prec) {
  const bool parens = precedence(e) < min_prec;
  if (parens) out += '(';
  switch (e->kind) {
    case Expr::Kind::constant:
      out += format_number(e->value);
      break;
    case Expr::Kind::coordinate:
      out += axis_name(e->coordinate);
      break;
    case Expr::Kind::jet:
      if (e->jet.multiplicity == 0) {
        out += e->jet.field;
      } else {
        out += "D[" + e->jet.field + "," + axis_name(e->jet.axis) + "," +
               std::to_string(e->jet.multiplicity) + "]";
      }
      break;
    case Expr::Kind::unary:
      out += e->func;
      out += '(';
      format_into(e->lhs, out, 0);
      out += ')';
      break;
    case Expr::Kind::power:
      format_into(e->lhs, out, 4);
      out += '^';
      out += std::to_string(e->exponent);
      break;
    case Expr::Kind::binary: {
      const int p = precedence(e);
      format_into(e->lhs, out, p);
      out += e->op;
      // right operand of the same precedence keeps its own parentheses so the
      // left-associative reparse reproduces the tree
      format_into(e->rhs, out, p + 1);
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string format(const ExprPtr& e) {
  std::string out;
  format_into(e, out, 0);
  return out;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::constant:
      return a->value == b->value;
    case Expr::Kind::coordinate:
      return a->coordinate == b->coordinate;
    case Expr::Kind::jet:
      return a->jet == b->jet;
    case Expr::Kind::unary:
      return a->func == b->func && structurally_equal(a->lhs, b->lhs);
    case Expr::Kind::power:
      return a->exponent == b->exponent && structurally_equal(a->lhs, b->lhs);
    case Expr::Kind::binary:
      return a->op == b->op && structurally_equal(a->lhs, b->lhs) &&
             structurally_equal(a->rhs, b->rhs);
  }
  return false;
}

void collect_jets(const ExprPtr& e, std::set<JetVar>& out) {
  switch (e->kind) {
    case Expr::Kind::jet:
      out.insert(e->jet);
      break;
    case Expr::Kind::unary:
    case Expr::Kind::power:
      collect_jets(e->lhs, out);
      break;
    case Expr::Kind::binary:
      collect_jets(e->lhs, out);
      collect_jets(e->rhs, out);
      break;
    default:
      break;
  }
}

bool contains_coordinate(const ExprPtr& e, Axis axis) {
  switch (e->kind) {
    case Expr::Kind::coordinate:
      return e->coordinate == axis;
    case Expr::Kind::unary:
    case Expr::Kind::power:
      return contains_coordinate(e->lhs, axis);
    case Expr::Kind::binary:
      return contains_coordinate(e->lhs, axis) || contains_coordinate(e->rhs, axis);
    default:
      return false;
  }
}

ExprPtr substitute_symbol(const ExprPtr& e, const std::string& name, const ExprPtr& replacement) {
  switch (e->kind) {
    case Expr::Kind::jet:
      if (e->jet.multiplicity == 0 && e->jet.field == name) return replacement;
      return e;
    case Expr::Kind::unary:
      return Expr::unary(e->func, substitute_symbol(e->lhs, name, replacement));
    case Expr::Kind::power:
      return Expr::power(substitute_symbol(e->lhs, name, replacement), e->exponent);
    case Expr::Kind::binary:
      return Expr::binary(e->op, substitute_symbol(e->lhs, name, replacement),
                          substitute_symbol(e->rhs, name, replacement));
    default:
      return e;
  }
}

}  // namespace fravar
