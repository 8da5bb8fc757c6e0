#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "fravar/grid.hpp"

namespace fravar {

/// A jet variable: a field or one of its fractional derivatives treated as an
/// independent coordinate of a Lagrangian density. multiplicity 0 is the field
/// itself (axis none); multiplicity m >= 1 on axis t or x denotes the m-fold
/// composed fractional derivative along that axis.
struct JetVar {
  std::string field;
  Axis axis = Axis::none;
  int multiplicity = 0;

  auto operator<=>(const JetVar&) const = default;
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression node. Binary '+', '-', '*', '/' use lhs/rhs; unary
/// functions and integer powers use lhs only. Smart constructors fold
/// constant subexpressions; there is no other simplification, and equality is
/// structural.
class Expr {
 public:
  enum class Kind { constant, coordinate, jet, unary, binary, power };

  Kind kind;
  double value = 0.0;       // constant
  Axis coordinate = Axis::none;
  JetVar jet;
  std::string func;         // "sin", "cos", "exp"
  char op = 0;              // '+', '-', '*', '/'
  int exponent = 0;
  ExprPtr lhs, rhs;

  static ExprPtr constant(double v);
  static ExprPtr coordinate_of(Axis axis);
  static ExprPtr jet_var(JetVar v);
  static ExprPtr symbol(const std::string& name);  // jet with multiplicity 0
  static ExprPtr unary(const std::string& func, ExprPtr arg);
  static ExprPtr binary(char op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr power(ExprPtr base, int exponent);
  static ExprPtr negate(ExprPtr e);
};

/// Values bound to expression leaves for pointwise evaluation. Named
/// constants and exogenous samples bind through their multiplicity-0 jet.
struct Bindings {
  std::map<JetVar, double> jets;
  std::optional<double> t;
  std::optional<double> x;

  void set(const std::string& name, double v) { jets[JetVar{name, Axis::none, 0}] = v; }
  void set(const JetVar& v, double val) { jets[v] = val; }
};

/// Grammar: identifiers; D[f,t,m] / D[f,x,m] jet derivatives with m in 1..4;
/// ^ with a nonnegative integer exponent; * / + - with usual precedence;
/// unary minus; parentheses; sin, cos, exp; numeric literals; '#' comments.
/// Identifiers t and x are the coordinates. Throws ParseError with position.
ExprPtr parse(std::string_view src);

double evaluate(const ExprPtr& e, const Bindings& b);

/// Structural derivative with respect to one jet variable; every other jet
/// variable and both coordinates are treated as constants.
ExprPtr partial_jet(const ExprPtr& e, const JetVar& v);

/// Structural derivative with respect to a coordinate (t or x).
ExprPtr partial_coord(const ExprPtr& e, Axis axis);

/// Parenthesized text; parse(format(e)) is structurally identical to e.
std::string format(const ExprPtr& e);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

void collect_jets(const ExprPtr& e, std::set<JetVar>& out);
bool contains_coordinate(const ExprPtr& e, Axis axis);

/// Replaces every multiplicity-0 occurrence of `name` by `replacement`.
ExprPtr substitute_symbol(const ExprPtr& e, const std::string& name, const ExprPtr& replacement);

}  // namespace fravar
