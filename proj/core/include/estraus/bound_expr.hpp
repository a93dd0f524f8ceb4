#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "estraus/arith.hpp"

namespace estraus {

using Constants = std::map<std::string, double, std::less<>>;

/// Parses "name=value".
std::pair<std::string, double> parse_constant(std::string_view text);

/// Expression tree of a candidate bound G(N).
///
/// Grammar (whitespace insignificant):
///   expr    := term (("+" | "-") term)*
///   term    := factor (("*" | "/") factor)*
///   factor  := primary ("^" unsigned-number)?
///   primary := "N" | number | ident | func "(" expr ")" | "(" expr ")"
///   func    := log | loglog | exp | sqrt
/// Identifiers are resolved against a constants map at parse time; the node
/// keeps both the name and the resolved value.
class BoundExpr {
 public:
  enum class Kind { Variable, Number, Constant, Add, Sub, Mul, Div, Pow, Log, LogLog, Exp, Sqrt };

  static BoundExpr variable();
  static BoundExpr number(double value);
  static BoundExpr constant(std::string name, double value);
  static BoundExpr binary(Kind kind, BoundExpr lhs, BoundExpr rhs);
  static BoundExpr power(BoundExpr base, double exponent);
  static BoundExpr call(Kind kind, BoundExpr argument);

  Kind kind() const { return kind_; }
  /// Literal or constant value; the exponent for Pow.
  double value() const { return value_; }
  const std::string& name() const { return name_; }
  std::span<const BoundExpr> children() const { return children_; }

  bool contains(Kind kind) const;

  friend bool operator==(const BoundExpr&, const BoundExpr&) = default;

 private:
  BoundExpr(Kind kind, double value, std::string name, std::vector<BoundExpr> children)
      : kind_(kind), value_(value), name_(std::move(name)), children_(std::move(children)) {}

  Kind kind_ = Kind::Number;
  double value_ = 0.0;
  std::string name_;
  std::vector<BoundExpr> children_;
};

std::string_view function_name(BoundExpr::Kind kind);

/// Throws SyntaxError (with position) or UnknownIdentifier.
BoundExpr parse_bound(std::string_view text, const Constants& constants = {});

/// Prints with the minimum parentheses needed to reparse the same tree.
std::string to_string(const BoundExpr& expr);

}  // namespace estraus
