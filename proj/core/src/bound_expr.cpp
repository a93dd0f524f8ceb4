#include "estraus/bound_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include "estraus/error.hpp"

namespace estraus {

std::pair<std::string, double> parse_constant(std::string_view text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    fail(ErrorKind::Domain, "constant must look like name=value, got '" + std::string(text) + "'");
  }
  const std::string_view value_text = text.substr(eq + 1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
  if (value_text.empty() || ec != std::errc{} || ptr != value_text.data() + value_text.size() ||
      !std::isfinite(value)) {
    fail(ErrorKind::Domain, "bad constant value in '" + std::string(text) + "'");
  }
  return {std::string(text.substr(0, eq)), value};
}

BoundExpr BoundExpr::variable() { return {Kind::Variable, 0.0, {}, {}}; }

BoundExpr BoundExpr::number(double value) { return {Kind::Number, value, {}, {}}; }

BoundExpr BoundExpr::constant(std::string name, double value) {
  return {Kind::Constant, value, std::move(name), {}};
}

BoundExpr BoundExpr::binary(Kind kind, BoundExpr lhs, BoundExpr rhs) {
  std::vector<BoundExpr> children;
  children.push_back(std::move(lhs));
  children.push_back(std::move(rhs));
  return {kind, 0.0, {}, std::move(children)};
}

BoundExpr BoundExpr::power(BoundExpr base, double exponent) {
  std::vector<BoundExpr> children;
  children.push_back(std::move(base));
  return {Kind::Pow, exponent, {}, std::move(children)};
}

BoundExpr BoundExpr::call(Kind kind, BoundExpr argument) {
  std::vector<BoundExpr> children;
  children.push_back(std::move(argument));
  return {kind, 0.0, {}, std::move(children)};
}

bool BoundExpr::contains(Kind kind) const {
  if (kind_ == kind) return true;
  for (const auto& child : children_) {
    if (child.contains(kind)) return true;
  }
  return false;
}

std::string_view function_name(BoundExpr::Kind kind) {
  switch (kind) {
    case BoundExpr::Kind::Log: return "log";
    case BoundExpr::Kind::LogLog: return "loglog";
    case BoundExpr::Kind::Exp: return "exp";
    case BoundExpr::Kind::Sqrt: return "sqrt";
    default: return {};
  }
}

namespace {

std::optional<BoundExpr::Kind> lookup_function(std::string_view name) {
  using K = BoundExpr::Kind;
  for (const K kind : {K::Log, K::LogLog, K::Exp, K::Sqrt}) {
    if (function_name(kind) == name) return kind;
  }
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::string_view text, const Constants& constants)
      : text_(text), constants_(constants) {}

  BoundExpr parse() {
    skip_space();
    if (at_end()) throw SyntaxError(pos_, "empty expression");
    BoundExpr e = expr();
    if (!at_end()) throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  BoundExpr expr() {
    BoundExpr lhs = term();
    while (peek('+') || peek('-')) {
      const auto kind = text_[pos_] == '+' ? BoundExpr::Kind::Add : BoundExpr::Kind::Sub;
      advance();
      lhs = BoundExpr::binary(kind, std::move(lhs), term());
    }
    return lhs;
  }

  BoundExpr term() {
    BoundExpr lhs = factor();
    while (peek('*') || peek('/')) {
      const auto kind = text_[pos_] == '*' ? BoundExpr::Kind::Mul : BoundExpr::Kind::Div;
      advance();
      lhs = BoundExpr::binary(kind, std::move(lhs), factor());
    }
    return lhs;
  }

  BoundExpr factor() {
    BoundExpr base = primary();
    if (!peek('^')) return base;
    advance();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      throw SyntaxError(pos_, "exponent must be an unsigned number");
    }
    return BoundExpr::power(std::move(base), number());
  }

  BoundExpr primary() {
    if (at_end()) throw SyntaxError(pos_, "unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      advance();
      BoundExpr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return BoundExpr::number(number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  BoundExpr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    skip_space();
    if (name == "N") return BoundExpr::variable();
    if (const auto fn = lookup_function(name)) {
      if (!peek('(')) throw SyntaxError(pos_, "expected '(' after " + std::string(name));
      advance();
      BoundExpr argument = expr();
      expect(')');
      return BoundExpr::call(*fn, std::move(argument));
    }
    const auto it = constants_.find(name);
    if (it == constants_.end()) {
      fail(ErrorKind::UnknownIdentifier,
           "unknown identifier '" + std::string(name) + "' at position " + std::to_string(start));
    }
    return BoundExpr::constant(it->first, it->second);
  }

  // digits ["." digits] [("e"|"E") ["+"|"-"] digits]
  double number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_ || !std::isfinite(value)) {
      throw SyntaxError(start, "malformed number");
    }
    skip_space();
    return value;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  bool peek(char c) const { return !at_end() && text_[pos_] == c; }

  void advance() {
    ++pos_;
    skip_space();
  }

  void expect(char c) {
    if (!peek(c)) throw SyntaxError(pos_, std::string("expected '") + c + "'");
    advance();
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  const Constants& constants_;
  std::size_t pos_ = 0;
};

int precedence(BoundExpr::Kind kind) {
  switch (kind) {
    case BoundExpr::Kind::Add:
    case BoundExpr::Kind::Sub: return 1;
    case BoundExpr::Kind::Mul:
    case BoundExpr::Kind::Div: return 2;
    case BoundExpr::Kind::Pow: return 3;
    default: return 4;
  }
}

std::string format_number(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

void print(const BoundExpr& e, std::string& out);

void print_operand(const BoundExpr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(e, out);
  if (wrap) out += ')';
}

void print(const BoundExpr& e, std::string& out) {
  using K = BoundExpr::Kind;
  const int prec = precedence(e.kind());
  switch (e.kind()) {
    case K::Variable: out += 'N'; return;
    case K::Number: out += format_number(e.value()); return;
    case K::Constant: out += e.name(); return;
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div: {
      static constexpr std::string_view ops[] = {" + ", " - ", "*", "/"};
      const auto& lhs = e.children()[0];
      const auto& rhs = e.children()[1];
      print_operand(lhs, precedence(lhs.kind()) < prec, out);
      out += ops[static_cast<int>(e.kind()) - static_cast<int>(K::Add)];
      // left-associative grammar: an equal-precedence right child needs parens
      print_operand(rhs, precedence(rhs.kind()) <= prec, out);
      return;
    }
    case K::Pow:
      print_operand(e.children()[0], precedence(e.children()[0].kind()) <= prec, out);
      out += '^';
      out += format_number(e.value());
      return;
    case K::Log:
    case K::LogLog:
    case K::Exp:
    case K::Sqrt:
      out += function_name(e.kind());
      out += '(';
      print(e.children()[0], out);
      out += ')';
      return;
  }
}

}  // namespace

BoundExpr parse_bound(std::string_view text, const Constants& constants) {
  return Parser(text, constants).parse();
}

std::string to_string(const BoundExpr& expr) {
  std::string out;
  print(expr, out);
  return out;
}

}  // namespace estraus
