#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ckdyn/expression.hpp"

namespace ckdyn {

namespace {

enum class TokenKind {
  kNumber,
  kIdentifier,  // sin, cos, exp, pi, x<digits>
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kCaret,
  kLParen,
  kRParen,
  kEnd,
};

struct Token {
  TokenKind kind;
  std::string_view text;
  std::size_t position;
  double number = 0.0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) return {TokenKind::kEnd, {}, start};

    const char c = text_[pos_];
    switch (c) {
      case '+': ++pos_; return {TokenKind::kPlus, text_.substr(start, 1), start};
      case '-': ++pos_; return {TokenKind::kMinus, text_.substr(start, 1), start};
      case '*': ++pos_; return {TokenKind::kStar, text_.substr(start, 1), start};
      case '/': ++pos_; return {TokenKind::kSlash, text_.substr(start, 1), start};
      case '^': ++pos_; return {TokenKind::kCaret, text_.substr(start, 1), start};
      case '(': ++pos_; return {TokenKind::kLParen, text_.substr(start, 1), start};
      case ')': ++pos_; return {TokenKind::kRParen, text_.substr(start, 1), start};
      default: break;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return lex_number(start);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return {TokenKind::kIdentifier, text_.substr(start, pos_ - start), start};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

 private:
  Token lex_number(std::size_t start) {
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' belongs to a following identifier, not this literal
      }
    }
    const std::string_view text = text_.substr(start, pos_ - start);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
      throw ParseError("malformed number literal '" + std::string(text) + "'", start);
    }
    Token tok{TokenKind::kNumber, text, start};
    tok.number = value;
    return tok;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, int n) : lexer_(text), dimension_(8 * n) {
    advance();
  }

  ExprPtr run() {
    ExprPtr e = expression();
    if (current_.kind != TokenKind::kEnd) {
      throw ParseError("unexpected trailing input '" + std::string(current_.text) + "'",
                       current_.position);
    }
    return e;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  bool accept(TokenKind kind) {
    if (current_.kind != kind) return false;
    advance();
    return true;
  }

  void expect(TokenKind kind, const char* what) {
    if (current_.kind != kind) {
      throw ParseError(std::string("expected ") + what, current_.position);
    }
    advance();
  }

  ExprPtr expression() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept(TokenKind::kPlus)) {
        lhs = Expr::add(std::move(lhs), term());
      } else if (accept(TokenKind::kMinus)) {
        lhs = Expr::sub(std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      if (accept(TokenKind::kStar)) {
        lhs = Expr::mul(std::move(lhs), unary());
      } else if (accept(TokenKind::kSlash)) {
        lhs = Expr::div(std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    if (accept(TokenKind::kMinus)) return Expr::neg(unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    while (accept(TokenKind::kCaret)) {
      base = Expr::pow(std::move(base), exponent());
    }
    return base;
  }

  // A signed integer literal, optionally parenthesized: 2, -2, (2), (-2).
  int exponent() {
    if (accept(TokenKind::kLParen)) {
      const int value = exponent();
      expect(TokenKind::kRParen, "')' after exponent");
      return value;
    }
    bool negative = false;
    if (accept(TokenKind::kMinus)) negative = true;
    if (current_.kind != TokenKind::kNumber) {
      throw ParseError("expected integer exponent after '^'", current_.position);
    }
    const double value = current_.number;
    if (value != std::floor(value) || std::abs(value) > 1e9 ||
        current_.text.find('.') != std::string_view::npos) {
      throw ParseError("exponent must be an integer literal, got '" +
                           std::string(current_.text) + "'",
                       current_.position);
    }
    advance();
    const int k = static_cast<int>(value);
    return negative ? -k : k;
  }

  ExprPtr atom() {
    if (current_.kind == TokenKind::kNumber) {
      const double value = current_.number;
      advance();
      return Expr::constant(value);
    }
    if (accept(TokenKind::kLParen)) {
      ExprPtr e = expression();
      expect(TokenKind::kRParen, "')'");
      return e;
    }
    if (current_.kind == TokenKind::kIdentifier) {
      const Token tok = current_;
      advance();
      if (tok.text == "pi") return Expr::constant(std::numbers::pi);
      if (tok.text == "sin" || tok.text == "cos" || tok.text == "exp") {
        expect(TokenKind::kLParen, "'(' after function name");
        ExprPtr arg = expression();
        expect(TokenKind::kRParen, "')'");
        if (tok.text == "sin") return Expr::sin(std::move(arg));
        if (tok.text == "cos") return Expr::cos(std::move(arg));
        return Expr::exp(std::move(arg));
      }
      if (auto index = variable_index(tok.text)) {
        if (*index >= dimension_) {
          throw ParseError("variable x" + std::to_string(*index) +
                               " out of range; the largest coordinate is x" +
                               std::to_string(dimension_ - 1),
                           tok.position);
        }
        return Expr::variable(*index);
      }
      throw ParseError("unknown identifier '" + std::string(tok.text) + "'", tok.position);
    }
    throw ParseError("expected a number, variable, function, or '('", current_.position);
  }

  static std::optional<int> variable_index(std::string_view name) {
    if (name.size() < 2 || name[0] != 'x') return std::nullopt;
    int index = 0;
    const auto res = std::from_chars(name.data() + 1, name.data() + name.size(), index);
    if (res.ec != std::errc{} || res.ptr != name.data() + name.size() || index < 0) {
      return std::nullopt;
    }
    return index;
  }

  Lexer lexer_;
  Token current_{TokenKind::kEnd, {}, 0};
  int dimension_;
};

}  // namespace

ExprPtr parse(std::string_view text, int n) {
  if (n < 1) throw std::invalid_argument("block size n must be >= 1");
  bool blank = true;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      blank = false;
      break;
    }
  }
  if (blank) throw ParseError("empty expression", 0);
  return Parser(text, n).run();
}

}  // namespace ckdyn
