#include "exparse.hpp"

#include <cctype>
#include <sstream>

namespace canonsym {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text; // Number/Ident payload
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_.offset = pos_;
    tok_.text.clear();
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = src_[pos_];
    switch (c) {
      case '+': tok_.kind = Tok::Plus; ++pos_; return;
      case '-': tok_.kind = Tok::Minus; ++pos_; return;
      case '*': tok_.kind = Tok::Star; ++pos_; return;
      case '/': tok_.kind = Tok::Slash; ++pos_; return;
      case '^': tok_.kind = Tok::Caret; ++pos_; return;
      case '(': tok_.kind = Tok::LParen; ++pos_; return;
      case ')': tok_.kind = Tok::RParen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t mark = pos_;
        ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        } else {
          pos_ = mark; // "e" belongs to a following identifier, not this number
        }
      }
      tok_.kind = Tok::Number;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Tok::Ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    raise(Errc::UnexpectedToken,
          "unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(pos_),
          pos_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_{Tok::End, 0, {}};
};

Rational number_from_literal(const std::string& text, std::size_t offset) {
  // digits [. digits] [e [sign] digits], converted exactly
  std::size_t i = 0;
  Int mantissa = 0;
  long long frac_digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    mantissa = mantissa * 10 + (text[i] - '0');
    ++i;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mantissa = mantissa * 10 + (text[i] - '0');
      ++frac_digits;
      ++i;
    }
  }
  long long exp10 = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      neg = text[i] == '-';
      ++i;
    }
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      exp10 = exp10 * 10 + (text[i] - '0');
      if (exp10 > 4096) raise(Errc::UnexpectedToken, "exponent out of range", offset);
      ++i;
    }
    if (neg) exp10 = -exp10;
  }
  long long shift = exp10 - frac_digits;
  Rational value(mantissa);
  if (shift > 0) {
    Int pow10 = 1;
    for (long long k = 0; k < shift; ++k) pow10 *= 10;
    value *= Rational(pow10);
  } else if (shift < 0) {
    Int pow10 = 1;
    for (long long k = 0; k < -shift; ++k) pow10 *= 10;
    value /= Rational(pow10);
  }
  return value;
}

class Parser {
public:
  Parser(std::string_view text, const PhaseSpace& space) : lex_(text), space_(space) {}

  ExprPtr run() {
    ExprPtr e = parse_expr();
    const Token& t = lex_.peek();
    if (t.kind != Tok::End)
      raise(Errc::UnexpectedToken, "unexpected trailing input at offset " + std::to_string(t.offset),
            t.offset);
    return e;
  }

private:
  ExprPtr parse_expr() {
    std::vector<ExprPtr> terms;
    terms.push_back(parse_term());
    while (true) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Plus) {
        lex_.take();
        terms.push_back(parse_term());
      } else if (k == Tok::Minus) {
        lex_.take();
        terms.push_back(Expr::negate(parse_term()));
      } else {
        break;
      }
    }
    return Expr::sum(std::move(terms));
  }

  ExprPtr parse_term() {
    ExprPtr current = parse_unary();
    while (true) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Star) {
        lex_.take();
        ExprPtr rhs = parse_unary();
        if (current->kind() == NodeKind::Product) {
          std::vector<ExprPtr> ks = current->children();
          ks.push_back(std::move(rhs));
          current = Expr::product(std::move(ks));
        } else {
          current = Expr::product({current, std::move(rhs)});
        }
      } else if (k == Tok::Slash) {
        lex_.take();
        current = Expr::quotient(current, parse_unary());
      } else {
        break;
      }
    }
    return current;
  }

  ExprPtr parse_unary() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      return Expr::negate(parse_unary());
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      std::size_t at = lex_.peek().offset;
      ExprPtr exp_tree = parse_unary();
      return Expr::power(std::move(base), integer_exponent(exp_tree, at));
    }
    return base;
  }

  long long integer_exponent(const ExprPtr& exp_tree, std::size_t at) {
    Rational v;
    if (!const_value(exp_tree, v) || !is_integer(v))
      raise(Errc::UnexpectedToken, "exponent must be an integer constant", at);
    Int n = numer(v);
    if (n > 4096 || n < -4096) raise(Errc::UnexpectedToken, "exponent out of range", at);
    return n.template convert_to<long long>();
  }

  static bool const_value(const ExprPtr& e, Rational& out) {
    switch (e->kind()) {
      case NodeKind::Constant:
        out = e->value();
        return true;
      case NodeKind::Negate: {
        Rational v;
        if (!const_value(e->children()[0], v)) return false;
        out = -v;
        return true;
      }
      case NodeKind::Power: {
        Rational b;
        if (!const_value(e->children()[0], b)) return false;
        long long k = e->exponent();
        if (k < 0) return false;
        Rational r = 1;
        for (long long i = 0; i < k; ++i) r *= b;
        out = r;
        return true;
      }
      default:
        return false;
    }
  }

  ExprPtr parse_atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Number:
        return Expr::constant(number_from_literal(t.text, t.offset));
      case Tok::LParen: {
        ExprPtr inner = parse_expr();
        Token close = lex_.take();
        if (close.kind != Tok::RParen) {
          if (close.kind == Tok::End) raise(Errc::UnexpectedEnd, "missing ')'", close.offset);
          raise(Errc::UnexpectedToken, "expected ')' at offset " + std::to_string(close.offset),
                close.offset);
        }
        return inner;
      }
      case Tok::Ident: {
        auto fn = func_from_name(t.text);
        if (lex_.peek().kind == Tok::LParen) {
          if (!fn) {
            if (space_.lookup(t.text))
              raise(Errc::ArityMismatch, "'" + t.text + "' is a variable, not a function",
                    t.offset);
            raise(Errc::UnknownIdentifier, "unknown function '" + t.text + "'", t.offset);
          }
          lex_.take();
          ExprPtr arg = parse_expr();
          Token close = lex_.take();
          if (close.kind != Tok::RParen) {
            if (close.kind == Tok::End) raise(Errc::UnexpectedEnd, "missing ')'", close.offset);
            raise(Errc::UnexpectedToken,
                  "expected ')' at offset " + std::to_string(close.offset), close.offset);
          }
          return Expr::function(*fn, std::move(arg));
        }
        if (fn)
          raise(Errc::ArityMismatch, "function '" + t.text + "' expects one argument", t.offset);
        auto id = space_.lookup(t.text);
        if (!id) raise(Errc::UnknownIdentifier, "unknown identifier '" + t.text + "'", t.offset);
        return space_.var(*id);
      }
      case Tok::End:
        raise(Errc::UnexpectedEnd, "unexpected end of input", t.offset);
      default:
        raise(Errc::UnexpectedToken, "unexpected token at offset " + std::to_string(t.offset),
              t.offset);
    }
  }

  Lexer lex_;
  const PhaseSpace& space_;
};

// --- rendering ---------------------------------------------------------------

// Precedence levels mirror the grammar slots: a child is parenthesized when
// its own level is looser than the slot it is printed into.
enum Level : int { LvlExpr = 0, LvlTerm = 1, LvlUnary = 2, LvlPower = 3, LvlAtom = 4 };

int node_level(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Sum: return LvlExpr;
    case NodeKind::Product:
    case NodeKind::Quotient: return LvlTerm;
    case NodeKind::Negate: return LvlUnary;
    case NodeKind::Power: return LvlPower;
    case NodeKind::Constant:
    case NodeKind::Variable:
    case NodeKind::Function: return LvlAtom;
  }
  return LvlAtom;
}

void render_rec(const ExprPtr& e, std::string& out);

void render_child(const ExprPtr& e, int slot, std::string& out) {
  if (node_level(*e) < slot) {
    out += '(';
    render_rec(e, out);
    out += ')';
  } else {
    render_rec(e, out);
  }
}

std::string constant_text(const Rational& v) {
  // Canonical trees carry non-negative integers only; other rationals are
  // printed exactly (finite decimals where possible) so they re-parse to the
  // same value even on hand-built trees.
  if (v < 0) return "(" + rational_to_string(v) + ")";
  if (is_integer(v)) return rational_to_string(v);
  Int d = denom(v);
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d == 1) {
    int digits = std::max(twos, fives);
    Int scaled = numer(v);
    for (int i = 0; i < digits; ++i) scaled *= 10;
    scaled /= denom(v);
    std::string s = scaled.str();
    while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    return s;
  }
  return "(" + rational_to_string(v) + ")";
}

void render_rec(const ExprPtr& e, std::string& out) {
  switch (e->kind()) {
    case NodeKind::Constant:
      out += constant_text(e->value());
      return;
    case NodeKind::Variable:
      out += e->var_name();
      return;
    case NodeKind::Function:
      out += func_name(e->func());
      out += '(';
      render_rec(e->children()[0], out);
      out += ')';
      return;
    case NodeKind::Sum: {
      bool first = true;
      for (const auto& k : e->children()) {
        if (first) {
          render_child(k, LvlTerm, out);
          first = false;
        } else if (k->kind() == NodeKind::Negate) {
          out += " - ";
          render_child(k->children()[0], LvlTerm, out);
        } else {
          out += " + ";
          render_child(k, LvlTerm, out);
        }
      }
      return;
    }
    case NodeKind::Product: {
      bool first = true;
      for (const auto& k : e->children()) {
        if (!first) out += '*';
        render_child(k, LvlUnary, out);
        first = false;
      }
      return;
    }
    case NodeKind::Quotient:
      render_child(e->children()[0], LvlTerm, out);
      out += '/';
      // the divisor slot is a single unary; quotients/products need parens
      if (node_level(*e->children()[1]) <= LvlTerm) {
        out += '(';
        render_rec(e->children()[1], out);
        out += ')';
      } else {
        render_child(e->children()[1], LvlUnary, out);
      }
      return;
    case NodeKind::Negate:
      out += '-';
      render_child(e->children()[0], LvlUnary, out);
      return;
    case NodeKind::Power: {
      render_child(e->children()[0], LvlAtom, out);
      out += '^';
      out += std::to_string(e->exponent());
      return;
    }
  }
}

} // namespace

ExprPtr parse(std::string_view text, const PhaseSpace& space) {
  if (text.empty()) raise(Errc::UnexpectedEnd, "empty expression", 0);
  Parser p(text, space);
  return p.run();
}

std::string render(const ExprPtr& e) {
  std::string out;
  render_rec(e, out);
  return out;
}

} // namespace canonsym
