#include <cctype>
#include <string>
#include <vector>

#include "reconcile/errors.hpp"
#include "reconcile/formula.hpp"

namespace reconcile {

namespace {

enum class Tok { Atom, True, False, Not, And, Or, Implies, Iff, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;   // atom name
  std::size_t offset; // byte offset of the token start
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& current() const { return current_; }

  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      current_ = {Tok::End, "", start};
      return;
    }
    const char c = text_[pos_];
    switch (c) {
      case '!':
        ++pos_;
        current_ = {Tok::Not, "", start};
        return;
      case '&':
        ++pos_;
        current_ = {Tok::And, "", start};
        return;
      case '|':
        ++pos_;
        current_ = {Tok::Or, "", start};
        return;
      case '(':
        ++pos_;
        current_ = {Tok::LParen, "", start};
        return;
      case ')':
        ++pos_;
        current_ = {Tok::RParen, "", start};
        return;
      case '-':
        if (text_.compare(pos_, 2, "->") == 0) {
          pos_ += 2;
          current_ = {Tok::Implies, "", start};
          return;
        }
        fail(start, {"'->'"});
      case '<':
        if (text_.compare(pos_, 3, "<->") == 0) {
          pos_ += 3;
          current_ = {Tok::Iff, "", start};
          return;
        }
        fail(start, {"'<->'"});
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_ + 1;
      while (end < text_.size() &&
             std::isalnum(static_cast<unsigned char>(text_[end]))) {
        ++end;
      }
      // optional `_<digits>` suffix
      if (end < text_.size() && text_[end] == '_' && end + 1 < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[end + 1]))) {
        ++end;
        while (end < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[end]))) {
          ++end;
        }
      }
      std::string name = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "true") {
        current_ = {Tok::True, "", start};
      } else if (name == "false") {
        current_ = {Tok::False, "", start};
      } else {
        current_ = {Tok::Atom, std::move(name), start};
      }
      return;
    }
    fail(start, {"atom", "'true'", "'false'", "'!'", "'('"});
  }

  [[noreturn]] void fail(std::size_t offset, std::vector<std::string> expected) const {
    std::string msg = "syntax error at byte " + std::to_string(offset) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    throw SyntaxError(offset, std::move(expected), msg);
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  Token current_;
};

// iff     := imp ('<->' iff)?
// imp     := or ('->' imp)?
// or      := and ('|' and)*      (chains flatten)
// and     := unary ('&' unary)*  (chains flatten)
// unary   := '!' unary | primary
// primary := atom | 'true' | 'false' | '(' iff ')'
class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Formula parse() {
    Formula f = parse_iff();
    if (lex_.current().kind != Tok::End) {
      lex_.fail(lex_.current().offset,
                {"'&'", "'|'", "'->'", "'<->'", "end of input"});
    }
    return f;
  }

 private:
  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (lex_.current().kind == Tok::Iff) {
      lex_.advance();
      return Formula::iff(std::move(lhs), parse_iff());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (lex_.current().kind == Tok::Implies) {
      lex_.advance();
      return Formula::implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    std::vector<Formula> parts;
    parts.push_back(parse_and());
    while (lex_.current().kind == Tok::Or) {
      lex_.advance();
      parts.push_back(parse_and());
    }
    return Formula::disjunction(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts;
    parts.push_back(parse_unary());
    while (lex_.current().kind == Tok::And) {
      lex_.advance();
      parts.push_back(parse_unary());
    }
    return Formula::conjunction(std::move(parts));
  }

  Formula parse_unary() {
    if (lex_.current().kind == Tok::Not) {
      lex_.advance();
      return Formula::negate(parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    const Token tok = lex_.current();
    switch (tok.kind) {
      case Tok::Atom:
        lex_.advance();
        return Formula::atom(tok.text);
      case Tok::True:
        lex_.advance();
        return Formula::constant(true);
      case Tok::False:
        lex_.advance();
        return Formula::constant(false);
      case Tok::LParen: {
        lex_.advance();
        Formula inner = parse_iff();
        if (lex_.current().kind != Tok::RParen) {
          lex_.fail(lex_.current().offset, {"')'"});
        }
        lex_.advance();
        return inner;
      }
      default:
        lex_.fail(tok.offset, {"atom", "'true'", "'false'", "'!'", "'('"});
    }
  }

  Lexer lex_;
};

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(text).parse(); }

}  // namespace reconcile
