#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "fucham/degree.hpp"
#include "fucham/error.hpp"

namespace fucham::detail {

struct Token {
  enum class Kind { Ident, Number, Punct, End };

  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is(std::string_view punct) const { return kind == Kind::Punct && text == punct; }
  bool is_ident(std::string_view word) const { return kind == Kind::Ident && text == word; }
};

inline std::string describe(const Token& t) {
  return t.kind == Token::Kind::End ? std::string("end of input") : "'" + t.text + "'";
}

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

/// Identifiers: [A-Za-z_][A-Za-z0-9_']*, plus inner hyphens followed by a
/// letter (`strict-context`). Numbers: digits with an optional fraction.
/// Two-character punctuation: `->`, `<|`. `#` comments run to end of line.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Token::Kind::Punct, {}, line, col};
    std::size_t len = 1;
    if (ident_start(c)) {
      t.kind = Token::Kind::Ident;
      while (i + len < src.size()) {
        if (ident_char(src[i + len])) {
          ++len;
        } else if (src[i + len] == '-' && i + len + 1 < src.size() && std::isalpha(static_cast<unsigned char>(src[i + len + 1]))) {
          len += 2;
        } else {
          break;
        }
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Token::Kind::Number;
      while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len]))) ++len;
      if (i + len + 1 < src.size() && src[i + len] == '.' && std::isdigit(static_cast<unsigned char>(src[i + len + 1]))) {
        ++len;
        while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len]))) ++len;
      }
    } else if (src.substr(i, 2) == "->" || src.substr(i, 2) == "<|") {
      len = 2;
    } else if (std::string_view("()[]{},:@=*?<>.|+!").find(c) == std::string_view::npos) {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    t.text = std::string(src.substr(i, len));
    advance(len);
    out.push_back(std::move(t));
  }
  out.push_back({Token::Kind::End, {}, line, col});
  return out;
}

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
 public:
  explicit TokenStream(std::string_view src) : tokens_(tokenize(src)) {}

  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  bool accept(std::string_view punct) {
    if (!peek().is(punct)) return false;
    next();
    return true;
  }

  const Token& expect(std::string_view punct) {
    if (!peek().is(punct)) fail("expected '" + std::string(punct) + "' but found " + describe(peek()));
    return next();
  }

  const Token& expect_ident(std::string_view what = "identifier") {
    if (peek().kind != Token::Kind::Ident) fail("expected " + std::string(what) + " but found " + describe(peek()));
    return next();
  }

  Degree expect_degree() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Number) fail("expected a degree but found " + describe(t));
    try {
      Degree d = Degree::parse(t.text);
      next();
      return d;
    } catch (const DomainError& e) {
      throw ParseError(e.what(), t.line, t.column);
    }
  }

  std::size_t expect_count() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Number || t.text.find('.') != std::string::npos) {
      fail("expected a positive integer count but found " + describe(t));
    }
    if (t.text.size() > 6) throw ParseError("count too large", t.line, t.column);
    const std::size_t n = std::stoul(t.text);
    if (n == 0) throw ParseError("count must be positive", t.line, t.column);
    next();
    return n;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, peek().line, peek().column); }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace fucham::detail
