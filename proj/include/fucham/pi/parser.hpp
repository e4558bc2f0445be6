#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fucham/error.hpp"
#include "fucham/lexer.hpp"
#include "fucham/pi/process.hpp"

// P ::= par
// par ::= sum ('|' sum)*              left-associative
// sum ::= unary ('+' unary)*          every operand must be prefixed or 0
// unary ::= '0' | prefix '.' unary | 'new' name par | '!' par | '(' par ')'
// prefix ::= name '(' name ')' | name '<' name '>' | 'tau'
// name ::= identifier ['@' degree]

namespace fucham::pi {

namespace detail {

using fucham::detail::Token;
using fucham::detail::TokenStream;

class Parser {
 public:
  explicit Parser(std::string_view text) : ts_(text) {}

  PiProcess parse() {
    PiProcess p = par();
    if (!ts_.at_end()) ts_.fail("unexpected " + fucham::detail::describe(ts_.peek()));
    return p;
  }

 private:
  PiProcess par() {
    PiProcess p = sum();
    while (ts_.accept("|")) p = PiProcess::par(std::move(p), sum());
    return p;
  }

  PiProcess sum() {
    const Token start = ts_.peek();
    PiProcess first = unary();
    if (!ts_.peek().is("+")) return first;
    std::vector<Summand> summands;
    auto absorb = [&](const PiProcess& p, const Token& at) {
      if (!p.is(PiProcess::Kind::Sum)) {
        throw ParseError("operands of '+' must be prefixed processes or 0", at.line, at.column);
      }
      summands.insert(summands.end(), p.summands().begin(), p.summands().end());
    };
    absorb(first, start);
    while (ts_.accept("+")) {
      const Token at = ts_.peek();
      absorb(unary(), at);
    }
    return PiProcess::sum(std::move(summands));
  }

  PiProcess unary() {
    const Token& t = ts_.peek();
    if (t.kind == Token::Kind::Number) {
      if (t.text != "0") ts_.fail("expected a process but found '" + t.text + "'");
      ts_.next();
      return PiProcess::nil();
    }
    if (ts_.accept("(")) {
      PiProcess p = par();
      ts_.expect(")");
      return p;
    }
    if (ts_.accept("!")) return PiProcess::repl(par());
    if (t.is_ident("new")) {
      ts_.next();
      Name x = name();
      return PiProcess::restrict(std::move(x), par());
    }
    if (t.is_ident("tau")) {
      ts_.next();
      ts_.expect(".");
      return PiProcess::prefixed(Prefix::tau(), unary());
    }
    Name channel = name();
    Prefix prefix;
    if (ts_.accept("(")) {
      prefix = Prefix::input(std::move(channel), name());
      ts_.expect(")");
    } else if (ts_.accept("<")) {
      prefix = Prefix::output(std::move(channel), name());
      ts_.expect(">");
    } else {
      ts_.fail("expected '(' or '<' after channel name but found " + fucham::detail::describe(ts_.peek()));
    }
    ts_.expect(".");
    return PiProcess::prefixed(std::move(prefix), unary());
  }

  Name name() {
    const Token& t = ts_.peek();
    if (t.is_ident("new") || t.is_ident("tau")) ts_.fail("keyword '" + t.text + "' used as a name");
    Name n{ts_.expect_ident("a name").text, Degree::one()};
    if (ts_.accept("@")) n.degree = ts_.expect_degree();
    return n;
  }

  TokenStream ts_;
};

}  // namespace detail

inline PiProcess parse(std::string_view text) { return detail::Parser(text).parse(); }

}  // namespace fucham::pi
