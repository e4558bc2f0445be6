#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fucham/error.hpp"
#include "fucham/lexer.hpp"
#include "fucham/machine.hpp"
#include "fucham/molecule.hpp"
#include "fucham/rule.hpp"

// Machine files:
//
//   option strict-context = true
//   option strategy = max
//   rule burn : H2, H2, O2 -> H2O, H2O @ lambda = 0.5
//   init { H2@0.9 * 2, O2@0.8 }
//
// Terms: `a`, `a@0.5`, `f(t, ...)`, `[ t, ... ]`, `t <| [ t, ... ]`,
// `t <| ?S`, `?x`. Element lists accept `t * n` for n copies.

namespace fucham {

struct MachineFile {
  MachineDef def;
  Solution init;
};

namespace detail {

class TermParser {
 public:
  explicit TermParser(TokenStream& ts) : ts_(ts) {}

  Term term() {
    Term t = primary();
    while (ts_.accept("<|")) {
      if (ts_.accept("?")) {
        t = Term::airlock(std::move(t), ts_.expect_ident("variable name").text);
      } else {
        ts_.expect("[");
        t = Term::airlock(std::move(t), element_list("]"));
      }
    }
    return t;
  }

  // Elements up to `close`, each optionally `* n`. Consumes `close`.
  std::vector<Term> element_list(std::string_view close) {
    std::vector<Term> out;
    if (ts_.accept(close)) return out;
    do {
      Term t = term();
      const std::size_t n = ts_.accept("*") ? ts_.expect_count() : 1;
      out.insert(out.end(), n, t);
    } while (ts_.accept(","));
    ts_.expect(close);
    return out;
  }

 private:
  Term primary() {
    if (ts_.accept("?")) return Term::var(ts_.expect_ident("variable name").text);
    if (ts_.accept("[")) return Term::membrane(element_list("]"));
    const Token& id = ts_.expect_ident("a term");
    std::string name = id.text;
    if (ts_.accept("(")) {
      std::vector<Term> args;
      if (!ts_.accept(")")) {
        do args.push_back(term());
        while (ts_.accept(","));
        ts_.expect(")");
      }
      return Term::app(std::move(name), std::move(args));
    }
    // `a@0.5` annotates; `@ lambda` ends a rule's right-hand side.
    if (ts_.peek().is("@") && ts_.peek(1).kind == Token::Kind::Number) {
      ts_.next();
      return Term::atom(std::move(name), ts_.expect_degree());
    }
    return Term::atom(std::move(name));
  }

  TokenStream& ts_;
};

// Ground conversion for init lists and solution literals: no variables, and
// an atom without annotation has degree 1.
inline Molecule ground(const Term& t, const TokenStream& ts) {
  switch (t.kind) {
    case Term::Kind::Var: ts.fail("variable ?" + t.name + " in a ground term");
    case Term::Kind::Atom: return Molecule::atom(t.name, t.degree.value_or(Degree::one()));
    case Term::Kind::App: {
      std::vector<Molecule> args;
      for (const auto& a : t.args) args.push_back(ground(a, ts));
      return Molecule::app(t.name, std::move(args));
    }
    case Term::Kind::Membrane: {
      Solution body;
      for (const auto& e : t.args) body.add(ground(e, ts));
      return Molecule::membrane(std::move(body));
    }
    case Term::Kind::Airlock: {
      if (t.body_var) ts.fail("variable ?" + *t.body_var + " in a ground term");
      Solution body;
      for (const auto& e : t.body) body.add(ground(e, ts));
      return Molecule::airlock(ground(t.args.front(), ts), std::move(body));
    }
  }
  ts.fail("unreachable term kind");
}

inline Solution ground_solution(const std::vector<Term>& elements, const TokenStream& ts) {
  Solution s;
  for (const auto& e : elements) s.add(ground(e, ts));
  return s;
}

}  // namespace detail

inline Molecule parse_molecule(std::string_view text) {
  detail::TokenStream ts(text);
  detail::TermParser p(ts);
  Term t = p.term();
  if (!ts.at_end()) ts.fail("unexpected " + detail::describe(ts.peek()) + " after term");
  return detail::ground(t, ts);
}

/// `{ m, m * n, ... }`
inline Solution parse_solution(std::string_view text) {
  detail::TokenStream ts(text);
  detail::TermParser p(ts);
  ts.expect("{");
  auto elements = p.element_list("}");
  if (!ts.at_end()) ts.fail("unexpected " + detail::describe(ts.peek()) + " after solution");
  return detail::ground_solution(elements, ts);
}

inline MachineFile parse_machine(std::string_view text) {
  detail::TokenStream ts(text);
  detail::TermParser p(ts);
  MachineOptions options;
  std::vector<ReactionRule> rules;
  Solution init;
  while (!ts.at_end()) {
    const detail::Token& kw = ts.expect_ident("'option', 'rule' or 'init'");
    if (kw.text == "option") {
      const detail::Token& key = ts.expect_ident("option name");
      ts.expect("=");
      const detail::Token& value = ts.expect_ident("option value");
      if (key.text == "strict-context" && (value.text == "true" || value.text == "false")) {
        options.strict_context = value.text == "true";
      } else if (key.text == "strategy" && (value.text == "max" || value.text == "random")) {
        options.strategy = value.text == "max" ? Strategy::Max : Strategy::Random;
      } else {
        throw ParseError("unknown option '" + key.text + " = " + value.text + "'", key.line, key.column);
      }
    } else if (kw.text == "rule") {
      const detail::Token& name = ts.expect_ident("rule name");
      ts.expect(":");
      std::vector<Term> lhs;
      do lhs.push_back(p.term());
      while (ts.accept(","));
      ts.expect("->");
      std::vector<Term> rhs;
      if (!ts.peek().is("@")) {
        do rhs.push_back(p.term());
        while (ts.accept(","));
      }
      ts.expect("@");
      if (!ts.peek().is_ident("lambda")) ts.fail("expected 'lambda' but found " + detail::describe(ts.peek()));
      ts.next();
      ts.expect("=");
      const Degree lambda = ts.expect_degree();
      try {
        rules.emplace_back(name.text, std::move(lhs), std::move(rhs), lambda);
      } catch (const DomainError& e) {
        throw ParseError(e.what(), name.line, name.column);
      }
    } else if (kw.text == "init") {
      ts.expect("{");
      init.add(detail::ground_solution(p.element_list("}"), ts));
    } else {
      throw ParseError("unknown directive '" + kw.text + "'", kw.line, kw.column);
    }
  }
  try {
    return {MachineDef(std::move(rules), options), std::move(init)};
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

inline std::string print_rule(const ReactionRule& r) {
  std::ostringstream out;
  out << "rule " << r.name() << " : ";
  print_term_list(out, r.lhs());
  out << " -> ";
  print_term_list(out, r.rhs());
  out << (r.rhs().empty() ? "" : " ") << "@ lambda = " << r.feasibility();
  return out.str();
}

inline std::string print_machine(const MachineFile& m) {
  std::ostringstream out;
  out << "option strict-context = " << (m.def.options().strict_context ? "true" : "false") << '\n';
  out << "option strategy = " << (m.def.options().strategy == Strategy::Max ? "max" : "random") << '\n';
  for (const auto& r : m.def.rules()) out << print_rule(r) << '\n';
  out << "init " << to_string(m.init) << '\n';
  return out.str();
}

inline bool operator==(const MachineFile& a, const MachineFile& b) { return a.def == b.def && a.init == b.init; }

}  // namespace fucham
