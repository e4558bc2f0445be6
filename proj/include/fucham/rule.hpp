#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fucham/degree.hpp"
#include "fucham/error.hpp"
#include "fucham/molecule.hpp"

namespace fucham {

/// Rule-side term: a pattern on the left of a rule, a template on the right.
///
///   Var       ?x                     binds a molecule
///   Atom      a, a@0.5               degree is a constraint (lhs) or the product degree (rhs)
///   App       f(t1, ..., tn)
///   Membrane  [ t1, ..., tn ]        exact multiset of n elements
///   Airlock   t <| [ t1, ... ]       or  t <| ?S, where ?S binds the whole body
///
/// Inside a template element list, a variable bound to a solution splices
/// its contents.
struct Term {
  enum class Kind { Var, Atom, App, Membrane, Airlock };

  Kind kind = Kind::Atom;
  std::string name;
  std::optional<Degree> degree;
  std::vector<Term> args;              // App arguments, Membrane elements, Airlock head at [0]
  std::vector<Term> body;              // Airlock body elements
  std::optional<std::string> body_var; // Airlock tail variable

  static Term var(std::string name) { return {Kind::Var, std::move(name), {}, {}, {}, {}}; }
  static Term atom(std::string name, std::optional<Degree> d = {}) { return {Kind::Atom, std::move(name), d, {}, {}, {}}; }
  static Term app(std::string ctor, std::vector<Term> args) { return {Kind::App, std::move(ctor), {}, std::move(args), {}, {}}; }
  static Term membrane(std::vector<Term> elements) { return {Kind::Membrane, {}, {}, std::move(elements), {}, {}}; }
  static Term airlock(Term head, std::vector<Term> body) {
    return {Kind::Airlock, {}, {}, {std::move(head)}, std::move(body), {}};
  }
  static Term airlock(Term head, std::string tail_var) {
    return {Kind::Airlock, {}, {}, {std::move(head)}, {}, std::move(tail_var)};
  }

  bool operator==(const Term&) const = default;
};

inline void print(std::ostream& out, const Term& t);

inline void print_term_list(std::ostream& out, const std::vector<Term>& ts) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out << ", ";
    print(out, ts[i]);
  }
}

inline void print(std::ostream& out, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: out << '?' << t.name; return;
    case Term::Kind::Atom:
      out << t.name;
      if (t.degree) out << '@' << *t.degree;
      return;
    case Term::Kind::App:
      out << t.name << '(';
      print_term_list(out, t.args);
      out << ')';
      return;
    case Term::Kind::Membrane:
      out << "[ ";
      print_term_list(out, t.args);
      out << (t.args.empty() ? "]" : " ]");
      return;
    case Term::Kind::Airlock:
      print(out, t.args.front());
      out << " <| ";
      if (t.body_var) {
        out << '?' << *t.body_var;
      } else {
        out << "[ ";
        print_term_list(out, t.body);
        out << (t.body.empty() ? "]" : " ]");
      }
      return;
  }
}

using Binding = std::variant<Molecule, Solution>;
using Substitution = std::map<std::string, Binding>;

/// One way of instantiating a rule's left-hand side in a solution.
struct Match {
  Substitution substitution;
  std::vector<std::size_t> positions;  // into Solution::instances(), one per lhs pattern
  std::vector<Molecule> consumed;

  Degree min_degree() const {
    Degree d = Degree::one();
    for (const auto& m : consumed) d = std::min(d, m.degree());
    return d;
  }
};

/// m_1, ..., m_k ->λ m'_1, ..., m'_l
class ReactionRule {
 public:
  ReactionRule(std::string name, std::vector<Term> lhs, std::vector<Term> rhs, Degree feasibility)
      : name_(std::move(name)), lhs_(std::move(lhs)), rhs_(std::move(rhs)), feasibility_(feasibility) {
    if (lhs_.empty()) throw DomainError("rule '" + name_ + "': empty left-hand side");
    std::map<std::string, Sort> sorts;
    for (const auto& p : lhs_) collect_sorts(p, Sort::Molecule, sorts, true);
    for (const auto& t : rhs_) collect_sorts(t, Sort::Element, sorts, false);
  }

  const std::string& name() const { return name_; }
  const std::vector<Term>& lhs() const { return lhs_; }
  const std::vector<Term>& rhs() const { return rhs_; }
  Degree feasibility() const { return feasibility_; }

  bool operator==(const ReactionRule&) const = default;

 private:
  // Element: a list position, where a solution variable may splice.
  enum class Sort { Molecule, Solution, Element };

  void collect_sorts(const Term& t, Sort where, std::map<std::string, Sort>& sorts, bool binding) const {
    auto note = [&](const std::string& var, Sort s) {
      if (binding) {
        auto [it, fresh] = sorts.emplace(var, s);
        if (!fresh && it->second != s) {
          throw DomainError("rule '" + name_ + "': variable ?" + var + " used both as molecule and as solution");
        }
        return;
      }
      auto it = sorts.find(var);
      if (it == sorts.end()) throw DomainError("rule '" + name_ + "': variable ?" + var + " does not occur on the left");
      if (it->second == Sort::Solution && s == Sort::Molecule) {
        throw DomainError("rule '" + name_ + "': solution variable ?" + var + " used in term position");
      }
    };
    switch (t.kind) {
      case Term::Kind::Var: note(t.name, binding ? Sort::Molecule : where); break;
      case Term::Kind::Atom: break;
      case Term::Kind::App:
        for (const auto& a : t.args) collect_sorts(a, Sort::Molecule, sorts, binding);
        break;
      case Term::Kind::Membrane:
        for (const auto& a : t.args) collect_sorts(a, Sort::Element, sorts, binding);
        break;
      case Term::Kind::Airlock:
        collect_sorts(t.args.front(), Sort::Molecule, sorts, binding);
        for (const auto& a : t.body) collect_sorts(a, Sort::Element, sorts, binding);
        if (t.body_var) note(*t.body_var, binding ? Sort::Solution : Sort::Element);
        break;
    }
  }

  std::string name_;
  std::vector<Term> lhs_;
  std::vector<Term> rhs_;
  Degree feasibility_;
};

namespace detail {

using MatchSink = std::function<void(const Substitution&)>;

inline bool bind_var(Substitution& sub, const std::string& var, Binding value) {
  auto it = sub.find(var);
  if (it == sub.end()) {
    sub.emplace(var, std::move(value));
    return true;
  }
  return it->second == value;
}

inline void match_term(const Term& p, const Molecule& m, const Substitution& sub, const MatchSink& k);

// Assigns `patterns[i..]` injectively to unused entries of `pool`.
inline void match_all(const std::vector<Term>& patterns, std::size_t i, const std::vector<Molecule>& pool,
                      std::vector<bool>& used, const Substitution& sub, const MatchSink& k) {
  if (i == patterns.size()) {
    k(sub);
    return;
  }
  for (std::size_t j = 0; j < pool.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    match_term(patterns[i], pool[j], sub, [&](const Substitution& s2) { match_all(patterns, i + 1, pool, used, s2, k); });
    used[j] = false;
  }
}

inline void match_exact(const std::vector<Term>& patterns, const Solution& body, const Substitution& sub,
                        const MatchSink& k) {
  if (patterns.size() != body.size()) return;
  const auto pool = body.instances();
  std::vector<bool> used(pool.size(), false);
  match_all(patterns, 0, pool, used, sub, k);
}

inline void match_term(const Term& p, const Molecule& m, const Substitution& sub, const MatchSink& k) {
  switch (p.kind) {
    case Term::Kind::Var: {
      Substitution s2 = sub;
      if (bind_var(s2, p.name, m)) k(s2);
      return;
    }
    case Term::Kind::Atom:
      if (m.is(Molecule::Kind::Atom) && m.name() == p.name && (!p.degree || *p.degree == m.degree())) k(sub);
      return;
    case Term::Kind::App: {
      if (!m.is(Molecule::Kind::App) || m.name() != p.name || m.args().size() != p.args.size()) return;
      std::function<void(std::size_t, const Substitution&)> go = [&](std::size_t i, const Substitution& s) {
        if (i == p.args.size()) {
          k(s);
          return;
        }
        match_term(p.args[i], m.args()[i], s, [&](const Substitution& s2) { go(i + 1, s2); });
      };
      go(0, sub);
      return;
    }
    case Term::Kind::Membrane:
      if (m.is(Molecule::Kind::Membrane)) match_exact(p.args, m.body(), sub, k);
      return;
    case Term::Kind::Airlock:
      if (!m.is(Molecule::Kind::Airlock)) return;
      match_term(p.args.front(), m.head(), sub, [&](const Substitution& s2) {
        if (p.body_var) {
          Substitution s3 = s2;
          if (bind_var(s3, *p.body_var, m.body())) k(s3);
        } else {
          match_exact(p.body, m.body(), s2, k);
        }
      });
      return;
  }
}

inline Molecule instantiate(const Term& t, const Substitution& sub, Degree fresh);

inline void instantiate_into(const Term& t, const Substitution& sub, Degree fresh, Solution& out) {
  if (t.kind == Term::Kind::Var) {
    const Binding& b = sub.at(t.name);
    if (const auto* s = std::get_if<Solution>(&b)) {
      out.add(*s);
    } else {
      out.add(std::get<Molecule>(b));
    }
    return;
  }
  out.add(instantiate(t, sub, fresh));
}

inline Molecule instantiate(const Term& t, const Substitution& sub, Degree fresh) {
  switch (t.kind) {
    case Term::Kind::Var: {
      const Binding& b = sub.at(t.name);
      if (const auto* m = std::get_if<Molecule>(&b)) return *m;
      throw DomainError("solution variable ?" + t.name + " used in term position");
    }
    case Term::Kind::Atom: return Molecule::atom(t.name, t.degree.value_or(fresh));
    case Term::Kind::App: {
      std::vector<Molecule> args;
      for (const auto& a : t.args) args.push_back(instantiate(a, sub, fresh));
      return Molecule::app(t.name, std::move(args));
    }
    case Term::Kind::Membrane: {
      Solution body;
      for (const auto& e : t.args) instantiate_into(e, sub, fresh, body);
      return Molecule::membrane(std::move(body));
    }
    case Term::Kind::Airlock: {
      Solution body;
      if (t.body_var) {
        body = std::get<Solution>(sub.at(*t.body_var));
      } else {
        for (const auto& e : t.body) instantiate_into(e, sub, fresh, body);
      }
      return Molecule::airlock(instantiate(t.args.front(), sub, fresh), std::move(body));
    }
  }
  throw DomainError("unreachable term kind");
}

}  // namespace detail

/// Every way of matching the rule's left-hand side against distinct copies
/// in `s`. Identical copies at different positions give distinct matches.
/// Order: lexicographic in the chosen positions of the canonical instance list.
inline std::vector<Match> match_rule(const ReactionRule& r, const Solution& s) {
  std::vector<Match> out;
  const auto pool = s.instances();
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, const Substitution&)> go = [&](std::size_t i, const Substitution& sub) {
    if (i == r.lhs().size()) {
      Match m{sub, chosen, {}};
      for (auto pos : chosen) m.consumed.push_back(pool[pos]);
      out.push_back(std::move(m));
      return;
    }
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
      chosen.push_back(j);
      detail::match_term(r.lhs()[i], pool[j], sub, [&](const Substitution& s2) { go(i + 1, s2); });
      chosen.pop_back();
    }
  };
  go(0, {});
  return out;
}

/// min{δ(M_1), ..., δ(M_k)} >= λ
inline bool feasible(const ReactionRule& r, const Match& m) { return m.min_degree() >= r.feasibility(); }

/// Products of a match. Fresh literal atoms without a degree annotation take
/// the minimum degree of the consumed molecules.
inline Solution reaction_products(const ReactionRule& r, const Match& m) {
  Solution out;
  for (const auto& t : r.rhs()) detail::instantiate_into(t, m.substitution, m.min_degree(), out);
  return out;
}

inline Solution apply_reaction(const ReactionRule& r, const Match& m, const Solution& s) {
  if (!feasible(r, m)) {
    throw DomainError("rule '" + r.name() + "' is not feasible for this match (min degree " +
                      m.min_degree().to_string() + " < lambda " + r.feasibility().to_string() + ")");
  }
  Solution out = s;
  for (const auto& c : m.consumed) out.remove(c);
  out.add(reaction_products(r, m));
  return out;
}

}  // namespace fucham
