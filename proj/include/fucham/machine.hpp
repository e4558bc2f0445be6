#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fucham/degree.hpp"
#include "fucham/error.hpp"
#include "fucham/molecule.hpp"
#include "fucham/rule.hpp"

namespace fucham {

enum class Strategy { Max, Random };

struct MachineOptions {
  // Require every untouched molecule beside a reaction to reach its λ.
  bool strict_context = true;
  Strategy strategy = Strategy::Max;

  bool operator==(const MachineOptions&) const = default;
};

/// Ordered reaction rules plus options. Order breaks ties between equally
/// feasible rules: the later rule wins.
class MachineDef {
 public:
  MachineDef() = default;
  explicit MachineDef(std::vector<ReactionRule> rules, MachineOptions options = {})
      : rules_(std::move(rules)), options_(options) {
    std::set<std::string> names;
    for (const auto& r : rules_) {
      if (!names.insert(r.name()).second) throw DomainError("duplicate rule name '" + r.name() + "'");
    }
  }

  const std::vector<ReactionRule>& rules() const { return rules_; }
  const MachineOptions& options() const { return options_; }
  MachineOptions& options() { return options_; }

  bool operator==(const MachineDef&) const = default;

 private:
  std::vector<ReactionRule> rules_;
  MachineOptions options_;
};

enum class StepKind { Reaction, ChemicalContext, Membrane, AirlockIn, AirlockOut, PiAdministrative };

inline const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::Reaction: return "reaction";
    case StepKind::ChemicalContext: return "chemical-context";
    case StepKind::Membrane: return "membrane";
    case StepKind::AirlockIn: return "airlock-in";
    case StepKind::AirlockOut: return "airlock-out";
    case StepKind::PiAdministrative: return "pi-administrative";
  }
  return "?";
}

/// One executed move. `consumed`/`produced` are the top-level delta, which
/// is what replay applies; for a move inside a membrane they are the
/// enclosing top-level molecule before and after. `reactants`/`products`
/// are the molecules that actually reacted, wherever they sit.
struct TraceStep {
  std::size_t index = 0;
  StepKind kind = StepKind::Reaction;
  std::string rule;
  Degree lambda;
  std::vector<Molecule> consumed;
  std::vector<Molecule> produced;
  std::vector<Molecule> reactants;
  std::vector<Molecule> products;
  std::uint64_t digest = 0;
};

namespace detail {

template <typename Printer>
std::string molecule_list(const std::vector<Molecule>& ms, const Printer& print_one) {
  std::string out = "[";
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) out += ", ";
    out += print_one(ms[i]);
  }
  return out + "]";
}

}  // namespace detail

/// `step <k>: <kind> <rule-name> lambda=<d> consumed=[...] produced=[...]`
template <typename Printer>
std::string format_trace_step(const TraceStep& t, const Printer& print_one) {
  std::ostringstream out;
  out << "step " << t.index << ": " << to_string(t.kind) << ' ' << t.rule << " lambda=" << t.lambda
      << " consumed=" << detail::molecule_list(t.consumed, print_one)
      << " produced=" << detail::molecule_list(t.produced, print_one);
  return out.str();
}

inline std::string format_trace_step(const TraceStep& t) {
  return format_trace_step(t, [](const Molecule& m) { return to_string(m); });
}

/// Applies a top-level delta. Throws if a consumed molecule is missing.
inline Solution apply_delta(const Solution& s, const std::vector<Molecule>& consumed,
                            const std::vector<Molecule>& produced) {
  Solution out = s;
  for (const auto& m : consumed) out.remove(m);
  for (const auto& m : produced) out.add(m);
  return out;
}

/// Re-applies every recorded delta to `initial`, checking each digest.
inline Solution replay(const Solution& initial, std::span<const TraceStep> trace) {
  Solution s = initial;
  for (const auto& t : trace) {
    s = apply_delta(s, t.consumed, t.produced);
    if (digest(s) != t.digest) {
      throw DomainError("replay: digest mismatch at step " + std::to_string(t.index));
    }
  }
  return s;
}

struct RuleSelection {
  std::optional<std::size_t> really_applicable;
  std::vector<std::size_t> potentially_applicable;
};

/// Rule selection: scan the feasibility degrees in order, keep those with
/// ξ >= λ, and track the running maximum with `>=`, so among equal maxima the
/// last one scanned wins. Indices are 0-based.
inline RuleSelection select_rule(std::span<const Degree> lambdas, Degree xi) {
  RuleSelection sel;
  Degree best = Degree::zero();
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (xi >= lambdas[i]) {
      sel.potentially_applicable.push_back(i);
      if (lambdas[i] >= best) {
        best = lambdas[i];
        sel.really_applicable = i;
      }
    }
  }
  return sel;
}

inline std::optional<std::size_t> really_applicable(std::span<const Degree> lambdas, Degree xi) {
  return select_rule(lambdas, xi).really_applicable;
}

/// Rules competing for the same match: ξ is the match's minimum degree.
inline std::optional<std::size_t> really_applicable(std::span<const std::pair<ReactionRule, Match>> candidates,
                                                    Degree xi) {
  std::vector<Degree> lambdas;
  for (const auto& [r, m] : candidates) lambdas.push_back(r.feasibility());
  return really_applicable(lambdas, xi);
}

/// [m] ⊎ S -> [m ◁ S]. `m` and `body` must be present in `s`.
inline std::pair<TraceStep, Solution> airlock_in(const Solution& s, const Molecule& m, const Solution& body) {
  Solution rest = s;
  rest.remove(m);
  rest.remove(body);
  Molecule lock = Molecule::airlock(m, body);
  TraceStep t;
  t.kind = StepKind::AirlockIn;
  t.rule = "airlock";
  t.lambda = lock.degree();
  t.consumed.push_back(m);
  for (const auto& x : body.instances()) t.consumed.push_back(x);
  t.produced.push_back(lock);
  t.reactants = t.consumed;
  t.products = t.produced;
  rest.add(lock);
  t.digest = digest(rest);
  return {std::move(t), std::move(rest)};
}

/// [m ◁ S] -> [m] ⊎ S.
inline std::pair<TraceStep, Solution> airlock_out(const Solution& s, const Molecule& lock) {
  if (!lock.is(Molecule::Kind::Airlock)) throw DomainError("airlock_out: not an airlock molecule");
  Solution out = s;
  out.remove(lock);
  TraceStep t;
  t.kind = StepKind::AirlockOut;
  t.rule = "airlock";
  t.lambda = lock.degree();
  t.consumed.push_back(lock);
  t.produced.push_back(lock.head());
  for (const auto& x : lock.body().instances()) t.produced.push_back(x);
  t.reactants = t.consumed;
  t.products = t.produced;
  out.add(lock.head());
  out.add(lock.body());
  t.digest = digest(out);
  return {std::move(t), std::move(out)};
}

namespace detail {

struct Move {
  StepKind kind;
  std::string rule;
  Degree lambda;
  std::vector<Molecule> consumed;
  std::vector<Molecule> produced;
  std::vector<Molecule> reactants;
  std::vector<Molecule> products;
  bool administrative = false;

  bool same_effect(const Move& o) const {
    return rule == o.rule && kind == o.kind && consumed == o.consumed && produced == o.produced;
  }
};

// Paths to membranes reachable inside `m` without crossing another membrane
// or an airlock body. Each step indexes App arguments; an airlock head is 0.
inline void membrane_sites(const Molecule& m, std::vector<std::size_t>& path,
                           std::vector<std::vector<std::size_t>>& out) {
  switch (m.kind()) {
    case Molecule::Kind::Membrane: out.push_back(path); return;
    case Molecule::Kind::Atom: return;
    case Molecule::Kind::App:
    case Molecule::Kind::Airlock: {
      const std::size_t n = m.is(Molecule::Kind::App) ? m.args().size() : 1;
      for (std::size_t i = 0; i < n; ++i) {
        path.push_back(i);
        membrane_sites(m.args()[i], path, out);
        path.pop_back();
      }
      return;
    }
  }
}

inline const Molecule& at_path(const Molecule& m, std::span<const std::size_t> path) {
  return path.empty() ? m : at_path(m.args()[path.front()], path.subspan(1));
}

// δ(C()) for the context obtained by punching a hole at `path`.
inline Degree context_degree(const Molecule& m, std::span<const std::size_t> path) {
  if (path.empty()) return Degree::one();
  if (m.is(Molecule::Kind::Airlock)) return std::min(solution_degree(m.body()), context_degree(m.head(), path.subspan(1)));
  Degree d = Degree::one();
  for (std::size_t i = 0; i < m.args().size(); ++i) {
    d = std::min(d, i == path.front() ? context_degree(m.args()[i], path.subspan(1)) : m.args()[i].degree());
  }
  return d;
}

inline Molecule replace_at(const Molecule& m, std::span<const std::size_t> path, const Molecule& replacement) {
  if (path.empty()) return replacement;
  if (m.is(Molecule::Kind::Airlock)) return Molecule::airlock(replace_at(m.head(), path.subspan(1), replacement), m.body());
  std::vector<Molecule> args = m.args();
  args[path.front()] = replace_at(args[path.front()], path.subspan(1), replacement);
  return Molecule::app(m.name(), std::move(args));
}

inline bool all_at_least(const Solution& s, Degree lambda) { return solution_degree(s) >= lambda; }

inline void push_unique(std::vector<Move>& moves, Move mv) {
  for (const auto& existing : moves)
    if (existing.same_effect(mv)) return;
  moves.push_back(std::move(mv));
}

// All moves available in `level`, split into reactions and administrative moves.
inline void collect_moves(const MachineDef& mdef, const Solution& level, std::vector<Move>& reactions,
                          std::vector<Move>& admin) {
  const bool strict = mdef.options().strict_context;

  for (const auto& rule : mdef.rules()) {
    for (const auto& match : match_rule(rule, level)) {
      if (!feasible(rule, match)) continue;
      Solution rest = level;
      for (const auto& c : match.consumed) rest.remove(c);
      if (strict && !all_at_least(rest, rule.feasibility())) continue;
      Move mv{rest.empty() ? StepKind::Reaction : StepKind::ChemicalContext, rule.name(), rule.feasibility(),
              match.consumed, reaction_products(rule, match).instances(), {}, {}, false};
      mv.reactants = mv.consumed;
      mv.products = mv.produced;
      push_unique(reactions, std::move(mv));
    }
  }

  for (const auto& [m, count] : level.distinct()) {
    std::vector<std::size_t> path;
    std::vector<std::vector<std::size_t>> sites;
    membrane_sites(m, path, sites);
    Solution others = level;
    others.remove(m);
    for (const auto& site : sites) {
      const Molecule& inner = at_path(m, site);
      const Degree bound = std::min(solution_degree(inner.body()), context_degree(m, site));
      std::vector<Move> inner_reactions;
      std::vector<Move> inner_admin;
      collect_moves(mdef, inner.body(), inner_reactions, inner_admin);
      auto lift = [&](const Move& mv, std::vector<Move>& into) {
        Molecule evolved = replace_at(
            m, site, Molecule::membrane(apply_delta(inner.body(), mv.consumed, mv.produced)));
        Move outer{mv.administrative ? mv.kind : StepKind::Membrane, mv.rule, mv.lambda, {m}, {evolved},
                   mv.reactants, mv.products, mv.administrative};
        push_unique(into, std::move(outer));
      };
      for (const auto& mv : inner_reactions) {
        if (mv.lambda > bound) continue;
        if (strict && !all_at_least(others, mv.lambda)) continue;
        lift(mv, reactions);
      }
      for (const auto& mv : inner_admin) lift(mv, admin);
    }
  }

  for (const auto& [m, count] : level.distinct()) {
    if (!m.is(Molecule::Kind::Airlock)) continue;
    Move mv{StepKind::AirlockOut, "airlock", m.degree(), {m}, {m.head()}, {}, {}, true};
    for (const auto& x : m.body().instances()) mv.produced.push_back(x);
    mv.reactants = mv.consumed;
    mv.products = mv.produced;
    push_unique(admin, std::move(mv));
  }
}

}  // namespace detail

/// One machine step: gather every admissible move (airlock dissolution,
/// top-level reactions, reactions in context, reactions inside membranes),
/// then pick the really applicable one: maximal λ, last in enumeration order
/// among ties. With Strategy::Random, a seeded uniform pick among the moves
/// of maximal λ. Returns nullopt when nothing can happen.
inline std::optional<std::pair<TraceStep, Solution>> step(const MachineDef& mdef, const Solution& s,
                                                          std::uint64_t seed) {
  std::vector<detail::Move> reactions;
  std::vector<detail::Move> moves;
  detail::collect_moves(mdef, s, reactions, moves);
  // Administrative moves are scanned first, so a reaction wins any tie.
  moves.insert(moves.end(), std::make_move_iterator(reactions.begin()), std::make_move_iterator(reactions.end()));
  if (moves.empty()) return std::nullopt;

  std::vector<Degree> lambdas;
  for (const auto& mv : moves) lambdas.push_back(mv.lambda);
  // Each move was admitted only if its own ξ reaches its λ, so ξ = 1 here.
  std::size_t chosen = *really_applicable(lambdas, Degree::one());
  if (mdef.options().strategy == Strategy::Random) {
    const Degree top = moves[chosen].lambda;
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < moves.size(); ++i)
      if (moves[i].lambda == top) tied.push_back(i);
    std::mt19937_64 rng(seed);
    chosen = tied[rng() % tied.size()];
  }

  auto& mv = moves[chosen];
  Solution next = apply_delta(s, mv.consumed, mv.produced);
  TraceStep t{1, mv.kind, mv.rule, mv.lambda, std::move(mv.consumed), std::move(mv.produced),
              std::move(mv.reactants), std::move(mv.products), digest(next)};
  return std::pair{std::move(t), std::move(next)};
}

struct RunResult {
  std::vector<TraceStep> trace;
  Solution final;
  // True when the step budget ran out while a move was still available.
  bool stopped_by_budget = false;
};

inline RunResult run(const MachineDef& mdef, const Solution& s, std::size_t max_steps, std::uint64_t seed) {
  RunResult result{{}, s, false};
  std::mt19937_64 rng(seed);
  for (std::size_t k = 1; k <= max_steps; ++k) {
    auto next = step(mdef, result.final, rng());
    if (!next) return result;
    next->first.index = k;
    result.trace.push_back(std::move(next->first));
    result.final = std::move(next->second);
  }
  result.stopped_by_budget = step(mdef, result.final, 0).has_value();
  return result;
}

}  // namespace fucham
