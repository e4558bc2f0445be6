#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fucham/degree.hpp"
#include "fucham/machine.hpp"
#include "fucham/molecule.hpp"
#include "fucham/pi/encoding.hpp"
#include "fucham/pi/names.hpp"
#include "fucham/pi/process.hpp"

namespace fucham::pi {

struct Communication {
  Name input_channel;
  Name output_channel;
  Name bound;
  Name payload;

  bool operator==(const Communication&) const = default;
};

/// δ(x) = δ(x̄) >= λ and δ(z) - δ(y) <= λ, the difference taken signed.
/// The channels must also be the same name.
inline bool communication_feasible(const Name& input_channel, const Name& output_channel, const Name& bound,
                                   const Name& payload, Degree lambda) {
  return input_channel == output_channel && input_channel.degree == output_channel.degree &&
         input_channel.degree >= lambda && signed_diff(payload.degree, bound.degree) <= lambda.micros();
}

inline bool communication_feasible(const Communication& c, Degree lambda) {
  return communication_feasible(c.input_channel, c.output_channel, c.bound, c.payload, lambda);
}

struct PiTraceStep {
  TraceStep step;
  std::optional<Communication> communication;
};

struct PiRunResult {
  std::vector<PiTraceStep> trace;
  Solution final;
  bool stopped_by_budget = false;
};

namespace detail {

// Lower value runs first. Communications and τ share a rank and are picked
// at random; everything else is deterministic.
enum Rank : int {
  kParallel = 1,
  kInaction,
  kRestriction,
  kAirlock,
  kScopeExtension,
  kReaction,
  kReplication,
};

struct PiMove {
  int rank;
  std::string rule;
  std::vector<Molecule> consumed;
  std::vector<Molecule> produced;
  std::vector<Molecule> reactants;
  std::vector<Molecule> products;
  std::optional<Communication> communication;
};

inline void active_of(const PiProcess& p, std::vector<Prefix>& out) {
  switch (p.kind()) {
    case PiProcess::Kind::Sum:
      for (const auto& s : p.summands())
        if (s.prefix.kind != Prefix::Kind::Tau) out.push_back(s.prefix);
      return;
    case PiProcess::Kind::Par:
      active_of(p.left(), out);
      active_of(p.right(), out);
      return;
    default: return;
  }
}

inline bool excluded(const Name& channel, const std::vector<Name>& binders) {
  return std::find(binders.begin(), binders.end(), channel) != binders.end();
}

// Input/output prefixes that could react once brought together, looking
// through membranes and airlocks. Channels bound by a membrane on the way
// down are skipped: they are different names from anything outside.
inline void reachable_of(const Molecule& m, std::vector<Name>& binders, std::vector<Prefix>& out, bool include_repl);

inline void reachable_in(const Solution& s, std::vector<Name>& binders, std::vector<Prefix>& out, bool include_repl) {
  for (const auto& [m, n] : s.distinct()) reachable_of(m, binders, out, include_repl);
}

inline void reachable_of(const Molecule& m, std::vector<Name>& binders, std::vector<Prefix>& out, bool include_repl) {
  if (is_restriction_membrane(m)) {
    binders.push_back(membrane_binder(m));
    reachable_in(membrane_body(m), binders, out, include_repl);
    binders.pop_back();
    return;
  }
  if (m.is(Molecule::Kind::Airlock)) {
    reachable_of(m.head(), binders, out, include_repl);
    reachable_in(m.body(), binders, out, include_repl);
    return;
  }
  if (!is_process_molecule(m)) return;
  const PiProcess p = from_molecule(m);
  std::vector<Prefix> act;
  if (p.is(PiProcess::Kind::Repl)) {
    if (include_repl) active_of(p.body(), act);
  } else {
    active_of(p, act);
  }
  for (auto& a : act)
    if (!excluded(a.channel, binders)) out.push_back(std::move(a));
}

inline bool complementary(const Prefix& a, const Prefix& b, Degree lambda) {
  if (a.kind == Prefix::Kind::Input && b.kind == Prefix::Kind::Output) {
    return communication_feasible(a.channel, b.channel, a.object, b.object, lambda);
  }
  if (a.kind == Prefix::Kind::Output && b.kind == Prefix::Kind::Input) {
    return communication_feasible(b.channel, a.channel, b.object, a.object, lambda);
  }
  return false;
}

inline bool any_partner(const std::vector<Prefix>& xs, const std::vector<Prefix>& ys, Degree lambda) {
  for (const auto& a : xs)
    for (const auto& b : ys)
      if (complementary(a, b, lambda)) return true;
  return false;
}

inline void collect_identifiers(const Molecule& m, std::set<std::string>& out) {
  if (m.is(Molecule::Kind::Atom)) {
    out.insert(m.name());
    return;
  }
  for (const auto& a : m.args()) collect_identifiers(a, out);
  if (m.is(Molecule::Kind::Membrane) || m.is(Molecule::Kind::Airlock)) {
    for (const auto& [x, n] : m.body().distinct()) collect_identifiers(x, out);
  }
}

inline std::set<std::string> solution_identifiers(const Solution& s) {
  std::set<std::string> out;
  for (const auto& [m, n] : s.distinct()) collect_identifiers(m, out);
  return out;
}

inline Solution rename_free(const Solution& s, const Name& to, const Name& from);

inline Molecule rename_free(const Molecule& m, const Name& to, const Name& from) {
  if (is_restriction_membrane(m)) {
    const Name b = membrane_binder(m);
    if (b == from) return m;
    return restriction_membrane(b, rename_free(membrane_body(m), to, from));
  }
  if (m.is(Molecule::Kind::Airlock)) {
    return Molecule::airlock(rename_free(m.head(), to, from), rename_free(m.body(), to, from));
  }
  return to_molecule(substitute(from_molecule(m), to, from));
}

inline Solution rename_free(const Solution& s, const Name& to, const Name& from) {
  Solution out;
  for (const auto& [m, n] : s.distinct()) out.add(rename_free(m, to, from), n);
  return out;
}

inline bool free_in(const Name& x, const Solution& s);

inline bool free_in(const Name& x, const Molecule& m) {
  if (is_restriction_membrane(m)) return membrane_binder(m) != x && free_in(x, membrane_body(m));
  if (m.is(Molecule::Kind::Airlock)) return free_in(x, m.head()) || free_in(x, m.body());
  return is_free_in(x, from_molecule(m));
}

inline bool free_in(const Name& x, const Solution& s) {
  for (const auto& [m, n] : s.distinct())
    if (free_in(x, m)) return true;
  return false;
}

inline void pi_moves(const Solution& level, Degree lambda, const std::set<std::string>& taken,
                     std::vector<PiMove>& out) {
  const auto distinct = level.distinct();
  auto local = [&](int rank, std::string rule, std::vector<Molecule> consumed, std::vector<Molecule> produced,
                   std::optional<Communication> comm = std::nullopt) {
    PiMove mv{rank, std::move(rule), std::move(consumed), std::move(produced), {}, {}, std::move(comm)};
    mv.reactants = mv.consumed;
    mv.products = mv.produced;
    for (const auto& existing : out) {
      if (existing.rank == mv.rank && existing.consumed == mv.consumed && existing.produced == mv.produced) return;
    }
    out.push_back(std::move(mv));
  };

  for (const auto& [m, count] : distinct) {
    if (is_restriction_membrane(m)) {
      if (membrane_body(m).empty()) local(kInaction, "inaction", {m}, {});
      continue;
    }
    if (m.is(Molecule::Kind::Airlock)) {
      std::vector<Molecule> produced{m.head()};
      for (const auto& x : m.body().instances()) produced.push_back(x);
      local(kAirlock, "airlock", {m}, std::move(produced));
      continue;
    }
    if (!is_process_molecule(m)) continue;
    const PiProcess p = from_molecule(m);
    switch (p.kind()) {
      case PiProcess::Kind::Par: local(kParallel, "parallel", {m}, {to_molecule(p.left()), to_molecule(p.right())}); break;
      case PiProcess::Kind::New:
        local(kRestriction, "restriction-membrane", {m}, {restriction_membrane(p.binder(), Solution{to_molecule(p.body())})});
        break;
      case PiProcess::Kind::Sum:
        if (p.is_nil()) {
          local(kInaction, "inaction", {m}, {});
          break;
        }
        for (const auto& s : p.summands()) {
          if (s.prefix.kind == Prefix::Kind::Tau) local(kReaction, "tau", {m}, {to_molecule(s.cont)});
        }
        break;
      case PiProcess::Kind::Repl: break;
    }
  }

  // Scope extension: a molecule moves into a restriction membrane when it has
  // a feasible partner inside. The binder is renamed first if it would
  // capture a free name of the mover.
  for (const auto& [mem, mem_count] : distinct) {
    if (!is_restriction_membrane(mem)) continue;
    const Name x = membrane_binder(mem);
    std::vector<Name> binders{x};
    std::vector<Prefix> inside;
    reachable_in(membrane_body(mem), binders, inside, false);
    if (inside.empty()) continue;
    for (const auto& [m, count] : distinct) {
      if (m == mem && mem_count < 2) continue;
      if (m.is(Molecule::Kind::Airlock)) continue;
      std::vector<Prefix> mover;
      if (is_restriction_membrane(m)) {
        std::vector<Name> b{membrane_binder(m)};
        reachable_in(membrane_body(m), b, mover, false);
      } else if (is_process_molecule(m)) {
        const PiProcess p = from_molecule(m);
        if (!p.is(PiProcess::Kind::Sum)) continue;
        active_of(p, mover);
      } else {
        continue;
      }
      if (!any_partner(mover, inside, lambda)) continue;
      Name binder = x;
      Solution body = membrane_body(mem);
      if (free_in(x, m)) {
        binder = Name{fresh_identifier(x.id, taken), x.degree};
        body = rename_free(body, binder, x);
      }
      local(kScopeExtension, "scope-extension", {m, mem},
            {restriction_membrane(binder, Solution{Molecule::airlock(m, std::move(body))})});
    }
  }

  // Communication between two distinct copies.
  const auto pool = level.instances();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!is_process_molecule(pool[i])) continue;
    const PiProcess p = from_molecule(pool[i]);
    if (!p.is(PiProcess::Kind::Sum)) continue;
    for (const auto& in : p.summands()) {
      if (in.prefix.kind != Prefix::Kind::Input) continue;
      for (std::size_t j = 0; j < pool.size(); ++j) {
        if (i == j || !is_process_molecule(pool[j])) continue;
        const PiProcess q = from_molecule(pool[j]);
        if (!q.is(PiProcess::Kind::Sum)) continue;
        for (const auto& outp : q.summands()) {
          if (outp.prefix.kind != Prefix::Kind::Output) continue;
          Communication c{in.prefix.channel, outp.prefix.channel, in.prefix.object, outp.prefix.object};
          if (!communication_feasible(c, lambda)) continue;
          local(kReaction, "reaction", {pool[i], pool[j]},
                {to_molecule(substitute(in.cont, c.payload, c.bound)), to_molecule(outp.cont)}, c);
        }
      }
    }
  }

  // Replication unfolds only when the fresh copy could react with something.
  for (const auto& [m, count] : distinct) {
    if (!is_process_molecule(m)) continue;
    const PiProcess p = from_molecule(m);
    if (!p.is(PiProcess::Kind::Repl)) continue;
    std::vector<Prefix> copy;
    active_of(p.body(), copy);
    std::vector<Prefix> partners = copy;
    std::vector<Name> none;
    for (const auto& [other, n] : distinct) {
      const bool self = other == m;
      if (self && n < 2) continue;
      reachable_of(other, none, partners, true);
    }
    if (any_partner(copy, partners, lambda)) local(kReplication, "replication", {m}, {m, to_molecule(p.body())});
  }

  // Moves inside membranes, lifted to this level.
  for (const auto& [mem, count] : distinct) {
    if (!is_restriction_membrane(mem)) continue;
    std::vector<PiMove> inner;
    pi_moves(membrane_body(mem), lambda, taken, inner);
    for (auto& mv : inner) {
      Molecule evolved = restriction_membrane(membrane_binder(mem), apply_delta(membrane_body(mem), mv.consumed, mv.produced));
      PiMove lifted{mv.rank, mv.rule, {mem}, {std::move(evolved)}, std::move(mv.reactants), std::move(mv.products),
                    std::move(mv.communication)};
      bool dup = false;
      for (const auto& existing : out) {
        dup = dup || (existing.rank == lifted.rank && existing.consumed == lifted.consumed && existing.produced == lifted.produced);
      }
      if (!dup) out.push_back(std::move(lifted));
    }
  }
}

}  // namespace detail

/// One step of the reducer at threshold λ. Administrative moves run first in
/// a fixed order; then a communication or τ, chosen uniformly with `seed`
/// among all that are enabled; replication unfolding only when nothing else
/// is possible.
inline std::optional<std::pair<PiTraceStep, Solution>> pi_step(const Solution& s, Degree lambda, std::uint64_t seed) {
  std::vector<detail::PiMove> moves;
  detail::pi_moves(s, lambda, detail::solution_identifiers(s), moves);
  if (moves.empty()) return std::nullopt;

  int best = moves.front().rank;
  for (const auto& mv : moves) best = std::min(best, mv.rank);
  std::vector<std::size_t> ranked;
  for (std::size_t i = 0; i < moves.size(); ++i)
    if (moves[i].rank == best) ranked.push_back(i);
  std::size_t chosen = ranked.front();
  if (best == detail::kReaction) {
    std::mt19937_64 rng(seed);
    chosen = ranked[rng() % ranked.size()];
  }

  auto& mv = moves[chosen];
  Solution next = apply_delta(s, mv.consumed, mv.produced);
  const bool admin = mv.rank != detail::kReaction;
  TraceStep t{1, admin ? StepKind::PiAdministrative : StepKind::Reaction, mv.rule, lambda, std::move(mv.consumed),
              std::move(mv.produced), std::move(mv.reactants), std::move(mv.products), digest(next)};
  return std::pair{PiTraceStep{std::move(t), std::move(mv.communication)}, std::move(next)};
}

inline PiRunResult pi_run(const Solution& initial, Degree lambda, std::size_t max_steps, std::uint64_t seed) {
  PiRunResult result{{}, initial, false};
  std::mt19937_64 rng(seed);
  for (std::size_t k = 1; k <= max_steps; ++k) {
    auto next = pi_step(result.final, lambda, rng());
    if (!next) return result;
    next->first.step.index = k;
    result.trace.push_back(std::move(next->first));
    result.final = std::move(next->second);
  }
  result.stopped_by_budget = pi_step(result.final, lambda, 0).has_value();
  return result;
}

inline PiRunResult pi_run(const PiProcess& p, Degree lambda, std::size_t max_steps, std::uint64_t seed) {
  return pi_run(encode(p), lambda, max_steps, seed);
}

inline std::vector<TraceStep> engine_trace(const PiRunResult& r) {
  std::vector<TraceStep> out;
  for (const auto& t : r.trace) out.push_back(t.step);
  return out;
}

/// Trace line for a pi step, with names and processes in pi syntax.
inline std::string format_pi_trace_step(const PiTraceStep& t) {
  return format_trace_step(t.step, [](const Molecule& m) {
    std::ostringstream out;
    print_element(out, m);
    return out.str();
  });
}

}  // namespace fucham::pi
