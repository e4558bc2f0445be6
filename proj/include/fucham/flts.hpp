#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "fucham/degree.hpp"
#include "fucham/error.hpp"
#include "fucham/relation.hpp"

namespace fucham {

using State = std::string;
using Action = std::string;

struct Transition {
  State source;
  Action action;
  State target;
  Degree degree;

  auto operator<=>(const Transition&) const = default;
};

/// Fuzzy labeled transition system. Each (source, action, target) triple
/// carries exactly one plausibility degree.
class Flts {
 public:
  Flts() = default;

  void add_state(const State& q) { states_.insert(q); }

  void add_transition(const State& source, const Action& action, const State& target, Degree d) {
    if (!states_.contains(source) || !states_.contains(target)) {
      throw DomainError("flts: transition " + source + " -" + action + "-> " + target + " mentions an unknown state");
    }
    auto [it, inserted] = transitions_.emplace(std::tuple{source, action, target}, d);
    if (!inserted) {
      throw DomainError("flts: duplicate transition " + source + " -" + action + "-> " + target);
    }
    actions_.insert(action);
  }

  void add_transition(const Transition& t) { add_transition(t.source, t.action, t.target, t.degree); }

  const std::set<State>& states() const { return states_; }
  const std::set<Action>& actions() const { return actions_; }

  std::vector<Transition> transitions() const {
    std::vector<Transition> out;
    out.reserve(transitions_.size());
    for (const auto& [key, d] : transitions_) {
      out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), d});
    }
    return out;
  }

  std::vector<Transition> outgoing(const State& q) const {
    std::vector<Transition> out;
    for (auto it = transitions_.lower_bound({q, Action{}, State{}});
         it != transitions_.end() && std::get<0>(it->first) == q; ++it) {
      out.push_back({q, std::get<1>(it->first), std::get<2>(it->first), it->second});
    }
    return out;
  }

  bool contains(const Transition& t) const {
    auto it = transitions_.find({t.source, t.action, t.target});
    return it != transitions_.end() && it->second == t.degree;
  }

  std::size_t transition_count() const { return transitions_.size(); }

  bool operator==(const Flts&) const = default;

 private:
  std::set<State> states_;
  std::set<Action> actions_;
  std::map<std::tuple<State, Action, State>, Degree> transitions_;
};

using StateRelation = FuzzyRelation<State, State>;

/// A fuzzy relation between the states of two systems together with the
/// simulation degree s above which related pairs are checked.
struct CandidateSimulation {
  StateRelation relation;
  Degree threshold;
};

enum class ViolationReason { NoMatchingAction, DegreeTooLow, SuccessorRelationTooLow };
enum class Direction { Forward, Backward };

inline const char* to_string(ViolationReason r) {
  switch (r) {
    case ViolationReason::NoMatchingAction: return "no-matching-action";
    case ViolationReason::DegreeTooLow: return "degree-too-low";
    case ViolationReason::SuccessorRelationTooLow: return "successor-relation-too-low";
  }
  return "?";
}

struct Violation {
  // The checked pair, always written in the orientation of the candidate
  // relation as supplied by the caller.
  State first;
  State second;
  Transition offending;
  ViolationReason reason;
  Direction direction = Direction::Forward;

  bool operator==(const Violation&) const = default;
};

struct CheckReport {
  bool holds = true;
  std::vector<Violation> violations;

  static constexpr const char* kOrientation =
      "# orientation: every move of the first system from p is matched by a move of the second from q";
};

namespace detail {

// A pair is checked only if its degree reaches the threshold and is
// nonzero; pairs outside the support are never related.
inline bool in_checked_zone(Degree value, Degree threshold) {
  return value > Degree::zero() && value >= threshold;
}

inline void require_domains(const Flts& a, const Flts& b, const StateRelation& rel) {
  if (rel.left_domain() != a.states() || rel.right_domain() != b.states()) {
    throw DomainError("candidate relation domains do not match the state sets of the two systems");
  }
}

// Violations of the simulation condition at pair (p,q), where `value` is the
// degree the pair is taken to have and `rel(p',q')` gives successor degrees.
template <typename RelFn>
void pair_violations(const Flts& a, const Flts& b, const State& p, const State& q, Degree value,
                     const RelFn& rel, std::vector<std::pair<Transition, ViolationReason>>& out) {
  const auto from_q = b.outgoing(q);
  for (const auto& t : a.outgoing(p)) {
    bool any_action = false;
    bool any_degree = false;
    bool matched = false;
    for (const auto& u : from_q) {
      if (u.action != t.action) continue;
      any_action = true;
      if (u.degree < t.degree) continue;
      any_degree = true;
      if (rel(t.target, u.target) >= value) {
        matched = true;
        break;
      }
    }
    if (matched) continue;
    out.emplace_back(t, !any_action   ? ViolationReason::NoMatchingAction
                        : !any_degree ? ViolationReason::DegreeTooLow
                                      : ViolationReason::SuccessorRelationTooLow);
  }
}

inline std::vector<Degree> lattice(const Flts& a, const Flts& b, Degree s, std::span<const Degree> extra = {}) {
  std::set<Degree> values{Degree::zero(), Degree::one(), s};
  values.insert(extra.begin(), extra.end());
  for (const auto* f : {&a, &b})
    for (const auto& t : f->transitions()) values.insert(t.degree);
  return {values.begin(), values.end()};
}

// Greatest relation over `levels` such that every pair satisfies `ok`.
// Degrees only decrease, so the loop terminates; since the satisfaction test
// is monotone in the successor degrees, no passing relation is ever cut.
template <typename PairOk>
StateRelation refine_down(const Flts& a, const Flts& b, const std::vector<Degree>& levels, const PairOk& ok) {
  StateRelation rel(a.states(), b.states());
  for (const auto& p : a.states())
    for (const auto& q : b.states()) rel.set(p, q, Degree::one());

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : a.states()) {
      for (const auto& q : b.states()) {
        const Degree current = rel(p, q);
        if (ok(rel, p, q, current)) continue;
        Degree lowered = Degree::zero();
        for (auto it = std::lower_bound(levels.begin(), levels.end(), current); it != levels.begin();) {
          --it;
          if (ok(rel, p, q, *it)) {
            lowered = *it;
            break;
          }
        }
        rel.set(p, q, lowered);
        changed = true;
      }
    }
  }
  return rel;
}

}  // namespace detail

/// Plausibility degree of reaching the end of a chained path: the minimum of
/// its transition degrees.
inline Degree derivative_degree(const Flts& f, std::span<const Transition> path) {
  if (path.empty()) throw DomainError("derivative_degree: empty path");
  Degree d = Degree::one();
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!f.contains(path[i])) throw DomainError("derivative_degree: transition not in the system");
    if (i > 0 && path[i - 1].target != path[i].source) throw DomainError("derivative_degree: path is not chained");
    d = std::min(d, path[i].degree);
  }
  return d;
}

/// Strong fuzzy simulation check: for every pair (p,q) with S(p,q) >= s,
/// each move p -a,d1-> p' of `a` must be answered by some q -a,d2-> q' of `b`
/// with d2 >= d1 and S(p',q') >= S(p,q). All violations are reported.
inline CheckReport check_strong_fuzzy_simulation(const Flts& a, const Flts& b, const CandidateSimulation& cand) {
  detail::require_domains(a, b, cand.relation);
  CheckReport report;
  std::vector<std::pair<Transition, ViolationReason>> found;
  for (const auto& [pq, value] : cand.relation.graph()) {
    if (!detail::in_checked_zone(value, cand.threshold)) continue;
    found.clear();
    detail::pair_violations(a, b, pq.first, pq.second, value, cand.relation, found);
    for (auto& [t, why] : found) report.violations.push_back({pq.first, pq.second, t, why, Direction::Forward});
  }
  report.holds = report.violations.empty();
  return report;
}

/// Both the candidate and its inverse must be strong fuzzy simulations.
/// Backward violations are reported with the pair in the candidate's
/// orientation.
inline CheckReport check_strong_fuzzy_bisimulation(const Flts& a, const Flts& b, const CandidateSimulation& cand) {
  CheckReport report = check_strong_fuzzy_simulation(a, b, cand);
  CheckReport back = check_strong_fuzzy_simulation(b, a, {rel_inverse(cand.relation), cand.threshold});
  for (auto& v : back.violations) {
    std::swap(v.first, v.second);
    v.direction = Direction::Backward;
    report.violations.push_back(std::move(v));
  }
  report.holds = report.violations.empty();
  return report;
}

/// Pointwise-greatest relation with degrees in {0,1} ∪ {transition degrees} ∪ {s}
/// that passes the simulation check at threshold s.
///
/// A pair that cannot pass is parked at the largest level below s, so the
/// value it gets there depends on the level set; `extra_levels` widens it.
inline StateRelation greatest_simulation(const Flts& a, const Flts& b, Degree s,
                                         std::span<const Degree> extra_levels = {}) {
  const auto levels = detail::lattice(a, b, s, extra_levels);
  std::vector<std::pair<Transition, ViolationReason>> scratch;
  return detail::refine_down(a, b, levels, [&](const StateRelation& rel, const State& p, const State& q, Degree w) {
    if (!detail::in_checked_zone(w, s)) return true;
    auto successor = [&](const State& p2, const State& q2) { return p2 == p && q2 == q ? w : rel(p2, q2); };
    scratch.clear();
    detail::pair_violations(a, b, p, q, w, successor, scratch);
    return scratch.empty();
  });
}

/// Same as greatest_simulation, for the bisimulation condition.
inline StateRelation greatest_bisimulation(const Flts& a, const Flts& b, Degree s,
                                           std::span<const Degree> extra_levels = {}) {
  const auto levels = detail::lattice(a, b, s, extra_levels);
  std::vector<std::pair<Transition, ViolationReason>> scratch;
  return detail::refine_down(a, b, levels, [&](const StateRelation& rel, const State& p, const State& q, Degree w) {
    if (!detail::in_checked_zone(w, s)) return true;
    auto forward = [&](const State& p2, const State& q2) { return p2 == p && q2 == q ? w : rel(p2, q2); };
    auto backward = [&](const State& q2, const State& p2) { return forward(p2, q2); };
    scratch.clear();
    detail::pair_violations(a, b, p, q, w, forward, scratch);
    if (!scratch.empty()) return false;
    detail::pair_violations(b, a, q, p, w, backward, scratch);
    return scratch.empty();
  });
}

/// p ~_d q: some strong fuzzy bisimulation at a threshold s <= d relates
/// (p,q) with a nonzero degree of at least s.
inline bool bisimilar_at(const Flts& a, const Flts& b, const State& p, const State& q, Degree d) {
  if (!a.states().contains(p) || !b.states().contains(q)) throw DomainError("bisimilar_at: unknown state");
  for (Degree s : detail::lattice(a, b, d)) {
    if (s > d) break;
    if (detail::in_checked_zone(greatest_bisimulation(a, b, s)(p, q), s)) return true;
  }
  return false;
}

}  // namespace fucham
