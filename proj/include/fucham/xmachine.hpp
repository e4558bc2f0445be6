#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fucham/error.hpp"
#include "fucham/flts.hpp"

namespace fucham {

/// Inverse of left multiplication in the free monoid: the x with a·x = b,
/// if any.
inline std::optional<std::string> left_mult_inverse(std::string_view a, std::string_view b) {
  if (!b.starts_with(a)) return std::nullopt;
  return std::string(b.substr(a.size()));
}

/// An FLTS with designated initial and final states.
class FuzzyAutomaton {
 public:
  FuzzyAutomaton() = default;
  FuzzyAutomaton(Flts underlying, std::set<State> initial, std::set<State> final)
      : underlying_(std::move(underlying)), initial_(std::move(initial)), final_(std::move(final)) {
    for (const auto* set : {&initial_, &final_})
      for (const auto& q : *set)
        if (!underlying_.states().contains(q)) throw DomainError("automaton: state '" + q + "' is not in the system");
  }

  const Flts& underlying() const { return underlying_; }
  const std::set<State>& initial() const { return initial_; }
  const std::set<State>& final() const { return final_; }

 private:
  Flts underlying_;
  std::set<State> initial_;
  std::set<State> final_;
};

/// The partial function L_α⁻¹, identified by its α.
struct LeftInverse {
  std::string alpha;

  std::optional<std::string> operator()(std::string_view word) const { return left_mult_inverse(alpha, word); }
  auto operator<=>(const LeftInverse&) const = default;
};

struct XEdge {
  State source;
  LeftInverse label;
  State target;
  Degree degree;

  bool operator==(const XEdge&) const = default;
};

struct XMachine {
  std::set<State> states;
  std::set<State> initial;
  std::set<State> final;
  std::vector<XEdge> edges;
  std::set<LeftInverse> type;
};

/// Relabels every edge p -α,d-> q as p -L_α⁻¹,d-> q.
inline XMachine to_fuzzy_x_machine(const FuzzyAutomaton& a) {
  XMachine m{a.underlying().states(), a.initial(), a.final(), {}, {}};
  for (const auto& t : a.underlying().transitions()) {
    m.edges.push_back({t.source, LeftInverse{t.action}, t.target, t.degree});
  }
  for (const auto& alpha : a.underlying().actions()) m.type.insert(LeftInverse{alpha});
  return m;
}

}  // namespace fucham
