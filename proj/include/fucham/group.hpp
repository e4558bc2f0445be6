#pragma once

#include <map>
#include <set>
#include <utility>

#include "fucham/error.hpp"
#include "fucham/fuzzy_set.hpp"

namespace fucham {

/// A finite group given by its Cayley table. The group laws are verified
/// on construction; the identity and inverses are derived from the table.
template <typename T>
class FiniteGroup {
 public:
  using Table = std::map<std::pair<T, T>, T>;

  FiniteGroup(std::set<T> elements, Table table)
      : elements_(std::move(elements)), table_(std::move(table)) {
    if (elements_.empty()) throw DomainError("group: empty carrier");
    for (const auto& a : elements_) {
      for (const auto& b : elements_) {
        auto it = table_.find({a, b});
        if (it == table_.end()) throw DomainError("group: operation table is incomplete");
        if (!elements_.contains(it->second)) throw DomainError("group: table is not closed");
      }
    }
    if (table_.size() != elements_.size() * elements_.size()) {
      throw DomainError("group: table mentions elements outside the carrier");
    }
    for (const auto& a : elements_)
      for (const auto& b : elements_)
        for (const auto& c : elements_)
          if (op(op(a, b), c) != op(a, op(b, c))) throw DomainError("group: operation is not associative");

    bool found = false;
    for (const auto& e : elements_) {
      bool neutral = true;
      for (const auto& a : elements_) neutral = neutral && op(e, a) == a && op(a, e) == a;
      if (neutral) {
        identity_ = e;
        found = true;
        break;
      }
    }
    if (!found) throw DomainError("group: no identity element");

    for (const auto& a : elements_) {
      for (const auto& b : elements_) {
        if (op(a, b) == identity_ && op(b, a) == identity_) {
          inverse_.emplace(a, b);
          break;
        }
      }
      if (!inverse_.contains(a)) throw DomainError("group: element without inverse");
    }
  }

  const std::set<T>& elements() const { return elements_; }
  const T& identity() const { return identity_; }
  const T& op(const T& a, const T& b) const { return table_.at({a, b}); }
  const T& inverse(const T& a) const { return inverse_.at(a); }

 private:
  std::set<T> elements_;
  Table table_;
  std::map<T, T> inverse_;
  T identity_{};
};

/// Rosenfeld's test: min(A(a), A(b)) <= A(a * b^-1) for all a, b.
template <typename T>
bool is_fuzzy_subgroup(const FiniteGroup<T>& g, const FuzzySubset<T>& a) {
  for (const auto& [x, d] : a.support()) {
    if (!g.elements().contains(x)) throw DomainError("is_fuzzy_subgroup: support element outside the group");
  }
  for (const auto& x : g.elements()) {
    for (const auto& y : g.elements()) {
      if (std::min(a(x), a(y)) > a(g.op(x, g.inverse(y)))) return false;
    }
  }
  return true;
}

}  // namespace fucham
