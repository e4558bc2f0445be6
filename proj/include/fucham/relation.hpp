#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "fucham/degree.hpp"
#include "fucham/error.hpp"

namespace fucham {

/// Fuzzy binary relation between two finite domains, stored sparsely.
/// Pairs not in the graph have degree 0.
template <typename L, typename R = L>
class FuzzyRelation {
 public:
  using Graph = std::map<std::pair<L, R>, Degree>;

  FuzzyRelation() = default;
  FuzzyRelation(std::set<L> left, std::set<R> right)
      : left_(std::move(left)), right_(std::move(right)) {}

  const std::set<L>& left_domain() const { return left_; }
  const std::set<R>& right_domain() const { return right_; }
  const Graph& graph() const { return graph_; }

  void set(const L& a, const R& b, Degree d) {
    if (!left_.contains(a) || !right_.contains(b)) {
      throw DomainError("fuzzy relation: pair outside declared domains");
    }
    if (d == Degree::zero()) {
      graph_.erase({a, b});
    } else {
      graph_[{a, b}] = d;
    }
  }

  Degree operator()(const L& a, const R& b) const {
    auto it = graph_.find({a, b});
    return it == graph_.end() ? Degree::zero() : it->second;
  }

  bool operator==(const FuzzyRelation&) const = default;

 private:
  std::set<L> left_;
  std::set<R> right_;
  Graph graph_;
};

template <typename T>
FuzzyRelation<T, T> rel_identity(const std::set<T>& domain) {
  FuzzyRelation<T, T> id(domain, domain);
  for (const auto& q : domain) id.set(q, q, Degree::one());
  return id;
}

template <typename L, typename R>
FuzzyRelation<R, L> rel_inverse(const FuzzyRelation<L, R>& r) {
  FuzzyRelation<R, L> inv(r.right_domain(), r.left_domain());
  for (const auto& [pair, d] : r.graph()) inv.set(pair.second, pair.first, d);
  return inv;
}

/// Max-min composition: (r1;r2)(p,r) = max_q min(r1(p,q), r2(q,r)).
template <typename A, typename B, typename C>
FuzzyRelation<A, C> rel_compose(const FuzzyRelation<A, B>& r1, const FuzzyRelation<B, C>& r2) {
  if (r1.right_domain() != r2.left_domain()) {
    throw DomainError("rel_compose: right domain of the first relation differs from left domain of the second");
  }
  FuzzyRelation<A, C> out(r1.left_domain(), r2.right_domain());
  std::map<std::pair<A, C>, Degree> best;
  for (const auto& [pq, d1] : r1.graph()) {
    for (auto it = r2.graph().lower_bound({pq.second, C{}}); it != r2.graph().end(); ++it) {
      if (it->first.first != pq.second) break;
      auto& slot = best[{pq.first, it->first.second}];
      slot = std::max(slot, std::min(d1, it->second));
    }
  }
  for (const auto& [pr, d] : best) out.set(pr.first, pr.second, d);
  return out;
}

/// Pointwise max; both relations must share domains.
template <typename L, typename R>
FuzzyRelation<L, R> rel_union(const FuzzyRelation<L, R>& r1, const FuzzyRelation<L, R>& r2) {
  if (r1.left_domain() != r2.left_domain() || r1.right_domain() != r2.right_domain()) {
    throw DomainError("rel_union: relations have different domains");
  }
  FuzzyRelation<L, R> out = r1;
  for (const auto& [pair, d] : r2.graph()) {
    out.set(pair.first, pair.second, std::max(d, r1(pair.first, pair.second)));
  }
  return out;
}

}  // namespace fucham
