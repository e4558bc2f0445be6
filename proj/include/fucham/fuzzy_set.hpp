#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <utility>

#include "fucham/degree.hpp"
#include "fucham/error.hpp"

namespace fucham {

/// A fuzzy subset with finite support. Elements not stored have degree 0;
/// a stored degree is never 0.
template <typename T>
class FuzzySubset {
 public:
  FuzzySubset() = default;
  FuzzySubset(std::initializer_list<std::pair<const T, Degree>> init) {
    for (const auto& [x, d] : init) set(x, d);
  }

  void set(const T& x, Degree d) {
    if (d == Degree::zero()) {
      support_.erase(x);
    } else {
      support_[x] = d;
    }
  }

  Degree operator()(const T& x) const {
    auto it = support_.find(x);
    return it == support_.end() ? Degree::zero() : it->second;
  }

  const std::map<T, Degree>& support() const { return support_; }

  bool operator==(const FuzzySubset&) const = default;

 private:
  std::map<T, Degree> support_;
};

/// Fuzzy multiset: a count for every (element, degree) pair. Counts are
/// always positive; the same element at two degrees is two distinct keys.
template <typename T>
class FuzzyMultiset {
 public:
  using Key = std::pair<T, Degree>;
  using Entries = std::map<Key, std::size_t>;

  FuzzyMultiset() = default;
  FuzzyMultiset(std::initializer_list<std::pair<const Key, std::size_t>> init) {
    for (const auto& [key, n] : init) add(key.first, key.second, n);
  }

  void add(const T& x, Degree d, std::size_t n = 1) {
    if (n == 0) return;
    entries_[Key{x, d}] += n;
    total_ += n;
  }

  /// Removes `n` copies; throws if fewer are present.
  void remove(const T& x, Degree d, std::size_t n = 1) {
    auto it = entries_.find(Key{x, d});
    if (it == entries_.end() || it->second < n) {
      throw DomainError("fuzzy multiset: removing more copies than present");
    }
    it->second -= n;
    total_ -= n;
    if (it->second == 0) entries_.erase(it);
  }

  std::size_t count(const T& x, Degree d) const {
    auto it = entries_.find(Key{x, d});
    return it == entries_.end() ? 0 : it->second;
  }

  /// Total number of copies across all keys.
  std::size_t size() const { return total_; }
  bool empty() const { return total_ == 0; }

  const Entries& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool operator==(const FuzzyMultiset& other) const { return entries_ == other.entries_; }

 private:
  Entries entries_;
  std::size_t total_ = 0;
};

/// Multiset sum: counts add per (element, degree) key.
template <typename T>
FuzzyMultiset<T> msum(const FuzzyMultiset<T>& a, const FuzzyMultiset<T>& b) {
  FuzzyMultiset<T> out = a;
  for (const auto& [key, n] : b) out.add(key.first, key.second, n);
  return out;
}

/// Similarity of two processes measured against the same archetype:
/// 1 - |d1 - d2|.
inline Degree process_similarity(Degree d1, Degree d2) { return complement(abs_diff(d1, d2)); }

}  // namespace fucham
