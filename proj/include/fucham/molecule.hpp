#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fucham/degree.hpp"
#include "fucham/error.hpp"
#include "fucham/fuzzy_set.hpp"

namespace fucham {

class Solution;

/// A term of the machine's algebra. Atoms carry their own similarity degree;
/// every other form derives its degree as the minimum over its parts, so the
/// degree is computed once at construction.
class Molecule {
 public:
  enum class Kind { Atom, App, Airlock, Membrane };

  static Molecule atom(std::string name, Degree d = Degree::one());
  static Molecule app(std::string constructor, std::vector<Molecule> args);
  /// head ◁ body
  static Molecule airlock(Molecule head, Solution body);
  static Molecule membrane(Solution body);

  Kind kind() const { return kind_; }
  bool is(Kind k) const { return kind_ == k; }

  /// Atom name or application constructor.
  const std::string& name() const { return name_; }
  const std::vector<Molecule>& args() const { return args_; }
  const Molecule& head() const { return args_.front(); }
  const Solution& body() const { return *body_; }

  /// Atom degree for atoms; the derived molecule degree otherwise.
  Degree degree() const { return degree_; }

 private:
  Molecule() = default;

  Kind kind_ = Kind::Atom;
  std::string name_;
  Degree degree_ = Degree::one();
  std::vector<Molecule> args_;
  std::shared_ptr<const Solution> body_;
};

inline std::strong_ordering compare(const Molecule& a, const Molecule& b);
inline bool operator==(const Molecule& a, const Molecule& b) { return compare(a, b) == 0; }
inline std::strong_ordering operator<=>(const Molecule& a, const Molecule& b) { return compare(a, b); }

/// A fuzzy multiset of molecules. The degree half of each key is always the
/// molecule's own degree, so a Solution is keyed by molecule alone.
class Solution {
 public:
  Solution() = default;
  Solution(std::initializer_list<Molecule> molecules) {
    for (const auto& m : molecules) add(m);
  }

  void add(const Molecule& m, std::size_t n = 1) { contents_.add(m, m.degree(), n); }
  void add(const Solution& other) {
    for (const auto& [key, n] : other.contents_) contents_.add(key.first, key.second, n);
  }
  void remove(const Molecule& m, std::size_t n = 1) { contents_.remove(m, m.degree(), n); }
  /// Removes every copy listed in `other`; throws if any is missing.
  void remove(const Solution& other) {
    for (const auto& [key, n] : other.contents_) contents_.remove(key.first, key.second, n);
  }

  std::size_t count(const Molecule& m) const { return contents_.count(m, m.degree()); }
  std::size_t size() const { return contents_.size(); }
  bool empty() const { return contents_.empty(); }

  const FuzzyMultiset<Molecule>& contents() const { return contents_; }

  /// Distinct molecules with multiplicities, in canonical order.
  std::vector<std::pair<Molecule, std::size_t>> distinct() const {
    std::vector<std::pair<Molecule, std::size_t>> out;
    for (const auto& [key, n] : contents_) out.emplace_back(key.first, n);
    return out;
  }

  /// One entry per copy, in canonical order.
  std::vector<Molecule> instances() const {
    std::vector<Molecule> out;
    out.reserve(size());
    for (const auto& [key, n] : contents_) out.insert(out.end(), n, key.first);
    return out;
  }

  bool operator==(const Solution& other) const { return contents_ == other.contents_; }

 private:
  FuzzyMultiset<Molecule> contents_;
};

inline Solution msum(const Solution& a, const Solution& b) {
  Solution out = a;
  out.add(b);
  return out;
}

/// Minimum over all members; the empty solution has degree 1.
inline Degree solution_degree(const Solution& s) {
  Degree d = Degree::one();
  for (const auto& [key, n] : s.contents()) d = std::min(d, key.second);
  return d;
}

inline Degree molecule_degree(const Molecule& m) { return m.degree(); }

inline Molecule Molecule::atom(std::string name, Degree d) {
  Molecule m;
  m.kind_ = Kind::Atom;
  m.name_ = std::move(name);
  m.degree_ = d;
  return m;
}

inline Molecule Molecule::app(std::string constructor, std::vector<Molecule> args) {
  Molecule m;
  m.kind_ = Kind::App;
  m.name_ = std::move(constructor);
  m.degree_ = Degree::one();
  for (const auto& a : args) m.degree_ = std::min(m.degree_, a.degree());
  m.args_ = std::move(args);
  return m;
}

inline Molecule Molecule::airlock(Molecule head, Solution body) {
  Molecule m;
  m.kind_ = Kind::Airlock;
  m.degree_ = std::min(head.degree(), solution_degree(body));
  m.args_.push_back(std::move(head));
  m.body_ = std::make_shared<const Solution>(std::move(body));
  return m;
}

inline Molecule Molecule::membrane(Solution body) {
  Molecule m;
  m.kind_ = Kind::Membrane;
  m.degree_ = solution_degree(body);
  m.body_ = std::make_shared<const Solution>(std::move(body));
  return m;
}

namespace detail {

inline std::strong_ordering compare_solutions(const Solution& a, const Solution& b) {
  auto ia = a.contents().begin();
  auto ib = b.contents().begin();
  for (; ia != a.contents().end() && ib != b.contents().end(); ++ia, ++ib) {
    if (auto c = compare(ia->first.first, ib->first.first); c != 0) return c;
    if (auto c = ia->second <=> ib->second; c != 0) return c;
  }
  if (ia != a.contents().end()) return std::strong_ordering::greater;
  if (ib != b.contents().end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

}  // namespace detail

inline std::strong_ordering compare(const Molecule& a, const Molecule& b) {
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Molecule::Kind::Atom:
      if (auto c = a.name() <=> b.name(); c != 0) return c;
      return a.degree() <=> b.degree();
    case Molecule::Kind::App: {
      if (auto c = a.name() <=> b.name(); c != 0) return c;
      if (auto c = a.args().size() <=> b.args().size(); c != 0) return c;
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (auto c = compare(a.args()[i], b.args()[i]); c != 0) return c;
      }
      return std::strong_ordering::equal;
    }
    case Molecule::Kind::Airlock:
      if (auto c = compare(a.head(), b.head()); c != 0) return c;
      return detail::compare_solutions(a.body(), b.body());
    case Molecule::Kind::Membrane:
      return detail::compare_solutions(a.body(), b.body());
  }
  return std::strong_ordering::equal;
}

inline void print(std::ostream& out, const Solution& s);

/// Term syntax: `a`, `a@0.5`, `f(a, b)`, `[ a, b * 2 ]`, `m <| [ a ]`.
/// Atoms at degree 1 are printed without annotation.
inline void print(std::ostream& out, const Molecule& m) {
  switch (m.kind()) {
    case Molecule::Kind::Atom:
      out << m.name();
      if (m.degree() != Degree::one()) out << '@' << m.degree();
      return;
    case Molecule::Kind::App:
      out << m.name() << '(';
      for (std::size_t i = 0; i < m.args().size(); ++i) {
        if (i) out << ", ";
        print(out, m.args()[i]);
      }
      out << ')';
      return;
    case Molecule::Kind::Airlock:
      print(out, m.head());
      out << " <| ";
      print(out, m.body());
      return;
    case Molecule::Kind::Membrane:
      print(out, m.body());
      return;
  }
}

inline void print_elements(std::ostream& out, const Solution& s) {
  bool first = true;
  for (const auto& [key, n] : s.contents()) {
    out << (first ? " " : ", ");
    first = false;
    print(out, key.first);
    if (n > 1) out << " * " << n;
  }
  out << ' ';
}

inline void print(std::ostream& out, const Solution& s) {
  out << '[';
  print_elements(out, s);
  out << ']';
}

inline std::string to_string(const Molecule& m) {
  std::ostringstream out;
  print(out, m);
  return out.str();
}

/// Top-level solution in `{ ... }` form, as accepted by `init` lines.
inline std::string to_string(const Solution& s) {
  std::ostringstream out;
  out << '{';
  print_elements(out, s);
  out << '}';
  return out.str();
}

/// 64-bit FNV-1a over the canonical text of a solution.
inline std::uint64_t digest(const Solution& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : to_string(s)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace fucham
