#pragma once

#include <compare>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fucham/degree.hpp"

namespace fucham::pi {

/// A channel name with its similarity degree. Equal only when both the
/// identifier and the degree agree.
struct Name {
  std::string id;
  Degree degree = Degree::one();

  auto operator<=>(const Name&) const = default;
};

struct Prefix {
  enum class Kind { Input, Output, Tau };

  Kind kind = Kind::Tau;
  Name channel;
  Name object;  // bound name for Input, payload for Output

  static Prefix input(Name channel, Name bound) { return {Kind::Input, std::move(channel), std::move(bound)}; }
  static Prefix output(Name channel, Name payload) { return {Kind::Output, std::move(channel), std::move(payload)}; }
  static Prefix tau() { return {}; }

  auto operator<=>(const Prefix&) const = default;
};

struct Summand;

/// Immutable process term. Sum with no summands is the null process.
class PiProcess {
 public:
  enum class Kind { Sum, Par, New, Repl };

  PiProcess();  // 0

  static PiProcess nil() { return {}; }
  static PiProcess sum(std::vector<Summand> summands);
  static PiProcess prefixed(Prefix p, PiProcess cont);
  static PiProcess par(PiProcess left, PiProcess right);
  static PiProcess restrict(Name binder, PiProcess body);
  static PiProcess repl(PiProcess body);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  bool is_nil() const;

  const std::vector<Summand>& summands() const;
  const PiProcess& left() const;
  const PiProcess& right() const;
  const Name& binder() const;
  /// Body of New or Repl.
  const PiProcess& body() const;

 private:
  struct Node;
  explicit PiProcess(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Summand {
  Prefix prefix;
  PiProcess cont;
};

struct PiProcess::Node {
  Kind kind = Kind::Sum;
  std::vector<Summand> summands;
  std::vector<PiProcess> children;  // Par: {left, right}; New/Repl: {body}
  Name binder;
};

inline PiProcess::PiProcess() : node_(std::make_shared<const Node>()) {}

inline PiProcess PiProcess::sum(std::vector<Summand> summands) {
  Node n;
  n.summands = std::move(summands);
  return PiProcess(std::make_shared<const Node>(std::move(n)));
}

inline PiProcess PiProcess::prefixed(Prefix p, PiProcess cont) { return sum({Summand{std::move(p), std::move(cont)}}); }

inline PiProcess PiProcess::par(PiProcess left, PiProcess right) {
  Node n;
  n.kind = Kind::Par;
  n.children = {std::move(left), std::move(right)};
  return PiProcess(std::make_shared<const Node>(std::move(n)));
}

inline PiProcess PiProcess::restrict(Name binder, PiProcess body) {
  Node n;
  n.kind = Kind::New;
  n.binder = std::move(binder);
  n.children = {std::move(body)};
  return PiProcess(std::make_shared<const Node>(std::move(n)));
}

inline PiProcess PiProcess::repl(PiProcess body) {
  Node n;
  n.kind = Kind::Repl;
  n.children = {std::move(body)};
  return PiProcess(std::make_shared<const Node>(std::move(n)));
}

inline PiProcess::Kind PiProcess::kind() const { return node_->kind; }
inline bool PiProcess::is_nil() const { return node_->kind == Kind::Sum && node_->summands.empty(); }
inline const std::vector<Summand>& PiProcess::summands() const { return node_->summands; }
inline const PiProcess& PiProcess::left() const { return node_->children.at(0); }
inline const PiProcess& PiProcess::right() const { return node_->children.at(1); }
inline const Name& PiProcess::binder() const { return node_->binder; }
inline const PiProcess& PiProcess::body() const { return node_->children.at(0); }

inline std::strong_ordering compare(const PiProcess& a, const PiProcess& b);

inline std::strong_ordering compare(const Summand& a, const Summand& b) {
  if (auto c = a.prefix <=> b.prefix; c != 0) return c;
  return compare(a.cont, b.cont);
}

inline std::strong_ordering compare(const PiProcess& a, const PiProcess& b) {
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case PiProcess::Kind::Sum: {
      const auto& x = a.summands();
      const auto& y = b.summands();
      for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (auto c = compare(x[i], y[i]); c != 0) return c;
      }
      return x.size() <=> y.size();
    }
    case PiProcess::Kind::Par:
      if (auto c = compare(a.left(), b.left()); c != 0) return c;
      return compare(a.right(), b.right());
    case PiProcess::Kind::New:
      if (auto c = a.binder() <=> b.binder(); c != 0) return c;
      return compare(a.body(), b.body());
    case PiProcess::Kind::Repl: return compare(a.body(), b.body());
  }
  return std::strong_ordering::equal;
}

inline bool operator==(const PiProcess& a, const PiProcess& b) { return compare(a, b) == 0; }
inline std::strong_ordering operator<=>(const PiProcess& a, const PiProcess& b) { return compare(a, b); }
inline bool operator==(const Summand& a, const Summand& b) { return compare(a, b) == 0; }

inline void print(std::ostream& out, const Name& n) {
  out << n.id;
  if (n.degree != Degree::one()) out << '@' << n.degree;
}

inline void print(std::ostream& out, const Prefix& p) {
  switch (p.kind) {
    case Prefix::Kind::Input:
      print(out, p.channel);
      out << '(';
      print(out, p.object);
      out << ')';
      return;
    case Prefix::Kind::Output:
      print(out, p.channel);
      out << '<';
      print(out, p.object);
      out << '>';
      return;
    case Prefix::Kind::Tau: out << "tau"; return;
  }
}

namespace detail {

// Precedence of the slot being printed into: 0 accepts anything, 1 excludes
// a bare `|`, 2 also excludes a bare `+`. `new` and `!` extend to the right,
// so they need parentheses unless nothing follows them.
inline void print_at(std::ostream& out, const PiProcess& p, int prec, bool rightmost) {
  switch (p.kind()) {
    case PiProcess::Kind::Par: {
      const bool parens = prec >= 1;
      if (parens) out << '(';
      print_at(out, p.left(), 0, false);
      out << " | ";
      print_at(out, p.right(), 1, parens || rightmost);
      if (parens) out << ')';
      return;
    }
    case PiProcess::Kind::Sum: {
      const auto& ss = p.summands();
      if (ss.empty()) {
        out << '0';
        return;
      }
      const bool parens = ss.size() > 1 && prec >= 2;
      if (parens) out << '(';
      for (std::size_t i = 0; i < ss.size(); ++i) {
        if (i) out << " + ";
        print(out, ss[i].prefix);
        out << '.';
        print_at(out, ss[i].cont, 2, i + 1 == ss.size() && (parens || rightmost));
      }
      if (parens) out << ')';
      return;
    }
    case PiProcess::Kind::New:
    case PiProcess::Kind::Repl: {
      const bool parens = !rightmost;
      if (parens) out << '(';
      if (p.is(PiProcess::Kind::New)) {
        out << "new ";
        print(out, p.binder());
        out << ' ';
      } else {
        out << '!';
      }
      print_at(out, p.body(), 0, true);
      if (parens) out << ')';
      return;
    }
  }
}

}  // namespace detail

inline void print(std::ostream& out, const PiProcess& p) { detail::print_at(out, p, 0, true); }

inline std::string to_string(const Name& n) {
  std::ostringstream out;
  print(out, n);
  return out.str();
}

inline std::string to_string(const PiProcess& p) {
  std::ostringstream out;
  print(out, p);
  return out.str();
}

inline std::ostream& operator<<(std::ostream& out, const PiProcess& p) {
  print(out, p);
  return out;
}

}  // namespace fucham::pi
