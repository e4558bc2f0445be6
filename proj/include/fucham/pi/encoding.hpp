#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "fucham/error.hpp"
#include "fucham/molecule.hpp"
#include "fucham/pi/process.hpp"

// Processes become molecules of a fixed signature:
//
//   name x@d        atom x@d
//   sum             sum(s1, ..., sn)        0 is sum()
//   x(y).P          in(x, y, P)
//   x<z>.P          out(x, z, P)
//   tau.P           tau(P)
//   P | Q           par(P, Q)
//   new x P         new(x, P)
//   !P              repl(P)
//
// A restriction membrane `new x [S]` is new(x, [ S ]); the airlock used by
// scope extension is an ordinary airlock molecule inside it.

namespace fucham::pi {

inline Molecule to_molecule(const Name& n) { return Molecule::atom(n.id, n.degree); }

inline Molecule to_molecule(const PiProcess& p) {
  switch (p.kind()) {
    case PiProcess::Kind::Sum: {
      std::vector<Molecule> summands;
      for (const auto& s : p.summands()) {
        Molecule cont = to_molecule(s.cont);
        switch (s.prefix.kind) {
          case Prefix::Kind::Input:
            summands.push_back(Molecule::app("in", {to_molecule(s.prefix.channel), to_molecule(s.prefix.object), cont}));
            break;
          case Prefix::Kind::Output:
            summands.push_back(Molecule::app("out", {to_molecule(s.prefix.channel), to_molecule(s.prefix.object), cont}));
            break;
          case Prefix::Kind::Tau: summands.push_back(Molecule::app("tau", {cont})); break;
        }
      }
      return Molecule::app("sum", std::move(summands));
    }
    case PiProcess::Kind::Par: return Molecule::app("par", {to_molecule(p.left()), to_molecule(p.right())});
    case PiProcess::Kind::New: return Molecule::app("new", {to_molecule(p.binder()), to_molecule(p.body())});
    case PiProcess::Kind::Repl: return Molecule::app("repl", {to_molecule(p.body())});
  }
  throw DomainError("unreachable process kind");
}

inline bool is_restriction_membrane(const Molecule& m) {
  return m.is(Molecule::Kind::App) && m.name() == "new" && m.args().size() == 2 &&
         m.args()[0].is(Molecule::Kind::Atom) && m.args()[1].is(Molecule::Kind::Membrane);
}

inline Molecule restriction_membrane(const Name& binder, Solution body) {
  return Molecule::app("new", {to_molecule(binder), Molecule::membrane(std::move(body))});
}

inline Name membrane_binder(const Molecule& m) { return {m.args()[0].name(), m.args()[0].degree()}; }
inline const Solution& membrane_body(const Molecule& m) { return m.args()[1].body(); }

namespace detail {

[[noreturn]] inline void not_a_process(const Molecule& m) {
  throw DomainError("molecule is not an encoded process: " + to_string(m));
}

inline Name to_name(const Molecule& m) {
  if (!m.is(Molecule::Kind::Atom)) not_a_process(m);
  return {m.name(), m.degree()};
}

}  // namespace detail

/// Inverse of to_molecule. Throws DomainError for membranes, airlocks, and
/// anything outside the signature.
inline PiProcess from_molecule(const Molecule& m) {
  if (!m.is(Molecule::Kind::App)) detail::not_a_process(m);
  const auto& a = m.args();
  if (m.name() == "sum") {
    std::vector<Summand> summands;
    for (const auto& s : a) {
      if (!s.is(Molecule::Kind::App)) detail::not_a_process(m);
      if ((s.name() == "in" || s.name() == "out") && s.args().size() == 3) {
        Name chan = detail::to_name(s.args()[0]);
        Name obj = detail::to_name(s.args()[1]);
        summands.push_back({s.name() == "in" ? Prefix::input(chan, obj) : Prefix::output(chan, obj),
                            from_molecule(s.args()[2])});
      } else if (s.name() == "tau" && s.args().size() == 1) {
        summands.push_back({Prefix::tau(), from_molecule(s.args()[0])});
      } else {
        detail::not_a_process(m);
      }
    }
    return PiProcess::sum(std::move(summands));
  }
  if (m.name() == "par" && a.size() == 2) return PiProcess::par(from_molecule(a[0]), from_molecule(a[1]));
  if (m.name() == "new" && a.size() == 2 && !a[1].is(Molecule::Kind::Membrane)) {
    return PiProcess::restrict(detail::to_name(a[0]), from_molecule(a[1]));
  }
  if (m.name() == "repl" && a.size() == 1) return PiProcess::repl(from_molecule(a[0]));
  detail::not_a_process(m);
}

inline bool is_process_molecule(const Molecule& m) {
  try {
    from_molecule(m);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

namespace detail {

inline void split_par(const PiProcess& p, Solution& out) {
  if (p.is(PiProcess::Kind::Par)) {
    split_par(p.left(), out);
    split_par(p.right(), out);
  } else {
    out.add(to_molecule(p));
  }
}

}  // namespace detail

/// Top-level parallel components become separate molecules.
inline Solution encode(const PiProcess& p) {
  Solution s;
  detail::split_par(p, s);
  return s;
}

/// Pi-syntax rendering of one solution element: processes as terms,
/// `new x [ ... ]` for membranes, `P <| [ ... ]` for airlocks.
inline void print_element(std::ostream& out, const Molecule& m);

inline void print_pi_elements(std::ostream& out, const Solution& s) {
  out << "[";
  bool first = true;
  for (const auto& [m, n] : s.distinct()) {
    out << (first ? " " : ", ");
    first = false;
    print_element(out, m);
    if (n > 1) out << " * " << n;
  }
  out << " ]";
}

inline void print_element(std::ostream& out, const Molecule& m) {
  if (is_restriction_membrane(m)) {
    out << "new ";
    print(out, membrane_binder(m));
    out << ' ';
    print_pi_elements(out, membrane_body(m));
  } else if (m.is(Molecule::Kind::Airlock)) {
    print_element(out, m.head());
    out << " <| ";
    print_pi_elements(out, m.body());
  } else if (is_process_molecule(m)) {
    print(out, from_molecule(m));
  } else {
    print(out, m);
  }
}

/// One `# element` line per distinct element, then the solution itself in
/// machine-file syntax. The whole text parses as a solution literal.
inline std::string format_pi_solution(const Solution& s) {
  std::ostringstream out;
  for (const auto& [m, n] : s.distinct()) {
    out << "# ";
    print_element(out, m);
    if (n > 1) out << " * " << n;
    out << '\n';
  }
  out << to_string(s) << '\n';
  return out.str();
}

}  // namespace fucham::pi
