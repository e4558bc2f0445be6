#pragma once

#include <set>
#include <string>
#include <vector>

#include "fucham/pi/process.hpp"

namespace fucham::pi {

namespace detail {

inline void collect_free(const PiProcess& p, std::multiset<Name>& bound, std::set<Name>& out) {
  auto note = [&](const Name& n) {
    if (!bound.contains(n)) out.insert(n);
  };
  switch (p.kind()) {
    case PiProcess::Kind::Sum:
      for (const auto& s : p.summands()) {
        if (s.prefix.kind == Prefix::Kind::Tau) {
          collect_free(s.cont, bound, out);
          continue;
        }
        note(s.prefix.channel);
        if (s.prefix.kind == Prefix::Kind::Output) {
          note(s.prefix.object);
          collect_free(s.cont, bound, out);
        } else {
          auto it = bound.insert(s.prefix.object);
          collect_free(s.cont, bound, out);
          bound.erase(it);
        }
      }
      return;
    case PiProcess::Kind::Par:
      collect_free(p.left(), bound, out);
      collect_free(p.right(), bound, out);
      return;
    case PiProcess::Kind::New: {
      auto it = bound.insert(p.binder());
      collect_free(p.body(), bound, out);
      bound.erase(it);
      return;
    }
    case PiProcess::Kind::Repl: collect_free(p.body(), bound, out); return;
  }
}

inline void collect_identifiers(const PiProcess& p, std::set<std::string>& out) {
  switch (p.kind()) {
    case PiProcess::Kind::Sum:
      for (const auto& s : p.summands()) {
        if (s.prefix.kind != Prefix::Kind::Tau) {
          out.insert(s.prefix.channel.id);
          out.insert(s.prefix.object.id);
        }
        collect_identifiers(s.cont, out);
      }
      return;
    case PiProcess::Kind::Par:
      collect_identifiers(p.left(), out);
      collect_identifiers(p.right(), out);
      return;
    case PiProcess::Kind::New:
      out.insert(p.binder().id);
      collect_identifiers(p.body(), out);
      return;
    case PiProcess::Kind::Repl: collect_identifiers(p.body(), out); return;
  }
}

}  // namespace detail

inline std::set<Name> free_names(const PiProcess& p) {
  std::multiset<Name> bound;
  std::set<Name> out;
  detail::collect_free(p, bound, out);
  return out;
}

inline bool is_free_in(const Name& n, const PiProcess& p) { return free_names(p).contains(n); }

/// Every identifier occurring anywhere in `p`, bound or free.
inline std::set<std::string> identifiers(const PiProcess& p) {
  std::set<std::string> out;
  detail::collect_identifiers(p, out);
  return out;
}

/// `base` with primes appended until it avoids `taken`.
inline std::string fresh_identifier(std::string base, const std::set<std::string>& taken) {
  do base += '\'';
  while (taken.contains(base));
  return base;
}

inline PiProcess substitute(const PiProcess& p, const Name& payload, const Name& bound);

namespace detail {

inline Name swap_name(const Name& n, const Name& payload, const Name& bound) { return n == bound ? payload : n; }

// Renames a binder to a fresh identifier at the same degree when keeping it
// would capture `payload`, then continues substituting under it.
inline std::pair<Name, PiProcess> under_binder(const Name& binder, const PiProcess& scope, const Name& payload,
                                               const Name& bound) {
  if (binder == bound) return {binder, scope};
  if (binder == payload && is_free_in(bound, scope)) {
    std::set<std::string> taken = identifiers(scope);
    taken.insert(payload.id);
    taken.insert(bound.id);
    const Name renamed{fresh_identifier(binder.id, taken), binder.degree};
    return {renamed, substitute(substitute(scope, renamed, binder), payload, bound)};
  }
  return {binder, substitute(scope, payload, bound)};
}

}  // namespace detail

/// p[payload/bound], capture-avoiding. A binder that would capture the
/// payload is renamed to a fresh identifier with the binder's own degree.
inline PiProcess substitute(const PiProcess& p, const Name& payload, const Name& bound) {
  if (payload == bound) return p;
  switch (p.kind()) {
    case PiProcess::Kind::Sum: {
      std::vector<Summand> out;
      for (const auto& s : p.summands()) {
        Prefix pre = s.prefix;
        if (pre.kind == Prefix::Kind::Tau) {
          out.push_back({pre, substitute(s.cont, payload, bound)});
          continue;
        }
        pre.channel = detail::swap_name(pre.channel, payload, bound);
        if (pre.kind == Prefix::Kind::Output) {
          pre.object = detail::swap_name(pre.object, payload, bound);
          out.push_back({pre, substitute(s.cont, payload, bound)});
        } else {
          auto [binder, cont] = detail::under_binder(pre.object, s.cont, payload, bound);
          pre.object = binder;
          out.push_back({pre, cont});
        }
      }
      return PiProcess::sum(std::move(out));
    }
    case PiProcess::Kind::Par:
      return PiProcess::par(substitute(p.left(), payload, bound), substitute(p.right(), payload, bound));
    case PiProcess::Kind::New: {
      auto [binder, body] = detail::under_binder(p.binder(), p.body(), payload, bound);
      return PiProcess::restrict(binder, body);
    }
    case PiProcess::Kind::Repl: return PiProcess::repl(substitute(p.body(), payload, bound));
  }
  return p;
}

}  // namespace fucham::pi
