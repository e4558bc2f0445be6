#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "fucham/degree.hpp"
#include "fucham/pi/process.hpp"

namespace fucham::pi {

namespace detail {

// Bound names are replaced by their binding depth, keeping the degree, so
// α-variants with equal binder degrees print identically.
using Scope = std::map<Name, std::vector<std::size_t>>;

inline std::string canon_name(const Name& n, const Scope& scope) {
  auto it = scope.find(n);
  if (it != scope.end() && !it->second.empty()) return "#" + std::to_string(it->second.back()) + "@" + n.degree.to_string();
  return n.id + "@" + n.degree.to_string();
}

struct Canon {
  Degree lambda;
  Scope scope;
  std::size_t depth = 0;

  std::string bind(const Name& n, const PiProcess& under) {
    scope[n].push_back(depth++);
    std::string s = of(under);
    --depth;
    scope[n].pop_back();
    return s;
  }

  void par_components(const PiProcess& p, std::vector<std::string>& out) {
    if (p.is(PiProcess::Kind::Par)) {
      par_components(p.left(), out);
      par_components(p.right(), out);
    } else if (!p.is_nil()) {
      out.push_back(of(p));
    }
  }

  std::string summand(const Summand& s) {
    switch (s.prefix.kind) {
      case Prefix::Kind::Tau: return "tau." + of(s.cont);
      case Prefix::Kind::Output:
        return canon_name(s.prefix.channel, scope) + "<" + canon_name(s.prefix.object, scope) + ">." + of(s.cont);
      case Prefix::Kind::Input: {
        const std::string head = canon_name(s.prefix.channel, scope) + "(#" + std::to_string(depth) + "@" +
                                 s.prefix.object.degree.to_string() + ").";
        return head + bind(s.prefix.object, s.cont);
      }
    }
    return {};
  }

  // new x1 ... new xk body. Binders below λ cannot be exchanged with
  // anything, so they split the chain into segments that are permuted
  // independently; the smallest rendering wins.
  std::string chain(const PiProcess& p) {
    std::vector<Name> binders;
    const PiProcess* body = &p;
    while (body->is(PiProcess::Kind::New)) {
      binders.push_back(body->binder());
      body = &body->body();
    }
    std::vector<std::pair<std::size_t, std::size_t>> segments;
    for (std::size_t i = 0; i < binders.size();) {
      std::size_t j = i + 1;
      if (binders[i].degree >= lambda) {
        while (j < binders.size() && binders[j].degree >= lambda) ++j;
      }
      segments.emplace_back(i, j);
      i = j;
    }
    for (auto [a, b] : segments) std::sort(binders.begin() + a, binders.begin() + b);
    std::string best;
    bool have = false;
    while (true) {
      std::string s = render_chain(binders, 0, *body);
      if (!have || s < best) best = std::move(s);
      have = true;
      // Odometer over per-segment permutations.
      std::size_t k = 0;
      for (; k < segments.size(); ++k) {
        auto [a, b] = segments[k];
        if (std::next_permutation(binders.begin() + a, binders.begin() + b)) break;
      }
      if (k == segments.size()) break;
    }
    return best;
  }

  std::string render_chain(const std::vector<Name>& binders, std::size_t i, const PiProcess& body) {
    if (i == binders.size()) return of(body);
    const std::string head = "new #" + std::to_string(depth) + "@" + binders[i].degree.to_string() + " ";
    scope[binders[i]].push_back(depth++);
    std::string rest = render_chain(binders, i + 1, body);
    --depth;
    scope[binders[i]].pop_back();
    return head + rest;
  }

  std::string of(const PiProcess& p) {
    switch (p.kind()) {
      case PiProcess::Kind::Sum: {
        if (p.is_nil()) return "0";
        std::vector<std::string> parts;
        for (const auto& s : p.summands()) parts.push_back(summand(s));
        std::sort(parts.begin(), parts.end());
        std::string out = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
        return out + ")";
      }
      case PiProcess::Kind::Par: {
        std::vector<std::string> parts;
        par_components(p, parts);
        if (parts.empty()) return "0";
        if (parts.size() == 1) return parts.front();
        std::sort(parts.begin(), parts.end());
        std::string out = "[";
        for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " | " : "") + parts[i];
        return out + "]";
      }
      case PiProcess::Kind::New: return chain(p);
      case PiProcess::Kind::Repl: return "!" + of(p.body());
    }
    return {};
  }
};

}  // namespace detail

/// Normal form for ≡_λ: `|` and `+` flattened and sorted, 0 dropped from
/// parallel compositions, bound names replaced by depth indices carrying
/// their degree, and exchangeable `new` binders put in their least order.
inline std::string canonical_form(const PiProcess& p, Degree lambda) {
  detail::Canon c{lambda, {}, 0};
  return c.of(p);
}

inline bool struct_congruent(const PiProcess& p, const PiProcess& q, Degree lambda) {
  return canonical_form(p, lambda) == canonical_form(q, lambda);
}

}  // namespace fucham::pi
