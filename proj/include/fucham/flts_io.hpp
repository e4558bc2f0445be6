#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fucham/error.hpp"
#include "fucham/flts.hpp"

// Line-oriented text formats for systems and relations.
//
//   states: p0 p1 p2
//   trans: p0 -a@0.50-> p1
//
//   q0 p0 0.4          (relation: left state, right state, degree)
//
// `#` starts a comment. Unknown states and degrees outside [0,1] are rejected.

namespace fucham {

namespace detail {

inline std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

inline std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

inline bool valid_state_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                    c == '\'' || c == '.';
    if (!ok) return false;
  }
  return true;
}

inline Degree parse_degree_at(std::string_view text, std::size_t line) {
  try {
    return Degree::parse(text);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), line, 1);
  }
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    fn(strip_comment(line), line_no);
  }
}

}  // namespace detail

inline Flts parse_flts(std::string_view text) {
  Flts f;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> pending;
  detail::for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    auto words = detail::split_words(line);
    if (words.empty()) return;
    if (words[0] == "states:") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (!detail::valid_state_name(words[i])) throw ParseError("invalid state name '" + words[i] + "'", line_no, 1);
        f.add_state(words[i]);
      }
    } else if (words[0] == "trans:") {
      if (words.size() != 4) throw ParseError("expected 'trans: <src> -<action>@<degree>-> <dst>'", line_no, 1);
      pending.emplace_back(line_no, std::move(words));
    } else {
      throw ParseError("unknown directive '" + words[0] + "'", line_no, 1);
    }
  });
  // Transitions may precede the state lines that declare their endpoints.
  for (const auto& [line_no, words] : pending) {
    const std::string& arrow = words[2];
    const auto at = arrow.rfind('@');
    if (arrow.size() < 5 || arrow.front() != '-' || arrow.substr(arrow.size() - 2) != "->" || at == std::string::npos) {
      throw ParseError("malformed arrow '" + arrow + "'", line_no, 1);
    }
    const std::string action = arrow.substr(1, at - 1);
    if (!detail::valid_state_name(action)) throw ParseError("invalid action '" + action + "'", line_no, 1);
    const Degree d = detail::parse_degree_at(std::string_view(arrow).substr(at + 1, arrow.size() - at - 3), line_no);
    for (const auto* s : {&words[1], &words[3]}) {
      if (!f.states().contains(*s)) throw ParseError("unknown state '" + *s + "'", line_no, 1);
    }
    try {
      f.add_transition(words[1], action, words[3], d);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), line_no, 1);
    }
  }
  return f;
}

inline std::string print_flts(const Flts& f) {
  std::ostringstream out;
  out << "states:";
  for (const auto& q : f.states()) out << ' ' << q;
  out << '\n';
  for (const auto& t : f.transitions()) {
    out << "trans: " << t.source << " -" << t.action << '@' << t.degree << "-> " << t.target << '\n';
  }
  return out.str();
}

/// Relation whose left domain is `a`'s states and right domain is `b`'s.
inline StateRelation parse_relation(std::string_view text, const Flts& a, const Flts& b) {
  StateRelation rel(a.states(), b.states());
  std::set<std::pair<State, State>> seen;
  detail::for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    auto words = detail::split_words(line);
    if (words.empty()) return;
    if (words.size() != 3) throw ParseError("expected '<left-state> <right-state> <degree>'", line_no, 1);
    if (!a.states().contains(words[0])) throw ParseError("unknown left state '" + words[0] + "'", line_no, 1);
    if (!b.states().contains(words[1])) throw ParseError("unknown right state '" + words[1] + "'", line_no, 1);
    if (!seen.emplace(words[0], words[1]).second) {
      throw ParseError("duplicate pair (" + words[0] + "," + words[1] + ")", line_no, 1);
    }
    rel.set(words[0], words[1], detail::parse_degree_at(words[2], line_no));
  });
  return rel;
}

inline std::string print_relation(const StateRelation& rel) {
  std::ostringstream out;
  for (const auto& [pq, d] : rel.graph()) out << pq.first << ' ' << pq.second << ' ' << d << '\n';
  return out.str();
}

inline std::string format_violation(const Violation& v) {
  std::ostringstream out;
  out << "violation: (" << v.first << ',' << v.second << ") "
      << (v.direction == Direction::Forward ? "forward" : "backward") << ' ' << v.offending.source << " -"
      << v.offending.action << '@' << v.offending.degree << "-> " << v.offending.target << ' ' << to_string(v.reason);
  return out.str();
}

inline std::string format_report(const CheckReport& report) {
  std::ostringstream out;
  out << CheckReport::kOrientation << '\n';
  for (const auto& v : report.violations) out << format_violation(v) << '\n';
  out << (report.holds ? "holds" : "fails") << '\n';
  return out.str();
}

}  // namespace fucham
