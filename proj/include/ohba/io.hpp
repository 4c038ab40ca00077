#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ohba/census.hpp"
#include "ohba/graph.hpp"
#include "ohba/list_assignment.hpp"
#include "ohba/solver.hpp"

namespace ohba {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] inline void syntax(int line, const std::string& what) {
  throw Error(Error::Kind::invalid_input, "line " + std::to_string(line) + ": " + what);
}

inline long long to_int(std::string_view w, int line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
  if (ec != std::errc{} || ptr != w.data() + w.size()) {
    syntax(line, "expected an integer, got '" + std::string(w) + "'");
  }
  return value;
}

inline std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(text.substr(start, end - start));
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

inline std::string join_members(std::uint64_t mask) {
  std::string s;
  for (int i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1U) {
      if (!s.empty()) s += ' ';
      s += std::to_string(i);
    }
  }
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Instances

/// Parses the line-oriented instance format:
///   parts s1 s2 ...   part sizes
///   del u v           edge deletion (repeatable)
///   k K               optional list-size parameter
///   L v: c1 c2 ...    one list per vertex
/// `#` starts a comment.
inline Instance parse_instance(std::string_view text) {
  std::optional<std::vector<int>> parts;
  std::vector<Edge> deleted;
  std::optional<int> k;
  std::vector<std::optional<ColorSet>> lists;
  int last_line = 0;

  const auto lines = detail::lines_of(text);
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const int line = static_cast<int>(idx) + 1;
    last_line = line;
    std::string_view body = lines[idx];
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = detail::trim(body);
    if (body.empty()) continue;
    auto w = detail::words(body);
    const std::string_view head = w.front();
    if (head == "parts") {
      if (parts) detail::syntax(line, "duplicate parts directive");
      if (w.size() < 2) detail::syntax(line, "parts needs at least one size");
      std::vector<int> sizes;
      for (std::size_t i = 1; i < w.size(); ++i) {
        const long long s = detail::to_int(w[i], line);
        if (s < 1 || s > kMaxVertices) detail::syntax(line, "part size out of range");
        sizes.push_back(static_cast<int>(s));
      }
      parts = sizes;
      int n = 0;
      for (int s : sizes) n += s;
      if (n > kMaxVertices) detail::syntax(line, "more than 16 vertices");
      lists.assign(n, std::nullopt);
    } else if (head == "del") {
      if (!parts) detail::syntax(line, "del before parts");
      if (w.size() != 3) detail::syntax(line, "del takes two vertices");
      const long long u = detail::to_int(w[1], line), v = detail::to_int(w[2], line);
      const long long n = static_cast<long long>(lists.size());
      if (u < 0 || v < 0 || u >= n || v >= n || u == v) detail::syntax(line, "bad vertex in del");
      deleted.emplace_back(static_cast<int>(u), static_cast<int>(v));
    } else if (head == "k") {
      if (k) detail::syntax(line, "duplicate k directive");
      if (w.size() != 2) detail::syntax(line, "k takes one value");
      const long long value = detail::to_int(w[1], line);
      if (value < 0 || value > kPaletteSize) detail::syntax(line, "k out of range");
      k = static_cast<int>(value);
    } else if (head == "L") {
      if (!parts) detail::syntax(line, "L before parts");
      if (w.size() < 2 || w[1].empty() || w[1].back() != ':') detail::syntax(line, "expected 'L v: colors'");
      const long long v = detail::to_int(w[1].substr(0, w[1].size() - 1), line);
      if (v < 0 || v >= static_cast<long long>(lists.size())) {
        detail::syntax(line, "list on unknown vertex " + std::to_string(v));
      }
      if (lists[v]) detail::syntax(line, "second list for vertex " + std::to_string(v));
      ColorSet set = 0;
      for (std::size_t i = 2; i < w.size(); ++i) {
        const long long c = detail::to_int(w[i], line);
        if (c < 0 || c >= kPaletteSize) detail::syntax(line, "color " + std::string(w[i]) + " outside 0..63");
        set |= color_bit(static_cast<int>(c));
      }
      lists[v] = set;
    } else {
      detail::syntax(line, "unknown directive '" + std::string(head) + "'");
    }
  }
  if (!parts) detail::syntax(last_line, "missing parts directive");
  std::vector<ColorSet> sets;
  for (std::size_t v = 0; v < lists.size(); ++v) {
    if (!lists[v]) detail::syntax(last_line, "no list for vertex " + std::to_string(v));
    sets.push_back(*lists[v]);
  }
  Graph g = build_multipartite(std::span<const int>(*parts));
  if (!deleted.empty()) g = delete_edges(g, std::span<const Edge>(deleted));
  const int kk = k.value_or(ListAssignment::min_size(sets));
  return Instance{std::move(g), ListAssignment(std::move(sets), kk)};
}

inline std::string emit_instance(const Instance& inst) {
  std::ostringstream os;
  os << "parts";
  for (int s : inst.graph.part_sizes()) os << ' ' << s;
  os << '\n';
  for (const Edge& e : inst.graph.deleted()) os << "del " << e.u << ' ' << e.v << '\n';
  os << "k " << inst.lists.k() << '\n';
  for (int v = 0; v < inst.lists.size(); ++v) {
    os << "L " << v << ':';
    for (int c : members(inst.lists.list(v))) os << ' ' << c;
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Certificates

inline std::string emit_certificate(const Certificate& cert) {
  std::ostringstream os;
  os << "version: 1\nkind: certificate\n";
  if (const auto* c = std::get_if<Coloring>(&cert)) {
    os << "verdict: colorable\n";
    for (std::size_t v = 0; v < c->color.size(); ++v) os << "color " << v << " = " << c->color[v] << '\n';
  } else if (const auto* nc = std::get_if<NonColorability>(&cert)) {
    os << "verdict: noncolorable\n";
    os << "violators: " << nc->violators.size() << '\n';
    for (const auto& pv : nc->violators) {
      os << "violator:\n  partition:";
      for (std::size_t i = 0; i < pv.groups.size(); ++i) {
        os << (i ? " |" : "");
        for (int v : members(pv.groups[i])) os << ' ' << v;
      }
      os << "\n  x: " << detail::join_members(pv.x) << "\n  y: " << detail::join_members(pv.y) << '\n';
    }
  } else {
    os << "verdict: exhausted\n";
  }
  return os.str();
}

inline Certificate to_certificate(const PartitionVerdict& v) {
  if (const auto* c = std::get_if<Coloring>(&v)) return *c;
  return std::get<NonColorability>(v);
}

inline Certificate parse_certificate(std::string_view text) {
  const auto lines = detail::lines_of(text);
  std::string verdict;
  bool versioned = false;
  std::vector<std::pair<int, int>> colors;
  NonColorability bundle;
  std::optional<std::size_t> declared;
  PartitionViolator* current = nullptr;

  auto mask_of = [](std::string_view list, int line, int limit) {
    std::uint64_t m = 0;
    for (auto w : detail::words(list)) {
      const long long i = detail::to_int(w, line);
      if (i < 0 || i >= limit) detail::syntax(line, "index out of range");
      m |= std::uint64_t{1} << i;
    }
    return m;
  };

  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const int line = static_cast<int>(idx) + 1;
    std::string_view raw = lines[idx];
    const std::string_view body = detail::trim(raw);
    if (body.empty() || body.front() == '#') continue;
    if (body.rfind("color ", 0) == 0) {
      auto w = detail::words(body);
      if (w.size() != 4 || w[2] != "=") detail::syntax(line, "expected 'color v = c'");
      colors.emplace_back(static_cast<int>(detail::to_int(w[1], line)),
                          static_cast<int>(detail::to_int(w[3], line)));
      continue;
    }
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) detail::syntax(line, "expected 'key: value'");
    const std::string_view key = detail::trim(body.substr(0, colon));
    const std::string_view value = detail::trim(body.substr(colon + 1));
    if (key == "version") {
      if (value != "1") detail::syntax(line, "unsupported version");
      versioned = true;
    } else if (key == "kind") {
      if (value != "certificate") detail::syntax(line, "not a certificate");
    } else if (key == "verdict") {
      verdict = std::string(value);
    } else if (key == "violators") {
      declared = static_cast<std::size_t>(detail::to_int(value, line));
    } else if (key == "violator") {
      bundle.violators.emplace_back();
      current = &bundle.violators.back();
    } else if (key == "partition" || key == "x" || key == "y") {
      if (!current) detail::syntax(line, "field outside a violator block");
      if (key == "partition") {
        std::string_view rest = value;
        while (true) {
          const auto bar = rest.find('|');
          const auto piece = rest.substr(0, bar);
          current->groups.push_back(static_cast<VertexSet>(mask_of(piece, line, kMaxVertices)));
          if (bar == std::string_view::npos) break;
          rest = rest.substr(bar + 1);
        }
      } else if (key == "x") {
        current->x = static_cast<VertexSet>(mask_of(value, line, 32));
      } else {
        current->y = mask_of(value, line, kPaletteSize);
      }
    } else {
      detail::syntax(line, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!versioned) throw Error(Error::Kind::invalid_input, "certificate lacks a version header");
  if (verdict == "colorable") {
    Coloring c;
    for (std::size_t i = 0; i < colors.size(); ++i) {
      if (colors[i].first != static_cast<int>(i)) {
        throw Error(Error::Kind::invalid_input, "color lines must list vertices 0.. in order");
      }
      c.color.push_back(colors[i].second);
    }
    return c;
  }
  if (verdict == "noncolorable") {
    if (declared && *declared != bundle.violators.size()) {
      throw Error(Error::Kind::invalid_input, "violator count does not match header");
    }
    return bundle;
  }
  if (verdict == "exhausted") return SearchExhausted{};
  throw Error(Error::Kind::invalid_input, "missing or unknown verdict");
}

/// Checks a certificate against an instance without trusting its producer.
/// An exhausted-search claim is checked by rerunning the generic search.
inline bool verify_certificate(const Instance& inst, const Certificate& cert) {
  if (const auto* c = std::get_if<Coloring>(&cert)) return verify_coloring(inst.graph, inst.lists, *c);
  if (const auto* nc = std::get_if<NonColorability>(&cert)) {
    return verify_noncolorability(inst.graph, inst.lists, *nc);
  }
  return !solve_generic(inst.graph, inst.lists).has_value();
}

// ---------------------------------------------------------------------------
// Reports

inline std::string emit_report(const CensusReport& r, bool timing = true) {
  std::ostringstream os;
  os << "version: 1\nkind: report\n";
  os << "name: " << r.name << "\nshape: " << r.shape << "\nk: " << r.k << '\n';
  os << "constraints: " << r.constraints << '\n';
  if (r.seed) os << "seed: " << *r.seed << '\n';
  os << "total: " << r.total << "\nbad: " << r.bad << "\nbad_iso_classes: " << r.classes.size()
     << '\n';
  os << "classes:\n";
  for (const auto& c : r.classes) {
    os << "  class:\n    form: " << c.form << "\n    members: " << c.members
       << "\n    witness: " << c.witness << '\n';
  }
  os << "alerts: " << r.alerts.size() << '\n';
  for (const auto& a : r.alerts) os << "  alert: " << a << '\n';
  os << "extra:\n";
  for (const auto& [key, value] : r.extra) os << "  " << key << ": " << value << '\n';
  if (timing) os << "wall_ms: " << static_cast<long long>(r.wall_ms) << '\n';
  return os.str();
}

inline CensusReport parse_report(std::string_view text) {
  CensusReport r;
  bool versioned = false;
  std::string block;
  ClassRecord* current = nullptr;
  const auto lines = detail::lines_of(text);
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const int line = static_cast<int>(idx) + 1;
    const std::string_view raw = lines[idx];
    if (detail::trim(raw).empty()) continue;
    std::size_t indent = 0;
    while (indent < raw.size() && raw[indent] == ' ') ++indent;
    const std::string_view body = raw.substr(indent);
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) detail::syntax(line, "expected 'key: value'");
    const std::string key(body.substr(0, colon));
    const std::string value(detail::trim(body.substr(colon + 1)));
    auto as_size = [&] { return static_cast<std::size_t>(detail::to_int(value, line)); };
    if (indent == 0) {
      block = key;
      current = nullptr;
      if (key == "version") {
        if (value != "1") detail::syntax(line, "unsupported version");
        versioned = true;
      } else if (key == "kind") {
        if (value != "report") detail::syntax(line, "not a report");
      } else if (key == "name") r.name = value;
      else if (key == "shape") r.shape = value;
      else if (key == "k") r.k = static_cast<int>(detail::to_int(value, line));
      else if (key == "constraints") r.constraints = value;
      else if (key == "seed") r.seed = static_cast<std::uint64_t>(detail::to_int(value, line));
      else if (key == "total") r.total = as_size();
      else if (key == "bad") r.bad = as_size();
      else if (key == "wall_ms") r.wall_ms = static_cast<double>(detail::to_int(value, line));
      else if (key != "bad_iso_classes" && key != "classes" && key != "alerts" && key != "extra") {
        detail::syntax(line, "unknown key '" + key + "'");
      }
    } else if (block == "classes") {
      if (key == "class") {
        r.classes.emplace_back();
        current = &r.classes.back();
      } else if (!current) {
        detail::syntax(line, "class field outside a class block");
      } else if (key == "form") current->form = value;
      else if (key == "members") current->members = as_size();
      else if (key == "witness") current->witness = value;
      else detail::syntax(line, "unknown class field '" + key + "'");
    } else if (block == "alerts" && key == "alert") {
      r.alerts.push_back(value);
    } else if (block == "extra") {
      r.extra.emplace_back(key, value);
    } else {
      detail::syntax(line, "unexpected indented line");
    }
  }
  if (!versioned) throw Error(Error::Kind::invalid_input, "report lacks a version header");
  return r;
}

}  // namespace ohba
