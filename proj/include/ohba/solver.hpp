#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "ohba/graph.hpp"
#include "ohba/list_assignment.hpp"
#include "ohba/matching.hpp"

namespace ohba {

/// A proper coloring; color[v] is drawn from L(v).
struct Coloring {
  std::vector<int> color;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// Hall violator for one grouping: x indexes into groups.
struct PartitionViolator {
  std::vector<VertexSet> groups;
  VertexSet x = 0;
  ColorSet y = 0;

  friend bool operator==(const PartitionViolator&, const PartitionViolator&) = default;
};

/// One violator per way of grouping each part into color classes.
struct NonColorability {
  std::vector<PartitionViolator> violators;

  friend bool operator==(const NonColorability&, const NonColorability&) = default;
};

/// Exhaustive search found no coloring; no compact certificate exists.
struct SearchExhausted {
  friend bool operator==(const SearchExhausted&, const SearchExhausted&) = default;
};

using Certificate = std::variant<Coloring, NonColorability, SearchExhausted>;
using PartitionVerdict = std::variant<Coloring, NonColorability>;

inline bool is_colorable(const Certificate& c) { return std::holds_alternative<Coloring>(c); }
inline bool is_colorable(const PartitionVerdict& c) {
  return std::holds_alternative<Coloring>(c);
}

// ---------------------------------------------------------------------------
// Set partitions

/// Every set partition of {0..n-1} as a restricted growth string, in
/// lexicographic order.
inline std::vector<std::vector<int>> restricted_growth_strings(int n) {
  std::vector<std::vector<int>> out;
  if (n <= 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> a(n, 0), peak(n, 0);  // peak[i] = max(a[0..i])
  while (true) {
    out.push_back(a);
    int i = n - 1;
    while (i > 0 && a[i] == peak[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    peak[i] = std::max(peak[i - 1], a[i]);
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      peak[j] = peak[i];
    }
  }
  return out;
}

/// Groupings of one vertex set: each grouping is a list of vertex masks.
inline std::vector<std::vector<VertexSet>> groupings_of(VertexSet vs) {
  const auto vertices = members(vs);
  std::vector<std::vector<VertexSet>> out;
  for (const auto& rgs : restricted_growth_strings(static_cast<int>(vertices.size()))) {
    const int blocks = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<VertexSet> groups(blocks, 0);
    for (std::size_t i = 0; i < vertices.size(); ++i) groups[rgs[i]] |= vertex_bit(vertices[i]);
    out.push_back(std::move(groups));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Contraction

/// G/S with intersected lists. Class i becomes contracted vertex i.
struct Contraction {
  std::vector<VertexSet> groups;
  std::vector<ColorSet> lists;
  std::vector<VertexSet> adjacency;  // bit j set when classes i and j are joined by an edge

  BipartiteIncidence incidence() const { return {lists}; }
};

inline Contraction contract(const Graph& g, const ListAssignment& lists,
                            const std::vector<VertexSet>& partition) {
  require_defined_on(g, lists);
  VertexSet seen = 0;
  for (VertexSet s : partition) {
    if (s == 0 || (s & seen) || (s & ~g.all_vertices())) {
      throw Error(Error::Kind::invalid_partition, "classes must be nonempty, disjoint and in range");
    }
    if (!g.independent(s)) {
      throw Error(Error::Kind::invalid_partition, "class is not an independent set");
    }
    seen |= s;
  }
  if (seen != g.all_vertices()) {
    throw Error(Error::Kind::invalid_partition, "classes do not cover every vertex");
  }
  Contraction out;
  out.groups = partition;
  const int m = static_cast<int>(partition.size());
  out.adjacency.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    out.lists.push_back(common_colors(lists, partition[i]));
    VertexSet nb = 0;
    for (int v : members(partition[i])) nb |= g.neighbors(v);
    for (int j = 0; j < m; ++j) {
      if (j != i && (nb & partition[j])) out.adjacency[i] |= vertex_bit(j);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generic backtracking

namespace detail {

struct Backtracker {
  const Graph& g;
  std::vector<int> color;

  // Forward checking only discards dead branches, so the first coloring found
  // is still the lexicographically least one in (vertex, color) order.
  bool run(int v, const std::array<ColorSet, kMaxVertices>& avail) {
    if (v == g.size()) return true;
    ColorSet options = avail[v];
    const VertexSet later = g.neighbors(v) & ~((vertex_bit(v) << 1) - 1);
    while (options) {
      const int c = lowest(options);
      options &= options - 1;
      auto next = avail;
      bool dead = false;
      for (VertexSet rest = later; rest; rest &= rest - 1) {
        const int u = lowest(rest);
        next[u] &= ~color_bit(c);
        if (!next[u]) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
      color[v] = c;
      if (run(v + 1, next)) return true;
    }
    return false;
  }
};

}  // namespace detail

/// Decides L-colorability by backtracking over vertices in part-major order and
/// colors in ascending order.
inline std::optional<Coloring> solve_generic(const Graph& g, const ListAssignment& lists) {
  require_defined_on(g, lists);
  if (g.size() > kMaxVertices) throw Error(Error::Kind::resource, "instance too large");
  std::array<ColorSet, kMaxVertices> avail{};
  for (int v = 0; v < g.size(); ++v) {
    avail[v] = lists.list(v);
    if (!avail[v]) return std::nullopt;
  }
  detail::Backtracker bt{g, std::vector<int>(g.size(), -1)};
  if (!bt.run(0, avail)) return std::nullopt;
  return Coloring{std::move(bt.color)};
}

// ---------------------------------------------------------------------------
// Grouping + matching method

namespace detail {

// Groupings of one part together with their intersected lists.
struct PartGroupings {
  std::vector<std::vector<VertexSet>> groups;
  std::vector<std::vector<ColorSet>> lists;
};

}  // namespace detail

/// Decides L-colorability of a complete multipartite graph.
///
/// Every color class of a proper coloring sits inside one part, so a coloring
/// exists iff some grouping of each part into classes admits a matching of
/// classes to colors from their common lists. Groupings are visited
/// lexicographically with part 0 most significant; the first covering matching
/// wins, otherwise every grouping contributes one violator.
inline PartitionVerdict solve_by_partitions(const Graph& g, const ListAssignment& lists) {
  require_defined_on(g, lists);
  if (!g.is_complete_multipartite()) {
    throw Error(Error::Kind::invalid_shape,
                "grouping method needs a complete multipartite graph; use the generic solver");
  }
  for (int s : g.part_sizes()) {
    if (s > 4) throw Error(Error::Kind::invalid_shape, "parts larger than 4 are not supported");
  }

  std::vector<detail::PartGroupings> parts(g.part_count());
  for (int p = 0; p < g.part_count(); ++p) {
    for (auto& grouping : groupings_of(g.part_vertices(p))) {
      std::vector<ColorSet> ls;
      for (VertexSet s : grouping) ls.push_back(common_colors(lists, s));
      parts[p].groups.push_back(std::move(grouping));
      parts[p].lists.push_back(std::move(ls));
    }
  }

  NonColorability bundle;
  std::vector<int> choice(g.part_count(), 0);
  std::vector<VertexSet> groups;
  BipartiteIncidence inc;
  while (true) {
    groups.clear();
    inc.left.clear();
    for (int p = 0; p < g.part_count(); ++p) {
      const auto& gs = parts[p].groups[choice[p]];
      const auto& ls = parts[p].lists[choice[p]];
      groups.insert(groups.end(), gs.begin(), gs.end());
      inc.left.insert(inc.left.end(), ls.begin(), ls.end());
    }

    const auto empty = std::find(inc.left.begin(), inc.left.end(), ColorSet{0});
    if (empty != inc.left.end()) {
      bundle.violators.push_back(
          {groups, vertex_bit(static_cast<int>(empty - inc.left.begin())), 0});
    } else {
      auto outcome = hall_or_matching(inc);
      if (auto* m = std::get_if<Matching>(&outcome)) {
        Coloring c{std::vector<int>(g.size(), -1)};
        for (std::size_t i = 0; i < groups.size(); ++i) {
          for (int v : members(groups[i])) c.color[v] = m->color_of[i];
        }
        return c;
      }
      const auto& viol = std::get<Violator>(outcome);
      bundle.violators.push_back({groups, viol.left, viol.colors});
    }

    int p = g.part_count() - 1;
    while (p >= 0 && ++choice[p] == static_cast<int>(parts[p].groups.size())) {
      choice[p] = 0;
      --p;
    }
    if (p < 0) break;
  }
  return bundle;
}

// ---------------------------------------------------------------------------
// Independent certificate checks

inline bool verify_coloring(const Graph& g, const ListAssignment& lists, const Coloring& c) {
  if (static_cast<int>(c.color.size()) != g.size() || lists.size() != g.size()) return false;
  for (int v = 0; v < g.size(); ++v) {
    const int col = c.color[v];
    if (col < 0 || col >= kPaletteSize || !((lists.list(v) >> col) & 1U)) return false;
    for (int u = 0; u < v; ++u) {
      if (g.adjacent(u, v) && c.color[u] == col) return false;
    }
  }
  return true;
}

/// Recomputes the violator from scratch: groups must partition V into
/// independent sets and the union of the selected common lists must be y with
/// |x| > |y|.
inline bool verify_violator(const Graph& g, const ListAssignment& lists,
                            const PartitionViolator& pv) {
  VertexSet seen = 0;
  for (VertexSet s : pv.groups) {
    if (s == 0 || (s & seen) || !g.independent(s)) return false;
    seen |= s;
  }
  if (seen != g.all_vertices()) return false;
  if (pv.groups.size() > 32 || (pv.groups.size() < 32 && (pv.x >> pv.groups.size()))) return false;
  ColorSet y = 0;
  for (int i : members(pv.x)) {
    ColorSet common = ~ColorSet{0};
    for (int v : members(pv.groups[i])) common &= lists.list(v);
    y |= common;
  }
  return y == pv.y && popcount(pv.x) > popcount(y);
}

/// A non-colorability bundle is a proof when every violator checks out and the
/// groupings cover each combination of per-part set partitions exactly once.
inline bool verify_noncolorability(const Graph& g, const ListAssignment& lists,
                                   const NonColorability& cert) {
  if (!g.is_complete_multipartite() || lists.size() != g.size()) return false;
  std::size_t expected = 1;
  for (int s : g.part_sizes()) expected *= restricted_growth_strings(s).size();
  if (cert.violators.size() != expected) return false;
  std::set<std::vector<VertexSet>> distinct;
  for (const auto& pv : cert.violators) {
    if (!verify_violator(g, lists, pv)) return false;
    auto key = pv.groups;
    std::sort(key.begin(), key.end());
    if (!distinct.insert(std::move(key)).second) return false;
  }
  return true;
}

}  // namespace ohba
