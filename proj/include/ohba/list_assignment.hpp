#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ohba/bits.hpp"
#include "ohba/graph.hpp"

namespace ohba {

/// Per-vertex color lists over the 64-color palette, with the list-size
/// parameter k. Every list holds at least k colors.
class ListAssignment {
 public:
  ListAssignment() = default;

  ListAssignment(std::vector<ColorSet> lists, int k) : lists_(std::move(lists)), k_(k) {
    if (k_ < 0) throw Error(Error::Kind::invalid_input, "negative list size parameter");
    for (std::size_t v = 0; v < lists_.size(); ++v) {
      if (popcount(lists_[v]) < k_) {
        throw Error(Error::Kind::invalid_input,
                    "list of vertex " + std::to_string(v) + " has fewer than k=" +
                        std::to_string(k_) + " colors");
      }
    }
  }

  /// Lists given as color vectors; k defaults to the minimum list size.
  static ListAssignment from_vectors(const std::vector<std::vector<int>>& lists,
                                     std::optional<int> k = std::nullopt) {
    std::vector<ColorSet> sets;
    sets.reserve(lists.size());
    for (const auto& l : lists) sets.push_back(make_colors(l));
    return ListAssignment(std::move(sets), k.value_or(min_size(sets)));
  }

  int size() const noexcept { return static_cast<int>(lists_.size()); }
  int k() const noexcept { return k_; }
  ColorSet list(int v) const { return lists_.at(v); }
  const std::vector<ColorSet>& lists() const noexcept { return lists_; }

  ColorSet colors() const noexcept {
    ColorSet c = 0;
    for (ColorSet l : lists_) c |= l;
    return c;
  }

  /// Vertices whose list contains c.
  VertexSet holders(int c) const {
    VertexSet s = 0;
    for (int v = 0; v < size(); ++v) {
      if ((lists_[v] >> c) & 1U) s |= vertex_bit(v);
    }
    return s;
  }

  bool exact() const {
    return std::all_of(lists_.begin(), lists_.end(),
                       [this](ColorSet l) { return popcount(l) == k_; });
  }

  ListAssignment with_list(int v, ColorSet list) const {
    auto copy = lists_;
    copy.at(v) = list;
    return ListAssignment(std::move(copy), k_);
  }

  friend bool operator==(const ListAssignment&, const ListAssignment&) = default;

  static int min_size(const std::vector<ColorSet>& lists) {
    int m = lists.empty() ? 0 : kPaletteSize;
    for (ColorSet l : lists) m = std::min(m, popcount(l));
    return m;
  }

 private:
  std::vector<ColorSet> lists_;
  int k_ = 0;
};

/// A graph together with a list assignment on it.
struct Instance {
  Graph graph;
  ListAssignment lists;
};

inline void require_defined_on(const Graph& g, const ListAssignment& lists) {
  if (lists.size() != g.size()) {
    throw Error(Error::Kind::invalid_input,
                "list assignment covers " + std::to_string(lists.size()) + " vertices, graph has " +
                    std::to_string(g.size()));
  }
}

inline ColorSet common_colors(const ListAssignment& lists, VertexSet vs) {
  ColorSet c = ~ColorSet{0};
  for (int v : members(vs)) c &= lists.list(v);
  return c;
}

inline ColorSet union_colors(const ListAssignment& lists, VertexSet vs) {
  ColorSet c = 0;
  for (int v : members(vs)) c |= lists.list(v);
  return c;
}

/// Per-part list statistics.
struct PartStats {
  ColorSet colors = 0;
  /// Largest pairwise intersection inside each part of size three or more.
  std::vector<std::optional<int>> max_pair_overlap;
  /// hit_exactly[p][i]: colors lying in exactly i lists of part p.
  std::vector<std::vector<ColorSet>> hit_exactly;

  int color_count() const { return popcount(colors); }

  ColorSet hit_at_least(int part, int i) const {
    ColorSet s = 0;
    const auto& row = hit_exactly.at(part);
    for (int j = std::max(i, 0); j < static_cast<int>(row.size()); ++j) s |= row[j];
    return s;
  }
};

inline PartStats assignment_stats(const Graph& g, const ListAssignment& lists) {
  require_defined_on(g, lists);
  PartStats st;
  st.colors = lists.colors();
  for (int p = 0; p < g.part_count(); ++p) {
    const auto vs = members(g.part_vertices(p));
    std::optional<int> overlap;
    if (vs.size() >= 3) {
      int best = 0;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
          best = std::max(best, popcount(lists.list(vs[i]) & lists.list(vs[j])));
        }
      }
      overlap = best;
    }
    st.max_pair_overlap.push_back(overlap);

    std::vector<ColorSet> row(vs.size() + 1, 0);
    for (int c : members(st.colors)) {
      int hits = 0;
      for (int v : vs) hits += static_cast<int>((lists.list(v) >> c) & 1U);
      row[hits] |= color_bit(c);
    }
    st.hit_exactly.push_back(std::move(row));
  }
  return st;
}

/// The two extremal shapes: K_{4,2*(k-1)} and K_{3*(k/2+1),1*(k/2-1)}.
enum class TargetShape { four_two, three_one };

struct ShapeInfo {
  TargetShape shape;
  int k;  // number of parts
};

/// Recognizes a target shape regardless of part order; empty deleted set required.
inline std::optional<ShapeInfo> classify_shape(const Graph& g) {
  if (!g.is_complete_multipartite()) return std::nullopt;
  const int k = g.part_count();
  auto count = [&](int s) {
    return static_cast<int>(std::count(g.part_sizes().begin(), g.part_sizes().end(), s));
  };
  if (k >= 2 && k % 2 == 0) {
    if (count(4) == 1 && count(2) == k - 1) return ShapeInfo{TargetShape::four_two, k};
    if (count(3) == k / 2 + 1 && count(1) == k / 2 - 1) {
      return ShapeInfo{TargetShape::three_one, k};
    }
  }
  return std::nullopt;
}

inline ShapeInfo require_shape(const Graph& g, std::optional<TargetShape> wanted = std::nullopt) {
  auto info = classify_shape(g);
  if (!info || (wanted && info->shape != *wanted)) {
    throw Error(Error::Kind::invalid_shape,
                "graph K_{" + shape_string(g) + "} is not the required target shape");
  }
  return *info;
}

/// Which necessary condition for badness an assignment violates.
enum class FilterReason {
  none,
  equal_lists,      // two vertices of one part share a list
  one_part_color,   // a color appears in only one part
  common_color,     // a part of size >= 2 has a color common to all its lists
  too_many_colors,  // |C| >= |V(G)|
};

struct FilterResult {
  FilterReason reason = FilterReason::none;
  std::string detail;

  bool passed() const noexcept { return reason == FilterReason::none; }
};

inline const char* to_string(FilterReason r) {
  switch (r) {
    case FilterReason::none: return "pass";
    case FilterReason::equal_lists: return "equal-lists";
    case FilterReason::one_part_color: return "one-part-color";
    case FilterReason::common_color: return "common-color";
    case FilterReason::too_many_colors: return "too-many-colors";
  }
  return "?";
}

/// Necessary (not sufficient) conditions for a bad assignment of a target shape.
inline FilterResult necessary_bad_filter(const Graph& g, const ListAssignment& lists) {
  require_shape(g);
  require_defined_on(g, lists);
  for (int p = 0; p < g.part_count(); ++p) {
    const auto vs = members(g.part_vertices(p));
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        if (lists.list(vs[i]) == lists.list(vs[j])) {
          return {FilterReason::equal_lists, "vertices " + std::to_string(vs[i]) + " and " +
                                                 std::to_string(vs[j]) + " have equal lists"};
        }
      }
    }
  }
  const ColorSet all = lists.colors();
  for (int p = 0; p < g.part_count(); ++p) {
    const ColorSet outside = union_colors(lists, g.all_vertices() & ~g.part_vertices(p));
    if (outside != all) {
      return {FilterReason::one_part_color,
              "color " + std::to_string(lowest(all & ~outside)) + " only in part " +
                  std::to_string(p)};
    }
  }
  for (int p = 0; p < g.part_count(); ++p) {
    if (g.part_size(p) < 2) continue;
    const ColorSet common = common_colors(lists, g.part_vertices(p));
    if (common) {
      return {FilterReason::common_color, "part " + std::to_string(p) + " shares color " +
                                              std::to_string(lowest(common))};
    }
  }
  if (popcount(all) >= g.size()) {
    return {FilterReason::too_many_colors, std::to_string(popcount(all)) + " colors on " +
                                               std::to_string(g.size()) + " vertices"};
  }
  return {};
}

}  // namespace ohba
