#pragma once

#include <array>
#include <variant>
#include <vector>

#include "ohba/bits.hpp"

namespace ohba {

/// Bipartite graph between left vertices and colors; left[i] is the color
/// neighborhood of left vertex i.
struct BipartiteIncidence {
  std::vector<ColorSet> left;
};

/// A matching covering every left vertex: color_of[i] is the color matched to i.
struct Matching {
  std::vector<int> color_of;
};

/// A Hall violator: |left| > |colors| where colors = N(left).
struct Violator {
  VertexSet left = 0;
  ColorSet colors = 0;

  int deficiency() const { return popcount(left) - popcount(colors); }
};

using HallOutcome = std::variant<Matching, Violator>;

namespace detail {

// Kuhn's augmenting-path search; colors tried in ascending order.
inline bool augment(const std::vector<ColorSet>& left, int i, ColorSet& visited,
                    std::array<int, kPaletteSize>& owner, std::vector<int>& color_of) {
  ColorSet options = left[i] & ~visited;
  while (options) {
    const int c = lowest(options);
    options &= options - 1;
    visited |= color_bit(c);
    if (owner[c] < 0 || augment(left, owner[c], visited, owner, color_of)) {
      owner[c] = i;
      color_of[i] = c;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Maximum matching of a left-side incidence; returns the matched color per
/// left vertex (-1 when unmatched).
inline std::vector<int> maximum_matching(const BipartiteIncidence& b) {
  std::array<int, kPaletteSize> owner;
  owner.fill(-1);
  std::vector<int> color_of(b.left.size(), -1);
  for (int i = 0; i < static_cast<int>(b.left.size()); ++i) {
    ColorSet visited = 0;
    detail::augment(b.left, i, visited, owner, color_of);
  }
  return color_of;
}

/// Either a matching saturating the left side, or a Hall violator.
///
/// The violator is the largest left set of maximum deficiency: everything not
/// reachable by alternating paths from an unmatched color. Its deficiency equals
/// the number of unmatched left vertices (Konig).
inline HallOutcome hall_or_matching(const BipartiteIncidence& b) {
  const int n = static_cast<int>(b.left.size());
  std::vector<int> color_of = maximum_matching(b);

  ColorSet used = 0;
  ColorSet matched = 0;
  bool perfect = true;
  for (int i = 0; i < n; ++i) {
    used |= b.left[i];
    if (color_of[i] < 0) {
      perfect = false;
    } else {
      matched |= color_bit(color_of[i]);
    }
  }
  if (perfect) return Matching{std::move(color_of)};

  ColorSet reached_colors = used & ~matched;
  VertexSet reached_left = 0;
  std::vector<int> frontier = members(reached_colors);
  while (!frontier.empty()) {
    const int c = frontier.back();
    frontier.pop_back();
    for (int i = 0; i < n; ++i) {
      if (((reached_left >> i) & 1U) || !((b.left[i] >> c) & 1U)) continue;
      reached_left |= vertex_bit(i);
      const int mate = color_of[i];  // reached left vertices are always matched
      if (mate >= 0 && !((reached_colors >> mate) & 1U)) {
        reached_colors |= color_bit(mate);
        frontier.push_back(mate);
      }
    }
  }

  Violator v;
  for (int i = 0; i < n; ++i) {
    if (!((reached_left >> i) & 1U)) {
      v.left |= vertex_bit(i);
      v.colors |= b.left[i];
    }
  }
  return v;
}

}  // namespace ohba
