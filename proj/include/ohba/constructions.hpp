#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ohba/graph.hpp"
#include "ohba/list_assignment.hpp"

namespace ohba {

// ---------------------------------------------------------------------------
// K_{4,2*(k-1)} layout: part 0 = {u1, v1, x1, y1} = vertices 0..3, then part
// i-1 = {u_i, v_i} = vertices 2i, 2i+1 for 2 <= i <= k.

namespace four_two {
inline constexpr int u1 = 0;
inline constexpr int v1 = 1;
inline constexpr int x1 = 2;
inline constexpr int y1 = 3;
constexpr int u(int i) { return 2 * i; }
constexpr int v(int i) { return 2 * i + 1; }

inline Graph shell(int k) {
  std::vector<int> sizes{4};
  sizes.resize(k, 2);
  return build_multipartite(sizes);
}
}  // namespace four_two

// K_{3*(k/2+1),1*(k/2-1)} layout: 3-parts first (u_i, v_i, w_i), then singletons.
namespace three_one {
inline Graph shell(int k) {
  std::vector<int> sizes(k / 2 + 1, 3);
  sizes.resize(k, 1);
  return build_multipartite(sizes);
}
}  // namespace three_one

/// Color blocks of the structured bad assignment of K_{4,2*(k-1)}:
/// A = A1+A2+A3+A4 with |A1|=|A2|=a1, |A3|=|A4|=a3, and B = B1+B2, |B1|=|B2|=k/2.
struct Unique4Spec {
  int k = 0;
  int a1 = 0;
  int a3 = 0;
  std::array<ColorSet, 4> a_blocks{};  // A1..A4
  std::array<ColorSet, 2> b_blocks{};  // B1, B2

  ColorSet a() const { return a_blocks[0] | a_blocks[1] | a_blocks[2] | a_blocks[3]; }
  ColorSet b() const { return b_blocks[0] | b_blocks[1]; }

  /// Blocks A1, A2, A3, A4, B1, B2 filled in ascending color order.
  static Unique4Spec standard(int k, int a1, int a3, int first_color = 1) {
    check_sizes(k, a1, a3);
    Unique4Spec s{k, a1, a3, {}, {}};
    int next = first_color;
    auto take = [&](int count) {
      ColorSet block = 0;
      for (int i = 0; i < count; ++i) block |= color_bit(next++);
      return block;
    };
    if (first_color < 0 || first_color + 2 * k > kPaletteSize) {
      throw Error(Error::Kind::invalid_input, "blocks do not fit in the palette");
    }
    s.a_blocks = {take(a1), take(a1), take(a3), take(a3)};
    s.b_blocks = {take(k / 2), take(k / 2)};
    return s;
  }

  void validate() const {
    check_sizes(k, a1, a3);
    const std::array<int, 6> want{a1, a1, a3, a3, k / 2, k / 2};
    const std::array<ColorSet, 6> blocks{a_blocks[0], a_blocks[1], a_blocks[2],
                                         a_blocks[3], b_blocks[0], b_blocks[1]};
    ColorSet seen = 0;
    for (int i = 0; i < 6; ++i) {
      if (popcount(blocks[i]) != want[i]) {
        throw Error(Error::Kind::invalid_input, "block sizes do not match (a1, a3, k)");
      }
      if (blocks[i] & seen) throw Error(Error::Kind::invalid_input, "blocks overlap");
      seen |= blocks[i];
    }
  }

 private:
  static void check_sizes(int k, int a1, int a3) {
    if (k < 2 || k % 2 != 0) {
      throw Error(Error::Kind::invalid_input, "k must be even and at least 2, got " + std::to_string(k));
    }
    if (a1 < 0 || a3 < 0 || 2 * a1 + 2 * a3 != k) {
      throw Error(Error::Kind::invalid_input, "need 2*a1 + 2*a3 = k");
    }
  }
};

/// The structured non-colorable assignment of K_{4,2*(k-1)}.
inline Instance make_unique4(const Unique4Spec& spec) {
  spec.validate();
  const auto& a = spec.a_blocks;
  const auto& b = spec.b_blocks;
  std::vector<ColorSet> lists(2 * spec.k + 2);
  lists[four_two::u1] = a[0] | a[2] | b[0];
  lists[four_two::v1] = a[0] | a[3] | b[1];
  lists[four_two::x1] = a[1] | a[3] | b[0];
  lists[four_two::y1] = a[1] | a[2] | b[1];
  for (int i = 2; i <= spec.k; ++i) {
    lists[four_two::u(i)] = spec.a();
    lists[four_two::v(i)] = spec.b();
  }
  return {four_two::shell(spec.k), ListAssignment(std::move(lists), spec.k)};
}

/// The three bad 2-assignments of K_{3,3}, by |{a,b} & {c,d}| = 0, 1, 2.
enum class K33Variant { disjoint, overlap1, overlap2 };

inline const char* to_string(K33Variant v) {
  switch (v) {
    case K33Variant::disjoint: return "disjoint";
    case K33Variant::overlap1: return "overlap1";
    case K33Variant::overlap2: return "overlap2";
  }
  return "?";
}

inline Instance make_k33_bad(K33Variant variant) {
  std::vector<std::vector<int>> lists;
  switch (variant) {
    case K33Variant::disjoint:
      lists = {{1, 2}, {1, 3}, {4, 5}, {1, 4}, {1, 5}, {2, 3}};
      break;
    case K33Variant::overlap1:
      lists = {{1, 2}, {1, 3}, {3, 4}, {1, 3}, {1, 4}, {2, 3}};
      break;
    case K33Variant::overlap2:
      lists = {{1, 2}, {1, 3}, {2, 3}, {1, 2}, {1, 3}, {2, 3}};
      break;
  }
  return {build_multipartite({3, 3}), ListAssignment::from_vectors(lists, 2)};
}

/// Bad assignment of K_{3*(k/2+1),1*(k/2-1)} with |C| = 3k/2 and no color
/// common to any 3-part. By default C = {1..3k/2} is cut into blocks X, Y, Z of
/// size k/2; each 3-part gets X+Y, Y+Z, X+Z and each singleton X+Y.
inline Instance make_unique3(int k,
                             std::optional<std::vector<std::array<ColorSet, 3>>> part_lists = {},
                             std::optional<std::vector<ColorSet>> onepart_lists = {}) {
  if (k < 4 || k % 2 != 0) {
    throw Error(Error::Kind::invalid_input, "k must be even and at least 4, got " + std::to_string(k));
  }
  const int h = k / 2;
  ColorSet x = 0, y = 0, z = 0;
  for (int i = 0; i < h; ++i) {
    x |= color_bit(1 + i);
    y |= color_bit(1 + h + i);
    z |= color_bit(1 + 2 * h + i);
  }
  std::vector<std::array<ColorSet, 3>> triples =
      part_lists.value_or(std::vector<std::array<ColorSet, 3>>(h + 1, {x | y, y | z, x | z}));
  std::vector<ColorSet> singles = onepart_lists.value_or(std::vector<ColorSet>(h - 1, x | y));
  if (static_cast<int>(triples.size()) != h + 1 || static_cast<int>(singles.size()) != h - 1) {
    throw Error(Error::Kind::invalid_input, "wrong number of part lists");
  }

  std::vector<ColorSet> lists;
  for (const auto& t : triples) {
    if ((t[0] & t[1] & t[2]) != 0) {
      throw Error(Error::Kind::invalid_input, "a 3-part has a common color");
    }
    lists.insert(lists.end(), t.begin(), t.end());
  }
  lists.insert(lists.end(), singles.begin(), singles.end());
  ColorSet all = 0;
  for (ColorSet l : lists) {
    if (popcount(l) != k) throw Error(Error::Kind::invalid_input, "every list must have k colors");
    all |= l;
  }
  if (popcount(all) != 3 * h) {
    throw Error(Error::Kind::invalid_input, "the lists must use exactly 3k/2 colors");
  }
  return {three_one::shell(k), ListAssignment(std::move(lists), k)};
}

/// G*: K_{4,2*(k-1)} minus every u_i v_j with 2 <= i != j <= k, carrying the
/// standard structured assignment (a1 = k/2, a3 = 0).
inline Instance make_gstar(int k) {
  if (k < 4 || k % 2 != 0) {
    throw Error(Error::Kind::invalid_input, "k must be even and at least 4, got " + std::to_string(k));
  }
  Instance base = make_unique4(Unique4Spec::standard(k, k / 2, 0));
  std::vector<Edge> cut;
  for (int i = 2; i <= k; ++i) {
    for (int j = 2; j <= k; ++j) {
      if (i != j) cut.emplace_back(four_two::u(i), four_two::v(j));
    }
  }
  std::sort(cut.begin(), cut.end());
  cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
  return {delete_edges(base.graph, cut), base.lists};
}

// ---------------------------------------------------------------------------
// Sufficient condition for f-choosability of complete multipartite graphs with
// parts of size <= 3.

/// Parts are split into two ordered classes of singleton parts (low, high),
/// all 2-parts and all 3-parts. Classes hold part indices.
struct Ind3Instance {
  Graph graph;
  std::vector<int> low;   // ordered singleton parts bounded by k2+k3+i
  std::vector<int> high;  // ordered singleton parts bounded by 2k3+k2+k1+i
  std::vector<int> f;     // vertex -> required list size
};

struct Ind3Counts {
  int low = 0;     // k1
  int high = 0;    // d
  int pairs = 0;   // k2
  int triples = 0; // k3
};

inline Ind3Counts ind3_counts(const Ind3Instance& inst) {
  const Graph& g = inst.graph;
  if (static_cast<int>(inst.f.size()) != g.size()) {
    throw Error(Error::Kind::invalid_input, "f must be defined on every vertex");
  }
  Ind3Counts n;
  std::vector<int> singleton_use(g.part_count(), 0);
  for (int p = 0; p < g.part_count(); ++p) {
    const int s = g.part_size(p);
    if (s > 3) throw Error(Error::Kind::invalid_shape, "parts must have at most 3 vertices");
    if (s == 2) ++n.pairs;
    if (s == 3) ++n.triples;
  }
  for (const auto* cls : {&inst.low, &inst.high}) {
    for (int p : *cls) {
      if (p < 0 || p >= g.part_count() || g.part_size(p) != 1) {
        throw Error(Error::Kind::invalid_input, "ordered classes may only hold singleton parts");
      }
      ++singleton_use[p];
    }
  }
  for (int p = 0; p < g.part_count(); ++p) {
    if (g.part_size(p) == 1 && singleton_use[p] != 1) {
      throw Error(Error::Kind::invalid_input,
                  "singleton part " + std::to_string(p) + " must be in exactly one ordered class");
    }
  }
  n.low = static_cast<int>(inst.low.size());
  n.high = static_cast<int>(inst.high.size());
  return n;
}

/// True when every inequality family holds; the lemma then guarantees
/// f-choosability. Nothing is re-proved here.
inline bool ind3_check(const Ind3Instance& inst) {
  const Ind3Counts n = ind3_counts(inst);
  const Graph& g = inst.graph;
  const auto& f = inst.f;
  const int k1 = n.low, d = n.high, k2 = n.pairs, k3 = n.triples;

  for (int i = 0; i < k1; ++i) {
    if (f[g.first_vertex(inst.low[i])] < k2 + k3 + i + 1) return false;
  }
  for (int i = 0; i < d; ++i) {
    if (f[g.first_vertex(inst.high[i])] < 2 * k3 + k2 + k1 + i + 1) return false;
  }
  for (int p = 0; p < g.part_count(); ++p) {
    const auto vs = members(g.part_vertices(p));
    if (vs.size() == 2) {
      if (f[vs[0]] < k2 + k3 || f[vs[1]] < k2 + k3) return false;
      if (f[vs[0]] + f[vs[1]] < 3 * k3 + 2 * k2 + k1 + d) return false;
    } else if (vs.size() == 3) {
      int sum = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        if (f[vs[i]] < k2 + k3) return false;
        for (std::size_t j = i + 1; j < 3; ++j) {
          if (f[vs[i]] + f[vs[j]] < 2 * k3 + 2 * k2 + k1) return false;
        }
        sum += f[vs[i]];
      }
      if (sum < 4 * k3 + 3 * k2 + 2 * k1 + d - 1) return false;
    }
  }
  return true;
}

/// Searches every split of the singleton parts into the two ordered classes.
/// Within a class the bounds grow with position, so ordering by ascending f is
/// optimal and stands in for trying every ordering.
inline std::optional<Ind3Instance> ind3_search(const Graph& g, const std::vector<int>& f) {
  for (int s : g.part_sizes()) {
    if (s > 3) throw Error(Error::Kind::invalid_shape, "parts must have at most 3 vertices");
  }
  if (static_cast<int>(f.size()) != g.size()) {
    throw Error(Error::Kind::invalid_input, "f must be defined on every vertex");
  }
  std::vector<int> singles;
  for (int p = 0; p < g.part_count(); ++p) {
    if (g.part_size(p) == 1) singles.push_back(p);
  }
  if (singles.size() > 20) throw Error(Error::Kind::resource, "too many singleton parts");
  auto by_f = [&](int p, int q) {
    const int fp = f[g.first_vertex(p)], fq = f[g.first_vertex(q)];
    return fp != fq ? fp < fq : p < q;
  };
  for (std::uint32_t mask = 0; mask < (1U << singles.size()); ++mask) {
    Ind3Instance inst{g, {}, {}, f};
    for (std::size_t i = 0; i < singles.size(); ++i) {
      ((mask >> i) & 1U ? inst.high : inst.low).push_back(singles[i]);
    }
    std::sort(inst.low.begin(), inst.low.end(), by_f);
    std::sort(inst.high.begin(), inst.high.end(), by_f);
    if (ind3_check(inst)) return inst;
  }
  return std::nullopt;
}

/// Remainder of a precolored structured instance: the graph left after
/// removing the precolored vertices (as a complete multipartite supergraph),
/// the lists with the used colors removed, and f = their sizes.
struct ReducedInstance {
  Instance remainder;
  std::vector<int> f;
};

namespace detail {

inline ReducedInstance reduce(const Instance& inst, VertexSet removed, ColorSet used) {
  const Graph& g = inst.graph;
  std::vector<int> sizes;
  std::vector<ColorSet> lists;
  std::vector<int> f;
  for (int p = 0; p < g.part_count(); ++p) {
    const VertexSet keep = g.part_vertices(p) & ~removed;
    if (!keep) continue;
    sizes.push_back(popcount(keep));
    for (int v : members(keep)) {
      lists.push_back(inst.lists.list(v) & ~used);
      f.push_back(popcount(lists.back()));
    }
  }
  return {{build_multipartite(sizes), ListAssignment(std::move(lists), 0)}, std::move(f)};
}

}  // namespace detail

/// K_{4,2*(k-1)} minus the edge u1 u2, with the standard structured lists:
/// color u1, u2 with c from L(u1) & L(u2) and v1, y1 with c2 from B2, then drop
/// those four vertices.
inline ReducedInstance reduce_unique4_without_edge(int k, int c, int c2) {
  const Unique4Spec spec = Unique4Spec::standard(k, k / 2, 0);
  const Instance inst = make_unique4(spec);
  const ColorSet shared = inst.lists.list(four_two::u1) & inst.lists.list(four_two::u(2));
  if (!((shared >> c) & 1U) || !((spec.b_blocks[1] >> c2) & 1U)) {
    throw Error(Error::Kind::invalid_input, "precoloring colors not available");
  }
  const VertexSet removed = vertex_bit(four_two::u1) | vertex_bit(four_two::u(2)) |
                            vertex_bit(four_two::v1) | vertex_bit(four_two::y1);
  return detail::reduce(inst, removed, color_bit(c) | color_bit(c2));
}

/// K_{3*(k/2+1),1*(k/2-1)} minus the edge u1 u2, with the default structured
/// lists: color u1, u2 with c1, the rest of the first 3-part with c2 and the
/// rest of the second with c3, then drop both 3-parts.
inline ReducedInstance reduce_unique3_without_edge(int k, int c1, int c2, int c3) {
  const Instance inst = make_unique3(k);
  const auto& l = inst.lists;
  // u1, v1, w1 = 0, 1, 2 and u2, v2, w2 = 3, 4, 5
  const ColorSet a1 = l.list(0) & l.list(3);
  const ColorSet a2 = l.list(1) & l.list(2);
  const ColorSet a3 = l.list(4) & l.list(5);
  if (!((a1 >> c1) & 1U) || !((a2 >> c2) & 1U) || !((a3 >> c3) & 1U) || c1 == c2 || c1 == c3 ||
      c2 == c3) {
    throw Error(Error::Kind::invalid_input, "precoloring colors not available");
  }
  return detail::reduce(inst, 0x3F, color_bit(c1) | color_bit(c2) | color_bit(c3));
}

}  // namespace ohba
