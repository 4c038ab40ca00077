#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ohba/bits.hpp"

namespace ohba {

/// Unordered vertex pair, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

  auto operator<=>(const Edge&) const = default;
};

/// Vertex permutation: image[v] is where v goes.
using Permutation = std::vector<int>;

/// A subgraph of a complete multipartite shell K_{s1,...,sm}.
///
/// Vertices are numbered part-major: part 0 owns 0..s1-1, part 1 the next s2,
/// and so on. Two vertices are adjacent iff they lie in distinct parts and the
/// pair is not in the deleted set.
class Graph {
 public:
  Graph() = default;

  int size() const noexcept { return static_cast<int>(part_of_.size()); }
  int part_count() const noexcept { return static_cast<int>(part_sizes_.size()); }
  const std::vector<int>& part_sizes() const noexcept { return part_sizes_; }
  int part_of(int v) const { return part_of_.at(v); }
  int part_size(int p) const { return part_sizes_.at(p); }
  int first_vertex(int p) const { return part_start_.at(p); }
  VertexSet part_vertices(int p) const { return part_mask_.at(p); }
  VertexSet all_vertices() const noexcept {
    return size() == 0 ? 0 : static_cast<VertexSet>((std::uint64_t{1} << size()) - 1);
  }

  const std::set<Edge>& deleted() const noexcept { return deleted_; }
  bool is_complete_multipartite() const noexcept { return deleted_.empty(); }

  bool adjacent(int u, int v) const { return (adj_.at(u) >> v) & 1U; }
  VertexSet neighbors(int v) const { return adj_.at(v); }

  int edge_count() const {
    int twice = 0;
    for (VertexSet a : adj_) twice += popcount(a);
    return twice / 2;
  }

  bool independent(VertexSet s) const {
    for (int v : members(s)) {
      if (adj_[v] & s) return false;
    }
    return true;
  }

  /// True when the permutation maps edges to edges (and hence non-edges to non-edges).
  bool preserves_edges(const Permutation& sigma) const {
    for (int u = 0; u < size(); ++u) {
      for (int v = u + 1; v < size(); ++v) {
        if (adjacent(u, v) != adjacent(sigma[u], sigma[v])) return false;
      }
    }
    return true;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.part_sizes_ == b.part_sizes_ && a.deleted_ == b.deleted_;
  }

  friend Graph build_multipartite(std::span<const int> part_sizes);
  friend Graph delete_edges(const Graph& g, std::span<const Edge> pairs);

 private:
  void rebuild_adjacency() {
    const int n = size();
    adj_.assign(n, 0);
    for (int u = 0; u < n; ++u) {
      adj_[u] = all_vertices() & ~part_mask_[part_of_[u]];
    }
    for (const Edge& e : deleted_) {
      adj_[e.u] &= ~vertex_bit(e.v);
      adj_[e.v] &= ~vertex_bit(e.u);
    }
  }

  std::vector<int> part_sizes_;
  std::vector<int> part_of_;
  std::vector<int> part_start_;
  std::vector<VertexSet> part_mask_;
  std::set<Edge> deleted_;
  std::vector<VertexSet> adj_;
};

inline Graph build_multipartite(std::span<const int> part_sizes) {
  if (part_sizes.empty()) throw Error(Error::Kind::invalid_shape, "no parts given");
  int n = 0;
  for (int s : part_sizes) {
    if (s < 1) throw Error(Error::Kind::invalid_shape, "part sizes must be positive");
    n += s;
  }
  if (n > kMaxVertices) {
    throw Error(Error::Kind::invalid_shape,
                "graph has " + std::to_string(n) + " vertices; at most " +
                    std::to_string(kMaxVertices) + " supported");
  }
  Graph g;
  g.part_sizes_.assign(part_sizes.begin(), part_sizes.end());
  int start = 0;
  for (int p = 0; p < static_cast<int>(part_sizes.size()); ++p) {
    g.part_start_.push_back(start);
    VertexSet mask = 0;
    for (int i = 0; i < part_sizes[p]; ++i) {
      g.part_of_.push_back(p);
      mask |= vertex_bit(start + i);
    }
    g.part_mask_.push_back(mask);
    start += part_sizes[p];
  }
  g.rebuild_adjacency();
  return g;
}

inline Graph build_multipartite(std::initializer_list<int> part_sizes) {
  return build_multipartite(std::span<const int>(part_sizes.begin(), part_sizes.size()));
}

inline Graph delete_edges(const Graph& g, std::span<const Edge> pairs) {
  Graph out = g;
  for (const Edge& e : pairs) {
    if (e.u < 0 || e.v >= g.size() || e.u == e.v) {
      throw Error(Error::Kind::invalid_edit, "vertex pair out of range");
    }
    if (!out.adjacent(e.u, e.v)) {
      throw Error(Error::Kind::invalid_edit, "pair {" + std::to_string(e.u) + "," +
                                                 std::to_string(e.v) + "} is not an edge");
    }
    out.deleted_.insert(e);
    out.adj_[e.u] &= ~vertex_bit(e.v);
    out.adj_[e.v] &= ~vertex_bit(e.u);
  }
  return out;
}

inline Graph delete_edges(const Graph& g, std::initializer_list<Edge> pairs) {
  return delete_edges(g, std::span<const Edge>(pairs.begin(), pairs.size()));
}

/// Part-structure-preserving automorphisms, stored as a generating set.
class SymmetryGroup {
 public:
  SymmetryGroup(int n, std::vector<Permutation> generators)
      : n_(n), generators_(std::move(generators)) {}

  const std::vector<Permutation>& generators() const noexcept { return generators_; }

  /// Every group element, identity first, by breadth-first closure.
  std::vector<Permutation> elements() const {
    Permutation id(n_);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Permutation> out{id};
    std::set<Permutation> seen{id};
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (const Permutation& gen : generators_) {
        Permutation next(n_);
        for (int v = 0; v < n_; ++v) next[v] = gen[out[i][v]];
        if (seen.insert(next).second) out.push_back(std::move(next));
      }
    }
    return out;
  }

  std::size_t order() const { return elements().size(); }

 private:
  int n_;
  std::vector<Permutation> generators_;
};

namespace detail {

// Generators of the automorphism group of the complete multipartite shell:
// adjacent transpositions inside each part, plus swaps of consecutive
// equal-size parts.
inline std::vector<Permutation> shell_generators(const Graph& g) {
  const int n = g.size();
  Permutation id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Permutation> gens;
  for (int p = 0; p < g.part_count(); ++p) {
    const int s = g.first_vertex(p);
    for (int i = 0; i + 1 < g.part_size(p); ++i) {
      Permutation t = id;
      std::swap(t[s + i], t[s + i + 1]);
      gens.push_back(std::move(t));
    }
  }
  for (int p = 0; p < g.part_count(); ++p) {
    for (int q = p + 1; q < g.part_count(); ++q) {
      if (g.part_size(p) != g.part_size(q)) continue;
      // only link p to the next part of the same size
      bool nearer = false;
      for (int r = p + 1; r < q; ++r) nearer |= g.part_size(r) == g.part_size(p);
      if (nearer) continue;
      Permutation t = id;
      for (int i = 0; i < g.part_size(p); ++i) {
        std::swap(t[g.first_vertex(p) + i], t[g.first_vertex(q) + i]);
      }
      gens.push_back(std::move(t));
    }
  }
  return gens;
}

}  // namespace detail

inline SymmetryGroup symmetry_group(const Graph& g) {
  auto gens = detail::shell_generators(g);
  if (g.is_complete_multipartite()) return SymmetryGroup(g.size(), std::move(gens));

  // Restrict the shell group to elements preserving the deleted set, then pick
  // a generating set greedily.
  std::vector<Permutation> keep;
  for (Permutation& p : SymmetryGroup(g.size(), std::move(gens)).elements()) {
    if (g.preserves_edges(p)) keep.push_back(std::move(p));
  }
  std::vector<Permutation> chosen;
  std::set<Permutation> reached{keep.front()};  // identity
  for (const Permutation& p : keep) {
    if (reached.contains(p)) continue;
    chosen.push_back(p);
    auto els = SymmetryGroup(g.size(), chosen).elements();
    reached = std::set<Permutation>(els.begin(), els.end());
  }
  return SymmetryGroup(g.size(), std::move(chosen));
}

/// Human-readable shape such as "4 2 2 2".
inline std::string shape_string(const Graph& g) {
  std::string s;
  for (int p = 0; p < g.part_count(); ++p) {
    if (p) s += ' ';
    s += std::to_string(g.part_size(p));
  }
  return s;
}

}  // namespace ohba
