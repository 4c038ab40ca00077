#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ohba/graph.hpp"
#include "ohba/list_assignment.hpp"

namespace ohba {

/// Orbit representative of (graph, lists) under graph symmetry x color bijection.
struct CanonicalForm {
  std::vector<std::uint8_t> bytes;

  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
      s += digits[b >> 4];
      s += digits[b & 0xF];
    }
    return s;
  }

  auto operator<=>(const CanonicalForm&) const = default;
};

/// Reusable canonicalizer for one graph; holds every group element as a pair
/// of byte lookup tables so that mapping a vertex mask costs two loads.
///
/// A color is identified with its holder set L^{-1}(c). The form is the graph
/// header followed by the sorted holder masks, minimized over the group.
/// Sorting quotients out color bijections exactly.
class Canonicalizer {
 public:
  explicit Canonicalizer(const Graph& g) : graph_(g) {
    if (g.size() > kMaxVertices) throw Error(Error::Kind::resource, "graph too large");
    for (const Permutation& sigma : symmetry_group(g).elements()) {
      Tables t{};
      for (int b = 0; b < 256; ++b) {
        VertexSet lo = 0, hi = 0;
        for (int i = 0; i < 8; ++i) {
          if (!((b >> i) & 1)) continue;
          if (i < g.size()) lo |= vertex_bit(sigma[i]);
          if (i + 8 < g.size()) hi |= vertex_bit(sigma[i + 8]);
        }
        t.lo[b] = static_cast<std::uint16_t>(lo);
        t.hi[b] = static_cast<std::uint16_t>(hi);
      }
      tables_.push_back(t);
    }
    header_.push_back(static_cast<std::uint8_t>(g.size()));
    header_.push_back(static_cast<std::uint8_t>(g.part_count()));
    for (int s : g.part_sizes()) header_.push_back(static_cast<std::uint8_t>(s));
    header_.push_back(static_cast<std::uint8_t>(g.deleted().size()));
    for (const Edge& e : g.deleted()) {
      header_.push_back(static_cast<std::uint8_t>(e.u));
      header_.push_back(static_cast<std::uint8_t>(e.v));
    }
  }

  std::size_t group_order() const noexcept { return tables_.size(); }

  CanonicalForm operator()(const ListAssignment& lists) const {
    require_defined_on(graph_, lists);
    std::vector<std::uint16_t> holders;
    for (int c : members(lists.colors())) {
      holders.push_back(static_cast<std::uint16_t>(lists.holders(c)));
    }
    return from_holders(holders);
  }

  /// Same form computed directly from the multiset of holder sets.
  CanonicalForm from_holders(std::span<const std::uint16_t> holders) const {
    std::vector<std::uint16_t> best, cur(holders.size());
    for (const Tables& t : tables_) {
      for (std::size_t i = 0; i < holders.size(); ++i) {
        cur[i] = t.lo[holders[i] & 0xFF] | t.hi[holders[i] >> 8];
      }
      std::sort(cur.begin(), cur.end());
      if (best.empty() || cur < best) best = cur;
    }
    CanonicalForm f{header_};
    f.bytes.push_back(static_cast<std::uint8_t>(holders.size()));
    for (auto m : best) {
      f.bytes.push_back(static_cast<std::uint8_t>(m >> 8));
      f.bytes.push_back(static_cast<std::uint8_t>(m & 0xFF));
    }
    return f;
  }

 private:
  struct Tables {
    std::array<std::uint16_t, 256> lo;
    std::array<std::uint16_t, 256> hi;
  };

  Graph graph_;
  std::vector<std::uint8_t> header_;
  std::vector<Tables> tables_;
};

inline CanonicalForm canonicalize(const Graph& g, const ListAssignment& lists) {
  return Canonicalizer(g)(lists);
}

}  // namespace ohba
