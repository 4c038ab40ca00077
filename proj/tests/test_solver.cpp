#include <gtest/gtest.h>

#include <random>

#include "ohba/constructions.hpp"
#include "ohba/matching.hpp"
#include "ohba/solver.hpp"
#include "oracles.hpp"

using namespace ohba;

TEST(Partitions, BellNumbers) {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(restricted_growth_strings(n).size(), bell[n]);
  const auto rgs = restricted_growth_strings(3);
  const std::vector<std::vector<int>> want{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 2}};
  EXPECT_EQ(rgs, want);
  const auto five = restricted_growth_strings(5);
  EXPECT_TRUE(std::is_sorted(five.begin(), five.end()));
}

TEST(Partitions, GroupingsCoverPart) {
  for (const auto& grouping : groupings_of(0b111100)) {
    VertexSet seen = 0;
    for (VertexSet s : grouping) {
      EXPECT_EQ(s & seen, 0U);
      seen |= s;
    }
    EXPECT_EQ(seen, 0b111100U);
  }
}

TEST(Hall, Examples) {
  auto out = hall_or_matching({{make_colors({1}), make_colors({1})}});
  ASSERT_TRUE(std::holds_alternative<Violator>(out));
  EXPECT_EQ(popcount(std::get<Violator>(out).left), 2);
  EXPECT_EQ(popcount(std::get<Violator>(out).colors), 1);

  out = hall_or_matching({{make_colors({1}), make_colors({2}), make_colors({3})}});
  ASSERT_TRUE(std::holds_alternative<Matching>(out));
  EXPECT_EQ(std::get<Matching>(out).color_of, (std::vector<int>{1, 2, 3}));
}

TEST(Hall, DualityAgainstBruteForce) {
  std::mt19937_64 rng(1234);
  for (int t = 0; t < 3000; ++t) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const int m = 1 + static_cast<int>(rng() % 8);
    BipartiteIncidence b;
    for (int i = 0; i < n; ++i) b.left.push_back(rng() & ((ColorSet{1} << m) - 1));
    const auto mm = maximum_matching(b);
    int size = 0;
    for (int c : mm) size += c >= 0;
    const int deficiency = oracle::max_deficiency(b.left);
    EXPECT_EQ(size, n - deficiency);  // Konig
    const auto out = hall_or_matching(b);
    if (deficiency == 0) {
      ASSERT_TRUE(std::holds_alternative<Matching>(out));
      const auto& match = std::get<Matching>(out).color_of;
      std::set<int> used;
      for (int i = 0; i < n; ++i) {
        EXPECT_TRUE((b.left[i] >> match[i]) & 1U);
        EXPECT_TRUE(used.insert(match[i]).second);
      }
    } else {
      ASSERT_TRUE(std::holds_alternative<Violator>(out));
      const auto& v = std::get<Violator>(out);
      ColorSet nb = 0;
      for (int i : members(v.left)) nb |= b.left[i];
      EXPECT_EQ(nb, v.colors);
      EXPECT_EQ(v.deficiency(), deficiency);
      EXPECT_EQ(popcount(v.left), oracle::largest_max_deficiency_set(b.left));
    }
  }
}

TEST(Contract, Examples) {
  const auto inst = make_k33_bad(K33Variant::disjoint);
  const auto& g = inst.graph;
  std::vector<VertexSet> singles;
  for (int v = 0; v < 6; ++v) singles.push_back(vertex_bit(v));
  const auto id = contract(g, inst.lists, singles);
  EXPECT_EQ(id.lists, inst.lists.lists());
  EXPECT_EQ(popcount(id.adjacency[0]), 3);

  // {u1, v1}, {u2, v2}, then singletons w1, w2
  const auto c = contract(g, inst.lists, {0b000011, 0b011000, 0b000100, 0b100000});
  EXPECT_EQ(c.lists[0], make_colors({1}));
  EXPECT_EQ(c.lists[1], make_colors({1}));
  const auto out = hall_or_matching(c.incidence());
  ASSERT_TRUE(std::holds_alternative<Violator>(out));
  EXPECT_EQ(std::get<Violator>(out).left, 0b11U);
  EXPECT_EQ(std::get<Violator>(out).colors, make_colors({1}));

  const auto empty = contract(g, inst.lists, {0b000101, 0b000010, 0b111000});
  EXPECT_EQ(empty.lists[0], 0U);  // {1,2} and {4,5}

  EXPECT_THROW(contract(g, inst.lists, {0b001001, 0b110110}), Error);
  EXPECT_THROW(contract(g, inst.lists, {0b000111}), Error);
  try {
    contract(g, inst.lists, {0b000111, 0b011000, 0b011000});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Error::Kind::invalid_partition);
  }
}

TEST(Generic, Examples) {
  const auto bad = make_k33_bad(K33Variant::disjoint);
  EXPECT_FALSE(solve_generic(bad.graph, bad.lists).has_value());

  const Graph k2 = build_multipartite({1, 1});
  const auto c = solve_generic(k2, ListAssignment::from_vectors({{1, 2}, {1, 2}}));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->color, (std::vector<int>{1, 2}));

  auto inst = make_unique4(Unique4Spec::standard(4, 2, 0));
  EXPECT_FALSE(solve_generic(inst.graph, inst.lists).has_value());
  const auto changed = inst.lists.with_list(four_two::u(2), Unique4Spec::standard(4, 2, 0).b());
  const auto col = solve_generic(inst.graph, changed);
  ASSERT_TRUE(col.has_value());
  EXPECT_TRUE(verify_coloring(inst.graph, changed, *col));
}

TEST(Generic, LexicographicallyFirst) {
  const Graph g = build_multipartite({1, 1, 1});
  const auto la = ListAssignment::from_vectors({{3, 5}, {3, 5}, {3, 4, 5}});
  EXPECT_EQ(solve_generic(g, la)->color, (std::vector<int>{3, 5, 4}));
}

TEST(Partition, Examples) {
  const auto u3 = make_unique3(4);
  const auto verdict = solve_by_partitions(u3.graph, u3.lists);
  ASSERT_TRUE(std::holds_alternative<NonColorability>(verdict));
  EXPECT_EQ(std::get<NonColorability>(verdict).violators.size(), 125U);
  EXPECT_TRUE(verify_noncolorability(u3.graph, u3.lists, std::get<NonColorability>(verdict)));
  EXPECT_FALSE(solve_generic(u3.graph, u3.lists).has_value());

  const Graph k22 = build_multipartite({2, 2});
  const auto same = ListAssignment::from_vectors({{1, 2}, {1, 2}, {1, 2}, {1, 2}});
  const auto ok = solve_by_partitions(k22, same);
  ASSERT_TRUE(std::holds_alternative<Coloring>(ok));
  EXPECT_TRUE(verify_coloring(k22, same, std::get<Coloring>(ok)));

  const Graph cut = delete_edges(k22, {Edge(0, 2)});
  EXPECT_THROW(solve_by_partitions(cut, ListAssignment::from_vectors({{1}, {1}, {1}, {1}})), Error);
  EXPECT_THROW(solve_by_partitions(build_multipartite({5}), ListAssignment::from_vectors({{1}, {1}, {1}, {1}, {1}})),
               Error);
}

TEST(Partition, AgreesWithGenericAndBruteForce) {
  std::mt19937_64 rng(555);
  for (int t = 0; t < 1500; ++t) {
    const Graph g = build_multipartite(oracle::random_shape(rng, 8));
    const int k = 1 + static_cast<int>(rng() % 3);
    const auto la = oracle::random_lists(rng, g.size(), k, k + 2, 1);
    const auto generic = solve_generic(g, la);
    const auto parts = solve_by_partitions(g, la);
    const bool truth = oracle::colorable(g, la);
    EXPECT_EQ(generic.has_value(), truth);
    EXPECT_EQ(is_colorable(parts), truth);
    if (generic) {
      EXPECT_TRUE(verify_coloring(g, la, *generic));
    }
    if (const auto* c = std::get_if<Coloring>(&parts)) {
      EXPECT_TRUE(verify_coloring(g, la, *c));
    }
    if (const auto* nc = std::get_if<NonColorability>(&parts)) {
      EXPECT_TRUE(verify_noncolorability(g, la, *nc));
    }
  }
}

TEST(Generic, DeletedEdgesAgainstBruteForce) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 500; ++t) {
    Graph g = build_multipartite(oracle::random_shape(rng, 7));
    std::vector<Edge> cut;
    for (int u = 0; u < g.size(); ++u) {
      for (int v = u + 1; v < g.size(); ++v) {
        if (g.adjacent(u, v) && rng() % 3 == 0) cut.emplace_back(u, v);
      }
    }
    g = delete_edges(g, cut);
    const auto la = oracle::random_lists(rng, g.size(), 2, 4);
    const auto c = solve_generic(g, la);
    EXPECT_EQ(c.has_value(), oracle::colorable(g, la));
    if (c) {
      EXPECT_TRUE(verify_coloring(g, la, *c));
    }
  }
}

TEST(Verify, RejectsTampering) {
  const auto u3 = make_unique3(4);
  auto nc = std::get<NonColorability>(solve_by_partitions(u3.graph, u3.lists));
  auto dropped = nc;
  dropped.violators.pop_back();
  EXPECT_FALSE(verify_noncolorability(u3.graph, u3.lists, dropped));
  auto duplicated = nc;
  duplicated.violators.back() = duplicated.violators.front();
  EXPECT_FALSE(verify_noncolorability(u3.graph, u3.lists, duplicated));
  auto widened = nc;
  widened.violators[3].y |= color_bit(40);
  EXPECT_FALSE(verify_noncolorability(u3.graph, u3.lists, widened));

  const Graph k2 = build_multipartite({1, 1});
  const auto la = ListAssignment::from_vectors({{1, 2}, {1, 2}});
  EXPECT_FALSE(verify_coloring(k2, la, Coloring{{1, 1}}));
  EXPECT_FALSE(verify_coloring(k2, la, Coloring{{1, 3}}));
  EXPECT_FALSE(verify_coloring(k2, la, Coloring{{1}}));
}

TEST(Generic, SizeGuard) {
  EXPECT_EQ(solve_generic(build_multipartite({1}), ListAssignment::from_vectors({{0}}))->color,
            (std::vector<int>{0}));
  EXPECT_THROW(solve_generic(build_multipartite({1, 1}), ListAssignment::from_vectors({{0}})), Error);
}
