#include <gtest/gtest.h>

#include <random>

#include "ohba/graph.hpp"
#include "oracles.hpp"

using namespace ohba;

TEST(Graph, BuildCounts) {
  const Graph one = build_multipartite({1});
  EXPECT_EQ(one.size(), 1);
  EXPECT_EQ(one.edge_count(), 0);

  const Graph k33 = build_multipartite({3, 3});
  EXPECT_EQ(k33.size(), 6);
  EXPECT_EQ(k33.edge_count(), 9);

  const Graph k4222 = build_multipartite({4, 2, 2, 2});
  EXPECT_EQ(k4222.size(), 10);
  EXPECT_EQ(k4222.edge_count(), 36);
}

TEST(Graph, EdgeCountFormula) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto sizes = oracle::random_shape(rng, 16);
    const Graph g = build_multipartite(sizes);
    int n = 0, inside = 0;
    for (int s : sizes) {
      n += s;
      inside += s * (s - 1) / 2;
    }
    EXPECT_EQ(g.edge_count(), n * (n - 1) / 2 - inside);
  }
}

TEST(Graph, BuildRejectsBadShapes) {
  EXPECT_THROW(build_multipartite(std::span<const int>{}), Error);
  EXPECT_THROW(build_multipartite({3, 0}), Error);
  EXPECT_THROW(build_multipartite({9, 8}), Error);
  try {
    build_multipartite({2, -1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Error::Kind::invalid_shape);
  }
}

TEST(Graph, PartMajorNumbering) {
  const Graph g = build_multipartite({2, 3, 1});
  EXPECT_EQ(g.part_of(0), 0);
  EXPECT_EQ(g.part_of(1), 0);
  EXPECT_EQ(g.part_of(2), 1);
  EXPECT_EQ(g.part_of(4), 1);
  EXPECT_EQ(g.part_of(5), 2);
  EXPECT_EQ(g.first_vertex(2), 5);
  EXPECT_EQ(g.part_vertices(1), 0b011100U);
}

TEST(Graph, DeleteEdges) {
  const Graph k33 = build_multipartite({3, 3});
  const Graph minus = delete_edges(k33, {Edge(0, 3)});
  EXPECT_EQ(minus.edge_count(), 8);
  EXPECT_FALSE(minus.adjacent(0, 3));
  EXPECT_FALSE(minus.adjacent(3, 0));
  EXPECT_EQ(minus.part_sizes(), k33.part_sizes());

  try {
    delete_edges(k33, {Edge(0, 1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Error::Kind::invalid_edit);
  }
  EXPECT_THROW(delete_edges(minus, {Edge(3, 0)}), Error);
  EXPECT_THROW(delete_edges(k33, {Edge(0, 9)}), Error);
}

TEST(Graph, GStarDeletion) {
  const Graph g = build_multipartite({4, 2, 2, 2});
  std::vector<Edge> cut;
  for (int i = 2; i <= 4; ++i) {
    for (int j = 2; j <= 4; ++j) {
      if (i != j) cut.emplace_back(2 * i, 2 * j + 1);
    }
  }
  EXPECT_EQ(cut.size(), 6U);
  EXPECT_EQ(delete_edges(g, cut).edge_count(), 30);
}

TEST(Graph, AdjacencyMatchesDefinition) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    Graph g = build_multipartite(oracle::random_shape(rng, 12));
    std::vector<Edge> cut;
    for (int u = 0; u < g.size(); ++u) {
      for (int v = u + 1; v < g.size(); ++v) {
        if (g.adjacent(u, v) && rng() % 5 == 0) cut.emplace_back(u, v);
      }
    }
    g = delete_edges(g, cut);
    for (int u = 0; u < g.size(); ++u) {
      EXPECT_FALSE(g.adjacent(u, u));
      for (int v = 0; v < g.size(); ++v) {
        EXPECT_EQ(g.adjacent(u, v), g.adjacent(v, u));
        EXPECT_EQ(g.adjacent(u, v), oracle::adjacent_by_definition(g, u, v));
      }
    }
  }
}

TEST(Graph, EqualFieldsEqualAdjacency) {
  const Graph base = build_multipartite({3, 2, 2});
  const Graph a = delete_edges(base, {Edge(0, 3), Edge(1, 5)});
  const Graph b = delete_edges(delete_edges(base, {Edge(5, 1)}), {Edge(3, 0)});
  ASSERT_EQ(a, b);
  for (int u = 0; u < a.size(); ++u) EXPECT_EQ(a.neighbors(u), b.neighbors(u));
}

TEST(Symmetry, Orders) {
  EXPECT_EQ(symmetry_group(build_multipartite({3, 3})).order(), 72U);
  EXPECT_EQ(symmetry_group(build_multipartite({4, 2, 2, 2})).order(), 1152U);
  EXPECT_EQ(symmetry_group(build_multipartite({1})).order(), 1U);
}

TEST(Symmetry, ProductFormula) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const auto sizes = oracle::random_shape(rng, 9);
    EXPECT_EQ(symmetry_group(build_multipartite(sizes)).order(), oracle::shell_order(sizes));
  }
}

TEST(Symmetry, GeneratorsPreserveAdjacency) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    Graph g = build_multipartite(oracle::random_shape(rng, 8));
    std::vector<Edge> cut;
    for (int u = 0; u < g.size(); ++u) {
      for (int v = u + 1; v < g.size(); ++v) {
        if (g.adjacent(u, v) && rng() % 4 == 0) cut.emplace_back(u, v);
      }
    }
    g = delete_edges(g, cut);
    const auto group = symmetry_group(g);
    for (const auto& sigma : group.generators()) {
      for (int u = 0; u < g.size(); ++u) {
        for (int v = 0; v < g.size(); ++v) {
          EXPECT_EQ(g.adjacent(u, v), g.adjacent(sigma[u], sigma[v]));
        }
      }
    }
  }
}

TEST(Symmetry, DeletedGraphsMatchBruteForce) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 25; ++t) {
    Graph g = build_multipartite(oracle::random_shape(rng, 7));
    std::vector<Edge> cut;
    for (int u = 0; u < g.size(); ++u) {
      for (int v = u + 1; v < g.size(); ++v) {
        if (g.adjacent(u, v) && rng() % 3 == 0) cut.emplace_back(u, v);
      }
    }
    g = delete_edges(g, cut);
    EXPECT_EQ(symmetry_group(g).order(), oracle::automorphisms_preserving_parts(g))
        << shape_string(g) << " with " << cut.size() << " deletions";
  }
}

TEST(Symmetry, ElementsStartWithIdentity) {
  const auto els = symmetry_group(build_multipartite({2, 2})).elements();
  ASSERT_EQ(els.size(), 8U);
  EXPECT_EQ(els.front(), (Permutation{0, 1, 2, 3}));
}
