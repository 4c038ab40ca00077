#include <gtest/gtest.h>

#include <random>

#include "ohba/io.hpp"
#include "oracles.hpp"

using namespace ohba;

namespace {

Error::Kind kind_of(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return Error::Kind::resource;
}

std::string message_of(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Instance, K33Disjoint) {
  const auto inst = parse_instance(
      "parts 3 3\nk 2\nL 0: 1 2\nL 1: 1 3\nL 2: 4 5\nL 3: 1 4\nL 4: 1 5\nL 5: 2 3\n");
  const auto want = make_k33_bad(K33Variant::disjoint);
  EXPECT_EQ(inst.graph, want.graph);
  EXPECT_EQ(inst.lists, want.lists);
}

TEST(Instance, SingleVertex) {
  const auto inst = parse_instance("parts 1\nk 1\nL 0: 1\n");
  EXPECT_EQ(inst.graph.size(), 1);
  EXPECT_EQ(inst.lists.list(0), make_colors({1}));
}

TEST(Instance, CommentsAndInferredK) {
  const auto inst = parse_instance(
      "# a path on three vertices\nparts 1 1 1   # three singletons\n"
      "del 0 2\n\nL 2: 5 6 7\nL 0: 1 2 3\nL 1: 4 5 6 9\n");
  EXPECT_EQ(inst.lists.k(), 3);
  EXPECT_FALSE(inst.graph.adjacent(0, 2));
  EXPECT_EQ(inst.lists.list(1), make_colors({4, 5, 6, 9}));
}

TEST(Instance, Errors) {
  EXPECT_EQ(kind_of("parts 2\ndel 0 1\nL 0: 1\nL 1: 2\n"), Error::Kind::invalid_edit);
  EXPECT_NE(message_of("parts 2\nL 0: 1\nL 7: 1\n").find("line 3"), std::string::npos);
  EXPECT_NE(message_of("parts 2\nL 0: 1\nL 7: 1\n").find("unknown vertex"), std::string::npos);
  EXPECT_NE(message_of("parts 1\nL 0: 64\n").find("outside"), std::string::npos);
  EXPECT_NE(message_of("parts 1\nk x\n").find("line 2"), std::string::npos);
  EXPECT_EQ(kind_of("parts 1\nL 0 1\n"), Error::Kind::invalid_input);
  EXPECT_EQ(kind_of("parts 1\nL 0: 1\nL 0: 2\n"), Error::Kind::invalid_input);
  EXPECT_EQ(kind_of("parts 2\nL 0: 1\n"), Error::Kind::invalid_input);
  EXPECT_EQ(kind_of("L 0: 1\n"), Error::Kind::invalid_input);
  EXPECT_EQ(kind_of("parts 1\nk 3\nL 0: 1\n"), Error::Kind::invalid_input);
  EXPECT_EQ(kind_of("Parts 1\nL 0: 1\n"), Error::Kind::invalid_input);
  EXPECT_EQ(kind_of("parts 0\n"), Error::Kind::invalid_input);
  EXPECT_EQ(kind_of("parts 9 9\n"), Error::Kind::invalid_input);
}

TEST(Instance, RoundTrip) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 300; ++t) {
    Graph g = build_multipartite(oracle::random_shape(rng, 12));
    std::vector<Edge> cut;
    for (int u = 0; u < g.size(); ++u) {
      for (int v = u + 1; v < g.size(); ++v) {
        if (g.adjacent(u, v) && rng() % 6 == 0) cut.emplace_back(u, v);
      }
    }
    g = delete_edges(g, cut);
    const Instance inst{g, oracle::random_lists(rng, g.size(), 2, 64, 3)};
    const std::string text = emit_instance(inst);
    const auto back = parse_instance(text);
    EXPECT_EQ(back.graph, inst.graph);
    EXPECT_EQ(back.lists, inst.lists);
    EXPECT_EQ(emit_instance(back), text);
  }
}

TEST(Certificate, ColoringLines) {
  const Graph k2 = build_multipartite({1, 1});
  const auto la = ListAssignment::from_vectors({{1, 2}, {1, 2}});
  const auto text = emit_certificate(Certificate(*solve_generic(k2, la)));
  EXPECT_NE(text.find("version: 1"), std::string::npos);
  EXPECT_NE(text.find("color 0 = 1\ncolor 1 = 2\n"), std::string::npos);
  const auto back = parse_certificate(text);
  EXPECT_EQ(std::get<Coloring>(back).color, (std::vector<int>{1, 2}));
}

TEST(Certificate, Unique3Bundle) {
  const auto inst = make_unique3(4);
  const auto cert = to_certificate(solve_by_partitions(inst.graph, inst.lists));
  const auto text = emit_certificate(cert);
  std::size_t blocks = 0;
  for (std::size_t pos = 0; (pos = text.find("violator:\n", pos)) != std::string::npos; ++pos) ++blocks;
  EXPECT_EQ(blocks, 125U);
  const auto back = parse_certificate(text);
  EXPECT_EQ(std::get<NonColorability>(back), std::get<NonColorability>(cert));
  EXPECT_TRUE(verify_certificate(inst, back));
}

TEST(Certificate, RoundTripAndVerify) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    const Graph g = build_multipartite(oracle::random_shape(rng, 9));
    const int k = 1 + static_cast<int>(rng() % 3);
    const Instance inst{g, oracle::random_lists(rng, g.size(), k, k + 2)};
    const auto cert = to_certificate(solve_by_partitions(g, inst.lists));
    const auto back = parse_certificate(emit_certificate(cert));
    EXPECT_EQ(emit_certificate(back), emit_certificate(cert));
    EXPECT_TRUE(verify_certificate(inst, back));
  }
}

TEST(Certificate, Exhausted) {
  const auto gs = make_gstar(4);
  const Certificate cert = SearchExhausted{};
  const auto back = parse_certificate(emit_certificate(cert));
  EXPECT_TRUE(std::holds_alternative<SearchExhausted>(back));
  EXPECT_TRUE(verify_certificate(gs, back));
  const Instance easy{build_multipartite({1, 1}), ListAssignment::from_vectors({{1, 2}, {1, 2}})};
  EXPECT_FALSE(verify_certificate(easy, back));
}

TEST(Certificate, Malformed) {
  EXPECT_THROW(parse_certificate("kind: certificate\nverdict: colorable\n"), Error);
  EXPECT_THROW(parse_certificate("version: 1\nverdict: maybe\n"), Error);
  EXPECT_THROW(parse_certificate("version: 1\nverdict: colorable\ncolor 1 = 2\n"), Error);
  EXPECT_THROW(parse_certificate("version: 1\nverdict: noncolorable\nviolators: 2\nviolator:\n  x: 0\n"),
               Error);
  EXPECT_THROW(parse_certificate("version: 1\nverdict: noncolorable\n  x: 0\n"), Error);
}

TEST(Report, RoundTrip) {
  auto r = census_k33();
  r.seed = 99;
  r.alerts.push_back("item 3: example: with colons");
  const auto text = emit_report(r);
  EXPECT_NE(text.find("bad_iso_classes: 3"), std::string::npos);
  const auto back = parse_report(text);
  EXPECT_TRUE(back.same_content(r));
  EXPECT_EQ(emit_report(back), text);
  EXPECT_EQ(emit_report(r, false).find("wall_ms"), std::string::npos);
}

TEST(Report, Malformed) {
  EXPECT_THROW(parse_report("name: x\n"), Error);
  EXPECT_THROW(parse_report("version: 2\n"), Error);
  EXPECT_THROW(parse_report("version: 1\nbogus: 1\n"), Error);
  EXPECT_THROW(parse_report("version: 1\nclasses:\n  form: 00\n"), Error);
}
