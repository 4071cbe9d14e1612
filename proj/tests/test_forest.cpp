#include "graftlab/forest.hpp"

#include <doctest.h>

#include <set>
#include <stdexcept>

using namespace graftlab;

namespace {

HeightedForest single_vertex(const MultiIndex& k, Scalar h, Polarity p) {
  Forest f = Forest::corollas(k);
  std::map<int, Scalar> heights;
  for (int v : f.vertices()) heights[v] = h;
  return HeightedForest(f, heights, p);
}

HeightedForest vertical(int trees, Polarity p) { return HeightedForest(Forest::corollas(MultiIndex::vertical(trees)), {}, p); }

}  // namespace

TEST_CASE("forest type") {
  CHECK(forest_type(single_vertex({2}, 0, Polarity::Ascending)) == MultiIndex{2});
  CHECK(forest_type(vertical(2, Polarity::Ascending)) == MultiIndex{1, 1});
  CHECK(forest_type(single_vertex({3}, 0, Polarity::Descending)) == MultiIndex{3});
}

TEST_CASE("malformed forests are rejected") {
  using N = Forest::Node;
  // vertex with a single input
  CHECK_THROWS_AS(Forest({{NodeKind::Leaf, "a"}, {NodeKind::Vertex, "v"}, {NodeKind::Root, "r"}}, {{0, 1}, {1, 2}}, {0}, {2}),
                  std::invalid_argument);
  // leaf order against the ribbon order
  std::vector<N> nodes = {{NodeKind::Leaf, "a"}, {NodeKind::Leaf, "b"}, {NodeKind::Vertex, "v"}, {NodeKind::Root, "r"}};
  CHECK_NOTHROW(Forest(nodes, {{0, 2}, {1, 2}, {2, 3}}, {0, 1}, {3}));
  CHECK_THROWS_AS(Forest(nodes, {{0, 2}, {1, 2}, {2, 3}}, {1, 0}, {3}), std::invalid_argument);
  // heights not monotone
  Forest f(nodes, {{0, 2}, {1, 2}, {2, 3}}, {0, 1}, {3});
  CHECK_NOTHROW(HeightedForest(f, {{2, Scalar(0)}}, Polarity::Ascending));
  CHECK_THROWS_AS(HeightedForest(f, {}, Polarity::Ascending), std::invalid_argument);
}

TEST_CASE("edge labels follow the ribbon path from the root") {
  Forest f = Forest::corollas({1, 2});
  std::set<std::vector<int>> labels;
  for (std::size_t e = 0; e < f.edges().size(); ++e) labels.insert(f.edge_label(static_cast<int>(e)));
  CHECK(labels == std::set<std::vector<int>>{{0}, {1}, {1, 0}, {1, 1}});
}

TEST_CASE("henriques graph of the Hopf pattern") {
  auto up = single_vertex({2}, 0, Polarity::Ascending);
  auto down = single_vertex({2}, 1, Polarity::Descending);
  auto g = henriques_graph(up, down);
  CHECK(strands_at(g, Scalar(-1)) == 2);
  CHECK(strands_at(g, Scalar(1, 2)) == 4);
  CHECK(strands_at(g, Scalar(2)) == 2);
  CHECK(g.nodes.size() == 4);
  int at0 = 0, at1 = 0;
  for (const auto& n : g.nodes) (n.height == 0 ? at0 : at1)++;
  CHECK(at0 == 2);
  CHECK(at1 == 2);
  // each node at 0 joins one strand below with two above
  for (const auto& n : g.nodes) CHECK(n.strands.size() == 3);
}

TEST_CASE("henriques graph of vertical lines and a line") {
  auto g = henriques_graph(vertical(1, Polarity::Ascending), vertical(1, Polarity::Descending));
  REQUIRE(g.strands.size() == 1);
  CHECK(g.strands[0].low == Height::minus_infinity());
  CHECK(g.strands[0].high == Height::plus_infinity());
  CHECK(g.nodes.empty());

  auto h = henriques_graph(single_vertex({2}, 0, Polarity::Ascending), vertical(1, Polarity::Descending));
  CHECK(strands_at(h, Scalar(-1)) == 1);
  CHECK(strands_at(h, Scalar(1)) == 2);
  CHECK(h.nodes.size() == 1);
}

TEST_CASE("strand count is the product of branch counts") {
  auto up = single_vertex({3, 2}, 0, Polarity::Ascending);
  auto down = single_vertex({2, 1, 2}, 5, Polarity::Descending);
  auto g = henriques_graph(up, down);
  CHECK(strands_at(g, Scalar(-1)) == 2 * 5);
  CHECK(strands_at(g, Scalar(1)) == 5 * 5);
  CHECK(strands_at(g, Scalar(6)) == 5 * 3);
}

TEST_CASE("translation invariance") {
  auto up = single_vertex({2, 2}, 0, Polarity::Ascending);
  auto down = single_vertex({3}, 2, Polarity::Descending);
  auto g = henriques_graph(up, down);
  auto t = henriques_graph(up.translated(Scalar(7, 3)), down.translated(Scalar(7, 3)));
  REQUIRE(g.strands.size() == t.strands.size());
  REQUIRE(g.nodes.size() == t.nodes.size());
  for (std::size_t i = 0; i < g.strands.size(); ++i) {
    CHECK(g.strands[i].up_edge == t.strands[i].up_edge);
    CHECK(g.strands[i].down_edge == t.strands[i].down_edge);
    CHECK(g.strands[i].low.infinity == t.strands[i].low.infinity);
    if (g.strands[i].low.is_finite() && g.strands[i].high.is_finite())
      CHECK(g.strands[i].high.value - g.strands[i].low.value == t.strands[i].high.value - t.strands[i].low.value);
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    CHECK(g.nodes[i].strands == t.nodes[i].strands);
    CHECK(t.nodes[i].height - g.nodes[i].height == Scalar(7, 3));
  }
}

TEST_CASE("degenerate heights are rejected") {
  CHECK_THROWS_AS(henriques_graph(single_vertex({2}, 1, Polarity::Ascending), single_vertex({2}, 1, Polarity::Descending)),
                  std::domain_error);
  auto g = henriques_graph(single_vertex({2}, 0, Polarity::Ascending), single_vertex({2}, 1, Polarity::Descending));
  CHECK_THROWS_AS(cut_at_levels(g, {1, {}, Scalar(1)}), std::domain_error);
}

TEST_CASE("cutting at grafting heights") {
  auto g = henriques_graph(single_vertex({2}, 0, Polarity::Ascending), single_vertex({2}, 1, Polarity::Descending));
  auto cut = cut_at_levels(g, {1, {}, Scalar(1, 2)});
  CHECK(cut.strands.size() == 12);  // the 4 middle strands become 8
  CHECK(cut.levels == 2);
  std::set<int> levels;
  for (const auto& s : cut.strands) levels.insert(s.level);
  CHECK(levels == std::set<int>{0, 1});
  for (const auto& s : cut.strands) {
    if (s.level == 0) CHECK(s.strand.high <= Height::finite(Scalar(1, 2)));
    if (s.level == 1) CHECK(s.strand.low >= Height::finite(Scalar(1, 2)));
  }

  auto same = cut_at_levels(g, {0, {}, 0});
  CHECK(same.strands.size() == g.strands.size());
  CHECK(same.levels == 1);

  auto line = henriques_graph(vertical(1, Polarity::Ascending), vertical(1, Polarity::Descending));
  auto three = cut_at_levels(line, {2, {Scalar(1)}, Scalar(0)});
  REQUIRE(three.strands.size() == 3);
  CHECK(three.strands[0].level == 0);
  CHECK(three.strands[1].level == 1);
  CHECK(three.strands[2].level == 2);
  CHECK(three.strands[1].strand.low == Height::finite(0));
  CHECK(three.strands[1].strand.high == Height::finite(1));
}

TEST_CASE("cutting refines the strand intervals") {
  auto g = henriques_graph(single_vertex({2, 3}, 0, Polarity::Ascending), single_vertex({2, 2}, 3, Polarity::Descending));
  auto cut = cut_at_levels(g, {3, {Scalar(1), Scalar(3, 2)}, Scalar(-1, 2)});
  for (std::size_t i = 0; i < g.strands.size(); ++i) {
    std::vector<LeveledStrand> pieces;
    for (const auto& s : cut.strands)
      if (s.strand.up_edge == g.strands[i].up_edge && s.strand.down_edge == g.strands[i].down_edge) pieces.push_back(s);
    REQUIRE_FALSE(pieces.empty());
    CHECK(pieces.front().strand.low == g.strands[i].low);
    CHECK(pieces.back().strand.high == g.strands[i].high);
    for (std::size_t j = 1; j < pieces.size(); ++j) {
      CHECK(pieces[j - 1].strand.high == pieces[j].strand.low);
      CHECK(pieces[j].level == pieces[j - 1].level + 1);
    }
  }
}
