#pragma once

#include "graftlab/multiindex.hpp"
#include "graftlab/ring.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graftlab {

enum class NodeKind { Leaf, Root, Vertex };

// Rooted ribbon forest. Edges point from the leaf side to the root side. The incoming
// edges of a vertex are ordered by their position in `edges()`, which fixes the ribbon
// structure; leaves and roots are additionally listed left to right.
class Forest {
 public:
  struct Node {
    NodeKind kind;
    std::string name;
  };
  struct Edge {
    int src;
    int dst;
  };

  // Validates every structural invariant; throws std::invalid_argument otherwise.
  Forest(std::vector<Node> nodes, std::vector<Edge> edges, std::vector<int> leaf_order, std::vector<int> root_order);

  // Standard shape of type k: a corolla per tree with at least two leaves, a bare edge otherwise.
  static Forest corollas(const MultiIndex& k);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& leaf_order() const { return leaf_order_; }
  const std::vector<int>& root_order() const { return root_order_; }
  std::vector<int> vertices() const;
  int node_index(const std::string& name) const;  // throws when absent

  int out_edge(int node) const { return out_edge_[static_cast<std::size_t>(node)]; }
  const std::vector<int>& in_edges(int node) const { return in_edges_[static_cast<std::size_t>(node)]; }

  // Leaf counts per tree in root order.
  MultiIndex type() const;

  // Path-from-root label of an edge: root position, then the ribbon position taken at each
  // vertex on the way up.
  std::vector<int> edge_label(int edge) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<int> leaf_order_;
  std::vector<int> root_order_;
  std::vector<int> out_edge_;
  std::vector<std::vector<int>> in_edges_;
};

enum class Polarity { Ascending, Descending };

// A point of the extended real line.
struct Height {
  int infinity = 0;  // -1, 0 or +1
  Scalar value = 0;

  static Height finite(Scalar v) { return {0, std::move(v)}; }
  static Height plus_infinity() { return {1, 0}; }
  static Height minus_infinity() { return {-1, 0}; }
  bool is_finite() const { return infinity == 0; }

  friend bool operator==(const Height& a, const Height& b) {
    return a.infinity == b.infinity && (a.infinity != 0 || a.value == b.value);
  }
  friend std::strong_ordering operator<=>(const Height& a, const Height& b) {
    if (a.infinity != b.infinity) return a.infinity <=> b.infinity;
    if (a.infinity != 0) return std::strong_ordering::equal;
    if (a.value < b.value) return std::strong_ordering::less;
    if (b.value < a.value) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};
std::string to_string(const Height& h);

// Ascending: leaves at +infinity, heights strictly decrease toward the roots (at -infinity).
// Descending: leaves at -infinity, heights strictly increase toward the roots (at +infinity).
class HeightedForest {
 public:
  HeightedForest(Forest base, std::map<int, Scalar> vertex_heights, Polarity polarity);

  const Forest& base() const { return base_; }
  Polarity polarity() const { return polarity_; }
  Height height(int node) const;
  // Open height interval swept by an edge, low end first.
  std::pair<Height, Height> edge_interval(int edge) const;
  HeightedForest translated(const Scalar& shift) const;
  std::vector<Scalar> vertex_heights() const;  // sorted, with repetition

 private:
  Forest base_;
  std::map<int, Scalar> heights_;
  Polarity polarity_;
};

MultiIndex forest_type(const HeightedForest& f);

// One component of the fiber product over an open height interval: a pair of branches,
// one from each forest, alive on the whole interval.
struct Strand {
  Height low;
  Height high;
  int up_edge;    // edge of the ascending forest
  int down_edge;  // edge of the descending forest
};

// A gluing record: a vertex of one forest meets a branch of the other at the vertex height.
// The node joins the strands of the vertex's incident edges that pair with that branch.
struct GluingNode {
  Scalar height;
  Polarity side;       // which forest owns the vertex
  int vertex;          // node index in that forest
  int opposite_edge;   // branch of the other forest through this height
  std::vector<int> strands;
};

struct HenriquesGraph {
  std::vector<Strand> strands;
  std::vector<GluingNode> nodes;
  std::vector<Scalar> node_heights;  // sorted distinct vertex heights of both forests
};

// Rejects configurations where an ascending and a descending vertex share a height.
HenriquesGraph henriques_graph(const HeightedForest& up, const HeightedForest& down);

// Number of strands alive at a regular height (not a vertex height).
int strands_at(const HenriquesGraph& g, const Scalar& h);

// n grafting heights base, base + L_1, ..., base + L_1 + ... + L_{n-1}; n = 0 means no cut.
struct GraftingLengths {
  int n = 0;
  std::vector<Scalar> lengths;  // n - 1 nonnegative entries
  Scalar base = 0;

  std::vector<Scalar> heights() const;  // validates
};

struct LeveledStrand {
  Strand strand;  // closed at any end that sits on a grafting height
  int level;      // 0 below the first grafting height, n above the last
};

struct LeveledGraph {
  std::vector<LeveledStrand> strands;
  std::vector<GluingNode> nodes;  // copied from the uncut graph
  int levels = 1;
};

// Cuts every strand crossing a grafting height. A grafting height equal to a vertex height is
// a degenerate configuration and throws std::domain_error.
LeveledGraph cut_at_levels(const HenriquesGraph& g, const GraftingLengths& lengths);

}  // namespace graftlab
