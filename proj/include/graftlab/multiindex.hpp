#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace graftlab {

// Leaf counts per tree of a planar forest, k = (k_1, ..., k_a) with k_i >= 1.
// The empty index only appears as a side of a bimodule index.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> entries);
  explicit MultiIndex(std::vector<int> entries);

  // 1_a
  static MultiIndex vertical(int trees);

  std::span<const int> entries() const { return entries_; }
  int operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  bool is_vertical() const;         // all entries 1
  bool is_almost_vertical() const;  // all entries 1 or 2

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> entries_;
};

int leaves(const MultiIndex& k);
int trees(const MultiIndex& k);
// Number of internal vertices, leaves minus trees.
int vertex_count(const MultiIndex& k);

// {1..|k|} minus the tree-end positions k_1, k_1+k_2, ..., |k|.
std::vector<int> vertex_set(const MultiIndex& k);
// Count of vertex_set elements >= h; requires 1 <= h <= |k|+1.
int vertices_at_or_above(const MultiIndex& k, int h);
// Drops the trees with a single leaf.
MultiIndex drop_unit_trees(const MultiIndex& k);

// `upper` glued on top of `lower`; requires leaves(lower) == trees(upper).
MultiIndex glue(const MultiIndex& upper, const MultiIndex& lower);

struct Splitting {
  MultiIndex lower;
  MultiIndex upper;
  bool operator==(const Splitting&) const = default;
};

// All (lower, upper) with glue(upper, lower) == k. Ordered lexicographically on
// the per-tree compositions, larger leading parts first.
std::vector<Splitting> splittings(const MultiIndex& k);
const std::vector<Splitting>& cached_splittings(const MultiIndex& k);

// Compositions of n, larger leading parts first: (3), (2,1), (1,2), (1,1,1).
std::vector<MultiIndex> compositions(int n);
// Every nonempty multi-index with at most max_leaves leaves, by leaves then composition order.
std::vector<MultiIndex> multi_indices_up_to(int max_leaves);

// Parity of the vertex reordering Vert(glue(upper, lower)) -> Vert(lower) then Vert(upper),
// closed formula sum_h (upper_h - 1) * v_{>=h}(lower).
int gluing_sign(const MultiIndex& upper, const MultiIndex& lower);
// Same parity computed by building the vertex bijection and counting inversions.
int gluing_sign_by_permutation(const MultiIndex& upper, const MultiIndex& lower);

// Where each vertex of glue(upper, lower), in natural order, comes from: a vertex of
// `upper` (non-final leaf of an upper tree) or of `lower` (non-final upper tree of a
// lower block). `index` is the 0-based position in vertex_set of that layer.
struct VertexOrigin {
  bool from_upper;
  int index;
};
std::vector<VertexOrigin> glued_vertex_origins(const MultiIndex& upper, const MultiIndex& lower);

// Dimension of the translation symmetry of a biforest of type (k, l): a~ if b~ = 0,
// b~ if a~ = 0, 1 otherwise, with a~, b~ the numbers of non-unit trees.
int symmetry_dim(const MultiIndex& k, const MultiIndex& l);

std::string to_string(const MultiIndex& k);
// Accepts "2,1,3", "(2,1,3)", "[2,1,3]" and "" / "()" for the empty index.
MultiIndex parse_multi_index(std::string_view text);

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& k) const noexcept;
};

}  // namespace graftlab
