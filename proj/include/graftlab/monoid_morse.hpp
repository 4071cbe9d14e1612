#pragma once

#include "graftlab/categories.hpp"
#include "graftlab/semigroup.hpp"

#include <string>
#include <vector>

namespace graftlab {

// Built-in semigroups.
FiniteSemigroup cyclic_group(int n);
FiniteSemigroup symmetric_group_3();
FiniteSemigroup left_zero_semigroup(int n);
FiniteSemigroup min_semilattice();  // {0, 1} under min
FiniteSemigroup trivial_group();

// Registry ids of the six-semigroup corpus: Z/2, Z/3, Z/4, left-zero on two elements, the
// semilattice {0, 1}, S3.
std::vector<int> corpus_semigroups();

struct NamedMap {
  std::string name;
  int map = -1;
};
// Homomorphisms between corpus members and the helpers Z/8 and the trivial group.
std::vector<NamedMap> corpus_homomorphisms();
// Composable chains (application order) of two and three corpus homomorphisms.
std::vector<std::vector<NamedMap>> corpus_chains(int length);

// d, m and Delta of a strict dg bialgebra on A: d on (A,1,1) of degree -1, m: (A,2,1) -> (A,1,1),
// Delta: (A,1,1) -> (A,1,2), both of degree 0.
template <class Map>
struct BialgebraCore {
  Ring ring = Ring::integers();
  ModuleRef module;
  Map differential;
  Map product;
  Map coproduct;
};

// The f-bialgebra of a strict dg bialgebra: tensor differentials on vertical components, the
// single-vertex components spread from m and Delta through the V and D relations, zero elsewhere.
template <class Map>
Family<Map> strict_fbialgebra(const BialgebraCore<Map>& core, const IndexBounds& b);

BialgebraCore<CellMap> semigroup_core(int semigroup, const Ring& ring);
BialgebraCore<BoxMap> semigroup_core_box(int semigroup, const Ring& ring);
// Chains on the circle as a dg Hopf algebra: basis 1, g, u, gu with |u| = 1, du = g - 1,
// g^2 = 1, u^2 = 0, gu = ug, Delta g = g (x) g, Delta u = u (x) 1 + g (x) u.
BialgebraCore<BoxMap> circle_core(const Ring& ring);

// The Morse f-bialgebra of a finite semigroup built directly on basis grids: single ascending
// vertices multiply the two marked rows entrywise, single descending vertices duplicate the marked
// column. Rejects non-associative tables unless `allow_nonassociative`.
Family<CellMap> morse_fbialgebra(int semigroup, const Ring& ring, const IndexBounds& b, bool allow_nonassociative = false);

// f^{(x) ab} on the vertical components, zero elsewhere. Rejects non-homomorphisms.
Family<CellMap> morse_pushforward(int map, const Ring& ring, const IndexBounds& b);

// Simplex of a composable chain h_1, .., h_n (h_1 applied first): vertex i carries the target of
// h_{n-i}, edges are pushforwards of composites and every higher face is zero.
Simplex<CellMap> morse_simplex(std::span<const int> chain, const Ring& ring, const IndexBounds& b);

// Group G acting on the left and group H on the right of a finite set X.
struct ActionTriple {
  FiniteSemigroup G;
  std::vector<std::string> X;
  FiniteSemigroup H;
  std::vector<std::vector<int>> left;   // left[g][x] = g.x
  std::vector<std::vector<int>> right;  // right[x][h] = x.h
};

// Throws std::invalid_argument naming the first failed axiom.
void validate(const ActionTriple& t);
// Semigroup on G, X, H and an absorbing point: products of G, of H, the two actions, and pt for
// every other pair. Elements are listed in that order.
FiniteSemigroup triple_to_monoid(const ActionTriple& t);

// Blocks of the Morse structure of triple_to_monoid(t) on (R[G], R[X], R[H]) as a bimodule family.
// Outputs leaving the expected block (products that fall to pt) are dropped.
Family<BoxMap> extract_bimodule_blocks(const ActionTriple& t, const Ring& ring, const IndexBounds& b);

}  // namespace graftlab
