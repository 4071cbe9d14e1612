#pragma once

#include "graftlab/cellmap.hpp"
#include "graftlab/gradedalg.hpp"
#include "graftlab/multiindex.hpp"
#include "graftlab/parallel.hpp"
#include "graftlab/signs.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace graftlab {

// The four graded linear categories share one representation: a morphism is a family of maps
// indexed by pairs of multi-indices.
//   Bi          (k, l), component (A^{n(l)})^{|k|} -> (B^{|l|})^{n(k)}
//   Ascending   (k, 1_w), the one-sided category with every box w columns wide (w = 1 is the
//               plain ascending category; w > 1 is the target of restricting to l = 1_w)
//   Descending  (1_h, l), dually
//   Bimodule    (k, l) plus a marker; objects are triples (left, middle, right)
enum class CategoryKind { Bi, Ascending, Descending, Bimodule };

struct Category {
  CategoryKind kind = CategoryKind::Bi;
  int width = 1;  // fixed column count (Ascending) or row count (Descending)

  static Category bi() { return {}; }
  static Category ascending(int width = 1) { return {CategoryKind::Ascending, width}; }
  static Category descending(int height = 1) { return {CategoryKind::Descending, height}; }
  static Category bimodule() { return {CategoryKind::Bimodule, 1}; }
  bool operator==(const Category&) const = default;
};

std::string to_string(const Category& c);

// Bimodule marker: with eps = 1, `pos` is the 0-based marked leaf of k (its tree is the marked
// tree); with eps = 0, `pos` is the number of trees on the left side, 0..n(k). Unused (eps = -1)
// outside the bimodule category.
struct ComponentIndex {
  MultiIndex k;
  MultiIndex l;
  int eps = -1;
  int pos = 0;
  auto operator<=>(const ComponentIndex&) const = default;
};

std::string to_string(const ComponentIndex& idx);
int vertex_count(const ComponentIndex& idx);

// Which components exist: |k|, |l| <= max_leaves and |k|*|l| <= max_cells. Every box touched by a
// composition summand at an admitted index has at most |k|*|l| cells, so the domain is closed
// under taking splitting factors.
struct IndexBounds {
  int max_leaves = 4;
  int max_cells = 16;
  bool admits(const MultiIndex& k, const MultiIndex& l) const;
  bool operator==(const IndexBounds&) const = default;
};

std::vector<ComponentIndex> component_indices(const Category& c, const IndexBounds& b);

// An object: one module, or (left, middle, right) in the bimodule category.
using Object = std::vector<ModuleRef>;

BoxSpace component_source(const Category& c, const Object& obj, const ComponentIndex& idx);
BoxSpace component_target(const Category& c, const Object& obj, const ComponentIndex& idx);

// One summand of a composite at `whole`: psi at `bottom` after phi at `top`.
struct SplitTerm {
  ComponentIndex bottom;
  ComponentIndex top;
  Splitting k_split;
  Splitting l_split;
};
const std::vector<SplitTerm>& index_splittings(const Category& c, const ComponentIndex& whole);
CompositionSign split_sign(const Category& c, const SplitTerm& t);

template <class Map>
struct Family {
  Category category;
  Ring ring = Ring::integers();
  Object source;
  Object target;
  int degree = 0;
  IndexBounds bounds;
  std::map<ComponentIndex, Map> components;  // absent means zero

  // Internal degree of the component at idx.
  int component_degree(const ComponentIndex& idx) const { return degree + vertex_count(idx); }
  Map component(const ComponentIndex& idx) const;  // zero map when absent
  const Map* find(const ComponentIndex& idx) const;
  // Checks shape and degree; maps without terms are dropped.
  void set(const ComponentIndex& idx, Map m);
};

template <class Map>
Family<Map> zero_family(const Category& c, const Ring& ring, Object source, Object target, int degree,
                        const IndexBounds& b);
template <class Map>
Family<Map> identity_family(const Category& c, const Ring& ring, const Object& obj, const IndexBounds& b);

// (psi o phi) with phi applied first. Signs per category; bounds are the intersection.
template <class Map>
Family<Map> compose(const Family<Map>& psi, const Family<Map>& phi, Execution ex = Execution::Parallel);
template <class Map>
Map compose_component(const Family<Map>& psi, const Family<Map>& phi, const ComponentIndex& idx);

template <class Map>
Family<Map> operator+(const Family<Map>& a, const Family<Map>& b);
template <class Map>
Family<Map> operator-(const Family<Map>& a, const Family<Map>& b);
template <class Map>
Family<Map> scaled(const Family<Map>& a, const Scalar& c);

// beta o phi - (-1)^{deg phi} phi o alpha
template <class Map>
Family<Map> hom_differential(const Family<Map>& beta, const Family<Map>& phi, const Family<Map>& alpha,
                             Execution ex = Execution::Parallel);

struct Violation {
  std::string relation;
  std::string location;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  std::size_t checks = 0;
  bool passed() const { return violations.empty(); }
  void add(std::string relation, std::string location, std::string detail);
  void merge(const Report& other, const std::string& prefix = "");
};

// Componentwise a == b; violations carry `relation`.
template <class Map>
Report compare_families(const Family<Map>& a, const Family<Map>& b, const std::string& relation,
                        Execution ex = Execution::Parallel);
template <class Map>
Report require_zero(const Family<Map>& a, const std::string& relation, Execution ex = Execution::Parallel);

// Objects of the Bi category: alpha o alpha = 0 together with the simplification relations
// T (vertical = tensor differential), V (one non-vertical tree factors through identities, and
// vanishing with two), D (vertical tree deletion against an almost vertical side).
template <class Map>
Report check_fbialgebra(const Family<Map>& alpha, Execution ex = Execution::Parallel);
// Degree 0 morphisms: closedness and the W factorizations.
template <class Map>
Report check_fbialg_morphism(const Family<Map>& phi, const Family<Map>& alpha, const Family<Map>& beta,
                             Execution ex = Execution::Parallel);
// Objects of the one-sided categories: alpha o alpha = 0 and the determination of every
// component by the single-tree ones.
template <class Map>
Report check_falg_object(const Family<Map>& alpha, Execution ex = Execution::Parallel);
template <class Map>
Report check_fcoalg_object(const Family<Map>& alpha, Execution ex = Execution::Parallel);

// n-simplex of the dg nerve: objects alpha_0..alpha_n and a map for every face of dimension >= 1,
// keyed by its increasing vertex list. phi_sigma goes from object sigma.back() to sigma.front().
template <class Map>
struct Simplex {
  std::vector<Family<Map>> objects;
  std::map<std::vector<int>, Family<Map>> maps;
  int dimension() const { return static_cast<int>(objects.size()) - 1; }
  const Family<Map>& face(const std::vector<int>& sigma) const;  // alpha for a single vertex
};

std::vector<std::vector<int>> faces_of_simplex(int n, int min_dim);

// Residual of the coherence relation at face sigma (dim >= 1), in two forms:
//   unabsorbed: sum_i (-1)^i (phi_{d_i sigma} - phi_{sigma<=i} o phi_{sigma>=i}) - d(phi_sigma)
//   absorbed:   sum_i (-1)^i phi_{d_i sigma} + sum over splittings (-1)^{rho} phi_bottom o phi_top
// They agree identically when rho is right; both vanish on a simplex.
template <class Map>
Family<Map> unabsorbed_residual(const Simplex<Map>& s, const std::vector<int>& sigma, Execution ex = Execution::Parallel);
template <class Map>
Family<Map> absorbed_residual(const Simplex<Map>& s, const std::vector<int>& sigma, Execution ex = Execution::Parallel);

struct SimplexCheckOptions {
  bool check_objects = true;  // vertices as f-bialgebras (Bi category only)
  bool check_edges = true;    // 1-faces as morphisms (Bi category only)
};
template <class Map>
Report check_simplex(const Simplex<Map>& s, const SimplexCheckOptions& opt = {}, Execution ex = Execution::Parallel);

// Constructive inner 2-horn filler: phi02 = phi01 o phi12, phi012 = 0.
template <class Map>
Simplex<Map> fill_inner_horn_2(const Family<Map>& alpha0, const Family<Map>& alpha1, const Family<Map>& alpha2,
                               const Family<Map>& phi01, const Family<Map>& phi12);

// Forgetful functors: the l = 1_w (resp. k = 1_h) components as a one-sided family.
template <class Map>
Family<Map> restrict_to_ascending(const Family<Map>& f, int width);
template <class Map>
Family<Map> restrict_to_descending(const Family<Map>& f, int height);

// Sparse random family: each admitted component is filled with probability `fill` by a random map
// of at most `max_entries` entries.
Family<BoxMap> random_family(const Category& c, const Ring& ring, Object source, Object target, int degree,
                             const IndexBounds& b, std::mt19937_64& rng, double fill = 0.5, int max_entries = 4);

// Bimodule family on (A, M, B) -> (C, N, D) seen as a Bi family on A+M+B -> C+N+D: each bimodule
// component becomes the block of the matching summands, everything else is zero.
Family<BoxMap> embed_bimodule(const Family<BoxMap>& f);
ModuleRef bimodule_sum(const Object& triple);

}  // namespace graftlab
