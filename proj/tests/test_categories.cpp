#include "graftlab/categories.hpp"
#include "graftlab/monoid_morse.hpp"

#include <doctest.h>

#include <random>

using namespace graftlab;

namespace {

const IndexBounds kSmall{4, 12};

ModuleRef mixed() { return make_module("P", {{"p0", 0}, {"p1", 1}}); }
ModuleRef odd() { return make_module("Q", {{"q", 1}}); }
ModuleRef second() { return make_module("R", {{"r0", 0}, {"r1", 1}}); }

Object object_for(const Category& c, const ModuleRef& m, const ModuleRef& other) {
  return c.kind == CategoryKind::Bimodule ? Object{m, other, m} : Object{m};
}

std::vector<Category> all_categories() {
  return {Category::bi(), Category::ascending(1), Category::ascending(2), Category::descending(1), Category::descending(3),
          Category::bimodule()};
}

std::string relations(const Report& r) {
  std::string out;
  for (const auto& v : r.violations) out += v.relation + " " + v.location + " " + v.detail + "\n";
  return out;
}

Family<BoxMap> boxed(const Family<CellMap>& f) {
  Family<BoxMap> out = zero_family<BoxMap>(f.category, f.ring, f.source, f.target, f.degree, f.bounds);
  for (const auto& [idx, m] : f.components) out.set(idx, to_box(m));
  return out;
}

}  // namespace

TEST_CASE("component shapes") {
  const ModuleRef A = mixed();
  const ComponentIndex idx{MultiIndex({2, 1}), MultiIndex({1, 3})};
  const BoxSpace in = component_source(Category::bi(), {A}, idx);
  const BoxSpace out = component_target(Category::bi(), {A}, idx);
  CHECK(in.rows() == 3);
  CHECK(in.cols() == 2);
  CHECK(out.rows() == 2);
  CHECK(out.cols() == 4);
  CHECK(to_string(idx) == "((2,1);(1,3))");
  CHECK(vertex_count(idx) == 3);
}

TEST_CASE("bimodule markers propagate through splittings") {
  const Category c = Category::bimodule();
  // eps = 1 on leaf 2 of k = (1,2): the upper factor keeps the leaf, the lower factor marks its tree.
  for (const SplitTerm& t : index_splittings(c, {MultiIndex({1, 2}), MultiIndex({1}), 1, 2})) {
    CHECK(t.top.eps == 1);
    CHECK(t.top.pos == 2);
    CHECK(t.bottom.eps == 1);
    CHECK(t.bottom.pos < trees(t.k_split.upper));
  }
  for (const SplitTerm& t : index_splittings(c, {MultiIndex({3}), MultiIndex({1}), 0, 1})) {
    CHECK(t.bottom.pos == 1);
    CHECK(t.top.pos == leaves(t.k_split.lower));
  }
}

TEST_CASE("identity and associativity on random data") {
  std::mt19937_64 rng(7);
  for (const Ring& ring : {Ring::integers(), Ring::modulo(2), Ring::rationals()})
    for (const Category& c : all_categories())
      for (int trial = 0; trial < 3; ++trial) {
        INFO(to_string(c) << " over " << ring.name() << " trial " << trial);
        const Object X = object_for(c, mixed(), odd()), Y = object_for(c, second(), mixed());
        const auto f = random_family(c, ring, X, Y, trial % 2, kSmall, rng, 0.7, 16);
        const auto g = random_family(c, ring, Y, X, (trial + 1) % 2, kSmall, rng, 0.7, 16);
        const auto h = random_family(c, ring, X, Y, 0, kSmall, rng, 0.7, 16);
        const auto idX = identity_family<BoxMap>(c, ring, X, kSmall), idY = identity_family<BoxMap>(c, ring, Y, kSmall);
        CHECK(compare_families(compose(idY, f), f, "left unit").passed());
        CHECK(compare_families(compose(f, idX), f, "right unit").passed());
        const Report r = compare_families(compose(compose(h, g), f), compose(h, compose(g, f)), "assoc");
        CHECK_MESSAGE(r.passed(), relations(r));
      }
}

TEST_CASE("serial and parallel composition agree") {
  std::mt19937_64 rng(11);
  const Ring z = Ring::integers();
  const auto f = random_family(Category::bi(), z, {mixed()}, {mixed()}, 1, kSmall, rng);
  const auto g = random_family(Category::bi(), z, {mixed()}, {mixed()}, 0, kSmall, rng);
  CHECK(compare_families(compose(g, f, Execution::Serial), compose(g, f, Execution::Parallel), "ex").passed());
}

TEST_CASE("bimodule composition matches block embedding") {
  std::mt19937_64 rng(3);
  const Ring z = Ring::integers();
  const IndexBounds b{3, 6};
  for (int trial = 0; trial < 4; ++trial) {
    const Object X{mixed(), odd(), mixed()}, Y{odd(), mixed(), odd()}, W{mixed(), mixed(), odd()};
    const auto f = random_family(Category::bimodule(), z, X, Y, trial % 2, b, rng, 0.6);
    const auto g = random_family(Category::bimodule(), z, Y, W, 1, b, rng, 0.6);
    const Report r = compare_families(embed_bimodule(compose(g, f)), compose(embed_bimodule(g), embed_bimodule(f)), "embed");
    CHECK_MESSAGE(r.passed(), relations(r));
  }
}

TEST_CASE("restriction commutes with composition") {
  std::mt19937_64 rng(5);
  for (const Ring& ring : {Ring::integers(), Ring::modulo(3)})
    for (int w = 1; w <= 4; ++w) {
      const auto f = random_family(Category::bi(), ring, {mixed()}, {second()}, 1, kSmall, rng, 0.7, 16);
      const auto g = random_family(Category::bi(), ring, {second()}, {mixed()}, 1, kSmall, rng, 0.7, 16);
      CHECK(compare_families(restrict_to_ascending(compose(g, f), w),
                             compose(restrict_to_ascending(g, w), restrict_to_ascending(f, w)), "asc")
                .passed());
      CHECK(compare_families(restrict_to_descending(compose(g, f), w),
                             compose(restrict_to_descending(g, w), restrict_to_descending(f, w)), "desc")
                .passed());
    }
}

TEST_CASE("hom differential squares to zero and is a derivation") {
  std::mt19937_64 rng(13);
  const Ring f2 = Ring::modulo(2);
  const int z2 = register_semigroup(cyclic_group(2)), lz = register_semigroup(left_zero_semigroup(2));
  const auto alpha = boxed(morse_fbialgebra(z2, f2, kSmall));
  const auto beta = boxed(morse_fbialgebra(lz, f2, kSmall));
  const Object A = alpha.source, B = beta.source;
  for (int trial = 0; trial < 4; ++trial) {
    const auto phi = random_family(Category::bi(), f2, A, B, trial % 2, kSmall, rng);
    const auto psi = random_family(Category::bi(), f2, B, A, 1, kSmall, rng);
    const auto dphi = hom_differential(beta, phi, alpha);
    CHECK(require_zero(hom_differential(beta, dphi, alpha), "dd").passed());
    // d(psi o phi) = d(psi) o phi + (-1)^{|psi|} psi o d(phi)
    const auto lhs = hom_differential(alpha, compose(psi, phi), alpha);
    const auto rhs = compose(hom_differential(alpha, psi, beta), phi) - compose(psi, dphi);
    const Report r = compare_families(lhs, rhs, "leibniz");
    CHECK_MESSAGE(r.passed(), relations(r));
  }

  // Same over Z with the circle, where the vertical components carry a nonzero differential.
  const IndexBounds tiny{3, 6};
  const auto circle = strict_fbialgebra(circle_core(Ring::integers()), tiny);
  const auto phi = random_family(Category::bi(), Ring::integers(), circle.source, circle.source, 1, tiny, rng);
  CHECK(require_zero(hom_differential(circle, hom_differential(circle, phi, circle), circle), "dd").passed());
  CHECK(require_zero(hom_differential(circle, identity_family<BoxMap>(Category::bi(), Ring::integers(), circle.source, tiny), circle), "d id").passed());
}

TEST_CASE("absorbed and unabsorbed residuals agree on arbitrary families") {
  std::mt19937_64 rng(17);
  const Ring z = Ring::integers();
  const IndexBounds b{3, 9};
  for (const Category& c : {Category::bi(), Category::ascending(1), Category::descending(2), Category::bimodule()})
    for (int n : {2, 3}) {
      INFO(to_string(c) << " dim " << n);
      Simplex<BoxMap> s;
      std::vector<Object> objs;
      for (int v = 0; v <= n; ++v) objs.push_back(object_for(c, v % 2 ? odd() : mixed(), mixed()));
      for (int v = 0; v <= n; ++v) s.objects.push_back(random_family(c, z, objs[static_cast<std::size_t>(v)], objs[static_cast<std::size_t>(v)], -1, b, rng, 0.3));
      for (const auto& sigma : faces_of_simplex(n, 1))
        s.maps[sigma] = random_family(c, z, objs[static_cast<std::size_t>(sigma.back())], objs[static_cast<std::size_t>(sigma.front())],
                                      static_cast<int>(sigma.size()) - 2, b, rng, 0.3);
      for (const auto& sigma : faces_of_simplex(n, 1)) {
        const Report r = compare_families(absorbed_residual(s, sigma), unabsorbed_residual(s, sigma), "forms");
        CHECK_MESSAGE(r.passed(), relations(r));
      }
    }
}

TEST_CASE("simplex checks and the horn filler") {
  const Ring z = Ring::integers();
  const IndexBounds b{4, 16};
  const int z8 = register_semigroup(cyclic_group(8)), z4 = register_semigroup(cyclic_group(4)),
            z2 = register_semigroup(cyclic_group(2));
  const auto a8 = morse_fbialgebra(z8, z, b), a4 = morse_fbialgebra(z4, z, b), a2 = morse_fbialgebra(z2, z, b);
  const auto p84 = morse_pushforward(register_map(z8, z4, {0, 1, 2, 3, 0, 1, 2, 3}), z, b);
  const auto p42 = morse_pushforward(register_map(z4, z2, {0, 1, 0, 1}), z, b);
  const auto s = fill_inner_horn_2(a2, a4, a8, p42, p84);
  const Report r = check_simplex(s);
  CHECK_MESSAGE(r.passed(), relations(r));

  const auto id = identity_family<CellMap>(Category::bi(), z, a4.source, b);
  const auto ids = fill_inner_horn_2(a4, a4, a4, id, id);
  CHECK(compare_families(ids.face({0, 2}), id, "id").passed());
  CHECK(ids.face({0, 1, 2}).components.empty());
  CHECK(check_simplex(ids).passed());

  Simplex<CellMap> missing = s;
  missing.maps.erase({0, 2});
  CHECK_THROWS_AS(check_simplex(missing), std::invalid_argument);
}

TEST_CASE("one-sided objects") {
  const Ring z = Ring::integers();
  const int z2 = register_semigroup(cyclic_group(2));
  const auto alpha = boxed(morse_fbialgebra(z2, z, kSmall));
  // The diagonal alone as a descending object, the product alone as an ascending one.
  CHECK(check_fcoalg_object(restrict_to_descending(alpha, 1)).passed());
  CHECK(check_falg_object(restrict_to_ascending(alpha, 1)).passed());

  const int bad = register_semigroup(FiniteSemigroup::unchecked("bad", {"0", "1"}, {{1, 1}, {1, 0}}));
  const auto broken = boxed(morse_fbialgebra(bad, z, kSmall, true));
  CHECK_FALSE(check_falg_object(restrict_to_ascending(broken, 1)).passed());

  // A nonzero (2,2) component violates the vanishing constraint.
  std::mt19937_64 rng(23);
  auto extra = zero_family<BoxMap>(Category::ascending(1), z, {mixed()}, {mixed()}, -1, kSmall);
  const ComponentIndex twotwo{MultiIndex({2, 2}), MultiIndex({1})};
  extra.set(twotwo, random_map(z, component_source(extra.category, extra.source, twotwo),
                               component_target(extra.category, extra.target, twotwo), extra.component_degree(twotwo), rng, 4));
  REQUIRE(extra.find(twotwo) != nullptr);
  const Report r = check_falg_object(extra);
  CHECK_FALSE(r.passed());
}

TEST_CASE("the zero structure") {
  // With d = 0 on the vertical components, alpha = 0 satisfies every relation.
  const ModuleRef A = mixed();
  const auto zero = zero_family<BoxMap>(Category::bi(), Ring::integers(), {A}, {A}, -1, kSmall);
  CHECK(check_fbialgebra(zero).passed());
}
