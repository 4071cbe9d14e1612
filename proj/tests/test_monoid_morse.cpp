#include "graftlab/monoid_morse.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>

using namespace graftlab;

namespace {

const IndexBounds kBounds{4, 16};

std::string relations(const Report& r) {
  std::string out;
  for (const auto& v : r.violations) out += v.relation + " " + v.location + " " + v.detail + "\n";
  return out;
}

bool violated_at(const Report& r, const std::string& relation, const std::string& location) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) {
    return v.relation.find(relation) != std::string::npos && v.location == location;
  });
}

// Basis image of `in` as (out, coeff) pairs.
std::map<std::uint64_t, Scalar> image(const BoxMap& f, std::uint64_t in) {
  std::map<std::uint64_t, Scalar> out;
  for (const BoxEntry& e : f.entries())
    if (e.in == in) out.emplace(e.out, e.coeff);
  return out;
}

ComponentIndex at(std::vector<int> k, std::vector<int> l) { return {MultiIndex(std::move(k)), MultiIndex(std::move(l))}; }

}  // namespace

TEST_CASE("Z/2 Morse structure: product, diagonal, and the (2;2) component") {
  const Ring z = Ring::integers();
  const int z2 = register_semigroup(cyclic_group(2));
  const auto alpha = morse_fbialgebra(z2, z, kBounds);

  const BoxMap m = to_box(alpha.component(at({2}, {1})));
  // x (x) y -> xy on basis: input index 2x + y.
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const auto col = image(m, static_cast<std::uint64_t>(2 * x + y));
      REQUIRE(col.size() == 1);
      CHECK(col.begin()->first == static_cast<std::uint64_t>((x + y) % 2));
      CHECK(col.begin()->second == Scalar(1));
    }
  const BoxMap delta = to_box(alpha.component(at({1}, {2})));
  for (int x = 0; x < 2; ++x) {
    const auto col = image(delta, static_cast<std::uint64_t>(x));
    REQUIRE(col.size() == 1);
    CHECK(col.begin()->first == static_cast<std::uint64_t>(3 * x));
  }
  CHECK(alpha.find(at({2}, {2})) == nullptr);
  CHECK(alpha.find(at({1}, {1})) == nullptr);

  const Report r = check_fbialgebra(alpha);
  CHECK_MESSAGE(r.passed(), relations(r));
  CHECK(r.checks > 0);
}

TEST_CASE("corrupting one table entry breaks associativity at ((3);(1))") {
  const int bad = register_semigroup(FiniteSemigroup::unchecked("Z/2 corrupted", {"0", "1"}, {{1, 1}, {1, 0}}));
  CHECK_FALSE(semigroup(bad).associative());
  CHECK_THROWS_AS(morse_fbialgebra(bad, Ring::integers(), kBounds), std::invalid_argument);
  const auto alpha = morse_fbialgebra(bad, Ring::integers(), kBounds, true);
  const Report r = check_fbialgebra(alpha);
  CHECK_FALSE(r.passed());
  CHECK(violated_at(r, "alpha-alpha", "((3);(1))"));
}

TEST_CASE("strict builder agrees with the direct construction") {
  for (const Ring& ring : {Ring::integers(), Ring::modulo(2)})
    for (int sg : {register_semigroup(cyclic_group(2)), register_semigroup(left_zero_semigroup(2))}) {
      const auto direct = morse_fbialgebra(sg, ring, kBounds);
      const auto strict = strict_fbialgebra(semigroup_core(sg, ring), kBounds);
      const Report r = compare_families(direct, strict, "direct=strict");
      CHECK_MESSAGE(r.passed(), relations(r));
    }
}

TEST_CASE("corpus semigroups pass the f-bialgebra checks") {
  for (int sg : corpus_semigroups()) {
    INFO(semigroup(sg).name());
    const Report r = check_fbialgebra(morse_fbialgebra(sg, Ring::integers(), kBounds));
    CHECK_MESSAGE(r.passed(), relations(r));
  }
}

TEST_CASE("circle chains: strict dg Hopf algebra passes") {
  const auto alpha = strict_fbialgebra(circle_core(Ring::integers()), IndexBounds{4, 8});
  const Report r = check_fbialgebra(alpha);
  CHECK_MESSAGE(r.passed(), relations(r));
  CHECK(r.notes.empty());
}

TEST_CASE("pushforwards") {
  const Ring z = Ring::integers();
  const int z4 = register_semigroup(cyclic_group(4)), z2 = register_semigroup(cyclic_group(2));
  const int q = register_map(z4, z2, {0, 1, 0, 1});
  const auto phi = morse_pushforward(q, z, kBounds);
  const Report r = check_fbialg_morphism(phi, morse_fbialgebra(z4, z, kBounds), morse_fbialgebra(z2, z, kBounds));
  CHECK_MESSAGE(r.passed(), relations(r));
  CHECK(phi.find(at({2}, {1})) == nullptr);

  const int id = register_map(z4, z4, {0, 1, 2, 3});
  const auto pid = morse_pushforward(id, z, kBounds);
  CHECK(compare_families(pid, identity_family<CellMap>(Category::bi(), z, {semigroup_module(z4)}, kBounds), "id").passed());

  const int one = register_semigroup(trivial_group());
  const auto bang = to_box(morse_pushforward(register_map(z4, one, {0, 0, 0, 0}), z, kBounds).component(at({1, 1}, {1})));
  for (std::uint64_t i = 0; i < 16; ++i) CHECK(image(bang, i).at(0) == Scalar(1));

  CHECK_THROWS_AS(morse_pushforward(register_map(z4, z2, {0, 1, 1, 0}), z, kBounds), std::invalid_argument);

  // Corrupt the (1;1) component: d(phi) no longer vanishes.
  auto broken = phi;
  const BoxSpace one_cell = BoxSpace::grid(semigroup_module(z4), 1, 1);
  broken.set(at({1}, {1}), CellMap::from_terms(z, one_cell, BoxSpace::grid(semigroup_module(z2), 1, 1), 0,
                                               {{CellTerm{{expr::apply(q, expr::var(0))}}, Scalar(2)}}));
  const Report rb = check_fbialg_morphism(broken, morse_fbialgebra(z4, z, kBounds), morse_fbialgebra(z2, z, kBounds));
  CHECK_FALSE(rb.passed());
}

TEST_CASE("corpus homomorphisms pass the morphism checks") {
  const Ring z = Ring::integers();
  for (const NamedMap& h : corpus_homomorphisms()) {
    INFO(h.name);
    const SemigroupMap& f = semigroup_map(h.map);
    const Report r = check_fbialg_morphism(morse_pushforward(h.map, z, kBounds), morse_fbialgebra(f.from, z, kBounds),
                                           morse_fbialgebra(f.to, z, kBounds));
    CHECK_MESSAGE(r.passed(), relations(r));
  }
}

TEST_CASE("chain Z/8 -> Z/4 -> Z/2 is a strict simplex") {
  const Ring z = Ring::integers();
  const int z8 = register_semigroup(cyclic_group(8)), z4 = register_semigroup(cyclic_group(4)),
            z2 = register_semigroup(cyclic_group(2));
  const std::vector<int> chain{register_map(z8, z4, {0, 1, 2, 3, 0, 1, 2, 3}), register_map(z4, z2, {0, 1, 0, 1})};
  const auto s = morse_simplex(chain, z, kBounds);
  CHECK(s.objects.front().source.front() == semigroup_module(z2));
  CHECK(s.objects.back().source.front() == semigroup_module(z8));
  const Report r = check_simplex(s);
  CHECK_MESSAGE(r.passed(), relations(r));

  // phi_02 replaced by a different pushforward: the 2-face relation fails.
  auto bent = s;
  bent.maps[{0, 2}] = morse_pushforward(register_map(z8, z2, {0, 0, 0, 0, 0, 0, 0, 0}), z, kBounds);
  const Report rb = check_simplex(bent, {false, false});
  CHECK_FALSE(rb.passed());
  CHECK(std::any_of(rb.violations.begin(), rb.violations.end(),
                    [](const Violation& v) { return v.relation.find("[0,1,2]") != std::string::npos; }));

  const std::vector<int> bad{chain[1], chain[0]};
  CHECK_THROWS_AS(morse_simplex(bad, z, kBounds), std::invalid_argument);
}

TEST_CASE("triple_to_monoid: trivial groups acting on a point") {
  ActionTriple t{FiniteSemigroup("G", {"1_G"}, {{0}}), {"x"}, FiniteSemigroup("H", {"1_H"}, {{0}}), {{0}}, {{0}}};
  const FiniteSemigroup m = triple_to_monoid(t);
  CHECK(m.elements() == std::vector<std::string>{"1_G", "x", "1_H", "pt"});
  const std::vector<std::vector<int>> golden{{0, 1, 3, 3}, {3, 3, 1, 3}, {3, 3, 2, 3}, {3, 3, 3, 3}};
  CHECK(m.table() == golden);
  CHECK(m.associative());
}

TEST_CASE("triple_to_monoid: Z/2 translating Z/2") {
  ActionTriple t{cyclic_group(2), {"a", "b"}, trivial_group(), {{0, 1}, {1, 0}}, {{0}, {1}}};
  const FiniteSemigroup m = triple_to_monoid(t);
  CHECK(m.size() == 6);
  CHECK(m.associative());
  // Names of G and H collide ("1" vs "0"/"1"): every element gets a side prefix.
  CHECK(m.elements().front() == "G:0");

  ActionTriple broken = t;
  broken.H = cyclic_group(2);
  broken.right = {{1, 1}, {0, 0}};  // not an action
  CHECK_THROWS_AS(triple_to_monoid(broken), std::invalid_argument);

  // G swaps p0 and p1, H swaps p1 and p2.
  ActionTriple noncommuting{cyclic_group(2), {"p0", "p1", "p2"}, cyclic_group(2), {{0, 1, 2}, {1, 0, 2}},
                            {{0, 0}, {1, 2}, {2, 1}}};
  CHECK_THROWS_AS(validate(noncommuting), std::invalid_argument);
}

TEST_CASE("bimodule blocks of a triple") {
  const Ring z = Ring::integers();
  ActionTriple t{cyclic_group(2), {"a", "b"}, trivial_group(), {{0, 1}, {1, 0}}, {{0}, {1}}};
  const auto blocks = extract_bimodule_blocks(t, z, kBounds);
  // eps = 1, marked leaf 1 of k = (2): G row over the X row, the action G x X -> X.
  const BoxMap act = blocks.component({MultiIndex({2}), MultiIndex({1}), 1, 1});
  for (int g = 0; g < 2; ++g)
    for (int x = 0; x < 2; ++x) {
      const auto col = image(act, static_cast<std::uint64_t>(2 * g + x));
      REQUIRE(col.size() == 1);
      CHECK(col.begin()->first == static_cast<std::uint64_t>((g + x) % 2));
    }
  // eps = 0 with the single tree on the left: the G multiplication block.
  const BoxMap mult = blocks.component({MultiIndex({2}), MultiIndex({1}), 0, 1});
  for (int g = 0; g < 2; ++g)
    for (int h = 0; h < 2; ++h) CHECK(image(mult, static_cast<std::uint64_t>(2 * g + h)).begin()->first == static_cast<std::uint64_t>((g + h) % 2));
  // Marked leaf 0: X row over... nothing lands back in X from X times an H row only when H acts;
  // with H trivial, the right-side block is the right action by the unit.
  const BoxMap right = blocks.component({MultiIndex({2}), MultiIndex({1}), 1, 0});
  CHECK(image(right, 0).begin()->first == 0);
  CHECK(image(right, 1).begin()->first == 1);
}

TEST_CASE("bimodule blocks square to zero") {
  ActionTriple t{cyclic_group(2), {"a", "b"}, trivial_group(), {{0, 1}, {1, 0}}, {{0}, {1}}};
  const auto blocks = extract_bimodule_blocks(t, Ring::integers(), IndexBounds{4, 8});
  CHECK_FALSE(blocks.components.empty());
  const Report r = require_zero(compose(blocks, blocks), "alpha-alpha");
  CHECK_MESSAGE(r.passed(), relations(r));
}
