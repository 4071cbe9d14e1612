#include "graftlab/cellmap.hpp"

#include <doctest.h>

#include <array>

using namespace graftlab;

namespace {

FiniteSemigroup cyclic(int n) {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    names.push_back("g" + std::to_string(i));
    for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i)].push_back((i + j) % n);
  }
  return FiniteSemigroup("Z/" + std::to_string(n), names, table);
}

FiniteSemigroup s3() {
  // Permutations of {0,1,2} in lexicographic order, composed as (pq)(i) = p(q(i)).
  std::vector<std::array<int, 3>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] = perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)])];
      for (int k = 0; k < 6; ++k)
        if (perms[static_cast<std::size_t>(k)] == c) table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = k;
    }
  return FiniteSemigroup("S3", {"e", "t12", "t01", "c1", "c2", "t02"}, table);
}

CellMap product(const Ring& r, int sg) {
  const ModuleRef m = semigroup_module(sg);
  const std::array<Expr, 2> args{expr::var(0), expr::var(1)};
  return CellMap::from_terms(r, BoxSpace::grid(m, 2, 1), BoxSpace::grid(m, 1, 1), 0,
                             {{CellTerm{{expr::mul(sg, args)}}, Scalar(1)}});
}

CellMap diagonal(const Ring& r, int sg) {
  const ModuleRef m = semigroup_module(sg);
  return CellMap::from_terms(r, BoxSpace::grid(m, 1, 1), BoxSpace::grid(m, 2, 1), 0,
                             {{CellTerm{{expr::var(0), expr::var(0)}}, Scalar(1)}});
}

CellMap associator(const Ring& r, int sg) {
  const CellMap m = product(r, sg);
  const CellMap id = CellMap::identity(r, BoxSpace::grid(semigroup_module(sg), 1, 1));
  const std::array<CellMap, 2> left{m, id}, right{id, m};
  return compose(m, tensor_rows(left)) - compose(m, tensor_rows(right));
}

}  // namespace

TEST_CASE("non-associative tables are rejected with a witness") {
  std::vector<std::vector<int>> table{{1, 0}, {0, 0}};
  CHECK_THROWS_AS(FiniteSemigroup("bad", {"a", "b"}, table), std::invalid_argument);
  const auto bad = FiniteSemigroup::unchecked("bad", {"a", "b"}, table);
  CHECK_FALSE(bad.associative());
  REQUIRE(bad.associativity_witness().has_value());
  const auto [x, y, z] = *bad.associativity_witness();
  CHECK(bad.mul(bad.mul(x, y), z) != bad.mul(x, bad.mul(y, z)));
}

TEST_CASE("registration interns semigroups and maps") {
  const int a = register_semigroup(cyclic(4));
  CHECK(register_semigroup(cyclic(4)) == a);
  const int b = register_semigroup(cyclic(2));
  const int mod2 = register_map(a, b, {0, 1, 0, 1});
  CHECK(semigroup_map(mod2).homomorphism);
  CHECK_FALSE(semigroup_map(mod2).identity);
  const int weird = register_map(a, b, {0, 1, 1, 0});
  CHECK_FALSE(semigroup_map(weird).homomorphism);
  CHECK(homomorphism_witness(semigroup_map(weird)).has_value());
  const int id = register_map(a, a, {0, 1, 2, 3});
  CHECK(semigroup_map(id).identity);
  const int twice = register_map(a, a, {0, 2, 0, 2});
  CHECK(semigroup_map(compose_maps(mod2, twice)).table == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("normal forms") {
  const int a = register_semigroup(cyclic(4));
  const int b = register_semigroup(cyclic(2));
  const int hom = register_map(a, b, {0, 1, 0, 1});
  const int non_hom = register_map(a, b, {0, 1, 1, 0});
  const int id = register_map(a, a, {0, 1, 2, 3});
  const std::array<Expr, 2> xy{expr::var(0), expr::var(1)};
  const Expr prod = expr::mul(a, xy);

  CHECK(expr::normalize(expr::apply(id, expr::var(3))) == expr::var(3));
  const std::array<Expr, 2> pushed{expr::apply(hom, expr::var(0)), expr::apply(hom, expr::var(1))};
  CHECK(expr::normalize(expr::apply(hom, prod)) == expr::mul(b, pushed));
  CHECK(expr::normalize(expr::apply(non_hom, prod)) == expr::apply(non_hom, prod));

  const std::array<Expr, 2> nested{prod, expr::var(2)};
  const std::array<Expr, 3> flat{expr::var(0), expr::var(1), expr::var(2)};
  CHECK(expr::normalize(expr::mul(a, nested)) == expr::mul(a, flat));

  const std::array<int, 3> in{1, 2, 3};
  CHECK(expr::evaluate(expr::mul(a, flat), in) == 2);
  CHECK(expr::variables(expr::mul(a, nested)) == std::vector<int>{0, 1, 2});
}

TEST_CASE("symbolic composition and tensors match explicit matrices") {
  for (const Ring& r : {Ring::integers(), Ring::modulo(2)}) {
    for (int n : {2, 3}) {
      const int sg = register_semigroup(cyclic(n));
      const CellMap m = product(r, sg), d = diagonal(r, sg);
      const BoxMap M = to_box(m), D = to_box(d);
      CHECK(to_box(compose(m, d)) == compose(M, D));
      CHECK(to_box(compose(d, m)) == compose(D, M));
      const std::array<CellMap, 2> md{m, d};
      const std::array<BoxMap, 2> MD{M, D};
      CHECK(to_box(tensor(md)) == tensor(MD));
      const std::array<CellMap, 2> dd{d, d};
      const std::array<BoxMap, 2> DD{D, D};
      CHECK(to_box(tensor_rows(dd)) == tensor_rows(DD));
      const std::array<CellMap, 2> mm{m, m};
      const std::array<BoxMap, 2> MM{M, M};
      CHECK(to_box(tensor_cols(mm)) == tensor_cols(MM));
      const CellPermutation t = transpose_permutation(2, 2);
      const CellMap sq = tensor_cols(mm);
      const CellMap dsq = tensor_rows(dd);
      CHECK(to_box(permuted(dsq, CellPermutation{{1, 0}, 2, 1}, t)) ==
            permuted(tensor_rows(DD), CellPermutation{{1, 0}, 2, 1}, t));
      CHECK(to_box(sq - sq).is_zero());
      CHECK(to_box(m.scaled(Scalar(3))) == M.scaled(Scalar(3)));
    }
  }
}

TEST_CASE("zero decision") {
  const Ring z = Ring::integers();
  const int c3 = register_semigroup(cyclic(3));
  CHECK(decide_zero(associator(z, c3)).status == ZeroStatus::Zero);
  CHECK(associator(z, c3).has_no_terms());  // flattening already cancels it

  const int bad = register_semigroup(FiniteSemigroup::unchecked("bad", {"a", "b"}, {{1, 0}, {0, 0}}));
  const ZeroVerdict v = decide_zero(associator(z, bad));
  CHECK(v.status == ZeroStatus::Nonzero);
  CHECK_FALSE(v.detail.empty());

  // Commutativity: cancels as functions for Z/3, fails for S3 even on a space too big to enumerate.
  auto commutator = [&](int sg, int extra_cells) {
    const ModuleRef m = semigroup_module(sg);
    const int cells = 2 + extra_cells;
    CellTerm xy, yx;
    const std::array<Expr, 2> a{expr::var(0), expr::var(1)}, b{expr::var(1), expr::var(0)};
    xy.cells.push_back(expr::mul(sg, a));
    yx.cells.push_back(expr::mul(sg, b));
    for (int i = 2; i < cells; ++i) {
      xy.cells.push_back(expr::var(i));
      yx.cells.push_back(expr::var(i));
    }
    return CellMap::from_terms(z, BoxSpace::grid(m, 1, cells), BoxSpace::grid(m, 1, cells - 1), 0,
                               {{xy, Scalar(1)}, {yx, Scalar(-1)}});
  };
  CHECK(decide_zero(commutator(c3, 10)).status == ZeroStatus::Zero);
  const int sym = register_semigroup(s3());
  const CellMap big = commutator(sym, 8);
  CHECK(big.source().basis_size() > (std::uint64_t{1} << 16));
  CHECK(decide_zero(big).status == ZeroStatus::Nonzero);
  CHECK(decide_zero(commutator(sym, 0)).status == ZeroStatus::Nonzero);
}

TEST_CASE("nonzero degree only for the zero map") {
  const int c2 = register_semigroup(cyclic(2));
  const ModuleRef m = semigroup_module(c2);
  const BoxSpace s = BoxSpace::grid(m, 1, 1);
  CHECK_NOTHROW(CellMap::zero(Ring::integers(), s, s, -1));
  CHECK_THROWS(CellMap::from_terms(Ring::integers(), s, s, 1, {{CellTerm{{expr::var(0)}}, Scalar(1)}}));
  CHECK(grid_differential(CellMap::zero(Ring::integers(), s, s, -1), 2, 3).has_no_terms());
  CHECK_THROWS(CellMap::zero(Ring::integers(), BoxSpace::grid(make_module("plain", {{"a", 0}}), 1, 1), s, 0));
}
