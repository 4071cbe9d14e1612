#include "graftlab/signs.hpp"
#include "graftlab/strata.hpp"

#include <doctest.h>

using namespace graftlab;

TEST_CASE("stratum dimension") {
  CHECK(stratum_dim({2, {2}, {1}}) == 2);
  CHECK_FALSE(stratum_dim({0, {1}, {1}}).has_value());
  CHECK(stratum_dim({0, {2}, {2}}) == 1);
}

TEST_CASE("type splittings") {
  auto s = type_splittings({1, {2}, {1}});
  bool found = false;
  for (const auto& t : s) {
    if (t.lower == StratumType{0, {2}, {1}} && t.upper == StratumType{1, {1, 1}, {1}}) found = true;
    if (t.upper.k == MultiIndex{1, 1}) CHECK_FALSE((t.lower.n == 1 && t.upper.n == 0));
  }
  CHECK(found);
  CHECK(type_splittings({0, {2}, {1}}).empty());
  auto one = type_splittings({2, {1}, {1}});
  REQUIRE(one.size() == 1);
  CHECK(one[0].lower == StratumType{1, {1}, {1}});
  CHECK(one[0].upper == StratumType{1, {1}, {1}});
}

TEST_CASE("gluing orientation examples") {
  CHECK(gluing_orientation(StratumType{0, {2}, {1}}, StratumType{1, {1, 1}, {1}}) == 1);
  CHECK(gluing_orientation(StratumType{1, {1}, {1}}, StratumType{1, {1}, {1}}) == 0);
  CHECK(gluing_orientation_by_determinant(StratumType{0, {2}, {1}}, StratumType{1, {1, 1}, {1}}) == 1);
  CHECK(gluing_orientation_by_determinant(StratumType{1, {1}, {1}}, StratumType{1, {1}, {1}}) == 0);
}

TEST_CASE("gluing orientation equals the determinant oracle on a small range") {
  const auto indices = multi_indices_up_to(4);
  int checked = 0;
  for (int n0 = 0; n0 <= 2; ++n0)
    for (int n1 = 0; n1 <= 2; ++n1)
      for (const auto& k : indices)
        for (const auto& ks : splittings(k))
          for (const auto& l : indices)
            for (const auto& ls : splittings(l)) {
              StratumType lower{n0, ks.lower, ls.upper}, upper{n1, ks.upper, ls.lower};
              if (!is_nonempty(lower) || !is_nonempty(upper) || !is_nonempty(glue(upper, lower))) continue;
              INFO(to_string(lower), " ", to_string(upper));
              CHECK(gluing_orientation(lower, upper) == gluing_orientation_by_determinant(lower, upper));
              ++checked;
            }
  CHECK(checked > 1000);
}

TEST_CASE("boundary examples") {
  auto b = boundary(StratumType{2, {1}, {1}});
  REQUIRE(b.size() == 2);
  CHECK(b[0].label.size() == 1);
  CHECK(b[0].label[0].sigma == std::vector<int>{0, 2});
  CHECK(b[0].sign == 1);
  REQUIRE(b[1].label.size() == 2);
  CHECK(b[1].label[0] == SimplexStratum{{0, 1}, {1}, {1}});
  CHECK(b[1].label[1] == SimplexStratum{{1, 2}, {1}, {1}});
  CHECK(b[1].sign == 0);

  CHECK(boundary(StratumType{1, {1}, {1}}).empty());

  auto b22 = boundary(StratumType{0, {2}, {2}});
  CHECK_FALSE(b22.empty());
  for (const auto& f : b22) CHECK(f.label.size() == 2);
}

TEST_CASE("boundary lowers dimension by one") {
  for (const StratumType& d : dd_zero_domain(3, 3, 4))
    for (const auto& f : boundary(d)) CHECK(label_dim(f.label) + 1 == *stratum_dim(d));
}

TEST_CASE("double boundary cancels") {
  CHECK(check_dd_zero({2, {2}, {1}}).pass);
  auto r = check_dd_zero({3, {1}, {1}});
  CHECK(r.pass);
  CHECK(r.codim2_labels > 0);
  CHECK_THROWS(check_dd_zero({0, {1}, {1}}));
  CHECK_THROWS(check_dd_zero({1, {1}, {1}}));
  for (const StratumType& d : dd_zero_domain(3, 3, 4)) {
    INFO(to_string(d));
    CHECK(check_dd_zero(d).pass);
  }
}

TEST_CASE("dropping a gluing term is noticed") {
  const auto domain = dd_zero_domain(3, 3, 4);
  for (SignTerm t : {SignTerm::GlueUpperK, SignTerm::GlueUpperL, SignTerm::GlueCross, SignTerm::GlueLowerCount,
                     SignTerm::GlueUpperCount}) {
    ScopedSignMutation m(t);
    bool oracle_disagrees = false;
    for (const StratumType& d : domain)
      for (const TypeSplitting& s : type_splittings(d))
        oracle_disagrees = oracle_disagrees ||
                           gluing_orientation(s.lower, s.upper) != gluing_orientation_by_determinant(s.lower, s.upper);
    INFO(to_string(t));
    CHECK(oracle_disagrees);
  }
  // The count terms are also seen by the double boundary on its own.
  for (SignTerm t : {SignTerm::GlueLowerCount, SignTerm::GlueUpperCount}) {
    ScopedSignMutation m(t);
    bool any_fail = false;
    for (const StratumType& d : domain) any_fail = any_fail || !check_dd_zero(d).pass;
    CHECK(any_fail);
  }
}
