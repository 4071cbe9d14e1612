#pragma once

#include "graftlab/gradedalg.hpp"
#include "graftlab/semigroup.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace graftlab {

// Symbolic maps between tensor powers of semigroup rings. A map is a finite sum of terms with
// coefficients; a term sends a basis grid (x_0, .., x_{N-1}) to the basis grid whose j-th cell
// is the value of an expression in the x_i. This covers products, diagonals, pushforwards and
// all their composites and tensor products without enumerating bases, which is what makes the
// larger semigroups tractable. Everything lives in degree 0, so Koszul signs never arise.
//
// Expressions are prefix token lists:
//   i >= 0                  the input variable x_i
//   -1, s, n, e_1 .. e_n    product in semigroup s of n subexpressions
//   -(2 + f), e             semigroup map f applied to e
using Expr = std::vector<int>;

namespace expr {
Expr var(int i);
Expr mul(int semigroup, std::span<const Expr> args);
Expr apply(int map, const Expr& e);
// Canonical form: map chains composed, identities dropped, homomorphisms pushed into products,
// products flattened for associative semigroups. Non-homomorphisms and non-associative tables are
// left alone, so that faults stay visible.
Expr normalize(const Expr& e);
int evaluate(const Expr& e, std::span<const int> inputs);
std::vector<int> variables(const Expr& e);
std::string to_string(const Expr& e, std::span<const std::string> names = {});
}  // namespace expr

struct CellTerm {
  std::vector<Expr> cells;
  auto operator<=>(const CellTerm&) const = default;
};

class CellMap {
 public:
  CellMap() = default;
  static CellMap zero(const Ring& ring, BoxSpace source, BoxSpace target, int degree);
  static CellMap identity(const Ring& ring, const BoxSpace& space);
  static CellMap from_terms(const Ring& ring, BoxSpace source, BoxSpace target, int degree,
                            std::vector<std::pair<CellTerm, Scalar>> terms);

  const Ring& ring() const { return ring_; }
  const BoxSpace& source() const { return source_; }
  const BoxSpace& target() const { return target_; }
  int degree() const { return degree_; }
  const std::map<CellTerm, Scalar>& terms() const { return terms_; }
  // True when no term survives normalization. A map may still vanish with terms present.
  bool has_no_terms() const { return terms_.empty(); }

  CellMap operator+(const CellMap& o) const;
  CellMap operator-(const CellMap& o) const;
  CellMap operator-() const;
  CellMap scaled(const Scalar& c) const;

 private:
  CellMap(Ring ring, BoxSpace s, BoxSpace t, int degree) : ring_(ring), source_(std::move(s)), target_(std::move(t)), degree_(degree) {}
  void add_term(CellTerm t, Scalar c);
  Ring ring_ = Ring::integers();
  BoxSpace source_;
  BoxSpace target_;
  int degree_ = 0;
  std::map<CellTerm, Scalar> terms_;
};

std::string describe(const CellMap& f, std::size_t max_terms = 4);

CellMap compose(const CellMap& g, const CellMap& f);
CellMap tensor(std::span<const CellMap> fs);
CellMap tensor_rows(std::span<const CellMap> fs);
CellMap tensor_cols(std::span<const CellMap> fs);
CellMap permuted(const CellMap& f, const CellPermutation& in, const CellPermutation& out);
// Only the zero differential exists in degree 0.
CellMap grid_differential(const CellMap& d, int rows, int cols);

enum class ZeroStatus { Zero, Nonzero, Undecided };
struct ZeroVerdict {
  ZeroStatus status;
  std::string detail;  // witness input for Nonzero, the surviving term classes for Undecided
};
// Groups terms that agree as functions (checked exhaustively on the variables they use), then
// looks for an input where the surviving classes do not cancel: over the whole basis when it has
// at most 2^16 elements, otherwise on seeded random samples.
ZeroVerdict decide_zero(const CellMap& f, std::uint64_t seed = 0x5eed);
// Explicit maps are decided exactly; the seed is unused.
ZeroVerdict decide_zero(const BoxMap& f, std::uint64_t seed = 0x5eed);

// Image of one basis grid, keyed by output digits.
std::map<std::vector<int>, Scalar> apply(const CellMap& f, std::span<const int> input_digits);

// Explicit matrix of a symbolic map; the basis must fit the budget.
BoxMap to_box(const CellMap& f);

}  // namespace graftlab
