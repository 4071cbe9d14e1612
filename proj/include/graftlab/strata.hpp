#pragma once

#include "graftlab/multiindex.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graftlab {

// Type (n, k, l) of an n-grafted biforest.
struct StratumType {
  int n = 0;
  MultiIndex k;
  MultiIndex l;
  auto operator<=>(const StratumType&) const = default;
};

// nullopt when the stratum is empty (n = 0 and symmetry_dim(k, l) != 1).
std::optional<int> stratum_dim(const StratumType& d);
inline bool is_nonempty(const StratumType& d) { return stratum_dim(d).has_value(); }

// lower = D0 (carries k0, l0), upper = D1; D = D1 # D0.
struct TypeSplitting {
  StratumType lower;
  StratumType upper;
};

StratumType glue(const StratumType& upper, const StratumType& lower);
// Pairs with n0 + n1 = n, k = glue(k1, k0), l = glue(l0, l1) and both factors nonempty.
std::vector<TypeSplitting> type_splittings(const StratumType& d);

int gluing_orientation(const StratumType& lower, const StratumType& upper);
// Orientation parity of the explicit linear gluing map, from the sign of its determinant.
int gluing_orientation_by_determinant(const StratumType& lower, const StratumType& upper);

// A stratum whose grafting levels are labelled by simplex vertices sigma_0 < ... < sigma_n.
struct SimplexStratum {
  std::vector<int> sigma;
  MultiIndex k;
  MultiIndex l;
  int n() const { return static_cast<int>(sigma.size()) - 1; }
  StratumType type() const { return {n(), k, l}; }
  auto operator<=>(const SimplexStratum&) const = default;
};

SimplexStratum labelled(const StratumType& d);  // sigma = [0, ..., n]
std::string to_string(const SimplexStratum& s);
std::string to_string(const StratumType& d);

// Product of strata, bottom factor first.
using StratumLabel = std::vector<SimplexStratum>;
std::string to_string(const StratumLabel& label);

struct SignedStratum {
  StratumLabel label;
  int sign = 0;  // parity
};

// Codimension-one boundary: inner faces sigma_i removed (i = 1..n-1, sign i) and the
// gluing products with sign given by the gluing orientation.
std::vector<SignedStratum> boundary(const SimplexStratum& d);
std::vector<SignedStratum> boundary(const StratumType& d);
// Boundary of a product, with the Leibniz sign (-1)^{dim of the factors below}.
std::vector<SignedStratum> boundary(const StratumLabel& label);
int label_dim(const StratumLabel& label);

struct DdZeroReport {
  StratumType stratum;
  bool pass = true;
  std::size_t codim2_labels = 0;
  std::vector<std::pair<StratumLabel, int>> offending;  // label and net signed count
};

// Applies the boundary twice and checks that every codimension-two label cancels.
// Requires a nonempty stratum of dimension >= 2.
DdZeroReport check_dd_zero(const StratumType& d);

// Every nonempty D with n <= max_n, |k|,|l| <= max_leaves and 2 <= dim <= max_dim.
std::vector<StratumType> dd_zero_domain(int max_n, int max_leaves, int max_dim);

}  // namespace graftlab
