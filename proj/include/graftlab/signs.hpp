#pragma once

#include "graftlab/multiindex.hpp"

#include <atomic>
#include <string>
#include <vector>

namespace graftlab {

// Individual summands of the composition sign and of the gluing orientation.
// Every summand can be switched off through a scoped mutation so that the test
// suites can show they notice the change.
enum class SignTerm : unsigned {
  CompUpperK = 1u << 0,     // ascending vertex reordering
  CompUpperL = 1u << 1,     // descending vertex reordering
  CompCross = 1u << 2,      // y0 (x1 + y1)
  CompDegree = 1u << 3,     // (x0 + y0) deg(top)
  GlueUpperK = 1u << 4,
  GlueUpperL = 1u << 5,
  GlueCross = 1u << 6,
  GlueLowerCount = 1u << 7,  // n0 + 1
  GlueUpperCount = 1u << 8,  // (n1 + 1)(x0 + y0)
};

inline constexpr unsigned kAllSignTerms = (1u << 9) - 1;

const std::vector<SignTerm>& all_sign_terms();
std::string to_string(SignTerm t);
bool sign_term_enabled(SignTerm t);

// Drops one summand for the lifetime of the object. Not reentrant across threads:
// install it before launching a sweep.
class ScopedSignMutation {
 public:
  explicit ScopedSignMutation(SignTerm dropped);
  ~ScopedSignMutation();
  ScopedSignMutation(const ScopedSignMutation&) = delete;
  ScopedSignMutation& operator=(const ScopedSignMutation&) = delete;

 private:
  unsigned saved_;
};

inline int parity(int x) { return x & 1; }  // correct for negative x in two's complement

// Sign data of one composition summand psi_{bottom} o phi_{top}.
// k = glue(k_split.upper, k_split.lower) with phi owning k_split.upper;
// l = glue(l_split.upper, l_split.lower) with psi owning l_split.upper.
struct CompositionSign {
  int fixed = 0;       // parity independent of deg(phi)
  int degree_coeff = 0;  // coefficient of deg(phi)
  int value(int top_degree) const { return parity(fixed + degree_coeff * top_degree); }
};
CompositionSign composition_sign(const Splitting& k_split, const Splitting& l_split);
// Single-sided categories.
CompositionSign ascending_composition_sign(const Splitting& k_split);
CompositionSign descending_composition_sign(const Splitting& l_split);

// Gluing orientation for (n0, k0, l0) below (n1, k1, l1).
int gluing_orientation(int n0, const MultiIndex& k0, const MultiIndex& l0, int n1, const MultiIndex& k1,
                       const MultiIndex& l1);

}  // namespace graftlab
