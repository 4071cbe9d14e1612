#include "graftlab/signs.hpp"

namespace graftlab {

namespace {
std::atomic<unsigned> g_enabled{kAllSignTerms};

int on(SignTerm t, int value) { return sign_term_enabled(t) ? value : 0; }
}  // namespace

const std::vector<SignTerm>& all_sign_terms() {
  static const std::vector<SignTerm> terms = {
      SignTerm::CompUpperK, SignTerm::CompUpperL,     SignTerm::CompCross,     SignTerm::CompDegree,
      SignTerm::GlueUpperK, SignTerm::GlueUpperL,     SignTerm::GlueCross,     SignTerm::GlueLowerCount,
      SignTerm::GlueUpperCount};
  return terms;
}

std::string to_string(SignTerm t) {
  switch (t) {
    case SignTerm::CompUpperK: return "composition:k-reordering";
    case SignTerm::CompUpperL: return "composition:l-reordering";
    case SignTerm::CompCross: return "composition:y0(x1+y1)";
    case SignTerm::CompDegree: return "composition:(x0+y0)deg";
    case SignTerm::GlueUpperK: return "gluing:k-reordering";
    case SignTerm::GlueUpperL: return "gluing:l-reordering";
    case SignTerm::GlueCross: return "gluing:y0(x1+y1)";
    case SignTerm::GlueLowerCount: return "gluing:n0+1";
    case SignTerm::GlueUpperCount: return "gluing:(n1+1)(x0+y0)";
  }
  return "?";
}

bool sign_term_enabled(SignTerm t) { return (g_enabled.load(std::memory_order_relaxed) & static_cast<unsigned>(t)) != 0; }

ScopedSignMutation::ScopedSignMutation(SignTerm dropped) : saved_(g_enabled.load()) {
  g_enabled.store(saved_ & ~static_cast<unsigned>(dropped));
}

ScopedSignMutation::~ScopedSignMutation() { g_enabled.store(saved_); }

CompositionSign composition_sign(const Splitting& k_split, const Splitting& l_split) {
  // psi owns (k_split.lower, l_split.upper), phi owns (k_split.upper, l_split.lower).
  const int x0 = vertex_count(k_split.lower), x1 = vertex_count(k_split.upper);
  const int y0 = vertex_count(l_split.upper), y1 = vertex_count(l_split.lower);
  CompositionSign s;
  s.fixed = on(SignTerm::CompUpperK, gluing_sign(k_split.upper, k_split.lower)) +
            on(SignTerm::CompUpperL, gluing_sign(l_split.upper, l_split.lower)) +
            on(SignTerm::CompCross, y0 * (x1 + y1));
  s.fixed = parity(s.fixed);
  s.degree_coeff = on(SignTerm::CompDegree, parity(x0 + y0));
  return s;
}

CompositionSign ascending_composition_sign(const Splitting& k_split) {
  CompositionSign s;
  s.fixed = on(SignTerm::CompUpperK, gluing_sign(k_split.upper, k_split.lower));
  s.degree_coeff = on(SignTerm::CompDegree, parity(vertex_count(k_split.lower)));
  return s;
}

CompositionSign descending_composition_sign(const Splitting& l_split) {
  const int y0 = vertex_count(l_split.upper), y1 = vertex_count(l_split.lower);
  CompositionSign s;
  s.fixed = parity(on(SignTerm::CompUpperL, gluing_sign(l_split.upper, l_split.lower)) +
                   on(SignTerm::CompCross, y0 * y1));
  s.degree_coeff = on(SignTerm::CompDegree, parity(y0));
  return s;
}

int gluing_orientation(int n0, const MultiIndex& k0, const MultiIndex& l0, int n1, const MultiIndex& k1,
                       const MultiIndex& l1) {
  const int x0 = vertex_count(k0), x1 = vertex_count(k1);
  const int y0 = vertex_count(l0), y1 = vertex_count(l1);
  int r = on(SignTerm::GlueUpperK, gluing_sign(k1, k0)) + on(SignTerm::GlueUpperL, gluing_sign(l0, l1)) +
          on(SignTerm::GlueCross, y0 * (x1 + y1)) + on(SignTerm::GlueLowerCount, n0 + 1) +
          on(SignTerm::GlueUpperCount, (n1 + 1) * (x0 + y0));
  return parity(r);
}

}  // namespace graftlab
