#include "graftlab/acceptance.hpp"

#include "graftlab/categories.hpp"
#include "graftlab/forest.hpp"
#include "graftlab/monoid_morse.hpp"
#include "graftlab/signs.hpp"
#include "graftlab/strata.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

namespace graftlab {

namespace {

// Collects checks and keeps the first failure.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;
  bool fail_fast = false;

  // Returns false when the sweep should stop.
  bool expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (!ok) {
      if (failures++ == 0) first = what();
    }
    return ok || !fail_fast;
  }
  std::string note;  // appended to the summary of a passing run
};

std::string first_violation(const Report& r) {
  if (r.violations.empty()) return "";
  const Violation& v = r.violations.front();
  return v.relation + " " + v.location + " " + v.detail;
}

bool full(const AcceptanceOptions& o) { return o.profile == Profile::Full; }

// 1. closed formula for the gluing sign against the permutation count.
void heartsuit_oracle(Tally& t, const AcceptanceOptions&) {
  for (const MultiIndex& k : multi_indices_up_to(6))
    for (const Splitting& s : splittings(k))
      if (!t.expect(gluing_sign(s.upper, s.lower) == gluing_sign_by_permutation(s.upper, s.lower),
                    [&] { return "heartsuit(" + to_string(s.upper) + ", " + to_string(s.lower) + ")"; }))
        return;
}

// 2. the gluing sign and the composition sign are cocycles over triple splittings.
void sign_associativity(Tally& t, const AcceptanceOptions& o) {
  const int cap = full(o) ? 5 : 4;
  struct Triple {
    MultiIndex first, second, third;  // owned by the first, second, third applied map
  };
  // k layers top to bottom: first, second, third. l layers bottom to top: first, second, third.
  auto k_triples = [&] {
    std::vector<Triple> out;
    for (const MultiIndex& k : multi_indices_up_to(cap))
      for (const Splitting& s : splittings(k))
        for (const Splitting& u : splittings(s.lower)) out.push_back({s.upper, u.upper, u.lower});
    return out;
  }();
  auto l_triples = [&] {
    std::vector<Triple> out;
    for (const MultiIndex& l : multi_indices_up_to(cap))
      for (const Splitting& s : splittings(l))
        for (const Splitting& u : splittings(s.lower)) out.push_back({u.lower, u.upper, s.upper});
    return out;
  }();

  for (const Triple& k : k_triples) {
    const int lhs = gluing_sign(k.first, glue(k.second, k.third)) + gluing_sign(k.second, k.third);
    const int rhs = gluing_sign(glue(k.first, k.second), k.third) + gluing_sign(k.first, k.second);
    if (!t.expect(parity(lhs) == parity(rhs), [&] { return "heartsuit cocycle at " + to_string(glue(k.first, glue(k.second, k.third))); }))
      return;
  }
  for (const Triple& k : k_triples)
    for (const Triple& l : l_triples) {
      const MultiIndex k_low = glue(k.second, k.third), k_high = glue(k.first, k.second);
      const MultiIndex l_high = glue(l.third, l.second), l_low = glue(l.second, l.first);
      // (c b) a: outer split between a and (c b), then c after b.
      const CompositionSign outer_l = composition_sign({k_low, k.first}, {l.first, l_high});
      const CompositionSign inner_l = composition_sign({k.third, k.second}, {l.second, l.third});
      // c (b a): b after a, then c after (b a).
      const CompositionSign inner_r = composition_sign({k.second, k.first}, {l.first, l.second});
      const CompositionSign outer_r = composition_sign({k.third, k_high}, {l_low, l.third});
      for (int da = 0; da <= 1; ++da)
        for (int db = 0; db <= 1; ++db) {
          const int lhs = outer_l.value(da) + inner_l.value(db);
          const int rhs = inner_r.value(da) + outer_r.value(da + db);
          if (!t.expect(parity(lhs) == parity(rhs), [&] {
                return "s cocycle at (" + to_string(glue(k.first, k_low)) + ";" + to_string(glue(l.third, l_low)) +
                       ") layers k " + to_string(k.first) + "/" + to_string(k.second) + "/" + to_string(k.third) + " l " +
                       to_string(l.first) + "/" + to_string(l.second) + "/" + to_string(l.third) + " degrees " +
                       std::to_string(da) + "," + std::to_string(db);
              }))
            return;
        }
    }
}

// 3. gluing orientation against the determinant of the gluing map.
void rho_oracle(Tally& t, const AcceptanceOptions& o) {
  const int cap = full(o) ? 6 : 5;
  std::vector<Splitting> small;
  for (const MultiIndex& k : multi_indices_up_to(cap))
    for (const Splitting& s : splittings(k))
      if (vertex_count(s.lower) <= 3 && vertex_count(s.upper) <= 3) small.push_back(s);
  for (int n0 = 0; n0 <= 2; ++n0)
    for (int n1 = 0; n1 <= 2; ++n1)
      for (const Splitting& ks : small)
        for (const Splitting& ls : small) {
          const StratumType lower{n0, ks.lower, ls.upper}, upper{n1, ks.upper, ls.lower};
          if (!is_nonempty(lower) || !is_nonempty(upper) || !is_nonempty(glue(upper, lower))) continue;
          if (!t.expect(gluing_orientation(lower, upper) == gluing_orientation_by_determinant(lower, upper),
                        [&] { return "rho at lower " + to_string(lower) + " upper " + to_string(upper); }))
            return;
        }
}

// 4. the boundary squares to zero.
void dd_zero(Tally& t, const AcceptanceOptions& o) {
  for (const StratumType& d : dd_zero_domain(3, 3, full(o) ? 4 : 3)) {
    const DdZeroReport r = check_dd_zero(d);
    if (!t.expect(r.pass, [&] { return "dd != 0 at " + to_string(d) + " (" + std::to_string(r.offending.size()) + " labels)"; }))
      return;
  }
}

ModuleRef mixed_module() { return make_module("P", {{"p0", 0}, {"p1", 1}}); }
ModuleRef odd_module() { return make_module("Q", {{"q", 1}}); }
ModuleRef second_mixed_module() { return make_module("R", {{"r0", 0}, {"r1", 1}}); }

Family<BoxMap> boxed(const Family<CellMap>& f) {
  Family<BoxMap> out = zero_family<BoxMap>(f.category, f.ring, f.source, f.target, f.degree, f.bounds);
  for (const auto& [idx, m] : f.components) out.set(idx, to_box(m));
  return out;
}

ActionTriple translation_triple() {
  return {cyclic_group(2), {"a", "b"}, trivial_group(), {{0, 1}, {1, 0}}, {{0}, {1}}};
}
ActionTriple point_triple() {
  return {FiniteSemigroup("G", {"1_G"}, {{0}}), {"x"}, FiniteSemigroup("H", {"1_H"}, {{0}}), {{0}}, {{0}}};
}

// Square-zero structures from the monoid construction, seen in category c.
std::pair<Family<BoxMap>, Family<BoxMap>> square_zero_pair(const Category& c, const Ring& ring, const IndexBounds& b) {
  if (c.kind == CategoryKind::Bimodule)
    return {extract_bimodule_blocks(translation_triple(), ring, b), extract_bimodule_blocks(point_triple(), ring, b)};
  const auto a = boxed(morse_fbialgebra(register_semigroup(cyclic_group(2)), ring, b));
  const auto z = boxed(morse_fbialgebra(register_semigroup(left_zero_semigroup(2)), ring, b));
  switch (c.kind) {
    case CategoryKind::Ascending: return {restrict_to_ascending(a, c.width), restrict_to_ascending(z, c.width)};
    case CategoryKind::Descending: return {restrict_to_descending(a, c.width), restrict_to_descending(z, c.width)};
    default: return {a, z};
  }
}

std::vector<Ring> law_rings() { return {Ring::integers(), Ring::modulo(2), Ring::rationals()}; }
std::vector<Category> law_categories() {
  return {Category::bi(), Category::ascending(), Category::descending(), Category::bimodule()};
}

// The bimodule structure of alpha over itself: every marked component is the unmarked one. Its
// bimodule composite equals the plain composite, so it squares to zero with alpha.
Family<BoxMap> diagonal_bimodule(const Family<BoxMap>& alpha) {
  const ModuleRef A = alpha.source.front();
  Family<BoxMap> out = zero_family<BoxMap>(Category::bimodule(), alpha.ring, {A, A, A}, {A, A, A}, alpha.degree, alpha.bounds);
  for (const ComponentIndex& idx : component_indices(out.category, out.bounds))
    if (const BoxMap* m = alpha.find({idx.k, idx.l})) out.set(idx, *m);
  return out;
}

Family<BoxMap> circle_in(const Category& c, const Ring& ring, const IndexBounds& b) {
  const auto circle = strict_fbialgebra(circle_core(ring), b);
  switch (c.kind) {
    case CategoryKind::Ascending: return restrict_to_ascending(circle, c.width);
    case CategoryKind::Descending: return restrict_to_descending(circle, c.width);
    case CategoryKind::Bimodule: return diagonal_bimodule(circle);
    default: return circle;
  }
}

// 5. associativity, units, Leibniz and d^2 = 0 on random data.
void category_laws(Tally& t, const AcceptanceOptions& o) {
  const int trials = full(o) ? 100 : 10;
  const IndexBounds monoid{4, 8};
  std::mt19937_64 rng(o.seed ^ 0x5a5a);
  for (const Ring& ring : law_rings())
    for (const Category& c : law_categories()) {
      const bool bimod = c.kind == CategoryKind::Bimodule;
      // The bimodule category has about six times as many components per index; fewer cells keep
      // its sweep in line with the others.
      const IndexBounds laws = bimod ? IndexBounds{4, 8} : IndexBounds{4, 12};
      const IndexBounds circle_bounds = bimod ? IndexBounds{2, 4} : IndexBounds{3, 6};
      const Object X = bimod ? Object{mixed_module(), odd_module(), mixed_module()} : Object{mixed_module()};
      const Object Y = bimod ? Object{odd_module(), mixed_module(), odd_module()} : Object{second_mixed_module()};
      const auto idX = identity_family<BoxMap>(c, ring, X, laws), idY = identity_family<BoxMap>(c, ring, Y, laws);
      const auto [alpha, beta] = square_zero_pair(c, ring, monoid);
      // Monoid structures have d = 0 and live in degree 0, so the circle (nonzero d, odd generators)
      // is what gives the differential laws something to bite on.
      const auto circle = circle_in(c, ring, circle_bounds);
      const std::string where = to_string(c) + " over " + ring.name();
      auto check = [&](const Report& r, const char* law) {
        return t.expect(r.passed(), [&] { return std::string(law) + " fails in " + where + ": " + first_violation(r); });
      };
      auto differential_laws = [&](const Family<BoxMap>& a, const Family<BoxMap>& b, const IndexBounds& bounds, int trial) {
        const auto phi = random_family(c, ring, a.source, b.source, trial % 2, bounds, rng, 0.7, 16);
        const auto psi = random_family(c, ring, b.source, a.source, (trial / 2) % 2, bounds, rng, 0.7, 16);
        const auto dphi = hom_differential(b, phi, a);
        if (!check(require_zero(hom_differential(b, dphi, a), "dd"), "d^2 = 0")) return false;
        const auto lhs = hom_differential(a, compose(psi, phi), a);
        const auto dpsi_phi = compose(hom_differential(a, psi, b), phi);
        const auto psi_dphi = compose(psi, dphi);
        const auto rhs = parity(psi.degree) ? dpsi_phi - psi_dphi : dpsi_phi + psi_dphi;
        if (!check(compare_families(lhs, rhs, "leibniz"), "Leibniz")) return false;
        return true;
      };
      int nontrivial = 0;
      for (int trial = 0; trial < trials; ++trial) {
        const auto f = random_family(c, ring, X, Y, trial % 2, laws, rng, 0.7, 16);
        const auto g = random_family(c, ring, Y, X, (trial / 2) % 2, laws, rng, 0.7, 16);
        const auto h = random_family(c, ring, X, Y, 1, laws, rng, 0.7, 16);
        if (!check(compare_families(compose(idY, f), f, "left unit"), "left unit")) return;
        if (!check(compare_families(compose(f, idX), f, "right unit"), "right unit")) return;
        const auto hgf = compose(compose(h, g), f);
        if (!hgf.components.empty()) ++nontrivial;
        if (!check(compare_families(hgf, compose(h, compose(g, f)), "assoc"), "associativity")) return;
        if (!differential_laws(alpha, beta, monoid, trial)) return;
        if (trial % 10 == 0 && !differential_laws(circle, circle, circle_bounds, trial)) return;
      }
      if (!t.expect(2 * nontrivial >= trials, [&] {
            return "only " + std::to_string(nontrivial) + " of " + std::to_string(trials) + " triple composites are nonzero in " + where;
          }))
        return;
    }
}

// 6. the monoid corpus end to end.
void monoid_corpus(Tally& t, const AcceptanceOptions& o) {
  const Ring z = Ring::integers();
  const IndexBounds b{4, 16};
  for (int sg : corpus_semigroups()) {
    const Report r = check_fbialgebra(morse_fbialgebra(sg, z, b));
    if (!t.expect(r.passed(), [&] { return semigroup(sg).name() + ": " + first_violation(r); })) return;
  }
  for (const NamedMap& h : corpus_homomorphisms()) {
    const SemigroupMap& f = semigroup_map(h.map);
    const Report r = check_fbialg_morphism(morse_pushforward(h.map, z, b), morse_fbialgebra(f.from, z, b), morse_fbialgebra(f.to, z, b));
    if (!t.expect(r.passed(), [&] { return h.name + ": " + first_violation(r); })) return;
  }
  std::size_t n = 0;
  for (const auto& chain : corpus_chains(2)) {
    if (!full(o) && n++ % 8 != 0) continue;
    std::vector<int> ids;
    std::string name;
    for (const NamedMap& m : chain) {
      ids.push_back(m.map);
      name += (name.empty() ? "" : ", ") + m.name;
    }
    // Vertices and edges are the objects and morphisms verified above.
    const Report r = check_simplex(morse_simplex(ids, z, b), SimplexCheckOptions{false, false});
    if (!t.expect(r.passed(), [&] { return "chain " + name + ": " + first_violation(r); })) return;
  }
}

// 7. both forms of the simplex relation agree on arbitrary families.
void residual_forms(Tally& t, const AcceptanceOptions& o) {
  const int families = full(o) ? 50 : 10;
  const IndexBounds b{4, 9};
  std::mt19937_64 rng(o.seed ^ 0x7777);
  const auto rings = law_rings();
  const auto cats = law_categories();
  std::size_t faces = 0, nonzero = 0;
  for (int i = 0; i < families; ++i) {
    const Ring& ring = rings[static_cast<std::size_t>(i) % rings.size()];
    const Category& c = cats[static_cast<std::size_t>(i / 3) % cats.size()];
    const int n = 2 + i % 2;
    const bool bimod = c.kind == CategoryKind::Bimodule;
    std::vector<Object> objs;
    for (int v = 0; v <= n; ++v) {
      objs.push_back(bimod ? Object{v % 2 ? odd_module() : mixed_module(), mixed_module(), odd_module()}
                           : Object{v % 2 ? second_mixed_module() : mixed_module()});
    }
    Simplex<BoxMap> s;
    for (const Object& x : objs) s.objects.push_back(random_family(c, ring, x, x, -1, b, rng, 0.5, 8));
    for (const auto& sigma : faces_of_simplex(n, 1))
      s.maps[sigma] = random_family(c, ring, objs[static_cast<std::size_t>(sigma.back())], objs[static_cast<std::size_t>(sigma.front())],
                                    static_cast<int>(sigma.size()) - 2, b, rng, 0.5, 8);
    for (const auto& sigma : faces_of_simplex(n, 1)) {
      const auto absorbed = absorbed_residual(s, sigma);
      ++faces;
      if (!absorbed.components.empty()) ++nonzero;
      const Report r = compare_families(absorbed, unabsorbed_residual(s, sigma), "forms");
      if (!t.expect(r.passed(), [&] { return "family " + std::to_string(i) + " (" + to_string(c) + "): " + first_violation(r); }))
        return;
    }
  }
  t.expect(2 * nonzero >= faces, [&] { return "only " + std::to_string(nonzero) + " of " + std::to_string(faces) + " residuals are nonzero"; });
}

// 8. restriction to one-sided components intertwines composition.
void forgetful(Tally& t, const AcceptanceOptions& o) {
  const int pairs = full(o) ? 100 : 20;
  const IndexBounds b{4, 12};
  std::mt19937_64 rng(o.seed ^ 0x8888);
  const auto rings = law_rings();
  int restricted = 0, nonzero = 0;
  for (int i = 0; i < pairs; ++i) {
    const Ring& ring = rings[static_cast<std::size_t>(i) % rings.size()];
    const auto f = random_family(Category::bi(), ring, {mixed_module()}, {second_mixed_module()}, i % 2, b, rng, 0.7, 16);
    const auto g = random_family(Category::bi(), ring, {second_mixed_module()}, {mixed_module()}, (i / 2) % 2, b, rng, 0.7, 16);
    const auto gf = compose(g, f);
    for (int w = 1; w <= b.max_leaves; ++w) {
      restricted += 2;
      nonzero += !restrict_to_ascending(gf, w).components.empty();
      nonzero += !restrict_to_descending(gf, w).components.empty();
      const Report up = compare_families(restrict_to_ascending(gf, w), compose(restrict_to_ascending(g, w), restrict_to_ascending(f, w)), "ascending");
      if (!t.expect(up.passed(), [&] { return "pair " + std::to_string(i) + " width " + std::to_string(w) + ": " + first_violation(up); }))
        return;
      const Report down = compare_families(restrict_to_descending(gf, w), compose(restrict_to_descending(g, w), restrict_to_descending(f, w)), "descending");
      if (!t.expect(down.passed(), [&] { return "pair " + std::to_string(i) + " height " + std::to_string(w) + ": " + first_violation(down); }))
        return;
    }
  }
  t.expect(2 * nonzero >= restricted, [&] {
    return "only " + std::to_string(nonzero) + " of " + std::to_string(restricted) + " restricted composites are nonzero";
  });
}

// 9. every sign summand matters to at least one of criteria 3 to 6.
void mutations(Tally& t, const AcceptanceOptions& o) {
  AcceptanceOptions fast = o;
  fast.fail_fast = true;
  for (SignTerm term : all_sign_terms()) {
    const ScopedSignMutation m(term);
    std::string caught;
    // Cheapest detectors first.
    for (int id : {6, 3, 5, 4}) {
      if (!run_criterion(id, fast).passed) {
        caught = std::to_string(id);
        break;
      }
    }
    if (!t.expect(!caught.empty(), [&] { return "dropping " + to_string(term) + " is not detected"; })) return;
    t.note += (t.note.empty() ? "" : ", ") + to_string(term) + " by " + caught;
  }
}

// 10. golden structures.
void goldens(Tally& t, const AcceptanceOptions&) {
  auto corolla = [](const MultiIndex& k, int h, Polarity p) {
    Forest f = Forest::corollas(k);
    std::map<int, Scalar> heights;
    for (int v : f.vertices()) heights[v] = Scalar(h);
    return HeightedForest(f, heights, p);
  };
  const HenriquesGraph g = henriques_graph(corolla(MultiIndex({2}), 0, Polarity::Ascending), corolla(MultiIndex({2}), 1, Polarity::Descending));
  const std::vector<int> counts{strands_at(g, Scalar(-1)), strands_at(g, Scalar(1, 2)), strands_at(g, Scalar(2))};
  t.expect(counts == std::vector<int>{2, 4, 2}, [&] {
    return "Hopf pattern strands " + std::to_string(counts[0]) + "," + std::to_string(counts[1]) + "," + std::to_string(counts[2]);
  });
  t.expect(g.nodes.size() == 4, [&] { return "Hopf pattern has " + std::to_string(g.nodes.size()) + " gluing nodes"; });

  const FiniteSemigroup m = triple_to_monoid(point_triple());
  t.expect(m.elements() == std::vector<std::string>{"1_G", "x", "1_H", "pt"}, [] { return "triple element order"; });
  const std::vector<std::vector<int>> golden{{0, 1, 3, 3}, {3, 3, 1, 3}, {3, 3, 2, 3}, {3, 3, 3, 3}};
  t.expect(m.table() == golden, [] { return "triple product table"; });
}

struct Criterion {
  const char* title;
  void (*run)(Tally&, const AcceptanceOptions&);
};

const std::array<Criterion, kCriterionCount>& criteria() {
  static const std::array<Criterion, kCriterionCount> all{{
      {"heartsuit equals the permutation oracle, |k| <= 6", heartsuit_oracle},
      {"heartsuit and composition signs are associative", sign_associativity},
      {"rho equals the gluing-map determinant", rho_oracle},
      {"boundary squares to zero", dd_zero},
      {"category laws on random data", category_laws},
      {"monoid corpus: objects, pushforwards, chains", monoid_corpus},
      {"absorbed and unabsorbed simplex relations agree", residual_forms},
      {"forgetful restriction intertwines composition", forgetful},
      {"every sign term is detected when dropped", mutations},
      {"golden Henriques graph and triple table", goldens},
  }};
  return all;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  if (id < 1 || id > kCriterionCount) throw std::invalid_argument("no acceptance criterion " + std::to_string(id));
  const Criterion& c = criteria()[static_cast<std::size_t>(id - 1)];
  Tally t;
  t.fail_fast = opt.fail_fast;
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  r.id = id;
  r.title = c.title;
  try {
    c.run(t, opt);
  } catch (const std::exception& e) {
    ++t.failures;
    if (t.first.empty()) t.first = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.checks = t.checks;
  r.passed = t.failures == 0 && t.checks > 0;
  if (t.checks == 0 && t.failures == 0) t.first = "no checks ran";
  r.detail = r.passed ? std::to_string(t.checks) + " checks" + (t.note.empty() ? "" : "; " + t.note) : std::to_string(t.failures) + " failures; first: " + t.first;
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, opt));
  return out;
}

std::string format_line(const CriterionResult& r, bool with_time) {
  std::string tail;
  if (with_time) {
    char time[32];
    std::snprintf(time, sizeof time, ", %.1fs", r.seconds);
    tail = time;
  }
  return std::string(r.passed ? "PASS" : "FAIL") + "  criterion " + std::to_string(r.id) + ": " + r.title + " (" + r.detail +
         tail + ")";
}

}  // namespace graftlab
