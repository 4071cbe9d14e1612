#include "graftlab/monoid_morse.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace graftlab {

FiniteSemigroup cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic_group: order must be positive");
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i)].push_back((i + j) % n);
  }
  return FiniteSemigroup("Z/" + std::to_string(n), names, table);
}

FiniteSemigroup symmetric_group_3() {
  // Permutations of {0,1,2} as images of (0,1,2); product p*q = p after q.
  const std::vector<std::array<int, 3>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (std::size_t p = 0; p < 6; ++p)
    for (std::size_t q = 0; q < 6; ++q) {
      std::array<int, 3> pq{};
      for (std::size_t i = 0; i < 3; ++i) pq[i] = perms[p][static_cast<std::size_t>(perms[q][i])];
      table[p][q] = static_cast<int>(std::find(perms.begin(), perms.end(), pq) - perms.begin());
    }
  return FiniteSemigroup("S3", {"e", "(12)", "(01)", "(012)", "(021)", "(02)"}, table);
}

FiniteSemigroup left_zero_semigroup(int n) {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    names.push_back(std::string(1, static_cast<char>('a' + i)));
    table[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(n), i);
  }
  return FiniteSemigroup("LZ" + std::to_string(n), names, table);
}

FiniteSemigroup min_semilattice() { return FiniteSemigroup("min{0,1}", {"0", "1"}, {{0, 0}, {0, 1}}); }

FiniteSemigroup trivial_group() { return FiniteSemigroup("1", {"1"}, {{0}}); }

std::vector<int> corpus_semigroups() {
  return {register_semigroup(cyclic_group(2)),       register_semigroup(cyclic_group(3)),
          register_semigroup(cyclic_group(4)),       register_semigroup(left_zero_semigroup(2)),
          register_semigroup(min_semilattice()),     register_semigroup(symmetric_group_3())};
}

std::vector<NamedMap> corpus_homomorphisms() {
  const int z2 = register_semigroup(cyclic_group(2)), z3 = register_semigroup(cyclic_group(3)),
            z4 = register_semigroup(cyclic_group(4)), lz = register_semigroup(left_zero_semigroup(2)),
            sl = register_semigroup(min_semilattice()), s3 = register_semigroup(symmetric_group_3()),
            z8 = register_semigroup(cyclic_group(8)), one = register_semigroup(trivial_group());
  std::vector<NamedMap> out;
  auto add = [&](std::string name, int from, int to, std::vector<int> table) {
    out.push_back({std::move(name), register_map(from, to, std::move(table))});
  };
  for (int s : corpus_semigroups()) {
    std::vector<int> id(static_cast<std::size_t>(semigroup(s).size()));
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
    add("id_" + semigroup(s).name(), s, s, id);
    add(semigroup(s).name() + "->1", s, one, std::vector<int>(id.size(), 0));
  }
  add("Z/4->Z/2", z4, z2, {0, 1, 0, 1});
  add("Z/8->Z/4", z8, z4, {0, 1, 2, 3, 0, 1, 2, 3});
  add("Z/8->Z/2", z8, z2, {0, 1, 0, 1, 0, 1, 0, 1});
  add("Z/2->Z/4", z2, z4, {0, 2});
  add("Z/3 doubling", z3, z3, {0, 2, 1});
  add("sign S3->Z/2", s3, z2, {0, 1, 1, 0, 0, 1});
  add("Z/2->S3", z2, s3, {0, 2});
  add("1->Z/2", one, z2, {0});
  add("1->S3", one, s3, {0});
  add("1->min", one, sl, {1});
  add("1->LZ2", one, lz, {0});
  add("LZ2 swap", lz, lz, {1, 0});
  add("LZ2->min", lz, sl, {0, 0});
  add("Z/2->min", z2, sl, {1, 1});
  for (const NamedMap& m : out)
    if (!semigroup_map(m.map).homomorphism) throw std::logic_error("corpus map " + m.name + " is not a homomorphism");
  return out;
}

std::vector<std::vector<NamedMap>> corpus_chains(int length) {
  const auto homs = corpus_homomorphisms();
  std::vector<std::vector<NamedMap>> out;
  std::vector<NamedMap> chain;
  auto extend = [&](auto&& self) -> void {
    if (static_cast<int>(chain.size()) == length) {
      out.push_back(chain);
      return;
    }
    for (const NamedMap& h : homs) {
      if (!chain.empty() && semigroup_map(chain.back().map).to != semigroup_map(h.map).from) continue;
      chain.push_back(h);
      self(self);
      chain.pop_back();
    }
  };
  extend(extend);
  return out;
}

template <class Map>
Family<Map> strict_fbialgebra(const BialgebraCore<Map>& core, const IndexBounds& b) {
  const ModuleRef A = core.module;
  const Ring& R = core.ring;
  Family<Map> alpha = zero_family<Map>(Category::bi(), R, {A}, {A}, -1, b);
  auto id = [&](int rows, int cols) { return Map::identity(R, BoxSpace::grid(A, rows, cols)); };
  for (const ComponentIndex& idx : component_indices(alpha.category, b)) {
    const int a = trees(idx.k), w = trees(idx.l);
    if (idx.k.is_vertical() && idx.l.is_vertical()) {
      alpha.set(idx, grid_differential(core.differential, a, w));
      continue;
    }
    if (vertex_count(idx) != 1) continue;
    std::vector<Map> parts;
    if (idx.l.is_vertical()) {
      const int i = static_cast<int>(std::find(idx.k.entries().begin(), idx.k.entries().end(), 2) - idx.k.entries().begin());
      std::vector<Map> row(static_cast<std::size_t>(w), core.product);
      if (i > 0) parts.push_back(id(i, w));
      parts.push_back(tensor_cols(std::span<const Map>(row)));
      if (i < a - 1) parts.push_back(id(a - i - 1, w));
      alpha.set(idx, tensor_rows(std::span<const Map>(parts)));
    } else {
      const int j = static_cast<int>(std::find(idx.l.entries().begin(), idx.l.entries().end(), 2) - idx.l.entries().begin());
      std::vector<Map> col(static_cast<std::size_t>(a), core.coproduct);
      if (j > 0) parts.push_back(id(a, j));
      parts.push_back(tensor_rows(std::span<const Map>(col)));
      if (j < w - 1) parts.push_back(id(a, w - j - 1));
      alpha.set(idx, tensor_cols(std::span<const Map>(parts)));
    }
  }
  return alpha;
}

template Family<BoxMap> strict_fbialgebra<BoxMap>(const BialgebraCore<BoxMap>&, const IndexBounds&);
template Family<CellMap> strict_fbialgebra<CellMap>(const BialgebraCore<CellMap>&, const IndexBounds&);

BialgebraCore<CellMap> semigroup_core(int sg, const Ring& ring) {
  const ModuleRef A = semigroup_module(sg);
  const BoxSpace one = BoxSpace::grid(A, 1, 1);
  const std::array<Expr, 2> xy{expr::var(0), expr::var(1)};
  BialgebraCore<CellMap> core;
  core.ring = ring;
  core.module = A;
  core.differential = CellMap::zero(ring, one, one, -1);
  core.product = CellMap::from_terms(ring, BoxSpace::grid(A, 2, 1), one, 0, {{CellTerm{{expr::mul(sg, xy)}}, Scalar(1)}});
  core.coproduct = CellMap::from_terms(ring, one, BoxSpace::grid(A, 1, 2), 0, {{CellTerm{{expr::var(0), expr::var(0)}}, Scalar(1)}});
  return core;
}

BialgebraCore<BoxMap> semigroup_core_box(int sg, const Ring& ring) {
  const auto core = semigroup_core(sg, ring);
  return {ring, core.module, to_box(core.differential), to_box(core.product), to_box(core.coproduct)};
}

BialgebraCore<BoxMap> circle_core(const Ring& ring) {
  // Basis g^a u^b, index a + 2b: 1, g, u, gu.
  const ModuleRef C = make_module("C", {{"1", 0}, {"g", 0}, {"u", 1}, {"gu", 1}});
  const BoxSpace one = BoxSpace::grid(C, 1, 1);
  BialgebraCore<BoxMap> core;
  core.ring = ring;
  core.module = C;
  core.differential = BoxMap::from_entries(ring, one, one, -1, {{2, 1, 1}, {2, 0, -1}, {3, 0, 1}, {3, 1, -1}});
  std::vector<BoxEntry> product;
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t y = 0; y < 4; ++y) {
      const std::uint64_t u = x / 2 + y / 2;
      if (u > 1) continue;
      product.push_back({x * 4 + y, (x % 2 + y % 2) % 2 + 2 * u, 1});
    }
  core.product = BoxMap::from_entries(ring, BoxSpace::grid(C, 2, 1), one, 0, std::move(product));
  // Delta 1 = 1 1, Delta g = g g, Delta u = u 1 + g u, Delta gu = gu g + 1 gu.
  core.coproduct = BoxMap::from_entries(ring, one, BoxSpace::grid(C, 1, 2), 0,
                                        {{0, 0 * 4 + 0, 1}, {1, 1 * 4 + 1, 1}, {2, 2 * 4 + 0, 1}, {2, 1 * 4 + 2, 1},
                                         {3, 3 * 4 + 1, 1}, {3, 0 * 4 + 3, 1}});
  return core;
}

Family<CellMap> morse_fbialgebra(int sg, const Ring& ring, const IndexBounds& b, bool allow_nonassociative) {
  const FiniteSemigroup& s = semigroup(sg);
  if (!s.associative() && !allow_nonassociative) {
    const auto [x, y, z] = *s.associativity_witness();
    throw std::invalid_argument("semigroup '" + s.name() + "' is not associative at (" + s.elements()[static_cast<std::size_t>(x)] +
                                ", " + s.elements()[static_cast<std::size_t>(y)] + ", " + s.elements()[static_cast<std::size_t>(z)] + ")");
  }
  const ModuleRef A = semigroup_module(sg);
  Family<CellMap> alpha = zero_family<CellMap>(Category::bi(), ring, {A}, {A}, -1, b);
  for (const ComponentIndex& idx : component_indices(alpha.category, b)) {
    if (vertex_count(idx) != 1) continue;
    const int a = trees(idx.k), w = trees(idx.l);
    CellTerm t;
    if (idx.l.is_vertical()) {
      const int i = static_cast<int>(std::find(idx.k.entries().begin(), idx.k.entries().end(), 2) - idx.k.entries().begin());
      for (int r = 0; r < a; ++r)
        for (int c = 0; c < w; ++c) {
          if (r < i) {
            t.cells.push_back(expr::var(r * w + c));
          } else if (r == i) {
            const std::array<Expr, 2> pair{expr::var(i * w + c), expr::var((i + 1) * w + c)};
            t.cells.push_back(expr::mul(sg, pair));
          } else {
            t.cells.push_back(expr::var((r + 1) * w + c));
          }
        }
    } else {
      const int j = static_cast<int>(std::find(idx.l.entries().begin(), idx.l.entries().end(), 2) - idx.l.entries().begin());
      for (int r = 0; r < a; ++r)
        for (int c = 0; c <= w; ++c) t.cells.push_back(expr::var(r * w + (c <= j ? c : c - 1)));
    }
    alpha.set(idx, CellMap::from_terms(ring, component_source(alpha.category, {A}, idx),
                                       component_target(alpha.category, {A}, idx), 0, {{std::move(t), Scalar(1)}}));
  }
  return alpha;
}

Family<CellMap> morse_pushforward(int map, const Ring& ring, const IndexBounds& b) {
  const SemigroupMap& f = semigroup_map(map);
  if (!f.homomorphism) {
    const auto [x, y] = *homomorphism_witness(f);
    throw std::invalid_argument("map is not a homomorphism: f(xy) != f(x)f(y) at (" + semigroup(f.from).elements()[static_cast<std::size_t>(x)] +
                                ", " + semigroup(f.from).elements()[static_cast<std::size_t>(y)] + ")");
  }
  const Object src{semigroup_module(f.from)}, tgt{semigroup_module(f.to)};
  Family<CellMap> phi = zero_family<CellMap>(Category::bi(), ring, src, tgt, 0, b);
  for (const ComponentIndex& idx : component_indices(phi.category, b)) {
    if (!idx.k.is_vertical() || !idx.l.is_vertical()) continue;
    const BoxSpace s = component_source(phi.category, src, idx);
    CellTerm t;
    for (int c = 0; c < s.cell_count(); ++c) t.cells.push_back(expr::apply(map, expr::var(c)));
    phi.set(idx, CellMap::from_terms(ring, s, component_target(phi.category, tgt, idx), 0, {{std::move(t), Scalar(1)}}));
  }
  return phi;
}

Simplex<CellMap> morse_simplex(std::span<const int> chain, const Ring& ring, const IndexBounds& b) {
  if (chain.empty()) throw std::invalid_argument("morse_simplex needs at least one map");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (semigroup_map(chain[i]).to != semigroup_map(chain[i + 1]).from) throw std::invalid_argument("morse_simplex: chain is not composable");
  const int n = static_cast<int>(chain.size());
  // stage[j] is the semigroup after applying h_1..h_j.
  std::vector<int> stage{semigroup_map(chain.front()).from};
  for (int h : chain) stage.push_back(semigroup_map(h).to);
  auto vertex_semigroup = [&](int v) { return stage[static_cast<std::size_t>(n - v)]; };

  Simplex<CellMap> s;
  for (int v = 0; v <= n; ++v) s.objects.push_back(morse_fbialgebra(vertex_semigroup(v), ring, b));
  for (const auto& sigma : faces_of_simplex(n, 1)) {
    const int first = sigma.front(), last = sigma.back();
    if (sigma.size() == 2) {
      // h_{n-last+1}, .., h_{n-first} in application order.
      int composite = chain[static_cast<std::size_t>(n - last)];
      for (int t = n - last + 1; t <= n - first - 1; ++t) composite = compose_maps(chain[static_cast<std::size_t>(t)], composite);
      s.maps[sigma] = morse_pushforward(composite, ring, b);
    } else {
      s.maps[sigma] = zero_family<CellMap>(Category::bi(), ring, {semigroup_module(vertex_semigroup(last))},
                                           {semigroup_module(vertex_semigroup(first))}, static_cast<int>(sigma.size()) - 2, b);
    }
  }
  return s;
}

namespace {

std::optional<int> identity_of(const FiniteSemigroup& s) {
  for (int e = 0; e < s.size(); ++e) {
    bool ok = true;
    for (int x = 0; x < s.size() && ok; ++x) ok = s.mul(e, x) == x && s.mul(x, e) == x;
    if (ok) return e;
  }
  return std::nullopt;
}

void require_group(const FiniteSemigroup& s, const char* which) {
  const auto e = identity_of(s);
  if (!e) throw std::invalid_argument(std::string(which) + " has no identity element");
  for (int x = 0; x < s.size(); ++x) {
    bool inverse = false;
    for (int y = 0; y < s.size() && !inverse; ++y) inverse = s.mul(x, y) == *e && s.mul(y, x) == *e;
    if (!inverse) throw std::invalid_argument(std::string(which) + ": element " + s.elements()[static_cast<std::size_t>(x)] + " has no inverse");
  }
}

}  // namespace

void validate(const ActionTriple& t) {
  require_group(t.G, "G");
  require_group(t.H, "H");
  const int g = t.G.size(), h = t.H.size(), x = static_cast<int>(t.X.size());
  if (x == 0) throw std::invalid_argument("X is empty");
  auto in_range = [&](const std::vector<std::vector<int>>& table, int rows, int cols, const char* what) {
    if (static_cast<int>(table.size()) != rows) throw std::invalid_argument(std::string(what) + " table has the wrong shape");
    for (const auto& row : table) {
      if (static_cast<int>(row.size()) != cols) throw std::invalid_argument(std::string(what) + " table has the wrong shape");
      for (int v : row)
        if (v < 0 || v >= x) throw std::invalid_argument(std::string(what) + " table entry out of range");
    }
  };
  in_range(t.left, g, x, "left action");
  in_range(t.right, x, h, "right action");
  auto L = [&](int a, int p) { return t.left[static_cast<std::size_t>(a)][static_cast<std::size_t>(p)]; };
  auto Rt = [&](int p, int b) { return t.right[static_cast<std::size_t>(p)][static_cast<std::size_t>(b)]; };
  const int eg = *identity_of(t.G), eh = *identity_of(t.H);
  for (int p = 0; p < x; ++p) {
    if (L(eg, p) != p) throw std::invalid_argument("identity of G does not act trivially");
    if (Rt(p, eh) != p) throw std::invalid_argument("identity of H does not act trivially");
    for (int a = 0; a < g; ++a)
      for (int a2 = 0; a2 < g; ++a2)
        if (L(t.G.mul(a, a2), p) != L(a, L(a2, p))) throw std::invalid_argument("left action is not compatible with the product of G");
    for (int b = 0; b < h; ++b)
      for (int b2 = 0; b2 < h; ++b2)
        if (Rt(p, t.H.mul(b, b2)) != Rt(Rt(p, b), b2)) throw std::invalid_argument("right action is not compatible with the product of H");
    for (int a = 0; a < g; ++a)
      for (int b = 0; b < h; ++b)
        if (Rt(L(a, p), b) != L(a, Rt(p, b))) throw std::invalid_argument("the two actions do not commute");
  }
}

FiniteSemigroup triple_to_monoid(const ActionTriple& t) {
  validate(t);
  const int g = t.G.size(), x = static_cast<int>(t.X.size()), h = t.H.size();
  const int pt = g + x + h, n = pt + 1;
  std::vector<std::string> names;
  for (const auto& e : t.G.elements()) names.push_back(e);
  for (const auto& e : t.X) names.push_back(e);
  for (const auto& e : t.H.elements()) names.push_back(e);
  names.push_back("pt");
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) {
    names.clear();
    for (const auto& e : t.G.elements()) names.push_back("G:" + e);
    for (const auto& e : t.X) names.push_back("X:" + e);
    for (const auto& e : t.H.elements()) names.push_back("H:" + e);
    names.push_back("pt");
  }
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), pt));
  auto at = [&](int r, int c) -> int& { return table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; };
  for (int a = 0; a < g; ++a) {
    for (int a2 = 0; a2 < g; ++a2) at(a, a2) = t.G.mul(a, a2);
    for (int p = 0; p < x; ++p) at(a, g + p) = g + t.left[static_cast<std::size_t>(a)][static_cast<std::size_t>(p)];
  }
  for (int p = 0; p < x; ++p)
    for (int b = 0; b < h; ++b) at(g + p, g + x + b) = g + t.right[static_cast<std::size_t>(p)][static_cast<std::size_t>(b)];
  for (int b = 0; b < h; ++b)
    for (int b2 = 0; b2 < h; ++b2) at(g + x + b, g + x + b2) = g + x + t.H.mul(b, b2);
  // The action axioms make this associative; the checking constructor asserts it.
  return FiniteSemigroup(t.G.name() + "|X|" + t.H.name(), names, table);
}

Family<BoxMap> extract_bimodule_blocks(const ActionTriple& t, const Ring& ring, const IndexBounds& b) {
  const int sg = register_semigroup(triple_to_monoid(t));
  const Family<CellMap> alpha = morse_fbialgebra(sg, ring, b);
  auto plain = [](std::string name, const std::vector<std::string>& elements) {
    std::vector<Generator> gens;
    for (const auto& e : elements) gens.push_back({e, 0});
    return make_module(std::move(name), std::move(gens));
  };
  const Object triple{plain("R[G]", t.G.elements()), plain("R[X]", t.X), plain("R[H]", t.H.elements())};
  const std::array<int, 3> offset{0, t.G.size(), t.G.size() + static_cast<int>(t.X.size())};
  const std::array<int, 3> size{t.G.size(), static_cast<int>(t.X.size()), t.H.size()};
  auto side_of = [&](const ModuleRef& m) {
    for (int s = 0; s < 3; ++s)
      if (triple[static_cast<std::size_t>(s)] == m) return s;
    throw std::logic_error("cell outside the triple");
  };

  Family<BoxMap> out = zero_family<BoxMap>(Category::bimodule(), ring, triple, triple, -1, b);
  for (const ComponentIndex& idx : component_indices(out.category, b)) {
    const CellMap* m = alpha.find({idx.k, idx.l});
    if (!m) continue;
    const BoxSpace in = component_source(out.category, triple, idx);
    const BoxSpace outs = component_target(out.category, triple, idx);
    in.require_budget("extract_bimodule_blocks");
    std::vector<BoxEntry> entries;
    for (std::uint64_t i = 0; i < in.basis_size(); ++i) {
      std::vector<int> digits = in.decode(i);
      for (int c = 0; c < in.cell_count(); ++c) digits[static_cast<std::size_t>(c)] += offset[static_cast<std::size_t>(side_of(in.cells()[static_cast<std::size_t>(c)]))];
      for (const auto& [image, coeff] : graftlab::apply(*m, std::span<const int>(digits))) {
        std::vector<int> y = image;
        bool inside = true;
        for (int c = 0; c < outs.cell_count() && inside; ++c) {
          const int s = side_of(outs.cells()[static_cast<std::size_t>(c)]);
          y[static_cast<std::size_t>(c)] -= offset[static_cast<std::size_t>(s)];
          inside = y[static_cast<std::size_t>(c)] >= 0 && y[static_cast<std::size_t>(c)] < size[static_cast<std::size_t>(s)];
        }
        if (inside) entries.push_back({i, outs.encode(y), coeff});
      }
    }
    out.set(idx, BoxMap::from_entries(ring, in, outs, out.component_degree(idx), std::move(entries)));
  }
  return out;
}

}  // namespace graftlab
