#include "graftlab/categories.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <shared_mutex>

namespace graftlab {

std::string to_string(const Category& c) {
  switch (c.kind) {
    case CategoryKind::Bi: return "bi";
    case CategoryKind::Ascending: return "ascending(w=" + std::to_string(c.width) + ")";
    case CategoryKind::Descending: return "descending(h=" + std::to_string(c.width) + ")";
    case CategoryKind::Bimodule: return "bimodule";
  }
  return "?";
}

std::string to_string(const ComponentIndex& idx) {
  std::string k = to_string(idx.k);
  if (idx.eps >= 0) k += "|" + std::to_string(idx.eps) + "@" + std::to_string(idx.pos);
  return "(" + k + ";" + to_string(idx.l) + ")";
}

int vertex_count(const ComponentIndex& idx) { return vertex_count(idx.k) + vertex_count(idx.l); }

bool IndexBounds::admits(const MultiIndex& k, const MultiIndex& l) const {
  return leaves(k) <= max_leaves && leaves(l) <= max_leaves && leaves(k) * leaves(l) <= max_cells;
}

std::vector<ComponentIndex> component_indices(const Category& c, const IndexBounds& b) {
  std::vector<ComponentIndex> out;
  const auto all = multi_indices_up_to(b.max_leaves);
  switch (c.kind) {
    case CategoryKind::Bi:
      for (const auto& k : all)
        for (const auto& l : all)
          if (b.admits(k, l)) out.push_back({k, l});
      break;
    case CategoryKind::Ascending:
      for (const auto& k : all)
        if (b.admits(k, MultiIndex::vertical(c.width))) out.push_back({k, MultiIndex::vertical(c.width)});
      break;
    case CategoryKind::Descending:
      for (const auto& l : all)
        if (b.admits(MultiIndex::vertical(c.width), l)) out.push_back({MultiIndex::vertical(c.width), l});
      break;
    case CategoryKind::Bimodule:
      for (const auto& k : all)
        for (const auto& l : all) {
          if (!b.admits(k, l)) continue;
          for (int p = 0; p < leaves(k); ++p) out.push_back({k, l, 1, p});
          for (int p = 0; p <= trees(k); ++p) out.push_back({k, l, 0, p});
        }
      break;
  }
  return out;
}

namespace {

int tree_of_leaf(const MultiIndex& k, int leaf) {
  int seen = 0;
  for (std::size_t t = 0; t < k.size(); ++t) {
    seen += k[t];
    if (leaf < seen) return static_cast<int>(t);
  }
  throw std::out_of_range("leaf outside the multi-index");
}

int leaves_before_tree(const MultiIndex& k, int tree) {
  int n = 0;
  for (int t = 0; t < tree; ++t) n += k[static_cast<std::size_t>(t)];
  return n;
}

void require_object(const Category& c, const Object& obj) {
  const std::size_t want = c.kind == CategoryKind::Bimodule ? 3 : 1;
  if (obj.size() != want) throw std::invalid_argument(to_string(c) + " objects have " + std::to_string(want) + " module(s)");
}

// Side (0 left, 1 middle, 2 right) of each input row (leaf) or output row (tree) of a bimodule
// component.
std::vector<int> bimodule_row_sides(const ComponentIndex& idx, bool input) {
  const int rows = input ? leaves(idx.k) : trees(idx.k);
  std::vector<int> out;
  for (int r = 0; r < rows; ++r) {
    if (idx.eps == 1) {
      const int marked = input ? idx.pos : tree_of_leaf(idx.k, idx.pos);
      out.push_back(r < marked ? 0 : r == marked ? 1 : 2);
    } else {
      const int boundary = input ? leaves_before_tree(idx.k, idx.pos) : idx.pos;
      out.push_back(r < boundary ? 0 : 2);
    }
  }
  return out;
}

std::vector<ModuleRef> bimodule_rows(const Object& obj, const ComponentIndex& idx, bool input) {
  std::vector<ModuleRef> out;
  for (int side : bimodule_row_sides(idx, input)) out.push_back(obj[static_cast<std::size_t>(side)]);
  return out;
}

}  // namespace

BoxSpace component_source(const Category& c, const Object& obj, const ComponentIndex& idx) {
  require_object(c, obj);
  if (c.kind == CategoryKind::Bimodule) return BoxSpace::by_rows(bimodule_rows(obj, idx, true), trees(idx.l));
  return BoxSpace::grid(obj.front(), leaves(idx.k), trees(idx.l));
}

BoxSpace component_target(const Category& c, const Object& obj, const ComponentIndex& idx) {
  require_object(c, obj);
  if (c.kind == CategoryKind::Bimodule) return BoxSpace::by_rows(bimodule_rows(obj, idx, false), leaves(idx.l));
  return BoxSpace::grid(obj.front(), trees(idx.k), leaves(idx.l));
}

namespace {

std::vector<SplitTerm> compute_splittings(const Category& c, const ComponentIndex& whole) {
  std::vector<SplitTerm> out;
  auto l_splits = c.kind == CategoryKind::Ascending ? std::vector<Splitting>{{whole.l, whole.l}} : cached_splittings(whole.l);
  auto k_splits = c.kind == CategoryKind::Descending ? std::vector<Splitting>{{whole.k, whole.k}} : cached_splittings(whole.k);
  for (const Splitting& ks : k_splits)
    for (const Splitting& ls : l_splits) {
      SplitTerm t{{ks.lower, ls.upper}, {ks.upper, ls.lower}, ks, ls};
      if (c.kind == CategoryKind::Bimodule) {
        t.top.eps = t.bottom.eps = whole.eps;
        if (whole.eps == 1) {
          t.top.pos = whole.pos;
          t.bottom.pos = tree_of_leaf(ks.upper, whole.pos);
        } else {
          t.bottom.pos = whole.pos;
          t.top.pos = leaves_before_tree(ks.lower, whole.pos);
        }
      }
      out.push_back(std::move(t));
    }
  return out;
}

}  // namespace

const std::vector<SplitTerm>& index_splittings(const Category& c, const ComponentIndex& whole) {
  static std::shared_mutex mutex;
  static std::map<std::pair<CategoryKind, ComponentIndex>, std::vector<SplitTerm>> cache;
  const auto key = std::pair{c.kind, whole};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto computed = compute_splittings(c, whole);
  std::unique_lock lock(mutex);
  return cache.try_emplace(key, std::move(computed)).first->second;
}

CompositionSign split_sign(const Category& c, const SplitTerm& t) {
  switch (c.kind) {
    case CategoryKind::Ascending: return ascending_composition_sign(t.k_split);
    case CategoryKind::Descending: return descending_composition_sign(t.l_split);
    default: return composition_sign(t.k_split, t.l_split);
  }
}

void Report::add(std::string relation, std::string location, std::string detail) {
  violations.push_back({std::move(relation), std::move(location), std::move(detail)});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const Violation& v : other.violations) violations.push_back({prefix + v.relation, v.location, v.detail});
  for (const std::string& n : other.notes) notes.push_back(prefix + n);
  checks += other.checks;
}

namespace {

bool no_terms(const BoxMap& m) { return m.is_zero(); }
bool no_terms(const CellMap& m) { return m.has_no_terms(); }

bool same_object(const Object& a, const Object& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i] || *a[i] == *b[i])) return false;
  return true;
}

IndexBounds meet(const IndexBounds& a, const IndexBounds& b) {
  return {std::min(a.max_leaves, b.max_leaves), std::min(a.max_cells, b.max_cells)};
}

template <class Map>
Map zero_component(const Category& c, const Ring& ring, const Object& src, const Object& tgt, int degree,
                   const ComponentIndex& idx) {
  return Map::zero(ring, component_source(c, src, idx), component_target(c, tgt, idx), degree + vertex_count(idx));
}

// Evaluates fn on every index of the domain and keeps the nonzero results, deterministically.
template <class Map, class Fn>
void fill_components(Family<Map>& out, Execution ex, Fn&& fn) {
  const auto indices = component_indices(out.category, out.bounds);
  std::vector<std::optional<Map>> results(indices.size());
  for_each_index(indices.size(), ex, [&](std::size_t i) { results[i] = fn(indices[i]); });
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (results[i]) out.set(indices[i], std::move(*results[i]));
}

std::string location_detail(const ZeroVerdict& v) {
  return v.status == ZeroStatus::Undecided ? "undecided: " + v.detail : v.detail;
}

}  // namespace

template <class Map>
Map Family<Map>::component(const ComponentIndex& idx) const {
  if (const Map* m = find(idx)) return *m;
  return zero_component<Map>(category, ring, source, target, degree, idx);
}

template <class Map>
const Map* Family<Map>::find(const ComponentIndex& idx) const {
  auto it = components.find(idx);
  return it == components.end() ? nullptr : &it->second;
}

template <class Map>
void Family<Map>::set(const ComponentIndex& idx, Map m) {
  if (!(m.source() == component_source(category, source, idx)) || !(m.target() == component_target(category, target, idx)))
    throw std::invalid_argument("component " + to_string(idx) + " has shape " + m.source().describe() + " -> " +
                                m.target().describe() + ", expected " + component_source(category, source, idx).describe() +
                                " -> " + component_target(category, target, idx).describe());
  if (no_terms(m)) {
    components.erase(idx);
    return;
  }
  if (m.degree() != component_degree(idx))
    throw std::invalid_argument("component " + to_string(idx) + " has internal degree " + std::to_string(m.degree()) +
                                ", expected " + std::to_string(component_degree(idx)));
  components.insert_or_assign(idx, std::move(m));
}

template <class Map>
Family<Map> zero_family(const Category& c, const Ring& ring, Object source, Object target, int degree,
                        const IndexBounds& b) {
  require_object(c, source);
  require_object(c, target);
  Family<Map> f;
  f.category = c;
  f.ring = ring;
  f.source = std::move(source);
  f.target = std::move(target);
  f.degree = degree;
  f.bounds = b;
  return f;
}

template <class Map>
Family<Map> identity_family(const Category& c, const Ring& ring, const Object& obj, const IndexBounds& b) {
  Family<Map> id = zero_family<Map>(c, ring, obj, obj, 0, b);
  for (const ComponentIndex& idx : component_indices(c, b))
    if (idx.k.is_vertical() && idx.l.is_vertical()) id.set(idx, Map::identity(ring, component_source(c, obj, idx)));
  return id;
}

template <class Map>
Map compose_component(const Family<Map>& psi, const Family<Map>& phi, const ComponentIndex& idx) {
  Map acc = Map::zero(phi.ring, component_source(phi.category, phi.source, idx),
                      component_target(psi.category, psi.target, idx), psi.degree + phi.degree + vertex_count(idx));
  for (const SplitTerm& t : index_splittings(phi.category, idx)) {
    const Map* top = phi.find(t.top);
    if (!top) continue;
    const Map* bottom = psi.find(t.bottom);
    if (!bottom) continue;
    const Map term = compose(*bottom, *top);
    acc = split_sign(phi.category, t).value(phi.degree) ? acc - term : acc + term;
  }
  return acc;
}

template <class Map>
Family<Map> compose(const Family<Map>& psi, const Family<Map>& phi, Execution ex) {
  if (!(psi.category == phi.category)) throw std::invalid_argument("compose: families live in different categories");
  if (!same_object(phi.target, psi.source)) throw std::invalid_argument("compose: target of the first map is not the source of the second");
  if (!(psi.ring == phi.ring)) throw std::invalid_argument("compose: rings differ");
  Family<Map> out = zero_family<Map>(phi.category, phi.ring, phi.source, psi.target, psi.degree + phi.degree,
                                     meet(psi.bounds, phi.bounds));
  fill_components(out, ex, [&](const ComponentIndex& idx) { return compose_component(psi, phi, idx); });
  return out;
}

namespace {
template <class Map>
void require_parallel_families(const Family<Map>& a, const Family<Map>& b) {
  if (!(a.category == b.category) || !same_object(a.source, b.source) || !same_object(a.target, b.target) ||
      !(a.ring == b.ring))
    throw std::invalid_argument("families of different shape");
}
}  // namespace

template <class Map>
Family<Map> operator+(const Family<Map>& a, const Family<Map>& b) {
  require_parallel_families(a, b);
  if (a.degree != b.degree && !a.components.empty() && !b.components.empty())
    throw std::invalid_argument("sum of families of degrees " + std::to_string(a.degree) + " and " + std::to_string(b.degree));
  Family<Map> out = a;
  out.degree = a.components.empty() ? b.degree : a.degree;
  out.bounds = meet(a.bounds, b.bounds);
  for (auto it = out.components.begin(); it != out.components.end();)
    it = out.bounds.admits(it->first.k, it->first.l) ? std::next(it) : out.components.erase(it);
  for (const auto& [idx, m] : b.components) {
    if (!out.bounds.admits(idx.k, idx.l)) continue;
    if (const Map* mine = out.find(idx))
      out.set(idx, *mine + m);
    else
      out.set(idx, m);
  }
  return out;
}

template <class Map>
Family<Map> scaled(const Family<Map>& a, const Scalar& c) {
  Family<Map> out = a;
  out.components.clear();
  for (const auto& [idx, m] : a.components) out.set(idx, m.scaled(c));
  return out;
}

template <class Map>
Family<Map> operator-(const Family<Map>& a, const Family<Map>& b) {
  return a + scaled(b, Scalar(-1));
}

template <class Map>
Family<Map> hom_differential(const Family<Map>& beta, const Family<Map>& phi, const Family<Map>& alpha, Execution ex) {
  if (alpha.degree != -1 || beta.degree != -1) throw std::invalid_argument("hom_differential: structure maps must have degree -1");
  const Family<Map> left = compose(beta, phi, ex);
  const Family<Map> right = compose(phi, alpha, ex);
  Family<Map> out = parity(phi.degree) ? left + right : left - right;
  out.degree = phi.degree - 1;
  return out;
}

template <class Map>
Report compare_families(const Family<Map>& a, const Family<Map>& b, const std::string& relation, Execution ex) {
  require_parallel_families(a, b);
  std::vector<ComponentIndex> indices;
  for (const auto& [idx, m] : a.components) indices.push_back(idx);
  for (const auto& [idx, m] : b.components)
    if (!a.find(idx)) indices.push_back(idx);
  std::sort(indices.begin(), indices.end());
  std::vector<std::optional<ZeroVerdict>> verdicts(indices.size());
  for_each_index(indices.size(), ex, [&](std::size_t i) {
    const ZeroVerdict v = decide_zero(a.component(indices[i]) - b.component(indices[i]));
    if (v.status != ZeroStatus::Zero) verdicts[i] = v;
  });
  Report r;
  // Components absent from both sides are equal too; count every admitted index.
  r.checks = std::max(indices.size(), component_indices(a.category, a.bounds).size());
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (verdicts[i]) r.add(relation, to_string(indices[i]), location_detail(*verdicts[i]));
  return r;
}

template <class Map>
Report require_zero(const Family<Map>& a, const std::string& relation, Execution ex) {
  return compare_families(a, zero_family<Map>(a.category, a.ring, a.source, a.target, a.degree, a.bounds), relation, ex);
}

namespace {

template <class Map>
Map identity_box(const Ring& ring, const ModuleRef& m, int rows, int cols) {
  return Map::identity(ring, BoxSpace::grid(m, rows, cols));
}

// Cells reordered so that row `moved` comes last. New cell j is old cell perm[j].
CellPermutation row_to_end(int rows, int cols, int moved) {
  CellPermutation p{{}, rows, cols};
  for (int r = 0; r < rows; ++r) {
    if (r == moved) continue;
    for (int c = 0; c < cols; ++c) p.perm.push_back(r * cols + c);
  }
  for (int c = 0; c < cols; ++c) p.perm.push_back(moved * cols + c);
  return p;
}

CellPermutation col_to_end(int rows, int cols, int moved) {
  CellPermutation p{{}, rows, cols};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c)
      if (c != moved) p.perm.push_back(r * cols + c);
    p.perm.push_back(r * cols + moved);
  }
  return p;
}

MultiIndex without(const MultiIndex& k, std::size_t i) {
  std::vector<int> e(k.entries().begin(), k.entries().end());
  e.erase(e.begin() + static_cast<std::ptrdiff_t>(i));
  return MultiIndex(std::move(e));
}

std::vector<std::size_t> big_entries(const MultiIndex& k) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] >= 2) out.push_back(i);
  return out;
}

void compare_into(std::vector<Violation>& out, const std::string& relation, const ComponentIndex& idx, const auto& lhs,
                  const auto& rhs) {
  const ZeroVerdict v = decide_zero(lhs - rhs);
  if (v.status != ZeroStatus::Zero) out.push_back({relation, to_string(idx), location_detail(v)});
}

template <class Map>
Report collect(const std::vector<ComponentIndex>& indices, Execution ex,
               const std::function<void(const ComponentIndex&, std::vector<Violation>&)>& check) {
  std::vector<std::vector<Violation>> found(indices.size());
  for_each_index(indices.size(), ex, [&](std::size_t i) {
    try {
      check(indices[i], found[i]);
    } catch (const BasisBudgetExceeded&) {
      throw;
    } catch (const std::exception& e) {
      found[i].push_back({"error", to_string(indices[i]), e.what()});
    }
  });
  Report r;
  r.checks = indices.size();
  for (auto& v : found)
    for (auto& x : v) r.violations.push_back(std::move(x));
  return r;
}

template <class Map>
void require_endomorphism(const Family<Map>& alpha, CategoryKind kind, const char* what) {
  if (alpha.category.kind != kind) throw std::invalid_argument(std::string(what) + ": wrong category " + to_string(alpha.category));
  if (alpha.degree != -1) throw std::invalid_argument(std::string(what) + ": structure map must have degree -1");
  if (!same_object(alpha.source, alpha.target)) throw std::invalid_argument(std::string(what) + ": structure map is not an endomorphism");
}

}  // namespace

template <class Map>
Report check_fbialgebra(const Family<Map>& alpha, Execution ex) {
  require_endomorphism(alpha, CategoryKind::Bi, "check_fbialgebra");
  const ModuleRef A = alpha.source.front();
  const Ring& R = alpha.ring;
  const MultiIndex one{1}, two{2};
  const Map d = alpha.component({one, one});

  Report r = require_zero(compose(alpha, alpha, ex), "alpha-alpha", ex);
  const auto indices = component_indices(alpha.category, alpha.bounds);
  Report rel = collect<Map>(indices, ex, [&](const ComponentIndex& idx, std::vector<Violation>& out) {
    const MultiIndex &k = idx.k, &l = idx.l;
    const int a = trees(k), b = trees(l);
    const Map here = alpha.component(idx);
    if (k.is_vertical() && l.is_vertical()) {
      compare_into(out, "T", idx, here, grid_differential(d, a, b));
      return;
    }
    const auto big_k = big_entries(k), big_l = big_entries(l);
    if (k.is_vertical()) {
      if (big_l.size() >= 2) {
        compare_into(out, "V-vanish", idx, here, Map::zero(R, here.source(), here.target(), here.degree()));
      } else if (b >= 2) {
        const int j = static_cast<int>(big_l.front());
        std::vector<Map> parts;
        if (j > 0) parts.push_back(identity_box<Map>(R, A, a, j));
        parts.push_back(alpha.component({k, MultiIndex{l[static_cast<std::size_t>(j)]}}));
        if (j < b - 1) parts.push_back(identity_box<Map>(R, A, a, b - j - 1));
        compare_into(out, "V", idx, here, tensor_cols(std::span<const Map>(parts)));
      }
    }
    if (l.is_vertical()) {
      if (big_k.size() >= 2) {
        compare_into(out, "V-vanish", idx, here, Map::zero(R, here.source(), here.target(), here.degree()));
      } else if (a >= 2) {
        const int i = static_cast<int>(big_k.front());
        std::vector<Map> parts;
        if (i > 0) parts.push_back(identity_box<Map>(R, A, i, b));
        parts.push_back(alpha.component({MultiIndex{k[static_cast<std::size_t>(i)]}, l}));
        if (i < a - 1) parts.push_back(identity_box<Map>(R, A, a - i - 1, b));
        compare_into(out, "V", idx, here, tensor_rows(std::span<const Map>(parts)));
      }
    }
    // Vertical tree deletion.
    if (l.is_almost_vertical() && a >= 2) {
      std::vector<Map> tilde;
      for (std::size_t j = 0; j < l.size(); ++j)
        tilde.push_back(l[j] == 1 ? identity_box<Map>(R, A, 1, 1) : alpha.component({one, two}));
      const Map tail = tensor_cols(std::span<const Map>(tilde));
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] != 1) continue;
        const Map moved = permuted(here, row_to_end(leaves(k), b, leaves_before_tree(k, static_cast<int>(i))),
                                   row_to_end(a, leaves(l), static_cast<int>(i)));
        const std::array<Map, 2> parts{alpha.component({without(k, i), l}), tail};
        compare_into(out, "D-row[" + std::to_string(i) + "]", idx, moved, tensor_rows(std::span<const Map>(parts)));
      }
    }
    if (k.is_almost_vertical() && b >= 2) {
      std::vector<Map> tilde;
      for (std::size_t i = 0; i < k.size(); ++i)
        tilde.push_back(k[i] == 1 ? identity_box<Map>(R, A, 1, 1) : alpha.component({two, one}));
      const Map tail = tensor_rows(std::span<const Map>(tilde));
      for (std::size_t j = 0; j < l.size(); ++j) {
        if (l[j] != 1) continue;
        const Map moved = permuted(here, col_to_end(leaves(k), b, static_cast<int>(j)),
                                   col_to_end(a, leaves(l), leaves_before_tree(l, static_cast<int>(j))));
        const std::array<Map, 2> parts{alpha.component({k, without(l, j)}), tail};
        compare_into(out, "D-col[" + std::to_string(j) + "]", idx, moved, tensor_cols(std::span<const Map>(parts)));
      }
    }
  });
  r.merge(rel);
  return r;
}

template <class Map>
Report check_fbialg_morphism(const Family<Map>& phi, const Family<Map>& alpha, const Family<Map>& beta, Execution ex) {
  Report r;
  if (phi.category.kind != CategoryKind::Bi) throw std::invalid_argument("check_fbialg_morphism: wrong category");
  if (phi.degree != 0) {
    r.add("degree", "", "morphism has degree " + std::to_string(phi.degree) + ", expected 0");
    return r;
  }
  r.merge(require_zero(hom_differential(beta, phi, alpha, ex), "closed", ex));
  const auto indices = component_indices(phi.category, phi.bounds);
  r.merge(collect<Map>(indices, ex, [&](const ComponentIndex& idx, std::vector<Violation>& out) {
    const Map here = phi.component(idx);
    if (idx.l.is_vertical() && idx.k.size() >= 2) {
      std::vector<Map> parts;
      for (std::size_t i = 0; i < idx.k.size(); ++i) parts.push_back(phi.component({MultiIndex{idx.k[i]}, idx.l}));
      compare_into(out, "W-rows", idx, here, tensor_rows(std::span<const Map>(parts)));
    }
    if (idx.k.is_vertical() && idx.l.size() >= 2) {
      std::vector<Map> parts;
      for (std::size_t j = 0; j < idx.l.size(); ++j) parts.push_back(phi.component({idx.k, MultiIndex{idx.l[j]}}));
      compare_into(out, "W-cols", idx, here, tensor_cols(std::span<const Map>(parts)));
    }
  }));
  return r;
}

namespace {

// Shared body of the one-sided object checks; `rows` selects the ascending orientation.
template <class Map>
Report check_one_sided(const Family<Map>& alpha, bool rows, Execution ex) {
  const ModuleRef A = alpha.source.front();
  const Ring& R = alpha.ring;
  const int w = alpha.category.width;
  Report r = require_zero(compose(alpha, alpha, ex), "alpha-alpha", ex);
  const MultiIndex fixed = MultiIndex::vertical(w);
  const auto indices = component_indices(alpha.category, alpha.bounds);
  r.merge(collect<Map>(indices, ex, [&](const ComponentIndex& idx, std::vector<Violation>& out) {
    const MultiIndex& side = rows ? idx.k : idx.l;
    const Map here = alpha.component(idx);
    const int n = trees(side);
    auto single = [&](int entry) {
      return rows ? alpha.component({MultiIndex{entry}, fixed}) : alpha.component({fixed, MultiIndex{entry}});
    };
    if (side.is_vertical()) {
      compare_into(out, "T", idx, here, rows ? grid_differential(single(1), n, w) : grid_differential(single(1), w, n));
      return;
    }
    const auto big = big_entries(side);
    if (big.size() >= 2) {
      compare_into(out, "V-vanish", idx, here, Map::zero(R, here.source(), here.target(), here.degree()));
      return;
    }
    if (n == 1) return;
    const int i = static_cast<int>(big.front());
    std::vector<Map> parts;
    if (rows) {
      if (i > 0) parts.push_back(identity_box<Map>(R, A, i, w));
      parts.push_back(single(side[static_cast<std::size_t>(i)]));
      if (i < n - 1) parts.push_back(identity_box<Map>(R, A, n - i - 1, w));
      compare_into(out, "V", idx, here, tensor_rows(std::span<const Map>(parts)));
    } else {
      if (i > 0) parts.push_back(identity_box<Map>(R, A, w, i));
      parts.push_back(single(side[static_cast<std::size_t>(i)]));
      if (i < n - 1) parts.push_back(identity_box<Map>(R, A, w, n - i - 1));
      compare_into(out, "V", idx, here, tensor_cols(std::span<const Map>(parts)));
    }
  }));
  return r;
}

}  // namespace

template <class Map>
Report check_falg_object(const Family<Map>& alpha, Execution ex) {
  require_endomorphism(alpha, CategoryKind::Ascending, "check_falg_object");
  return check_one_sided(alpha, true, ex);
}

template <class Map>
Report check_fcoalg_object(const Family<Map>& alpha, Execution ex) {
  require_endomorphism(alpha, CategoryKind::Descending, "check_fcoalg_object");
  return check_one_sided(alpha, false, ex);
}

template <class Map>
const Family<Map>& Simplex<Map>::face(const std::vector<int>& sigma) const {
  if (sigma.empty()) throw std::invalid_argument("empty face");
  if (sigma.size() == 1) return objects.at(static_cast<std::size_t>(sigma.front()));
  auto it = maps.find(sigma);
  if (it == maps.end()) {
    std::string s;
    for (int v : sigma) s += (s.empty() ? "" : ",") + std::to_string(v);
    throw std::invalid_argument("simplex is missing the map of face [" + s + "]");
  }
  return it->second;
}

std::vector<std::vector<int>> faces_of_simplex(int n, int min_dim) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
    std::vector<int> f;
    for (int v = 0; v <= n; ++v)
      if (mask & (1u << v)) f.push_back(v);
    if (static_cast<int>(f.size()) - 1 >= min_dim) out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  return out;
}

namespace {
std::vector<int> drop_vertex(const std::vector<int>& sigma, std::size_t i) {
  std::vector<int> out = sigma;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}
std::vector<int> head(const std::vector<int>& sigma, std::size_t i) { return {sigma.begin(), sigma.begin() + static_cast<std::ptrdiff_t>(i) + 1}; }
std::vector<int> tail(const std::vector<int>& sigma, std::size_t i) { return {sigma.begin() + static_cast<std::ptrdiff_t>(i), sigma.end()}; }
}  // namespace

template <class Map>
Family<Map> unabsorbed_residual(const Simplex<Map>& s, const std::vector<int>& sigma, Execution ex) {
  const std::size_t m = sigma.size() - 1;
  if (m < 1) throw std::invalid_argument("residual needs a face of dimension >= 1");
  const Family<Map>& phi = s.face(sigma);
  Family<Map> out = scaled(hom_differential(s.face({sigma.front()}), phi, s.face({sigma.back()}), ex), Scalar(-1));
  for (std::size_t i = 1; i < m; ++i) {
    Family<Map> term = s.face(drop_vertex(sigma, i)) - compose(s.face(head(sigma, i)), s.face(tail(sigma, i)), ex);
    out = parity(static_cast<int>(i)) ? out - term : out + term;
  }
  return out;
}

template <class Map>
Family<Map> absorbed_residual(const Simplex<Map>& s, const std::vector<int>& sigma, Execution ex) {
  const int m = static_cast<int>(sigma.size()) - 1;
  if (m < 1) throw std::invalid_argument("residual needs a face of dimension >= 1");
  const Family<Map>& phi = s.face(sigma);
  Family<Map> out = zero_family<Map>(phi.category, phi.ring, phi.source, phi.target, m - 2, phi.bounds);
  std::vector<const Family<Map>*> bottoms, tops;
  for (int i = 0; i <= m; ++i) {
    bottoms.push_back(&s.face(head(sigma, static_cast<std::size_t>(i))));
    tops.push_back(&s.face(tail(sigma, static_cast<std::size_t>(i))));
    out.bounds = meet(out.bounds, meet(bottoms.back()->bounds, tops.back()->bounds));
  }
  std::vector<const Family<Map>*> deleted;
  for (int i = 1; i < m; ++i) deleted.push_back(&s.face(drop_vertex(sigma, static_cast<std::size_t>(i))));
  fill_components(out, ex, [&](const ComponentIndex& idx) {
    Map acc = out.component(idx);
    for (int i = 1; i < m; ++i) {
      const Map* f = deleted[static_cast<std::size_t>(i - 1)]->find(idx);
      if (f) acc = parity(i) ? acc - *f : acc + *f;
    }
    for (const SplitTerm& t : index_splittings(phi.category, idx))
      for (int i = 0; i <= m; ++i) {
        const Map* top = tops[static_cast<std::size_t>(i)]->find(t.top);
        if (!top) continue;
        const Map* bottom = bottoms[static_cast<std::size_t>(i)]->find(t.bottom);
        if (!bottom) continue;
        const Map term = compose(*bottom, *top);
        const int rho = gluing_orientation(i, t.k_split.lower, t.l_split.upper, m - i, t.k_split.upper, t.l_split.lower);
        acc = rho ? acc - term : acc + term;
      }
    return acc;
  });
  return out;
}

template <class Map>
Report check_simplex(const Simplex<Map>& s, const SimplexCheckOptions& opt, Execution ex) {
  Report r;
  const int n = s.dimension();
  const bool bi = !s.objects.empty() && s.objects.front().category.kind == CategoryKind::Bi;
  for (int v = 0; v <= n && opt.check_objects && bi; ++v)
    r.merge(check_fbialgebra(s.objects[static_cast<std::size_t>(v)], ex), "object[" + std::to_string(v) + "] ");
  for (const auto& sigma : faces_of_simplex(n, 1)) {
    std::string name = "[";
    for (int v : sigma) name += (name.size() > 1 ? "," : "") + std::to_string(v);
    name += "]";
    const Family<Map>& phi = s.face(sigma);
    const int m = static_cast<int>(sigma.size()) - 1;
    if (phi.degree != m - 1) {
      r.add("degree" + name, "", "map has degree " + std::to_string(phi.degree) + ", expected " + std::to_string(m - 1));
      continue;
    }
    if (m == 1 && opt.check_edges && bi)
      r.merge(check_fbialg_morphism(phi, s.face({sigma.back()}), s.face({sigma.front()}), ex), "edge" + name + " ");
    const Family<Map> absorbed = absorbed_residual(s, sigma, ex);
    const Family<Map> unabsorbed = unabsorbed_residual(s, sigma, ex);
    r.merge(compare_families(absorbed, unabsorbed, "forms-agree" + name, ex));
    r.merge(require_zero(absorbed, "coherence" + name, ex));
  }
  return r;
}

template <class Map>
Simplex<Map> fill_inner_horn_2(const Family<Map>& alpha0, const Family<Map>& alpha1, const Family<Map>& alpha2,
                               const Family<Map>& phi01, const Family<Map>& phi12) {
  Simplex<Map> s;
  s.objects = {alpha0, alpha1, alpha2};
  s.maps[{0, 1}] = phi01;
  s.maps[{1, 2}] = phi12;
  s.maps[{0, 2}] = compose(phi01, phi12);
  s.maps[{0, 1, 2}] = zero_family<Map>(phi01.category, phi01.ring, phi12.source, phi01.target, 1,
                                       meet(phi01.bounds, phi12.bounds));
  return s;
}

template <class Map>
Family<Map> restrict_to_ascending(const Family<Map>& f, int width) {
  if (f.category.kind != CategoryKind::Bi) throw std::invalid_argument("restriction starts from the bi category");
  Family<Map> out = zero_family<Map>(Category::ascending(width), f.ring, f.source, f.target, f.degree, f.bounds);
  for (const auto& [idx, m] : f.components)
    if (idx.l == MultiIndex::vertical(width)) out.set(idx, m);
  return out;
}

template <class Map>
Family<Map> restrict_to_descending(const Family<Map>& f, int height) {
  if (f.category.kind != CategoryKind::Bi) throw std::invalid_argument("restriction starts from the bi category");
  Family<Map> out = zero_family<Map>(Category::descending(height), f.ring, f.source, f.target, f.degree, f.bounds);
  for (const auto& [idx, m] : f.components)
    if (idx.k == MultiIndex::vertical(height)) out.set(idx, m);
  return out;
}

ModuleRef bimodule_sum(const Object& triple) {
  if (triple.size() != 3) throw std::invalid_argument("bimodule objects are triples");
  // Positional prefixes keep the summands apart when a module appears twice.
  static constexpr std::array<const char*, 3> side{"L:", "M:", "R:"};
  std::vector<Generator> gens;
  for (std::size_t s = 0; s < 3; ++s)
    for (const Generator& g : triple[s]->generators()) gens.push_back({side[s] + g.name, g.degree});
  return make_module(triple[0]->name() + "+" + triple[1]->name() + "+" + triple[2]->name(), std::move(gens));
}

Family<BoxMap> random_family(const Category& c, const Ring& ring, Object source, Object target, int degree,
                             const IndexBounds& b, std::mt19937_64& rng, double fill, int max_entries) {
  Family<BoxMap> f = zero_family<BoxMap>(c, ring, std::move(source), std::move(target), degree, b);
  std::bernoulli_distribution coin(fill);
  for (const ComponentIndex& idx : component_indices(c, b)) {
    if (!coin(rng)) continue;
    f.set(idx, random_map(ring, component_source(c, f.source, idx), component_target(c, f.target, idx),
                          f.component_degree(idx), rng, max_entries));
  }
  return f;
}

Family<BoxMap> embed_bimodule(const Family<BoxMap>& f) {
  if (f.category.kind != CategoryKind::Bimodule) throw std::invalid_argument("embed_bimodule expects a bimodule family");
  const ModuleRef src = bimodule_sum(f.source), tgt = bimodule_sum(f.target);
  Family<BoxMap> out = zero_family<BoxMap>(Category::bi(), f.ring, {src}, {tgt}, f.degree, f.bounds);
  auto offsets = [](const Object& triple) {
    return std::array<int, 3>{0, triple[0]->rank(), triple[0]->rank() + triple[1]->rank()};
  };
  const auto in_off = offsets(f.source), out_off = offsets(f.target);
  std::map<ComponentIndex, std::vector<BoxEntry>> blocks;
  for (const auto& [idx, m] : f.components) {
    const ComponentIndex plain{idx.k, idx.l};
    const BoxSpace big_in = component_source(Category::bi(), {src}, plain);
    const BoxSpace big_out = component_target(Category::bi(), {tgt}, plain);
    const auto in_sides = bimodule_row_sides(idx, true), out_sides = bimodule_row_sides(idx, false);
    auto lift = [](const BoxSpace& small, const BoxSpace& big, const std::vector<int>& sides, const std::array<int, 3>& off,
                   std::uint64_t index) {
      std::vector<int> digits = small.decode(index);
      for (int c = 0; c < small.cell_count(); ++c)
        digits[static_cast<std::size_t>(c)] += off[static_cast<std::size_t>(sides[static_cast<std::size_t>(c / small.cols())])];
      return big.encode(digits);
    };
    auto& entries = blocks[plain];
    for (const BoxEntry& e : m.entries())
      entries.push_back({lift(m.source(), big_in, in_sides, in_off, e.in), lift(m.target(), big_out, out_sides, out_off, e.out), e.coeff});
  }
  for (auto& [plain, entries] : blocks)
    out.set(plain, BoxMap::from_entries(f.ring, component_source(Category::bi(), {src}, plain),
                                        component_target(Category::bi(), {tgt}, plain), out.component_degree(plain),
                                        std::move(entries)));
  return out;
}

#define GRAFTLAB_INSTANTIATE(Map)                                                                                  \
  template struct Family<Map>;                                                                                     \
  template struct Simplex<Map>;                                                                                    \
  template Family<Map> zero_family<Map>(const Category&, const Ring&, Object, Object, int, const IndexBounds&);    \
  template Family<Map> identity_family<Map>(const Category&, const Ring&, const Object&, const IndexBounds&);       \
  template Family<Map> compose<Map>(const Family<Map>&, const Family<Map>&, Execution);                            \
  template Map compose_component<Map>(const Family<Map>&, const Family<Map>&, const ComponentIndex&);               \
  template Family<Map> operator+ <Map>(const Family<Map>&, const Family<Map>&);                                    \
  template Family<Map> operator- <Map>(const Family<Map>&, const Family<Map>&);                                    \
  template Family<Map> scaled<Map>(const Family<Map>&, const Scalar&);                                             \
  template Family<Map> hom_differential<Map>(const Family<Map>&, const Family<Map>&, const Family<Map>&, Execution); \
  template Report compare_families<Map>(const Family<Map>&, const Family<Map>&, const std::string&, Execution);   \
  template Report require_zero<Map>(const Family<Map>&, const std::string&, Execution);                            \
  template Report check_fbialgebra<Map>(const Family<Map>&, Execution);                                            \
  template Report check_fbialg_morphism<Map>(const Family<Map>&, const Family<Map>&, const Family<Map>&, Execution); \
  template Report check_falg_object<Map>(const Family<Map>&, Execution);                                           \
  template Report check_fcoalg_object<Map>(const Family<Map>&, Execution);                                         \
  template Family<Map> unabsorbed_residual<Map>(const Simplex<Map>&, const std::vector<int>&, Execution);         \
  template Family<Map> absorbed_residual<Map>(const Simplex<Map>&, const std::vector<int>&, Execution);           \
  template Report check_simplex<Map>(const Simplex<Map>&, const SimplexCheckOptions&, Execution);                  \
  template Simplex<Map> fill_inner_horn_2<Map>(const Family<Map>&, const Family<Map>&, const Family<Map>&,         \
                                               const Family<Map>&, const Family<Map>&);                            \
  template Family<Map> restrict_to_ascending<Map>(const Family<Map>&, int);                                       \
  template Family<Map> restrict_to_descending<Map>(const Family<Map>&, int);

GRAFTLAB_INSTANTIATE(BoxMap)
GRAFTLAB_INSTANTIATE(CellMap)

}  // namespace graftlab
