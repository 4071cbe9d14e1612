#include "graftlab/gradedalg.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>

namespace graftlab {

GradedModule::GradedModule(std::string name, std::vector<Generator> generators, int semigroup_id)
    : name_(std::move(name)), generators_(std::move(generators)), semigroup_id_(semigroup_id) {
  if (generators_.empty()) throw std::invalid_argument("module '" + name_ + "' has no generators");
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (generators_[i].name == generators_[j].name)
        throw std::invalid_argument("module '" + name_ + "': duplicate generator '" + generators_[i].name + "'");
}

int GradedModule::index_of(std::string_view generator) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == generator) return static_cast<int>(i);
  throw std::invalid_argument("module '" + name_ + "' has no generator '" + std::string(generator) + "'");
}

ModuleRef make_module(std::string name, std::vector<Generator> generators) {
  return std::make_shared<const GradedModule>(std::move(name), std::move(generators));
}

ModuleRef direct_sum(std::span<const ModuleRef> summands, std::string name) {
  std::vector<Generator> gens;
  for (const ModuleRef& m : summands)
    for (const Generator& g : m->generators()) gens.push_back({m->name() + "." + g.name, g.degree});
  return make_module(std::move(name), std::move(gens));
}

namespace {
std::atomic<std::uint64_t> g_budget{kDefaultBasisBudget};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

bool same_module(const ModuleRef& a, const ModuleRef& b) { return a == b || *a == *b; }
}  // namespace

std::uint64_t basis_budget() { return g_budget.load(std::memory_order_relaxed); }
void set_basis_budget(std::uint64_t budget) { g_budget.store(budget); }

BoxSpace::BoxSpace(std::vector<ModuleRef> cells, int rows, int cols) : cells_(std::move(cells)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) != cells_.size())
    throw std::invalid_argument("box space shape does not match its cell count");
  weights_.assign(cells_.size(), 1);
  size_ = 1;
  for (std::size_t i = cells_.size(); i-- > 0;) {
    weights_[i] = size_;
    size_ = saturating_mul(size_, static_cast<std::uint64_t>(cells_[i]->rank()));
  }
}

BoxSpace BoxSpace::grid(const ModuleRef& m, int rows, int cols) {
  return BoxSpace(std::vector<ModuleRef>(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), m), rows, cols);
}

BoxSpace BoxSpace::by_rows(std::span<const ModuleRef> row_modules, int cols) {
  std::vector<ModuleRef> cells;
  for (const ModuleRef& m : row_modules)
    for (int c = 0; c < cols; ++c) cells.push_back(m);
  return BoxSpace(std::move(cells), static_cast<int>(row_modules.size()), cols);
}

void BoxSpace::require_budget(const char* what) const {
  if (!within_budget())
    throw BasisBudgetExceeded(std::string(what) + ": basis of " + describe() + " exceeds the budget of " +
                              std::to_string(basis_budget()));
}

std::vector<int> BoxSpace::decode(std::uint64_t index) const {
  std::vector<int> digits(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    digits[i] = static_cast<int>(index / weights_[i]);
    index %= weights_[i];
  }
  return digits;
}

std::uint64_t BoxSpace::encode(std::span<const int> digits) const {
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) index += static_cast<std::uint64_t>(digits[i]) * weights_[i];
  return index;
}

int BoxSpace::digit(std::uint64_t index, int cell) const {
  const auto c = static_cast<std::size_t>(cell);
  return static_cast<int>((index / weights_[c]) % static_cast<std::uint64_t>(cells_[c]->rank()));
}

int BoxSpace::degree(std::uint64_t index) const {
  int total = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    total += cells_[i]->degree(static_cast<int>(index / weights_[i]));
    index %= weights_[i];
  }
  return total;
}

bool BoxSpace::operator==(const BoxSpace& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || cells_.size() != o.cells_.size()) return false;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (!same_module(cells_[i], o.cells_[i])) return false;
  return true;
}

std::string BoxSpace::describe() const {
  std::string out = "[" + std::to_string(rows_) + "x" + std::to_string(cols_) + ":";
  // Collapse runs of the same module.
  for (std::size_t i = 0; i < cells_.size();) {
    std::size_t j = i;
    while (j < cells_.size() && same_module(cells_[i], cells_[j])) ++j;
    out += (i ? " " : "") + cells_[i]->name() + (j - i > 1 ? "^" + std::to_string(j - i) : "");
    i = j;
  }
  return out + "]";
}

BoxSpace concat(std::span<const BoxSpace> parts) {
  std::vector<ModuleRef> cells;
  bool same_cols = !parts.empty();
  int rows = 0;
  for (const BoxSpace& p : parts) {
    cells.insert(cells.end(), p.cells().begin(), p.cells().end());
    rows += p.rows();
    if (p.cols() != parts.front().cols()) same_cols = false;
  }
  if (same_cols) return BoxSpace(std::move(cells), rows, parts.front().cols());
  const int n = static_cast<int>(cells.size());
  return BoxSpace(std::move(cells), 1, n);
}

namespace {

void normalize(const Ring& ring, std::vector<BoxEntry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const BoxEntry& a, const BoxEntry& b) { return a.in != b.in ? a.in < b.in : a.out < b.out; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < entries.size();) {
    std::size_t s = r;
    Scalar sum = 0;
    while (s < entries.size() && entries[s].in == entries[r].in && entries[s].out == entries[r].out) sum += entries[s++].coeff;
    sum = ring.reduce(sum);
    if (sum != 0) {
      entries[w] = {entries[r].in, entries[r].out, std::move(sum)};
      ++w;
    }
    r = s;
  }
  entries.resize(w);
}

}  // namespace

BoxMap BoxMap::zero(const Ring& ring, BoxSpace source, BoxSpace target, int degree) {
  return BoxMap(ring, std::move(source), std::move(target), degree);
}

BoxMap BoxMap::identity(const Ring& ring, const BoxSpace& space) {
  space.require_budget("identity");
  BoxMap id(ring, space, space, 0);
  id.entries_.reserve(space.basis_size());
  for (std::uint64_t i = 0; i < space.basis_size(); ++i) id.entries_.push_back({i, i, Scalar(1)});
  return id;
}

BoxMap BoxMap::from_entries(const Ring& ring, BoxSpace source, BoxSpace target, int degree, std::vector<BoxEntry> entries) {
  BoxMap f(ring, std::move(source), std::move(target), degree);
  for (const BoxEntry& e : entries) {
    if (e.in >= f.source_.basis_size() || e.out >= f.target_.basis_size())
      throw std::invalid_argument("map entry outside the basis");
  }
  normalize(ring, entries);
  for (const BoxEntry& e : entries)
    if (f.target_.degree(e.out) - f.source_.degree(e.in) != degree)
      throw std::invalid_argument("map entry of degree " +
                                  std::to_string(f.target_.degree(e.out) - f.source_.degree(e.in)) +
                                  " in a map of degree " + std::to_string(degree));
  f.entries_ = std::move(entries);
  return f;
}

Scalar BoxMap::coefficient(std::uint64_t in, std::uint64_t out) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{in, out}, [](const BoxEntry& e, const auto& key) {
    return e.in != key.first ? e.in < key.first : e.out < key.second;
  });
  if (it != entries_.end() && it->in == in && it->out == out) return it->coeff;
  return 0;
}

namespace {
void require_parallel(const BoxMap& a, const BoxMap& b, const char* what) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()) || a.degree() != b.degree() || !(a.ring() == b.ring()))
    throw std::invalid_argument(std::string(what) + ": maps of different shape, degree or ring");
}
}  // namespace

BoxMap BoxMap::operator+(const BoxMap& o) const {
  require_parallel(*this, o, "sum");
  BoxMap r(ring_, source_, target_, entries_.empty() ? o.degree_ : degree_);
  if (!entries_.empty() && !o.entries_.empty() && degree_ != o.degree_)
    throw std::invalid_argument("sum of maps of different degrees");
  r.entries_ = entries_;
  r.entries_.insert(r.entries_.end(), o.entries_.begin(), o.entries_.end());
  normalize(ring_, r.entries_);
  return r;
}

BoxMap BoxMap::operator-() const { return scaled(Scalar(-1)); }
BoxMap BoxMap::operator-(const BoxMap& o) const { return *this + (-o); }

BoxMap BoxMap::scaled(const Scalar& c) const {
  BoxMap r(ring_, source_, target_, degree_);
  r.entries_ = entries_;
  for (auto& e : r.entries_) e.coeff *= c;
  normalize(ring_, r.entries_);
  return r;
}

bool BoxMap::operator==(const BoxMap& o) const {
  if (!(source_ == o.source_) || !(target_ == o.target_) || !(ring_ == o.ring_)) return false;
  if (entries_.empty() && o.entries_.empty()) return true;  // zero maps of any degree agree
  if (degree_ != o.degree_ || entries_.size() != o.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].in != o.entries_[i].in || entries_[i].out != o.entries_[i].out || entries_[i].coeff != o.entries_[i].coeff)
      return false;
  return true;
}

std::string describe(const BoxMap& f, std::size_t max_entries) {
  std::string out = f.source().describe() + " -> " + f.target().describe() + ", degree " + std::to_string(f.degree()) +
                    ", " + std::to_string(f.entries().size()) + " entries";
  auto name = [](const BoxSpace& s, std::uint64_t index) {
    std::string r;
    auto digits = s.decode(index);
    for (std::size_t c = 0; c < digits.size(); ++c) {
      if (c) r += (s.cols() > 0 && c % static_cast<std::size_t>(s.cols()) == 0) ? " | " : " ";
      r += s.cell(static_cast<int>(c)).generators()[static_cast<std::size_t>(digits[c])].name;
    }
    return r;
  };
  for (std::size_t i = 0; i < std::min(max_entries, f.entries().size()); ++i) {
    const auto& e = f.entries()[i];
    out += "; [" + name(f.source(), e.in) + "] -> " + to_string(e.coeff) + " [" + name(f.target(), e.out) + "]";
  }
  if (f.entries().size() > max_entries) out += "; ...";
  return out;
}

BoxMap compose(const BoxMap& g, const BoxMap& f) {
  if (!(f.target() == g.source()))
    throw std::invalid_argument("compose: " + f.target().describe() + " does not match " + g.source().describe());
  if (!(f.ring() == g.ring())) throw std::invalid_argument("compose: different rings");
  std::vector<BoxEntry> out;
  const auto& ge = g.entries();
  for (const BoxEntry& e : f.entries()) {
    auto lo = std::lower_bound(ge.begin(), ge.end(), e.out, [](const BoxEntry& x, std::uint64_t key) { return x.in < key; });
    for (auto it = lo; it != ge.end() && it->in == e.out; ++it) out.push_back({e.in, it->out, e.coeff * it->coeff});
  }
  return BoxMap::from_entries(f.ring(), f.source(), g.target(), f.degree() + g.degree(), std::move(out));
}

BoxMap tensor(std::span<const BoxMap> fs) {
  if (fs.empty()) throw std::invalid_argument("tensor of no maps");
  std::vector<BoxSpace> srcs, tgts;
  int degree = 0;
  for (const BoxMap& f : fs) {
    if (!(f.ring() == fs.front().ring())) throw std::invalid_argument("tensor: different rings");
    srcs.push_back(f.source());
    tgts.push_back(f.target());
    degree += f.degree();
  }
  BoxSpace src = concat(srcs), tgt = concat(tgts);

  // Cartesian product of the entry lists, indices combined in mixed radix.
  struct Partial {
    std::uint64_t in = 0, out = 0;
    Scalar coeff = 1;
    int in_degree = 0;  // total degree of the inputs consumed so far
  };
  std::vector<Partial> acc{Partial{}};
  for (const BoxMap& f : fs) {
    std::vector<Partial> next;
    next.reserve(acc.size() * f.entries().size());
    const std::uint64_t in_w = f.source().basis_size(), out_w = f.target().basis_size();
    for (const Partial& p : acc)
      for (const BoxEntry& e : f.entries()) {
        Scalar c = p.coeff * e.coeff;
        if ((f.degree() * p.in_degree) & 1) c = -c;
        next.push_back({p.in * in_w + e.in, p.out * out_w + e.out, std::move(c), p.in_degree + f.source().degree(e.in)});
      }
    acc = std::move(next);
  }
  std::vector<BoxEntry> entries;
  entries.reserve(acc.size());
  for (Partial& p : acc) entries.push_back({p.in, p.out, std::move(p.coeff)});
  return BoxMap::from_entries(fs.front().ring(), std::move(src), std::move(tgt), degree, std::move(entries));
}

BoxMap tensor_rows(std::span<const BoxMap> fs) {
  for (const BoxMap& f : fs)
    if (f.source().cols() != fs.front().source().cols() || f.target().cols() != fs.front().target().cols())
      throw std::invalid_argument("tensor_rows: column counts differ");
  return tensor(fs);
}

namespace {
// Position map for joining column blocks: new grid cell -> cell of the block-ordered concatenation.
CellPermutation block_to_grid(int rows, const std::vector<int>& widths) {
  const int total = std::accumulate(widths.begin(), widths.end(), 0);
  CellPermutation p{std::vector<int>(static_cast<std::size_t>(rows * total)), rows, total};
  int block_start = 0, col_offset = 0;
  for (int w : widths) {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < w; ++c) p.perm[static_cast<std::size_t>(r * total + col_offset + c)] = block_start + r * w + c;
    block_start += rows * w;
    col_offset += w;
  }
  return p;
}
}  // namespace

BoxMap tensor_cols(std::span<const BoxMap> fs) {
  if (fs.empty()) throw std::invalid_argument("tensor of no maps");
  std::vector<int> in_widths, out_widths;
  for (const BoxMap& f : fs) {
    if (f.source().rows() != fs.front().source().rows() || f.target().rows() != fs.front().target().rows())
      throw std::invalid_argument("tensor_cols: row counts differ");
    in_widths.push_back(f.source().cols());
    out_widths.push_back(f.target().cols());
  }
  BoxMap plain = tensor(fs);
  return permuted(plain, block_to_grid(fs.front().source().rows(), in_widths),
                  block_to_grid(fs.front().target().rows(), out_widths));
}

BoxSpace permute_space(const BoxSpace& space, const CellPermutation& p) {
  if (p.perm.size() != static_cast<std::size_t>(space.cell_count()))
    throw std::invalid_argument("cell permutation of the wrong length");
  std::vector<ModuleRef> cells;
  for (int j : p.perm) cells.push_back(space.cells()[static_cast<std::size_t>(j)]);
  return BoxSpace(std::move(cells), p.rows, p.cols);
}

int permutation_sign(const BoxSpace& space, const CellPermutation& p, std::uint64_t index) {
  std::vector<int> deg(p.perm.size());
  for (std::size_t j = 0; j < p.perm.size(); ++j)
    deg[j] = space.cell(p.perm[j]).degree(space.digit(index, p.perm[j])) & 1;
  int sign = 0;
  for (std::size_t a = 0; a < p.perm.size(); ++a) {
    if (!deg[a]) continue;
    for (std::size_t b = a + 1; b < p.perm.size(); ++b)
      if (deg[b] && p.perm[a] > p.perm[b]) sign ^= 1;
  }
  return sign;
}

std::uint64_t permute_index(const BoxSpace& space, const CellPermutation& p, std::uint64_t index) {
  const BoxSpace target = permute_space(space, p);
  std::vector<int> digits(p.perm.size());
  for (std::size_t j = 0; j < p.perm.size(); ++j) digits[j] = space.digit(index, p.perm[j]);
  return target.encode(digits);
}

BoxMap permuted(const BoxMap& f, const CellPermutation& in, const CellPermutation& out) {
  // `in` describes the new source in terms of f.source(): new cell j is old cell in.perm[j].
  // A new-source basis element y corresponds to the old element x with P_in(x) = y.
  const BoxSpace new_src = permute_space(f.source(), in);
  const BoxSpace new_tgt = permute_space(f.target(), out);
  std::vector<BoxEntry> entries;
  entries.reserve(f.entries().size());
  for (const BoxEntry& e : f.entries()) {
    Scalar c = e.coeff;
    if (permutation_sign(f.source(), in, e.in) ^ permutation_sign(f.target(), out, e.out)) c = -c;
    entries.push_back({permute_index(f.source(), in, e.in), permute_index(f.target(), out, e.out), std::move(c)});
  }
  return BoxMap::from_entries(f.ring(), new_src, new_tgt, f.degree(), std::move(entries));
}

BoxMap permutation_map(const Ring& ring, const BoxSpace& space, const CellPermutation& p) {
  space.require_budget("permutation_map");
  std::vector<BoxEntry> entries;
  for (std::uint64_t i = 0; i < space.basis_size(); ++i)
    entries.push_back({i, permute_index(space, p, i), sign_scalar(permutation_sign(space, p, i))});
  return BoxMap::from_entries(ring, space, permute_space(space, p), 0, std::move(entries));
}

CellPermutation transpose_permutation(int rows, int cols) {
  CellPermutation p{std::vector<int>(static_cast<std::size_t>(rows * cols)), cols, rows};
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) p.perm[static_cast<std::size_t>(j * rows + i)] = i * cols + j;
  return p;
}

int transpose_sign(const BoxSpace& space, std::uint64_t index) {
  return permutation_sign(space, transpose_permutation(space.rows(), space.cols()), index);
}

BoxMap transposed(const BoxMap& f) {
  return permuted(f, transpose_permutation(f.source().rows(), f.source().cols()),
                  transpose_permutation(f.target().rows(), f.target().cols()));
}

BoxMap grid_differential(const BoxMap& d, int rows, int cols) {
  if (d.source().cell_count() != 1 || !(d.source() == d.target()))
    throw std::invalid_argument("grid_differential expects an endomorphism of a single cell");
  if (!compose(d, d).is_zero()) throw std::invalid_argument("grid_differential: d does not square to zero");
  const BoxSpace space = BoxSpace::grid(d.source().cells().front(), rows, cols);
  if (d.is_zero()) return BoxMap::zero(d.ring(), space, space, d.degree());
  space.require_budget("grid_differential");
  std::vector<BoxEntry> entries;
  for (std::uint64_t x = 0; x < space.basis_size(); ++x) {
    auto digits = space.decode(x);
    int prefix = 0;
    for (int c = 0; c < space.cell_count(); ++c) {
      const int g = digits[static_cast<std::size_t>(c)];
      const auto& de = d.entries();
      auto lo = std::lower_bound(de.begin(), de.end(), static_cast<std::uint64_t>(g),
                                 [](const BoxEntry& e, std::uint64_t key) { return e.in < key; });
      for (auto it = lo; it != de.end() && it->in == static_cast<std::uint64_t>(g); ++it) {
        auto out = digits;
        out[static_cast<std::size_t>(c)] = static_cast<int>(it->out);
        Scalar coeff = it->coeff;
        if ((d.degree() * prefix) & 1) coeff = -coeff;
        entries.push_back({x, space.encode(out), std::move(coeff)});
      }
      prefix += space.cell(c).degree(g);
    }
  }
  return BoxMap::from_entries(d.ring(), space, space, d.degree(), std::move(entries));
}

BoxMap random_map(const Ring& ring, const BoxSpace& source, const BoxSpace& target, int degree, std::mt19937_64& rng,
                  int max_entries) {
  std::vector<BoxEntry> entries;
  if (source.basis_size() == 0 || target.basis_size() == 0) return BoxMap::zero(ring, source, target, degree);
  const int attempts = 40 * max_entries;
  for (int a = 0; a < attempts && static_cast<int>(entries.size()) < max_entries; ++a) {
    std::uint64_t in = rng() % source.basis_size();
    std::uint64_t out = rng() % target.basis_size();
    if (target.degree(out) - source.degree(in) != degree) continue;
    entries.push_back({in, out, ring.random_nonzero(rng)});
  }
  return BoxMap::from_entries(ring, source, target, degree, std::move(entries));
}

std::vector<std::vector<Scalar>> to_dense(const BoxMap& f) {
  f.source().require_budget("to_dense");
  f.target().require_budget("to_dense");
  std::vector<std::vector<Scalar>> m(f.target().basis_size(), std::vector<Scalar>(f.source().basis_size(), Scalar(0)));
  for (const BoxEntry& e : f.entries()) m[e.out][e.in] = e.coeff;
  return m;
}

}  // namespace graftlab
