#pragma once

#include "graftlab/ring.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace graftlab {

struct Generator {
  std::string name;
  int degree = 0;
  bool operator==(const Generator&) const = default;
};

// Free graded module on finitely many named generators.
class GradedModule {
 public:
  GradedModule(std::string name, std::vector<Generator> generators, int semigroup_id = -1);

  const std::string& name() const { return name_; }
  const std::vector<Generator>& generators() const { return generators_; }
  int rank() const { return static_cast<int>(generators_.size()); }
  int degree(int g) const { return generators_[static_cast<std::size_t>(g)].degree; }
  int index_of(std::string_view generator) const;  // throws when absent
  // Registry id when this is the group ring of a finite semigroup (all degrees 0), else -1.
  int semigroup_id() const { return semigroup_id_; }

  bool operator==(const GradedModule& o) const {
    return name_ == o.name_ && generators_ == o.generators_ && semigroup_id_ == o.semigroup_id_;
  }

 private:
  std::string name_;
  std::vector<Generator> generators_;
  int semigroup_id_;
};

using ModuleRef = std::shared_ptr<const GradedModule>;
ModuleRef make_module(std::string name, std::vector<Generator> generators);
// Direct sum, generators prefixed by the summand names.
ModuleRef direct_sum(std::span<const ModuleRef> summands, std::string name);

struct BasisBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultBasisBudget = std::uint64_t{1} << 16;
// Largest basis an operation may enumerate. Process-wide; set it before starting parallel work.
std::uint64_t basis_budget();
void set_basis_budget(std::uint64_t budget);

// Tensor product of one module per cell, cells laid out row-major in a rows x cols grid
// (the box (A^cols)^rows). Basis elements are indexed in mixed radix, cell 0 most significant.
class BoxSpace {
 public:
  BoxSpace() = default;
  BoxSpace(std::vector<ModuleRef> cells, int rows, int cols);
  static BoxSpace grid(const ModuleRef& m, int rows, int cols);
  // One module per row, each repeated across `cols` cells.
  static BoxSpace by_rows(std::span<const ModuleRef> row_modules, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  const std::vector<ModuleRef>& cells() const { return cells_; }
  const GradedModule& cell(int i) const { return *cells_[static_cast<std::size_t>(i)]; }

  // Saturates at UINT64_MAX instead of overflowing.
  std::uint64_t basis_size() const { return size_; }
  bool within_budget() const { return size_ <= basis_budget(); }
  void require_budget(const char* what) const;

  std::vector<int> decode(std::uint64_t index) const;
  std::uint64_t encode(std::span<const int> digits) const;
  int digit(std::uint64_t index, int cell) const;
  int degree(std::uint64_t index) const;

  bool operator==(const BoxSpace& o) const;
  std::string describe() const;

 private:
  std::vector<ModuleRef> cells_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint64_t> weights_;  // weight of each cell's digit
  std::uint64_t size_ = 1;
};

// Concatenation of cells. Rows add up when all column counts agree, otherwise the result is a
// single row.
BoxSpace concat(std::span<const BoxSpace> parts);

struct BoxEntry {
  std::uint64_t in;
  std::uint64_t out;
  Scalar coeff;
};

// Homogeneous linear map between box spaces with exact coefficients.
class BoxMap {
 public:
  BoxMap() = default;
  static BoxMap zero(const Ring& ring, BoxSpace source, BoxSpace target, int degree);
  static BoxMap identity(const Ring& ring, const BoxSpace& space);
  // Sums duplicates, reduces in the ring, drops zeros and checks every entry has the given degree.
  static BoxMap from_entries(const Ring& ring, BoxSpace source, BoxSpace target, int degree,
                             std::vector<BoxEntry> entries);

  const Ring& ring() const { return ring_; }
  const BoxSpace& source() const { return source_; }
  const BoxSpace& target() const { return target_; }
  int degree() const { return degree_; }
  const std::vector<BoxEntry>& entries() const { return entries_; }  // sorted by (in, out)
  bool is_zero() const { return entries_.empty(); }
  Scalar coefficient(std::uint64_t in, std::uint64_t out) const;

  BoxMap operator+(const BoxMap& o) const;
  BoxMap operator-(const BoxMap& o) const;
  BoxMap operator-() const;
  BoxMap scaled(const Scalar& c) const;
  bool operator==(const BoxMap& o) const;

 private:
  BoxMap(Ring ring, BoxSpace s, BoxSpace t, int degree) : ring_(ring), source_(std::move(s)), target_(std::move(t)), degree_(degree) {}
  Ring ring_ = Ring::integers();
  BoxSpace source_;
  BoxSpace target_;
  int degree_ = 0;
  std::vector<BoxEntry> entries_;
};

std::string describe(const BoxMap& f, std::size_t max_entries = 6);

BoxMap compose(const BoxMap& g, const BoxMap& f);  // g after f

// f_1 (x) ... (x) f_m on concatenated cells, with the Koszul sign (-1)^{sum_i |f_i| sum_{j<i} |x_j|}.
BoxMap tensor(std::span<const BoxMap> fs);
// Stacks row blocks: (A^b)^{a_1+..+a_m} = (A^b)^{a_1} (x) ... (x) (A^b)^{a_m}. Column counts must agree.
BoxMap tensor_rows(std::span<const BoxMap> fs);
// Joins column blocks: (A^{b_1+..+b_m})^a = (A^{b_1})^a (x) ... (x) (A^{b_m})^a, through the signed
// reordering of cells from row-major to block order. Row counts must agree.
BoxMap tensor_cols(std::span<const BoxMap> fs);

// Signed reordering of tensor factors. New cell j is old cell perm[j].
struct CellPermutation {
  std::vector<int> perm;
  int rows = 1;
  int cols = 0;
};
BoxSpace permute_space(const BoxSpace& space, const CellPermutation& p);
// Koszul parity of moving the factors of basis element `index` into the new order.
int permutation_sign(const BoxSpace& space, const CellPermutation& p, std::uint64_t index);
std::uint64_t permute_index(const BoxSpace& space, const CellPermutation& p, std::uint64_t index);
// P_out o f o P_in^{-1}, computed entry by entry.
BoxMap permuted(const BoxMap& f, const CellPermutation& in, const CellPermutation& out);
// The reordering itself as an explicit map.
BoxMap permutation_map(const Ring& ring, const BoxSpace& space, const CellPermutation& p);

// Row-major to column-major: the (A^b)^a -> (A^a)^b exchange.
CellPermutation transpose_permutation(int rows, int cols);
int transpose_sign(const BoxSpace& space, std::uint64_t index);
BoxMap transposed(const BoxMap& f);  // T o f o T^{-1}

// Sum over cells (row-major) of id (x) .. (x) d (x) .. (x) id on (A^cols)^rows. d acts on (A,1,1).
BoxMap grid_differential(const BoxMap& d, int rows, int cols);

// Sparse random map with at most `max_entries` entries of the given degree.
BoxMap random_map(const Ring& ring, const BoxSpace& source, const BoxSpace& target, int degree,
                  std::mt19937_64& rng, int max_entries);

// Dense matrix (rows = target basis) for oracle tests on small spaces.
std::vector<std::vector<Scalar>> to_dense(const BoxMap& f);

}  // namespace graftlab
