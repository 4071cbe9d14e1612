#pragma once

#include "graftlab/gradedalg.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace graftlab {

// Finite magma given by its multiplication table. The normal constructor insists on
// associativity; `unchecked` builds arbitrary tables for fault injection.
class FiniteSemigroup {
 public:
  FiniteSemigroup(std::string name, std::vector<std::string> elements, std::vector<std::vector<int>> table);
  static FiniteSemigroup unchecked(std::string name, std::vector<std::string> elements,
                                   std::vector<std::vector<int>> table);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  int size() const { return static_cast<int>(elements_.size()); }
  int mul(int x, int y) const { return table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; }
  bool associative() const { return associative_; }
  int index_of(std::string_view element) const;

  // First triple with (xy)z != x(yz), if any.
  std::optional<std::array<int, 3>> associativity_witness() const;

  bool operator==(const FiniteSemigroup&) const = default;

 private:
  FiniteSemigroup(std::string name, std::vector<std::string> elements, std::vector<std::vector<int>> table, bool check);
  std::string name_;
  std::vector<std::string> elements_;
  std::vector<std::vector<int>> table_;
  bool associative_ = true;
};

// Process-wide interning of semigroups and maps between them, so that symbolic expressions can
// refer to them by small integer ids. Thread-safe.
int register_semigroup(const FiniteSemigroup& s);
const FiniteSemigroup& semigroup(int id);
// The group ring R[M] as a graded module concentrated in degree 0, one generator per element.
ModuleRef semigroup_module(int id);

struct SemigroupMap {
  int from = -1;
  int to = -1;
  std::vector<int> table;
  bool homomorphism = false;  // verified at registration
  bool identity = false;
};

// Validates the table; the homomorphism flag records whether f(xy) = f(x)f(y) holds.
int register_map(int from, int to, std::vector<int> table);
const SemigroupMap& semigroup_map(int id);
int compose_maps(int outer, int inner);  // outer after inner
// First pair (x, y) with f(xy) != f(x)f(y), if any.
std::optional<std::pair<int, int>> homomorphism_witness(const SemigroupMap& f);

}  // namespace graftlab
