#include "graftlab/semigroup.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace graftlab {

FiniteSemigroup::FiniteSemigroup(std::string name, std::vector<std::string> elements, std::vector<std::vector<int>> table)
    : FiniteSemigroup(std::move(name), std::move(elements), std::move(table), true) {}

FiniteSemigroup FiniteSemigroup::unchecked(std::string name, std::vector<std::string> elements,
                                           std::vector<std::vector<int>> table) {
  return FiniteSemigroup(std::move(name), std::move(elements), std::move(table), false);
}

FiniteSemigroup::FiniteSemigroup(std::string name, std::vector<std::string> elements, std::vector<std::vector<int>> table,
                                 bool check)
    : name_(std::move(name)), elements_(std::move(elements)), table_(std::move(table)) {
  const int n = size();
  if (n == 0) throw std::invalid_argument("semigroup '" + name_ + "' has no elements");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (elements_[static_cast<std::size_t>(i)] == elements_[static_cast<std::size_t>(j)])
        throw std::invalid_argument("semigroup '" + name_ + "': duplicate element name");
  if (static_cast<int>(table_.size()) != n) throw std::invalid_argument("semigroup '" + name_ + "': table is not square");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("semigroup '" + name_ + "': table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("semigroup '" + name_ + "': table entry out of range");
  }
  auto w = associativity_witness();
  associative_ = !w.has_value();
  if (check && w) {
    const auto& [x, y, z] = *w;
    throw std::invalid_argument("semigroup '" + name_ + "' is not associative at (" + elements_[static_cast<std::size_t>(x)] +
                                ", " + elements_[static_cast<std::size_t>(y)] + ", " + elements_[static_cast<std::size_t>(z)] +
                                ")");
  }
}

int FiniteSemigroup::index_of(std::string_view element) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == element) return static_cast<int>(i);
  throw std::invalid_argument("semigroup '" + name_ + "' has no element '" + std::string(element) + "'");
}

std::optional<std::array<int, 3>> FiniteSemigroup::associativity_witness() const {
  const int n = size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) return std::array<int, 3>{x, y, z};
  return std::nullopt;
}

namespace {

struct Registry {
  std::shared_mutex mutex;
  std::deque<FiniteSemigroup> semigroups;
  std::deque<ModuleRef> modules;
  std::deque<SemigroupMap> maps;
  std::map<std::tuple<int, int, std::vector<int>>, int> map_ids;
  std::map<std::pair<int, int>, int> composites;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

int register_semigroup(const FiniteSemigroup& s) {
  Registry& r = registry();
  std::unique_lock lock(r.mutex);
  for (std::size_t i = 0; i < r.semigroups.size(); ++i)
    if (r.semigroups[i] == s) return static_cast<int>(i);
  const int id = static_cast<int>(r.semigroups.size());
  r.semigroups.push_back(s);
  std::vector<Generator> gens;
  for (const auto& e : s.elements()) gens.push_back({e, 0});
  r.modules.push_back(std::make_shared<const GradedModule>(s.name(), std::move(gens), id));
  return id;
}

const FiniteSemigroup& semigroup(int id) {
  Registry& r = registry();
  std::shared_lock lock(r.mutex);
  if (id < 0 || static_cast<std::size_t>(id) >= r.semigroups.size()) throw std::out_of_range("unknown semigroup id");
  return r.semigroups[static_cast<std::size_t>(id)];
}

ModuleRef semigroup_module(int id) {
  Registry& r = registry();
  std::shared_lock lock(r.mutex);
  if (id < 0 || static_cast<std::size_t>(id) >= r.modules.size()) throw std::out_of_range("unknown semigroup id");
  return r.modules[static_cast<std::size_t>(id)];
}

std::optional<std::pair<int, int>> homomorphism_witness(const SemigroupMap& f) {
  const FiniteSemigroup& a = semigroup(f.from);
  const FiniteSemigroup& b = semigroup(f.to);
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y)
      if (f.table[static_cast<std::size_t>(a.mul(x, y))] !=
          b.mul(f.table[static_cast<std::size_t>(x)], f.table[static_cast<std::size_t>(y)]))
        return std::pair{x, y};
  return std::nullopt;
}

int register_map(int from, int to, std::vector<int> table) {
  const FiniteSemigroup& a = semigroup(from);
  const FiniteSemigroup& b = semigroup(to);
  if (static_cast<int>(table.size()) != a.size()) throw std::invalid_argument("map table has the wrong length");
  for (int v : table)
    if (v < 0 || v >= b.size()) throw std::invalid_argument("map value out of range");
  SemigroupMap f{from, to, table, false, false};
  f.homomorphism = !homomorphism_witness(f).has_value();
  f.identity = from == to;
  for (std::size_t i = 0; i < table.size() && f.identity; ++i) f.identity = table[i] == static_cast<int>(i);

  Registry& r = registry();
  std::unique_lock lock(r.mutex);
  auto key = std::tuple{from, to, table};
  if (auto it = r.map_ids.find(key); it != r.map_ids.end()) return it->second;
  const int id = static_cast<int>(r.maps.size());
  r.maps.push_back(std::move(f));
  r.map_ids.emplace(std::move(key), id);
  return id;
}

const SemigroupMap& semigroup_map(int id) {
  Registry& r = registry();
  std::shared_lock lock(r.mutex);
  if (id < 0 || static_cast<std::size_t>(id) >= r.maps.size()) throw std::out_of_range("unknown semigroup map id");
  return r.maps[static_cast<std::size_t>(id)];
}

int compose_maps(int outer, int inner) {
  {
    Registry& r = registry();
    std::shared_lock lock(r.mutex);
    if (auto it = r.composites.find({outer, inner}); it != r.composites.end()) return it->second;
  }
  const SemigroupMap& f = semigroup_map(outer);
  const SemigroupMap& g = semigroup_map(inner);
  if (g.to != f.from) throw std::invalid_argument("compose_maps: maps are not composable");
  std::vector<int> table;
  for (int v : g.table) table.push_back(f.table[static_cast<std::size_t>(v)]);
  const int id = register_map(g.from, f.to, std::move(table));
  Registry& r = registry();
  std::unique_lock lock(r.mutex);
  r.composites.emplace(std::pair{outer, inner}, id);
  return id;
}

}  // namespace graftlab
