#include "graftlab/multiindex.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>

namespace graftlab {

MultiIndex::MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < 1) throw std::invalid_argument("multi-index entries must be >= 1");
}

MultiIndex MultiIndex::vertical(int trees) {
  if (trees < 0) throw std::invalid_argument("negative tree count");
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(trees), 1));
}

bool MultiIndex::is_vertical() const {
  return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 1; });
}

bool MultiIndex::is_almost_vertical() const {
  return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e <= 2; });
}

int leaves(const MultiIndex& k) {
  auto e = k.entries();
  return std::accumulate(e.begin(), e.end(), 0);
}

int trees(const MultiIndex& k) { return static_cast<int>(k.size()); }

int vertex_count(const MultiIndex& k) { return leaves(k) - trees(k); }

std::vector<int> vertex_set(const MultiIndex& k) {
  std::vector<int> out;
  int pos = 0;
  for (int e : k.entries()) {
    for (int j = 1; j < e; ++j) out.push_back(pos + j);
    pos += e;
  }
  return out;
}

int vertices_at_or_above(const MultiIndex& k, int h) {
  if (h < 1 || h > leaves(k) + 1) throw std::out_of_range("height outside 1..|k|+1");
  int count = 0;
  for (int p : vertex_set(k))
    if (p >= h) ++count;
  return count;
}

MultiIndex drop_unit_trees(const MultiIndex& k) {
  std::vector<int> out;
  for (int e : k.entries())
    if (e > 1) out.push_back(e);
  return MultiIndex(std::move(out));
}

MultiIndex glue(const MultiIndex& upper, const MultiIndex& lower) {
  if (leaves(lower) != trees(upper))
    throw std::invalid_argument("glue: leaves(" + to_string(lower) + ") != trees(" + to_string(upper) + ")");
  std::vector<int> out;
  out.reserve(lower.size());
  std::size_t pos = 0;
  for (int block : lower.entries()) {
    int sum = 0;
    for (int j = 0; j < block; ++j) sum += upper[pos++];
    out.push_back(sum);
  }
  return MultiIndex(std::move(out));
}

std::vector<MultiIndex> compositions(int n) {
  if (n < 1) throw std::invalid_argument("compositions of a non-positive integer");
  std::vector<MultiIndex> out;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int rest) -> void {
    if (rest == 0) {
      out.emplace_back(parts);
      return;
    }
    for (int first = rest; first >= 1; --first) {
      parts.push_back(first);
      self(self, rest - first);
      parts.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(int max_leaves) {
  std::vector<MultiIndex> out;
  for (int n = 1; n <= max_leaves; ++n) {
    auto c = compositions(n);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::vector<Splitting> splittings(const MultiIndex& k) {
  if (k.empty()) throw std::invalid_argument("splittings of the empty multi-index");
  std::vector<std::vector<MultiIndex>> per_tree;
  per_tree.reserve(k.size());
  for (int e : k.entries()) per_tree.push_back(compositions(e));

  std::vector<Splitting> out;
  std::vector<std::size_t> choice(k.size(), 0);
  while (true) {
    std::vector<int> lower, upper;
    for (std::size_t t = 0; t < k.size(); ++t) {
      const MultiIndex& c = per_tree[t][choice[t]];
      lower.push_back(static_cast<int>(c.size()));
      upper.insert(upper.end(), c.entries().begin(), c.entries().end());
    }
    out.push_back({MultiIndex(std::move(lower)), MultiIndex(std::move(upper))});
    std::size_t t = k.size();
    while (t > 0) {
      --t;
      if (++choice[t] < per_tree[t].size()) break;
      choice[t] = 0;
      if (t == 0) return out;
    }
  }
}

const std::vector<Splitting>& cached_splittings(const MultiIndex& k) {
  static std::shared_mutex mutex;
  static std::map<MultiIndex, std::vector<Splitting>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  auto computed = splittings(k);
  std::unique_lock lock(mutex);
  return cache.try_emplace(k, std::move(computed)).first->second;
}

int gluing_sign(const MultiIndex& upper, const MultiIndex& lower) {
  if (leaves(lower) != trees(upper)) throw std::invalid_argument("gluing_sign: incompatible multi-indices");
  int total = 0;
  for (std::size_t h = 0; h < upper.size(); ++h)
    total += (upper[h] - 1) * vertices_at_or_above(lower, static_cast<int>(h) + 1);
  return total & 1;
}

std::vector<VertexOrigin> glued_vertex_origins(const MultiIndex& upper, const MultiIndex& lower) {
  if (leaves(lower) != trees(upper)) throw std::invalid_argument("gluing_sign: incompatible multi-indices");
  const MultiIndex glued = glue(upper, lower);
  const std::vector<int> lower_vertices = vertex_set(lower);
  const std::vector<int> upper_vertices = vertex_set(upper);

  // upper_tree_end_at[p] = t when leaf p of the glued forest ends upper tree t (1-based).
  std::vector<int> upper_tree_end_at(static_cast<std::size_t>(leaves(glued)) + 1, 0);
  {
    int pos = 0, t = 0;
    for (int e : upper.entries()) {
      pos += e;
      upper_tree_end_at[static_cast<std::size_t>(pos)] = ++t;
    }
  }
  std::vector<VertexOrigin> out;
  for (int p : vertex_set(glued)) {
    const int t = upper_tree_end_at[static_cast<std::size_t>(p)];
    const std::vector<int>& layer = t == 0 ? upper_vertices : lower_vertices;
    const int key = t == 0 ? p : t;
    auto it = std::lower_bound(layer.begin(), layer.end(), key);
    if (it == layer.end() || *it != key) throw std::logic_error("vertex bijection failed");
    out.push_back({t == 0, static_cast<int>(it - layer.begin())});
  }
  return out;
}

int gluing_sign_by_permutation(const MultiIndex& upper, const MultiIndex& lower) {
  const int lower_count = vertex_count(lower);
  std::vector<int> slots;
  for (const VertexOrigin& o : glued_vertex_origins(upper, lower))
    slots.push_back(o.from_upper ? lower_count + o.index : o.index);
  int inversions = 0;
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (std::size_t j = i + 1; j < slots.size(); ++j)
      if (slots[i] > slots[j]) ++inversions;
  return inversions & 1;
}

int symmetry_dim(const MultiIndex& k, const MultiIndex& l) {
  int a = trees(drop_unit_trees(k));
  int b = trees(drop_unit_trees(l));
  if (b == 0) return a;
  if (a == 0) return b;
  return 1;
}

std::string to_string(const MultiIndex& k) {
  std::string out = "(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(k[i]);
  }
  return out + ")";
}

MultiIndex parse_multi_index(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '(' && c != ')' && c != '[' && c != ']') s += c;
  std::vector<int> entries;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t comma = s.find(',', start);
    std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(part, &used);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad multi-index '" + std::string(text) + "'");
    }
    if (used != part.size()) throw std::invalid_argument("bad multi-index '" + std::string(text) + "'");
    entries.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return MultiIndex(std::move(entries));
}

std::size_t MultiIndexHash::operator()(const MultiIndex& k) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (int e : k.entries()) h = (h ^ static_cast<std::size_t>(e)) * 0x100000001b3ull;
  return h ^ k.size();
}

}  // namespace graftlab
