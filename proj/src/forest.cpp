#include "graftlab/forest.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace graftlab {

namespace {
[[noreturn]] void malformed(const std::string& what) { throw std::invalid_argument("malformed forest: " + what); }
}  // namespace

Forest::Forest(std::vector<Node> nodes, std::vector<Edge> edges, std::vector<int> leaf_order,
               std::vector<int> root_order)
    : nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      leaf_order_(std::move(leaf_order)),
      root_order_(std::move(root_order)),
      out_edge_(nodes_.size(), -1),
      in_edges_(nodes_.size()) {
  const int count = static_cast<int>(nodes_.size());
  std::set<std::string> names;
  for (const Node& n : nodes_)
    if (!names.insert(n.name).second) malformed("duplicate node name '" + n.name + "'");

  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.src < 0 || edge.src >= count || edge.dst < 0 || edge.dst >= count) malformed("edge endpoint out of range");
    if (nodes_[static_cast<std::size_t>(edge.src)].kind == NodeKind::Root) malformed("edge leaves a root");
    if (nodes_[static_cast<std::size_t>(edge.dst)].kind == NodeKind::Leaf) malformed("edge enters a leaf");
    if (out_edge_[static_cast<std::size_t>(edge.src)] != -1)
      malformed("node '" + nodes_[static_cast<std::size_t>(edge.src)].name + "' has two outgoing edges");
    out_edge_[static_cast<std::size_t>(edge.src)] = static_cast<int>(e);
    in_edges_[static_cast<std::size_t>(edge.dst)].push_back(static_cast<int>(e));
  }
  for (int i = 0; i < count; ++i) {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    const std::size_t ins = in_edges_[static_cast<std::size_t>(i)].size();
    const bool has_out = out_edge_[static_cast<std::size_t>(i)] != -1;
    switch (n.kind) {
      case NodeKind::Leaf:
        if (!has_out) malformed("leaf '" + n.name + "' has no edge");
        break;
      case NodeKind::Root:
        if (ins != 1) malformed("root '" + n.name + "' must end exactly one edge");
        break;
      case NodeKind::Vertex:
        if (!has_out) malformed("vertex '" + n.name + "' has no outgoing edge");
        if (ins < 2) malformed("vertex '" + n.name + "' has fewer than two incoming edges");
        break;
    }
  }
  // Every path toward the roots terminates.
  for (int i = 0; i < count; ++i) {
    int node = i, steps = 0;
    while (nodes_[static_cast<std::size_t>(node)].kind != NodeKind::Root) {
      if (++steps > count) malformed("cycle through '" + nodes_[static_cast<std::size_t>(i)].name + "'");
      node = edges_[static_cast<std::size_t>(out_edge_[static_cast<std::size_t>(node)])].dst;
    }
  }
  auto check_listing = [&](const std::vector<int>& order, NodeKind kind, const char* what) {
    std::vector<int> expected, given = order;
    for (int i = 0; i < count; ++i)
      if (nodes_[static_cast<std::size_t>(i)].kind == kind) expected.push_back(i);
    std::sort(given.begin(), given.end());
    if (given != expected) malformed(std::string(what) + " order does not list every node of that kind once");
  };
  check_listing(leaf_order_, NodeKind::Leaf, "leaf");
  check_listing(root_order_, NodeKind::Root, "root");

  // Planarity: the ribbon traversal from the roots must meet the leaves in leaf order.
  std::vector<int> traversal;
  std::function<void(int)> visit = [&](int node) {
    if (nodes_[static_cast<std::size_t>(node)].kind == NodeKind::Leaf) {
      traversal.push_back(node);
      return;
    }
    for (int e : in_edges_[static_cast<std::size_t>(node)]) visit(edges_[static_cast<std::size_t>(e)].src);
  };
  for (int r : root_order_) visit(r);
  if (traversal != leaf_order_) malformed("leaf order disagrees with the ribbon structure");
}

Forest Forest::corollas(const MultiIndex& k) {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<int> leaves_, roots;
  auto add = [&](NodeKind kind, std::string name) {
    nodes.push_back({kind, std::move(name)});
    return static_cast<int>(nodes.size()) - 1;
  };
  int leaf_no = 0;
  for (std::size_t t = 0; t < k.size(); ++t) {
    const int root = add(NodeKind::Root, "r" + std::to_string(t + 1));
    roots.push_back(root);
    if (k[t] == 1) {
      const int leaf = add(NodeKind::Leaf, "l" + std::to_string(++leaf_no));
      leaves_.push_back(leaf);
      edges.push_back({leaf, root});
      continue;
    }
    const int v = add(NodeKind::Vertex, "v" + std::to_string(t + 1));
    edges.push_back({v, root});
    for (int j = 0; j < k[t]; ++j) {
      const int leaf = add(NodeKind::Leaf, "l" + std::to_string(++leaf_no));
      leaves_.push_back(leaf);
      edges.push_back({leaf, v});
    }
  }
  return Forest(std::move(nodes), std::move(edges), std::move(leaves_), std::move(roots));
}

std::vector<int> Forest::vertices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].kind == NodeKind::Vertex) out.push_back(static_cast<int>(i));
  return out;
}

int Forest::node_index(const std::string& name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].name == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown forest node '" + name + "'");
}

MultiIndex Forest::type() const {
  std::vector<int> counts;
  std::function<int(int)> count_leaves = [&](int node) {
    if (nodes_[static_cast<std::size_t>(node)].kind == NodeKind::Leaf) return 1;
    int total = 0;
    for (int e : in_edges_[static_cast<std::size_t>(node)]) total += count_leaves(edges_[static_cast<std::size_t>(e)].src);
    return total;
  };
  for (int r : root_order_) counts.push_back(count_leaves(r));
  return MultiIndex(std::move(counts));
}

std::vector<int> Forest::edge_label(int edge) const {
  std::vector<int> reversed;
  int e = edge;
  while (true) {
    const int dst = edges_[static_cast<std::size_t>(e)].dst;
    if (nodes_[static_cast<std::size_t>(dst)].kind == NodeKind::Root) {
      reversed.push_back(static_cast<int>(std::find(root_order_.begin(), root_order_.end(), dst) - root_order_.begin()));
      break;
    }
    const auto& ins = in_edges_[static_cast<std::size_t>(dst)];
    reversed.push_back(static_cast<int>(std::find(ins.begin(), ins.end(), e) - ins.begin()));
    e = out_edge_[static_cast<std::size_t>(dst)];
  }
  return {reversed.rbegin(), reversed.rend()};
}

std::string to_string(const Height& h) {
  if (h.infinity > 0) return "+inf";
  if (h.infinity < 0) return "-inf";
  return to_string(h.value);
}

HeightedForest::HeightedForest(Forest base, std::map<int, Scalar> vertex_heights, Polarity polarity)
    : base_(std::move(base)), heights_(std::move(vertex_heights)), polarity_(polarity) {
  const auto vs = base_.vertices();
  if (heights_.size() != vs.size()) malformed("every vertex needs exactly one height");
  for (int v : vs)
    if (!heights_.count(v)) malformed("vertex '" + base_.nodes()[static_cast<std::size_t>(v)].name + "' has no height");
  for (const auto& e : base_.edges()) {
    const Height s = height(e.src), d = height(e.dst);
    const bool ok = polarity_ == Polarity::Ascending ? s > d : s < d;
    if (!ok) malformed("heights are not strictly monotone along edge " + base_.nodes()[static_cast<std::size_t>(e.src)].name +
                       " -> " + base_.nodes()[static_cast<std::size_t>(e.dst)].name);
  }
}

Height HeightedForest::height(int node) const {
  const bool up = polarity_ == Polarity::Ascending;
  switch (base_.nodes()[static_cast<std::size_t>(node)].kind) {
    case NodeKind::Leaf: return up ? Height::plus_infinity() : Height::minus_infinity();
    case NodeKind::Root: return up ? Height::minus_infinity() : Height::plus_infinity();
    case NodeKind::Vertex: return Height::finite(heights_.at(node));
  }
  return {};
}

std::pair<Height, Height> HeightedForest::edge_interval(int edge) const {
  const auto& e = base_.edges()[static_cast<std::size_t>(edge)];
  Height s = height(e.src), d = height(e.dst);
  if (polarity_ == Polarity::Ascending) return {d, s};
  return {s, d};
}

HeightedForest HeightedForest::translated(const Scalar& shift) const {
  std::map<int, Scalar> moved;
  for (const auto& [v, h] : heights_) moved.emplace(v, h + shift);
  return HeightedForest(base_, std::move(moved), polarity_);
}

std::vector<Scalar> HeightedForest::vertex_heights() const {
  std::vector<Scalar> out;
  for (const auto& [v, h] : heights_) out.push_back(h);
  std::sort(out.begin(), out.end());
  return out;
}

MultiIndex forest_type(const HeightedForest& f) { return f.base().type(); }

HenriquesGraph henriques_graph(const HeightedForest& up, const HeightedForest& down) {
  if (up.polarity() != Polarity::Ascending || down.polarity() != Polarity::Descending)
    throw std::invalid_argument("henriques_graph expects an ascending and a descending forest");
  const auto uh = up.vertex_heights(), dh = down.vertex_heights();
  for (const Scalar& h : uh)
    if (std::binary_search(dh.begin(), dh.end(), h))
      throw std::domain_error("degenerate configuration: ascending and descending vertices at height " + to_string(h));

  HenriquesGraph g;
  const int ue = static_cast<int>(up.base().edges().size());
  const int de = static_cast<int>(down.base().edges().size());
  std::map<std::pair<int, int>, int> strand_of;
  for (int a = 0; a < ue; ++a) {
    const auto [alo, ahi] = up.edge_interval(a);
    for (int b = 0; b < de; ++b) {
      const auto [blo, bhi] = down.edge_interval(b);
      Height lo = std::max(alo, blo), hi = std::min(ahi, bhi);
      if (lo < hi) {
        strand_of[{a, b}] = static_cast<int>(g.strands.size());
        g.strands.push_back({lo, hi, a, b});
      }
    }
  }

  auto add_nodes = [&](const HeightedForest& owner, const HeightedForest& other, Polarity side) {
    const int other_edges = static_cast<int>(other.base().edges().size());
    for (int v : owner.base().vertices()) {
      const Height h = owner.height(v);
      std::vector<int> incident = owner.base().in_edges(v);
      incident.push_back(owner.base().out_edge(v));
      for (int b = 0; b < other_edges; ++b) {
        const auto [lo, hi] = other.edge_interval(b);
        if (!(lo < h && h < hi)) continue;
        GluingNode node{h.value, side, v, b, {}};
        for (int a : incident) {
          auto key = side == Polarity::Ascending ? std::pair{a, b} : std::pair{b, a};
          if (auto it = strand_of.find(key); it != strand_of.end()) node.strands.push_back(it->second);
        }
        std::sort(node.strands.begin(), node.strands.end());
        g.nodes.push_back(std::move(node));
      }
    }
  };
  add_nodes(up, down, Polarity::Ascending);
  add_nodes(down, up, Polarity::Descending);
  std::stable_sort(g.nodes.begin(), g.nodes.end(),
                   [](const GluingNode& x, const GluingNode& y) { return x.height < y.height; });

  std::merge(uh.begin(), uh.end(), dh.begin(), dh.end(), std::back_inserter(g.node_heights));
  g.node_heights.erase(std::unique(g.node_heights.begin(), g.node_heights.end()), g.node_heights.end());
  return g;
}

int strands_at(const HenriquesGraph& g, const Scalar& h) {
  const Height x = Height::finite(h);
  int count = 0;
  for (const Strand& s : g.strands)
    if (s.low < x && x < s.high) ++count;
  return count;
}

std::vector<Scalar> GraftingLengths::heights() const {
  if (n < 0) throw std::invalid_argument("negative grafting count");
  if (n == 0) {
    if (!lengths.empty()) throw std::invalid_argument("grafting lengths given with n = 0");
    return {};
  }
  if (static_cast<int>(lengths.size()) != n - 1)
    throw std::invalid_argument("expected " + std::to_string(n - 1) + " grafting lengths");
  std::vector<Scalar> out{base};
  for (const Scalar& l : lengths) {
    if (l < 0) throw std::invalid_argument("negative grafting length");
    out.push_back(out.back() + l);
  }
  return out;
}

LeveledGraph cut_at_levels(const HenriquesGraph& g, const GraftingLengths& lengths) {
  const std::vector<Scalar> cuts = lengths.heights();
  for (const Scalar& c : cuts)
    if (std::binary_search(g.node_heights.begin(), g.node_heights.end(), c))
      throw std::domain_error("degenerate configuration: grafting height " + to_string(c) + " meets a vertex");

  LeveledGraph out;
  out.nodes = g.nodes;
  out.levels = static_cast<int>(cuts.size()) + 1;
  for (const Strand& s : g.strands) {
    int level = 0;
    for (const Scalar& c : cuts)
      if (Height::finite(c) < s.low) ++level;
    Height start = s.low;
    for (const Scalar& c : cuts) {
      const Height h = Height::finite(c);
      if (!(s.low < h && h < s.high)) continue;
      out.strands.push_back({{start, h, s.up_edge, s.down_edge}, level++});
      start = h;
    }
    out.strands.push_back({{start, s.high, s.up_edge, s.down_edge}, level});
  }
  return out;
}

}  // namespace graftlab
