#include "graftlab/cellmap.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <numeric>
#include <random>
#include <set>

namespace graftlab {

namespace {

constexpr int kMul = -1;
int map_token(int map) { return -(2 + map); }
int map_of_token(int token) { return -token - 2; }

struct Node {
  enum Kind { Var, Mul, Map } kind;
  int value;  // variable index, semigroup id or map id
  std::vector<Node> kids;
};

Node parse(const Expr& e, std::size_t& pos) {
  if (pos >= e.size()) throw std::invalid_argument("truncated expression");
  const int t = e[pos++];
  if (t >= 0) return {Node::Var, t, {}};
  if (t == kMul) {
    if (pos + 1 >= e.size()) throw std::invalid_argument("truncated product");
    Node n{Node::Mul, e[pos], {}};
    const int arity = e[pos + 1];
    pos += 2;
    if (arity < 1) throw std::invalid_argument("product of arity < 1");
    for (int i = 0; i < arity; ++i) n.kids.push_back(parse(e, pos));
    return n;
  }
  Node n{Node::Map, map_of_token(t), {}};
  n.kids.push_back(parse(e, pos));
  return n;
}

Node parse(const Expr& e) {
  std::size_t pos = 0;
  Node n = parse(e, pos);
  if (pos != e.size()) throw std::invalid_argument("trailing tokens in expression");
  return n;
}

void emit(const Node& n, Expr& out) {
  switch (n.kind) {
    case Node::Var: out.push_back(n.value); return;
    case Node::Mul:
      out.push_back(kMul);
      out.push_back(n.value);
      out.push_back(static_cast<int>(n.kids.size()));
      for (const Node& k : n.kids) emit(k, out);
      return;
    case Node::Map:
      out.push_back(map_token(n.value));
      emit(n.kids.front(), out);
      return;
  }
}

Node normalize_node(Node n);

Node normalize_map(int f, Node arg) {
  const SemigroupMap& m = semigroup_map(f);
  if (m.identity) return arg;
  if (arg.kind == Node::Map) return normalize_map(compose_maps(f, arg.value), std::move(arg.kids.front()));
  if (arg.kind == Node::Mul && m.homomorphism) {
    Node product{Node::Mul, m.to, {}};
    for (Node& k : arg.kids) product.kids.push_back(normalize_map(f, std::move(k)));
    return normalize_node(std::move(product));
  }
  return {Node::Map, f, {std::move(arg)}};
}

Node normalize_node(Node n) {
  switch (n.kind) {
    case Node::Var: return n;
    case Node::Map: return normalize_map(n.value, normalize_node(std::move(n.kids.front())));
    case Node::Mul: {
      const bool flatten = semigroup(n.value).associative();
      std::vector<Node> kids;
      for (Node& k : n.kids) {
        Node c = normalize_node(std::move(k));
        if (flatten && c.kind == Node::Mul && c.value == n.value)
          for (Node& g : c.kids) kids.push_back(std::move(g));
        else
          kids.push_back(std::move(c));
      }
      if (kids.size() == 1) return std::move(kids.front());
      n.kids = std::move(kids);
      return n;
    }
  }
  return n;
}

int evaluate_node(const Node& n, std::span<const int> inputs) {
  switch (n.kind) {
    case Node::Var: return inputs[static_cast<std::size_t>(n.value)];
    case Node::Map: return semigroup_map(n.value).table[static_cast<std::size_t>(evaluate_node(n.kids.front(), inputs))];
    case Node::Mul: {
      const FiniteSemigroup& s = semigroup(n.value);
      int acc = evaluate_node(n.kids.front(), inputs);
      for (std::size_t i = 1; i < n.kids.size(); ++i) acc = s.mul(acc, evaluate_node(n.kids[i], inputs));
      return acc;
    }
  }
  return 0;
}

Node substitute(const Node& n, const std::vector<Node>& values) {
  if (n.kind == Node::Var) return values.at(static_cast<std::size_t>(n.value));
  Node out{n.kind, n.value, {}};
  for (const Node& k : n.kids) out.kids.push_back(substitute(k, values));
  return out;
}

Node shift_vars(const Node& n, int offset) {
  if (n.kind == Node::Var) return {Node::Var, n.value + offset, {}};
  Node out{n.kind, n.value, {}};
  for (const Node& k : n.kids) out.kids.push_back(shift_vars(k, offset));
  return out;
}

Expr to_expr(const Node& n) {
  Expr out;
  emit(n, out);
  return out;
}

void require_semigroup_space(const BoxSpace& s) {
  for (const ModuleRef& m : s.cells())
    if (m->semigroup_id() < 0) throw std::invalid_argument("symbolic maps need semigroup modules in every cell, got " + s.describe());
}

}  // namespace

namespace expr {

Expr var(int i) {
  if (i < 0) throw std::invalid_argument("negative variable index");
  return {i};
}

Expr mul(int semigroup_id, std::span<const Expr> args) {
  Expr out{kMul, semigroup_id, static_cast<int>(args.size())};
  for (const Expr& a : args) out.insert(out.end(), a.begin(), a.end());
  return out;
}

Expr apply(int map, const Expr& e) {
  Expr out{map_token(map)};
  out.insert(out.end(), e.begin(), e.end());
  return out;
}

Expr normalize(const Expr& e) { return to_expr(normalize_node(parse(e))); }

int evaluate(const Expr& e, std::span<const int> inputs) { return evaluate_node(parse(e), inputs); }

std::vector<int> variables(const Expr& e) {
  std::set<int> vars;
  std::size_t pos = 0;
  while (pos < e.size()) {
    const int t = e[pos];
    if (t >= 0) {
      vars.insert(t);
      ++pos;
    } else if (t == kMul) {
      pos += 3;
    } else {
      ++pos;
    }
  }
  return {vars.begin(), vars.end()};
}

std::string to_string(const Expr& e, std::span<const std::string> names) {
  std::function<std::string(const Node&)> show = [&](const Node& n) -> std::string {
    switch (n.kind) {
      case Node::Var:
        return static_cast<std::size_t>(n.value) < names.size() ? names[static_cast<std::size_t>(n.value)]
                                                                : "x" + std::to_string(n.value);
      case Node::Map: return "f" + std::to_string(n.value) + "(" + show(n.kids.front()) + ")";
      case Node::Mul: {
        std::string s = "(";
        for (std::size_t i = 0; i < n.kids.size(); ++i) s += (i ? "*" : "") + show(n.kids[i]);
        return s + ")";
      }
    }
    return "?";
  };
  return show(parse(e));
}

}  // namespace expr

CellMap CellMap::zero(const Ring& ring, BoxSpace source, BoxSpace target, int degree) {
  require_semigroup_space(source);
  require_semigroup_space(target);
  return CellMap(ring, std::move(source), std::move(target), degree);
}

CellMap CellMap::identity(const Ring& ring, const BoxSpace& space) {
  CellMap id = zero(ring, space, space, 0);
  CellTerm t;
  for (int i = 0; i < space.cell_count(); ++i) t.cells.push_back(expr::var(i));
  id.terms_.emplace(std::move(t), Scalar(1));
  return id;
}

CellMap CellMap::from_terms(const Ring& ring, BoxSpace source, BoxSpace target, int degree,
                            std::vector<std::pair<CellTerm, Scalar>> terms) {
  CellMap f = zero(ring, std::move(source), std::move(target), degree);
  for (auto& [t, c] : terms) {
    if (static_cast<int>(t.cells.size()) != f.target_.cell_count())
      throw std::invalid_argument("term has " + std::to_string(t.cells.size()) + " cells, target has " +
                                  std::to_string(f.target_.cell_count()));
    for (std::size_t j = 0; j < t.cells.size(); ++j) {
      for (int v : expr::variables(t.cells[j]))
        if (v >= f.source_.cell_count()) throw std::invalid_argument("term refers to a missing input cell");
      t.cells[j] = expr::normalize(t.cells[j]);
    }
    f.add_term(std::move(t), std::move(c));
  }
  if (!f.terms_.empty() && degree != 0) throw std::invalid_argument("nonzero symbolic map of nonzero degree");
  return f;
}

void CellMap::add_term(CellTerm t, Scalar c) {
  auto [it, inserted] = terms_.try_emplace(std::move(t), Scalar(0));
  it->second = ring_.reduce(it->second + c);
  if (it->second == 0) terms_.erase(it);
}

namespace {
void require_parallel(const CellMap& a, const CellMap& b, const char* what) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()) || !(a.ring() == b.ring()))
    throw std::invalid_argument(std::string(what) + ": maps of different shape or ring");
}
}  // namespace

CellMap CellMap::operator+(const CellMap& o) const {
  require_parallel(*this, o, "sum");
  CellMap r = *this;
  if (r.terms_.empty()) r.degree_ = o.degree_;
  for (const auto& [t, c] : o.terms_) r.add_term(t, c);
  return r;
}

CellMap CellMap::operator-() const { return scaled(Scalar(-1)); }
CellMap CellMap::operator-(const CellMap& o) const { return *this + (-o); }

CellMap CellMap::scaled(const Scalar& c) const {
  CellMap r(ring_, source_, target_, degree_);
  for (const auto& [t, v] : terms_) r.add_term(t, v * c);
  return r;
}

std::string describe(const CellMap& f, std::size_t max_terms) {
  std::string out = f.source().describe() + " -> " + f.target().describe() + ", " + std::to_string(f.terms().size()) + " terms";
  std::size_t shown = 0;
  for (const auto& [t, c] : f.terms()) {
    if (shown++ == max_terms) {
      out += "; ...";
      break;
    }
    out += "; " + to_string(c) + " [";
    for (std::size_t j = 0; j < t.cells.size(); ++j) out += (j ? " " : "") + expr::to_string(t.cells[j]);
    out += "]";
  }
  return out;
}

CellMap compose(const CellMap& g, const CellMap& f) {
  if (!(f.target() == g.source()))
    throw std::invalid_argument("compose: " + f.target().describe() + " does not match " + g.source().describe());
  std::vector<std::pair<CellTerm, Scalar>> terms;
  for (const auto& [tf, cf] : f.terms()) {
    std::vector<Node> values;
    for (const Expr& e : tf.cells) values.push_back(parse(e));
    for (const auto& [tg, cg] : g.terms()) {
      CellTerm t;
      for (const Expr& e : tg.cells) t.cells.push_back(to_expr(substitute(parse(e), values)));
      terms.emplace_back(std::move(t), cf * cg);
    }
  }
  return CellMap::from_terms(f.ring(), f.source(), g.target(), f.degree() + g.degree(), std::move(terms));
}

CellMap tensor(std::span<const CellMap> fs) {
  if (fs.empty()) throw std::invalid_argument("tensor of no maps");
  std::vector<BoxSpace> srcs, tgts;
  int degree = 0;
  for (const CellMap& f : fs) {
    srcs.push_back(f.source());
    tgts.push_back(f.target());
    degree += f.degree();
  }
  std::vector<std::pair<CellTerm, Scalar>> acc{{CellTerm{}, Scalar(1)}};
  int offset = 0;
  for (const CellMap& f : fs) {
    std::vector<std::pair<CellTerm, Scalar>> next;
    for (const auto& [t, c] : acc)
      for (const auto& [u, d] : f.terms()) {
        CellTerm joined = t;
        for (const Expr& e : u.cells) joined.cells.push_back(to_expr(shift_vars(parse(e), offset)));
        next.emplace_back(std::move(joined), c * d);
      }
    acc = std::move(next);
    offset += f.source().cell_count();
  }
  return CellMap::from_terms(fs.front().ring(), concat(srcs), concat(tgts), degree, std::move(acc));
}

CellMap tensor_rows(std::span<const CellMap> fs) {
  for (const CellMap& f : fs)
    if (f.source().cols() != fs.front().source().cols() || f.target().cols() != fs.front().target().cols())
      throw std::invalid_argument("tensor_rows: column counts differ");
  return tensor(fs);
}

namespace {
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

CellMap tensor_cols(std::span<const CellMap> fs) {
  if (fs.empty()) throw std::invalid_argument("tensor of no maps");
  std::vector<int> in_widths, out_widths;
  for (const CellMap& f : fs) {
    if (f.source().rows() != fs.front().source().rows() || f.target().rows() != fs.front().target().rows())
      throw std::invalid_argument("tensor_cols: row counts differ");
    in_widths.push_back(f.source().cols());
    out_widths.push_back(f.target().cols());
  }
  return permuted(tensor(fs), block_to_grid(fs.front().source().rows(), in_widths),
                  block_to_grid(fs.front().target().rows(), out_widths));
}

CellMap permuted(const CellMap& f, const CellPermutation& in, const CellPermutation& out) {
  const BoxSpace new_src = permute_space(f.source(), in);
  const BoxSpace new_tgt = permute_space(f.target(), out);
  // Old input cell in.perm[j] is new input cell j.
  std::vector<Node> renamed(in.perm.size());
  for (std::size_t j = 0; j < in.perm.size(); ++j)
    renamed[static_cast<std::size_t>(in.perm[j])] = Node{Node::Var, static_cast<int>(j), {}};
  std::vector<std::pair<CellTerm, Scalar>> terms;
  for (const auto& [t, c] : f.terms()) {
    CellTerm u;
    for (int j : out.perm) u.cells.push_back(to_expr(substitute(parse(t.cells[static_cast<std::size_t>(j)]), renamed)));
    terms.emplace_back(std::move(u), c);
  }
  return CellMap::from_terms(f.ring(), new_src, new_tgt, f.degree(), std::move(terms));
}

CellMap grid_differential(const CellMap& d, int rows, int cols) {
  if (d.source().cell_count() != 1 || !(d.source() == d.target()))
    throw std::invalid_argument("grid_differential expects an endomorphism of a single cell");
  if (!d.has_no_terms()) throw std::invalid_argument("a degree -1 map between degree 0 modules must vanish");
  const BoxSpace space = BoxSpace::grid(d.source().cells().front(), rows, cols);
  return CellMap::zero(d.ring(), space, space, d.degree());
}

namespace {

// Exhaustive comparison of two expressions on the variables they mention.
bool equal_as_functions(const Node& a, const Node& b, const std::vector<int>& vars, const std::vector<int>& domain,
                        std::size_t input_count) {
  std::uint64_t total = 1;
  for (int v : vars) {
    total *= static_cast<std::uint64_t>(domain[static_cast<std::size_t>(v)]);
    if (total > (std::uint64_t{1} << 20)) return false;
  }
  std::vector<int> inputs(input_count, 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    std::uint64_t rest = i;
    for (int v : vars) {
      inputs[static_cast<std::size_t>(v)] = static_cast<int>(rest % static_cast<std::uint64_t>(domain[static_cast<std::size_t>(v)]));
      rest /= static_cast<std::uint64_t>(domain[static_cast<std::size_t>(v)]);
    }
    if (evaluate_node(a, inputs) != evaluate_node(b, inputs)) return false;
  }
  return true;
}

std::string show_input(const BoxSpace& s, const std::vector<int>& digits) {
  std::string out;
  for (std::size_t c = 0; c < digits.size(); ++c) {
    if (c) out += (s.cols() > 0 && c % static_cast<std::size_t>(s.cols()) == 0) ? " | " : " ";
    out += s.cell(static_cast<int>(c)).generators()[static_cast<std::size_t>(digits[c])].name;
  }
  return out;
}

}  // namespace

ZeroVerdict decide_zero(const CellMap& f, std::uint64_t seed) {
  if (f.has_no_terms()) return {ZeroStatus::Zero, ""};
  const std::size_t n_in = static_cast<std::size_t>(f.source().cell_count());
  std::vector<int> domain;
  for (const ModuleRef& m : f.source().cells()) domain.push_back(m->rank());

  struct Parsed {
    std::vector<Node> cells;
    std::vector<std::vector<int>> vars;
    Scalar coeff;
  };
  std::vector<Parsed> terms;
  for (const auto& [t, c] : f.terms()) {
    Parsed p{{}, {}, c};
    for (const Expr& e : t.cells) {
      p.cells.push_back(parse(e));
      p.vars.push_back(expr::variables(e));
    }
    terms.push_back(std::move(p));
  }

  // Union-find over terms that agree cell by cell as functions.
  std::vector<std::size_t> parent(terms.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < terms.size(); ++a)
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      if (find(a) == find(b)) continue;
      bool same = true;
      for (std::size_t j = 0; j < terms[a].cells.size() && same; ++j) {
        std::vector<int> vars;
        std::set_union(terms[a].vars[j].begin(), terms[a].vars[j].end(), terms[b].vars[j].begin(), terms[b].vars[j].end(),
                       std::back_inserter(vars));
        same = equal_as_functions(terms[a].cells[j], terms[b].cells[j], vars, domain, n_in);
      }
      if (same) parent[find(b)] = find(a);
    }
  std::map<std::size_t, Scalar> class_sum;
  for (std::size_t a = 0; a < terms.size(); ++a) class_sum[find(a)] += terms[a].coeff;
  std::vector<std::size_t> surviving;
  for (auto& [root, sum] : class_sum)
    if (f.ring().reduce(sum) != 0) surviving.push_back(root);
  if (surviving.empty()) return {ZeroStatus::Zero, ""};

  // Look for an input where the surviving classes leave a nonzero output.
  auto value_at = [&](const std::vector<int>& inputs) {
    std::map<std::vector<int>, Scalar> out;
    for (const Parsed& p : terms) {
      std::vector<int> y;
      for (const Node& n : p.cells) y.push_back(evaluate_node(n, inputs));
      out[y] += p.coeff;
    }
    for (auto& [y, c] : out)
      if (f.ring().reduce(c) != 0) return std::optional<std::pair<std::vector<int>, Scalar>>({y, f.ring().reduce(c)});
    return std::optional<std::pair<std::vector<int>, Scalar>>();
  };
  auto witness = [&](const std::vector<int>& inputs, const std::pair<std::vector<int>, Scalar>& hit) {
    return ZeroVerdict{ZeroStatus::Nonzero, "[" + show_input(f.source(), inputs) + "] -> " + to_string(hit.second) + " [" +
                                                show_input(f.target(), hit.first) + "]"};
  };
  const std::uint64_t basis = f.source().basis_size();
  if (basis <= (std::uint64_t{1} << 16)) {
    for (std::uint64_t x = 0; x < basis; ++x) {
      auto inputs = f.source().decode(x);
      if (auto hit = value_at(inputs)) return witness(inputs, *hit);
    }
    return {ZeroStatus::Zero, ""};
  }
  std::mt19937_64 rng(seed);
  for (int sample = 0; sample < 4096; ++sample) {
    std::vector<int> inputs(n_in);
    for (std::size_t i = 0; i < n_in; ++i) inputs[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(domain[i]));
    if (auto hit = value_at(inputs)) return witness(inputs, *hit);
  }
  return {ZeroStatus::Undecided, "non-cancelling term classes: " + std::to_string(surviving.size())};
}

ZeroVerdict decide_zero(const BoxMap& f, std::uint64_t) {
  if (f.is_zero()) return {ZeroStatus::Zero, ""};
  return {ZeroStatus::Nonzero, describe(f, 3)};
}

std::map<std::vector<int>, Scalar> apply(const CellMap& f, std::span<const int> input_digits) {
  if (static_cast<int>(input_digits.size()) != f.source().cell_count()) throw std::invalid_argument("apply: wrong number of digits");
  std::map<std::vector<int>, Scalar> out;
  for (const auto& [t, c] : f.terms()) {
    std::vector<int> y;
    for (const Expr& e : t.cells) y.push_back(expr::evaluate(e, input_digits));
    auto& slot = out[y];
    slot = f.ring().reduce(slot + c);
    if (slot == 0) out.erase(y);
  }
  return out;
}

BoxMap to_box(const CellMap& f) {
  f.source().require_budget("to_box");
  std::vector<BoxEntry> entries;
  for (const auto& [t, c] : f.terms()) {
    std::vector<Node> parsed;
    for (const Expr& e : t.cells) parsed.push_back(parse(e));
    for (std::uint64_t x = 0; x < f.source().basis_size(); ++x) {
      auto inputs = f.source().decode(x);
      std::vector<int> y;
      for (const Node& n : parsed) y.push_back(evaluate_node(n, inputs));
      entries.push_back({x, f.target().encode(y), c});
    }
  }
  return BoxMap::from_entries(f.ring(), f.source(), f.target(), f.degree(), std::move(entries));
}

}  // namespace graftlab
