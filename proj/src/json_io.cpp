#include "graftlab/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace graftlab {

namespace {

[[noreturn]] void fail(const std::string& what) { throw JsonInputError(what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where + ": missing \"" + key + "\"");
  return *it;
}

int int_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) fail(where + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

int int_or(const Json& j, const char* key, int fallback, const std::string& where) {
  return j.contains(key) ? int_field(j, key, where) : fallback;
}

std::string string_of(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(where + ": expected a string");
  return v.get<std::string>();
}

MultiIndex index_of_json(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where + ": expected an array of positive integers");
  std::vector<int> parts;
  for (const Json& e : v) {
    if (!e.is_number_integer() || e.get<int>() < 1) fail(where + ": expected an array of positive integers");
    parts.push_back(e.get<int>());
  }
  return MultiIndex(std::move(parts));
}

Json index_to_json(const MultiIndex& k) { return Json(std::vector<int>(k.entries().begin(), k.entries().end())); }

Scalar scalar_of(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Scalar(v.get<long long>());
  if (v.is_string()) {
    try {
      return parse_scalar(v.get<std::string>());
    } catch (const std::exception& e) {
      fail(where + ": bad coefficient \"" + v.get<std::string>() + "\"");
    }
  }
  fail(where + ": coefficient must be an integer or a string such as \"-3/2\"");
}

Json scalar_to_json(const Scalar& x) {
  if (denominator(x) == 1) {
    const BigInt n = numerator(x);
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
      return Json(n.convert_to<long long>());
  }
  return Json(to_string(x));
}

std::uint64_t basis_of(const Json& v, const BoxSpace& space, const std::string& where) {
  if (v.is_number_unsigned() || v.is_number_integer()) {
    if (v.is_number_integer() && v.get<long long>() < 0) fail(where + ": negative basis index");
    const auto i = v.get<std::uint64_t>();
    if (i >= space.basis_size()) fail(where + ": basis index out of range");
    return i;
  }
  if (!v.is_array() || static_cast<int>(v.size()) != space.cell_count())
    fail(where + ": basis element must list " + std::to_string(space.cell_count()) + " generator names");
  std::vector<int> digits;
  for (int c = 0; c < space.cell_count(); ++c) {
    const std::string name = string_of(v[static_cast<std::size_t>(c)], where);
    try {
      digits.push_back(space.cell(c).index_of(name));
    } catch (const std::exception&) {
      fail(where + ": \"" + name + "\" is not a generator of " + space.cell(c).name());
    }
  }
  return space.encode(digits);
}

Json basis_to_json(const BoxSpace& space, std::uint64_t index) {
  Json out = Json::array();
  const std::vector<int> digits = space.decode(index);
  for (int c = 0; c < space.cell_count(); ++c)
    out.push_back(space.cell(c).generators()[static_cast<std::size_t>(digits[static_cast<std::size_t>(c)])].name);
  return out;
}

Category category_of(const Json& doc) {
  const std::string kind = doc.contains("category") ? string_of(doc["category"], "category") : "bi";
  const int width = int_or(doc, "width", 1, "document");
  if (width < 1) fail("width must be positive");
  if (kind == "bi") return Category::bi();
  if (kind == "ascending") return Category::ascending(width);
  if (kind == "descending") return Category::descending(width);
  if (kind == "bimodule") return Category::bimodule();
  fail("unknown category \"" + kind + "\"");
}

const char* category_key(const Category& c) {
  switch (c.kind) {
    case CategoryKind::Bi: return "bi";
    case CategoryKind::Ascending: return "ascending";
    case CategoryKind::Descending: return "descending";
    case CategoryKind::Bimodule: return "bimodule";
  }
  return "bi";
}

Json object_modules_to_json(const Object& obj) {
  Json out = Json::object();
  if (obj.size() == 1) {
    out["module"] = module_to_json(obj.front());
  } else {
    out["modules"] = Json::array();
    for (const ModuleRef& m : obj) out["modules"].push_back(module_to_json(m));
  }
  return out;
}

std::vector<std::vector<int>> table_of(const Json& v, std::size_t rows, std::size_t cols, int values,
                                       const std::string& where) {
  if (!v.is_array() || v.size() != rows) fail(where + ": expected " + std::to_string(rows) + " rows");
  std::vector<std::vector<int>> t;
  for (const Json& row : v) {
    if (!row.is_array() || row.size() != cols) fail(where + ": expected rows of length " + std::to_string(cols));
    std::vector<int> r;
    for (const Json& e : row) {
      if (!e.is_number_integer() || e.get<int>() < 0 || e.get<int>() >= values) fail(where + ": entry out of range");
      r.push_back(e.get<int>());
    }
    t.push_back(std::move(r));
  }
  return t;
}

std::vector<std::string> names_of(const Json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where + ": expected a nonempty array of names");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const Json& e : v) {
    out.push_back(string_of(e, where));
    if (!seen.insert(out.back()).second) fail(where + ": duplicate name \"" + out.back() + "\"");
  }
  return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(path + ": " + e.what());
  }
}

ModuleRef module_from_json(const Json& j) {
  const std::string name = string_of(field(j, "name", "module"), "module name");
  const Json& gens = field(j, "generators", "module " + name);
  if (!gens.is_array() || gens.empty()) fail("module " + name + ": generators must be a nonempty array");
  std::vector<Generator> out;
  std::set<std::string> seen;
  for (const Json& g : gens) {
    Generator gen{string_of(field(g, "name", "generator"), "generator name"), int_or(g, "degree", 0, "generator")};
    if (!seen.insert(gen.name).second) fail("module " + name + ": duplicate generator \"" + gen.name + "\"");
    out.push_back(std::move(gen));
  }
  return make_module(name, std::move(out));
}

Json module_to_json(const ModuleRef& m) {
  Json gens = Json::array();
  for (const Generator& g : m->generators()) gens.push_back({{"name", g.name}, {"degree", g.degree}});
  return {{"name", m->name()}, {"generators", gens}};
}

DocumentHeader header_from_json(const Json& doc) {
  if (!doc.is_object()) fail("document must be a JSON object");
  DocumentHeader h;
  try {
    h.ring = Ring::parse(string_of(field(doc, "ring", "document"), "ring"));
  } catch (const JsonInputError&) {
    throw;
  } catch (const std::exception& e) {
    fail(std::string("ring: ") + e.what());
  }
  h.category = category_of(doc);
  h.bounds.max_leaves = int_or(doc, "maxLeaves", h.bounds.max_leaves, "document");
  h.bounds.max_cells = int_or(doc, "maxCells", h.bounds.max_cells, "document");
  if (h.bounds.max_leaves < 1 || h.bounds.max_cells < 1) fail("maxLeaves and maxCells must be positive");
  return h;
}

void header_to_json(Json& doc, const Ring& ring, const Category& c, const IndexBounds& b) {
  doc["ring"] = ring.name();
  doc["category"] = category_key(c);
  if (c.kind == CategoryKind::Ascending || c.kind == CategoryKind::Descending) doc["width"] = c.width;
  doc["maxLeaves"] = b.max_leaves;
  doc["maxCells"] = b.max_cells;
}

Object object_modules_from_json(const Json& j, const Category& c) {
  if (c.kind == CategoryKind::Bimodule) {
    const Json& ms = field(j, "modules", "bimodule endpoint");
    if (!ms.is_array() || ms.size() != 3) fail("bimodule endpoint: \"modules\" must list left, middle and right");
    return {module_from_json(ms[0]), module_from_json(ms[1]), module_from_json(ms[2])};
  }
  return {module_from_json(field(j, "module", "endpoint"))};
}

Family<BoxMap> components_from_json(const Json& arr, const DocumentHeader& h, Object source, Object target,
                                    int degree) {
  Family<BoxMap> f = zero_family<BoxMap>(h.category, h.ring, std::move(source), std::move(target), degree, h.bounds);
  if (!arr.is_array()) fail("components must be an array");
  const auto admitted = component_indices(h.category, h.bounds);
  const std::set<ComponentIndex> allowed(admitted.begin(), admitted.end());
  const bool bimodule = h.category.kind == CategoryKind::Bimodule;
  for (const Json& comp : arr) {
    ComponentIndex idx{index_of_json(field(comp, "k", "component"), "k"), index_of_json(field(comp, "l", "component"), "l")};
    if (bimodule) {
      idx.eps = int_field(comp, "eps", "bimodule component");
      idx.pos = int_field(comp, "pos", "bimodule component");
    }
    const std::string where = "component " + to_string(idx);
    if (!allowed.count(idx)) fail(where + ": not an admitted index for this category and bounds");
    if (f.find(idx)) fail(where + ": listed twice");
    const BoxSpace src = component_source(f.category, f.source, idx);
    const BoxSpace tgt = component_target(f.category, f.target, idx);
    std::vector<BoxEntry> entries;
    for (const Json& e : field(comp, "entries", where)) {
      BoxEntry be{basis_of(field(e, "in", where), src, where + " in"), basis_of(field(e, "out", where), tgt, where + " out"),
                  scalar_of(field(e, "coeff", where), where)};
      if (tgt.degree(be.out) - src.degree(be.in) != f.component_degree(idx))
        fail(where + ": entry has degree " + std::to_string(tgt.degree(be.out) - src.degree(be.in)) + ", expected " +
             std::to_string(f.component_degree(idx)));
      entries.push_back(std::move(be));
    }
    f.set(idx, BoxMap::from_entries(h.ring, src, tgt, f.component_degree(idx), std::move(entries)));
  }
  return f;
}

Json components_to_json(const Family<BoxMap>& f) {
  Json out = Json::array();
  for (const auto& [idx, m] : f.components) {
    if (m.is_zero()) continue;
    Json c{{"k", index_to_json(idx.k)}, {"l", index_to_json(idx.l)}};
    if (idx.eps >= 0) {
      c["eps"] = idx.eps;
      c["pos"] = idx.pos;
    }
    Json entries = Json::array();
    for (const BoxEntry& e : m.entries())
      entries.push_back(
          {{"in", basis_to_json(m.source(), e.in)}, {"out", basis_to_json(m.target(), e.out)}, {"coeff", scalar_to_json(e.coeff)}});
    c["entries"] = std::move(entries);
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

Family<BoxMap> endpoint_structure(const Json& endpoint, const DocumentHeader& h) {
  const Object obj = object_modules_from_json(endpoint, h.category);
  return components_from_json(field(endpoint, "alphaComponents", "object"), h, obj, obj, -1);
}

Json endpoint_to_json(const Family<BoxMap>& alpha) {
  Json out = object_modules_to_json(alpha.source);
  out["alphaComponents"] = components_to_json(alpha);
  return out;
}

}  // namespace

Family<BoxMap> object_from_json(const Json& doc) { return endpoint_structure(doc, header_from_json(doc)); }

Json object_to_json(const Family<BoxMap>& alpha) {
  Json doc = endpoint_to_json(alpha);
  header_to_json(doc, alpha.ring, alpha.category, alpha.bounds);
  return doc;
}

FamilyDocument family_from_json(const Json& doc) {
  const DocumentHeader h = header_from_json(doc);
  const Json& src = field(doc, "source", "family");
  const Json& tgt = field(doc, "target", "family");
  FamilyDocument out{components_from_json(field(doc, "components", "family"), h, object_modules_from_json(src, h.category),
                                          object_modules_from_json(tgt, h.category), int_or(doc, "degree", 0, "family")),
                     std::nullopt, std::nullopt};
  if (src.contains("alphaComponents")) out.source_structure = endpoint_structure(src, h);
  if (tgt.contains("alphaComponents")) out.target_structure = endpoint_structure(tgt, h);
  return out;
}

Json family_to_json(const Family<BoxMap>& f) {
  Json doc = Json::object();
  header_to_json(doc, f.ring, f.category, f.bounds);
  doc["source"] = object_modules_to_json(f.source);
  doc["target"] = object_modules_to_json(f.target);
  doc["degree"] = f.degree;
  doc["components"] = components_to_json(f);
  return doc;
}

Simplex<BoxMap> simplex_from_json(const Json& doc) {
  const DocumentHeader h = header_from_json(doc);
  const Json& objs = field(doc, "objects", "simplex");
  if (!objs.is_array() || objs.size() < 2) fail("simplex: need at least two objects");
  Simplex<BoxMap> s;
  for (const Json& o : objs) s.objects.push_back(endpoint_structure(o, h));
  const int n = s.dimension();
  if (doc.contains("maps")) {
    for (const Json& m : doc["maps"]) {
      const Json& sig = field(m, "sigma", "simplex map");
      std::vector<int> sigma;
      if (sig.is_array())
        for (const Json& v : sig)
          if (v.is_number_integer()) sigma.push_back(v.get<int>());
      const bool ok = sigma.size() >= 2 && sigma.size() == sig.size() && sigma.front() >= 0 && sigma.back() <= n &&
                      std::is_sorted(sigma.begin(), sigma.end()) &&
                      std::adjacent_find(sigma.begin(), sigma.end()) == sigma.end();
      if (!ok) fail("simplex: sigma must be a strictly increasing list of at least two vertices in 0.." + std::to_string(n));
      if (s.maps.count(sigma)) fail("simplex: face listed twice");
      const int degree = static_cast<int>(sigma.size()) - 2;
      s.maps.emplace(sigma, components_from_json(field(m, "components", "simplex map"), h, s.objects[static_cast<std::size_t>(sigma.back())].source,
                                                 s.objects[static_cast<std::size_t>(sigma.front())].source, degree));
    }
  }
  return s;
}

Json simplex_to_json(const Simplex<BoxMap>& s) {
  Json doc = Json::object();
  if (s.objects.empty()) return doc;
  const Family<BoxMap>& a = s.objects.front();
  header_to_json(doc, a.ring, a.category, a.bounds);
  doc["objects"] = Json::array();
  for (const auto& o : s.objects) doc["objects"].push_back(endpoint_to_json(o));
  doc["maps"] = Json::array();
  for (const auto& [sigma, f] : s.maps) doc["maps"].push_back({{"sigma", sigma}, {"components", components_to_json(f)}});
  return doc;
}

FiniteSemigroup semigroup_from_json(const Json& j) {
  const std::vector<std::string> elements = names_of(field(j, "elements", "semigroup"), "semigroup elements");
  const auto n = elements.size();
  auto table = table_of(field(j, "table", "semigroup"), n, n, static_cast<int>(n), "semigroup table");
  const std::string name = j.contains("name") ? string_of(j["name"], "semigroup name") : "M";
  return FiniteSemigroup::unchecked(name, elements, std::move(table));
}

Json semigroup_to_json(const FiniteSemigroup& s) {
  return {{"name", s.name()}, {"elements", s.elements()}, {"table", s.table()}};
}

ActionTriple triple_from_json(const Json& j) {
  ActionTriple t{semigroup_from_json(field(j, "G", "triple")), names_of(field(j, "X", "triple"), "triple X"),
                 semigroup_from_json(field(j, "H", "triple")), {}, {}};
  const auto x = t.X.size();
  t.left = table_of(field(j, "left", "triple"), static_cast<std::size_t>(t.G.size()), x, static_cast<int>(x), "triple left");
  t.right = table_of(field(j, "right", "triple"), x, static_cast<std::size_t>(t.H.size()), static_cast<int>(x), "triple right");
  return t;
}

Json report_to_json(const Report& r) {
  Json v = Json::array();
  for (const Violation& x : r.violations) v.push_back({{"relation", x.relation}, {"location", x.location}, {"detail", x.detail}});
  return {{"suite", r.suite}, {"status", r.passed() ? "pass" : "fail"}, {"checks", r.checks}, {"violations", v}, {"notes", r.notes}};
}

}  // namespace graftlab
