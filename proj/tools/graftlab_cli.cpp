// graftlab: command-line front end. Exit codes: 0 pass, 1 a relation failed, 2 bad input or usage.
#include "graftlab/acceptance.hpp"
#include "graftlab/json_io.hpp"
#include "graftlab/monoid_morse.hpp"
#include "graftlab/strata.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace graftlab;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kBadInput = 2;

struct Globals {
  bool json = false;
  bool serial = false;
  Execution ex() const { return serial ? Execution::Serial : Execution::Parallel; }
};

MultiIndex index_arg(const std::string& text, const char* flag) {
  try {
    return parse_multi_index(text);
  } catch (const std::exception& e) {
    throw JsonInputError(std::string(flag) + ": " + e.what());
  }
}

void write_json(const Json& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw JsonInputError("cannot write " + path);
  out << doc.dump(2) << "\n";
}

int emit_report(const Report& r, const Globals& g) {
  if (g.json) {
    std::cout << report_to_json(r).dump(2) << "\n";
  } else {
    for (const Violation& v : r.violations) std::cout << v.relation << " " << v.location << " " << v.detail << "\n";
    for (const std::string& n : r.notes) std::cout << "note: " << n << "\n";
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << " (" << r.checks << " checks";
    if (!r.passed()) std::cout << ", " << r.violations.size() << " violations";
    std::cout << ")\n";
  }
  return r.passed() ? kPass : kFail;
}

Report object_report(const Family<BoxMap>& alpha, const Globals& g) {
  Report r;
  switch (alpha.category.kind) {
    case CategoryKind::Bi: r = check_fbialgebra(alpha, g.ex()); break;
    case CategoryKind::Ascending: r = check_falg_object(alpha, g.ex()); break;
    case CategoryKind::Descending: r = check_fcoalg_object(alpha, g.ex()); break;
    case CategoryKind::Bimodule: r = require_zero(compose(alpha, alpha, g.ex()), "alpha-alpha", g.ex()); break;
  }
  r.suite = "check-object";
  return r;
}

Family<BoxMap> boxed(const Family<CellMap>& f, const std::string& what) {
  Family<BoxMap> out = zero_family<BoxMap>(f.category, f.ring, f.source, f.target, f.degree, f.bounds);
  std::size_t skipped = 0;
  for (const auto& [idx, m] : f.components) {
    try {
      out.set(idx, to_box(m));
    } catch (const BasisBudgetExceeded&) {
      ++skipped;
    }
  }
  if (skipped)
    std::cerr << "warning: " << what << ": " << skipped << " components exceed the basis budget and were left out\n";
  return out;
}

// Subcommands. Each returns an exit code.

int run_selftest(const std::string& profile, std::uint64_t seed, std::vector<int> criteria, bool timing,
                 const Globals& g) {
  AcceptanceOptions opt;
  if (profile == "quick") opt.profile = Profile::Quick;
  else if (profile != "full") throw JsonInputError("--profile must be quick or full");
  opt.seed = seed;
  if (criteria.empty())
    for (int id = 1; id <= kCriterionCount; ++id) criteria.push_back(id);
  bool ok = true;
  Json results = Json::array();
  for (int id : criteria) {
    if (id < 1 || id > kCriterionCount) throw JsonInputError("no criterion " + std::to_string(id));
    const CriterionResult r = run_criterion(id, opt);
    ok = ok && r.passed;
    if (g.json) {
      Json j{{"id", r.id}, {"title", r.title}, {"status", r.passed ? "pass" : "fail"}, {"checks", r.checks}, {"detail", r.detail}};
      if (timing) j["seconds"] = r.seconds;
      results.push_back(std::move(j));
    } else {
      std::cout << format_line(r, timing) << std::endl;
    }
  }
  if (g.json)
    std::cout << Json{{"suite", "selftest"}, {"profile", profile}, {"seed", seed}, {"status", ok ? "pass" : "fail"}, {"criteria", results}}.dump(2)
              << "\n";
  else
    std::cout << (ok ? "PASS" : "FAIL") << " selftest (" << profile << ", seed " << seed << ")\n";
  return ok ? kPass : kFail;
}

int run_heartsuit(const std::string& k1_text, const std::string& k0_text, bool oracle, const Globals& g) {
  const MultiIndex upper = index_arg(k1_text, "--k1"), lower = index_arg(k0_text, "--k0");
  if (upper.empty() || lower.empty() || leaves(lower) != trees(upper))
    throw JsonInputError("need |k0| = n(k1) with both indices nonempty");
  const int sign = gluing_sign(upper, lower);
  const bool agree = !oracle || sign == gluing_sign_by_permutation(upper, lower);
  if (g.json) {
    Json j{{"k1", to_string(upper)}, {"k0", to_string(lower)}, {"glued", to_string(glue(upper, lower))}, {"parity", sign}};
    if (oracle) j["oracleAgrees"] = agree;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << sign << "\n";
    if (oracle) std::cout << (agree ? "PASS" : "FAIL") << " permutation oracle\n";
  }
  return agree ? kPass : kFail;
}

StratumType stratum_arg(int n, const std::string& k, const std::string& l, const char* suffix) {
  return {n, index_arg(k, (std::string("--k") + suffix).c_str()), index_arg(l, (std::string("--l") + suffix).c_str())};
}

int run_rho(const StratumType& lower, const StratumType& upper, bool oracle, const Globals& g) {
  if (!is_nonempty(lower) || !is_nonempty(upper)) throw JsonInputError("both factors must be nonempty strata");
  if (leaves(lower.k) != trees(upper.k) || leaves(upper.l) != trees(lower.l))
    throw JsonInputError("need |k0| = n(k1) and |l1| = n(l0)");
  const int sign = gluing_orientation(lower, upper);
  bool agree = true;
  if (oracle) agree = sign == gluing_orientation_by_determinant(lower, upper);
  if (g.json) {
    Json j{{"lower", to_string(lower)}, {"upper", to_string(upper)}, {"glued", to_string(glue(upper, lower))}, {"parity", sign}};
    if (oracle) j["oracleAgrees"] = agree;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << sign << "\n";
    if (oracle) std::cout << (agree ? "PASS" : "FAIL") << " determinant oracle\n";
  }
  return agree ? kPass : kFail;
}

int run_strata(const StratumType& d, const Globals& g) {
  const auto dim = stratum_dim(d);
  if (!dim) {
    if (g.json) std::cout << Json{{"stratum", to_string(d)}, {"empty", true}, {"status", "pass"}}.dump(2) << "\n";
    else std::cout << "EMPTY " << to_string(d) << "\nPASS\n";
    return kPass;
  }
  const auto faces = boundary(d);
  std::optional<DdZeroReport> dd;
  if (*dim >= 2) dd = check_dd_zero(d);
  const bool ok = !dd || dd->pass;
  if (g.json) {
    Json fs = Json::array();
    for (const auto& f : faces) fs.push_back({{"sign", f.sign ? -1 : 1}, {"label", to_string(f.label)}});
    std::cout << Json{{"stratum", to_string(d)}, {"dimension", *dim}, {"boundary", fs}, {"status", ok ? "pass" : "fail"}}.dump(2) << "\n";
  } else {
    for (const auto& f : faces) std::cout << (f.sign ? "- " : "+ ") << to_string(f.label) << "\n";
    if (dd) {
      for (const auto& [label, count] : dd->offending) std::cout << "uncancelled " << to_string(label) << " " << count << "\n";
      std::cout << (ok ? "PASS" : "FAIL") << " d^2 = 0 on " << to_string(d) << " (dimension " << *dim << ")\n";
    } else {
      std::cout << "PASS " << to_string(d) << " (dimension " << *dim << ", d^2 not applicable)\n";
    }
  }
  return ok ? kPass : kFail;
}

int run_ddzero(int max_n, int max_leaves, int max_dim, const Globals& g) {
  const auto domain = dd_zero_domain(max_n, max_leaves, max_dim);
  std::vector<DdZeroReport> reports(domain.size());
  for_each_index(domain.size(), g.ex(), [&](std::size_t i) { reports[i] = check_dd_zero(domain[i]); });
  std::size_t labels = 0, failed = 0;
  Json bad = Json::array();
  for (const auto& r : reports) {
    labels += r.codim2_labels;
    if (r.pass) continue;
    ++failed;
    if (g.json) bad.push_back(to_string(r.stratum));
    else std::cout << "FAIL " << to_string(r.stratum) << " (" << r.offending.size() << " uncancelled labels)\n";
  }
  if (g.json)
    std::cout << Json{{"suite", "ddzero"}, {"strata", domain.size()}, {"codim2Labels", labels}, {"failed", bad},
                      {"status", failed ? "fail" : "pass"}}.dump(2)
              << "\n";
  else
    std::cout << (failed ? "FAIL" : "PASS") << " ddzero: " << domain.size() << " strata, " << labels << " codimension-2 labels\n";
  return failed ? kFail : kPass;
}

int run_splittings(const std::string& k_text, std::optional<int> n, const std::string& l_text, const Globals& g) {
  const MultiIndex k = index_arg(k_text, "--k");
  Json out = Json::array();
  if (!n) {
    for (const Splitting& s : splittings(k)) {
      const int sign = gluing_sign(s.upper, s.lower);
      if (g.json) out.push_back({{"lower", to_string(s.lower)}, {"upper", to_string(s.upper)}, {"parity", sign}});
      else std::cout << to_string(s.lower) << " " << to_string(s.upper) << " " << sign << "\n";
    }
  } else {
    const StratumType d{*n, k, index_arg(l_text, "--l")};
    for (const TypeSplitting& s : type_splittings(d)) {
      const int sign = gluing_orientation(s.lower, s.upper);
      if (g.json) out.push_back({{"lower", to_string(s.lower)}, {"upper", to_string(s.upper)}, {"parity", sign}});
      else std::cout << to_string(s.lower) << " " << to_string(s.upper) << " " << sign << "\n";
    }
  }
  if (g.json) std::cout << out.dump(2) << "\n";
  return kPass;
}

int run_compose(const std::string& psi_path, const std::string& phi_path, const std::string& out, const Globals& g) {
  const Family<BoxMap> psi = family_from_json(read_json_file(psi_path)).family;
  const Family<BoxMap> phi = family_from_json(read_json_file(phi_path)).family;
  if (!(psi.ring == phi.ring) || !(psi.category == phi.category))
    throw JsonInputError("compose: ring and category must agree");
  if (phi.target.size() != psi.source.size())
    throw JsonInputError("compose: target of the second file must be the source of the first");
  for (std::size_t i = 0; i < phi.target.size(); ++i)
    if (!(*phi.target[i] == *psi.source[i])) throw JsonInputError("compose: target of the second file must be the source of the first");
  write_json(family_to_json(compose(psi, phi, g.ex())), out);
  return kPass;
}

int run_check_object(const std::string& path, const Globals& g) {
  return emit_report(object_report(object_from_json(read_json_file(path)), g), g);
}

int run_check_morphism(const std::string& path, const Globals& g) {
  const FamilyDocument doc = family_from_json(read_json_file(path));
  if (!doc.source_structure || !doc.target_structure)
    throw JsonInputError("check-morphism: source and target need alphaComponents");
  const Family<BoxMap>& phi = doc.family;
  Report r;
  if (phi.category.kind == CategoryKind::Bi && phi.degree == 0)
    r = check_fbialg_morphism(phi, *doc.source_structure, *doc.target_structure, g.ex());
  else
    r = require_zero(hom_differential(*doc.target_structure, phi, *doc.source_structure, g.ex()), "d(phi)", g.ex());
  r.suite = "check-morphism";
  return emit_report(r, g);
}

int run_check_simplex(const std::string& path, bool objects, bool edges, const Globals& g) {
  const Simplex<BoxMap> s = simplex_from_json(read_json_file(path));
  Report r = check_simplex(s, SimplexCheckOptions{objects, edges}, g.ex());
  r.suite = "check-simplex";
  return emit_report(r, g);
}

int run_monoid_morse(const std::string& path, const std::string& ring_text, IndexBounds b, bool allow_nonassoc,
                     const std::string& emit, const Globals& g) {
  const FiniteSemigroup sg = semigroup_from_json(read_json_file(path));
  if (!sg.associative() && !allow_nonassoc) {
    const auto w = sg.associativity_witness();
    const auto& e = sg.elements();
    throw JsonInputError("table is not associative at (" + e[static_cast<std::size_t>((*w)[0])] + ", " +
                         e[static_cast<std::size_t>((*w)[1])] + ", " + e[static_cast<std::size_t>((*w)[2])] +
                         "); pass --allow-nonassociative to check it anyway");
  }
  const Ring ring = Ring::parse(ring_text);
  const Family<CellMap> alpha = morse_fbialgebra(register_semigroup(sg), ring, b, allow_nonassoc);
  Report r = check_fbialgebra(alpha, g.ex());
  r.suite = "monoid-morse " + sg.name();
  if (!emit.empty()) write_json(object_to_json(boxed(alpha, "emit-object")), emit);
  return emit_report(r, g);
}

int run_triple_blocks(const std::string& path, const std::string& ring_text, IndexBounds b, bool check,
                      const std::string& out, const Globals& g) {
  const ActionTriple t = triple_from_json(read_json_file(path));
  try {
    validate(t);
  } catch (const std::invalid_argument& e) {
    throw JsonInputError(std::string("triple: ") + e.what());
  }
  const Family<BoxMap> blocks = extract_bimodule_blocks(t, Ring::parse(ring_text), b);
  if (!check || !out.empty()) write_json(object_to_json(blocks), out);
  if (!check) return kPass;
  Report r = require_zero(compose(blocks, blocks, g.ex()), "alpha-alpha", g.ex());
  r.suite = "triple-blocks";
  return emit_report(r, g);
}

int run_fill_horn(const std::string& path, const std::string& out, bool check, const Globals& g) {
  const Simplex<BoxMap> horn = simplex_from_json(read_json_file(path));
  if (horn.dimension() != 2 || !horn.maps.count({0, 1}) || !horn.maps.count({1, 2}))
    throw JsonInputError("fill-horn: need three objects and the faces [0,1] and [1,2]");
  const Simplex<BoxMap> s =
      fill_inner_horn_2(horn.objects[0], horn.objects[1], horn.objects[2], horn.maps.at({0, 1}), horn.maps.at({1, 2}));
  if (!check || !out.empty()) write_json(simplex_to_json(s), out);
  if (!check) return kPass;
  Report r = check_simplex(s, {}, g.ex());
  r.suite = "fill-horn";
  return emit_report(r, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graftlab: exact sign calculus, foresty categories and dg-nerve checkers"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  int threads = 0;
  app.add_flag("--json", g.json, "Structured JSON output");
  app.add_flag("--serial", g.serial, "Use the serial reference kernels");
  app.add_option("--threads", threads, "Thread cap (overrides GRAFTLAB_THREADS)")->check(CLI::PositiveNumber);

  std::function<int()> action;

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
  std::string profile = "full";
  std::uint64_t seed = kDefaultSeed;
  std::vector<int> criteria;
  bool timing = false;
  selftest->add_option("--profile", profile, "quick or full")->capture_default_str();
  selftest->add_option("--seed", seed, "Seed for the randomized criteria")->capture_default_str();
  selftest->add_option("--criteria", criteria, "Run only these criteria")->delimiter(',');
  selftest->add_flag("--timing", timing, "Append wall-clock times (output is no longer byte-stable)");
  selftest->callback([&] { action = [&] { return run_selftest(profile, seed, criteria, timing, g); }; });

  auto* heart = app.add_subcommand("heartsuit", "Vertex reordering parity of glue(k1, k0)");
  std::string k1, k0;
  bool oracle = false;
  heart->add_option("--k1", k1, "Upper multi-index, e.g. 2,1")->required();
  heart->add_option("--k0", k0, "Lower multi-index")->required();
  heart->add_flag("--oracle", oracle, "Compare with the permutation count");
  heart->callback([&] { action = [&] { return run_heartsuit(k1, k0, oracle, g); }; });

  auto* rho = app.add_subcommand("rho", "Gluing orientation of (n1,k1,l1) on top of (n0,k0,l0)");
  int n0 = 0, n1 = 0;
  std::string rk0, rl0, rk1, rl1;
  rho->add_option("--n0", n0)->required();
  rho->add_option("--k0", rk0)->required();
  rho->add_option("--l0", rl0)->required();
  rho->add_option("--n1", n1)->required();
  rho->add_option("--k1", rk1)->required();
  rho->add_option("--l1", rl1)->required();
  rho->add_flag("--oracle", oracle, "Compare with the determinant of the gluing map");
  rho->callback([&] {
    action = [&] { return run_rho(stratum_arg(n0, rk0, rl0, "0"), stratum_arg(n1, rk1, rl1, "1"), oracle, g); };
  });

  auto* strata = app.add_subcommand("strata", "Signed boundary of a stratum and its d^2 check");
  int sn = 0;
  std::string sk, sl;
  strata->add_option("--n", sn)->required();
  strata->add_option("--k", sk)->required();
  strata->add_option("--l", sl)->required();
  strata->callback([&] { action = [&] { return run_strata(stratum_arg(sn, sk, sl, ""), g); }; });

  auto* ddzero = app.add_subcommand("ddzero", "d^2 = 0 sweep over all small strata");
  int max_n = 3, max_leaves_dd = 3, max_dim = 4;
  ddzero->add_option("--max-dim", max_dim)->capture_default_str();
  ddzero->add_option("--max-n", max_n)->capture_default_str();
  ddzero->add_option("--max-leaves", max_leaves_dd)->capture_default_str();
  ddzero->callback([&] { action = [&] { return run_ddzero(max_n, max_leaves_dd, max_dim, g); }; });

  auto* split = app.add_subcommand("splittings", "List splittings of k, or of the type (n, k, l) with --n and --l");
  std::string pk, pl;
  std::optional<int> pn;
  split->add_option("--k", pk)->required();
  split->add_option("--n", pn);
  split->add_option("--l", pl);
  split->callback([&] {
    if (pn && pl.empty()) throw CLI::ValidationError("--n needs --l");
    action = [&] { return run_splittings(pk, pn, pl, g); };
  });

  std::string file1, file2, out;
  auto* comp = app.add_subcommand("compose", "Composite FILE1 o FILE2 (FILE2 applied first)");
  comp->add_option("FILE1", file1)->required();
  comp->add_option("FILE2", file2)->required();
  comp->add_option("-o,--out", out, "Output file (default stdout)");
  comp->callback([&] { action = [&] { return run_compose(file1, file2, out, g); }; });

  auto* cobj = app.add_subcommand("check-object", "Check an object of its category");
  cobj->add_option("FILE", file1)->required();
  cobj->callback([&] { action = [&] { return run_check_object(file1, g); }; });

  auto* cmor = app.add_subcommand("check-morphism", "Check a morphism between two objects");
  cmor->add_option("FILE", file1)->required();
  cmor->callback([&] { action = [&] { return run_check_morphism(file1, g); }; });

  auto* csim = app.add_subcommand("check-simplex", "Check a simplex of the dg nerve");
  bool skip_objects = false, skip_edges = false;
  csim->add_option("FILE", file1)->required();
  csim->add_flag("--no-objects", skip_objects, "Skip the vertex object checks");
  csim->add_flag("--no-edges", skip_edges, "Skip the edge morphism checks");
  csim->callback([&] { action = [&] { return run_check_simplex(file1, !skip_objects, !skip_edges, g); }; });

  auto* morse = app.add_subcommand("monoid-morse", "Build and check the Morse f-bialgebra of a finite semigroup");
  std::string ring = "Z", emit;
  IndexBounds bounds;
  bool allow = false;
  morse->add_option("FILE", file1)->required();
  morse->add_option("--ring", ring)->capture_default_str();
  morse->add_option("--max-leaves", bounds.max_leaves)->capture_default_str();
  morse->add_option("--max-cells", bounds.max_cells)->capture_default_str();
  morse->add_flag("--allow-nonassociative", allow, "Build from a non-associative table and report what fails");
  morse->add_option("--emit-object", emit, "Write the structure as an object file");
  morse->callback([&] { action = [&] { return run_monoid_morse(file1, ring, bounds, allow, emit, g); }; });

  auto* triple = app.add_subcommand("triple-blocks", "Bimodule block table of a group-set-group triple");
  bool check = false;
  triple->add_option("FILE", file1)->required();
  triple->add_option("--ring", ring)->capture_default_str();
  triple->add_option("--max-leaves", bounds.max_leaves)->capture_default_str();
  triple->add_option("--max-cells", bounds.max_cells)->capture_default_str();
  triple->add_option("-o,--out", out, "Output file (default stdout)");
  triple->add_flag("--check", check, "Check that the blocks square to zero instead of printing them");
  triple->callback([&] { action = [&] { return run_triple_blocks(file1, ring, bounds, check, out, g); }; });

  auto* horn = app.add_subcommand("fill-horn", "Fill an inner 2-horn given by faces [0,1] and [1,2]");
  horn->add_option("FILE", file1)->required();
  horn->add_option("-o,--out", out, "Output file (default stdout)");
  horn->add_flag("--check", check, "Check the filled simplex instead of printing it");
  horn->callback([&] { action = [&] { return run_fill_horn(file1, out, check, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (app.get_subcommands().empty()) std::cerr << "\n" << app.help();
    return kBadInput;
  }
  if (threads > 0) setenv("GRAFTLAB_THREADS", std::to_string(threads).c_str(), 1);

  try {
    return action();
  } catch (const JsonInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const BasisBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (lower --max-cells or the input sizes)\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kBadInput;
}
