// Command-line front end: JSON reports over the library, a catalog runner
// and a content-addressed result cache.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lbs/building.hpp"
#include "lbs/fy.hpp"
#include "lbs/lattice.hpp"
#include "lbs/leray.hpp"
#include "lbs/operad.hpp"
#include "lbs/os.hpp"
#include "lbs/shuffle.hpp"

using nlohmann::json;
using namespace lbs;

namespace {

// ---------------------------------------------------------------- sources --

struct SourceOpts {
  std::string family;        // boolean:N | partition:N | path:N | cycle:N
  std::string graph_file;    // {"vertices":[...],"edges":[[u,v],...]}
  std::string lattice_file;  // {"atoms":[...],"flats":[[...],...]}
  std::string building = "minimal";  // minimal | maximal | tubes | file
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  check_arg(in.good(), "file_not_found", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  check_arg(!j.is_discarded(), "invalid_json", what + " is not valid JSON");
  return j;
}

GraphInput graph_from_json(const json& j) {
  check_arg(j.contains("vertices") && j.contains("edges"), "invalid_graph",
            "graph JSON needs \"vertices\" and \"edges\"");
  GraphInput g;
  for (const auto& v : j["vertices"]) g.vertices.push_back(v.get<std::string>());
  for (const auto& e : j["edges"]) {
    check_arg(e.is_array() && e.size() == 2, "invalid_graph",
              "edges must be [u, v] pairs");
    g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return g;
}

GraphInput path_graph(int n) {
  check_arg(n >= 1, "invalid_family", "path graphs need at least one vertex");
  GraphInput g;
  for (int i = 0; i < n; ++i) {
    g.vertices.push_back("v" + std::to_string(i));
    if (i + 1 < n) g.edges.emplace_back(i, i + 1);
  }
  return g;
}

GraphInput cycle_graph(int n) {
  check_arg(n >= 3, "invalid_family", "cycle graphs need at least 3 vertices");
  GraphInput g = path_graph(n);
  g.edges.emplace_back(n - 1, 0);
  return g;
}

Lattice lattice_from_json(const json& j) {
  check_arg(j.contains("atoms") && j.contains("flats"), "invalid_lattice",
            "lattice JSON needs \"atoms\" and \"flats\"");
  std::vector<std::string> names;
  for (const auto& a : j["atoms"]) names.push_back(a.get<std::string>());
  std::vector<Mask> flats;
  for (const auto& f : j["flats"]) {
    Mask m = 0;
    for (const auto& i : f) {
      const int a = i.get<int>();
      check_arg(a >= 0 && a < static_cast<int>(names.size()), "invalid_lattice",
                "flat atom index out of range");
      m |= bit(a);
    }
    flats.push_back(m);
  }
  return build_from_flats(static_cast<int>(names.size()), flats, names);
}

BuildingSet building_from_json(const Lattice& L, const json& j) {
  check_arg(j.contains("members"), "invalid_building_set",
            "building-set JSON needs \"members\" (atom index sets)");
  std::vector<Elem> members;
  for (const auto& f : j["members"]) {
    Mask m = 0;
    for (const auto& i : f) m |= bit(i.get<int>());
    const Elem e = L.join_of_mask(m);
    check_arg(L.supp[e] == m, "invalid_building_set",
              "a member is not a flat of the lattice");
    members.push_back(e);
  }
  return make_building_set(L, members);
}

std::pair<std::string, int> split_family(const std::string& s) {
  const auto colon = s.find(':');
  check_arg(colon != std::string::npos, "invalid_family",
            "families are written name:parameter, e.g. partition:3");
  int n = 0;
  try {
    n = std::stoi(s.substr(colon + 1));
  } catch (const std::exception&) {
    check_arg(false, "invalid_family", "family parameter is not a number");
  }
  return {s.substr(0, colon), n};
}

// Resolve a source description to a built lattice; file contents consumed
// here are appended to `files` so cache keys cover them.
Built resolve(const SourceOpts& o, json* files = nullptr) {
  auto remember = [&](const std::string& path, const std::string& text) {
    if (files != nullptr) (*files)[path] = text;
  };

  std::optional<GraphInput> graph;
  std::optional<Lattice> L;
  const int given = !o.family.empty() + !o.graph_file.empty() +
                    !o.lattice_file.empty();
  check_arg(given == 1, "invalid_source",
            "give exactly one of --family, --graph, --lattice");
  if (!o.family.empty()) {
    const auto [name, n] = split_family(o.family);
    if (name == "boolean") {
      L = build_boolean(n);
    } else if (name == "partition") {
      L = build_partition(n);
    } else if (name == "path") {
      graph = path_graph(n);
    } else if (name == "cycle") {
      graph = cycle_graph(n);
    } else {
      check_arg(false, "invalid_family",
                "unknown family (boolean, partition, path, cycle): " + name);
    }
  } else if (!o.graph_file.empty()) {
    const std::string text = read_file(o.graph_file);
    remember(o.graph_file, text);
    graph = graph_from_json(parse_json(text, "graph file"));
  } else {
    const std::string text = read_file(o.lattice_file);
    remember(o.lattice_file, text);
    L = lattice_from_json(parse_json(text, "lattice file"));
  }

  if (o.building == "tubes") {
    check_arg(graph.has_value(), "invalid_building_set",
              "the tubes building set needs a graph source");
    return tubes_building_set(*graph);
  }
  if (!L.has_value()) L = build_graphic(*graph);
  Built b;
  b.lat = std::move(*L);
  if (o.building == "minimal") {
    b.bs = minimal_building_set(b.lat);
  } else if (o.building == "maximal") {
    b.bs = maximal_building_set(b.lat);
  } else {
    const std::string text = read_file(o.building);
    remember(o.building, text);
    b.bs = building_from_json(b.lat, parse_json(text, "building-set file"));
  }
  return b;
}

// ----------------------------------------------------------------- output --

json flat_of(const Lattice& L, Elem e) { return json(mask_bits(L.supp[e])); }

std::vector<int> trimmed(std::vector<int> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

json fy_monomial_json(const FYMon& m) {
  json out = json::array();
  for (const auto& [g, e] : m) out.push_back({g, e});
  return out;
}

// -------------------------------------------------------------- reporters --

json report_lattice(const Built& b) {
  const Lattice& L = b.lat;
  json flats = json::array(), rank = json::array();
  for (Elem e = 0; e < L.size(); ++e) {
    flats.push_back(flat_of(L, e));
    rank.push_back(L.rk[e]);
  }
  return {{"atoms", L.atom_names},
          {"flats", flats},
          {"rank", rank},
          {"size", L.size()}};
}

json report_building(const Built& b) {
  json members = json::array();
  for (Elem g : b.bs.members) members.push_back(flat_of(b.lat, g));
  return {{"members", members},
          {"count", static_cast<int>(b.bs.members.size())},
          {"irreducible", b.bs.irreducible}};
}

json report_nested(const Built& b, bool irreducible, int max_size) {
  json sets = json::array();
  const auto all =
      enumerate_nested_sets(b.lat, b.bs, b.lat.bottom(), b.lat.top(),
                            irreducible, max_size);
  for (const auto& s : all) sets.push_back(s);
  return {{"nested", sets}, {"count", static_cast<int>(all.size())}};
}

json report_fy(const Built& b, bool hilbert, bool basis, bool pairing) {
  FYAlgebra A(b.lat, b.bs, b.lat.bottom(), b.lat.top());
  json out;
  if (hilbert) out["hilbert"] = trimmed(A.hilbert());
  if (basis) {
    json degrees = json::array();
    for (const auto& degree : A.basis()) {
      json mons = json::array();
      for (const FYMon& m : degree) mons.push_back(fy_monomial_json(m));
      degrees.push_back(mons);
    }
    out["basis"] = degrees;
  }
  if (pairing) {
    const PDReport pd = pd_pairing(A);
    const std::vector<int> h = trimmed(A.hilbert());
    out["pairing"] = {{"nondegenerate", pd.nondegenerate},
                      {"top_dimension", h.empty() ? 0 : h.back()}};
  }
  return out;
}

json report_os(const Built& b, bool projective) {
  OSAlgebra A(b.lat, b.lat.bottom(), b.lat.top());
  json out = {{"hilbert", trimmed(A.hilbert())}};
  if (projective) out["projective"] = trimmed(A.projective_hilbert());
  return out;
}

json report_operad_check(const Built& b, const std::string& kind_filter) {
  const std::map<std::string, MapKind> kinds = {
      {"fy", MapKind::fy_coop},
      {"fypd", MapKind::fy_pd},
      {"os", MapKind::os_coop},
      {"osbar", MapKind::osbar_odd}};
  if (kind_filter != "all")
    check_arg(kinds.count(kind_filter) != 0, "invalid_kind",
              "--kind must be fy, fypd, os, osbar or all");
  OperadContext ctx(b.lat, b.bs);
  const Elem lo = b.lat.bottom(), hi = b.lat.top();
  json out;
  bool all_ok = true;
  for (const auto& [name, kind] : kinds) {
    if (kind_filter != "all" && name != kind_filter) continue;
    bool well = true;
    for (Elem g : b.bs.members) {
      if (g == hi) continue;
      switch (kind) {
        case MapKind::fy_coop: well = well && fy_coop_well_defined(ctx, lo, hi, g); break;
        case MapKind::fy_pd: well = well && fy_pd_well_defined(ctx, lo, hi, g); break;
        case MapKind::os_coop: well = well && os_coop_well_defined(ctx, lo, hi, g); break;
        case MapKind::osbar_odd:
          well = well && osbar_lands_in_projective(ctx, lo, hi, g);
          break;
      }
    }
    const RelationReport rel = check_presentation_relations(kind, ctx);
    out[name] = {{"well_defined", well},
                 {"relations",
                  {{"ok", rel.ok},
                   {"checked", rel.checked},
                   {"failures", rel.failures}}}};
    all_ok = all_ok && well && rel.ok;
  }
  out["ok"] = all_ok;
  return out;
}

json report_groebner(const Built& b, const std::vector<int>& atom_order) {
  DirectedBuiltLattice D(b.lat, b.bs, atom_order);
  const GBVerdict v = verify_quadratic_gb(D);
  return {{"normal_count", v.normal_count},
          {"fy_dimension", v.fy_dimension},
          {"atom_order", D.order},
          {"ok", v.ok}};
}

json report_koszul(const Built& b, const std::string& variant) {
  check_arg(variant == "projective" || variant == "affine", "invalid_variant",
            "--variant must be projective or affine");
  const LerayVariant v = variant == "projective" ? LerayVariant::projective
                                                 : LerayVariant::affine;
  const LerayModel Lm(b.lat, b.bs, v);
  json bigraded = json::array();
  for (const auto& [bd, dim] : Lm.dimensions())
    bigraded.push_back({bd.first, bd.second, dim});
  const OSComparisonReport rep = os_comparison(Lm);
  return {{"variant", variant},
          {"bigraded", bigraded},
          {"homology", rep.homology_dims},
          {"os_dims", rep.os_dims},
          {"koszul", rep.ok}};
}

// ---------------------------------------------------------------- catalog --

struct CatalogEntry {
  std::string name;
  SourceOpts source;
};

std::vector<CatalogEntry> default_catalog() {
  std::vector<CatalogEntry> out;
  auto add = [&](const std::string& name, const std::string& family,
                 const std::string& building) {
    out.push_back({name, SourceOpts{family, "", "", building}});
  };
  for (int n = 2; n <= 4; ++n) {
    const std::string bn = "boolean:" + std::to_string(n);
    add("boolean" + std::to_string(n) + "-min", bn, "minimal");
    add("boolean" + std::to_string(n) + "-max", bn, "maximal");
    const std::string pn = "partition:" + std::to_string(n);
    add("partition" + std::to_string(n) + "-min", pn, "minimal");
    add("partition" + std::to_string(n) + "-max", pn, "maximal");
  }
  add("cycle4-graphic-min", "cycle:4", "minimal");
  for (int n = 3; n <= 5; ++n)
    add("path" + std::to_string(n) + "-graphic-min",
        "path:" + std::to_string(n), "minimal");
  for (int n = 2; n <= 5; ++n)
    add("path" + std::to_string(n) + "-tubes", "path:" + std::to_string(n),
        "tubes");
  for (int n = 3; n <= 5; ++n)
    add("cycle" + std::to_string(n) + "-tubes", "cycle:" + std::to_string(n),
        "tubes");
  return out;
}

std::vector<CatalogEntry> catalog_from_file(const std::string& path,
                                            json* files) {
  const std::string text = read_file(path);
  if (files != nullptr) (*files)[path] = text;
  const json j = parse_json(text, "catalog file");
  check_arg(j.is_array(), "invalid_catalog", "catalog must be a JSON array");
  std::vector<CatalogEntry> out;
  for (const auto& e : j) {
    CatalogEntry c;
    c.name = e.value("name", "entry" + std::to_string(out.size()));
    c.source.family = e.value("family", "");
    c.source.graph_file = e.value("graph", "");
    c.source.lattice_file = e.value("lattice", "");
    c.source.building = e.value("building", "minimal");
    out.push_back(std::move(c));
  }
  return out;
}

// One check on one resolved entry.  Checks that need an irreducible
// building set mark themselves skipped instead of failing.
json run_check(const Built& b, const std::string& check) {
  // The Poincare pairing, the structure maps, the Groebner certificate and
  // the Leray models all need the top element in the building set.
  if ((check == "operad-check" || check == "groebner-check" ||
       check == "koszul") &&
      !b.bs.irreducible)
    return {{"skipped", "building set is not irreducible"}};
  if (check == "fy") return report_fy(b, true, false, b.bs.irreducible);
  if (check == "os") return report_os(b, true);
  if (check == "operad-check") return report_operad_check(b, "all");
  if (check == "groebner-check") return report_groebner(b, {});
  if (check == "koszul") {
    return {{"projective", report_koszul(b, "projective")},
            {"affine", report_koszul(b, "affine")}};
  }
  check_arg(false, "invalid_check",
            "unknown check (fy, os, operad-check, groebner-check, koszul): " +
                check);
  return {};
}

bool check_failed(const json& r) {
  if (r.contains("error")) return true;
  if (r.contains("skipped")) return false;
  for (const char* key : {"ok", "koszul"})
    if (r.contains(key) && r[key].is_boolean() && !r[key].get<bool>())
      return true;
  for (const char* part : {"projective", "affine"})
    if (r.contains(part) && check_failed(r[part])) return true;
  return false;
}

json run_catalog(const std::string& catalog_file, const std::string& only,
                 bool timing, json* files, bool* any_failed) {
  const std::vector<CatalogEntry> entries =
      catalog_file.empty() ? default_catalog()
                           : catalog_from_file(catalog_file, files);
  const std::vector<std::string> all_checks = {
      "fy", "os", "operad-check", "groebner-check", "koszul"};
  std::vector<std::string> checks;
  for (const std::string& c : all_checks)
    if (only.empty() || only == c) checks.push_back(c);
  check_arg(!checks.empty(), "invalid_check", "--only names no known check");

  json reports = json::array();
  *any_failed = false;
  for (const CatalogEntry& e : entries) {
    std::optional<Built> built;
    json entry_error;
    try {
      built = resolve(e.source, files);
    } catch (const validation_error& ex) {
      entry_error = {{"kind", ex.kind()}, {"message", ex.what()}};
    }
    for (const std::string& check : checks) {
      json r = {{"entry", e.name}, {"check", check}};
      const auto start = std::chrono::steady_clock::now();
      if (!built.has_value()) {
        r["error"] = entry_error;
      } else {
        try {
          r["output"] = run_check(*built, check);
        } catch (const validation_error& ex) {
          r["error"] = {{"kind", ex.kind()}, {"message", ex.what()}};
        }
      }
      if (timing)
        r["ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
      const json& verdict = r.contains("output") ? r["output"] : r;
      if (check_failed(verdict)) *any_failed = true;
      reports.push_back(std::move(r));
    }
  }
  return {{"reports", reports}, {"failed", *any_failed}};
}

// ------------------------------------------------------------------ cache --

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string cache_path(const std::string& dir, const json& request) {
  std::ostringstream key;
  key << std::hex << fnv1a(request.dump());
  return dir + "/" + key.str() + ".json";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Built geometric lattices: FY/OS algebras, operads, "
               "Groebner and Koszulness checks"};
  app.require_subcommand(1);

  SourceOpts src;
  bool pretty = false;
  std::string cache_dir;
  if (const char* env = std::getenv("LBS_CACHE_DIR")) cache_dir = env;

  auto add_source = [&](CLI::App* cmd) {
    cmd->add_option("--family", src.family,
                    "builtin family, e.g. partition:3, boolean:4, cycle:4");
    cmd->add_option("--graph", src.graph_file, "graph JSON file");
    cmd->add_option("--lattice", src.lattice_file, "lattice flats JSON file");
    cmd->add_option("--building", src.building,
                    "minimal | maximal | tubes | members JSON file");
    cmd->add_flag("--pretty", pretty, "indent the JSON output");
    cmd->add_option("--cache", cache_dir, "result cache directory");
  };

  CLI::App* c_lattice = app.add_subcommand("lattice", "emit the lattice");
  CLI::App* c_building =
      app.add_subcommand("building-sets", "emit the building set");
  CLI::App* c_nested = app.add_subcommand("nested", "enumerate nested sets");
  CLI::App* c_fy = app.add_subcommand("fy", "Feichtner-Yuzvinsky algebra");
  CLI::App* c_os = app.add_subcommand("os", "Orlik-Solomon algebra");
  CLI::App* c_operad =
      app.add_subcommand("operad-check", "structure map verification");
  CLI::App* c_groebner =
      app.add_subcommand("groebner-check", "quadratic Groebner certificate");
  CLI::App* c_koszul = app.add_subcommand("koszul", "Leray model homology");
  CLI::App* c_catalog = app.add_subcommand("catalog", "run the whole catalog");

  bool nested_irreducible = false;
  int nested_max = -1;
  c_nested->add_flag("--irreducible", nested_irreducible,
                     "only nested sets containing the top");
  c_nested->add_option("--max-size", nested_max, "size bound");

  bool fy_hilbert = false, fy_basis = false, fy_pairing = false;
  c_fy->add_flag("--hilbert", fy_hilbert, "Hilbert vector");
  c_fy->add_flag("--basis", fy_basis, "normal basis monomials");
  c_fy->add_flag("--pairing", fy_pairing, "Poincare pairing report");

  bool os_projective = false;
  c_os->add_flag("--projective", os_projective,
                 "also the projective subalgebra dimensions");
  c_os->add_flag("--hilbert", [](std::int64_t) {},
                 "Hilbert vector (always emitted)");

  std::string operad_kind = "all";
  c_operad->add_option("--kind", operad_kind, "fy | fypd | os | osbar | all");

  std::string atom_order_str;
  c_groebner->add_option("--atom-order", atom_order_str,
                         "comma-separated atom permutation, e.g. 2,0,1");

  std::string variant = "projective";
  c_koszul->add_option("--variant", variant, "projective | affine");

  std::string only_check, catalog_file;
  bool timing = false;
  c_catalog->add_option("--only", only_check, "run a single check");
  c_catalog->add_option("--catalog", catalog_file, "catalog JSON file");
  c_catalog->add_flag("--timing", timing, "include per-report timings");

  for (CLI::App* c : {c_lattice, c_building, c_nested, c_fy, c_os, c_operad,
                      c_groebner, c_koszul})
    add_source(c);
  c_catalog->add_flag("--pretty", pretty, "indent the JSON output");
  c_catalog->add_option("--cache", cache_dir, "result cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err = {{"error", {{"kind", "usage"}, {"message", e.what()}}}};
    std::cout << err.dump() << "\n";
    return 2;
  }

  int exit_code = 0;
  try {
    const CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();

    // The cache key covers the subcommand, every option value and the
    // contents of every file the run reads.
    json request = {{"cmd", name},
                    {"family", src.family},
                    {"graph", src.graph_file},
                    {"lattice", src.lattice_file},
                    {"building", src.building},
                    {"pretty", pretty},
                    {"files", json::object()}};
    json* files = &request["files"];

    json out;
    bool catalog_failed = false;
    if (name == "catalog") {
      request["only"] = only_check;
      request["catalog"] = catalog_file;
      request["timing"] = timing;
    } else if (name == "nested") {
      request["irreducible"] = nested_irreducible;
      request["max_size"] = nested_max;
    } else if (name == "fy") {
      if (!fy_basis && !fy_pairing) fy_hilbert = true;
      request["flags"] = {fy_hilbert, fy_basis, fy_pairing};
    } else if (name == "os") {
      request["projective"] = os_projective;
    } else if (name == "operad-check") {
      request["kind"] = operad_kind;
    } else if (name == "groebner-check") {
      request["atom_order"] = atom_order_str;
    } else if (name == "koszul") {
      request["variant"] = variant;
    }

    // Cache probe: the stored bytes are replayed verbatim.
    std::string path;
    if (!cache_dir.empty() && name != "catalog") {
      // Resolve once just to pull file contents into the key.
      json probe = request;
      resolve(src, &probe["files"]);
      request = probe;
      path = cache_path(cache_dir, request);
      std::ifstream hit(path);
      if (hit.good()) {
        std::cout << hit.rdbuf();
        return 0;
      }
    }

    if (name == "catalog") {
      out = run_catalog(catalog_file, only_check, timing, files,
                        &catalog_failed);
    } else {
      const Built b = resolve(src, files);
      if (name == "lattice") out = report_lattice(b);
      if (name == "building-sets") out = report_building(b);
      if (name == "nested") out = report_nested(b, nested_irreducible, nested_max);
      if (name == "fy") out = report_fy(b, fy_hilbert, fy_basis, fy_pairing);
      if (name == "os") out = report_os(b, os_projective);
      if (name == "operad-check") out = report_operad_check(b, operad_kind);
      if (name == "groebner-check") {
        std::vector<int> order;
        if (!atom_order_str.empty()) {
          std::stringstream ss(atom_order_str);
          std::string tok;
          while (std::getline(ss, tok, ','))
            order.push_back(std::stoi(tok));
        }
        out = report_groebner(b, order);
      }
      if (name == "koszul") out = report_koszul(b, variant);
    }

    const std::string text = (pretty ? out.dump(2) : out.dump()) + "\n";
    if (!path.empty()) {
      std::ofstream store(path);
      store << text;
    }
    std::cout << text;
    if (catalog_failed) exit_code = 1;
  } catch (const validation_error& e) {
    json err = {{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
    std::cout << (pretty ? err.dump(2) : err.dump()) << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err = {{"error", {{"kind", "internal"}, {"message", e.what()}}}};
    std::cout << (pretty ? err.dump(2) : err.dump()) << "\n";
    return 1;
  }
  return exit_code;
}
