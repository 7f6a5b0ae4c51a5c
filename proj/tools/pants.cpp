// Command-line driver: Farey computations, path projection, audits, planes.
// Exit codes: 0 success, 2 usage or input error, 3 falsification event.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "pants/audit.hpp"

using json = nlohmann::ordered_json;
using namespace pants;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path data_dir() {
  if (const char* env = std::getenv("PANTS_DATA_DIR")) return env;
  return PANTS_DEFAULT_DATA_DIR;
}

json fixture_checksums() {
  json out = json::object();
  fs::path dir = data_dir();
  if (!fs::is_directory(dir)) return out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out[f.filename().string()] = sha256_hex(read_file(f));
  return out;
}

UnimodularMatrix parse_matrix(const std::string& text) {
  std::vector<i64> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      v.push_back(std::stoll(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InputError("bad matrix entry '" + item + "'");
  }
  if (v.size() != 4) throw InputError("matrix needs four comma-separated entries a,b,c,d");
  return UnimodularMatrix::make(v[0], v[1], v[2], v[3]);
}

json slopes_json(const std::vector<Slope>& s) {
  json a = json::array();
  for (const auto& x : s) a.push_back(x.str());
  return a;
}

json handle_json(const HandleVertex& h) { return json::array({h.s1.str(), h.s2.str()}); }

json report_json(const AuditReport& r) {
  json params = json::object(), stats = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  for (const auto& [k, v] : r.stats) stats[k] = v;
  return {{"audit", r.name},
          {"parameters", params},
          {"samples", r.samples},
          {"failures", r.failures},
          {"verdict", r.pass() ? "no falsification within bounds" : "falsification events"},
          {"budget_exceeded", r.budget_exceeded},
          {"statistics", stats},
          {"witnesses", r.witnesses}};
}

// Path documents: {"path": [[c, c, c], ...]} with each c a 12-entry weight
// vector. The output of the walk command is accepted as is.
std::vector<PantsVertex> parse_path(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed path document: ") + e.what());
  }
  const json* p = nullptr;
  if (doc.contains("path")) p = &doc["path"];
  else if (doc.contains("result") && doc["result"].contains("path")) p = &doc["result"]["path"];
  if (!p || !p->is_array() || p->empty()) throw InputError("path document needs a non-empty \"path\" array");
  std::vector<PantsVertex> out;
  for (const auto& v : *p) {
    if (!v.is_array() || v.size() != 3) throw InputError("each path entry must list three curves");
    std::vector<Weights> curves;
    for (const auto& c : v) {
      if (!c.is_array()) throw InputError("curves must be integer arrays");
      Weights w;
      for (const auto& x : c) {
        if (!x.is_number_integer()) throw InputError("curves must be integer arrays");
        w.push_back(x.get<i64>());
      }
      curves.push_back(std::move(w));
    }
    try {
      out.push_back(validate_pants(curves));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("invalid pants decomposition: ") + e.what());
    }
  }
  return out;
}

json path_json(const std::vector<PantsVertex>& path) {
  json a = json::array();
  for (const auto& v : path) a.push_back(v.sorted_curves());
  return a;
}

// The bundled handle fixture must describe the built-in handle system.
void check_handle_fixture() {
  fs::path f = data_dir() / "handle_system.json";
  if (!fs::exists(f)) return;
  json doc;
  try {
    doc = json::parse(read_file(f));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed handle fixture: ") + e.what());
  }
  const HandleSystem& h = HandleSystem::standard();
  bool ok = doc.value("q", Weights{}) == h.q();
  for (int j : {1, 2}) {
    std::string key = "Y" + std::to_string(j);
    if (!doc.contains(key)) {
      ok = false;
      continue;
    }
    ok = ok && doc[key].value("0/1", Weights{}) == h.curve(j, {0, 1}) && doc[key].value("1/0", Weights{}) == h.curve(j, {1, 0});
  }
  if (!ok) throw InputError("handle fixture does not match the built-in handle system");
}

json trace_json(const WaypointTrace& t, const std::vector<PantsVertex>& path) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    json st = {{"from", s.from}, {"to", s.to}, {"j", s.j}, {"dQ", s.dq}, {"branch", branch_name(s.branch)}};
    if (s.intermediate) {
      st["intermediate"] = handle_json(*s.intermediate);
      st["intermediate_in_projection"] = s.intermediate_in_projection;
    }
    st["shared_route_checked"] = s.shared_route_checked;
    steps.push_back(st);
  }
  json wps = json::array(), member = json::array();
  for (std::size_t i = 0; i < t.waypoints.size(); ++i) {
    wps.push_back(handle_json(t.waypoints[i]));
    auto pi = project_to_handle(path[static_cast<std::size_t>(t.indices[i])].sorted_curves());
    member.push_back(std::binary_search(pi.begin(), pi.end(), t.waypoints[i]));
  }
  return {{"path_length", static_cast<int>(path.size()) - 1},
          {"indices", t.indices},
          {"waypoints", wps},
          {"waypoint_in_projection", member},
          {"steps", steps},
          {"telescoped_total", t.total()},
          {"falsifications", t.falsifications},
          {"verdict", t.ok() ? "all certificates hold" : "falsification events"}};
}

struct Run {
  std::string command;
  json parameters = json::object();
  std::optional<std::uint64_t> seed;
  json bounds = json::object();
  std::string out;
};

int emit(const Run& run, const json& result, double seconds, int code) {
  std::string payload = result.dump();
  json doc = {{"manifest",
               {{"command", run.command},
                {"parameters", run.parameters},
                {"seed", run.seed ? json(*run.seed) : json(nullptr)},
                {"bounds", run.bounds},
                {"toolkit_version", kVersion},
                {"fixture_checksums", fixture_checksums()},
                {"payload_sha256", sha256_hex(payload)},
                {"wall_clock_seconds", seconds}}},
              {"result", result}};
  std::string text = doc.dump(2) + "\n";
  if (run.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(run.out);
    if (!f) throw InputError("cannot write " + run.out);
    f << text;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pants graph toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Run run;
  app.add_option("--out", run.out, "Write the document to this file");

  // farey
  auto* farey = app.add_subcommand("farey", "Farey graph computations");
  farey->require_subcommand(1);
  std::string sa, sb, mat = "3,-1,1,0";
  int window = 2;
  auto* f_dist = farey->add_subcommand("distance", "Farey distance between two slopes");
  f_dist->add_option("a", sa)->required();
  f_dist->add_option("b", sb)->required();
  auto* f_geo = farey->add_subcommand("geodesic", "A Farey geodesic between two slopes");
  f_geo->add_option("a", sa)->required();
  f_geo->add_option("b", sb)->required();
  auto* f_axis = farey->add_subcommand("axis", "Segment of the invariant axis of a hyperbolic matrix");
  f_axis->add_option("--matrix", mat, "a,b,c,d")->capture_default_str();
  f_axis->add_option("--window", window, "Half-length of the segment")->capture_default_str();

  // project
  auto* project = app.add_subcommand("project", "Trace a path ending in the handle subgraph");
  std::string path_file;
  project->add_option("path", path_file, "Path document")->required();

  // walk
  auto* walk = app.add_subcommand("walk", "Seeded random path ending at the base decomposition");
  int len = 6;
  i64 bound = 8;
  std::uint64_t seed = 7;
  walk->add_option("--len", len)->capture_default_str();
  walk->add_option("--bound", bound)->capture_default_str();
  walk->add_option("--seed", seed)->capture_default_str();

  // audit
  auto* audit = app.add_subcommand("audit", "Seeded audits");
  audit->require_subcommand(1);
  int workers = 1, dq_max = 5;
  std::size_t pairs = 100, paths = 1000, samples = 500, trials = 100;
  std::uint64_t budget = 1000000;
  auto common = [&](CLI::App* c) {
    c->add_option("--seed", seed)->capture_default_str();
    c->add_option("--workers", workers)->capture_default_str();
  };
  auto* a_tg = audit->add_subcommand("total-geodesy", "Bounded search for shortcuts past the handle subgraph");
  common(a_tg);
  a_tg->add_option("--pairs", pairs)->capture_default_str();
  a_tg->add_option("--dq-max", dq_max)->capture_default_str()->check(CLI::Range(1, 5));
  a_tg->add_option("--bound", bound)->capture_default_str();
  a_tg->add_option("--budget", budget)->capture_default_str();
  auto* a_t2 = audit->add_subcommand("theorem2", "Waypoint traces of random paths");
  common(a_t2);
  int max_len = 8;
  a_t2->add_option("--paths", paths)->capture_default_str();
  a_t2->add_option("--len", max_len)->capture_default_str()->check(CLI::PositiveNumber);
  a_t2->add_option("--bound", bound)->capture_default_str();
  auto* a_l4 = audit->add_subcommand("lemma4", "Gaps between disjoint footprints");
  common(a_l4);
  a_l4->add_option("--samples", samples)->capture_default_str();
  a_l4->add_option("--bound", bound)->capture_default_str();
  auto* a_l8 = audit->add_subcommand("lemma8", "Products of convex subsets");
  common(a_l8);
  a_l8->add_option("--trials", trials)->capture_default_str();

  // plane
  auto* plane = app.add_subcommand("plane", "Grid plane window and translation check");
  std::string m1 = "3,-1,1,0", m2 = "3,-1,1,0";
  int extent = 5;
  bool embed = false;
  plane->add_option("--m1", m1)->capture_default_str();
  plane->add_option("--m2", m2)->capture_default_str();
  plane->add_option("--extent", extent)->capture_default_str()->check(CLI::NonNegativeNumber);
  plane->add_flag("--embed", embed, "Also check a 4x4 block in the bounded pants graph");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  try {
    if (farey->parsed()) {
      if (f_dist->parsed() || f_geo->parsed()) {
        Slope a = parse_slope(sa), b = parse_slope(sb);
        run.parameters = {{"a", a.str()}, {"b", b.str()}};
        if (f_dist->parsed()) {
          run.command = "farey distance";
          return emit(run, {{"distance", farey_distance(a, b)}}, elapsed(), 0);
        }
        run.command = "farey geodesic";
        auto g = farey_geodesic(a, b);
        return emit(run, {{"length", static_cast<int>(g.size()) - 1}, {"path", slopes_json(g)}}, elapsed(), 0);
      }
      run.command = "farey axis";
      UnimodularMatrix m = parse_matrix(mat);
      run.parameters = {{"matrix", mat}, {"window", window}};
      PeriodicAxis ax(m);
      if (window < 0) throw InputError("window must be non-negative");
      return emit(run, {{"period", ax.shift()}, {"segment", slopes_json(ax.segment(-window, window))}}, elapsed(), 0);
    }
    if (project->parsed()) {
      run.command = "project";
      run.parameters = {{"path_file", fs::path(path_file).filename().string()}};
      check_handle_fixture();
      std::string text = read_file(path_file);
      run.parameters["path_sha256"] = sha256_hex(text);
      auto path = parse_path(text);
      const HandleSystem& h = HandleSystem::standard();
      for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (!is_elementary_move(path[i], path[i + 1])) throw InputError("path step " + std::to_string(i) + " is not an elementary move");
      if (!h.in_subgraph(path.back())) throw InputError("path must end at a decomposition containing q");
      WaypointTrace t = theorem2_project_path(path, h);
      return emit(run, trace_json(t, path), elapsed(), t.ok() ? 0 : 3);
    }
    if (walk->parsed()) {
      run.command = "walk";
      run.seed = seed;
      run.parameters = {{"len", len}};
      run.bounds = {{"height", bound}};
      if (len < 0) throw InputError("length must be non-negative");
      auto path = random_walk_path(base_vertex(), len, bound, seed);
      std::reverse(path.begin(), path.end());
      return emit(run, {{"path", path_json(path)}}, elapsed(), 0);
    }
    if (audit->parsed()) {
      run.seed = seed;
      AuditReport r;
      if (a_tg->parsed()) {
        run.command = "audit total-geodesy";
        run.parameters = {{"pairs", pairs}, {"dq_max", dq_max}, {"workers", workers}};
        run.bounds = {{"height", bound}, {"geodesic_budget", budget}, {"exact_up_to", 5}};
        r = audit_total_geodesy(pairs, dq_max, bound, seed, budget, workers);
      } else if (a_t2->parsed()) {
        run.command = "audit theorem2";
        run.parameters = {{"paths", paths}, {"len", max_len}, {"workers", workers}};
        run.bounds = {{"height", bound}};
        r = audit_theorem2(paths, max_len, bound, seed, workers);
      } else if (a_l4->parsed()) {
        run.command = "audit lemma4";
        run.parameters = {{"samples", samples}, {"workers", workers}};
        run.bounds = {{"height", bound}};
        r = audit_lemma4(samples, bound, seed);
      } else {
        run.command = "audit lemma8";
        run.parameters = {{"trials", trials}, {"workers", workers}};
        r = audit_lemma8(trials, seed);
      }
      return emit(run, report_json(r), elapsed(), r.pass() ? 0 : 3);
    }
    if (plane->parsed()) {
      run.command = "plane";
      run.parameters = {{"m1", m1}, {"m2", m2}, {"extent", extent}, {"embed", embed}};
      UnimodularMatrix a = parse_matrix(m1), b = parse_matrix(m2);
      if (!is_hyperbolic(a) || !is_hyperbolic(b)) throw InputError("plane matrices must be hyperbolic (|trace| >= 3)");
      PlaneVerification pv = invariant_plane_window(a, b, extent);
      AuditReport grid = audit_plane_grid(a, b, extent);
      json result = {{"axis1", slopes_json(pv.window.axis1)},
                     {"axis2", slopes_json(pv.window.axis2)},
                     {"grid", {{"vertices", pv.window.axis1.size() * pv.window.axis2.size()},
                               {"pairs_checked", grid.samples},
                               {"l1_metric", grid.pass()}}},
                     {"translation", {{"shift", {pv.shift.first, pv.shift.second}},
                                      {"square_shift", {pv.square_shift.first, pv.square_shift.second}},
                                      {"constant", pv.translation_ok}}}};
      bool ok = grid.pass() && pv.translation_ok;
      if (embed) {
        run.bounds = {{"height", 8}};
        AuditReport e = audit_plane_embedding(a, b, 4, 8);
        result["embedding"] = report_json(e);
        ok = ok && e.pass();
      }
      return emit(run, result, elapsed(), ok ? 0 : 3);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
