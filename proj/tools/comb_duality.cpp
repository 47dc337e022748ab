// comb_duality: command-line front end over the C API.
//
// Exit codes: 0 all predicates pass, 1 a predicate fails (or a
// decomposition is refused), 2 inconclusive, 3 configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "combdual/combdual.h"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kConfigError = 3;

struct Common {
  std::string family;
  std::vector<std::string> params;
  std::string u = "all";
  int radius = 10;
  int cap = 0;
  int k = 10;
  int min_gap = 4;
  std::uint64_t budget = 200'000'000;
  int levels = 0;
  std::string out;
  std::string format = "json";
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--family", c.family, "graph family")->required();
  app->add_option("--params", c.params, "family parameters as key=value");
  app->add_option("--u", c.u, "vertex set U: all | teeth | leaves | even_ids | distance_class(n)");
  app->add_option("--radius", c.radius, "truncation radius")->check(CLI::NonNegativeNumber);
  app->add_option("--cap", c.cap, "branching cap for infinite degrees (0 = none)");
  app->add_option("--k", c.k, "certificate scale")->check(CLI::Range(2, 1 << 20));
  app->add_option("--min-gap", c.min_gap, "gap for the essential-disjointness surrogate")
      ->check(CLI::PositiveNumber);
  app->add_option("--budget", c.budget, "node budget (COMB_DUALITY_BUDGET overrides)");
  app->add_option("--levels", c.levels, "S-tree recursion depth (0 = to the frontier)");
  app->add_option("--out", c.out, "directory for report and artifacts");
  app->add_option("--format", c.format, "stdout format")->check(CLI::IsMember({"json", "dot"}));
}

std::string config_json(const Common& c) {
  Json j;
  j["family"] = c.family;
  Json params = Json::object();
  for (const auto& kv : c.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--params expects key=value, got '" + kv + "'");
    params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  j["params"] = params;
  j["u"] = c.u;
  j["radius"] = c.radius;
  j["cap"] = c.cap > 0 ? Json(c.cap) : Json(nullptr);
  j["k"] = c.k;
  j["min_gap"] = c.min_gap;
  std::uint64_t budget = c.budget;
  if (const char* env = std::getenv("COMB_DUALITY_BUDGET")) {
    try {
      budget = std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("COMB_DUALITY_BUDGET is not a number: ") + env);
    }
  }
  j["budget"] = budget;
  j["levels"] = c.levels;
  return j.dump();
}

// Takes ownership of a string returned by the C API.
std::string take(char* s) {
  std::string out = s ? s : "";
  cd_string_free(s);
  return out;
}

int status_exit(cd_status s) {
  std::cerr << "error: " << cd_last_error() << "\n";
  return s == CD_ERR_BUDGET ? 2 : s == CD_ERR_INVALID_ARGUMENT ? kConfigError : 1;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  if (!f) throw ConfigError("cannot write " + p.string());
  f << text;
  if (text.empty() || text.back() != '\n') f << "\n";
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p);
  if (!f) throw ConfigError("cannot read " + p.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void print_table(const Json& report, std::ostream& os) {
  if (report.contains("branch")) os << "branch: " << report["branch"].get<std::string>() << "\n";
  if (report.value("refused", false)) os << "refused: " << report.value("refusal", "") << "\n";
  for (const auto& p : report.value("predicates", Json::array())) {
    os << "  " << p["status"].get<std::string>() << "  " << p["name"].get<std::string>();
    const double cov = p.value("coverage", 1.0);
    if (cov < 1.0) os << "  (coverage " << cov << ")";
    const auto w = p.value("witness", "");
    if (!w.empty()) os << "  -- " << w;
    os << "\n";
  }
}

// Dot rendering of a decomposition artifact, without linking the core.
std::string decomposition_dot(const Json& td) {
  std::ostringstream os;
  os << "digraph decomposition {\n  node [shape=box];\n";
  const auto& labels = td.at("labels");
  for (std::size_t n = 0; n < labels.size(); ++n)
    os << "  n" << n << " [label=" << Json(labels[n].get<std::string>()).dump() << "];\n";
  for (const auto& e : td.at("tree").at("parent")) os << "  n" << e[1] << " -> n" << e[0] << ";\n";
  os << "}\n";
  return os.str();
}

int emit_run(const Common& c, const std::string& report_text, int code) {
  Json report = Json::parse(report_text);
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    write_file(fs::path(c.out) / "report.json", report_text);
    if (report.contains("artifacts")) {
      const auto& a = report["artifacts"];
      write_file(fs::path(c.out) / "decomposition.json", a["decomposition"].dump(2));
      write_file(fs::path(c.out) / "decomposition.dot", decomposition_dot(a["decomposition"]));
      if (a.contains("snt")) write_file(fs::path(c.out) / "snt.json", a["snt"].dump(2));
    }
    print_table(report, std::cout);
  } else if (c.format == "dot" && report.contains("artifacts")) {
    std::cout << decomposition_dot(report["artifacts"]["decomposition"]);
  } else {
    std::cout << report_text << "\n";
  }
  return code;
}

// A report plus any sibling artifact files, which take precedence over the
// embedded copies so edits to them are what gets verified.
std::string load_report(const fs::path& path) {
  const fs::path file = fs::is_directory(path) ? path / "report.json" : path;
  Json report = Json::parse(read_file(file));
  const fs::path dir = file.parent_path();
  if (report.contains("artifacts")) {
    if (fs::exists(dir / "decomposition.json"))
      report["artifacts"]["decomposition"] = Json::parse(read_file(dir / "decomposition.json"));
    if (fs::exists(dir / "snt.json")) report["artifacts"]["snt"] = Json::parse(read_file(dir / "snt.json"));
  }
  return report.dump();
}

struct Verified {
  std::string name;
  int code = 0;
  std::string table;  // JSON
  std::string error;
};

Verified verify_one(const fs::path& path) {
  Verified v;
  v.name = path.string();
  try {
    const std::string report = load_report(path);
    char* out = nullptr;
    int code = 0;
    cd_status s = cd_verify(report.c_str(), &out, &code);
    if (s != CD_OK) {
      v.error = cd_last_error();
      v.code = s == CD_ERR_BUDGET ? 2 : kConfigError;
      return v;
    }
    v.table = take(out);
    v.code = code;
  } catch (const std::exception& e) {
    v.error = e.what();
    v.code = kConfigError;
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stars, combs and dominated combs on truncated infinite graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cd_version()));

  Common analyze_opts, decompose_opts, export_opts;
  auto* analyze = app.add_subcommand("analyze", "run the normal-tree pipeline");
  add_common(analyze, analyze_opts);

  std::string theorem = "2";
  auto* decompose = app.add_subcommand("decompose", "build and check a tree-decomposition");
  add_common(decompose, decompose_opts);
  decompose->add_option("--theorem", theorem, "3.3 | 3.8 | 3.5 | 2")
      ->check(CLI::IsMember({"3.3", "3.8", "3.5", "2"}));

  std::vector<std::string> verify_paths;
  bool verify_all = false;
  auto* verify = app.add_subcommand("verify", "re-run every checker against stored artifacts");
  verify->add_option("paths", verify_paths, "report files or run directories")->required();
  verify->add_flag("--all", verify_all, "treat each path as a directory of run directories");

  std::string cert_path;
  int recheck_radius = -1;
  auto* certify = app.add_subcommand("certify", "certificate utilities");
  certify->require_subcommand(1);
  auto* recheck = certify->add_subcommand("recheck", "re-check stored certificates");
  recheck->add_option("document", cert_path, "report or certificate document")->required();
  recheck->add_option("--radius", recheck_radius, "truncation radius for the re-check");

  auto* exporter = app.add_subcommand("export", "write a truncation as JSON or DOT");
  add_common(exporter, export_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : kConfigError;
  }

  try {
    if (*analyze || *decompose) {
      const Common& c = *analyze ? analyze_opts : decompose_opts;
      const std::string config = config_json(c);
      char* out = nullptr;
      int code = 0;
      cd_status s = *analyze ? cd_analyze(config.c_str(), &out, &code)
                             : cd_decompose(config.c_str(), theorem.c_str(), &out, &code);
      if (s != CD_OK) return status_exit(s);
      return emit_run(c, take(out), code);
    }

    if (*verify) {
      std::vector<fs::path> runs;
      for (const auto& p : verify_paths) {
        if (!verify_all) {
          runs.emplace_back(p);
          continue;
        }
        if (!fs::is_directory(p)) throw ConfigError(p + " is not a directory");
        std::vector<fs::path> found;
        for (const auto& entry : fs::directory_iterator(p))
          if (fs::exists(entry.path() / "report.json")) found.push_back(entry.path());
        std::sort(found.begin(), found.end());
        runs.insert(runs.end(), found.begin(), found.end());
      }
      std::vector<std::future<Verified>> jobs;
      for (const auto& r : runs) jobs.push_back(std::async(std::launch::async, verify_one, r));
      int worst = 0;
      for (auto& j : jobs) {
        Verified v = j.get();
        std::cout << v.name << "\n";
        if (!v.error.empty()) std::cout << "  error: " << v.error << "\n";
        else print_table(Json::parse(v.table), std::cout);
        worst = std::max(worst, v.code);
      }
      return worst;
    }

    if (*recheck) {
      const std::string doc = read_file(cert_path);
      char* out = nullptr;
      int code = 0;
      cd_status s = cd_certify_recheck(doc.c_str(), recheck_radius, &out, &code);
      if (s != CD_OK) return status_exit(s);
      print_table(Json::parse(take(out)), std::cout);
      return code;
    }

    if (*exporter) {
      const Common& c = export_opts;
      const Json config = Json::parse(config_json(c));
      cd_graph* g = nullptr;
      cd_status s = cd_family_create(c.family.c_str(), config["params"].dump().c_str(), &g);
      if (s != CD_OK) return status_exit(s);
      cd_truncation* h = nullptr;
      s = cd_truncate(g, c.radius, c.cap, &h);
      cd_graph_free(g);
      if (s != CD_OK) return status_exit(s);
      char* out = nullptr;
      s = c.format == "dot" ? cd_truncation_to_dot(h, &out) : cd_truncation_to_json(h, &out);
      cd_truncation_free(h);
      if (s != CD_OK) return status_exit(s);
      const std::string text = take(out);
      if (c.out.empty()) {
        std::cout << text << "\n";
      } else {
        fs::create_directories(c.out);
        write_file(fs::path(c.out) / (c.format == "dot" ? "truncation.dot" : "truncation.json"), text);
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return 0;
}
