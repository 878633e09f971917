#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "warpform/cli.hpp"

namespace fs = std::filesystem;
using namespace warpform;

namespace {

int cmd_gallery_list() {
  for (const auto& name : gallery_names()) {
    GalleryInstance g = gallery_get(name);
    std::cout << name << "  [" << g.expected_type << "]  " << g.description << "\n";
  }
  return 0;
}

void print_summary(const Report& rep) {
  std::cout << "scenario: " << rep.scenario_echo["label"].get<std::string>() << "  ("
            << rep.points.size() << " points)\n";
  std::cout << "types:";
  for (const auto& [k, v] : rep.type_counts) std::cout << " " << k << "=" << v;
  std::cout << "\n";
  for (const auto& s : rep.suites) {
    std::cout << "  " << (s.pass ? "PASS" : "FAIL") << "  " << s.name
              << "  max_residual=" << s.max_residual << "  tol=" << s.tolerance;
    if (!s.note.empty()) std::cout << "  (" << s.note << ")";
    std::cout << "\n";
  }
}

int cmd_run(const std::string& scenario_arg, const std::string& out_dir,
            const std::string& formats, long long seed_override, int jobs) {
  Scenario sc;
  if (fs::exists(scenario_arg)) {
    sc = Scenario::load(scenario_arg);
  } else {
    // Convenience: a bare gallery name acts as a minimal scenario.
    sc.instance = scenario_arg;
    sc.label = scenario_arg;
  }
  if (seed_override >= 0) sc.seed = static_cast<std::uint64_t>(seed_override);

  Report rep = run_scenario(sc, jobs);
  print_summary(rep);

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    bool json = formats.find("json") != std::string::npos;
    bool csv = formats.find("csv") != std::string::npos;
    if (json) {
      std::ofstream f(fs::path(out_dir) / "report.json");
      f << rep.to_json().dump(2) << "\n";
      std::cout << "wrote " << (fs::path(out_dir) / "report.json").string() << "\n";
    }
    if (csv) {
      std::ofstream f(fs::path(out_dir) / "report.csv");
      f << rep.to_csv();
      std::cout << "wrote " << (fs::path(out_dir) / "report.csv").string() << "\n";
    }
  }
  return rep.pass() ? 0 : 1;
}

int cmd_verify(const std::string& suite, bool all_gallery, int jobs) {
  std::vector<std::string> suites;
  if (suite == "all") suites = all_suites();
  else suites = {suite};

  if (!all_gallery) {
    std::cerr << "verify currently requires --all-gallery\n";
    return 2;
  }
  bool ok = true;
  for (const auto& name : gallery_names()) {
    Scenario sc;
    sc.instance = name;
    sc.label = name;
    sc.suites = suites;
    Report rep = run_scenario(sc, jobs);
    bool p = rep.pass();
    ok = ok && p;
    std::cout << (p ? "PASS" : "FAIL") << "  " << name;
    for (const auto& s : rep.suites)
      std::cout << "  " << s.name << "=" << s.max_residual;
    std::cout << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"warpform: numerical immersions of warped products into space forms"};
  app.require_subcommand(1);

  CLI::App* gal = app.add_subcommand("gallery", "inspect the example gallery");
  gal->add_subcommand("list", "list gallery instances");

  std::string scenario_arg, out_dir, formats = "json";
  long long seed_override = -1;
  int jobs = 1;
  CLI::App* run = app.add_subcommand("run", "run a scenario file or gallery instance");
  run->add_option("scenario", scenario_arg, "scenario JSON file or gallery name")
      ->required();
  run->add_option("--out", out_dir, "output directory for reports");
  run->add_option("--format", formats, "comma list: json,csv");
  run->add_option("--seed", seed_override, "override the scenario seed");
  run->add_option("--jobs", jobs, "worker threads");

  std::string suite = "all";
  bool all_gallery = false;
  CLI::App* ver = app.add_subcommand("verify", "run verification suites");
  ver->add_option("--suite", suite, "suite name or 'all'");
  ver->add_flag("--all-gallery", all_gallery, "verify every gallery instance");
  ver->add_option("--jobs", jobs, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gal->parsed()) return cmd_gallery_list();
    if (run->parsed())
      return cmd_run(scenario_arg, out_dir, formats, seed_override, jobs);
    if (ver->parsed()) return cmd_verify(suite, all_gallery, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
