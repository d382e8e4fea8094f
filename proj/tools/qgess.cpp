// qgess: run scenario configs and reproduce the bundled case catalog.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qgess/catalog.hpp"
#include "qgess/scenario.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int cmd_run(const std::string& config_path, const std::string& out_path, const std::string& csv_dir) {
  const nlohmann::json cfg = qgess::parse_config_text(read_file(config_path));
  const qgess::ScenarioOutput result = qgess::run_scenario(cfg, !csv_dir.empty());
  const std::string text = qgess::render_report(result.report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
  if (!csv_dir.empty()) {
    fs::create_directories(csv_dir);
    for (const qgess::CsvFile& f : result.csv) write_file(fs::path(csv_dir) / f.name, f.content);
  }
  return 0;
}

int cmd_reproduce(const std::string& id) {
  std::vector<const qgess::CatalogCase*> cases;
  if (id == "all") {
    for (const qgess::CatalogCase& c : qgess::catalog()) cases.push_back(&c);
  } else if (const qgess::CatalogCase* c = qgess::find_case(id)) {
    cases.push_back(c);
  } else {
    std::cerr << "error: unknown case id '" << id << "' (see list-cases)\n";
    return kExitConfig;
  }
  const auto start = std::chrono::steady_clock::now();
  std::size_t failed = 0;
  for (const qgess::CatalogCase* c : cases) {
    const qgess::CaseResult r = qgess::reproduce_case(*c);
    for (const qgess::CheckLine& line : r.lines) std::cout << qgess::format_line(r.id, line) << '\n';
    char summary[160];
    std::snprintf(summary, sizeof summary, "%s  %s  (%.2f s)\n", r.passed ? "CASE-PASS" : "CASE-FAIL",
                  r.id.c_str(), r.seconds);
    std::cout << summary << std::flush;
    failed += !r.passed;
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char summary[160];
  std::snprintf(summary, sizeof summary, "%zu of %zu cases passed in %.2f s\n",
                cases.size() - failed, cases.size(), total);
  std::cout << summary;
  return failed == 0 ? 0 : kExitFail;
}

int cmd_list(const std::string& export_dir) {
  for (const qgess::CatalogCase& c : qgess::catalog()) {
    std::cout << c.id << "  " << c.title << '\n';
  }
  if (export_dir.empty()) return 0;
  for (const qgess::CatalogCase& c : qgess::catalog()) {
    const fs::path dir = fs::path(export_dir) / c.id;
    fs::create_directories(dir);
    for (const qgess::NamedConfig& n : c.configs) {
      write_file(dir / (n.name + ".json"), n.config.dump(2) + "\n");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Payoffs, Nash equilibria and evolutionary stability of quantized matrix games"};
  app.set_version_flag("--version", qgess::library_version());
  app.require_subcommand(1);

  std::string config_path, out_path, csv_dir;
  CLI::App* run = app.add_subcommand("run", "Run a scenario config and print its JSON report");
  run->add_option("config", config_path, "Scenario config (JSON)")->required();
  run->add_option("--out", out_path, "Write the report here instead of stdout");
  run->add_option("--csv", csv_dir, "Directory for trajectory and grid-scan CSV files");

  std::string case_id;
  CLI::App* reproduce = app.add_subcommand("reproduce", "Check a catalog case, or all of them");
  reproduce->add_option("case", case_id, "Case id or 'all'")->required();

  std::string export_dir;
  CLI::App* list = app.add_subcommand("list-cases", "List catalog case ids");
  list->add_option("--export", export_dir, "Write every bundled config under this directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, out_path, csv_dir);
    if (*reproduce) return cmd_reproduce(case_id);
    if (*list) return cmd_list(export_dir);
  } catch (const qgess::ConfigError& e) {
    std::cerr << "config error at " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitFail;
}
