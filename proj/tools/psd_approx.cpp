#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "psda/errors.hpp"
#include "psda/numerics.hpp"
#include "psda/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitViolation = 4;

// Series-tail tolerance, overridable through the environment.
bool resolve_eps(double& eps) {
  eps = psda::kDefaultEps;
  const char* env = std::getenv("PSD_APPROX_EPS");
  if (env == nullptr) return true;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !(v <= 1e-3)) {
    std::cerr << "error: PSD_APPROX_EPS must be a number in (0, 1e-3], got: " << env << "\n";
    return false;
  }
  eps = v;
  return true;
}

bool all_cells_infeasible(const psda::ResultTable& table) {
  bool saw_cell = false;
  for (const auto& row : table.cells)
    for (const psda::ResultCell& cell : row) {
      saw_cell = true;
      if (cell.feasible) return false;
    }
  return saw_cell;
}

int run(const psda::Scenario& scenario, bool certify, double eps) {
  const psda::ResultTable table = psda::run_scenario(scenario, eps);
  const std::string text = psda::emit(table, scenario.format);
  if (!scenario.out_path.empty()) {
    std::ofstream out(scenario.out_path);
    if (!out) {
      std::cerr << "error: cannot write output file: " << scenario.out_path << "\n";
      return kExitFailure;
    }
    out << text;
    std::cerr << "wrote " << scenario.out_path << "\n";
  } else {
    std::cout << text;
  }

  int rc = all_cells_infeasible(table) ? kExitInfeasible : kExitOk;

  if (certify) {
    std::cerr.precision(9);
    for (const psda::ValidationReport& report : psda::certify_scenario(scenario)) {
      std::size_t checked = 0;
      for (const psda::CheckedEntry& e : report.entries)
        if (e.checked) ++checked;
      std::cerr << "certify " << report.spec_summary << ": " << checked << " of "
                << report.entries.size() << " bounds checked, " << report.violations.size()
                << " violations\n";
      for (const psda::CheckedEntry& e : report.entries)
        if (!e.checked && !e.note.empty())
          std::cerr << "  " << e.method << ": " << e.note << "\n";
      for (const psda::Violation& v : report.violations)
        std::cerr << "  VIOLATION " << v.method << ": bound " << v.bound
                  << " is below the exact distance " << v.oracle_tv << "\n";
      if (!report.violations.empty()) rc = kExitViolation;
    }
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total-variation error bounds for convolutions of power series distributions"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string format;
  std::string out_path;
  bool certify = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "markdown"}));
    sub->add_flag("--certify", certify, "Check every certified bound against the exact distance");
    sub->add_option("--out", out_path, "Write the table to a file instead of stdout");
  };

  CLI::App* cmd_run = app.add_subcommand("run", "Evaluate a scenario file");
  cmd_run->add_option("scenario", scenario_path, "Scenario file path")->required();
  add_common(cmd_run);
  CLI::App* cmd_t2 = app.add_subcommand("table2", "Built-in geometric convolution table");
  add_common(cmd_t2);
  CLI::App* cmd_t3 = app.add_subcommand("table3", "Built-in shifted-logarithmic convolution table");
  add_common(cmd_t3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  double eps = psda::kDefaultEps;
  if (!resolve_eps(eps)) return kExitParse;

  psda::Scenario scenario;
  try {
    if (cmd_run->parsed()) {
      scenario = psda::parse_scenario(scenario_path);
    } else {
      const char* name = cmd_t2->parsed() ? "table2" : "table3";
      scenario = psda::parse_scenario_text(psda::builtin_scenario_text(name), name);
    }
  } catch (const psda::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }

  if (!format.empty()) scenario.format = format;
  if (!out_path.empty()) scenario.out_path = out_path;

  try {
    return run(scenario, certify, eps);
  } catch (const psda::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
