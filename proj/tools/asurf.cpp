#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"

#include "asurf/grid.hpp"
#include "asurf/metrics.hpp"
#include "asurf/model.hpp"
#include "asurf/parser.hpp"
#include "asurf/partition.hpp"
#include "asurf/paths.hpp"
#include "asurf/report.hpp"

namespace {

using namespace asurf;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool use_color() {
  static bool enabled = isatty(fileno(stdout)) && !std::getenv("NO_COLOR");
  return enabled;
}

std::string severity_tag(Severity s) {
  std::string name = to_string(s);
  if (!use_color()) return name;
  const char* code = s == Severity::Error ? "\033[31m" : "\033[33m";
  return code + name + "\033[0m";
}

void print_diagnostics(const std::string& model_name,
                       const std::vector<Diagnostic>& diags,
                       const std::string& format) {
  if (format == "json") {
    std::cout << diagnostics_json(model_name, diags).dump(2) << "\n";
    return;
  }
  for (const auto& d : diags)
    std::cout << severity_tag(d.severity) << " " << d.location << " [" << d.rule
              << "] " << d.message << "\n";
}

SystemModel load_model(const std::string& path) {
  SystemModel model = parse_model(read_file(path), path);
  auto diags = validate(model);
  if (has_errors(diags))
    throw Error("model '" + path + "' failed validation");
  return model;
}

// Loads imp(d) from the CSV or the grid file and applies it to the model.
// The CSV wins when both are given.
void load_impacts(SystemModel& model, const std::string& impact_path,
                  const std::string& grid_path) {
  if (!impact_path.empty() && !grid_path.empty())
    std::cerr << "warning: both --impact and --grid given; the CSV wins\n";
  if (!impact_path.empty()) {
    ImpactTable table = parse_impact_table(read_file(impact_path), impact_path);
    apply_impacts(model, table.loss_kw);
  } else if (!grid_path.empty()) {
    GridGraph grid = parse_grid(read_file(grid_path), grid_path);
    apply_impacts(model, compute_impact_table(grid));
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Attack surface analyzer for cyber-physical system models"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();

  std::string model_path, impact_path, grid_path, scenario_path;
  std::vector<std::string> open_branches;
  bool all_impacts = false;
  int k = 0;
  std::string mode;
  bool by_substation = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check a model");
  validate_cmd->add_option("model", model_path, "ASM-DL model file")->required();

  auto* paths_cmd = app.add_subcommand("paths", "List attack paths");
  paths_cmd->add_option("model", model_path, "ASM-DL model file")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "Compute attack surface");
  analyze_cmd->add_option("model", model_path, "ASM-DL model file")->required();
  analyze_cmd->add_option("--impact", impact_path, "Impact CSV");
  analyze_cmd->add_option("--grid", grid_path, "Grid file");

  auto* impact_cmd = app.add_subcommand("impact", "Grid loss-of-load");
  impact_cmd->add_option("grid", grid_path, "Grid file")->required();
  impact_cmd->add_option("--open", open_branches, "Branches to open");
  impact_cmd->add_flag("--all", all_impacts, "Impact of every controlled datum");

  auto* optimize_cmd = app.add_subcommand("optimize", "Evaluate or search splits");
  optimize_cmd->add_option("model", model_path, "ASM-DL model file")->required();
  optimize_cmd->add_option("--scenario", scenario_path, "Scenario file")
      ->required();
  optimize_cmd->add_option("--impact", impact_path, "Impact CSV");
  optimize_cmd->add_option("--grid", grid_path, "Grid file");
  optimize_cmd->add_option("--k", k, "Number of groups (search mode)");
  optimize_cmd->add_option("--mode", mode, "Search mode")
      ->check(CLI::IsMember({"exhaustive", "greedy"}));
  optimize_cmd->add_flag("--by-substation", by_substation,
                         "Assign whole substations instead of single data items");

  // Let global options (--format) appear after the subcommand name too.
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) {
      std::vector<Diagnostic> diags;
      std::string name;
      try {
        SystemModel model = parse_model(read_file(model_path), model_path);
        name = model.name;
        diags = validate(model);
      } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
      }
      print_diagnostics(name, diags, format);
      return has_errors(diags) ? 1 : 0;
    }

    if (*paths_cmd) {
      SystemModel model = load_model(model_path);
      auto paths = enumerate_attack_paths(model);
      if (format == "json") {
        Json j;
        j["model"] = model.name;
        j["paths"] = Json::array();
        for (const auto& p : paths) {
          Json pj;
          pj["connection"] = p.connection;
          pj["untrusted_end"] = p.untrusted_end;
          pj["trusted_process"] = p.trusted_process;
          j["paths"].push_back(pj);
        }
        std::cout << j.dump(2) << "\n";
      } else if (format == "csv") {
        std::cout << "connection,untrusted_end,trusted_process\n";
        for (const auto& p : paths)
          std::cout << p.connection << ',' << p.untrusted_end << ','
                    << p.trusted_process << '\n';
      } else {
        for (const auto& p : paths)
          std::cout << p.connection << "  " << p.untrusted_end << " -> "
                    << p.trusted_process << "\n";
        std::cout << paths.size() << " attack path(s)\n";
      }
      return 0;
    }

    if (*analyze_cmd) {
      SystemModel model = load_model(model_path);
      load_impacts(model, impact_path, grid_path);
      SurfaceReport report = total_attack_surface(model);
      if (format == "json")
        std::cout << surface_report_json(model.name, report).dump(2) << "\n";
      else if (format == "csv")
        std::cout << surface_report_csv(report);
      else
        std::cout << surface_report_text(model.name, report);
      return 0;
    }

    if (*impact_cmd) {
      GridGraph grid = parse_grid(read_file(grid_path), grid_path);
      auto diags = validate_grid(grid);
      if (has_errors(diags)) {
        print_diagnostics(grid_path, diags, format);
        return 1;
      }
      if (all_impacts && !open_branches.empty())
        throw CLI::ValidationError("impact", "--open and --all are exclusive");
      if (all_impacts) {
        ImpactTable table = grid_impact_table(grid);
        if (format == "json") {
          Json j;
          j["grid"] = grid_path;
          j["total_load_kw"] = grid.total_load_kw();
          j["impact"] = Json::object();
          for (const auto& [name, loss] : table.loss_kw)
            j["impact"][name] = loss;
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "data,load_kw,loss_kw\n";
          for (const auto& [name, loss] : table.loss_kw)
            std::cout << name << ',' << fmt6(table.load_kw.at(name)) << ','
                      << fmt6(loss) << '\n';
        }
      } else {
        std::set<std::string> open(open_branches.begin(), open_branches.end());
        double loss = loss_of_load(grid, open);
        if (format == "json") {
          Json j;
          j["grid"] = grid_path;
          j["open"] = open;
          j["loss_kw"] = loss;
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << fmt6(loss) << " kW\n";
        }
      }
      return 0;
    }

    if (*optimize_cmd) {
      SystemModel model = load_model(model_path);
      load_impacts(model, impact_path, grid_path);
      PartitionAssignment asg =
          parse_scenario(read_file(scenario_path), scenario_path);

      PartitionResult result;
      if (!mode.empty()) {
        std::vector<SecurityProfile> profiles;
        for (const auto& g : asg.groups) profiles.push_back(g.profile);
        int kk = k > 0 ? k : (int)profiles.size();
        result = optimize_partition(
            model, kk, profiles,
            mode == "greedy" ? SearchMode::Greedy : SearchMode::Exhaustive,
            by_substation ? Granularity::PerSubstation : Granularity::PerDatum,
            asg.split_process);
      } else {
        result = evaluate_partition(model, asg);
      }
      for (const auto& w : result.warnings)
        std::cerr << to_string(w.severity) << " " << w.location << " ["
                  << w.rule << "] " << w.message << "\n";

      if (format == "json") {
        std::cout << partition_result_json(model.name, result).dump(2) << "\n";
      } else if (format == "csv") {
        std::cout << surface_report_csv(result.report);
      } else {
        std::cout << "split: " << result.assignment.split_process << "\n";
        for (const auto& g : result.assignment.groups) {
          std::cout << "group " << g.profile.name << ":";
          for (const auto& d : g.data) std::cout << " " << d;
          std::cout << "\n";
        }
        std::cout << surface_report_text(model.name, result.report);
      }
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
