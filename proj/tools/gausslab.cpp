// Experiment runner: seeded verification gates with CSV/JSON report output.
#include <CLI11.hpp>
#include <json.hpp>

#include "gausslab/moments.hpp"
#include "gausslab/report.hpp"
#include "gausslab/verify.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace gausslab;

namespace {

constexpr const char* kVersion = "1.0.0";

struct RunSettings {
  VerifyOptions options;
  std::string out_dir = "out";
  std::vector<double> p_grid = {1.0, 2.0, 3.0, 4.0};
  std::string config_text;  // raw bytes, hashed into the manifest
};

// Merge the JSON config (if any) under the CLI flags; flags win.
void load_config(const std::string& path, RunSettings& settings,
                 const CLI::App& app) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  settings.config_text = buffer.str();
  json config;
  try {
    config = json::parse(settings.config_text);
  } catch (const json::parse_error& err) {
    throw CLI::ValidationError("--config", std::string("parse error: ") +
                                               err.what());
  }
  if (config.contains("seed") && app.count("--seed") == 0)
    settings.options.seed = config["seed"].get<std::uint64_t>();
  if (config.contains("mc_samples") && app.count("--mc-samples") == 0)
    settings.options.mc_samples = config["mc_samples"].get<int>();
  if (config.contains("quad_order") && app.count("--quad-order") == 0)
    settings.options.quad_order = config["quad_order"].get<int>();
  if (config.contains("out") && app.count("--out") == 0)
    settings.out_dir = config["out"].get<std::string>();
  if (config.contains("p_grid")) {
    settings.p_grid = config["p_grid"].get<std::vector<double>>();
    if (settings.p_grid.empty())
      throw CLI::ValidationError("--config", "p_grid must be non-empty");
  }
  if (settings.options.mc_samples < 1)
    throw CLI::ValidationError("--config", "mc_samples must be positive");
  if (settings.options.quad_order < 2)
    throw CLI::ValidationError("--config", "quad_order must be at least 2");
}

int emit_reports(const RunSettings& settings,
                 const std::vector<CriterionResult>& results) {
  fs::create_directories(settings.out_dir);
  json manifest;
  manifest["code_version"] = kVersion;
  manifest["seed"] = settings.options.seed;
  manifest["config_hash"] =
      stable_hash(settings.config_text + "|seed=" +
                  std::to_string(settings.options.seed) + "|mc=" +
                  std::to_string(settings.options.mc_samples) + "|quad=" +
                  std::to_string(settings.options.quad_order));
  manifest["timestamp"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  json checks = json::array();
  bool all_pass = true;
  for (const CriterionResult& r : results) {
    json entry;
    entry["id"] = r.id;
    entry["name"] = r.name;
    entry["pass"] = r.pass;
    entry["detail"] = r.detail;
    json files = json::array();
    for (const auto& [table, content] : r.tables) {
      fs::path csv = fs::path(settings.out_dir) / (table + ".csv");
      std::ofstream out(csv, std::ios::binary);
      out << content;
      files.push_back(csv.string());
    }
    fs::path check_json = fs::path(settings.out_dir) / (r.name + ".json");
    {
      json detail;
      detail["id"] = r.id;
      detail["name"] = r.name;
      detail["pass"] = r.pass;
      detail["seconds"] = r.seconds;
      detail["detail"] = r.detail;
      std::ofstream out(check_json, std::ios::binary);
      out << detail.dump(2) << "\n";
    }
    files.push_back(check_json.string());
    entry["files"] = files;
    checks.push_back(entry);
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": "
              << r.detail << "\n";
  }
  manifest["checks"] = checks;
  manifest["all_pass"] = all_pass;
  std::ofstream out(fs::path(settings.out_dir) / "manifest.json",
                    std::ios::binary);
  out << manifest.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

// K(p) table over the configured grid, recomputed from the constants module.
CriterionResult k_table(const RunSettings& settings) {
  CriterionResult result{0, "k_table", true, 0.0, "", {}};
  CsvTable table({"p", "k_constant"});
  for (double p : settings.p_grid) table.add_numeric_row({p, k_constant(p)});
  result.detail = "K(p) over " + std::to_string(settings.p_grid.size()) +
                  " grid points";
  result.tables.push_back({"k_table", table.content()});
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian calculus verification laboratory"};
  app.require_subcommand(1);

  RunSettings settings;
  std::string config_path;
  app.add_option("--config", config_path, "JSON configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", settings.options.seed, "base RNG seed");
  app.add_option("--out", settings.out_dir, "output directory");
  app.add_option("--mc-samples", settings.options.mc_samples,
                 "Monte Carlo sample count");
  app.add_option("--quad-order", settings.options.quad_order,
                 "Gauss-Hermite order per dimension");

  std::vector<std::pair<CLI::App*, std::function<std::vector<CriterionResult>()>>>
      commands;
  auto add = [&](const char* name, const char* help,
                 std::function<std::vector<CriterionResult>()> run) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();  // global flags may follow the subcommand name
    commands.push_back({sub, std::move(run)});
  };
  const VerifyOptions& opt = settings.options;
  add("constants", "moment constants against quadrature", [&] {
    return std::vector<CriterionResult>{k_table(settings),
                                        verify_constants(opt)};
  });
  add("wick", "pairing sums against Monte Carlo",
      [&] { return std::vector<CriterionResult>{verify_pairing_sums(opt)}; });
  add("moments", "exponential/absolute moment and translation identities",
      [&] {
        return std::vector<CriterionResult>{
            verify_moment_identities(opt), verify_translation_identity(opt)};
      });
  add("extend", "finite-dimensional extension rate bounds", [&] {
    return std::vector<CriterionResult>{verify_extension_rates(opt),
                                        verify_quadratic_form_bounds(opt),
                                        verify_product_bounds(opt)};
  });
  add("heat", "smoothing operator identities", [&] {
    return std::vector<CriterionResult>{
        verify_heat_closed_forms(opt), verify_semigroup(opt),
        verify_laplacian_commutation(opt), verify_rotation_covariance(opt),
        verify_multiplication_commutator(opt)};
  });
  add("expand", "series expansion of the smoothing operator", [&] {
    return std::vector<CriterionResult>{verify_generator_expansion(opt)};
  });
  add("verify-all", "the full acceptance gate suite",
      [&] { return run_verification(opt); });

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) load_config(config_path, settings, app);
    for (const auto& [sub, run] : commands)
      if (sub->parsed()) return emit_reports(settings, run());
  } catch (const CLI::ValidationError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
