#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "driveshaft/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Laminated drive shaft analysis and driveline optimization"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string fixtures = "all";
  std::uint64_t seed = 0;
  int threads = 0;

  CLI::App* analyze =
      app.add_subcommand("analyze", "Report one shaft design in full");
  analyze->add_option("--config", config_path, "Scenario file (INI)")
      ->required();
  analyze->add_option("--out", out_dir, "Directory receiving analyze.csv");

  CLI::App* optimize =
      app.add_subcommand("optimize", "Run the configured GA scenario");
  optimize->add_option("--config", config_path, "Scenario file (INI)")
      ->required();
  optimize->add_option("--out", out_dir,
                       "Directory receiving history.csv and best_design.ini");
  CLI::Option* seed_opt =
      optimize->add_option("--seed", seed, "Master RNG seed override");
  optimize->add_option("--threads", threads,
                       "Fitness evaluation threads override");

  CLI::App* validate =
      app.add_subcommand("validate", "Compare against published test cases");
  validate->add_option(
      "--fixtures", fixtures,
      "Family: rig, table2, table3, table4, table5, pvc, mass, torsion, "
      "stability, all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? driveshaft::kExitOk : driveshaft::kExitConfigError;
  }

  try {
    if (app.got_subcommand(analyze)) {
      const driveshaft::ScenarioConfig config =
          driveshaft::load_scenario(config_path);
      return driveshaft::cmd_analyze(config, std::cout, out_dir);
    }
    if (app.got_subcommand(optimize)) {
      const driveshaft::ScenarioConfig config =
          driveshaft::load_scenario(config_path);
      return driveshaft::cmd_optimize(config, std::cout, out_dir, seed,
                                      seed_opt->count() > 0, threads);
    }
    return driveshaft::cmd_validate(fixtures, std::cout);
  } catch (const driveshaft::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return driveshaft::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return driveshaft::kExitFailure;
  }
}
