#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "cylnls/errors.hpp"
#include "cylnls/experiment.hpp"
#include "cylnls/version.hpp"

namespace {

int do_validate(const std::string& config_path) {
  const cylnls::ExperimentSpec spec = cylnls::parse_config(config_path);
  std::printf("%s: valid\n", config_path.c_str());
  std::fputs(cylnls::render_spec(spec).c_str(), stdout);
  return 0;
}

int do_run(const std::string& config_path, const std::string& out_override,
           bool seed_given, std::uint64_t seed_override) {
  cylnls::ExperimentSpec spec = cylnls::parse_config(config_path);
  if (!out_override.empty()) spec.out_dir = out_override;
  if (seed_given) {
    spec.seed = seed_override;
    spec.seed_set = true;
  }
  const cylnls::ExperimentReport report = cylnls::run_experiment(spec);
  for (const cylnls::CheckResult& c : report.checks) {
    std::printf("%-28s %s (%.6g %s %.6g)\n", c.name.c_str(),
                c.passed ? "PASS" : "FAIL", c.value, c.relation.c_str(),
                c.threshold);
  }
  std::printf("verdict: %s (outputs in %s)\n",
              cylnls::to_string(report.verdict).c_str(), spec.out_dir.c_str());
  return report.verdict == cylnls::Verdict::Pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral NLS simulator and diagnostics on R^d x T"};
  app.set_version_flag("--version", cylnls::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::uint64_t seed_override = 0;

  CLI::App* run = app.add_subcommand("run", "execute an experiment config");
  run->add_option("config", config_path, "config file path")->required();
  run->add_option("--out", out_override, "override the output directory");
  CLI::Option* seed_opt =
      run->add_option("--seed", seed_override, "override the rng seed");

  CLI::App* validate =
      app.add_subcommand("validate", "parse a config and print the resolved spec");
  validate->add_option("config", config_path, "config file path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(validate)) return do_validate(config_path);
    return do_run(config_path, out_override, seed_opt->count() > 0,
                  seed_override);
  } catch (const cylnls::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
