// isotopy_cli run|check|frames --scenario NAME [--depth N] [--horizon H]
//             [--tol T] [--seed S] [--out DIR] [--times t1,t2,...]
#include <iostream>

#include <CLI11.hpp>

#include "isotopy/cli.hpp"

int main(int argc, char** argv) {
  using namespace isotopy::cli;
  CLI::App app{"Countable move sequences: hypotheses, probes, frames"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto add_flags = [&cfg](CLI::App* sub) {
    sub->add_option("--scenario", cfg.scenario, "scenario name")->required();
    sub->add_option("--depth", cfg.depth, "truncation depth n");
    sub->add_option("--horizon", cfg.horizon, "hypothesis horizon");
    sub->add_option("--tol", cfg.tol, "limit-evaluation tolerance");
    sub->add_option("--seed", cfg.seed, "probe seed");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--times", cfg.times, "frame times, comma-separated")->delimiter(',');
  };
  auto* run = app.add_subcommand("run", "run a scenario and write its report");
  auto* check = app.add_subcommand("check", "hypothesis check only");
  auto* frames = app.add_subcommand("frames", "write freeze-frames of the glued isotopy");
  for (auto* s : {run, check, frames}) add_flags(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : usage;
  }
  if (*run) return cmd_run(cfg, std::cerr);
  if (*check) return cmd_check(cfg, std::cout);
  return cmd_frames(cfg, std::cerr);
}
