#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "hslab/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"half-space boundary value laboratory"};
  app.name("hslab");

  std::string task, config, out;
  std::uint64_t seed = 1;
  int threads = 0;

  app.add_option("task", task, "one of check-ellipticity, check-ls, build-kernel, "
                               "solve-elliptic, solve-parabolic, norms, verify")
      ->required()
      ->check(CLI::IsMember(hslab::cfg::known_tasks()));
  app.add_option("--config", config, "run configuration (JSON)")->required();
  app.add_option("--out", out, "output directory (overrides the config)");
  app.add_option("--seed", seed, "global seed (overrides the config)");
  app.add_option("--threads", threads, "worker threads (overrides config and HSLAB_THREADS)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? 0 : hslab::kInputError;
  }

  hslab::RunOverrides ov;
  ov.out = out;
  if (app.count("--seed") > 0) {
    ov.has_seed = true;
    ov.seed = seed;
  }
  ov.threads = threads;
  return hslab::run_config_file(config, ov, std::cout, task);
}
