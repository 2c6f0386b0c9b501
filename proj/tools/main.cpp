#include "cli/experiments.hpp"
#include "cli/sim_spec.hpp"

#include "hamwave/error.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <string>
#include <utility>

int main(int argc, char** argv) {
  using namespace hamwave::cli;

  CLI::App app{"Free-surface water waves in graph and arc-length coordinates"};
  app.require_subcommand(1);

  std::optional<std::string> config;
  Settings flags;
  std::string experiment;

  const std::pair<const char*, const char*> subcommands[] = {
      {"simulate", "evolve an initial state and write energies and snapshots"},
      {"dispersion", "measure the oscillation frequency of a small cosine mode"},
      {"gradcheck", "compare energy gradients with central finite differences"},
      {"dno-test", "compare the Dirichlet-to-Neumann operator with an exact solution"},
      {"equivalence", "evolve the same data in both charts and compare"},
  };
  for (const auto& [name, help] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "TOML configuration file");
    sub->add_option_function<std::string>("--m", [&](const std::string& v) { flags["m"] = v; }, "grid size M");
    sub->add_option_function<std::string>("--dt", [&](const std::string& v) { flags["dt"] = v; }, "time step");
    sub->add_option_function<std::string>("--t-end", [&](const std::string& v) { flags["t_end"] = v; }, "final time");
    sub->add_option_function<std::string>("--chart", [&](const std::string& v) { flags["chart"] = v; },
                                          "graph | arclength (gradcheck also: general)");
    sub->add_option_function<std::string>("--depth", [&](const std::string& v) { flags["depth"] = v; },
                                          "depth h or inf");
    sub->add_option_function<std::string>("--sigma", [&](const std::string& v) { flags["sigma"] = v; },
                                          "surface tension");
    sub->add_option_function<std::string>("--out", [&](const std::string& v) { flags["out"] = v; },
                                          "output directory");
    sub->add_option_function<std::string>("--seed", [&](const std::string& v) { flags["seed"] = v; },
                                          "seed for random states and directions");
    sub->add_option_function<std::string>("--eps", [&](const std::string& v) { flags["eps"] = v; },
                                          "finite-difference step");
    sub->add_option_function<std::string>("--solver", [&](const std::string& v) { flags["solver"] = v; },
                                          "bie | graph");
    sub->add_option_function<std::string>("--order", [&](const std::string& v) { flags["order"] = v; },
                                          "operator expansion order");
    sub->add_option_function<std::string>("--oracle", [&](const std::string& v) { flags["oracle"] = v; },
                                          "dno-test reference: flat | harmonic | constant");
    sub->add_option_function<std::string>("--initial", [&](const std::string& v) { flags["initial"] = v; },
                                          "cosine | steep | file");
    sub->add_option_function<std::string>("--a", [&](const std::string& v) { flags["a"] = v; }, "amplitude");
    sub->add_option_function<std::string>("--k", [&](const std::string& v) { flags["k"] = v; }, "mode number");
    sub->add_option_function<std::string>("--b", [&](const std::string& v) { flags["b"] = v; },
                                          "potential amplitude");
    sub->add_option_function<std::string>("--scheme", [&](const std::string& v) { flags["scheme"] = v; },
                                          "rk4 | implicit-midpoint");
    sub->callback([&experiment, name] { experiment = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    flags["experiment"] = experiment;
    const SimSpec spec = parse_spec(config ? std::optional<std::filesystem::path>(*config) : std::nullopt, flags);
    for (const auto& [key, value] : describe(spec)) std::clog << key << " = " << value << '\n';
    const int status = run_experiment(spec);
    std::clog << experiment << ": " << (status == 0 ? "ok" : "halted") << " (see " << (spec.out / "summary.json").string()
              << ")\n";
    return status;
  } catch (const hamwave::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
