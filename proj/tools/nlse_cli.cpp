// Command-line driver: evolves the three pulse-propagation models, runs the
// closeness / convergence / bound-sweep experiments and the integrability
// check, and writes CSV/JSON/SVG reports.

#include <CLI11.hpp>
#include <iostream>

#include "nlse/errors.hpp"
#include "nlse/experiments.hpp"

namespace {

int exit_code_for(const nlse::Error& e) {
  switch (e.code()) {
    case nlse::ErrorCode::ConfigError:
    case nlse::ErrorCode::InvalidDomain:
    case nlse::ErrorCode::InvalidSize:
    case nlse::ErrorCode::InvalidWidth:
    case nlse::ErrorCode::InvalidParams:
    case nlse::ErrorCode::InsufficientGrid:
    case nlse::ErrorCode::Precondition:
    case nlse::ErrorCode::Io:
      return nlse::kExitConfigError;
    default:
      return nlse::kExitNumericalFailure;
  }
}

std::string resolve_out(const std::string& cli_out,
                        const nlse::ExperimentConfig& cfg) {
  return cli_out.empty() ? cfg.output.directory : cli_out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative/integrable NLSE laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<double> epsilons, deltas;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "evolve one model");
  add_common(simulate);
  CLI::App* closeness =
      app.add_subcommand("closeness", "distance-vs-bound experiment");
  add_common(closeness);
  CLI::App* convergence =
      app.add_subcommand("convergence", "split-step order study");
  add_common(convergence);
  CLI::App* sweep = app.add_subcommand("sweep", "bound tabulation");
  add_common(sweep);
  sweep->add_option("--epsilons", epsilons, "tolerance values")
      ->delimiter(',');
  sweep->add_option("--deltas", deltas, "initial moment bounds")
      ->delimiter(',');
  CLI::App* painleve =
      app.add_subcommand("painleve-check", "coefficient-family integrability");
  add_common(painleve);

  CLI11_PARSE(app, argc, argv);

  try {
    const nlse::ExperimentConfig cfg = nlse::load_config(config_path);
    const std::string dir = resolve_out(out_dir, cfg);

    if (simulate->parsed()) {
      const auto rep = nlse::run_simulate(cfg);
      nlse::write_simulate_outputs(rep, cfg, dir);
      std::cout << "simulate: " << rep.trajectory.z_values.size()
                << " snapshots, mass drift " << rep.mass_drift << "\n";
      return nlse::kExitOk;
    }
    if (closeness->parsed()) {
      const auto rep = nlse::run_closeness(cfg);
      nlse::write_closeness_outputs(rep, cfg, dir);
      std::cout << "closeness: delta = " << rep.delta
                << ", L_run = " << rep.L_run
                << ", L(eps) = " << rep.L_of_epsilon << "\n"
                << "domination " << (rep.domination_pass ? "PASS" : "FAIL")
                << ", distance < epsilon "
                << (rep.distance_within_epsilon ? "yes" : "no") << "\n";
      for (const auto& v : rep.violations) std::cout << "  " << v << "\n";
      return rep.exit_code();
    }
    if (convergence->parsed()) {
      const auto rep = nlse::run_convergence(cfg);
      nlse::write_convergence_outputs(rep, cfg, dir);
      std::cout << "convergence: fitted order " << rep.fitted_order << " ("
                << (rep.order_ok ? "ok" : "outside [1.8, 2.2]") << ")\n";
      return nlse::kExitOk;
    }
    if (sweep->parsed()) {
      const auto rep = nlse::run_bound_sweep(cfg, epsilons, deltas);
      nlse::write_sweep_outputs(rep, cfg, dir);
      std::cout << "sweep: " << rep.epsilon_table.size() << " epsilon rows, "
                << rep.delta_table.size() << " delta rows\n";
      return nlse::kExitOk;
    }
    if (painleve->parsed()) {
      const auto rep = nlse::run_painleve_check(cfg);
      nlse::write_painleve_outputs(rep, cfg, dir);
      std::cout << "painleve-check: max |residual| = " << rep.max_abs_residual
                << (rep.integrable ? " (integrable)" : " (not integrable)")
                << "\n";
      return nlse::kExitOk;
    }
  } catch (const nlse::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return nlse::kExitNumericalFailure;
  }
  return nlse::kExitOk;
}
