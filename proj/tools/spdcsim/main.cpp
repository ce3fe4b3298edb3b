#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>

#include "commands.hpp"
#include "default_config.hpp"
#include "spdc/config.hpp"
#include "spdc/errors.hpp"
#include "spdc/parallel.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_other = 1;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

struct Flags {
  std::string config_path;
  std::vector<std::string> assignments;
  std::string out_dir;
  int threads = -1;
  bool json = false;
  bool print_config = false;
  std::map<std::string, std::string> shortcuts;  // config key -> value
};

void add_shortcut(CLI::App& app, Flags& flags, const std::string& name, const std::string& key,
                  const std::string& help) {
  app.add_option_function<std::string>(
      name, [&flags, key](const std::string& value) { flags.shortcuts[key] = value; }, help + " (" + key + ")");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-pair spectra, rates and temporal correlations of periodic, random and chirped poled crystals"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("-c,--config", flags.config_path, "Configuration file layered over the built-in defaults");
  app.add_option("-s,--set", flags.assignments, "Override one key: section.key=value (repeatable)");
  app.add_option("-o,--out", flags.out_dir, "Output directory (overrides SPDCSIM_OUT_DIR and output.directory)");
  app.add_option("-t,--threads", flags.threads, "Worker threads, 0 = all cores (run.threads)");
  app.add_flag("--json", flags.json, "Print results as JSON where supported");
  app.add_flag("--print-config", flags.print_config, "Print the resolved configuration and exit");
  add_shortcut(app, flags, "--pump-nm", "pump.wavelength_nm", "Pump wavelength in nm");
  add_shortcut(app, flags, "--power-mw", "pump.power_mw", "Pump power in mW");
  add_shortcut(app, flags, "--kind", "structure.kind", "periodic | random | chirped | ensemble");
  add_shortcut(app, flags, "--domains", "structure.domains", "Number of domains");
  add_shortcut(app, flags, "--sigma-um", "structure.sigma_um", "Domain-length spread parameter in um");
  add_shortcut(app, flags, "--zeta", "structure.zeta_per_m2", "Chirp parameter in m^-2");
  add_shortcut(app, flags, "--seed", "structure.seed", "Seed of a single random stack");
  add_shortcut(app, flags, "--samples", "grid.samples", "Spectral grid size");
  add_shortcut(app, flags, "--realizations", "ensemble.realizations", "Monte Carlo ensemble size");
  add_shortcut(app, flags, "--base-seed", "ensemble.base_seed", "Ensemble base seed");
  add_shortcut(app, flags, "--compensation", "sumfreq.compensation", "none | ideal | quadratic");

  const std::vector<std::pair<std::string, std::pair<std::string, std::function<int(const spdcsim::Run&)>>>> commands{
      {"l0", {"Base domain length pi / delta_k0", spdcsim::cmd_l0}},
      {"spectrum", {"Pair-number and signal spectrum of the configured structure", spdcsim::cmd_spectrum}},
      {"fig1", {"Pair rate against number of domains for several sigma", spdcsim::cmd_fig1}},
      {"fig2", {"Chirped bandwidth, matched sigma and rate ratio against zeta", spdcsim::cmd_fig2}},
      {"fig3", {"Signal spectra of one realization, the chirped crystal and the ensemble", spdcsim::cmd_fig3}},
      {"fig4", {"HOM dips and sum-frequency traces for the fig3 structures", spdcsim::cmd_fig4}},
      {"hom", {"HOM coincidence trace of the configured structure", spdcsim::cmd_hom}},
      {"sumfreq", {"Sum-frequency temporal trace of the configured structure", spdcsim::cmd_sumfreq}},
      {"mc", {"Monte Carlo ensemble spectrum with the analytic average and convergence check", spdcsim::cmd_mc}},
  };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  try {
    spdcsim::Run run;
    run.json = flags.json;
    run.config = spdc::KeyValueConfig::parse_string(spdcsim::default_config_text);
    if (!flags.config_path.empty()) run.config.merge(spdc::KeyValueConfig::load(flags.config_path));
    if (const char* env = std::getenv("SPDCSIM_OUT_DIR"); env != nullptr && *env != '\0') {
      run.config.set("output.directory", env);
    }
    for (const auto& assignment : flags.assignments) run.config.set_assignment(assignment);
    for (const auto& [key, value] : flags.shortcuts) run.config.set(key, value);
    if (!flags.out_dir.empty()) run.config.set("output.directory", flags.out_dir);
    if (flags.threads >= 0) run.config.set("run.threads", std::to_string(flags.threads));
    if (flags.print_config) {
      std::cout << run.config.to_string();
      return exit_ok;
    }
    const auto threads = run.config.get_int("run.threads");
    if (threads < 0) throw spdc::ConfigError("run.threads must be >= 0");
    spdc::set_default_thread_count(static_cast<unsigned>(threads));
    run.out_dir = run.config.get_string("output.directory");

    for (const auto& [name, entry] : commands) {
      if (app.got_subcommand(name)) {
        run.command = name;
        return entry.second(run);
      }
    }
    return exit_other;
  } catch (const spdc::ConfigError& e) {
    std::cerr << "spdcsim: configuration error: " << e.what() << '\n';
    return exit_config;
  } catch (const spdc::ArgumentError& e) {
    std::cerr << "spdcsim: invalid argument: " << e.what() << '\n';
    return exit_config;
  } catch (const spdc::NumericalDomainError& e) {
    std::cerr << "spdcsim: numerical domain error: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::exception& e) {
    std::cerr << "spdcsim: error: " << e.what() << '\n';
    return exit_other;
  }
}
