// Command-line runner: every subcommand reads a config file (flags can
// override the common options) and writes CSV/JSON artifacts.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "qhj/config.hpp"
#include "qhj/errors.hpp"
#include "qhj/runner.hpp"
#include "qhj/trajectory.hpp"

namespace {

qhj::Config load_or_synthesize(const std::string& config_path, const std::string& kind,
                               const std::vector<std::string>& inline_keys) {
  std::string text;
  if (!config_path.empty()) {
    return qhj::Config::load(config_path);
  }
  text += "[experiment]\nkind = \"" + kind + "\"\n";
  std::string section;
  for (const auto& kv : inline_keys) text += kv + "\n";
  return qhj::Config::parse(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum Hamilton-Jacobi momentum fields, higher-order trajectory "
               "mechanics, and the electron-biprism reconstruction"};
  app.require_subcommand(1);

  std::string config_path;
  qhj::RunOptions opt;
  opt.threads = 0;
  app.add_option("--config", config_path, "config file (sectioned key = value)")
      ->envname("QHJ_CONFIG");
  app.add_option("--out-dir", opt.out_dir, "output directory");
  app.add_option("--threads", opt.threads, "worker threads (0 = all cores)")
      ->envname("QHJ_THREADS");
  app.add_option("--tolerance", opt.tolerance, "integrator tolerance override");

  auto* quantize = app.add_subcommand("quantize", "bound-state energies");
  std::string potential = "harmonic";
  int count = 5;
  double e_min = 1e-4, e_max = 10.0;
  quantize->add_option("--potential", potential, "free|harmonic|square_well");
  quantize->add_option("--count", count);
  quantize->add_option("--e-min", e_min);
  quantize->add_option("--e-max", e_max);

  auto* momentum = app.add_subcommand("momentum-field", "p and quantum potential on a grid");
  double energy = 0.5, l1 = -1.0, l2 = 0.0;
  momentum->add_option("--potential", potential);
  momentum->add_option("--energy", energy);
  momentum->add_option("--l1", l1);
  momentum->add_option("--l2", l2);

  auto* homech = app.add_subcommand("homech", "fourth-order trajectory diagnostics");
  double eps1 = 0.01, eps2 = 0.0, h_energy = 1.0, periods = 10.0;
  homech->add_option("--eps1", eps1);
  homech->add_option("--eps2", eps2);
  homech->add_option("--energy", h_energy);
  homech->add_option("--periods", periods);

  auto* angular = app.add_subcommand("angular", "azimuthal momentum and quantization");
  double m_quant = 1.0;
  angular->add_option("--m", m_quant);

  auto* field = app.add_subcommand("biprism-field", "kernel/intensity/momentum map");
  auto* run = app.add_subcommand("biprism-run", "trajectory ensemble and screen density");
  auto* visibility = app.add_subcommand("visibility", "mean velocity from visibility");
  double fv = 0.0;
  visibility->add_option("--fv", fv, "fringe visibility in [0, 1]");
  auto* validate = app.add_subcommand("validate", "config diagnostics");

  CLI11_PARSE(app, argc, argv);

  try {
    qhj::Config cfg = [&] {
      if (quantize->parsed())
        return load_or_synthesize(config_path, "quantize",
                                  {"[system]", "potential = \"" + potential + "\"",
                                   "[quantize]", "count = " + std::to_string(count),
                                   "e_min = " + std::to_string(e_min),
                                   "e_max = " + std::to_string(e_max)});
      if (momentum->parsed())
        return load_or_synthesize(config_path, "momentum-field",
                                  {"[system]", "potential = \"" + potential + "\"",
                                   "[field]", "energy = " + std::to_string(energy),
                                   "l1 = " + std::to_string(l1),
                                   "l2 = " + std::to_string(l2)});
      if (homech->parsed())
        return load_or_synthesize(config_path, "homech",
                                  {"[homech]", "eps1 = " + std::to_string(eps1),
                                   "eps2 = " + std::to_string(eps2),
                                   "energy = " + std::to_string(h_energy),
                                   "periods = " + std::to_string(periods)});
      if (angular->parsed())
        return load_or_synthesize(config_path, "angular",
                                  {"[angular]", "m = " + std::to_string(m_quant)});
      if (field->parsed()) return load_or_synthesize(config_path, "biprism-field", {});
      if (run->parsed()) return load_or_synthesize(config_path, "biprism-run", {});
      if (visibility->parsed())
        return load_or_synthesize(config_path, "visibility",
                                  {"[visibility]", "fv = " + std::to_string(fv)});
      return qhj::Config::load(config_path);  // validate
    }();

    if (validate->parsed()) {
      const auto notes = qhj::validate_config(cfg);
      if (notes.empty()) {
        std::cout << "config ok\n";
      } else {
        for (const auto& n : notes) std::cout << "note: " << n << "\n";
      }
      return 0;
    }

    const auto written = qhj::run_experiment(cfg, opt);
    for (const auto& path : written) std::cout << "wrote " << path << "\n";
    return 0;
  } catch (const qhj::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}
