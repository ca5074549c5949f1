#include "qhj/runner.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>

#include "qhj/angular.hpp"
#include "qhj/biprism.hpp"
#include "qhj/errors.hpp"
#include "qhj/homech.hpp"
#include "qhj/qshje.hpp"
#include "qhj/schrodinger.hpp"
#include "qhj/trajectory.hpp"

namespace qhj {

namespace {

using nlohmann::json;
constexpr double kPi = 3.14159265358979323846;
constexpr int kSchemaVersion = 1;

std::ofstream open_out(const std::string& dir, const std::string& name,
                       std::vector<std::string>& written) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << std::setprecision(15);
  written.push_back(path);
  return out;
}

void write_json(const std::string& dir, const std::string& name, json j,
                std::vector<std::string>& written) {
  j["schema_version"] = kSchemaVersion;
  auto out = open_out(dir, name, written);
  out << j.dump(2) << "\n";
}

PhysicalSystem1D system_from(const Config& cfg) {
  PhysicalSystem1D sys;
  sys.mass = cfg.number_or("system", "mass", 1.0);
  sys.hbar = cfg.number_or("system", "hbar", 1.0);
  sys.x_min = cfg.number_or("system", "x_min", -10.0);
  sys.x_max = cfg.number_or("system", "x_max", 10.0);
  const std::string kind = cfg.string_or("system", "potential", "free");
  if (kind == "free") {
    sys.potential = free_potential();
  } else if (kind == "harmonic") {
    sys.potential = harmonic_potential(sys.mass, cfg.number_or("system", "omega", 1.0));
  } else if (kind == "square_well") {
    sys.potential = square_well_potential(cfg.number_or("system", "half_width", 1.0),
                                          cfg.number_or("system", "wall_height", 1e9));
  } else if (kind == "table") {
    sys.potential = table_potential(cfg.array("system", "xs"), cfg.array("system", "vs"));
  } else {
    throw ConfigError("unknown potential kind: " + kind);
  }
  return sys;
}

BiprismGeometry geometry_from(const Config& cfg) {
  BiprismGeometry g = benchmark_geometry();
  g.kx = cfg.number_or("geometry", "kx", g.kx);
  g.ky = cfg.number_or("geometry", "ky", g.ky);
  g.kz = cfg.number_or("geometry", "kz", g.kz);
  g.filament_d = cfg.number_or("geometry", "filament_diameter", g.filament_d);
  g.aperture_half = cfg.number_or("geometry", "aperture_half", g.aperture_half);
  g.screen_z = cfg.number_or("geometry", "screen_z", g.screen_z);
  return g;
}

GaussianBeam beam_from(const Config& cfg) {
  GaussianBeam b = benchmark_beam();
  if (cfg.has("beam", "components")) {
    b.components.clear();
    for (const auto& row : cfg.array2("beam", "components")) {
      if (row.size() != 2) throw ConfigError("beam components must be [weight, w0] pairs");
      b.components.push_back({row[0], row[1]});
    }
  }
  b.center_x0 = cfg.number_or("beam", "center_x0", 0.0);
  return b;
}

std::vector<std::string> run_quantize(const Config& cfg, const RunOptions& opt) {
  std::vector<std::string> written;
  const PhysicalSystem1D sys = system_from(cfg);
  const int count = static_cast<int>(cfg.number_or("quantize", "count", 5));
  const double e_min = cfg.number_or("quantize", "e_min", 1e-4);
  const double e_max = cfg.number_or("quantize", "e_max", 10.0);
  const int n_points = static_cast<int>(cfg.number_or("quantize", "n_points", 6001));
  const auto energies = find_bound_energies(sys, count, e_min, e_max, n_points);

  json j;
  j["energies"] = energies;
  write_json(opt.out_dir, "quantize.json", j, written);
  auto csv = open_out(opt.out_dir, "quantize_plot.csv", written);
  csv << "n,energy\n";
  for (size_t i = 0; i < energies.size(); ++i) csv << i << "," << energies[i] << "\n";
  return written;
}

std::vector<std::string> run_momentum_field(const Config& cfg, const RunOptions& opt) {
  std::vector<std::string> written;
  const PhysicalSystem1D sys = system_from(cfg);
  const double energy = cfg.number("field", "energy");
  const int n_points = static_cast<int>(cfg.number_or("field", "n_points", 4001));
  MomentumField1D field;
  field.basis = std::make_shared<WaveBasis1D>(solve_pair(sys, energy, n_points));
  field.mobius.l1 = cfg.number_or("field", "l1", -1.0);
  field.mobius.l2 = cfg.number_or("field", "l2", 0.0);

  auto csv = open_out(opt.out_dir, "momentum_field.csv", written);
  csv << "x,p,qp\n";
  const int n_out = static_cast<int>(cfg.number_or("field", "samples", 800));
  for (int i = 0; i < n_out; ++i) {
    const double x = sys.x_min + (sys.x_max - sys.x_min) * i / (n_out - 1);
    csv << x << "," << field.momentum(x) << "," << quantum_potential_1d(field, x) << "\n";
  }
  const WindingResult wr = winding_integral(field);
  json j;
  j["winding_integral"] = wr.value;
  j["nearest_n"] = wr.nearest_n;
  j["deviation"] = wr.deviation;
  write_json(opt.out_dir, "momentum_field.json", j, written);
  return written;
}

std::vector<std::string> run_homech(const Config& cfg, const RunOptions& opt) {
  std::vector<std::string> written;
  const double eps1 = cfg.number_or("homech", "eps1", 0.01);
  const double eps2 = cfg.number_or("homech", "eps2", 0.0);
  const double e = cfg.number_or("homech", "energy", 1.0);
  const double mass = cfg.number_or("homech", "mass", 1.0);
  const double hbar = cfg.number_or("homech", "hbar", 1.0);
  const double periods = cfg.number_or("homech", "periods", 10.0);
  const double tol = opt.tolerance > 0 ? opt.tolerance : 1e-12;

  const SemiclassicalFit fit = fit_semiclassical(eps1, eps2, e, mass, hbar);
  const HOParams params{fit.eps, mass, hbar};
  const double t_final = periods * 2.0 * kPi / fit.omega;
  const auto path = integrate(initial_state(fit), params, t_final, tol);

  auto csv = open_out(opt.out_dir, "homech_path.csv", written);
  csv << "t,q,qd,qdd,qddd,energy,p1\n";
  for (const auto& s : path) {
    csv << s.t << "," << s.q << "," << s.qd << "," << s.qdd << "," << s.qddd << ","
        << energy(s, params) << "," << jo_momenta(s, params).p1 << "\n";
  }
  const FourierModes modes = fourier_modes(path);
  json j;
  j["fit"] = {{"eps", fit.eps},     {"v", fit.v},   {"omega", fit.omega},
              {"c2b", fit.c2b},     {"a1", fit.a1}, {"b1", fit.b1},
              {"p1", fit.p1},       {"energy", fit.energy}};
  j["measured"] = {{"drift", modes.drift},
                   {"omega", modes.omega},
                   {"amplitudes", modes.amplitude}};
  const InconsistencyResidual res = inconsistency_residual(fit);
  j["cubic_fit"] = {{"best_c3", res.best_c3}, {"residual", res.residual}};
  write_json(opt.out_dir, "homech_fit.json", j, written);
  return written;
}

std::vector<std::string> run_angular(const Config& cfg, const RunOptions& opt) {
  std::vector<std::string> written;
  AngularCoeffs c;
  c.m_quant = cfg.number_or("angular", "m", 1.0);
  c.c1 = {cfg.number_or("angular", "c1_re", 1.0), cfg.number_or("angular", "c1_im", 0.0)};
  c.c2 = {cfg.number_or("angular", "c2_re", 0.0), cfg.number_or("angular", "c2_im", 1.0)};
  auto csv = open_out(opt.out_dir, "angular_momentum.csv", written);
  csv << "phi,dS0_dphi\n";
  const int n = 720;
  for (int i = 0; i <= n; ++i) {
    const double phi = kPi * i / n;
    csv << phi << "," << phi_momentum(c, phi) << "\n";
  }
  const PhiQuantization q = phi_quantization(c);
  json j;
  j["integral"] = q.integral;
  if (q.n) j["n"] = *q.n;
  else j["n"] = nullptr;
  write_json(opt.out_dir, "angular_quantization.json", j, written);
  return written;
}

std::vector<std::string> run_biprism_field(const Config& cfg, const RunOptions& opt) {
  std::vector<std::string> written;
  const BiprismGeometry geom = geometry_from(cfg);
  GaussianBeam beam = beam_from(cfg);
  const double z = cfg.number_or("map", "z", geom.screen_z);
  const double x_lo = cfg.number_or("map", "x_min", -1e-3);
  const double x_hi = cfg.number_or("map", "x_max", 1e-3);
  const int n = static_cast<int>(cfg.number_or("map", "samples", 400));
  auto csv = open_out(opt.out_dir, "biprism_field.csv", written);
  csv << "x,z,m1,n1,m2,n2,intensity,px\n";
  for (int i = 0; i < n; ++i) {
    const double x = x_lo + (x_hi - x_lo) * i / (n - 1);
    const DiffractionKernels k = kernels(x, z, geom, beam);
    csv << x << "," << z << "," << k.m1 << "," << k.n1 << "," << k.m2 << "," << k.n2
        << "," << intensity_closed_form(x, k, geom.kx) << "," << px_field(x, z, geom, beam)
        << "\n";
  }
  return written;
}

std::vector<std::string> run_biprism_run(const Config& cfg, const RunOptions& opt) {
  std::vector<std::string> written;
  const BiprismGeometry geom = geometry_from(cfg);
  const GaussianBeam beam = beam_from(cfg);
  const double tol = opt.tolerance > 0 ? opt.tolerance : 1e-10;
  const double init_z = cfg.number_or("run", "init_z", 4.0);
  std::vector<double> grid;
  if (cfg.has("run", "grid")) grid = cfg.array("run", "grid");
  else grid = benchmark_initial_grid();

  const BiprismRunResult r = run_biprism(geom, beam, grid, tol, init_z, opt.threads);

  auto paths = open_out(opt.out_dir, "biprism_trajectories.csv", written);
  paths << "trajectory,z,x\n";
  for (size_t i = 0; i < r.records.size(); ++i) {
    for (size_t j = 0; j < r.records[i].path_z.size(); ++j)
      paths << i << "," << r.records[i].path_z[j] << "," << r.records[i].path_x[j] << "\n";
  }
  auto dens = open_out(opt.out_dir, "biprism_density.csv", written);
  dens << "x,intensity\n";
  for (size_t i = 0; i < r.total.positions.size(); ++i)
    dens << r.total.positions[i] << "," << r.total.intensity[i] << "\n";
  auto plot = open_out(opt.out_dir, "biprism_lower_density.csv", written);
  plot << "x,intensity\n";
  for (size_t i = 0; i < r.lower.positions.size(); ++i)
    plot << r.lower.positions[i] << "," << r.lower.intensity[i] << "\n";

  json j;
  j["visibility"] = r.visibility;
  j["mean_velocity_ratio"] = r.mean_velocity_ratio;
  j["fringe_period"] = r.fringe_period_measured;
  j["fringe_period_expected"] = kPi / geom.kx;
  j["density_peak_x"] = r.density_peak_x;
  j["field_peak_x"] = r.field_peak_x;
  j["crossings"] = r.lower.crossings;
  j["trajectories"] = r.records.size();
  write_json(opt.out_dir, "biprism_summary.json", j, written);
  return written;
}

std::vector<std::string> run_visibility(const Config& cfg, const RunOptions& opt) {
  std::vector<std::string> written;
  const double fv = cfg.number("visibility", "fv");
  json j;
  j["fv"] = fv;
  j["mean_velocity_ratio"] = mean_velocity_from_visibility(fv);
  write_json(opt.out_dir, "visibility.json", j, written);
  return written;
}

}  // namespace

std::vector<std::string> run_experiment(const Config& cfg, const RunOptions& opt) {
  const std::string kind = cfg.string("experiment", "kind");
  if (kind == "quantize") return run_quantize(cfg, opt);
  if (kind == "momentum-field") return run_momentum_field(cfg, opt);
  if (kind == "homech") return run_homech(cfg, opt);
  if (kind == "angular") return run_angular(cfg, opt);
  if (kind == "biprism-field") return run_biprism_field(cfg, opt);
  if (kind == "biprism-run") return run_biprism_run(cfg, opt);
  if (kind == "visibility") return run_visibility(cfg, opt);
  throw ConfigError("unknown experiment kind: " + kind);
}

std::vector<std::string> validate_config(const Config& cfg) {
  std::vector<std::string> notes;
  if (!cfg.has("experiment", "kind")) {
    notes.push_back("missing [experiment] kind");
    notes.push_back("expected one of: quantize, momentum-field, homech, angular, "
                    "biprism-field, biprism-run, visibility");
    return notes;
  }
  const std::string kind = cfg.string("experiment", "kind");
  if (kind == "homech") {
    const double eps1 = cfg.number_or("homech", "eps1", 0.01);
    const double eps2 = cfg.number_or("homech", "eps2", 0.0);
    if (std::hypot(eps1, eps2) >= 0.2)
      notes.push_back("RegimeViolation: eps = " + std::to_string(std::hypot(eps1, eps2)) +
                      " is outside the semiclassical regime (< 0.2)");
    if (cfg.number_or("homech", "energy", 1.0) <= 0.0)
      notes.push_back("homech energy must be positive");
  }
  if (kind == "biprism-field" || kind == "biprism-run") {
    const BiprismGeometry geom = geometry_from(cfg);
    const GaussianBeam beam = beam_from(cfg);
    const double z_start = kind == "biprism-run" ? cfg.number_or("run", "init_z", 4.0)
                                                 : cfg.number_or("map", "z", geom.screen_z);
    if (!fresnel_valid(0.0, z_start, beam, geom))
      notes.push_back("Fresnel validity warning: quadratic path expansion is not "
                      "accurate at z = " + std::to_string(z_start) + " mm");
    if (geom.kx <= 0.0 || geom.kz <= 0.0)
      notes.push_back("geometry wavenumbers must be positive");
    if (std::abs(geom.kx / geom.kz) > 1e-2)
      notes.push_back("unit sanity: kx/kz is not small, paraxial forms are unreliable");
  }
  if (kind == "quantize") {
    if (cfg.number_or("quantize", "e_min", 1e-4) >= cfg.number_or("quantize", "e_max", 10.0))
      notes.push_back("quantize window is empty (e_min >= e_max)");
  }
  if (kind == "visibility") {
    const double fv = cfg.number_or("visibility", "fv", 0.0);
    if (fv < 0.0 || fv > 1.0) notes.push_back("visibility must lie in [0, 1]");
  }
  return notes;
}

}  // namespace qhj
