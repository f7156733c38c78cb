// Command-line front end: one subcommand per pipeline stage, emitting
// deterministic CSV or JSON tables.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "elasticbit/analysis.hpp"
#include "elasticbit/angles.hpp"
#include "elasticbit/berry.hpp"
#include "elasticbit/dynamics.hpp"
#include "elasticbit/errors.hpp"
#include "elasticbit/gates.hpp"
#include "elasticbit/model.hpp"
#include "elasticbit/steadystate.hpp"

namespace {

using json = nlohmann::json;
using namespace elasticbit;

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Table {
  std::string schema;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  json params = json::object();
};

void emit_table(const Table& t, const std::string& format,
                const std::string& out_path) {
  std::string text;
  if (format == "csv") {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      if (i) text += ',';
      text += t.header[i];
    }
    text += '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) text += ',';
        text += format_number(row[i]);
      }
      text += '\n';
    }
  } else {
    json doc;
    doc["schema"] = t.schema;
    doc["params"] = t.params;
    doc["columns"] = t.header;
    doc["rows"] = t.rows;
    text = doc.dump(2);
    text += '\n';
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + out_path);
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> grid;
  grid.reserve(count);
  if (count == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (int i = 0; i < count; ++i)
    grid.push_back(lo + (hi - lo) * i / (count - 1));
  return grid;
}

int default_jobs() {
  if (const char* env = std::getenv("ELASTICBIT_JOBS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

struct CommonOptions {
  SystemParams params;
  std::string out;
  std::string format = "csv";
  std::string config_path;
  bool degrees = false;
};

// Flat key-value config file; flags win over file values.
void apply_config(CLI::App& sub, CommonOptions& common) {
  if (common.config_path.empty()) return;
  std::ifstream in(common.config_path);
  if (!in)
    throw CLI::ValidationError("--config",
                               "cannot open config file: " + common.config_path);
  json cfg;
  in >> cfg;
  auto take = [&](const char* key, const char* flag, double& target) {
    if (cfg.contains(key) && sub.count(flag) == 0)
      target = cfg.at(key).get<double>();
  };
  take("m", "--m", common.params.mass);
  take("k", "--k", common.params.stiffness);
  take("eta", "--eta", common.params.damping);
  if (cfg.contains("material")) {
    const auto& m = cfg.at("material");
    MaterialSpec mat{m.at("E").get<double>(), m.at("nu").get<double>(),
                     m.at("R").get<double>(), m.at("rho").get<double>(),
                     m.at("sigma0").get<double>()};
    const HertzParams hp = hertz_params(mat);
    if (sub.count("--m") == 0) common.params.mass = hp.mass;
    if (sub.count("--k") == 0)
      common.params.stiffness =
          linearize(hp.stiffness, mat.precompression).k_linear;
    common.params.hertz_stiffness = hp.stiffness;
    common.params.precompression = mat.precompression;
  }
}

void add_common(CLI::App& sub, CommonOptions& common) {
  sub.add_option("--m", common.params.mass, "granule mass");
  sub.add_option("--k", common.params.stiffness, "linear coupling stiffness");
  sub.add_option("--eta", common.params.damping, "damping coefficient");
  sub.add_option("--out", common.out, "output path ('-' for stdout)");
  sub.add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--config", common.config_path,
                 "flat JSON config file (flags win)");
  sub.add_flag("--degrees", common.degrees,
               "emit angle columns in degrees (display only)");
}

double display_angle(double radians, bool degrees) {
  return degrees ? radians * 180.0 / std::numbers::pi : radians;
}

json params_json(const SystemParams& p) {
  json j{{"m", p.mass}, {"k", p.stiffness}, {"eta", p.damping}};
  if (p.hertz_stiffness) j["k_nl"] = *p.hertz_stiffness;
  if (p.precompression) j["sigma0"] = *p.precompression;
  return j;
}

GateKind parse_gate(const std::string& name, double phase,
                    bool phase_given) {
  if (phase_given) return GateKind::phase_shift(phase);
  if (name == "X") return GateKind::pauli_x();
  if (name == "Y") return GateKind::pauli_y();
  if (name == "Z") return GateKind::pauli_z();
  if (name == "H") return GateKind::hadamard();
  if (name == "S") return GateKind::s_gate();
  if (name == "T") return GateKind::t_gate();
  throw CLI::ValidationError("--gate", "unknown gate: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steady-state, gate, Berry-phase and time-domain analysis of "
               "a driven two-granule elastic bit"};
  app.require_subcommand(1);

  // eig
  auto* eig = app.add_subcommand("eig", "eigenmode frequencies");
  CommonOptions eig_opts;
  add_common(*eig, eig_opts);

  // steady
  auto* steady = app.add_subcommand(
      "steady", "amplitude and phase-difference table over a delta grid");
  CommonOptions steady_opts;
  double steady_omega = std::numbers::sqrt2;
  double steady_eps = 0.5;
  int steady_points = 101;
  add_common(*steady, steady_opts);
  steady->add_option("--omega", steady_omega, "driving frequency");
  steady->add_option("--eps", steady_eps, "mixing ratio");
  steady->add_option("--points", steady_points, "delta grid size")
      ->check(CLI::PositiveNumber);

  // bloch
  auto* bloch = app.add_subcommand("bloch", "Bloch angles of one drive point");
  CommonOptions bloch_opts;
  double bloch_omega = std::numbers::sqrt2;
  double bloch_eps = 0.5;
  double bloch_delta = 0.0;
  add_common(*bloch, bloch_opts);
  bloch->add_option("--omega", bloch_omega, "driving frequency");
  bloch->add_option("--eps", bloch_eps, "mixing ratio");
  bloch->add_option("--delta", bloch_delta, "driver phase offset");

  // gate
  auto* gate = app.add_subcommand(
      "gate", "apply a named gate; print post-state and realizing drive");
  CommonOptions gate_opts;
  std::string gate_name = "X";
  double gate_phase = 0.0;
  double gate_theta = 0.0;
  double gate_phi = 0.0;
  double gate_omega = std::numbers::sqrt2;
  add_common(*gate, gate_opts);
  gate->add_option("--gate", gate_name, "one of X, Y, Z, H, S, T");
  auto* phase_opt = gate->add_option("--phase-shift", gate_phase,
                                     "phase-shift gate angle (overrides --gate)");
  gate->add_option("--theta", gate_theta, "input polar angle");
  gate->add_option("--phi", gate_phi, "input azimuthal angle");
  gate->add_option("--omega", gate_omega, "frequency for the realizing drive");

  // berry
  auto* berry = app.add_subcommand("berry", "Berry phase of one delta loop");
  CommonOptions berry_opts;
  double berry_omega = std::numbers::sqrt2;
  double berry_eps = 0.5;
  int berry_steps = 4096;
  add_common(*berry, berry_opts);
  berry->add_option("--omega", berry_omega, "driving frequency");
  berry->add_option("--eps", berry_eps, "mixing ratio");
  berry->add_option("--steps", berry_steps, "loop discretization");

  // berry-sweep
  auto* sweep = app.add_subcommand("berry-sweep",
                                   "|gamma| surface over (omega, eps)");
  CommonOptions sweep_opts;
  double sweep_omega_min = 1.05, sweep_omega_max = 1.7;
  int sweep_omega_count = 14;
  double sweep_eps_min = 0.0, sweep_eps_max = 1.0;
  int sweep_eps_count = 11;
  int sweep_steps = 512;
  int sweep_jobs = default_jobs();
  add_common(*sweep, sweep_opts);
  sweep->add_option("--omega-min", sweep_omega_min, "low frequency edge");
  sweep->add_option("--omega-max", sweep_omega_max, "high frequency edge");
  sweep->add_option("--omega-count", sweep_omega_count, "frequency samples")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--eps-min", sweep_eps_min, "low ratio edge");
  sweep->add_option("--eps-max", sweep_eps_max, "high ratio edge");
  sweep->add_option("--eps-count", sweep_eps_count, "ratio samples")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--steps", sweep_steps, "loop discretization");
  sweep->add_option("--jobs", sweep_jobs, "worker threads")
      ->check(CLI::PositiveNumber);

  // transition
  auto* transition =
      app.add_subcommand("transition", "transition ratio curve");
  CommonOptions trans_opts;
  double trans_omega_min = 1.01, trans_omega_max = 1.72;
  int trans_count = 72;
  add_common(*transition, trans_opts);
  transition->add_option("--omega-min", trans_omega_min, "low frequency edge");
  transition->add_option("--omega-max", trans_omega_max, "high frequency edge");
  transition->add_option("--count", trans_count, "samples")
      ->check(CLI::PositiveNumber);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "time-domain integration");
  CommonOptions sim_opts;
  std::string sim_model = "linear";
  double sim_omega = std::numbers::sqrt2;
  double sim_eps = 0.5;
  double sim_delta = 0.0;
  double sim_dt = 0.0;
  double sim_t_end = 1000.0;
  double sim_u1 = 0.0, sim_v1 = 0.0, sim_u2 = 0.0, sim_v2 = 0.0;
  double sim_scale = 1.0;
  double sim_sigma0 = 0.0, sim_knl = 0.0;
  add_common(*simulate, sim_opts);
  simulate->add_option("--model", sim_model, "linear or nonlinear")
      ->check(CLI::IsMember({"linear", "nonlinear"}));
  simulate->add_option("--omega", sim_omega, "driving frequency");
  simulate->add_option("--eps", sim_eps, "mixing ratio");
  simulate->add_option("--delta", sim_delta, "driver phase offset");
  simulate->add_option("--dt", sim_dt, "time step (0 = default)");
  simulate->add_option("--t-end", sim_t_end, "horizon");
  simulate->add_option("--u1", sim_u1, "initial displacement 1");
  simulate->add_option("--v1", sim_v1, "initial velocity 1");
  simulate->add_option("--u2", sim_u2, "initial displacement 2");
  simulate->add_option("--v2", sim_v2, "initial velocity 2");
  simulate->add_option("--scale", sim_scale, "drive amplitude scale");
  simulate->add_option("--sigma0", sim_sigma0, "pre-compression");
  simulate->add_option("--knl", sim_knl,
                       "Hertzian stiffness (0 = derive from k and sigma0)");

  // validate
  auto* validate = app.add_subcommand(
      "validate", "nonlinear vs linear vs analytic amplitude report");
  CommonOptions val_opts;
  double val_omega = std::numbers::sqrt2;
  double val_eps = 0.5;
  double val_delta = std::numbers::pi;
  double val_sigma0 = 2000.0;
  double val_t_end = 6000.0;
  double val_dt = 0.005;
  int val_cycles = 20;
  add_common(*validate, val_opts);
  validate->add_option("--omega", val_omega, "driving frequency");
  validate->add_option("--eps", val_eps, "mixing ratio");
  validate->add_option("--delta", val_delta, "driver phase offset");
  validate->add_option("--sigma0", val_sigma0, "pre-compression");
  validate->add_option("--t-end", val_t_end, "horizon");
  validate->add_option("--dt", val_dt, "time step");
  validate->add_option("--cycles", val_cycles, "extraction window, cycles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eig) {
      apply_config(*eig, eig_opts);
      const EigenPair e = eigenfrequencies(eig_opts.params);
      if (eig_opts.format == "csv") {
        // bare pair, no header: the one subcommand meant for shell capture
        const std::string line = format_number(e.in_phase) + "," +
                                 format_number(e.out_of_phase) + "\n";
        if (eig_opts.out.empty() || eig_opts.out == "-") {
          std::cout << line;
        } else {
          std::ofstream f(eig_opts.out, std::ios::binary);
          if (!f)
            throw std::runtime_error("cannot open output file: " + eig_opts.out);
          f << line;
        }
      } else {
        Table t{"eig",
                {"omega_01", "omega_02"},
                {{e.in_phase, e.out_of_phase}},
                params_json(eig_opts.params)};
        emit_table(t, eig_opts.format, eig_opts.out);
      }
    } else if (*steady) {
      apply_config(*steady, steady_opts);
      const SystemParams& p = steady_opts.params;
      Table t{"steady",
              {"delta", "abs_a1", "abs_a2", "phi_m1_m2", "phi_m1_d1"},
              {},
              params_json(p)};
      t.params["omega_d"] = steady_omega;
      t.params["eps"] = steady_eps;
      for (double delta :
           linspace(-std::numbers::pi, std::numbers::pi, steady_points)) {
        const double wrapped = wrap_angle(delta);
        const SteadyAmplitudes a =
            steady_amplitudes(p, {steady_eps, wrapped, steady_omega});
        const auto [f1, f2] = drive_amplitudes(steady_eps, wrapped);
        const PhasePair ph = phase_differences(a, f1);
        t.rows.push_back({delta, std::abs(a.a1), std::abs(a.a2),
                          display_angle(ph.mass_mass, steady_opts.degrees),
                          display_angle(ph.mass_driver, steady_opts.degrees)});
      }
      emit_table(t, steady_opts.format, steady_opts.out);
    } else if (*bloch) {
      apply_config(*bloch, bloch_opts);
      const ModalState s = state_for_drive(
          bloch_opts.params, {bloch_eps, wrap_angle(bloch_delta), bloch_omega});
      const BlochAngles angles = bloch_angles(s);
      Table t{"bloch",
              {"theta", "phi"},
              {{display_angle(angles.polar, bloch_opts.degrees),
                display_angle(angles.azimuth, bloch_opts.degrees)}},
              params_json(bloch_opts.params)};
      t.params["omega_d"] = bloch_omega;
      t.params["eps"] = bloch_eps;
      t.params["delta"] = bloch_delta;
      emit_table(t, bloch_opts.format, bloch_opts.out);
    } else if (*gate) {
      apply_config(*gate, gate_opts);
      const GateKind g =
          parse_gate(gate_name, wrap_angle(gate_phase), phase_opt->count() > 0);
      const ModalState in = state_from_angles({gate_theta, gate_phi});
      const ModalState out = apply_gate(g, in);
      const BlochAngles angles = bloch_angles(out);
      const auto [eps, delta] =
          drive_for_bloch(angles, gate_opts.params, gate_omega);
      Table t{"gate",
              {"theta", "phi", "eps", "delta"},
              {{display_angle(angles.polar, gate_opts.degrees),
                display_angle(angles.azimuth, gate_opts.degrees), eps,
                display_angle(delta, gate_opts.degrees)}},
              params_json(gate_opts.params)};
      t.params["gate"] = phase_opt->count() > 0 ? "phase-shift" : gate_name;
      t.params["omega_d"] = gate_omega;
      emit_table(t, gate_opts.format, gate_opts.out);
    } else if (*berry) {
      apply_config(*berry, berry_opts);
      const BerryLoopResult r = berry_phase_loop(
          berry_opts.params, {berry_eps, berry_omega, berry_steps});
      if (berry_opts.format == "json") {
        json doc{{"schema", "berry"},
                 {"params", params_json(berry_opts.params)},
                 {"gamma_discrete",
                  display_angle(r.discrete_phase, berry_opts.degrees)},
                 {"gamma_analytic",
                  display_angle(r.analytic_phase, berry_opts.degrees)},
                 {"gamma_abs",
                  display_angle(std::abs(r.discrete_phase), berry_opts.degrees)},
                 {"theta", display_angle(r.polar, berry_opts.degrees)},
                 {"winding", r.winding},
                 {"steps", r.steps}};
        doc["params"]["omega_d"] = berry_omega;
        doc["params"]["eps"] = berry_eps;
        const std::string text = doc.dump(2) + "\n";
        if (berry_opts.out.empty() || berry_opts.out == "-") {
          std::cout << text;
        } else {
          std::ofstream f(berry_opts.out, std::ios::binary);
          if (!f)
            throw std::runtime_error("cannot open output file: " +
                                     berry_opts.out);
          f << text;
        }
      } else {
        Table t{"berry",
                {"gamma_discrete", "gamma_analytic", "theta", "winding",
                 "steps"},
                {{display_angle(r.discrete_phase, berry_opts.degrees),
                  display_angle(r.analytic_phase, berry_opts.degrees),
                  display_angle(r.polar, berry_opts.degrees),
                  static_cast<double>(r.winding),
                  static_cast<double>(r.steps)}},
                params_json(berry_opts.params)};
        emit_table(t, berry_opts.format, berry_opts.out);
      }
    } else if (*sweep) {
      apply_config(*sweep, sweep_opts);
      const auto freqs =
          linspace(sweep_omega_min, sweep_omega_max, sweep_omega_count);
      const auto ratios = linspace(sweep_eps_min, sweep_eps_max, sweep_eps_count);
      const auto cells = berry_sweep(sweep_opts.params, freqs, ratios,
                                     sweep_steps, sweep_jobs);
      Table t{"berry-sweep",
              {"omega_d", "eps", "gamma_abs"},
              {},
              params_json(sweep_opts.params)};
      t.params["steps"] = sweep_steps;
      for (const auto& c : cells)
        t.rows.push_back({c.frequency, c.mix_ratio,
                          display_angle(c.phase_abs, sweep_opts.degrees)});
      emit_table(t, sweep_opts.format, sweep_opts.out);
    } else if (*transition) {
      apply_config(*transition, trans_opts);
      const EigenPair e = eigenfrequencies(trans_opts.params);
      Table t{"transition",
              {"omega_d", "eps_star"},
              {},
              params_json(trans_opts.params)};
      for (double w : linspace(trans_omega_min, trans_omega_max, trans_count))
        t.rows.push_back({w, transition_ratio(w, e)});
      emit_table(t, trans_opts.format, trans_opts.out);
    } else if (*simulate) {
      apply_config(*simulate, sim_opts);
      SystemParams p = sim_opts.params;
      IntegratorConfig cfg;
      cfg.model =
          sim_model == "nonlinear" ? ModelKind::Nonlinear : ModelKind::Linear;
      if (cfg.model == ModelKind::Nonlinear) {
        if (!(sim_sigma0 > 0.0))
          throw std::domain_error("simulate: nonlinear model needs --sigma0 > 0");
        const double knl = sim_knl > 0.0
                               ? sim_knl
                               : p.stiffness / (1.5 * std::sqrt(sim_sigma0));
        p = SystemParams::from_hertz(p.mass, knl, sim_sigma0, p.damping);
      }
      cfg.dt = sim_dt > 0.0 ? sim_dt : default_time_step(sim_omega);
      cfg.t_end = sim_t_end;
      cfg.u1 = sim_u1;
      cfg.v1 = sim_v1;
      cfg.u2 = sim_u2;
      cfg.v2 = sim_v2;
      cfg.drive_scale = sim_scale;
      const TimeSeries ts =
          integrate(p, {sim_eps, wrap_angle(sim_delta), sim_omega}, cfg);
      Table t{"simulate",
              {"t", "u1", "v1", "u2", "v2"},
              {},
              params_json(p)};
      t.params["model"] = sim_model;
      t.params["omega_d"] = sim_omega;
      t.rows.reserve(ts.samples.size());
      for (const auto& s : ts.samples)
        t.rows.push_back({s.t, s.u1, s.v1, s.u2, s.v2});
      emit_table(t, sim_opts.format, sim_opts.out);
    } else if (*validate) {
      apply_config(*validate, val_opts);
      SystemParams p = val_opts.params;
      const double knl = p.stiffness / (1.5 * std::sqrt(val_sigma0));
      p = SystemParams::from_hertz(p.mass, knl, val_sigma0, p.damping);
      const DriveSpec d{val_eps, wrap_angle(val_delta), val_omega};
      const SteadyAmplitudes analytic = steady_amplitudes(p, d);

      IntegratorConfig cfg;
      cfg.dt = val_dt;
      cfg.t_end = val_t_end;
      cfg.model = ModelKind::Linear;
      const SteadyAmplitudes lin =
          extract_steady(integrate(p, d, cfg), val_omega, val_cycles);
      cfg.model = ModelKind::Nonlinear;
      const SteadyAmplitudes nl =
          extract_steady(integrate(p, d, cfg), val_omega, val_cycles);

      auto rel = [](std::complex<double> got, std::complex<double> ref) {
        return std::abs(got - ref) / std::max(std::abs(ref), 1e-300);
      };
      Table t{"validate",
              {"granule", "analytic_re", "analytic_im", "linear_re",
               "linear_im", "nonlinear_re", "nonlinear_im", "linear_rel_err",
               "nonlinear_rel_err"},
              {{1.0, analytic.a1.real(), analytic.a1.imag(), lin.a1.real(),
                lin.a1.imag(), nl.a1.real(), nl.a1.imag(),
                rel(lin.a1, analytic.a1), rel(nl.a1, analytic.a1)},
               {2.0, analytic.a2.real(), analytic.a2.imag(), lin.a2.real(),
                lin.a2.imag(), nl.a2.real(), nl.a2.imag(),
                rel(lin.a2, analytic.a2), rel(nl.a2, analytic.a2)}},
              params_json(p)};
      t.params["omega_d"] = val_omega;
      t.params["eps"] = val_eps;
      t.params["delta"] = val_delta;
      emit_table(t, val_opts.format, val_opts.out);
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitOk;
}
