#include "cycles/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "cycles/constants.hpp"
#include "cycles/csv.hpp"
#include "cycles/cyclic_propagator.hpp"
#include "cycles/errors.hpp"
#include "cycles/kinematics.hpp"
#include "cycles/modulation.hpp"
#include "cycles/rng.hpp"
#include "cycles/semiclassical.hpp"
#include "cycles/spectrum.hpp"
#include "cycles/topology.hpp"
#include "cycles/vxd.hpp"

namespace cycles::scenario {

using constants::pi;
using constants::two_pi;

namespace {

const char* kGeneratorNote = "mt19937_64; uniform doubles from the top 53 bits";

ParamSpec required(std::string key, ParamType type, std::string unit, std::string desc) {
  return {std::move(key), type, std::move(unit), std::move(desc), std::nullopt};
}

ParamSpec optional(std::string key, ParamType type, std::string unit, std::string desc,
                   json default_value) {
  return {std::move(key), type, std::move(unit), std::move(desc),
          std::move(default_value)};
}

std::vector<ScenarioInfo> build_catalog() {
  std::vector<ScenarioInfo> scenarios;

  scenarios.push_back(
      {"bohr_sommerfeld",
       "integer-action levels of a 1D or radial potential",
       {optional("potential", ParamType::Str, "-",
                 "harmonic | coulomb | square_well | tabulated", "harmonic"),
        optional("m", ParamType::Real, "natural mass", "particle mass", 1.0),
        optional("omega", ParamType::Real, "natural frequency",
                 "oscillator frequency (harmonic)", 1.0),
        optional("alpha", ParamType::Real, "-", "Coulomb coupling (coulomb)",
                 constants::fine_structure),
        optional("l", ParamType::Int, "-", "angular quantum number (coulomb)", 0),
        optional("width", ParamType::Real, "natural length", "well width (square_well)",
                 pi),
        optional("potential_csv", ParamType::Path, "-",
                 "columns x,V (tabulated)", ""),
        optional("n_min", ParamType::Int, "-", "first level", 1),
        optional("n_max", ParamType::Int, "-", "last level", 4),
        optional("bc", ParamType::Str, "-", "pbc | apbc", "pbc"),
        optional("panels", ParamType::Int, "-", "quadrature panels per half-orbit", 64)}});

  scenarios.push_back(
      {"boost",
       "random on-shell states under random boosts; phase-harmony residuals",
       {optional("count", ParamType::Int, "-", "number of sampled states", 10000),
        optional("beta_max", ParamType::Real, "-", "largest boost speed", 0.99)}});

  scenarios.push_back(
      {"cyclic_kernel",
       "winding-sum vs spectral-sum kernel on the compact time circle",
       {optional("T", ParamType::Real, "natural time", "circle circumference", 1.0),
        optional("beta", ParamType::Real, "natural time^2", "diffusion parameter", 0.05),
        optional("w_max", ParamType::Int, "-", "winding images per side", 12),
        optional("n_max", ParamType::Int, "-", "spectral modes", 64),
        optional("grid_points", ParamType::Int, "-", "evaluation grid size", 101)}});

  scenarios.push_back(
      {"dirac_check",
       "monopole loop integral against the quantization unit pi",
       {optional("e", ParamType::Real, "-", "probe charge", 0.5),
        optional("monopole", ParamType::Real, "-", "monopole strength", 1.0),
        optional("radius", ParamType::Real, "natural length", "loop radius", 1.0),
        optional("samples", ParamType::Int, "-", "loop samples", 256),
        optional("loop_csv", ParamType::Path, "-",
                 "columns i,x,y,z,ax,ay,az overriding the built-in loop", "")}});

  scenarios.push_back(
      {"flux_check",
       "vortex phase winding and the flux quantum 1/(2e)",
       {optional("e", ParamType::Real, "-", "condensate charge", 1.0),
        optional("winding", ParamType::Int, "-", "synthetic vortex winding", 1),
        optional("radius", ParamType::Real, "natural length", "loop radius", 1.0),
        optional("samples", ParamType::Int, "-", "loop samples", 128),
        optional("loop_csv", ParamType::Path, "-",
                 "columns i,x,y,z,theta overriding the built-in loop", "")}});

  scenarios.push_back(
      {"freezeout",
       "exponential conformal cooling scan with the warped-metric identities",
       {optional("k_gradient", ParamType::Real, "1/natural time", "cooling gradient", 1.0),
        optional("omega0", ParamType::Real, "natural energy", "initial energy", 1.0),
        optional("s_min", ParamType::Real, "natural time", "scan start", 0.0),
        optional("s_max", ParamType::Real, "natural time", "scan end", 3.0),
        optional("points", ParamType::Int, "-", "scan points", 1000),
        optional("ds", ParamType::Real, "natural time", "virtual step for dS^2", 1e-3)}});

  scenarios.push_back(
      {"gauge_phase",
       "Wilson-line phases of a sampled gauge field and the tuning check",
       {optional("e", ParamType::Real, "-", "coupling charge", 1.0),
        optional("extent", ParamType::Real, "natural length", "half-size of the lattice",
                 1.0),
        optional("subdivisions", ParamType::Int, "-", "midpoint steps per segment", 64),
        optional("field_csv", ParamType::Path, "-",
                 "columns x,y,z,t,A0,A1,A2,A3 overriding the built-in pure gauge field",
                 "")}});

  scenarios.push_back(
      {"kk_tower",
       "compact-dimension mass tower and its duality with the rest spectrum",
       {optional("lambda", ParamType::Real, "natural length", "compactification length",
                 two_pi),
        optional("n_max", ParamType::Int, "-", "modes", 8),
        optional("bc", ParamType::Str, "-", "pbc | apbc", "pbc")}});

  scenarios.push_back(
      {"redshift",
       "weak-field frequency shift between two radii",
       {required("gm", ParamType::Real, "natural length", "G M of the source"),
        required("r_emit", ParamType::Real, "natural length", "emission radius"),
        optional("r_obs", ParamType::RealOrInfinity, "natural length",
                 "observation radius, or \"infinity\"", "infinity")}});

  scenarios.push_back(
      {"spectrum",
       "quantized harmonic tower of one particle state",
       {required("m", ParamType::Real, "natural mass", "particle mass"),
        optional("kx", ParamType::Real, "natural momentum", "momentum x", 0.0),
        optional("ky", ParamType::Real, "natural momentum", "momentum y", 0.0),
        optional("kz", ParamType::Real, "natural momentum", "momentum z", 0.0),
        optional("n_max", ParamType::Int, "-", "modes", 8),
        optional("bc", ParamType::Str, "-", "pbc | apbc", "pbc")}});

  return scenarios;  // kept sorted by name above
}

const ScenarioInfo& find_scenario(const std::string& name) {
  for (const ScenarioInfo& info : catalog()) {
    if (info.name == name) return info;
  }
  throw ConfigError("unknown scenario: " + name);
}

const char* type_name(ParamType type) {
  switch (type) {
    case ParamType::Real: return "real";
    case ParamType::Int: return "int";
    case ParamType::Str: return "string";
    case ParamType::Path: return "path";
    case ParamType::RealOrInfinity: return "real|\"infinity\"";
  }
  return "?";
}

void check_type(const std::string& key, ParamType type, const json& value) {
  bool ok = false;
  switch (type) {
    case ParamType::Real: ok = value.is_number(); break;
    case ParamType::Int: ok = value.is_number_integer(); break;
    case ParamType::Str:
    case ParamType::Path: ok = value.is_string(); break;
    case ParamType::RealOrInfinity:
      ok = value.is_number() || (value.is_string() && value == "infinity");
      break;
  }
  if (!ok) {
    throw ConfigError("key " + key + " must have type " + type_name(type));
  }
}

/// Parameters merged with catalog defaults and type-checked.
json validated_parameters(const ScenarioInfo& info, const json& given) {
  if (!given.is_object()) throw ConfigError("parameters must be an object");

  if (info.name == "freezeout") {
    // Dilaton / soft-wall corrections are deliberately unsupported.
    for (const char* key : {"dilaton", "softwall"}) {
      if (given.contains(key)) {
        throw ConfigError(std::string(key) +
                          " corrections are not supported in the freezeout scenario");
      }
    }
  }

  for (const auto& item : given.items()) {
    bool known = false;
    for (const ParamSpec& param : info.params) known |= param.key == item.key();
    if (!known) throw ConfigError("unknown key: " + item.key());
  }

  json merged = json::object();
  for (const ParamSpec& param : info.params) {
    if (given.contains(param.key)) {
      check_type(param.key, param.type, given.at(param.key));
      merged[param.key] = given.at(param.key);
    } else if (param.required()) {
      throw ConfigError("missing key: " + param.key);
    } else {
      merged[param.key] = *param.default_value;
    }
  }
  return merged;
}

double real_or_infinity(const json& value) {
  if (value.is_string()) return std::numeric_limits<double>::infinity();
  return value.get<double>();
}

BoundaryCondition parse_bc(const std::string& text) {
  if (text == "pbc") return BoundaryCondition::Periodic;
  if (text == "apbc") return BoundaryCondition::AntiPeriodic;
  throw ConfigError("bc must be pbc or apbc");
}

struct Outputs {
  std::filesystem::path dir;
  std::vector<std::string> written;

  void write(const std::string& name, const std::string& content) {
    write_file_atomic(dir / name, content);
    written.push_back(name);
  }
};

void add_verdict(RunReport& report, const std::string& name, double measured,
                 double threshold, bool pass) {
  report.verdicts.push_back({name, pass, measured, threshold});
}

void bounded_verdict(RunReport& report, const std::string& name, double measured,
                     double threshold) {
  add_verdict(report, name, measured, threshold, measured <= threshold);
}

// ---------------------------------------------------------------------------
// scenario bodies

void run_spectrum(const json& params, RunReport& report, Outputs& outputs) {
  const double mass = params.at("m").get<double>();
  const Eigen::Vector3d momentum(params.at("kx").get<double>(),
                                 params.at("ky").get<double>(),
                                 params.at("kz").get<double>());
  const int n_max = params.at("n_max").get<int>();
  const BoundaryCondition bc = parse_bc(params.at("bc").get<std::string>());

  const SpectrumResult result = harmonic_spectrum(mass, momentum, n_max, bc);
  outputs.write("spectrum.csv", to_csv(result));

  double min_spacing = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < n_max; ++i) {
    min_spacing = std::min(min_spacing, result.omega[i + 1] - result.omega[i]);
  }
  if (n_max == 1) min_spacing = result.omega[0];
  add_verdict(report, "strictly_increasing", min_spacing, 0.0, min_spacing > 0.0);

  const double omega_bar = std::hypot(mass, momentum.norm());
  if (bc == BoundaryCondition::Periodic) {
    double worst = 0.0;
    for (int i = 0; i + 1 < n_max; ++i) {
      worst = std::max(
          worst, std::abs((result.omega[i + 1] - result.omega[i]) / omega_bar - 1.0));
    }
    bounded_verdict(report, "ladder_spacing", worst, 1e-12);
  } else {
    bounded_verdict(report, "half_offset",
                    std::abs(result.omega[0] / omega_bar - 1.5), 1e-12);
  }

  report.summary["omega_1"] = result.omega[0];
  report.summary["omega_n_max"] = result.omega[n_max - 1];
}

void run_boost(const json& params, std::uint64_t seed, RunReport& report,
               Outputs& outputs) {
  const int count = params.at("count").get<int>();
  const double beta_max = params.at("beta_max").get<double>();
  if (count < 1) throw ConfigError("count must be positive");
  if (!(beta_max > 0.0 && beta_max < 1.0)) throw ConfigError("beta_max must be in (0,1)");

  std::mt19937_64 rng(seed);
  const auto random_direction = [&rng]() {
    const double cos_t = uniform(rng, -1.0, 1.0);
    const double sin_t = std::sqrt(1.0 - cos_t * cos_t);
    const double phi = uniform(rng, 0.0, two_pi);
    return Eigen::Vector3d(sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t);
  };

  std::ostringstream csv;
  csv << "i,mass,beta_x,beta_y,beta_z,residual\n";
  char line[256];
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const double mass = uniform(rng, 0.1, 10.0);
    const Eigen::Vector3d state_beta = uniform(rng, 0.0, beta_max) * random_direction();
    const Eigen::Vector3d boost_beta = uniform(rng, 0.0, beta_max) * random_direction();
    const PeriodState state =
        boost(moving_state(mass, BoostParameters(state_beta)), BoostParameters(boost_beta));
    const double residual = phase_harmony_residual(state);
    worst = std::max(worst, residual);
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, mass,
                  boost_beta[0], boost_beta[1], boost_beta[2], residual);
    csv << line;
  }
  outputs.write("boost_sweep.csv", csv.str());

  bounded_verdict(report, "phase_harmony_max", worst, 1e-10);
  report.summary["states"] = count;
  report.summary["max_residual"] = worst;
}

void run_redshift(const json& params, RunReport& report, Outputs& outputs) {
  const double gm = params.at("gm").get<double>();
  const double r_emit = params.at("r_emit").get<double>();
  const double r_obs = real_or_infinity(params.at("r_obs"));

  const double shift = gravitational_redshift(gm, r_emit, r_obs);
  report.summary["fractional_shift"] = shift;

  const double strongest =
      std::max(std::isinf(r_obs) ? 0.0 : gm / r_obs, gm / r_emit);
  add_verdict(report, "linearized_domain", strongest, kLinearizedLimit,
              strongest < kLinearizedLimit);

  const bool deeper_emission = r_emit < r_obs;
  const bool sign_ok =
      r_emit == r_obs ? shift == 0.0 : (deeper_emission ? shift < 0.0 : shift > 0.0);
  add_verdict(report, "redshift_sign", shift, 0.0, sign_ok);

  // Local phase harmony degrades quadratically with the modulation strength.
  const PeriodState base = rest_state(1.0);
  const double eps_values[3] = {1e-5, 1e-4, 1e-3};
  double log_eps[3], log_res[3];
  for (int i = 0; i < 3; ++i) {
    const NewtonianSample sample = newtonian_modulation(
        gm, base, Eigen::Vector3d(gm / eps_values[i], 0.0, 0.0));
    log_eps[i] = std::log(eps_values[i]);
    log_res[i] = std::log(sample.harmony_residual_rel);
  }
  const double slope = (log_res[2] - log_res[0]) / (log_eps[2] - log_eps[0]);
  bounded_verdict(report, "quadratic_harmony_exponent", std::abs(slope - 2.0), 0.1);
  report.summary["harmony_exponent"] = slope;

  std::ostringstream csv;
  csv << "r,fractional_shift\n";
  const double r_span_end = std::isinf(r_obs) ? 100.0 * r_emit : r_obs;
  const int rows = 256;
  char line[128];
  for (int i = 0; i < rows; ++i) {
    const double r = r_emit + (r_span_end - r_emit) * i / (rows - 1);
    std::snprintf(line, sizeof(line), "%.17g,%.17g\n", r,
                  gravitational_redshift(gm, r_emit, r));
    csv << line;
  }
  outputs.write("redshift.csv", csv.str());
}

void run_gauge_phase(const json& params, RunReport& report, Outputs& outputs) {
  const double charge = params.at("e").get<double>();
  const double extent = params.at("extent").get<double>();
  const int subdivisions = params.at("subdivisions").get<int>();
  const std::string field_csv = params.at("field_csv").get<std::string>();
  if (!(extent > 0.0)) throw ConfigError("extent must be positive");

  const bool builtin = field_csv.empty();
  // Built-in pure gauge: Theta quadratic in (t, x), so A = dTheta is linear
  // and both the lattice interpolation and the midpoint rule are exact.
  const auto gradient = [](const Eigen::Vector4d& x) {
    return Eigen::Vector4d(0.15 * x[1] - 0.1 * x[0] + 0.1,
                           0.15 * x[0] + 0.2 * x[1] + 0.2, 0.0, 0.0);
  };
  const GaugeField field =
      builtin ? GaugeField::sample({GridAxis{-extent, extent, 21},
                                    GridAxis{-extent, extent, 21}, GridAxis{0, 0, 1},
                                    GridAxis{0, 0, 1}},
                                   gradient, charge)
              : load_gauge_field(field_csv, charge);

  const auto& axes = field.axes();
  const double t0 = axes[0].lo, t1 = axes[0].count > 1 ? axes[0].hi : axes[0].lo;
  const double x0 = axes[1].lo, x1 = axes[1].count > 1 ? axes[1].hi : axes[1].lo;
  const double tm = t0 + 0.1 * (t1 - t0), tp = t1 - 0.1 * (t1 - t0);
  const double xm = x0 + 0.1 * (x1 - x0), xp = x1 - 0.1 * (x1 - x0);

  const std::vector<Eigen::Vector4d> rectangle = {
      {tm, xm, 0, 0}, {tm, xp, 0, 0}, {tp, xp, 0, 0}, {tp, xm, 0, 0}, {tm, xm, 0, 0}};
  const double loop_phase = wilson_line_phase(field, rectangle, subdivisions);
  if (builtin) {
    bounded_verdict(report, "pure_gauge_loop", std::abs(loop_phase), 1e-9);
  } else {
    add_verdict(report, "loop_phase_finite", loop_phase, 0.0, std::isfinite(loop_phase));
  }
  report.summary["loop_phase"] = loop_phase;

  const std::vector<Eigen::Vector4d> leg_a = {{tm, xm, 0, 0}, {tm, xp, 0, 0}};
  const std::vector<Eigen::Vector4d> leg_b = {{tm, xp, 0, 0}, {tp, xp, 0, 0}};
  const std::vector<Eigen::Vector4d> joined = {{tm, xm, 0, 0}, {tm, xp, 0, 0}, {tp, xp, 0, 0}};
  const double additivity = std::abs(wilson_line_phase(field, joined, subdivisions) -
                                     wilson_line_phase(field, leg_a, subdivisions) -
                                     wilson_line_phase(field, leg_b, subdivisions));
  bounded_verdict(report, "additivity", additivity, 1e-11);

  std::vector<Eigen::Vector4d> reversed(rectangle.rbegin(), rectangle.rend());
  const double reversal = std::abs(wilson_line_phase(field, reversed, subdivisions) +
                                   loop_phase);
  bounded_verdict(report, "reversal_antisymmetry", reversal, 0.0);

  // Tuning residual must shrink at second order in the lattice spacing. The
  // check field is a curved pure gauge, resampled at every spacing.
  const PeriodState probe = moving_state(1.0, BoostParameters(0.5, 0.0, 0.0));
  const auto curved = [](const Eigen::Vector4d& x) {
    const double u = x[1] + 0.5 * x[0];
    return Eigen::Vector4d(0.15 * std::cos(u), 0.3 * std::cos(u), 0.0, 0.0);
  };
  const double spacings[3] = {1e-2, 5e-3, 2.5e-3};
  double residuals[3];
  std::ostringstream tuning_csv;
  tuning_csv << "h,residual\n";
  char line[96];
  for (int i = 0; i < 3; ++i) {
    const double h = spacings[i];
    const int nodes = static_cast<int>(std::lround(0.2 / h)) + 1;
    const GaugeField check_field = GaugeField::sample(
        {GridAxis{0.0, 0.2, nodes}, GridAxis{0.0, 0.2, nodes}, GridAxis{0, 0, 1},
         GridAxis{0, 0, 1}},
        curved, charge);
    const TuningReport tuning =
        tuning_check(probe, check_field,
                     TuningGrid{Eigen::Vector4d::Zero(), h, {nodes, nodes, 1, 1}});
    residuals[i] = tuning.max_residual;
    std::snprintf(line, sizeof(line), "%.17g,%.17g\n", h, tuning.max_residual);
    tuning_csv << line;
  }
  outputs.write("tuning.csv", tuning_csv.str());
  const double slope = std::log2(residuals[0] / residuals[2]) / 2.0;
  bounded_verdict(report, "tuning_order", std::abs(slope - 2.0), 0.2);
  report.summary["tuning_order"] = slope;

  std::ostringstream checks;
  checks << "check,value\n";
  checks << "loop_phase," << format_double(loop_phase) << "\n";
  checks << "additivity," << format_double(additivity) << "\n";
  checks << "reversal," << format_double(reversal) << "\n";
  checks << "tuning_order," << format_double(slope) << "\n";
  outputs.write("gauge_checks.csv", checks.str());
}

void run_bohr_sommerfeld(const json& params, RunReport& report, Outputs& outputs) {
  const std::string kind = params.at("potential").get<std::string>();
  const double mass = params.at("m").get<double>();
  const int n_min = params.at("n_min").get<int>();
  const int n_max = params.at("n_max").get<int>();
  const BoundaryCondition bc = parse_bc(params.at("bc").get<std::string>());
  const int panels = params.at("panels").get<int>();

  PotentialSpec spec = HarmonicOscillator{};
  if (kind == "harmonic") {
    spec = HarmonicOscillator{mass, params.at("omega").get<double>()};
  } else if (kind == "coulomb") {
    spec = CoulombPotential{mass, params.at("alpha").get<double>(),
                            params.at("l").get<int>()};
  } else if (kind == "square_well") {
    spec = SquareWell{mass, params.at("width").get<double>()};
  } else if (kind == "tabulated") {
    const std::string path = params.at("potential_csv").get<std::string>();
    if (path.empty()) throw ConfigError("missing key: potential_csv");
    spec = load_potential(path);
  } else {
    throw ConfigError("potential must be harmonic, coulomb, square_well or tabulated");
  }

  const std::vector<LevelResult> levels =
      bohr_sommerfeld_levels(spec, n_min, n_max, bc, panels);
  outputs.write("levels.csv", to_csv(levels));

  const double offset = mode_offset(bc);
  double action_worst = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < levels.size(); ++i) {
    action_worst = std::max(
        action_worst,
        std::abs(levels[i].action_value - two_pi * (levels[i].n + offset)));
    if (i > 0) min_gap = std::min(min_gap, levels[i].energy - levels[i - 1].energy);
  }
  bounded_verdict(report, "action_residual_max", action_worst, 1e-9);
  if (levels.size() > 1) {
    add_verdict(report, "strictly_increasing", min_gap, 0.0, min_gap > 0.0);
  }

  if (kind == "harmonic") {
    const double omega = params.at("omega").get<double>();
    double worst = 0.0;
    for (const LevelResult& level : levels) {
      worst = std::max(worst, std::abs(level.energy - (level.n + offset) * omega));
    }
    bounded_verdict(report, "oscillator_oracle", worst, 1e-8);
  } else if (kind == "coulomb") {
    const double alpha = params.at("alpha").get<double>();
    const int l = params.at("l").get<int>();
    double worst = 0.0;
    for (const LevelResult& level : levels) {
      const double principal = level.n + offset + l;
      const double bohr = -mass * alpha * alpha / (2.0 * principal * principal);
      worst = std::max(worst, std::abs(level.energy - bohr) / std::abs(bohr));
    }
    bounded_verdict(report, "bohr_oracle_rel", worst, 1e-3);
  } else if (kind == "square_well") {
    const double width = params.at("width").get<double>();
    double worst = 0.0;
    for (const LevelResult& level : levels) {
      const double exact = pi * pi * (level.n + offset) * (level.n + offset) /
                           (2.0 * mass * width * width);
      worst = std::max(worst, std::abs(level.energy - exact) / exact);
    }
    bounded_verdict(report, "well_oracle_rel", worst, 1e-8);
  }

  report.summary["levels"] = levels.size();
  report.summary["E_first"] = levels.front().energy;
  report.summary["E_last"] = levels.back().energy;
}

void run_cyclic_kernel(const json& params, RunReport& report, Outputs& outputs) {
  const CyclicKernelSpec spec{params.at("T").get<double>(), params.at("beta").get<double>(),
                              params.at("w_max").get<int>(), params.at("n_max").get<int>()};
  const KernelComparison comparison =
      certify_equivalence(spec, params.at("grid_points").get<int>());
  outputs.write("kernel.csv", to_csv(comparison));

  bounded_verdict(report, "max_deviation", comparison.max_deviation, 1e-9);
  bounded_verdict(report, "winding_tail", comparison.tail_winding, 1e-12);
  bounded_verdict(report, "spectral_tail", comparison.tail_spectral, 1e-12);
  report.summary["max_deviation"] = comparison.max_deviation;
}

void run_dirac_check(const json& params, RunReport& report, Outputs& outputs) {
  const double charge = params.at("e").get<double>();
  const std::string loop_csv = params.at("loop_csv").get<std::string>();

  GaugeLoop loop;
  bool builtin = loop_csv.empty();
  if (builtin) {
    const double strength = params.at("monopole").get<double>();
    const double radius = params.at("radius").get<double>();
    const int samples = params.at("samples").get<int>();
    loop.positions.resize(samples, 3);
    loop.potentials.resize(samples, 3);
    for (int j = 0; j < samples; ++j) {
      const double phi = two_pi * j / samples;
      loop.positions.row(j) << radius * std::cos(phi), radius * std::sin(phi), 0.0;
      // North-gauge monopole potential on the equator.
      loop.potentials.row(j) << -strength / radius * std::sin(phi),
          strength / radius * std::cos(phi), 0.0;
    }
  } else {
    loop = load_gauge_loop(loop_csv);
  }

  const QuantizationVerdict verdict = dirac_quantization_check(loop, charge);
  outputs.write("dirac.csv", to_csv(verdict));

  bounded_verdict(report, "dirac_residual", verdict.residual, 1e-3);
  if (builtin) {
    const double strength = params.at("monopole").get<double>();
    const double expected = std::round(2.0 * charge * strength);
    add_verdict(report, "expected_quantum", static_cast<double>(verdict.nearest), expected,
                verdict.nearest == static_cast<long>(expected));
  }
  report.summary["raw"] = verdict.raw;
  report.summary["n"] = verdict.nearest;
}

void run_flux_check(const json& params, RunReport& report, Outputs& outputs) {
  const double charge = params.at("e").get<double>();
  const std::string loop_csv = params.at("loop_csv").get<std::string>();

  PhaseLoop loop;
  bool builtin = loop_csv.empty();
  int expected_winding = 0;
  if (builtin) {
    expected_winding = params.at("winding").get<int>();
    const double radius = params.at("radius").get<double>();
    const int samples = params.at("samples").get<int>();
    loop.positions.resize(samples, 3);
    loop.phases.resize(samples);
    for (int j = 0; j < samples; ++j) {
      const double phi = two_pi * j / samples;
      loop.positions.row(j) << radius * std::cos(phi), radius * std::sin(phi), 0.0;
      loop.phases[j] = expected_winding * std::atan2(std::sin(phi), std::cos(phi));
    }
  } else {
    loop = load_phase_loop(loop_csv);
  }

  const QuantizationVerdict verdict = flux_quantization_check(loop, charge);
  outputs.write("flux.csv", to_csv(verdict));

  bounded_verdict(report, "flux_residual", verdict.residual,
                  kWindingResidualLimit * std::abs(verdict.unit));
  if (builtin) {
    add_verdict(report, "winding_recovered", static_cast<double>(verdict.nearest),
                static_cast<double>(expected_winding),
                verdict.nearest == expected_winding);
  }
  report.summary["flux"] = verdict.raw;
  report.summary["n"] = verdict.nearest;
}

void run_kk_tower(const json& params, RunReport& report, Outputs& outputs) {
  const double length = params.at("lambda").get<double>();
  const int n_max = params.at("n_max").get<int>();
  const BoundaryCondition bc = parse_bc(params.at("bc").get<std::string>());

  const SpectrumResult tower = kk_tower({length, bc}, n_max);
  outputs.write("tower.csv", to_csv(tower));

  // Duality: the tower must coincide with the rest-frame energy spectrum of
  // the state whose Compton recurrence equals the compactification length.
  const SpectrumResult rest =
      harmonic_spectrum(two_pi / length, Eigen::Vector3d::Zero(), n_max, bc);
  double worst = 0.0;
  for (int i = 0; i < n_max; ++i) {
    worst = std::max(worst, std::abs(tower.omega[i] - rest.omega[i]) / rest.omega[i]);
  }
  bounded_verdict(report, "duality_max_rel_dev", worst, 1e-12);
  report.summary["m_1"] = tower.omega[0];
}

void run_freezeout(const json& params, RunReport& report, Outputs& outputs) {
  const double k_gradient = params.at("k_gradient").get<double>();
  const double omega0 = params.at("omega0").get<double>();
  const double s_min = params.at("s_min").get<double>();
  const double s_max = params.at("s_max").get<double>();
  const int points = params.at("points").get<int>();
  const double ds = params.at("ds").get<double>();
  if (points < 2) throw ConfigError("points must be at least 2");

  FreezeoutScheme scheme{k_gradient,
                         contravariant(omega0, omega0, 0.0, 0.0), s_min, s_max};
  validate(scheme);

  std::vector<FreezeoutSample> scan;
  std::vector<double> null_residuals;
  scan.reserve(points);
  const double e0 = freezeout_evolution(scheme, s_min).energy;

  double product_worst = 0.0, warp_worst = 0.0, reciprocity_worst = 0.0,
         null_worst = 0.0;
  bool monotone = true;
  Eigen::Vector4d reference_product;
  for (int i = 0; i < points; ++i) {
    const double s = s_min + (s_max - s_min) * i / (points - 1);
    const FreezeoutSample sample = freezeout_evolution(scheme, s);

    product_worst = std::max(
        product_worst, std::abs(sample.energy * sample.conformal_period - two_pi));
    warp_worst = std::max(warp_worst,
                          std::abs(sample.warp_factor -
                                   (sample.energy / e0) * (sample.energy / e0)));

    const Eigen::Vector4d product =
        sample.momentum.components.cwiseProduct(sample.period.components);
    if (i == 0) {
      reference_product = product;
    } else {
      reciprocity_worst = std::max(
          reciprocity_worst, (product - reference_product).cwiseAbs().maxCoeff());
      monotone &= sample.energy < scan.back().energy;
      monotone &= sample.conformal_period > scan.back().conformal_period;
    }

    // Virtual displacement tuned to the warp: dx.dx = e^{2Ks} ds^2.
    const double stretch = std::exp(k_gradient * s) * ds;
    const FourVector dx =
        contravariant(stretch * std::cosh(0.5), stretch * std::sinh(0.5), 0.0, 0.0);
    const double null_residual = null_interval_check(scheme, s, dx, ds);
    null_worst = std::max(null_worst, std::abs(null_residual));

    scan.push_back(sample);
    null_residuals.push_back(null_residual);
  }
  outputs.write("freezeout.csv", freezeout_csv(scan, null_residuals));

  bounded_verdict(report, "conformal_product_max", product_worst, 1e-12);
  bounded_verdict(report, "warp_consistency_max", warp_worst, 1e-12);
  bounded_verdict(report, "reciprocity_max", reciprocity_worst, 1e-12);
  bounded_verdict(report, "null_interval_max", null_worst, 1e-12);
  add_verdict(report, "monotonic_cooling", monotone ? 1.0 : 0.0, 1.0, monotone);
  report.summary["E_initial"] = e0;
  report.summary["E_final"] = scan.back().energy;
}

}  // namespace

const std::vector<ScenarioInfo>& catalog() {
  static const std::vector<ScenarioInfo> scenarios = build_catalog();
  return scenarios;
}

std::string catalog_text() {
  std::ostringstream os;
  for (const ScenarioInfo& info : catalog()) {
    os << "scenario " << info.name << ": " << info.summary << "\n";
    for (const ParamSpec& param : info.params) {
      os << "  " << param.key << " (" << type_name(param.type) << ", " << param.unit
         << ")";
      if (param.required()) {
        os << " [required]";
      } else {
        os << " [default " << param.default_value->dump() << "]";
      }
      os << " " << param.description << "\n";
    }
  }
  return os.str();
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw IoError("config file not found: " + path.string());
  }
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(doc);
}

ScenarioConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& item : doc.items()) {
    const std::string& key = item.key();
    if (key != "scenario" && key != "parameters" && key != "output" && key != "seed") {
      throw ConfigError("unknown config key: " + key);
    }
  }
  if (!doc.contains("scenario") || !doc.at("scenario").is_string()) {
    throw ConfigError("config needs a scenario name");
  }

  ScenarioConfig config;
  config.name = doc.at("scenario").get<std::string>();
  if (doc.contains("parameters")) {
    if (!doc.at("parameters").is_object()) {
      throw ConfigError("parameters must be an object");
    }
    config.parameters = doc.at("parameters");
  }
  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) throw ConfigError("output must be a path string");
    config.output_dir = doc.at("output").get<std::string>();
  }
  if (doc.contains("seed")) {
    const json& seed = doc.at("seed");
    const bool valid = seed.is_number_unsigned() ||
                       (seed.is_number_integer() && seed.get<std::int64_t>() >= 0);
    if (!valid) throw ConfigError("seed must be a non-negative integer");
    config.seed = seed.get<std::uint64_t>();
  }
  return config;
}

bool RunReport::pass() const {
  for (const Verdict& verdict : verdicts) {
    if (!verdict.pass) return false;
  }
  return true;
}

std::string RunReport::text() const {
  std::ostringstream os;
  os << "scenario: " << scenario << "\n";
  os << "seed: " << seed << " (" << kGeneratorNote << ")\n";
  for (const Verdict& verdict : verdicts) {
    os << "verdict " << verdict.name << ": " << (verdict.pass ? "PASS" : "FAIL")
       << " (measured " << format_double(verdict.measured) << ", threshold "
       << format_double(verdict.threshold) << ")\n";
  }
  os << "result: " << (pass() ? "PASS" : "FAIL") << "\n";
  os << "duration_ms: " << duration_ms << "\n";
  for (const std::string& name : outputs) os << "output: " << name << "\n";
  return os.str();
}

json RunReport::to_json() const {
  json verdict_list = json::array();
  for (const Verdict& verdict : verdicts) {
    verdict_list.push_back({{"name", verdict.name},
                            {"pass", verdict.pass},
                            {"measured", verdict.measured},
                            {"threshold", verdict.threshold}});
  }
  return {{"scenario", scenario}, {"seed", seed},
          {"generator", kGeneratorNote},  {"parameters", parameters},
          {"summary", summary},           {"verdicts", verdict_list},
          {"pass", pass()},               {"duration_ms", duration_ms},
          {"outputs", outputs}};
}

RunReport run_scenario(const ScenarioConfig& config) {
  const ScenarioInfo& info = find_scenario(config.name);
  const json params = validated_parameters(info, config.parameters);

  RunReport report;
  report.scenario = config.name;
  report.seed = config.seed;
  report.parameters = params;

  Outputs outputs{config.output_dir, {}};
  const auto start = std::chrono::steady_clock::now();

  if (config.name == "spectrum") {
    run_spectrum(params, report, outputs);
  } else if (config.name == "boost") {
    run_boost(params, config.seed, report, outputs);
  } else if (config.name == "redshift") {
    run_redshift(params, report, outputs);
  } else if (config.name == "gauge_phase") {
    run_gauge_phase(params, report, outputs);
  } else if (config.name == "bohr_sommerfeld") {
    run_bohr_sommerfeld(params, report, outputs);
  } else if (config.name == "cyclic_kernel") {
    run_cyclic_kernel(params, report, outputs);
  } else if (config.name == "dirac_check") {
    run_dirac_check(params, report, outputs);
  } else if (config.name == "flux_check") {
    run_flux_check(params, report, outputs);
  } else if (config.name == "kk_tower") {
    run_kk_tower(params, report, outputs);
  } else if (config.name == "freezeout") {
    run_freezeout(params, report, outputs);
  }

  const auto end = std::chrono::steady_clock::now();
  report.duration_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(end - start)
          .count();
  report.outputs = outputs.written;

  write_file_atomic(config.output_dir / "report.txt", report.text());
  write_file_atomic(config.output_dir / "report.json", report.to_json().dump(2) + "\n");
  report.outputs.push_back("report.txt");
  report.outputs.push_back("report.json");
  return report;
}

}  // namespace cycles::scenario
