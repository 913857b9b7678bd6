#include <doctest.h>

#include <cmath>
#include <complex>
#include <fstream>

#include "cycles/constants.hpp"
#include "cycles/errors.hpp"
#include "cycles/modulation.hpp"
#include "cycles/spectrum.hpp"

using namespace cycles;
using constants::pi;
using constants::two_pi;

namespace {

GaugeField constant_field(const Eigen::Vector4d& a, double charge, double extent = 2.0) {
  return GaugeField::sample(
      {GridAxis{-extent, extent, 3}, GridAxis{-extent, extent, 3},
       GridAxis{-extent, extent, 3}, GridAxis{-extent, extent, 3}},
      [a](const Eigen::Vector4d&) { return a; }, charge);
}

/// Pure gauge A = dTheta for the quadratic Theta(t,x); linear in position,
/// so interpolation and midpoint quadrature are both exact on it.
double quadratic_theta(const Eigen::Vector4d& x) {
  return 0.15 * x[0] * x[1] + 0.1 * x[1] * x[1] - 0.05 * x[0] * x[0] + 0.2 * x[1];
}

Eigen::Vector4d quadratic_theta_gradient(const Eigen::Vector4d& x) {
  return {0.15 * x[1] - 0.1 * x[0], 0.15 * x[0] + 0.2 * x[1] + 0.2, 0.0, 0.0};
}

}  // namespace

TEST_CASE("multilinear interpolation reproduces linear potentials everywhere") {
  const auto linear = [](const Eigen::Vector4d& x) {
    return Eigen::Vector4d(0.5 * x[1] + 0.25 * x[0], -x[1], 0.125 * x[2], x[3] - x[0]);
  };
  const GaugeField field = GaugeField::sample(
      {GridAxis{-1, 1, 5}, GridAxis{-1, 1, 5}, GridAxis{-1, 1, 4}, GridAxis{-1, 1, 3}},
      linear, 1.0);

  // Exact at nodes.
  CHECK((field.at({-1, -1, -1, -1}) - linear({-1, -1, -1, -1})).norm() < 1e-12);
  CHECK((field.at({0.5, 0.5, -1.0 / 3, 0}) - linear({0.5, 0.5, -1.0 / 3, 0})).norm() <
        1e-12);
  // Exact in cell interiors too.
  CHECK((field.at({0.13, -0.41, 0.77, 0.05}) - linear({0.13, -0.41, 0.77, 0.05})).norm() <
        1e-12);
}

TEST_CASE("evaluation outside the lattice domain is rejected") {
  const GaugeField field = constant_field({1, 0, 0, 0}, 1.0, 1.0);
  CHECK_THROWS_AS(field.at({0, 1.5, 0, 0}), GridDomainError);
  CHECK_THROWS_AS(field.at({-1.5, 0, 0, 0}), GridDomainError);
}

TEST_CASE("gauge lattice round-trips through its CSV form") {
  const auto potential = [](const Eigen::Vector4d& x) {
    return Eigen::Vector4d(x[0] + x[1], x[1] * x[2], std::sin(x[3]), 1.0);
  };
  const GaugeField field = GaugeField::sample(
      {GridAxis{0, 1, 3}, GridAxis{0, 2, 4}, GridAxis{-1, 1, 2}, GridAxis{0, 0, 1}},
      potential, 2.0);

  const auto path = std::filesystem::temp_directory_path() / "cycles_gauge_roundtrip.csv";
  std::ofstream out(path);
  out.precision(17);
  out << "x,y,z,t,A0,A1,A2,A3\n";
  for (int it = 0; it < 3; ++it) {
    for (int ix = 0; ix < 4; ++ix) {
      for (int iy = 0; iy < 2; ++iy) {
        const Eigen::Vector4d x(field.node_coordinate(0, it), field.node_coordinate(1, ix),
                                field.node_coordinate(2, iy), 0.0);
        const Eigen::Vector4d a = potential(x);
        out << x[1] << "," << x[2] << "," << x[3] << "," << x[0] << "," << a[0] << ","
            << a[1] << "," << a[2] << "," << a[3] << "\n";
      }
    }
  }
  out.close();

  const GaugeField loaded = load_gauge_field(path, 2.0);
  CHECK((loaded.at({0.5, 1.3, 0.4, 0.0}) - field.at({0.5, 1.3, 0.4, 0.0})).norm() < 1e-12);
  std::filesystem::remove(path);
}

TEST_CASE("zero GM is the identity modulation") {
  const PeriodState base = rest_state(1.0);
  const NewtonianSample sample = newtonian_modulation(0.0, base, {1.0, 0.0, 0.0});
  CHECK(sample.energy_scale == 1.0);
  CHECK(sample.period_scale == 1.0);
  CHECK(sample.harmony_residual_abs < 1e-15);
}

TEST_CASE("solar-surface modulation shifts the period by -2.1225e-6") {
  const double gm = constants::solar_gm_si /
                    (constants::speed_of_light * constants::speed_of_light);
  const PeriodState base = rest_state(1.0);
  const NewtonianSample sample =
      newtonian_modulation(gm, base, {constants::solar_radius_si, 0.0, 0.0});
  const double shift = sample.period_scale - 1.0;
  CHECK(std::abs(shift - (-2.1225e-6)) < 1e-3 * 2.1225e-6);
}

TEST_CASE("phase-harmony residual of the modulation is second order") {
  const PeriodState base = rest_state(1.0);
  const NewtonianSample sample = newtonian_modulation(1e-3, base, {1.0, 0.0, 0.0});
  CHECK(sample.harmony_residual_rel <= 1.000001e-6);
  CHECK(sample.harmony_residual_rel >= 0.999999e-6);

  // |k'.T' - 2 pi| <= C eps^2 with C <= 10, including moving states.
  const PeriodState moving = moving_state(2.0, BoostParameters(0.5, 0.2, 0.0));
  for (double eps : {1e-4, 1e-3, 1e-2}) {
    const NewtonianSample s = newtonian_modulation(eps, moving, {1.0, 0.0, 0.0});
    CHECK(s.harmony_residual_abs <= 10.0 * eps * eps);
  }
}

TEST_CASE("modulation domain errors") {
  const PeriodState base = rest_state(1.0);
  CHECK_THROWS_AS(newtonian_modulation(1.0, base, {0.0, 0.0, 0.0}), SingularityError);
  CHECK_THROWS_AS(newtonian_modulation(0.2, base, {1.0, 0.0, 0.0}),
                  LinearizationDomainError);
}

TEST_CASE("redshift between equal radii vanishes and deeper emission is redshifted") {
  CHECK(gravitational_redshift(1.0, 100.0, 100.0) == 0.0);
  CHECK(gravitational_redshift(1.0, 50.0, 200.0) < 0.0);
  CHECK(gravitational_redshift(1.0, 200.0, 50.0) > 0.0);
  CHECK_THROWS_AS(gravitational_redshift(1.0, 5.0, 100.0), LinearizationDomainError);
}

TEST_CASE("solar redshift to infinity matches the constant-derived value") {
  const double gm = constants::solar_gm_si /
                    (constants::speed_of_light * constants::speed_of_light);
  const double shift = gravitational_redshift(
      gm, constants::solar_radius_si, std::numeric_limits<double>::infinity());
  CHECK(std::abs(shift - (-2.1225e-6)) < 1e-3 * 2.1225e-6);
}

TEST_CASE("minimal substitution with a vanishing potential is the identity") {
  const PeriodState base = moving_state(1.0, BoostParameters(0.6, 0.0, 0.0));
  const GaugeField field = constant_field(Eigen::Vector4d::Zero(), 1.0);
  const FourVector k = minimal_substitution(base, field, {0.1, 0.2, 0.0, 0.0});
  CHECK((k.components - lower_index(base.momentum).components).norm() == 0.0);
}

TEST_CASE("constant scalar potential shifts the energy exactly") {
  const PeriodState base = rest_state(1.0);
  const GaugeField field = constant_field({0.25, 0.0, 0.0, 0.0}, 1.0);
  const FourVector k = minimal_substitution(base, field, {0.0, 0.5, 0.0, 0.0});
  CHECK(k.components[0] == 0.75);
  CHECK(k.index == IndexPosition::Covariant);
}

TEST_CASE("linear potentials interpolate exactly through the substitution") {
  const PeriodState base = rest_state(1.0);
  const GaugeField field = GaugeField::sample(
      {GridAxis{0, 0, 1}, GridAxis{-1, 1, 9}, GridAxis{0, 0, 1}, GridAxis{0, 0, 1}},
      [](const Eigen::Vector4d& x) { return Eigen::Vector4d(0.3 * x[1], 0, 0, 0); }, 1.0);
  for (double x : {-1.0, -0.75, -0.31, 0.0, 0.42, 1.0}) {
    const FourVector k = minimal_substitution(base, field, {0.0, x, 0.0, 0.0});
    CHECK(std::abs(k.components[0] - (1.0 - 0.3 * x)) < 1e-12);
  }
}

TEST_CASE("Wilson line of a vanishing potential is zero") {
  const GaugeField field = constant_field(Eigen::Vector4d::Zero(), 1.0);
  CHECK(wilson_line_phase(field, {{0, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}}) == 0.0);
}

TEST_CASE("constant potential along a straight segment integrates exactly") {
  const double a = 0.7, e = 1.3, length = 1.5;
  const GaugeField field = constant_field({0.0, a, 0.0, 0.0}, e);
  const double phase = wilson_line_phase(field, {{0, 0, 0, 0}, {0, length, 0, 0}});
  CHECK(std::abs(phase - e * a * length) < 1e-12);
}

TEST_CASE("pure-gauge closed rectangles integrate to zero") {
  const GaugeField field = GaugeField::sample(
      {GridAxis{-1, 1, 9}, GridAxis{-1, 1, 9}, GridAxis{0, 0, 1}, GridAxis{0, 0, 1}},
      quadratic_theta_gradient, 1.0);
  const std::vector<Eigen::Vector4d> rectangle = {
      {-0.8, -0.6, 0, 0}, {-0.8, 0.7, 0, 0}, {0.5, 0.7, 0, 0}, {0.5, -0.6, 0, 0},
      {-0.8, -0.6, 0, 0}};
  CHECK(std::abs(wilson_line_phase(field, rectangle)) < 1e-9);
}

TEST_CASE("open pure-gauge paths accumulate the gauge-function difference") {
  const GaugeField field = GaugeField::sample(
      {GridAxis{-1, 1, 9}, GridAxis{-1, 1, 9}, GridAxis{0, 0, 1}, GridAxis{0, 0, 1}},
      quadratic_theta_gradient, 1.0);
  const Eigen::Vector4d from(-0.5, -0.25, 0, 0), corner(-0.5, 0.75, 0, 0),
      to(0.25, 0.75, 0, 0);
  const double expected = quadratic_theta(to) - quadratic_theta(from);
  CHECK(std::abs(wilson_line_phase(field, {from, corner, to}) - expected) < 1e-11);
}

TEST_CASE("Wilson phases add over concatenated paths and negate exactly on reversal") {
  const GaugeField field = GaugeField::sample(
      {GridAxis{-1, 1, 9}, GridAxis{-1, 1, 9}, GridAxis{0, 0, 1}, GridAxis{0, 0, 1}},
      quadratic_theta_gradient, 0.8);
  const std::vector<Eigen::Vector4d> first = {{-0.9, -0.9, 0, 0}, {-0.1, 0.4, 0, 0}};
  const std::vector<Eigen::Vector4d> second = {{-0.1, 0.4, 0, 0}, {0.8, 0.2, 0, 0}};
  const std::vector<Eigen::Vector4d> joined = {
      {-0.9, -0.9, 0, 0}, {-0.1, 0.4, 0, 0}, {0.8, 0.2, 0, 0}};
  CHECK(std::abs(wilson_line_phase(field, joined) - wilson_line_phase(field, first) -
                 wilson_line_phase(field, second)) < 1e-11);

  const std::vector<Eigen::Vector4d> reversed(joined.rbegin(), joined.rend());
  CHECK(wilson_line_phase(field, reversed) == -wilson_line_phase(field, joined));
}

TEST_CASE("degenerate paths integrate to zero") {
  const GaugeField field = constant_field({1, 1, 0, 0}, 1.0);
  CHECK(wilson_line_phase(field, {{0, 0, 0, 0}}) == 0.0);
}

TEST_CASE("free modulated waves close after one full period") {
  const PeriodState base = moving_state(1.0, BoostParameters(0.6, 0.0, 0.0));
  const ModulatedState state = free_modulated_state(base);
  const Eigen::Vector4d start(0.3, 0.1, 0.0, 0.0);
  const Eigen::Vector4d end = start + base.period.components;
  const std::complex<double> value = modulated_wave(state, {start, end});
  CHECK(std::abs(value - 1.0) < 1e-10);
}

TEST_CASE("free modulated waves match single-mode synthesis along any path") {
  const PeriodState base = moving_state(1.0, BoostParameters(0.4, 0.0, 0.0));
  const ModulatedState state = free_modulated_state(base);
  const HarmonicField mode = single_mode_field(base, 1);
  const Eigen::Vector4d start(0.0, 0.0, 0.0, 0.0);
  for (const Eigen::Vector4d& end :
       {Eigen::Vector4d(1.0, 0.5, 0.0, 0.0), Eigen::Vector4d(-0.7, 2.0, 0.3, 0.1)}) {
    const std::complex<double> wave = modulated_wave(state, {start, end});
    const std::complex<double> ratio =
        synthesize(mode, contravariant(end)) / synthesize(mode, contravariant(start));
    CHECK(std::abs(wave - ratio) < 1e-10);
  }
}

TEST_CASE("Newtonian wave on a purely temporal path accumulates (1+GM/r) omega dt") {
  const double gm = 1e-3;
  const PeriodState base = rest_state(2.0);
  const ModulatedState state = modulated_state(NewtonianField{gm}, base);
  const double r = 1.0, dt = 0.75;
  const std::complex<double> value =
      modulated_wave(state, {{0.0, r, 0.0, 0.0}, {dt, r, 0.0, 0.0}});
  const double expected_phase = (1.0 + gm / r) * 2.0 * dt;
  CHECK(std::abs(value - std::exp(std::complex<double>(0.0, -expected_phase))) < 1e-12);
}

TEST_CASE("gauge wave with a constant potential shifts the rate by -e A0") {
  const double e = 1.2, a0 = 0.25, dt = 1.25;
  const PeriodState base = rest_state(1.0);
  const ModulatedState state = modulated_state(constant_field({a0, 0, 0, 0}, e), base);
  const std::complex<double> value =
      modulated_wave(state, {{0.0, 0.0, 0.0, 0.0}, {dt, 0.0, 0.0, 0.0}});
  const double expected_phase = (1.0 - e * a0) * dt;
  CHECK(std::abs(value - std::exp(std::complex<double>(0.0, -expected_phase))) < 1e-12);
}

TEST_CASE("modulated states keep phase harmony locally") {
  const PeriodState base = moving_state(1.5, BoostParameters(0.3, 0.0, 0.1));
  const ModulatedState gauge = modulated_state(
      ModulationField(constant_field({0.05, 0.02, 0.0, 0.0}, 0.7)), base);
  const ModulatedState newton = modulated_state(NewtonianField{1e-4}, base);
  for (const Eigen::Vector4d& x :
       {Eigen::Vector4d(0.0, 0.4, 0.1, 0.0), Eigen::Vector4d(1.0, -0.8, 0.3, 0.2)}) {
    const double gauge_product =
        gauge.local_momentum(x).components.dot(gauge.local_period(x).components);
    CHECK(std::abs(gauge_product - two_pi) < 1e-10);

    const double eps = 1e-4 / x.tail<3>().norm();
    const double newton_product =
        newton.local_momentum(x).components.dot(newton.local_period(x).components);
    CHECK(std::abs(newton_product - two_pi) <= 10.0 * eps * eps * two_pi);
  }
}

TEST_CASE("tuning residual is pure finite-difference error for simple fields") {
  const PeriodState probe = moving_state(1.0, BoostParameters(0.5, 0.0, 0.0));
  const double h = 1e-3;
  const int nodes = 21;
  const TuningGrid grid{Eigen::Vector4d::Zero(), h, {nodes, nodes, 1, 1}};
  const std::array<GridAxis, 4> axes = {GridAxis{0, h * (nodes - 1), nodes},
                                        GridAxis{0, h * (nodes - 1), nodes},
                                        GridAxis{0, 0, 1}, GridAxis{0, 0, 1}};

  const GaugeField zero = GaugeField::sample(
      axes, [](const Eigen::Vector4d&) { return Eigen::Vector4d::Zero(); }, 1.0);
  CHECK(tuning_check(probe, zero, grid).max_residual < 1e-6);

  const GaugeField constant = GaugeField::sample(
      axes, [](const Eigen::Vector4d&) { return Eigen::Vector4d(0.2, -0.1, 0, 0); }, 1.0);
  CHECK(tuning_check(probe, constant, grid).max_residual < 1e-6);

  const GaugeField pure_gauge = GaugeField::sample(axes, quadratic_theta_gradient, 1.0);
  CHECK(tuning_check(probe, pure_gauge, grid).max_residual < 1e-6);
}

TEST_CASE("tuning residual converges at second order in the spacing") {
  const PeriodState probe = moving_state(1.0, BoostParameters(0.5, 0.0, 0.0));
  const auto curved = [](const Eigen::Vector4d& x) {
    const double u = x[1] + 0.5 * x[0];
    return Eigen::Vector4d(0.15 * std::cos(u), 0.3 * std::cos(u), 0.0, 0.0);
  };
  double residuals[3];
  const double spacings[3] = {1e-2, 5e-3, 2.5e-3};
  for (int i = 0; i < 3; ++i) {
    const double h = spacings[i];
    const int nodes = static_cast<int>(std::lround(0.2 / h)) + 1;
    const GaugeField field = GaugeField::sample(
        {GridAxis{0, 0.2, nodes}, GridAxis{0, 0.2, nodes}, GridAxis{0, 0, 1},
         GridAxis{0, 0, 1}},
        curved, 1.0);
    residuals[i] =
        tuning_check(probe, field, TuningGrid{Eigen::Vector4d::Zero(), h,
                                              {nodes, nodes, 1, 1}})
            .max_residual;
  }
  const double order = std::log2(residuals[0] / residuals[2]) / 2.0;
  CHECK(order == doctest::Approx(2.0).epsilon(0.1));
}
