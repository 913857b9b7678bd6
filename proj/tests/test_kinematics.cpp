#include <doctest.h>

#include <cmath>
#include <random>

#include "cycles/constants.hpp"
#include "cycles/errors.hpp"
#include "cycles/kinematics.hpp"
#include "cycles/rng.hpp"

using namespace cycles;
using constants::pi;
using constants::two_pi;

namespace {

PeriodState random_state(std::mt19937_64& rng, double beta_max = 0.99) {
  const double mass = uniform(rng, 0.1, 10.0);
  // Random direction, speed up to beta_max.
  const double speed = uniform(rng, 0.0, beta_max);
  const double cos_t = uniform(rng, -1.0, 1.0);
  const double sin_t = std::sqrt(1.0 - cos_t * cos_t);
  const double phi = uniform(rng, 0.0, two_pi);
  Eigen::Vector3d dir(sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t);
  return moving_state(mass, BoostParameters(speed * dir));
}

BoostParameters random_boost(std::mt19937_64& rng, double beta_max = 0.99) {
  const double speed = uniform(rng, 0.0, beta_max);
  const double cos_t = uniform(rng, -1.0, 1.0);
  const double sin_t = std::sqrt(1.0 - cos_t * cos_t);
  const double phi = uniform(rng, 0.0, two_pi);
  Eigen::Vector3d dir(sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t);
  return BoostParameters(speed * dir);
}

}  // namespace

TEST_CASE("index raising and lowering round-trips exactly") {
  const FourVector v = contravariant(1.5, -0.25, 3.0, 0.125);
  const FourVector back = raise_index(lower_index(v));
  CHECK(back.components == v.components);
  CHECK(back.index == IndexPosition::Contravariant);
  CHECK(lower_index(v).components[1] == 0.25);
}

TEST_CASE("boost at zero velocity is the identity") {
  const FourVector k = contravariant(2.0, 0.0, 0.0, 0.0);
  const FourVector out = boost(k, BoostParameters(0.0, 0.0, 0.0));
  CHECK(out.components == k.components);
}

TEST_CASE("boost of a rest momentum matches the hand 2x2 matrix") {
  // beta = 0.6: gamma = 1.25, so (1,0,0,0) -> (1.25, 0.75, 0, 0).
  const FourVector k = contravariant(1.0, 0.0, 0.0, 0.0);
  const FourVector out = boost(k, BoostParameters(0.6, 0.0, 0.0));
  CHECK(std::abs(out.components[0] - 1.25) < 1e-15);
  CHECK(std::abs(out.components[1] - 0.75) < 1e-15);
  CHECK(out.components[2] == 0.0);
  CHECK(out.components[3] == 0.0);
}

TEST_CASE("Minkowski norm is boost invariant") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const PeriodState s = random_state(rng);
    const double before = minkowski_norm_sq(s.momentum);
    const double after = minkowski_norm_sq(boost(s.momentum, random_boost(rng)));
    CHECK(std::abs(after - before) <= 1e-12 * std::max(1.0, std::abs(before)));
  }
}

TEST_CASE("covariant components transform consistently with contravariant") {
  const FourVector k = contravariant(2.0, 0.3, -0.4, 0.1);
  const BoostParameters b(0.2, -0.5, 0.1);
  const FourVector lowered_then_boosted = boost(lower_index(k), b);
  const FourVector boosted_then_lowered = lower_index(boost(k, b));
  CHECK((lowered_then_boosted.components - boosted_then_lowered.components).norm() < 1e-14);
}

TEST_CASE("boost rejects superluminal velocities") {
  CHECK_THROWS_AS(BoostParameters(1.0, 0.0, 0.0), InvalidVelocityError);
  CHECK_THROWS_AS(BoostParameters(0.8, 0.8, 0.0), InvalidVelocityError);
}

TEST_CASE("gamma satisfies gamma^2 (1 - beta^2) = 1") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const BoostParameters b = random_boost(rng);
    CHECK(b.gamma() >= 1.0);
    const double g2 = b.gamma() * b.gamma();
    CHECK(std::abs(g2 * (1.0 - b.beta().squaredNorm()) - 1.0) < 1e-12);
  }
}

TEST_CASE("collinear boost composition follows velocity addition") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const double b1 = uniform(rng, -0.9, 0.9);
    const double b2 = uniform(rng, -0.9, 0.9);
    const FourVector k = contravariant(uniform(rng, 0.5, 3.0), 0.0, 0.0, 0.0);
    const FourVector two_step =
        boost(boost(k, BoostParameters(b1, 0.0, 0.0)), BoostParameters(b2, 0.0, 0.0));
    const double bsum = collinear_velocity_sum(b1, b2);
    const FourVector one_step = boost(k, BoostParameters(bsum, 0.0, 0.0));
    CHECK((two_step.components - one_step.components).norm() < 1e-11);
  }
}

TEST_CASE("period of a rest state is the Compton recurrence") {
  const FourVector T = period_from_momentum(1.0, contravariant(1.0, 0.0, 0.0, 0.0));
  CHECK(std::abs(T.components[0] - two_pi) < 1e-15);
  CHECK(T.spatial().norm() == 0.0);
}

TEST_CASE("period of a boosted momentum, frozen from hand algebra") {
  // k = (1.25, 0.75, 0, 0), m = 1: T = 2 pi k, and k.T = 2 pi since
  // 1.25 * 2.5 pi - 0.75 * 1.5 pi = 2 pi.
  const FourVector k = contravariant(1.25, 0.75, 0.0, 0.0);
  const FourVector T = period_from_momentum(1.0, k);
  CHECK(std::abs(T.components[0] - 2.5 * pi) < 1e-14);
  CHECK(std::abs(T.components[1] - 1.5 * pi) < 1e-14);
  CHECK(std::abs(contract(k, T) - two_pi) < 1e-12);
}

TEST_CASE("off-shell momenta are rejected with the residual reported") {
  const FourVector k = contravariant(1.25, 0.80, 0.0, 0.0);
  CHECK_THROWS_AS(period_from_momentum(1.0, k), DispersionError);
  try {
    period_from_momentum(1.0, k);
  } catch (const DispersionError& e) {
    CHECK(e.residual == doctest::Approx(std::abs(1.25 * 1.25 - 0.64 - 1.0)));
  }
}

TEST_CASE("period_from_momentum commutes with boosts") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const PeriodState s = random_state(rng);
    const BoostParameters b = random_boost(rng);
    const FourVector lhs = period_from_momentum(s.mass, boost(s.momentum, b));
    const FourVector rhs = boost(period_from_momentum(s.mass, s.momentum), b);
    CHECK((lhs.components - rhs.components).norm() <
          1e-12 * std::max(1.0, rhs.components.norm()));
  }
}

TEST_CASE("momentum_from_period inverts the rest case") {
  const FourVector k = momentum_from_period(1.0, contravariant(two_pi, 0.0, 0.0, 0.0));
  CHECK(std::abs(k.components[0] - 1.0) < 1e-15);

  // m = 2, T = (pi,0,0,0): k = m^2 T / 2 pi = (2,0,0,0).
  const FourVector k2 = momentum_from_period(2.0, contravariant(pi, 0.0, 0.0, 0.0));
  CHECK(std::abs(k2.components[0] - 2.0) < 1e-15);
}

TEST_CASE("momentum_from_period rejects spacelike and null periods") {
  CHECK_THROWS_AS(momentum_from_period(1.0, contravariant(1.0, 2.0, 0.0, 0.0)),
                  InvalidPeriodError);
  CHECK_THROWS_AS(momentum_from_period(1.0, contravariant(1.0, 1.0, 0.0, 0.0)),
                  InvalidPeriodError);
}

TEST_CASE("period <-> momentum round-trips on random on-shell states") {
  std::mt19937_64 rng(31);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PeriodState s = random_state(rng);
    const FourVector back =
        momentum_from_period(s.mass, period_from_momentum(s.mass, s.momentum));
    worst = std::max(worst, (back.components - s.momentum.components).norm() /
                                std::max(1.0, s.momentum.components.norm()));
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("phase harmony holds for valid states and scales linearly") {
  const PeriodState s = rest_state(1.0);
  CHECK(phase_harmony_residual(s) < 1e-12);

  PeriodState doubled = s;
  doubled.period.components *= 2.0;
  CHECK(std::abs(phase_harmony_residual(doubled) - two_pi) < 1e-12);

  const PeriodState moved = boost(s, BoostParameters(0.6, 0.0, 0.0));
  CHECK(phase_harmony_residual(moved) < 1e-12);
}

TEST_CASE("phase harmony is boost invariant over a random sweep") {
  std::mt19937_64 rng(42);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const PeriodState s = boost(random_state(rng), random_boost(rng));
    worst = std::max(worst, phase_harmony_residual(s));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("reciprocal dispersion m^2 T.T = (2 pi)^2 on constructed states") {
  std::mt19937_64 rng(57);
  for (int i = 0; i < 200; ++i) {
    CHECK(reciprocal_dispersion_residual(random_state(rng)) < 1e-10);
  }
}

TEST_CASE("electron Compton time matches the published value") {
  const double t = si_compton_time(constants::electron_mass_kg);
  CHECK(std::abs(t - 8.09329972e-21) / 8.09329972e-21 < 1e-7);
}

TEST_CASE("Compton time is exactly inverse proportional to mass") {
  const double t1 = si_compton_time(constants::electron_mass_kg);
  const double t2 = si_compton_time(2.0 * constants::electron_mass_kg);
  CHECK(t2 == t1 / 2.0);
}

TEST_CASE("proton Compton time, frozen from a hand evaluation") {
  // 2 pi hbar / (m_p c^2) with m_p = 1.67262192369e-27 kg.
  const double t = si_compton_time(1.67262192369e-27);
  CHECK(std::abs(t - 4.407748825287932e-24) / 4.407748825287932e-24 < 1e-9);
}

TEST_CASE("si_mass_from_compton_time inverts si_compton_time") {
  const double m = si_mass_from_compton_time(si_compton_time(constants::electron_mass_kg));
  CHECK(std::abs(m - constants::electron_mass_kg) / constants::electron_mass_kg < 1e-14);
  CHECK_THROWS_AS(si_compton_time(0.0), DomainError);
  CHECK_THROWS_AS(si_mass_from_compton_time(-1.0), DomainError);
}
