#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cycles/spectrum.hpp"

namespace cycles {

struct HarmonicOscillator {
  double mass = 1.0;
  double omega = 1.0;
};

/// Radial attractive Coulomb problem -alpha/r with centrifugal term
/// l^2 / (2 m r^2). Solving the integer-action condition with this term
/// reproduces the Bohr tower at principal number n = n_r + l + 1.
struct CoulombPotential {
  double mass = 1.0;
  double coupling = 1.0;
  int angular_l = 0;
};

/// Flat box with hard walls at 0 and width.
struct SquareWell {
  double mass = 1.0;
  double width = 1.0;
};

/// Piecewise-linear potential through strictly increasing sample positions.
struct TabulatedPotential {
  Eigen::VectorXd x;
  Eigen::VectorXd v;
};

using PotentialSpec =
    std::variant<HarmonicOscillator, CoulombPotential, SquareWell, TabulatedPotential>;

/// Loads a TabulatedPotential from CSV columns x,V.
TabulatedPotential load_potential(const std::filesystem::path& path);

/// Full-period action integral: 2 int sqrt(2 m (E - V)) dx between the
/// turning points (or walls) at energy E. Turning points are located by
/// bisection to 1e-12 and square-root endpoints are regularized by the
/// substitution x = x0 +- u^2 before Gauss-Legendre quadrature.
double action_integral(const PotentialSpec& potential, double energy, int panels = 64);

struct LevelResult {
  int n = 0;
  double energy = 0.0;
  double action_value = 0.0;
  double turning_lo = 0.0;
  double turning_hi = 0.0;
  int iterations = 0;
};

/// Solves action(E) = 2 pi (n + offset) for n in [n_min, n_max], offset 0
/// for periodic and 1/2 for anti-periodic boundary conditions. Energies are
/// found by bracketed bisection/secant to |action - target| < 1e-9.
std::vector<LevelResult> bohr_sommerfeld_levels(
    const PotentialSpec& potential, int n_min, int n_max,
    BoundaryCondition bc = BoundaryCondition::Periodic, int panels = 64);

/// CSV with columns n,E,action,x_minus,x_plus.
std::string to_csv(const std::vector<LevelResult>& levels);

}  // namespace cycles
