#include "cycles/spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "cycles/constants.hpp"
#include "cycles/errors.hpp"

namespace cycles {

using constants::two_pi;
using std::complex;

double mode_offset(BoundaryCondition bc) {
  return bc == BoundaryCondition::Periodic ? 0.0 : 0.5;
}

SpectrumResult harmonic_spectrum(double mass, const Eigen::Vector3d& momentum,
                                 int n_max, BoundaryCondition bc) {
  if (mass < 0.0) throw DomainError("mass must be non-negative");
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  const double k_norm = momentum.norm();
  if (mass == 0.0 && k_norm == 0.0) {
    throw InfinitePeriodError("massless state at rest has an infinite period");
  }
  const double omega_bar = std::hypot(mass, k_norm);
  const double offset = mode_offset(bc);

  SpectrumResult out;
  out.bc = bc;
  out.n.resize(n_max);
  out.omega.resize(n_max);
  out.k.resize(n_max, 3);
  for (int i = 0; i < n_max; ++i) {
    const double factor = (i + 1) + offset;
    out.n[i] = i + 1;
    out.omega[i] = factor * omega_bar;
    out.k.row(i) = factor * momentum.transpose();
  }
  return out;
}

std::string to_csv(const SpectrumResult& spectrum) {
  std::ostringstream os;
  os << "n,omega,kx,ky,kz\n";
  char line[256];
  for (int i = 0; i < spectrum.n.size(); ++i) {
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%.17g\n", spectrum.n[i],
                  spectrum.omega[i], spectrum.k(i, 0), spectrum.k(i, 1), spectrum.k(i, 2));
    os << line;
  }
  return os.str();
}

double HarmonicField::fundamental_wavelength() const {
  const double k_norm = base.momentum.spatial().norm();
  if (k_norm == 0.0) {
    throw CommensurabilityError("field at rest has an infinite spatial period");
  }
  return two_pi / k_norm;
}

HarmonicField make_harmonic_field(const PeriodState& base,
                                  const Eigen::VectorXcd& amplitudes,
                                  BoundaryCondition bc) {
  if (amplitudes.size() < 1) throw DomainError("truncation must keep at least one mode");
  HarmonicField field;
  field.base = base;
  field.amplitudes = amplitudes;
  field.normalization = Eigen::VectorXd::Ones(amplitudes.size());
  field.bc = bc;
  return field;
}

HarmonicField single_mode_field(const PeriodState& base, int n, BoundaryCondition bc) {
  if (n < 1) throw DomainError("mode index must be at least 1");
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(n);
  a[n - 1] = 1.0;
  return make_harmonic_field(base, a, bc);
}

std::complex<double> synthesize(const HarmonicField& field, const FourVector& x) {
  const double base_phase = contract(field.base.momentum, raise_index(x));
  const double offset = mode_offset(field.bc);
  complex<double> sum = 0.0;
  for (int i = 0; i < field.modes(); ++i) {
    const double factor = (i + 1) + offset;
    sum += field.normalization[i] * std::conj(field.amplitudes[i]) *
           std::exp(complex<double>(0.0, -factor * base_phase));
  }
  return sum;
}

namespace {

void check_shared_base(const HarmonicField& f, const HarmonicField& g) {
  const bool same =
      f.base.mass == g.base.mass && f.bc == g.bc &&
      (f.base.momentum.components - g.base.momentum.components).norm() < 1e-12;
  if (!same) throw DomainError("fields must share a base state");
}

/// Number of spatial periods covered by the grid; throws if not an integer.
int commensurate_periods(const HarmonicField& field, const LineGrid& grid) {
  if (grid.points < 2) throw DomainError("grid needs at least two points");
  const double wavelength = field.fundamental_wavelength();
  const double ratio = grid.length / wavelength;
  const double nearest = std::round(ratio);
  if (nearest < 1.0 || std::abs(ratio - nearest) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream msg;
    msg << "grid length covers " << ratio << " periods; an integer count is required";
    throw CommensurabilityError(msg.str());
  }
  return static_cast<int>(nearest);
}

struct FieldSamples {
  std::vector<complex<double>> value;     // Phi(s_j)
  std::vector<complex<double>> momentum;  // (P Phi)(s_j), spectral action
};

/// Samples the field and its spectral momentum image along the propagation
/// direction at the grid's time slice.
FieldSamples sample_line(const HarmonicField& field, const LineGrid& grid) {
  const int n_points = grid.points;
  const double k_norm = field.base.momentum.spatial().norm();
  const double omega_bar = field.base.momentum.t();
  const double offset = mode_offset(field.bc);

  FieldSamples out;
  out.value.assign(n_points, 0.0);
  out.momentum.assign(n_points, 0.0);
  for (int i = 0; i < field.modes(); ++i) {
    const double factor = (i + 1) + offset;
    const complex<double> coeff =
        field.normalization[i] * std::conj(field.amplitudes[i]) *
        std::exp(complex<double>(0.0, -factor * omega_bar * grid.time));
    const double k_n = factor * k_norm;
    for (int j = 0; j < n_points; ++j) {
      const double s = grid.length * j / n_points;
      const complex<double> mode = coeff * std::exp(complex<double>(0.0, k_n * s));
      out.value[j] += mode;
      out.momentum[j] += k_n * mode;
    }
  }
  return out;
}

/// Spectral derivative of N uniform samples of an L-periodic function.
std::vector<complex<double>> dft_derivative(const std::vector<double>& samples, double L) {
  const int n = static_cast<int>(samples.size());
  std::vector<complex<double>> spectrum(n, 0.0);
  for (int m = 0; m < n; ++m) {
    complex<double> acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double angle = -two_pi * m * j / n;
      acc += samples[j] * complex<double>(std::cos(angle), std::sin(angle));
    }
    spectrum[m] = acc / static_cast<double>(n);
  }
  std::vector<complex<double>> derivative(n, 0.0);
  for (int j = 0; j < n; ++j) {
    complex<double> acc = 0.0;
    for (int m = 0; m < n; ++m) {
      int m_signed = m <= n / 2 ? m : m - n;
      if (2 * m == n) m_signed = 0;  // Nyquist mode carries no odd derivative
      const double kappa = two_pi * m_signed / L;
      const double angle = two_pi * m * j / n;
      acc += spectrum[m] * complex<double>(0.0, kappa) *
             complex<double>(std::cos(angle), std::sin(angle));
    }
    derivative[j] = acc;
  }
  return derivative;
}

}  // namespace

std::complex<double> inner_product(const HarmonicField& f, const HarmonicField& g,
                                   const LineGrid& grid) {
  check_shared_base(f, g);
  commensurate_periods(f, grid);

  const FieldSamples fs = sample_line(f, grid);
  const FieldSamples gs = sample_line(g, grid);
  complex<double> acc = 0.0;
  for (int j = 0; j < grid.points; ++j) acc += std::conj(gs.value[j]) * fs.value[j];
  return acc / static_cast<double>(grid.points);
}

CommutatorCheck commutator_expectation(const std::function<double(double)>& F,
                                       const HarmonicField& field, const LineGrid& grid) {
  commensurate_periods(field, grid);
  const int n_points = grid.points;

  std::vector<double> f_samples(n_points);
  double scale = 1.0;
  for (int j = 0; j < n_points; ++j) {
    f_samples[j] = F(grid.length * j / n_points);
    scale = std::max(scale, std::abs(f_samples[j]));
  }

  CommutatorCheck out;
  out.boundary_mismatch = std::abs(F(grid.length) - F(0.0));
  out.periodic = out.boundary_mismatch <= 1e-9 * scale;

  const FieldSamples phi = sample_line(field, grid);
  const std::vector<complex<double>> dF = dft_derivative(f_samples, grid.length);

  complex<double> lhs = 0.0, rhs = 0.0;
  for (int j = 0; j < n_points; ++j) {
    lhs += f_samples[j] * (std::conj(phi.value[j]) * phi.momentum[j] -
                           std::conj(phi.momentum[j]) * phi.value[j]);
    rhs += dF[j] * std::norm(phi.value[j]);
  }
  out.commutator = lhs / static_cast<double>(n_points);
  out.gradient_side = complex<double>(0.0, 1.0) * rhs / static_cast<double>(n_points);
  return out;
}

}  // namespace cycles
