#include "cycles/cyclic_propagator.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cycles/constants.hpp"
#include "cycles/errors.hpp"

namespace cycles {

using constants::pi;
using constants::two_pi;

namespace {

/// Compensated (Kahan) accumulator for bit-stable deterministic sums.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double gauss_image(double u, double beta) {
  return std::exp(-u * u / (4.0 * beta)) / std::sqrt(4.0 * pi * beta);
}

}  // namespace

void validate(const CyclicKernelSpec& spec) {
  if (!(spec.period > 0.0)) throw DomainError("period must be positive");
  if (!(spec.beta > 0.0)) throw DomainError("beta must be positive");
  if (spec.winding_max < 1 || spec.mode_max < 1) {
    throw DomainError("truncations must be at least 1");
  }
}

double reduce_angle(double theta, double period) {
  return theta - period * std::round(theta / period);
}

double winding_tail_bound(const CyclicKernelSpec& spec) {
  validate(spec);
  const double T = spec.period;
  const double beta = spec.beta;
  // With |theta| <= T/2 the first dropped pair sits at distance >= (K-1/2)T.
  const int K = spec.winding_max + 1;
  const double first = 2.0 * gauss_image((K - 0.5) * T, beta);
  const double ratio = std::exp(-K * T * T / (2.0 * beta));
  return first / (1.0 - ratio);
}

double spectral_tail_bound(const CyclicKernelSpec& spec) {
  validate(spec);
  const double T = spec.period;
  const double omega1 = two_pi / T;
  const int N = spec.mode_max + 1;
  const double first = 2.0 / T * std::exp(-spec.beta * omega1 * omega1 * N * N);
  const double ratio = std::exp(-spec.beta * omega1 * omega1 * (2.0 * N + 1.0));
  return first / (1.0 - ratio);
}

double winding_kernel(const CyclicKernelSpec& spec, double theta) {
  validate(spec);
  const double th = reduce_angle(theta, spec.period);
  Kahan acc;
  acc.add(gauss_image(th, spec.beta));
  for (int w = 1; w <= spec.winding_max; ++w) {
    acc.add(gauss_image(th + w * spec.period, spec.beta));
    acc.add(gauss_image(th - w * spec.period, spec.beta));
  }
  return acc.sum;
}

double spectral_kernel(const CyclicKernelSpec& spec, double theta) {
  validate(spec);
  const double th = reduce_angle(theta, spec.period);
  const double omega1 = two_pi / spec.period;
  Kahan acc;
  // Smallest terms first.
  for (int n = spec.mode_max; n >= 1; --n) {
    const double omega = n * omega1;
    acc.add(2.0 * std::exp(-spec.beta * omega * omega) * std::cos(omega * th));
  }
  acc.add(1.0);
  return acc.sum / spec.period;
}

std::complex<double> lorentzian_spectral_kernel(const CyclicKernelSpec& spec,
                                                double theta, double time,
                                                double damping) {
  validate(spec);
  if (!(damping > 0.0)) {
    throw DomainError("a positive damping is required for the continued sum");
  }
  const double th = reduce_angle(theta, spec.period);
  const double omega1 = two_pi / spec.period;
  std::complex<double> sum = 1.0;
  for (int n = spec.mode_max; n >= 1; --n) {
    const double omega = n * omega1;
    const std::complex<double> weight =
        std::exp(-std::complex<double>(damping, time) * omega * omega);
    sum += 2.0 * weight * std::cos(omega * th);
  }
  return sum / spec.period;
}

KernelComparison certify_equivalence(const CyclicKernelSpec& spec, int grid_points) {
  validate(spec);
  if (grid_points < 2) throw DomainError("grid needs at least two points");

  KernelComparison out;
  out.tail_winding = winding_tail_bound(spec);
  out.tail_spectral = spectral_tail_bound(spec);
  if (out.tail_winding >= 1e-12 || out.tail_spectral >= 1e-12) {
    std::ostringstream msg;
    msg << "truncation tails too large to certify: winding " << out.tail_winding
        << ", spectral " << out.tail_spectral;
    throw TruncationError(msg.str(), out.tail_winding, out.tail_spectral);
  }

  out.theta.resize(grid_points);
  out.winding.resize(grid_points);
  out.spectral.resize(grid_points);
  double worst = 0.0;
  for (int j = 0; j < grid_points; ++j) {
    const double th =
        -0.5 * spec.period + spec.period * j / static_cast<double>(grid_points - 1);
    out.theta[j] = th;
    out.winding[j] = winding_kernel(spec, th);
    out.spectral[j] = spectral_kernel(spec, th);
    worst = std::max(worst, std::abs(out.winding[j] - out.spectral[j]));
  }
  out.max_deviation = worst;
  out.pass = worst < 1e-9;
  return out;
}

std::string to_csv(const KernelComparison& comparison) {
  std::ostringstream os;
  os << "theta,winding,spectral,abs_diff\n";
  char line[256];
  for (int j = 0; j < comparison.theta.size(); ++j) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", comparison.theta[j],
                  comparison.winding[j], comparison.spectral[j],
                  std::abs(comparison.winding[j] - comparison.spectral[j]));
    os << line;
  }
  std::snprintf(line, sizeof(line), "# max_diff=%.17g,tail_w=%.17g,tail_n=%.17g,verdict=%s\n",
                comparison.max_deviation, comparison.tail_winding, comparison.tail_spectral,
                comparison.pass ? "PASS" : "FAIL");
  os << line;
  return os.str();
}

}  // namespace cycles
