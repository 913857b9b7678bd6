#include <doctest.h>

#include <cmath>
#include <vector>

#include "cycles/constants.hpp"
#include "cycles/cyclic_propagator.hpp"
#include "cycles/errors.hpp"

using namespace cycles;
using constants::pi;
using constants::two_pi;

namespace {

/// Oracle: plain image sum at a much wider truncation.
double brute_force_winding(double theta, double T, double beta, int w_wide) {
  double sum = 0.0;
  for (int w = -w_wide; w <= w_wide; ++w) {
    const double u = theta + w * T;
    sum += std::exp(-u * u / (4.0 * beta)) / std::sqrt(4.0 * pi * beta);
  }
  return sum;
}

/// Oracle: plain mode sum at a much wider truncation.
double brute_force_spectral(double theta, double T, double beta, int n_wide) {
  double sum = 1.0;
  for (int n = 1; n <= n_wide; ++n) {
    const double omega = two_pi * n / T;
    sum += 2.0 * std::exp(-beta * omega * omega) * std::cos(omega * theta);
  }
  return sum / T;
}

}  // namespace

TEST_CASE("small beta leaves a single dominant image") {
  const CyclicKernelSpec spec{1.0, 1e-4, 10, 64};
  const double direct = std::exp(0.0) / std::sqrt(4.0 * pi * 1e-4);
  CHECK(std::abs(winding_kernel(spec, 0.0) - direct) < 1e-12 * direct);
  // Neighbor images at distance 1 are ~exp(-2500).
  CHECK(winding_kernel(spec, 0.5) < 1e-200 * direct);
}

TEST_CASE("winding kernel is even and periodic") {
  const CyclicKernelSpec spec{1.0, 0.05, 12, 64};
  for (double th : {0.1, 0.25, 0.4}) {
    CHECK(winding_kernel(spec, th) == winding_kernel(spec, -th));
    CHECK(std::abs(winding_kernel(spec, th + spec.period) - winding_kernel(spec, th)) <
          1e-12);
  }
}

TEST_CASE("winding kernel matches a much wider brute-force truncation") {
  const CyclicKernelSpec spec{1.0, 0.05, 10, 64};
  CHECK(std::abs(winding_kernel(spec, 0.0) - brute_force_winding(0.0, 1.0, 0.05, 100)) <
        1e-14);
}

TEST_CASE("large beta relaxes the spectral kernel to the uniform density") {
  const CyclicKernelSpec spec{1.0, 10.0, 12, 64};
  CHECK(std::abs(spectral_kernel(spec, 0.3) - 1.0) < 1e-12);
}

TEST_CASE("spectral kernel integrates to one over a period") {
  const CyclicKernelSpec spec{1.0, 0.05, 12, 64};
  const int n = 4096;
  double integral = 0.0;
  for (int j = 0; j < n; ++j) {
    integral += spectral_kernel(spec, spec.period * j / n);
  }
  integral *= spec.period / n;
  CHECK(std::abs(integral - 1.0) < 1e-10);
}

TEST_CASE("spectral kernel matches a much wider brute-force truncation") {
  const CyclicKernelSpec spec{1.0, 0.05, 12, 64};
  CHECK(std::abs(spectral_kernel(spec, 0.3) - brute_force_spectral(0.3, 1.0, 0.05, 500)) <
        1e-14);
}

TEST_CASE("winding kernel is strictly positive") {
  const CyclicKernelSpec spec{1.0, 0.25, 16, 64};
  for (int j = 0; j <= 50; ++j) {
    CHECK(winding_kernel(spec, -0.5 + j / 50.0) > 0.0);
  }
}

TEST_CASE("the two kernel routes certify as equal") {
  const KernelComparison c = certify_equivalence({1.0, 0.05, 12, 64}, 101);
  CHECK(c.pass);
  CHECK(c.max_deviation < 1e-10);
  CHECK(c.tail_winding < 1e-12);
  CHECK(c.tail_spectral < 1e-12);

  const KernelComparison wide = certify_equivalence({two_pi, 1.0, 12, 64}, 101);
  CHECK(wide.pass);
  CHECK(wide.max_deviation < 1e-10);
}

TEST_CASE("certification refuses truncations with visible tails") {
  CHECK_THROWS_AS(certify_equivalence({1.0, 0.05, 1, 64}, 11), TruncationError);
  try {
    certify_equivalence({1.0, 0.05, 1, 64}, 11);
  } catch (const TruncationError& e) {
    CHECK(e.tail_winding > 1e-12);
    CHECK(e.tail_spectral < 1e-12);
  }
}

TEST_CASE("diffusive rescaling (T, beta) -> (sT, s^2 beta) rescales the kernel") {
  const double s = 3.0;
  const CyclicKernelSpec base{1.0, 0.05, 16, 96};
  const CyclicKernelSpec scaled{s * 1.0, s * s * 0.05, 16, 96};
  for (double th : {0.0, 0.2, 0.45}) {
    CHECK(std::abs(s * winding_kernel(scaled, s * th) - winding_kernel(base, th)) < 1e-10);
    CHECK(std::abs(s * spectral_kernel(scaled, s * th) - spectral_kernel(base, th)) < 1e-10);
  }
}

TEST_CASE("kernel composes as a semigroup under periodic convolution") {
  const CyclicKernelSpec a{1.0, 0.03, 16, 128};
  const CyclicKernelSpec b{1.0, 0.04, 16, 128};
  const CyclicKernelSpec ab{1.0, 0.07, 16, 128};
  const int n = 512;
  for (double th : {0.0, 0.2}) {
    double conv = 0.0;
    for (int j = 0; j < n; ++j) {
      const double phi = j / static_cast<double>(n);
      conv += winding_kernel(a, th - phi) * winding_kernel(b, phi);
    }
    conv /= n;
    CHECK(std::abs(conv - winding_kernel(ab, th)) < 1e-6);
  }
}

TEST_CASE("continued kernel requires damping and matches the Euclidean one at t=0") {
  const CyclicKernelSpec spec{1.0, 0.05, 12, 64};
  CHECK_THROWS_AS(lorentzian_spectral_kernel(spec, 0.1, 1.0, 0.0), DomainError);
  const std::complex<double> v = lorentzian_spectral_kernel(spec, 0.1, 0.0, 0.05);
  CHECK(std::abs(v.real() - spectral_kernel(spec, 0.1)) < 1e-13);
  CHECK(std::abs(v.imag()) < 1e-13);
  // With evolution time switched on the kernel is genuinely oscillatory.
  const std::complex<double> w = lorentzian_spectral_kernel(spec, 0.1, 0.02, 0.01);
  CHECK(std::abs(w.imag()) > 1e-6);
}

TEST_CASE("comparison CSV carries the summary line") {
  const KernelComparison c = certify_equivalence({1.0, 0.05, 12, 64}, 11);
  const std::string csv = to_csv(c);
  CHECK(csv.rfind("theta,winding,spectral,abs_diff\n", 0) == 0);
  CHECK(csv.find("verdict=PASS") != std::string::npos);
}
