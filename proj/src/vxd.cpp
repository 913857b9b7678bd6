#include "cycles/vxd.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cycles/errors.hpp"

namespace cycles {

using constants::two_pi;

SpectrumResult kk_tower(const CompactDimensionSpec& spec, int n_max) {
  if (!(spec.length > 0.0)) throw DomainError("compactification length must be positive");
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  const double offset = mode_offset(spec.bc);

  SpectrumResult tower;
  tower.bc = spec.bc;
  tower.n.resize(n_max);
  tower.omega.resize(n_max);
  tower.k = Eigen::Matrix<double, Eigen::Dynamic, 3>::Zero(n_max, 3);
  for (int i = 0; i < n_max; ++i) {
    tower.n[i] = i + 1;
    tower.omega[i] = two_pi * ((i + 1) + offset) / spec.length;
  }
  return tower;
}

double effective_mass_from_compactification(double circumference) {
  if (!(circumference > 0.0)) throw DomainError("circumference must be positive");
  return two_pi / circumference;
}

double si_effective_mass_from_circumference(double meters) {
  if (!(meters > 0.0)) throw DomainError("circumference must be positive");
  return constants::planck_h / (meters * constants::speed_of_light);
}

void validate(const FreezeoutScheme& scheme) {
  if (!(scheme.cooling_gradient > 0.0)) {
    throw DomainError("cooling gradient must be positive");
  }
  if (!(scheme.s_max > scheme.s_min)) throw DomainError("empty worldline domain");
  const double omega = scheme.initial_momentum.t();
  if (!(omega > 0.0)) throw DomainError("initial energy must be positive");
  const double norm = minkowski_norm_sq(raise_index(scheme.initial_momentum));
  if (std::abs(norm) / (omega * omega) >= 1e-3) {
    std::ostringstream msg;
    msg << "initial momentum too far off the light cone: |k.k|/omega^2 = "
        << std::abs(norm) / (omega * omega);
    throw DomainError(msg.str());
  }
}

FreezeoutSample freezeout_evolution(const FreezeoutScheme& scheme, double s) {
  validate(scheme);
  if (s < scheme.s_min || s > scheme.s_max) {
    std::ostringstream msg;
    msg << "s = " << s << " outside [" << scheme.s_min << ", " << scheme.s_max << "]";
    throw DomainError(msg.str());
  }
  const double k_grad = scheme.cooling_gradient;
  const FourVector k = raise_index(scheme.initial_momentum);
  const double omega = k.t();
  const double decay = std::exp(-k_grad * s);
  const double dilation = std::exp(k_grad * s);

  FreezeoutSample out;
  out.s = s;
  out.momentum = contravariant(Eigen::Vector4d(decay * k.components));
  // Reference recurrence scaled so the time component is 2 pi / omega.
  out.period = contravariant(
      Eigen::Vector4d(dilation * two_pi / (omega * omega) * k.components));
  out.conformal_period = dilation / k_grad;
  out.energy = two_pi * k_grad * decay;
  out.warp_factor = std::exp(-2.0 * k_grad * s);
  return out;
}

double null_interval_check(const FreezeoutScheme& scheme, double s,
                           const FourVector& displacement, double ds) {
  const double warp = std::exp(-2.0 * scheme.cooling_gradient * s);
  return warp * minkowski_norm_sq(raise_index(displacement)) - ds * ds;
}

std::string freezeout_csv(const std::vector<FreezeoutSample>& scan,
                          const std::vector<double>& null_residuals) {
  std::ostringstream os;
  os << "s,E,T,warp,dS2_residual\n";
  char line[256];
  for (size_t i = 0; i < scan.size(); ++i) {
    const double residual = i < null_residuals.size() ? null_residuals[i] : 0.0;
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g\n", scan[i].s,
                  scan[i].energy, scan[i].conformal_period, scan[i].warp_factor, residual);
    os << line;
  }
  return os.str();
}

}  // namespace cycles
