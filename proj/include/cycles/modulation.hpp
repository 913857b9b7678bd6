#pragma once

#include <array>
#include <complex>
#include <filesystem>
#include <functional>
#include <variant>
#include <vector>

#include "cycles/kinematics.hpp"

namespace cycles {

/// Weak-field scale factors 1 +- GM/|x| on energies and periods. `gm` is
/// G M in natural length units.
struct NewtonianField {
  double gm = 0.0;
};

/// Hard bound of the linearized regime: GM/|x| must stay below this.
inline constexpr double kLinearizedLimit = 0.1;

/// One axis of a regular sampled lattice. count == 1 makes the field
/// constant along the axis.
struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
};

/// Covariant four-potential A_mu sampled on a regular (t,x,y,z) lattice,
/// evaluated in between nodes by multilinear interpolation (exact on
/// multilinear potentials, in particular at the nodes themselves).
class GaugeField {
 public:
  GaugeField(const std::array<GridAxis, 4>& axes, std::vector<Eigen::Vector4d> values,
             double charge);

  /// Fills the lattice from an analytic potential x -> A_mu(x).
  static GaugeField sample(const std::array<GridAxis, 4>& axes,
                           const std::function<Eigen::Vector4d(const Eigen::Vector4d&)>& potential,
                           double charge);

  const std::array<GridAxis, 4>& axes() const { return axes_; }
  double charge() const { return charge_; }

  /// Interpolated A_mu(x). Throws GridDomainError outside the lattice.
  Eigen::Vector4d at(const Eigen::Vector4d& x) const;

  double node_coordinate(int axis, int index) const;
  const std::vector<Eigen::Vector4d>& values() const { return values_; }

 private:
  std::array<GridAxis, 4> axes_;
  std::vector<Eigen::Vector4d> values_;
  double charge_;
};

/// Loads a gauge lattice from CSV columns x,y,z,t,A0,A1,A2,A3. Rows must
/// fill a complete regular lattice (any row order).
GaugeField load_gauge_field(const std::filesystem::path& path, double charge);

/// Exponential conformal cooling with gradient K.
struct ConformalField {
  double cooling_gradient = 0.0;
};

using ModulationField = std::variant<NewtonianField, GaugeField, ConformalField>;

/// A particle state with position-dependent momentum and period. The
/// momentum map returns covariant components, the period map contravariant
/// ones, so that their plain contraction is the local phase.
struct ModulatedState {
  PeriodState base;
  std::function<FourVector(const Eigen::Vector4d&)> local_momentum;
  std::function<FourVector(const Eigen::Vector4d&)> local_period;
};

ModulatedState free_modulated_state(const PeriodState& base);
ModulatedState modulated_state(const ModulationField& field, const PeriodState& base);

/// One sampled point of a Newtonian modulation.
struct NewtonianSample {
  FourVector local_momentum;  // contravariant, (1 + GM/r) k
  FourVector local_period;    // contravariant, (1 - GM/r) T
  double energy_scale = 1.0;
  double period_scale = 1.0;
  double harmony_residual_abs = 0.0;  // |k'.T' - 2 pi|
  double harmony_residual_rel = 0.0;  // |k'.T' / 2 pi - 1|, O(eps^2)
};

NewtonianSample newtonian_modulation(double gm, const PeriodState& base,
                                     const Eigen::Vector3d& position);

/// First-order fractional frequency shift GM/r_obs - GM/r_emit. Either
/// radius may be infinite.
double gravitational_redshift(double gm, double r_emit, double r_observe);

/// Covariant k'_mu = k_mu - e A_mu(x).
FourVector minimal_substitution(const PeriodState& base, const GaugeField& field,
                                const Eigen::Vector4d& x);

/// e * integral of A_mu dy^mu along the polyline, by composite midpoint
/// quadrature with `subdivisions` steps per segment. Segment contributions
/// are evaluated in a canonical orientation, so reversing the path negates
/// the phase exactly.
double wilson_line_phase(const GaugeField& field,
                         const std::vector<Eigen::Vector4d>& path, int subdivisions = 64);

/// exp(-i integral k'_mu dy^mu) accumulated along the path.
std::complex<double> modulated_wave(const ModulatedState& state,
                                    const std::vector<Eigen::Vector4d>& path,
                                    int subdivisions = 64);

/// Node lattice for the tuning check; axes with one node are skipped when
/// differentiating.
struct TuningGrid {
  Eigen::Vector4d origin = Eigen::Vector4d::Zero();
  double spacing = 1e-2;
  std::array<int, 4> counts = {1, 2, 1, 1};
};

struct TuningReport {
  double max_residual = 0.0;
  int nodes = 0;
};

/// Builds the tuned wave Phi' = U Phi from the free wave of `base` and
/// verifies d_mu Phi = U^-1 (d_mu - i e A_mu) Phi' pointwise, with the
/// tuned side differentiated by central differences. The residual decays
/// at second order in the lattice spacing.
TuningReport tuning_check(const PeriodState& base, const GaugeField& field,
                          const TuningGrid& grid);

}  // namespace cycles
