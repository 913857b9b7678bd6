#include "cycles/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "cycles/constants.hpp"
#include "cycles/csv.hpp"
#include "cycles/errors.hpp"

namespace cycles {

using constants::two_pi;

namespace {

void validate_axes(const std::array<GridAxis, 4>& axes) {
  for (const GridAxis& axis : axes) {
    if (axis.count < 1) throw DomainError("axis count must be at least 1");
    if (axis.count > 1 && !(axis.hi > axis.lo)) {
      throw DomainError("axis upper bound must exceed the lower bound");
    }
  }
}

size_t flat_index(const std::array<GridAxis, 4>& axes, const std::array<int, 4>& idx) {
  size_t flat = 0;
  for (int a = 0; a < 4; ++a) flat = flat * axes[a].count + idx[a];
  return flat;
}

}  // namespace

GaugeField::GaugeField(const std::array<GridAxis, 4>& axes,
                       std::vector<Eigen::Vector4d> values, double charge)
    : axes_(axes), values_(std::move(values)), charge_(charge) {
  validate_axes(axes_);
  size_t expected = 1;
  for (const GridAxis& axis : axes_) expected *= static_cast<size_t>(axis.count);
  if (values_.size() != expected) {
    throw DomainError("gauge lattice value count does not match the axes");
  }
}

double GaugeField::node_coordinate(int axis, int index) const {
  const GridAxis& a = axes_[axis];
  if (a.count == 1) return a.lo;
  return a.lo + (a.hi - a.lo) * index / static_cast<double>(a.count - 1);
}

GaugeField GaugeField::sample(
    const std::array<GridAxis, 4>& axes,
    const std::function<Eigen::Vector4d(const Eigen::Vector4d&)>& potential,
    double charge) {
  validate_axes(axes);
  size_t total = 1;
  for (const GridAxis& axis : axes) total *= static_cast<size_t>(axis.count);

  std::vector<Eigen::Vector4d> values(total);
  std::array<int, 4> idx{0, 0, 0, 0};
  for (size_t flat = 0; flat < total; ++flat) {
    Eigen::Vector4d x;
    for (int a = 0; a < 4; ++a) {
      x[a] = axes[a].count == 1
                 ? axes[a].lo
                 : axes[a].lo + (axes[a].hi - axes[a].lo) * idx[a] /
                       static_cast<double>(axes[a].count - 1);
    }
    values[flat] = potential(x);
    for (int a = 3; a >= 0; --a) {
      if (++idx[a] < axes[a].count) break;
      idx[a] = 0;
    }
  }
  return GaugeField(axes, std::move(values), charge);
}

Eigen::Vector4d GaugeField::at(const Eigen::Vector4d& x) const {
  std::array<int, 4> cell{0, 0, 0, 0};
  std::array<double, 4> frac{0.0, 0.0, 0.0, 0.0};
  for (int a = 0; a < 4; ++a) {
    const GridAxis& axis = axes_[a];
    if (axis.count == 1) continue;
    const double u = (x[a] - axis.lo) / (axis.hi - axis.lo) * (axis.count - 1);
    const double tol = 1e-9 * (axis.count - 1);
    if (u < -tol || u > axis.count - 1 + tol) {
      std::ostringstream msg;
      msg << "coordinate " << x[a] << " outside axis " << a << " domain [" << axis.lo
          << ", " << axis.hi << "]";
      throw GridDomainError(msg.str());
    }
    const int c = std::clamp(static_cast<int>(std::floor(u)), 0, axis.count - 2);
    cell[a] = c;
    frac[a] = u - c;
  }

  Eigen::Vector4d result = Eigen::Vector4d::Zero();
  for (int mask = 0; mask < 16; ++mask) {
    double weight = 1.0;
    std::array<int, 4> idx = cell;
    for (int a = 0; a < 4; ++a) {
      if (mask & (1 << a)) {
        weight *= frac[a];
        idx[a] += 1;
      } else {
        weight *= 1.0 - frac[a];
      }
    }
    if (weight == 0.0) continue;
    result += weight * values_[flat_index(axes_, idx)];
  }
  return result;
}

GaugeField load_gauge_field(const std::filesystem::path& path, double charge) {
  // Columns: x, y, z, t, A0, A1, A2, A3. Internally axis order is t,x,y,z.
  const std::vector<std::vector<double>> rows = read_numeric_csv(path, 8);
  if (rows.empty()) throw IoError("gauge field file has no rows: " + path.string());

  constexpr std::array<int, 4> column_of_axis = {3, 0, 1, 2};
  std::array<std::vector<double>, 4> coords;
  for (int a = 0; a < 4; ++a) {
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto& row : rows) values.push_back(row[column_of_axis[a]]);
    std::sort(values.begin(), values.end());
    const double span = values.back() - values.front();
    const double tol = std::max(1e-12, 1e-9 * std::max(1.0, span));
    for (double v : values) {
      if (coords[a].empty() || v - coords[a].back() > tol) coords[a].push_back(v);
    }
  }

  std::array<GridAxis, 4> axes;
  size_t total = 1;
  for (int a = 0; a < 4; ++a) {
    axes[a] = {coords[a].front(), coords[a].back(), static_cast<int>(coords[a].size())};
    total *= coords[a].size();
  }
  if (total != rows.size()) {
    std::ostringstream msg;
    msg << "gauge field rows (" << rows.size() << ") do not fill a complete "
        << coords[0].size() << "x" << coords[1].size() << "x" << coords[2].size() << "x"
        << coords[3].size() << " lattice";
    throw IoError(msg.str());
  }

  const auto locate = [](const std::vector<double>& sorted, double v) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    int i = static_cast<int>(it - sorted.begin());
    if (i > 0 && (i == static_cast<int>(sorted.size()) ||
                  std::abs(sorted[i - 1] - v) < std::abs(sorted[i] - v))) {
      --i;
    }
    return i;
  };

  std::vector<Eigen::Vector4d> values(total, Eigen::Vector4d::Zero());
  std::vector<bool> seen(total, false);
  for (const auto& row : rows) {
    std::array<int, 4> idx;
    for (int a = 0; a < 4; ++a) idx[a] = locate(coords[a], row[column_of_axis[a]]);
    const size_t flat = flat_index(axes, idx);
    values[flat] = Eigen::Vector4d(row[4], row[5], row[6], row[7]);
    seen[flat] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw IoError("gauge field rows repeat some lattice nodes and miss others");
  }
  return GaugeField(axes, std::move(values), charge);
}

ModulatedState free_modulated_state(const PeriodState& base) {
  const FourVector k_cov = lower_index(base.momentum);
  const FourVector period = base.period;
  return {base, [k_cov](const Eigen::Vector4d&) { return k_cov; },
          [period](const Eigen::Vector4d&) { return period; }};
}

namespace {

double newtonian_epsilon(double gm, const Eigen::Vector3d& position) {
  const double r = position.norm();
  if (r == 0.0) throw SingularityError("Newtonian modulation evaluated at the origin");
  const double eps = gm / r;
  if (eps >= kLinearizedLimit) {
    std::ostringstream msg;
    msg << "GM/|x| = " << eps << " outside the linearized regime (< " << kLinearizedLimit
        << ")";
    throw LinearizationDomainError(msg.str());
  }
  return eps;
}

/// Period parallel to a timelike covariant momentum, local phase harmony
/// exact by construction.
FourVector period_of_local_momentum(const FourVector& k_cov) {
  const FourVector k_up = raise_index(k_cov);
  const double norm_sq = minkowski_norm_sq(k_up);
  if (!(norm_sq > 0.0)) {
    throw DomainError("modulated momentum is not timelike");
  }
  return contravariant(Eigen::Vector4d(two_pi / norm_sq * k_up.components));
}

}  // namespace

ModulatedState modulated_state(const ModulationField& field, const PeriodState& base) {
  if (const auto* newton = std::get_if<NewtonianField>(&field)) {
    const double gm = newton->gm;
    const PeriodState state = base;
    return {base,
            [gm, state](const Eigen::Vector4d& x) {
              const NewtonianSample s =
                  newtonian_modulation(gm, state, Eigen::Vector3d(x.tail<3>()));
              return lower_index(s.local_momentum);
            },
            [gm, state](const Eigen::Vector4d& x) {
              const NewtonianSample s =
                  newtonian_modulation(gm, state, Eigen::Vector3d(x.tail<3>()));
              return s.local_period;
            }};
  }
  if (const auto* gauge = std::get_if<GaugeField>(&field)) {
    const GaugeField f = *gauge;
    const PeriodState state = base;
    return {base,
            [f, state](const Eigen::Vector4d& x) {
              return minimal_substitution(state, f, x);
            },
            [f, state](const Eigen::Vector4d& x) {
              return period_of_local_momentum(minimal_substitution(state, f, x));
            }};
  }
  const ConformalField conformal = std::get<ConformalField>(field);
  const double k_grad = conformal.cooling_gradient;
  const PeriodState state = base;
  // The worldline parameter is read from the time slot of the evaluation
  // point.
  return {base,
          [k_grad, state](const Eigen::Vector4d& x) {
            const double scale = std::exp(-k_grad * x[0]);
            return lower_index(
                contravariant(Eigen::Vector4d(scale * state.momentum.components)));
          },
          [k_grad, state](const Eigen::Vector4d& x) {
            const double scale = std::exp(k_grad * x[0]);
            return contravariant(Eigen::Vector4d(scale * state.period.components));
          }};
}

NewtonianSample newtonian_modulation(double gm, const PeriodState& base,
                                     const Eigen::Vector3d& position) {
  const double eps = newtonian_epsilon(gm, position);

  NewtonianSample out;
  out.energy_scale = 1.0 + eps;
  out.period_scale = 1.0 - eps;
  out.local_momentum =
      contravariant(Eigen::Vector4d(out.energy_scale * base.momentum.components));
  out.local_period =
      contravariant(Eigen::Vector4d(out.period_scale * base.period.components));
  const double product = contract(out.local_momentum, out.local_period);
  out.harmony_residual_abs = std::abs(product - two_pi);
  out.harmony_residual_rel = std::abs(product / two_pi - 1.0);
  return out;
}

double gravitational_redshift(double gm, double r_emit, double r_observe) {
  const auto potential = [gm](double r) {
    if (std::isinf(r)) return 0.0;
    if (!(r > 0.0)) throw SingularityError("radius must be positive");
    const double eps = gm / r;
    if (eps >= kLinearizedLimit) {
      std::ostringstream msg;
      msg << "GM/r = " << eps << " outside the linearized regime";
      throw LinearizationDomainError(msg.str());
    }
    return eps;
  };
  return potential(r_observe) - potential(r_emit);
}

FourVector minimal_substitution(const PeriodState& base, const GaugeField& field,
                                const Eigen::Vector4d& x) {
  const FourVector k_cov = lower_index(base.momentum);
  return covariant(Eigen::Vector4d(k_cov.components - field.charge() * field.at(x)));
}

namespace {

struct SegmentContribution {
  Eigen::Vector4d lo;  // canonical endpoints, for a traversal-independent order
  Eigen::Vector4d hi;
  double value;
};

bool lex_less(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  for (int i = 0; i < 4; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

/// Midpoint quadrature of integrand . dy over the oriented segment [a, b],
/// evaluated in canonical orientation so that reversed traversal negates the
/// result exactly.
template <typename Integrand>
SegmentContribution integrate_segment(const Integrand& covariant_at,
                                      const Eigen::Vector4d& a, const Eigen::Vector4d& b,
                                      int subdivisions) {
  const bool flip = lex_less(b, a);
  const Eigen::Vector4d& lo = flip ? b : a;
  const Eigen::Vector4d& hi = flip ? a : b;
  const Eigen::Vector4d step = (hi - lo) / subdivisions;

  double sum = 0.0, carry = 0.0;
  for (int j = 0; j < subdivisions; ++j) {
    const Eigen::Vector4d mid = lo + (j + 0.5) * step;
    const double term = covariant_at(mid).dot(step);
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return {lo, hi, flip ? -sum : sum};
}

template <typename Integrand>
double path_integral(const Integrand& covariant_at,
                     const std::vector<Eigen::Vector4d>& path, int subdivisions) {
  if (subdivisions < 1) throw DomainError("subdivisions must be at least 1");
  std::vector<SegmentContribution> contributions;
  contributions.reserve(path.size());
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i] == path[i + 1]) continue;
    contributions.push_back(integrate_segment(covariant_at, path[i], path[i + 1], subdivisions));
  }
  // Canonical summation order, independent of traversal direction.
  std::stable_sort(contributions.begin(), contributions.end(),
                   [](const SegmentContribution& a, const SegmentContribution& b) {
                     if (lex_less(a.lo, b.lo)) return true;
                     if (lex_less(b.lo, a.lo)) return false;
                     return lex_less(a.hi, b.hi);
                   });
  double sum = 0.0, carry = 0.0;
  for (const SegmentContribution& c : contributions) {
    const double y = c.value - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

double wilson_line_phase(const GaugeField& field, const std::vector<Eigen::Vector4d>& path,
                         int subdivisions) {
  if (path.size() < 2) {
    std::cerr << "wilson_line_phase: degenerate path, returning 0\n";
    return 0.0;
  }
  const double integral = path_integral(
      [&field](const Eigen::Vector4d& y) { return field.at(y); }, path, subdivisions);
  return field.charge() * integral;
}

std::complex<double> modulated_wave(const ModulatedState& state,
                                    const std::vector<Eigen::Vector4d>& path,
                                    int subdivisions) {
  if (path.size() < 2) return 1.0;
  const double phase = path_integral(
      [&state](const Eigen::Vector4d& y) { return state.local_momentum(y).components; },
      path, subdivisions);
  return std::exp(std::complex<double>(0.0, -phase));
}

TuningReport tuning_check(const PeriodState& base, const GaugeField& field,
                          const TuningGrid& grid) {
  for (int count : grid.counts) {
    if (count < 1) throw DomainError("lattice counts must be at least 1");
  }
  if (!(grid.spacing > 0.0)) throw DomainError("lattice spacing must be positive");

  const std::array<int, 4>& counts = grid.counts;
  const auto node_point = [&](const std::array<int, 4>& idx) {
    Eigen::Vector4d x = grid.origin;
    for (int a = 0; a < 4; ++a) x[a] += grid.spacing * idx[a];
    return x;
  };
  const size_t total = static_cast<size_t>(counts[0]) * counts[1] * counts[2] * counts[3];

  const auto flat = [&](const std::array<int, 4>& idx) {
    size_t f = 0;
    for (int a = 0; a < 4; ++a) f = f * counts[a] + idx[a];
    return f;
  };
  const auto unflatten = [&](size_t f) {
    std::array<int, 4> idx;
    for (int a = 3; a >= 0; --a) {
      idx[a] = static_cast<int>(f % counts[a]);
      f /= counts[a];
    }
    return idx;
  };

  // Wilson-line phase at every node, accumulated along a deterministic
  // spanning chain of lattice edges from the origin node.
  constexpr int kEdgeSubdivisions = 16;
  std::vector<double> phase(total, 0.0);
  for (size_t f = 1; f < total; ++f) {
    std::array<int, 4> idx = unflatten(f);
    int axis = 0;
    for (int a = 0; a < 4; ++a) {
      if (idx[a] > 0) axis = a;  // step back along the last varying axis
    }
    std::array<int, 4> prev = idx;
    prev[axis] -= 1;
    const Eigen::Vector4d a = node_point(prev);
    const Eigen::Vector4d b = node_point(idx);
    double edge = 0.0;
    for (int j = 0; j < kEdgeSubdivisions; ++j) {
      const Eigen::Vector4d mid = a + (j + 0.5) / kEdgeSubdivisions * (b - a);
      edge += field.at(mid).dot(Eigen::Vector4d(b - a)) / kEdgeSubdivisions;
    }
    phase[f] = phase[flat(prev)] + field.charge() * edge;
  }

  const FourVector k_cov = lower_index(base.momentum);
  const auto free_wave = [&](const Eigen::Vector4d& x) {
    return std::exp(std::complex<double>(0.0, -k_cov.components.dot(x)));
  };
  std::vector<std::complex<double>> tuned(total);
  for (size_t f = 0; f < total; ++f) {
    const std::array<int, 4> idx = unflatten(f);
    tuned[f] = std::exp(std::complex<double>(0.0, phase[f])) * free_wave(node_point(idx));
  }

  TuningReport report;
  report.nodes = static_cast<int>(total);
  for (size_t f = 0; f < total; ++f) {
    const std::array<int, 4> idx = unflatten(f);
    const Eigen::Vector4d x = node_point(idx);
    const std::complex<double> inverse_link =
        std::exp(std::complex<double>(0.0, -phase[f]));
    const Eigen::Vector4d a_here = field.at(x);
    for (int axis = 0; axis < 4; ++axis) {
      if (idx[axis] == 0 || idx[axis] == counts[axis] - 1) continue;
      std::array<int, 4> up = idx, down = idx;
      up[axis] += 1;
      down[axis] -= 1;
      const std::complex<double> fd =
          (tuned[flat(up)] - tuned[flat(down)]) / (2.0 * grid.spacing);
      const std::complex<double> covariant_derivative =
          fd - std::complex<double>(0.0, field.charge() * a_here[axis]) * tuned[f];
      const std::complex<double> lhs =
          std::complex<double>(0.0, -k_cov.components[axis]) * free_wave(x);
      report.max_residual =
          std::max(report.max_residual, std::abs(lhs - inverse_link * covariant_derivative));
    }
  }
  return report;
}

}  // namespace cycles
