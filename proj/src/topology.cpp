#include "cycles/topology.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "cycles/csv.hpp"
#include "cycles/errors.hpp"

namespace cycles {

using constants::pi;
using constants::two_pi;

namespace {

double wrap_to_pi(double delta) { return delta - two_pi * std::round(delta / two_pi); }

void check_loop_shape(const Eigen::Matrix<double, Eigen::Dynamic, 3>& positions) {
  const int n = static_cast<int>(positions.rows());
  if (n < kMinLoopSamples) {
    throw UndersampledLoopError("loop needs at least " + std::to_string(kMinLoopSamples) +
                                " samples, got " + std::to_string(n));
  }
  for (int j = 0; j < n; ++j) {
    const int next = (j + 1) % n;
    if ((positions.row(j) - positions.row(next)).norm() == 0.0) {
      throw DomainError("consecutive loop positions must be distinct");
    }
  }
}

bool lex_less_row(const Eigen::Matrix<double, Eigen::Dynamic, 3>& positions, int a, int b) {
  for (int c = 0; c < 3; ++c) {
    if (positions(a, c) < positions(b, c)) return true;
    if (positions(a, c) > positions(b, c)) return false;
  }
  return false;
}

/// Traversal of the loop samples that starts at the lexicographically
/// smallest position and runs toward its lex-smaller neighbor. Values
/// computed along it are independent of how the caller rotated or reversed
/// the loop; `sign` restores the caller's orientation.
struct CanonicalTraversal {
  std::vector<int> order;
  double sign = 1.0;
};

CanonicalTraversal canonicalize(const Eigen::Matrix<double, Eigen::Dynamic, 3>& positions) {
  const int n = static_cast<int>(positions.rows());
  int start = 0;
  for (int j = 1; j < n; ++j) {
    if (lex_less_row(positions, j, start)) start = j;
  }
  const int next = (start + 1) % n;
  const int prev = (start + n - 1) % n;
  const bool forward = lex_less_row(positions, next, prev);

  CanonicalTraversal out;
  out.order.resize(n);
  out.sign = forward ? 1.0 : -1.0;
  for (int k = 0; k < n; ++k) {
    out.order[k] = forward ? (start + k) % n : (start + n - k) % n;
  }
  return out;
}

double kahan_sum(const std::vector<double>& values) {
  double sum = 0.0, carry = 0.0;
  for (double x : values) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

/// Closed trapezoid of potentials . dx in canonical orientation, restored
/// to the caller's orientation by the traversal sign.
double closed_trapezoid(const Eigen::Matrix<double, Eigen::Dynamic, 3>& positions,
                        const Eigen::Matrix<double, Eigen::Dynamic, 3>& potentials) {
  const int n = static_cast<int>(positions.rows());
  const CanonicalTraversal traversal = canonicalize(positions);
  std::vector<double> contributions(n);
  for (int k = 0; k < n; ++k) {
    const int a = traversal.order[k];
    const int b = traversal.order[(k + 1) % n];
    const Eigen::RowVector3d mean = 0.5 * (potentials.row(a) + potentials.row(b));
    const Eigen::RowVector3d step = positions.row(b) - positions.row(a);
    contributions[k] = mean.dot(step);
  }
  return traversal.sign * kahan_sum(contributions);
}

}  // namespace

WindingResult phase_winding(const PhaseLoop& loop) {
  if (loop.phases.size() != loop.positions.rows()) {
    throw DomainError("loop has mismatched positions and phases");
  }
  check_loop_shape(loop.positions);
  const int n = static_cast<int>(loop.phases.size());
  const CanonicalTraversal traversal = canonicalize(loop.positions);

  std::vector<double> jumps(n);
  for (int k = 0; k < n; ++k) {
    const int a = traversal.order[k];
    const int b = traversal.order[(k + 1) % n];
    const double jump = wrap_to_pi(loop.phases[b] - loop.phases[a]);
    if (std::abs(jump) >= kMaxPhaseJump) {
      std::ostringstream msg;
      msg << "phase jump " << jump << " at sample " << a
          << " exceeds the adequacy bound " << kMaxPhaseJump;
      throw UndersampledLoopError(msg.str());
    }
    jumps[k] = jump;
  }

  WindingResult out;
  out.raw_turns = traversal.sign * kahan_sum(jumps);
  out.winding = std::lround(out.raw_turns / two_pi);
  out.residual = std::abs(out.raw_turns / two_pi - static_cast<double>(out.winding));
  if (out.residual >= kWindingResidualLimit) {
    std::ostringstream msg;
    msg << "winding residual " << out.residual << " exceeds " << kWindingResidualLimit;
    throw UndersampledLoopError(msg.str());
  }
  return out;
}

QuantizationVerdict dirac_quantization_check(const GaugeLoop& loop, double charge) {
  if (loop.potentials.rows() != loop.positions.rows()) {
    throw DomainError("loop has mismatched positions and potentials");
  }
  check_loop_shape(loop.positions);

  QuantizationVerdict verdict;
  verdict.unit = pi;
  verdict.raw = charge * closed_trapezoid(loop.positions, loop.potentials);
  verdict.nearest = std::lround(verdict.raw / verdict.unit);
  verdict.residual = std::abs(verdict.raw - verdict.nearest * verdict.unit);
  verdict.quantized = verdict.residual <= kWindingResidualLimit * verdict.unit;
  return verdict;
}

QuantizationVerdict flux_quantization_check(const PhaseLoop& loop, double charge) {
  if (charge == 0.0) throw DomainError("charge must be non-zero");
  const WindingResult winding = phase_winding(loop);

  // Positional route: trapezoid of the finite-difference gradient along the
  // loop. The gradient estimates are orientation-invariant point values.
  const int n = static_cast<int>(loop.phases.size());
  Eigen::Matrix<double, Eigen::Dynamic, 3> gradient(n, 3);
  for (int j = 0; j < n; ++j) {
    const int next = (j + 1) % n;
    const int prev = (j + n - 1) % n;
    const Eigen::RowVector3d chord = loop.positions.row(next) - loop.positions.row(prev);
    const double arc = (loop.positions.row(next) - loop.positions.row(j)).norm() +
                       (loop.positions.row(j) - loop.positions.row(prev)).norm();
    const double rate = (wrap_to_pi(loop.phases[next] - loop.phases[j]) +
                         wrap_to_pi(loop.phases[j] - loop.phases[prev])) /
                        arc;
    gradient.row(j) = chord.normalized() * rate;
  }
  const double line_integral = closed_trapezoid(loop.positions, gradient);

  const double disagreement =
      std::abs(line_integral / two_pi - static_cast<double>(winding.winding));
  if (disagreement > kStokesTolerance * std::max(1.0, std::abs(static_cast<double>(
                                             winding.winding)))) {
    std::ostringstream msg;
    msg << "unwrapped winding " << winding.winding << " and line integral "
        << line_integral / two_pi << " turns disagree beyond " << kStokesTolerance;
    throw StokesInconsistencyError(msg.str());
  }

  QuantizationVerdict verdict;
  verdict.unit = 1.0 / (2.0 * charge);
  verdict.raw = winding.raw_turns / two_pi * verdict.unit;
  verdict.nearest = winding.winding;
  verdict.residual = std::abs(verdict.raw - verdict.nearest * verdict.unit);
  verdict.quantized = verdict.residual <= kWindingResidualLimit * std::abs(verdict.unit);
  return verdict;
}

std::string to_csv(const QuantizationVerdict& verdict) {
  std::ostringstream os;
  os << "raw,unit,n,residual,verdict\n";
  char line[192];
  std::snprintf(line, sizeof(line), "%.17g,%.17g,%ld,%.17g,%s\n", verdict.raw, verdict.unit,
                verdict.nearest, verdict.residual, verdict.quantized ? "PASS" : "FAIL");
  os << line;
  return os.str();
}

PhaseLoop load_phase_loop(const std::filesystem::path& path) {
  const std::vector<std::vector<double>> rows = read_numeric_csv(path, 5);
  PhaseLoop loop;
  loop.positions.resize(rows.size(), 3);
  loop.phases.resize(rows.size());
  for (size_t j = 0; j < rows.size(); ++j) {
    loop.positions.row(j) << rows[j][1], rows[j][2], rows[j][3];
    loop.phases[j] = rows[j][4];
  }
  return loop;
}

GaugeLoop load_gauge_loop(const std::filesystem::path& path) {
  const std::vector<std::vector<double>> rows = read_numeric_csv(path, 7);
  GaugeLoop loop;
  loop.positions.resize(rows.size(), 3);
  loop.potentials.resize(rows.size(), 3);
  for (size_t j = 0; j < rows.size(); ++j) {
    loop.positions.row(j) << rows[j][1], rows[j][2], rows[j][3];
    loop.potentials.row(j) << rows[j][4], rows[j][5], rows[j][6];
  }
  return loop;
}

}  // namespace cycles
