#include "cycles/semiclassical.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "cycles/constants.hpp"
#include "cycles/csv.hpp"
#include "cycles/errors.hpp"

namespace cycles {

using constants::two_pi;

namespace {

// 16-point Gauss-Legendre rule on [-1, 1], positive abscissae.
constexpr double kGaussX[8] = {
    0.09501250983763744, 0.28160355077925891, 0.45801677765722739,
    0.61787624440264375, 0.75540440835500303, 0.86563120238783174,
    0.94457502307323258, 0.98940093499164993};
constexpr double kGaussW[8] = {
    0.18945061045506850, 0.18260341504492359, 0.16915651939500254,
    0.14959598881657673, 0.12462897125553387, 0.09515851168249278,
    0.06225352393864789, 0.02715245941175409};

template <typename F>
double gauss_panels(const F& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    for (int i = 0; i < 8; ++i) {
      sum += kGaussW[i] * (f(mid + half * kGaussX[i]) + f(mid - half * kGaussX[i]));
    }
  }
  return 0.5 * std::abs(h) * sum;
}

/// How an endpoint of the allowed region must be treated.
enum class EndpointKind {
  Turning,  // p(x) -> 0 like sqrt(x - x0): substitute x = x0 +- u^2
  Wall,     // hard wall, p finite: integrate directly
  Dive      // V -> -inf integrably (Coulomb r -> 0): same substitution
};

struct AllowedRegion {
  double lo = 0.0;
  double hi = 0.0;
  EndpointKind lo_kind = EndpointKind::Turning;
  EndpointKind hi_kind = EndpointKind::Turning;
  std::function<double(double)> potential;
  double mass = 1.0;
};

/// Bisects V(x) = energy on [a, b] assuming a sign change of V - E.
double bisect_turning(const std::function<double(double)>& V, double energy, double a,
                      double b) {
  double fa = V(a) - energy;
  for (int i = 0; i < 200 && b - a > 1e-12 * std::max(1.0, std::abs(a) + std::abs(b));
       ++i) {
    const double m = 0.5 * (a + b);
    const double fm = V(m) - energy;
    if ((fa <= 0.0) == (fm <= 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

AllowedRegion locate_region(const PotentialSpec& spec, double energy);

double region_integral(const AllowedRegion& region, double energy, int panels) {
  const auto p = [&](double x) {
    const double kinetic = 2.0 * region.mass * (energy - region.potential(x));
    return std::sqrt(std::max(0.0, kinetic));
  };

  const double mid = 0.5 * (region.lo + region.hi);
  double total = 0.0;

  if (region.lo_kind == EndpointKind::Wall) {
    total += gauss_panels(p, region.lo, mid, panels);
  } else {
    const double span = std::sqrt(mid - region.lo);
    total += gauss_panels([&](double u) { return 2.0 * u * p(region.lo + u * u); }, 0.0,
                          span, panels);
  }
  if (region.hi_kind == EndpointKind::Wall) {
    total += gauss_panels(p, mid, region.hi, panels);
  } else {
    const double span = std::sqrt(region.hi - mid);
    total += gauss_panels([&](double u) { return 2.0 * u * p(region.hi - u * u); }, 0.0,
                          span, panels);
  }
  return 2.0 * total;
}

AllowedRegion locate_region(const PotentialSpec& spec, double energy) {
  AllowedRegion region;

  if (const auto* ho = std::get_if<HarmonicOscillator>(&spec)) {
    if (!(ho->mass > 0.0) || !(ho->omega > 0.0)) {
      throw DomainError("oscillator mass and frequency must be positive");
    }
    if (energy < 0.0) throw NoTurningPointError("energy below the potential minimum");
    const double m = ho->mass, w = ho->omega;
    const double amplitude_bound = 2.0 * std::sqrt(2.0 * energy / (m * w * w)) + 1.0;
    region.mass = m;
    region.potential = [m, w](double x) { return 0.5 * m * w * w * x * x; };
    region.lo = -bisect_turning(region.potential, energy, 0.0, amplitude_bound);
    region.hi = -region.lo;
    return region;
  }

  if (const auto* coulomb = std::get_if<CoulombPotential>(&spec)) {
    const double m = coulomb->mass, alpha = coulomb->coupling;
    const double l = coulomb->angular_l;
    if (!(m > 0.0) || !(alpha > 0.0)) {
      throw DomainError("Coulomb mass and coupling must be positive");
    }
    if (coulomb->angular_l < 0) throw DomainError("angular quantum number must be >= 0");
    if (energy >= 0.0) throw NoTurningPointError("no bound Coulomb orbit at E >= 0");
    region.mass = m;
    region.potential = [m, alpha, l](double r) {
      return -alpha / r + (l > 0.0 ? l * l / (2.0 * m * r * r) : 0.0);
    };
    const double r_outer_guess = alpha / std::abs(energy);
    if (l > 0.0) {
      const double r_min = l * l / (m * alpha);  // centrifugal barrier minimum
      const double v_min = region.potential(r_min);
      if (energy < v_min) throw NoTurningPointError("energy below the effective minimum");
      region.lo = bisect_turning(region.potential, energy, 1e-9 * r_min, r_min);
      region.lo_kind = EndpointKind::Turning;
      region.hi = bisect_turning(region.potential, energy, r_min, 4.0 * r_outer_guess);
    } else {
      region.lo = 0.0;
      region.lo_kind = EndpointKind::Dive;
      region.hi = bisect_turning(region.potential, energy, 0.5 * r_outer_guess,
                                 4.0 * r_outer_guess);
    }
    return region;
  }

  if (const auto* well = std::get_if<SquareWell>(&spec)) {
    if (!(well->mass > 0.0) || !(well->width > 0.0)) {
      throw DomainError("well mass and width must be positive");
    }
    if (energy < 0.0) throw NoTurningPointError("energy below the well floor");
    region.mass = well->mass;
    region.potential = [](double) { return 0.0; };
    region.lo = 0.0;
    region.hi = well->width;
    region.lo_kind = EndpointKind::Wall;
    region.hi_kind = EndpointKind::Wall;
    return region;
  }

  const auto& table = std::get<TabulatedPotential>(spec);
  const int n = static_cast<int>(table.x.size());
  if (n < 2) throw DomainError("tabulated potential needs at least two samples");
  for (int i = 0; i + 1 < n; ++i) {
    if (!(table.x[i + 1] > table.x[i])) {
      throw DomainError("tabulated positions must be strictly increasing");
    }
  }
  const Eigen::VectorXd xs = table.x, vs = table.v;
  region.mass = 1.0;
  region.potential = [xs, vs](double x) {
    const int n_samples = static_cast<int>(xs.size());
    if (x <= xs[0]) return vs[0];
    if (x >= xs[n_samples - 1]) return vs[n_samples - 1];
    int lo = 0, hi = n_samples - 1;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (xs[mid] <= x ? lo : hi) = mid;
    }
    const double w = (x - xs[lo]) / (xs[lo + 1] - xs[lo]);
    return (1.0 - w) * vs[lo] + w * vs[lo + 1];
  };

  int min_index = 0;
  for (int i = 1; i < n; ++i) {
    if (vs[i] < vs[min_index]) min_index = i;
  }
  const double v_min = vs[min_index];
  if (energy < v_min) throw NoTurningPointError("energy below the tabulated minimum");

  // Stop strictly above the energy so the bisection bracket always carries a
  // sign change, even when a node sits exactly on the turning energy.
  int left = min_index;
  while (left > 0 && vs[left] <= energy) --left;
  if (vs[left] <= energy) {
    throw DomainError("allowed region reaches the tabulated domain edge");
  }
  int right = min_index;
  while (right < n - 1 && vs[right] <= energy) ++right;
  if (vs[right] <= energy) {
    throw DomainError("allowed region reaches the tabulated domain edge");
  }
  region.lo = bisect_turning(region.potential, energy, xs[left],
                             xs[std::min(left + 1, min_index)]);
  region.hi = bisect_turning(region.potential, energy, xs[std::max(right - 1, min_index)],
                             xs[right]);
  return region;
}

double potential_minimum(const PotentialSpec& spec) {
  if (std::holds_alternative<HarmonicOscillator>(spec)) return 0.0;
  if (const auto* coulomb = std::get_if<CoulombPotential>(&spec)) {
    if (coulomb->angular_l == 0) return -std::numeric_limits<double>::infinity();
    const double l = coulomb->angular_l;
    return -coulomb->mass * coulomb->coupling * coulomb->coupling / (2.0 * l * l);
  }
  if (std::holds_alternative<SquareWell>(spec)) return 0.0;
  return std::get<TabulatedPotential>(spec).v.minCoeff();
}

}  // namespace

TabulatedPotential load_potential(const std::filesystem::path& path) {
  const std::vector<std::vector<double>> rows = read_numeric_csv(path, 2);
  if (rows.size() < 2) throw IoError("potential file needs at least two rows");
  TabulatedPotential table;
  table.x.resize(rows.size());
  table.v.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    table.x[i] = rows[i][0];
    table.v[i] = rows[i][1];
  }
  for (int i = 0; i + 1 < table.x.size(); ++i) {
    if (!(table.x[i + 1] > table.x[i])) {
      throw IoError("potential positions must be strictly increasing");
    }
  }
  return table;
}

double action_integral(const PotentialSpec& potential, double energy, int panels) {
  if (panels < 1) throw DomainError("panels must be at least 1");
  if (energy == potential_minimum(potential)) return 0.0;  // degenerate orbit
  const AllowedRegion region = locate_region(potential, energy);
  return region_integral(region, energy, panels);
}

namespace {

struct Bracket {
  double lo;
  double hi;
};

/// Energy bracket guaranteed to satisfy action(lo) < target at the lower
/// end; upper end may still need expansion.
Bracket seed_bracket(const PotentialSpec& spec, int n_max, double offset) {
  if (const auto* ho = std::get_if<HarmonicOscillator>(&spec)) {
    return {1e-9 * ho->omega, ho->omega};
  }
  if (const auto* coulomb = std::get_if<CoulombPotential>(&spec)) {
    const double m = coulomb->mass, alpha = coulomb->coupling;
    const double l = coulomb->angular_l;
    const double ground = m * alpha * alpha;
    const double lo = l > 0.0 ? -ground / (2.0 * l * l) * (1.0 - 1e-9) : -2.0 * ground;
    const double big_n = n_max + l + offset + 2.0;
    return {lo, -ground / (2.0 * big_n * big_n)};
  }
  if (const auto* well = std::get_if<SquareWell>(&spec)) {
    const double unit = 1.0 / (2.0 * well->mass * well->width * well->width);
    return {1e-12 * unit, unit};
  }
  const auto& table = std::get<TabulatedPotential>(spec);
  const double v_min = table.v.minCoeff();
  const double v_cap = std::min(table.v[0], table.v[table.v.size() - 1]);
  const double span = v_cap - v_min;
  if (!(span > 0.0)) throw UnresolvedLevelError("tabulated potential has no well");
  return {v_min + 1e-9 * span, v_min + 0.5 * span};
}

bool bracket_can_grow(const PotentialSpec& spec, double hi) {
  if (std::holds_alternative<CoulombPotential>(spec)) return hi < -1e-300;
  if (const auto* table = std::get_if<TabulatedPotential>(&spec)) {
    const double v_cap = std::min(table->v[0], table->v[table->v.size() - 1]);
    const double v_min = table->v.minCoeff();
    return hi < v_cap - 1e-9 * (v_cap - v_min);
  }
  return true;
}

double grow_bracket(const PotentialSpec& spec, double lo, double hi) {
  if (std::holds_alternative<CoulombPotential>(spec)) return 0.25 * hi;  // toward 0-
  if (const auto* table = std::get_if<TabulatedPotential>(&spec)) {
    const double v_cap = std::min(table->v[0], table->v[table->v.size() - 1]);
    const double v_min = table->v.minCoeff();
    return std::min(v_cap - 1e-9 * (v_cap - v_min), v_min + 2.0 * (hi - v_min));
  }
  return lo + 2.0 * (hi - lo);
}

}  // namespace

std::vector<LevelResult> bohr_sommerfeld_levels(const PotentialSpec& potential, int n_min,
                                                int n_max, BoundaryCondition bc,
                                                int panels) {
  if (n_min < 1) throw DomainError("n_min must be at least 1");
  if (n_max < n_min) throw DomainError("n_max must be at least n_min");
  const double offset = mode_offset(bc);

  const auto action = [&](double energy) {
    return action_integral(potential, energy, panels);
  };

  std::vector<LevelResult> levels;
  Bracket bracket = seed_bracket(potential, n_max, offset);
  double lo = bracket.lo;
  double hi = bracket.hi;
  double action_lo = action(lo);
  double action_hi = action(hi);

  for (int n = n_min; n <= n_max; ++n) {
    const double target = two_pi * (n + offset);

    for (int grow = 0; action_hi < target; ++grow) {
      if (grow > 200 || !bracket_can_grow(potential, hi)) {
        std::ostringstream msg;
        msg << "level n=" << n << " not resolvable: action(" << hi << ") = " << action_hi
            << " below target " << target << " (searched up from " << bracket.lo << ")";
        throw UnresolvedLevelError(msg.str());
      }
      hi = grow_bracket(potential, lo, hi);
      action_hi = action(hi);
    }

    // Bisection with secant acceleration on action(E) - target.
    double a = lo, fa = action_lo - target;
    double b = hi, fb = action_hi - target;
    double energy = 0.5 * (a + b);
    double f_at = action(energy) - target;
    int iterations = 1;
    while (std::abs(f_at) > 1e-9 && iterations < 300) {
      if ((fa <= 0.0) == (f_at <= 0.0)) {
        a = energy;
        fa = f_at;
      } else {
        b = energy;
        fb = f_at;
      }
      double candidate = b - fb * (b - a) / (fb - fa);  // secant through bracket
      const double margin = 1e-3 * (b - a);
      if (!(candidate > a + margin && candidate < b - margin)) {
        candidate = 0.5 * (a + b);
      }
      energy = candidate;
      f_at = action(energy) - target;
      ++iterations;
    }
    if (std::abs(f_at) > 1e-9) {
      std::ostringstream msg;
      msg << "level n=" << n << " did not converge within [" << a << ", " << b
          << "]: |action - target| = " << std::abs(f_at);
      throw UnresolvedLevelError(msg.str());
    }

    const AllowedRegion region = locate_region(potential, energy);
    levels.push_back(
        {n, energy, f_at + target, region.lo, region.hi, iterations});

    // The next level sits above this one; reuse the bracket top.
    lo = energy;
    action_lo = f_at + target;
  }

  for (size_t i = 0; i + 1 < levels.size(); ++i) {
    if (!(levels[i + 1].energy > levels[i].energy)) {
      throw UnresolvedLevelError("level energies failed to increase strictly");
    }
  }
  return levels;
}

std::string to_csv(const std::vector<LevelResult>& levels) {
  std::ostringstream os;
  os << "n,E,action,x_minus,x_plus\n";
  char line[256];
  for (const LevelResult& level : levels) {
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%.17g\n", level.n, level.energy,
                  level.action_value, level.turning_lo, level.turning_hi);
    os << line;
  }
  return os.str();
}

}  // namespace cycles
