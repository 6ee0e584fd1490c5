#pragma once

#include <optional>
#include <vector>

#include "caustix/map.hpp"

namespace caustix {

enum class Stability { Attracting, Repelling, Neutral };

struct PeriodicPoint {
    double phi = 0.0;
    int period = 1;
    double multiplier = 0.0;  // product of first derivatives around the cycle
    Stability stability = Stability::Neutral;
};

// The angle of the nonzero symmetric 2-cycle {+phi_c, -phi_c}:
// cos(phi_c) = (1 - sqrt(1 + 8 r^2)) / (4 r), r in (0, 1).
double phi_c(double r);

// The two period-2 cycles of the reflection map at omega = pi: {0, pi} and
// {+phi_c, -phi_c}, as four points sorted by angle, each carrying its cycle
// multiplier and stability class (neutral band 1e-9 around |multiplier| = 1).
std::vector<PeriodicPoint> period2_structure(double r);

enum class SymRelation { FixedPoint, MinusPhi, PlusPi, PiMinusPhi };

struct SymmetricSolutions {
    std::vector<double> phis;  // ascending canonical angles
    int grid = 0;
    double resolution = 0.0;
};

// Solutions of the n-th iterate relation on the circle: f(phi) equals phi,
// -phi, phi + pi, or pi - phi (mod 2pi). Requires the Reflect variant with
// omega = pi. Throws std::runtime_error when the scan grid cannot separate
// adjacent roots.
SymmetricSolutions find_symmetric_solutions(const MapParams& p, int n,
                                            SymRelation relation, int grid = 8192);

struct DisplacementCheck {
    double min_displacement = 0.0;
    double bound = 0.0;
    bool holds = false;
};

// Grid minimum of the circle displacement |f(phi) - phi| for the reflection
// map at omega = pi, against the lower bound pi - 2|log(1 - r)|.
DisplacementCheck displacement_bound_check(double r, int grid = 8192);

// Projected orbit samples at iterations n with n1 < n < n2.
std::vector<double> asymptotic_orbit(const MapParams& p, double phi0, long n1, long n2);

enum class BifurcationSeed { CriticalPlus, CriticalMinus, Custom };

struct RasterGrid {
    std::vector<double> xs;                    // parameter value per column
    std::vector<std::vector<double>> columns;  // samples per column
};

// Asymptotic-orbit samples per parameter column; columns are independent and
// may be computed on several threads, assembled in column order.
RasterGrid bifurcation_raster(double r_min, double r_max, int r_steps,
                              BifurcationSeed seed, double custom_phi, long n1, long n2,
                              int threads = 1);

// Smallest period q <= max_period of the attractor reached from seed_phi
// (reflection map, omega = pi), or nullopt when no cycle is detected.
std::optional<int> attracting_period_at(double r, double seed_phi, int max_period);

// Parameter at which the {0, pi} cycle multiplier passes -1, found by
// bisection of multiplier(r) + 1 on [r_lo, r_hi].
double period_doubling_onset(double r_lo = 0.40, double r_hi = 0.50);

}  // namespace caustix
