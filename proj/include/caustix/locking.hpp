#pragma once

#include <vector>

#include "caustix/map.hpp"

namespace caustix {

// Birkhoff estimate of the rotation number, in radians per iterate.
struct RotationEstimate {
    double value = 0.0;        // radians per iterate
    double error_bound = 0.0;  // a-priori bound 2*pi*(orbit diameter bound 2)/n
    long iterations_used = 0;
};

RotationEstimate rotation_number(const MapParams& p, double phi0, long iterations);

// Rotation interval of a degree-one circle map, from the rotation numbers of
// the monotone envelopes of the lift. Collapses to a point (within error
// bounds) when the map is injective (Conjugate always; Reflect for r <= 1/3).
struct RotationInterval {
    RotationEstimate lower;
    RotationEstimate upper;
};

RotationInterval rotation_interval(const MapParams& p, long iterations,
                                   double phi0 = 0.0);

struct ResonanceInterval {
    int p = 0;
    int q = 1;
    double omega_lo = 0.0;
    double omega_hi = 0.0;
    double width = 0.0;
    double bracket_tol = 0.0;  // omega resolution of the edge bisection
};

// Parameter interval on which the rotation number sticks at 2 pi p / q:
// locked iff min_x g <= 0 <= max_x g for the q-block displacement defect
// g(x) = lift^q(x) - x - 2 pi p, with edges bisected in omega (valid because
// g is strictly increasing in omega pointwise). Requires a family monotone
// in omega: Reflect with r <= 1/3, or Conjugate with any r. Throws
// std::runtime_error when no locked parameter is found near 2 pi p / q.
ResonanceInterval lock_interval(double r, Variant variant, int p, int q,
                                double tol = 1e-10);

// Rotation-locking interval of the Reflect family. Rejects r > 1/3 (the
// rotation number stops being single-valued there) and non-reduced p/q.
ResonanceInterval resonance_interval(double r, int p, int q, double tol = 1e-10);

struct TongueRow {
    double r = 0.0;
    double omega_lo = 0.0;
    double omega_hi = 0.0;
    double width = 0.0;
};

// resonance_interval sampled over r in [r_min, r_max]; rows ordered by r.
// Deterministic for any thread count.
std::vector<TongueRow> tongue_raster(int p, int q, double r_min, double r_max,
                                     int r_steps, double tol = 1e-10, int threads = 1);

struct StaircaseRow {
    double omega = 0.0;
    double rotation = 0.0;     // radians per iterate
    double error_bound = 0.0;
};

// rotation_number sampled over omega in (-pi, pi]; rows ordered by omega.
// Deterministic for any thread count.
std::vector<StaircaseRow> staircase(double r, int omega_samples, long iterations,
                                    Variant variant = Variant::Reflect,
                                    double phi0 = 0.0, int threads = 1);

// Perturbative rotation-pi/1-iterate interval around omega = pi, as offsets:
// the extrema over x of a(x) = 2 r^2 sin 2x + r^3 (2 sin x - 2 sin 3x).
// The Conjugate family has no interval there; it returns {0, 0, 0}.
struct SeriesWidth {
    double offset_lo = 0.0;  // min_x a(x); predicted lower edge is pi + offset_lo
    double offset_hi = 0.0;  // max_x a(x)
    double width = 0.0;
};

SeriesWidth series_width_pi(double r, int x_grid = 4096,
                            Variant variant = Variant::Reflect);

struct WidthFit {
    double slope = 0.0;   // d log(width) / d log(r)
    int points_used = 0;  // samples with width resolvable above 10*tol
};

// Log-log least-squares exponent of the Reflect interval width over
// [r_lo, r_hi], sampled at `points` logarithmically spaced radii.
WidthFit width_exponent_fit(int p, int q, double r_lo, double r_hi, int points,
                            double tol = 1e-10);

// True when the Conjugate family shows no rotation-p/q interval wider than
// `resolution`.
bool conjugate_nonlocking_check(double r, int p, int q, double resolution = 1e-6);

// Staircase plateau measured directly from orbit blocks: an omega counts as
// locked when the q-block displacement defect of a long orbit either decays
// below 1e-11 or stays small for the whole budget, and as unlocked when the
// accumulated defect drifts past 4 pi. Edges located by bisection to `tol`.
// An independent cross-check of lock_interval.
ResonanceInterval plateau_width(double r, Variant variant, int p, int q,
                                double tol = 1e-8);

// Exact rotation number (radians per iterate) of the Conjugate family: a
// plateau at 2 pi k for |omega - 2 pi k| <= 2 arcsin r, elliptic rotation
// 2 pi k + sgn(d) * 2 arccos(cos(d/2)/sqrt(1-r^2)) elsewhere (d the offset
// from 2 pi k).
double conjugate_rotation_exact(double r, double omega);

}  // namespace caustix
