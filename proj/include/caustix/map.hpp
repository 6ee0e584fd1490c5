#pragma once

#include <vector>

#include "caustix/jet.hpp"

namespace caustix {

// The two members of the family: the reflection map phi + Omega - 2*alpha(phi)
// and its Moebius companion phi + Omega + 2*alpha(phi).
enum class Variant { Reflect, Conjugate };

enum class MapClass { Diffeomorphism, CriticalHomeomorphism, DegreeOneNoninjective };

struct MapParams {
    double r = 0.0;
    double omega = 0.0;
    Variant variant = Variant::Reflect;
};

// Validates 0 <= r < 1 and finite omega; throws std::invalid_argument.
// omega is kept as given (lift scale): interval solvers sweep it continuously
// past +/-pi, so it must not be wrapped here. Use canonical_omega for display.
MapParams make_params(double r, double omega, Variant variant = Variant::Reflect);

// Canonical representative of omega in (-pi, pi].
double canonical_omega(const MapParams& p);

// Angle between the chord from the source point (r, 0) to the boundary point
// e^{i phi} and the boundary radius; odd and 2pi-periodic in phi.
double incident_angle(double r, double phi);

// Truncated sine-series evaluation sum_{k=1..K} (r^k/k) sin(k phi).
double incident_angle_series(double r, double phi, int K);

// Bound on |incident_angle - incident_angle_series| for the truncation at K.
double incident_angle_series_tail(double r, int K);

// Partial derivative of the incident angle with respect to r:
// sin(phi) / (1 - 2 r cos(phi) + r^2).
double incident_angle_dr(double r, double phi);

// Lift of the map to the real line; commutes with x -> x + 2pi.
double map_lift(const MapParams& p, double x);

// Value (lift scale) and derivatives 1..4 of the map at phi.
Jet4 map_jet(const MapParams& p, double phi);

// n-fold iterate of the lift (n >= 0).
double iterate_lift(const MapParams& p, double x, long n);

// Jet of the n-th iterate at phi (n >= 1), by jet composition.
Jet4 iterate_jet(const MapParams& p, double phi, int n);

// Boundary argument of the Blaschke form -z^2 (1 - r z)/(z - r) at z=e^{i phi},
// returned in (-pi, pi]. Coincides with the Reflect map at omega = pi mod 2pi.
double blaschke_boundary(double r, double phi);

struct CriticalPoints {
    std::vector<double> phis;  // ascending
    bool degenerate = false;   // the two roots collided at phi = 0
};

// Zeros of the first derivative of the Reflect map: empty for r < 1/3,
// {0} (degenerate) at r = 1/3, +/- arccos((1+3r^2)/(4r)) for r > 1/3.
CriticalPoints critical_points(double r);

MapClass map_class(double r);

}  // namespace caustix
