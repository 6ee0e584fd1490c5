#include "caustix/map.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "caustix/angles.hpp"

namespace caustix {

MapParams make_params(double r, double omega, Variant variant) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("make_params: r must lie in [0, 1)");
    if (!std::isfinite(omega))
        throw std::invalid_argument("make_params: omega must be finite");
    return MapParams{r, omega, variant};
}

double canonical_omega(const MapParams& p) { return wrap_angle(p.omega); }

double incident_angle(double r, double phi) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("incident_angle: r must lie in [0, 1)");
    // Arg(1 - r e^{-i phi}); the real part 1 - r cos(phi) stays positive, so
    // the branch is the principal one and |alpha| < pi/2.
    return std::atan2(r * std::sin(phi), 1.0 - r * std::cos(phi));
}

double incident_angle_series(double r, double phi, int K) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("incident_angle_series: r must lie in [0, 1)");
    if (K < 1) throw std::invalid_argument("incident_angle_series: K must be >= 1");
    double sum = 0.0;
    double rk = 1.0;
    for (int k = 1; k <= K; ++k) {
        rk *= r;
        sum += rk / k * std::sin(k * phi);
    }
    return sum;
}

double incident_angle_series_tail(double r, int K) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("incident_angle_series_tail: r must lie in [0, 1)");
    if (K < 1) throw std::invalid_argument("incident_angle_series_tail: K must be >= 1");
    return std::pow(r, K + 1) / ((K + 1) * (1.0 - r));
}

double incident_angle_dr(double r, double phi) {
    const double d = 1.0 - 2.0 * r * std::cos(phi) + r * r;
    return std::sin(phi) / d;
}

double map_lift(const MapParams& p, double x) {
    const double a = incident_angle(p.r, x);
    return p.variant == Variant::Reflect ? x + p.omega - 2.0 * a : x + p.omega + 2.0 * a;
}

namespace {

// Derivatives 1..4 of the incident angle via the complex form
// alpha = Im log(1 - r e^{-i phi}).
struct AlphaDerivs {
    double a1, a2, a3, a4;
};

AlphaDerivs alpha_derivs(double r, double phi) {
    using cd = std::complex<double>;
    const cd w = std::polar(r, phi);
    const cd om = 1.0 - w;
    const cd om2 = om * om;
    const cd t1 = w / om;
    const cd t2 = w / om2;
    const cd t3 = w * (1.0 + w) / (om2 * om);
    const cd t4 = w * (1.0 + w * (4.0 + w)) / (om2 * om2);
    return {t1.real(), -t2.imag(), -t3.real(), t4.imag()};
}

}  // namespace

Jet4 map_jet(const MapParams& p, double phi) {
    const AlphaDerivs a = alpha_derivs(p.r, phi);
    const double s = p.variant == Variant::Reflect ? -2.0 : 2.0;
    return {map_lift(p, phi), 1.0 + s * a.a1, s * a.a2, s * a.a3, s * a.a4};
}

double iterate_lift(const MapParams& p, double x, long n) {
    if (n < 0) throw std::invalid_argument("iterate_lift: n must be >= 0");
    for (long i = 0; i < n; ++i) x = map_lift(p, x);
    return x;
}

Jet4 iterate_jet(const MapParams& p, double phi, int n) {
    if (n < 1) throw std::invalid_argument("iterate_jet: n must be >= 1");
    Jet4 jet = map_jet(p, phi);
    for (int i = 1; i < n; ++i) jet = compose(map_jet(p, jet.d0), jet);
    return jet;
}

double blaschke_boundary(double r, double phi) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("blaschke_boundary: r must lie in [0, 1)");
    using cd = std::complex<double>;
    const cd z = std::polar(1.0, phi);
    const cd val = -z * z * (1.0 - r * z) / (z - r);
    return wrap_angle(std::arg(val));
}

CriticalPoints critical_points(double r) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("critical_points: r must lie in [0, 1)");
    CriticalPoints out;
    if (r < 1e-15) return out;
    const double c = (1.0 + 3.0 * r * r) / (4.0 * r);
    if (std::abs(c - 1.0) <= 1e-12) {
        out.phis = {0.0};
        out.degenerate = true;
        return out;
    }
    if (c > 1.0) return out;
    const double phi = std::acos(c);
    out.phis = {-phi, phi};
    return out;
}

MapClass map_class(double r) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("map_class: r must lie in [0, 1)");
    const double third = 1.0 / 3.0;
    if (r < third) return MapClass::Diffeomorphism;
    if (r == third) return MapClass::CriticalHomeomorphism;
    return MapClass::DegreeOneNoninjective;
}

}  // namespace caustix
