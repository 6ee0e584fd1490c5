#pragma once

#include <array>
#include <optional>
#include <vector>

#include "caustix/map.hpp"
#include "caustix/orbit.hpp"

namespace caustix {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Chord of the unit circle joining the boundary points at angles phi and
// f(phi), as the normalized line a*x + b*y = c. As the endpoints collide the
// line degenerates to the circle tangent and `degenerate` is set.
struct ChordLine {
    double a = 0.0, b = 0.0, c = 0.0;
    bool degenerate = false;
};

ChordLine chord_line(const MapParams& p, int n, double phi);

struct CausticSample {
    double phi = 0.0;
    bool at_infinity = false;      // |1 + f'(phi)| below 1e-12
    Vec2 pos;                      // envelope point (plot position when compressed)
    double escape_direction = 0.0; // direction of the infinite branch
    Vec2 tangent;                  // (x'(phi), y'(phi)); meaningless at infinity
    bool singular = false;         // both tangent components vanish
};

// Envelope point of the chord family of the n-th iterate at phi.
CausticSample caustic_point(const MapParams& p, int n, double phi);

// Uniform sampling over (-pi, pi]. With compress, finite radii are remapped
// by rho -> 2 rho / (1 + rho) and points at infinity are drawn on the
// radius-2 circle along their escape direction.
std::vector<CausticSample> caustic_curve(const MapParams& p, int n, int samples,
                                         bool compress = false);

Vec2 compress_point(Vec2 pos);

// Jets of the envelope parametrization; orders 0..3 are valid (order 4 of the
// underlying map jet is consumed by the quotient rule one order down).
struct CausticJets {
    Jet4 x, y;
    bool at_infinity = false;
};

CausticJets caustic_jets(const MapParams& p, int n, double phi);

enum class CuspKind { Semicubical, CircleTangency, Degenerate };

struct CuspRecord {
    double phi = 0.0;
    CuspKind kind = CuspKind::Degenerate;
    double discriminant = 0.0;  // x'' y''' - x''' y'' (infinite for cusps at infinity)
    double res_x = 0.0;         // |x'| at the reported point
    double res_y = 0.0;         // |y'|
};

// Singular points of the caustic: a scan for simultaneous zeros of (x', y')
// plus a closed-form criterion pass over the symmetric orbit points, which
// also recovers cusps located at infinity where the scan has no finite
// minimum. Records are sorted by angle.
std::vector<CuspRecord> find_cusps(const MapParams& p, int n, int grid = 8192);

// Closed-form cusp test at a point satisfying one of the symmetric relations
// (throws when the relation does not hold at phi). Returns nullopt when the
// caustic is regular there, a Semicubical or Degenerate record otherwise.
std::optional<CuspRecord> cusp_criterion_symmetric(const MapParams& p, int n, double phi,
                                                   SymRelation relation);

struct ASequenceRow {
    double at_zero = 0.0;
    double at_pi = 0.0;
};

// The nondegeneracy values -f' + f'^3 + 2 f''' of the odd iterates 2m+1 at
// phi = 0 and pi, m = 0..m_max, evaluated by seeded recursion.
std::vector<ASequenceRow> a_sequence(double r, int m_max);

struct TangencyReport {
    std::vector<double> phis;      // ascending: -phi_c, 0, phi_c, pi
    double max_unit_defect = 0.0;  // max | |pos| - 1 | over the four points
    double max_angle_defect = 0.0; // max angle between caustic and circle tangents
};

// The four points where the caustic of the 2m-th iterate touches the unit
// circle (r in (0, 1/3] for the exactness claim).
TangencyReport tangency_points_even(double r, int m);

struct LocalModel {
    double phi_a = 0.0;
    // x(phi) - x(phi_a) ~ cx[0] t^2 + cx[1] t^4 + cx[2] t^6,  t = phi - phi_a
    // y(phi) - y(phi_a) ~ cy[0] t   + cy[1] t^3 + cy[2] t^5
    std::array<double, 3> cx{};
    std::array<double, 3> cy{};
    double rms_residual = 0.0;
    bool well_conditioned = true;
};

// Parity-constrained least-squares fit of the caustic near phi_a in {0, pi}.
LocalModel taylor_local_model(double r, int n, double phi_a, int order = 6,
                              double window = 0.05);

struct VanishingOrder {
    int order = 0;
    double slope = 0.0;   // log-log fit slope the order was rounded from
    bool reliable = true; // false for m >= 3 (signal below double precision)
};

// Order of vanishing of the 2m-th iterate displacement at phi_a in {0, pi}.
VanishingOrder vanishing_order_even(double r, int m, double phi_a);

// Vertices of the limiting quadrilateral at angles {0, phi_c, pi, -phi_c}.
std::array<Vec2, 4> quadrilateral_limit(double r);

struct ConvergenceRow {
    int m = 0;
    double d_closed = 0.0;  // ((1-3r)/(1-r))^{m+1} ((1+3r)/(1+r))^m
    double d_jet = 0.0;     // first derivative of the (2m+1)-th iterate at 0
    double x_axis = 0.0;    // caustic x(0) of the odd iterate
    double x_axis_err = 0.0;  // |x_axis + 1|
    double y_pair_err = 0.0;  // |y(phi_c) - sin(phi_c)|
};

// Convergence of the odd-iterate cusp data toward the quadrilateral vertices.
std::vector<ConvergenceRow> caustic_convergence(double r, int m_max);

struct SectionalCurve {
    std::vector<double> phis;
    std::vector<double> alpha;  // odd half-displacement of the (2m+1)-th iterate
    std::vector<double> s;      // cumulative trapezoid integral of -sin(alpha)
    int sign_changes = 0;       // of the second difference of s on (0, pi)
};

SectionalCurve sectional_curve(double r, int m, int grid = 4096);

}  // namespace caustix
