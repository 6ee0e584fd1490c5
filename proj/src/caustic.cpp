#include "caustix/caustic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "caustix/angles.hpp"
#include "caustix/roots.hpp"

namespace caustix {

namespace {

constexpr double infinity_tol = 1e-12;

double relation_target(SymRelation rel, double phi) {
    switch (rel) {
        case SymRelation::FixedPoint: return phi;
        case SymRelation::MinusPhi: return -phi;
        case SymRelation::PlusPi: return phi + pi;
        case SymRelation::PiMinusPhi: return pi - phi;
    }
    return phi;
}

}  // namespace

ChordLine chord_line(const MapParams& p, int n, double phi) {
    if (n < 1) throw std::invalid_argument("chord_line: n must be >= 1");
    const double f = iterate_lift(p, phi, n);
    // Chord of the unit circle between angles phi and f:
    // cos((phi+f)/2) x + sin((phi+f)/2) y = cos((f-phi)/2).
    const double mid = 0.5 * (phi + f);
    const double half = 0.5 * (f - phi);
    ChordLine line{std::cos(mid), std::sin(mid), std::cos(half), false};
    line.degenerate = circle_dist(f, phi) < 1e-9;
    return line;
}

CausticSample caustic_point(const MapParams& p, int n, double phi) {
    if (n < 1) throw std::invalid_argument("caustic_point: n must be >= 1");
    const Jet4 J = iterate_jet(p, phi, n);
    const double f = J.d0, f1 = J.d1, f2 = J.d2;
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    const double cf = std::cos(f), sf = std::sin(f);
    const double e = 1.0 + f1;

    CausticSample out;
    out.phi = phi;
    const double nx = f1 * cphi + cf;
    const double ny = f1 * sphi + sf;
    if (std::abs(e) < infinity_tol) {
        out.at_infinity = true;
        out.escape_direction = std::atan2(ny, nx);
        return out;
    }
    out.pos = {nx / e, ny / e};
    const double e2 = e * e;
    out.tangent = {(f2 * (cphi - cf) - f1 * e * (sphi + sf)) / e2,
                   (f2 * (sphi - sf) + f1 * e * (cphi + cf)) / e2};
    const double tol = 1e-9 * (1.0 + std::abs(f1) + std::abs(f2));
    out.singular = std::abs(out.tangent.x) < tol && std::abs(out.tangent.y) < tol;
    return out;
}

Vec2 compress_point(Vec2 pos) {
    const double rho = std::hypot(pos.x, pos.y);
    if (rho == 0.0) return pos;
    const double scale = 2.0 / (1.0 + rho);
    return {pos.x * scale, pos.y * scale};
}

std::vector<CausticSample> caustic_curve(const MapParams& p, int n, int samples,
                                         bool compress) {
    if (samples < 16) throw std::invalid_argument("caustic_curve: samples must be >= 16");
    std::vector<CausticSample> out;
    out.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double phi = -pi + (i + 1) * two_pi / samples;
        CausticSample s = caustic_point(p, n, phi);
        if (compress) {
            if (s.at_infinity)
                s.pos = {2.0 * std::cos(s.escape_direction),
                         2.0 * std::sin(s.escape_direction)};
            else
                s.pos = compress_point(s.pos);
        }
        out.push_back(s);
    }
    return out;
}

CausticJets caustic_jets(const MapParams& p, int n, double phi) {
    if (n < 1) throw std::invalid_argument("caustic_jets: n must be >= 1");
    const Jet4 F = iterate_jet(p, phi, n);
    // Jet of f'; its own 4th derivative is unknown, so aggregate results are
    // valid only through order 3 (all that the cusp discriminant needs).
    const Jet4 fp{F.d1, F.d2, F.d3, F.d4, 0.0};
    const Jet4 e = fp + constant_jet(1.0);
    const Jet4 nx = fp * cos_jet(phi) + compose(cos_jet(F.d0), F);
    const Jet4 ny = fp * sin_jet(phi) + compose(sin_jet(F.d0), F);

    CausticJets out;
    out.at_infinity = std::abs(e.d0) < infinity_tol;
    if (!out.at_infinity) {
        out.x = nx / e;
        out.y = ny / e;
    }
    return out;
}

namespace {

CuspRecord make_record(const MapParams& p, int n, double phi) {
    CuspRecord rec;
    rec.phi = wrap_angle(phi);
    const CausticJets cj = caustic_jets(p, n, phi);
    if (cj.at_infinity) {
        rec.kind = CuspKind::Semicubical;  // refined by callers when degenerate
        rec.discriminant = std::numeric_limits<double>::infinity();
        rec.res_x = 0.0;
        rec.res_y = 0.0;
        return rec;
    }
    rec.res_x = std::abs(cj.x.d1);
    rec.res_y = std::abs(cj.y.d1);
    rec.discriminant = cj.x.d2 * cj.y.d3 - cj.x.d3 * cj.y.d2;
    const double disc_scale =
        (std::abs(cj.x.d2) + std::abs(cj.y.d2)) * (std::abs(cj.x.d3) + std::abs(cj.y.d3)) +
        1e-300;
    const bool on_circle = std::abs(std::hypot(cj.x.d0, cj.y.d0) - 1.0) < 1e-8;
    if (std::abs(rec.discriminant) > 1e-6 * disc_scale)
        rec.kind = CuspKind::Semicubical;
    else
        rec.kind = on_circle ? CuspKind::CircleTangency : CuspKind::Degenerate;
    return rec;
}

}  // namespace

std::optional<CuspRecord> cusp_criterion_symmetric(const MapParams& p, int n, double phi,
                                                   SymRelation relation) {
    if (n < 1) throw std::invalid_argument("cusp_criterion_symmetric: n must be >= 1");
    const Jet4 J = iterate_jet(p, phi, n);
    if (circle_dist(J.d0, relation_target(relation, phi)) > 1e-8)
        throw std::invalid_argument(
            "cusp_criterion_symmetric: the symmetric relation does not hold at phi");

    const double f1 = J.d1, f2 = J.d2, f3 = J.d3;
    const double c = std::cos(phi), s = std::sin(phi);
    const double c2 = std::cos(2.0 * phi);

    double primary = 0.0, nondeg = 0.0;
    switch (relation) {
        case SymRelation::FixedPoint:
            primary = f1;
            nondeg = f2;
            break;
        case SymRelation::PlusPi:
            primary = f2;
            nondeg = -f1 + f1 * f1 * f1 + 2.0 * f3;
            break;
        case SymRelation::MinusPhi:
            primary = f1 * (1.0 + f1) * c + f2 * s;
            nondeg = f1 * (2.0 + c2) + 6.0 * f1 * f1 * c * c +
                     (1.0 + 2.0 * c2) * f1 * f1 * f1 - 2.0 * f3 * s * s;
            break;
        case SymRelation::PiMinusPhi:
            primary = f1 * (1.0 + f1) * s - f2 * c;
            nondeg = f1 * (2.0 - c2) + 6.0 * f1 * f1 * s * s +
                     (1.0 - 2.0 * c2) * f1 * f1 * f1 - 2.0 * f3 * c * c;
            break;
    }

    const double jet_scale = 1.0 + std::abs(f1) + std::abs(f2);
    if (std::abs(primary) > 1e-9 * jet_scale) return std::nullopt;

    CuspRecord rec = make_record(p, n, phi);
    const double nondeg_scale =
        1.0 + std::abs(f1) * std::abs(f1) * std::abs(f1) + std::abs(f3);
    rec.kind = std::abs(nondeg) > 1e-9 * nondeg_scale ? CuspKind::Semicubical
                                                      : CuspKind::Degenerate;
    return rec;
}

std::vector<CuspRecord> find_cusps(const MapParams& p, int n, int grid) {
    if (n < 1) throw std::invalid_argument("find_cusps: n must be >= 1");
    if (grid < 256) throw std::invalid_argument("find_cusps: grid too small");

    const double h = two_pi / grid;
    std::vector<double> sq(grid);
    for (int i = 0; i < grid; ++i) {
        const double phi = -pi + i * h;
        const CausticJets cj = caustic_jets(p, n, phi);
        sq[i] = cj.at_infinity ? std::numeric_limits<double>::infinity()
                               : cj.x.d1 * cj.x.d1 + cj.y.d1 * cj.y.d1;
    }

    auto s_of = [&](double phi) {
        const CausticJets cj = caustic_jets(p, n, phi);
        if (cj.at_infinity) return std::numeric_limits<double>::infinity();
        return cj.x.d1 * cj.x.d1 + cj.y.d1 * cj.y.d1;
    };

    std::vector<CuspRecord> records;
    auto have_near = [&](double phi) {
        for (const CuspRecord& r : records)
            if (circle_dist(r.phi, phi) < 1e-7) return true;
        return false;
    };

    for (int i = 0; i < grid; ++i) {
        const double sm = sq[(i + grid - 1) % grid], s0 = sq[i], sp = sq[(i + 1) % grid];
        if (!(s0 <= sm && s0 <= sp && (s0 < sm || s0 < sp))) continue;
        if (!std::isfinite(s0)) continue;
        const double phi0 = -pi + i * h;
        const double phi_star = refine_minimum(s_of, phi0 - h, phi0 + h, 1e-11);
        const Jet4 F = iterate_jet(p, phi_star, n);
        const double tol = 1e-7 * (1.0 + std::abs(F.d1) + std::abs(F.d2));
        const CausticJets cj = caustic_jets(p, n, phi_star);
        if (cj.at_infinity) continue;
        if (std::abs(cj.x.d1) > tol || std::abs(cj.y.d1) > tol) continue;
        if (have_near(wrap_angle(phi_star))) continue;
        records.push_back(make_record(p, n, phi_star));
    }

    // Criterion pass over the symmetric orbit points; this also recovers
    // cusps at infinity, which the finite scan cannot represent.
    std::vector<std::pair<double, SymRelation>> candidates;
    const bool odd = n % 2 != 0;
    candidates.emplace_back(0.0, odd ? SymRelation::PlusPi : SymRelation::FixedPoint);
    candidates.emplace_back(pi, odd ? SymRelation::PlusPi : SymRelation::FixedPoint);
    if (p.r > 1e-12) {
        const double pc = phi_c(p.r);
        const SymRelation rel = odd ? SymRelation::MinusPhi : SymRelation::FixedPoint;
        candidates.emplace_back(pc, rel);
        candidates.emplace_back(-pc, rel);
    }
    for (const auto& [phi, rel] : candidates) {
        if (have_near(wrap_angle(phi))) continue;
        const Jet4 J = iterate_jet(p, phi, n);
        if (circle_dist(J.d0, relation_target(rel, phi)) > 1e-8) continue;
        if (auto rec = cusp_criterion_symmetric(p, n, phi, rel); rec.has_value())
            records.push_back(*rec);
    }

    std::sort(records.begin(), records.end(),
              [](const CuspRecord& a, const CuspRecord& b) { return a.phi < b.phi; });
    return records;
}

std::vector<ASequenceRow> a_sequence(double r, int m_max) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("a_sequence: r must lie in (0, 1)");
    if (m_max < 0) throw std::invalid_argument("a_sequence: m_max must be >= 0");

    const double r2 = r * r;
    const double om = 1.0 - r2;
    const double seed0 = 24.0 * r2 / ((1.0 - r) * (1.0 - r));
    const double seedpi = 24.0 * r2 / ((1.0 + r) * (1.0 + r));
    const double a2_0 = 48.0 * r2 * (1.0 + r) * (1.0 - 3.0 * r + 13.0 * r2 - 15.0 * r2 * r) /
                        (om * om * om);
    const double a2_pi = 48.0 * r2 * (1.0 - r) * (1.0 + 3.0 * r + 13.0 * r2 + 15.0 * r2 * r) /
                         (om * om * om);
    const double k3 = std::pow((1.0 - 9.0 * r2) / om, 3);
    const double g_minus = (1.0 - 3.0 * r) / (1.0 - r);
    const double g_plus = (1.0 + 3.0 * r) / (1.0 + r);

    std::vector<ASequenceRow> rows;
    rows.reserve(m_max + 1);
    rows.push_back({seed0, seedpi});
    for (int m = 1; m <= m_max; ++m) {
        const double d1_zero = std::pow(g_minus, m) * std::pow(g_plus, m - 1);
        const double d1_pi = std::pow(g_minus, m - 1) * std::pow(g_plus, m);
        const ASequenceRow& prev = rows.back();
        rows.push_back({k3 * prev.at_zero + a2_0 * d1_zero,
                        k3 * prev.at_pi + a2_pi * d1_pi});
    }
    return rows;
}

TangencyReport tangency_points_even(double r, int m) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("tangency_points_even: r must lie in (0, 1)");
    if (m < 1) throw std::invalid_argument("tangency_points_even: m must be >= 1");
    const MapParams p = make_params(r, pi, Variant::Reflect);
    const double pc = phi_c(r);

    TangencyReport rep;
    rep.phis = {-pc, 0.0, pc, pi};
    for (double phi : rep.phis) {
        const CausticSample s = caustic_point(p, 2 * m, phi);
        if (s.at_infinity)
            throw std::runtime_error("tangency_points_even: unexpected infinite point");
        rep.max_unit_defect =
            std::max(rep.max_unit_defect, std::abs(std::hypot(s.pos.x, s.pos.y) - 1.0));
        // Angle between the caustic tangent and the circle tangent (-sin, cos),
        // as directions (mod pi).
        const double tx = s.tangent.x, ty = s.tangent.y;
        const double vx = -std::sin(phi), vy = std::cos(phi);
        const double cross = vx * ty - vy * tx;
        const double dot = vx * tx + vy * ty;
        rep.max_angle_defect =
            std::max(rep.max_angle_defect, std::atan2(std::abs(cross), std::abs(dot)));
    }
    return rep;
}

namespace {

// Solve the 3x3 normal equations G c = b in place; returns false when G is
// numerically singular.
bool solve3(double G[3][3], double b[3], double c[3]) {
    int idx[3] = {0, 1, 2};
    for (int k = 0; k < 3; ++k) {
        int piv = k;
        for (int i = k + 1; i < 3; ++i)
            if (std::abs(G[idx[i]][k]) > std::abs(G[idx[piv]][k])) piv = i;
        std::swap(idx[k], idx[piv]);
        const double d = G[idx[k]][k];
        if (std::abs(d) < 1e-300) return false;
        for (int i = k + 1; i < 3; ++i) {
            const double f = G[idx[i]][k] / d;
            for (int j = k; j < 3; ++j) G[idx[i]][j] -= f * G[idx[k]][j];
            b[idx[i]] -= f * b[idx[k]];
        }
    }
    for (int k = 2; k >= 0; --k) {
        double acc = b[idx[k]];
        for (int j = k + 1; j < 3; ++j) acc -= G[idx[k]][j] * c[j];
        c[k] = acc / G[idx[k]][k];
    }
    return true;
}

}  // namespace

LocalModel taylor_local_model(double r, int n, double phi_a, int order, double window) {
    if (circle_dist(phi_a, 0.0) > 1e-12 && circle_dist(phi_a, pi) > 1e-12)
        throw std::invalid_argument("taylor_local_model: phi_a must be 0 or pi");
    if (order < 2 || order > 6)
        throw std::invalid_argument("taylor_local_model: order must lie in [2, 6]");
    if (!(window > 1e-4 && window < 0.5))
        throw std::invalid_argument("taylor_local_model: window must lie in (1e-4, 0.5)");

    const MapParams p = make_params(r, pi, Variant::Reflect);
    const CausticSample base = caustic_point(p, n, phi_a);
    if (base.at_infinity)
        throw std::runtime_error("taylor_local_model: caustic at infinity at phi_a");

    constexpr int m_samples = 201;
    const int nx = std::min(3, order / 2);        // powers 2, 4, 6
    const int ny = std::min(3, (order + 1) / 2);  // powers 1, 3, 5

    double Gx[3][3] = {}, bx[3] = {}, Gy[3][3] = {}, by[3] = {};
    std::vector<double> ts(m_samples), dxs(m_samples), dys(m_samples);
    for (int j = 0; j < m_samples; ++j) {
        const double t = -1.0 + 2.0 * j / (m_samples - 1);  // scaled abscissa
        const CausticSample s = caustic_point(p, n, phi_a + t * window);
        if (s.at_infinity)
            throw std::runtime_error("taylor_local_model: caustic at infinity in window");
        ts[j] = t;
        dxs[j] = s.pos.x - base.pos.x;
        dys[j] = s.pos.y - base.pos.y;
        double px[3] = {t * t, t * t * t * t, t * t * t * t * t * t};
        double py[3] = {t, t * t * t, t * t * t * t * t};
        for (int a = 0; a < nx; ++a) {
            bx[a] += px[a] * dxs[j];
            for (int b = 0; b < nx; ++b) Gx[a][b] += px[a] * px[b];
        }
        for (int a = 0; a < ny; ++a) {
            by[a] += py[a] * dys[j];
            for (int b = 0; b < ny; ++b) Gy[a][b] += py[a] * py[b];
        }
    }
    for (int a = 0; a < 3; ++a) {
        if (a >= nx) Gx[a][a] = 1.0;
        if (a >= ny) Gy[a][a] = 1.0;
    }

    LocalModel model;
    model.phi_a = wrap_angle(phi_a);
    double cx[3] = {}, cy[3] = {};
    const bool okx = solve3(Gx, bx, cx);
    const bool oky = solve3(Gy, by, cy);
    model.well_conditioned = okx && oky;

    // Unscale: coefficient of theta^k is (scaled coefficient) / window^k.
    for (int a = 0; a < 3; ++a) {
        model.cx[a] = a < nx ? cx[a] / std::pow(window, 2 * a + 2) : 0.0;
        model.cy[a] = a < ny ? cy[a] / std::pow(window, 2 * a + 1) : 0.0;
    }

    double ss = 0.0;
    for (int j = 0; j < m_samples; ++j) {
        const double t = ts[j];
        double fx = 0.0, fy = 0.0;
        for (int a = 0; a < nx; ++a) fx += cx[a] * std::pow(t, 2 * a + 2);
        for (int a = 0; a < ny; ++a) fy += cy[a] * std::pow(t, 2 * a + 1);
        ss += (dxs[j] - fx) * (dxs[j] - fx) + (dys[j] - fy) * (dys[j] - fy);
    }
    model.rms_residual = std::sqrt(ss / (2 * m_samples));
    return model;
}

VanishingOrder vanishing_order_even(double r, int m, double phi_a) {
    if (m < 1) throw std::invalid_argument("vanishing_order_even: m must be >= 1");
    if (circle_dist(phi_a, 0.0) > 1e-12 && circle_dist(phi_a, pi) > 1e-12)
        throw std::invalid_argument("vanishing_order_even: phi_a must be 0 or pi");
    const MapParams p = make_params(r, pi, Variant::Reflect);
    const int n = 2 * m;

    constexpr int pts = 16;
    const double lo = 0.02, hi = 0.3;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int used = 0;
    for (int j = 0; j < pts; ++j) {
        const double theta = lo * std::pow(hi / lo, double(j) / (pts - 1));
        const double disp =
            std::abs(std::remainder(iterate_lift(p, phi_a + theta, n) - phi_a, two_pi));
        if (disp < 1e-15) continue;  // below noise floor
        const double lx = std::log(theta), ly = std::log(disp);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++used;
    }
    VanishingOrder out;
    if (used < 4) {
        out.reliable = false;
        return out;
    }
    out.slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
    out.order = static_cast<int>(std::lround(out.slope));
    out.reliable = m <= 2 && std::abs(out.slope - out.order) < 0.2;
    return out;
}

std::array<Vec2, 4> quadrilateral_limit(double r) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("quadrilateral_limit: r must lie in (0, 1)");
    const double pc = phi_c(r);
    return {Vec2{1.0, 0.0}, Vec2{std::cos(pc), std::sin(pc)}, Vec2{-1.0, 0.0},
            Vec2{std::cos(pc), -std::sin(pc)}};
}

std::vector<ConvergenceRow> caustic_convergence(double r, int m_max) {
    if (!(r > 0.0 && r <= 1.0 / 3.0 + 1e-12))
        throw std::invalid_argument("caustic_convergence: r must lie in (0, 1/3]");
    if (m_max < 0) throw std::invalid_argument("caustic_convergence: m_max must be >= 0");
    const MapParams p = make_params(r, pi, Variant::Reflect);
    const double pc = phi_c(r);
    const double g_minus = (1.0 - 3.0 * r) / (1.0 - r);
    const double g_plus = (1.0 + 3.0 * r) / (1.0 + r);

    std::vector<ConvergenceRow> rows;
    rows.reserve(m_max + 1);
    for (int m = 0; m <= m_max; ++m) {
        const int n = 2 * m + 1;
        ConvergenceRow row;
        row.m = m;
        row.d_closed = std::pow(g_minus, m + 1) * std::pow(g_plus, m);
        row.d_jet = iterate_jet(p, 0.0, n).d1;
        const CausticSample axis = caustic_point(p, n, 0.0);
        const CausticSample pair = caustic_point(p, n, pc);
        if (axis.at_infinity || pair.at_infinity)
            throw std::runtime_error("caustic_convergence: unexpected infinite point");
        row.x_axis = axis.pos.x;
        row.x_axis_err = std::abs(row.x_axis + 1.0);
        row.y_pair_err = std::abs(pair.pos.y - std::sin(pc));
        rows.push_back(row);
    }
    return rows;
}

SectionalCurve sectional_curve(double r, int m, int grid) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("sectional_curve: r must lie in [0, 1)");
    if (m < 0) throw std::invalid_argument("sectional_curve: m must be >= 0");
    if (grid < 64) throw std::invalid_argument("sectional_curve: grid too small");
    if (grid % 2 != 0) ++grid;  // keep phi = 0 on a node

    const MapParams p = make_params(r, pi, Variant::Reflect);
    const int n = 2 * m + 1;
    const double h = two_pi / grid;

    SectionalCurve out;
    out.phis.resize(grid + 1);
    out.alpha.resize(grid + 1);
    out.s.resize(grid + 1);
    for (int i = 0; i <= grid; ++i) {
        out.phis[i] = -pi + i * h;
        out.alpha[i] = 0.5 * (out.phis[i] + n * pi - iterate_lift(p, out.phis[i], n));
    }

    double acc = 0.0;
    out.s[0] = 0.0;
    for (int i = 1; i <= grid; ++i) {
        acc += -0.5 * h * (std::sin(out.alpha[i - 1]) + std::sin(out.alpha[i]));
        out.s[i] = acc;
    }
    const double s0 = out.s[grid / 2];
    for (double& v : out.s) v -= s0;

    int prev = 0, changes = 0;
    for (int i = grid / 2 + 1; i < grid; ++i) {
        const double d2 = out.s[i + 1] - 2.0 * out.s[i] + out.s[i - 1];
        const int sg = d2 > 0.0 ? 1 : (d2 < 0.0 ? -1 : 0);
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++changes;
        prev = sg;
    }
    out.sign_changes = changes;
    return out;
}

}  // namespace caustix
