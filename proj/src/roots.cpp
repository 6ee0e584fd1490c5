#include "caustix/roots.hpp"

#include <algorithm>
#include <cmath>

#include "caustix/angles.hpp"

namespace caustix {

double bisect(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a);
    if (fa == 0.0) return a;
    double fb = f(b);
    if (fb == 0.0) return b;
    // Caller guarantees a sign change.
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

double refine_minimum(const std::function<double(double)>& f, double a, double b,
                      double xtol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

RootScan scan_circle_roots(const std::function<double(double)>& u, int grid, double tol) {
    RootScan out;
    out.grid = grid;
    const double h = two_pi / grid;
    out.resolution = h;

    // Remainder of u modulo 2pi in [-pi, pi]; roots are its zeros. Within one
    // cell the underlying u moves far less than pi, so a branch jump shows up
    // as |m_a| + |m_b| near 2pi and is rejected below.
    std::vector<double> phis(grid + 1), m(grid + 1);
    for (int i = 0; i <= grid; ++i) {
        phis[i] = -pi + i * h;
        m[i] = std::remainder(u(phis[i]), two_pi);
    }

    constexpr double node_eps = 1e-11;
    std::vector<double> found;
    for (int i = 0; i <= grid; ++i)
        if (std::abs(m[i]) < node_eps) found.push_back(phis[i]);

    for (int i = 0; i < grid; ++i) {
        const double ma = m[i], mb = m[i + 1];
        if (std::abs(ma) < node_eps || std::abs(mb) < node_eps) continue;
        if ((ma < 0.0) == (mb < 0.0)) continue;
        if (std::abs(ma) + std::abs(mb) > 1.5) continue;  // branch jump, not a zero
        // Track the continuous branch through this cell: solve u = level.
        const double level = u(phis[i]) - ma;
        auto g = [&](double x) { return u(x) - level; };
        found.push_back(bisect(g, phis[i], phis[i + 1], tol));
    }

    // Canonicalize and dedupe on the circle.
    for (double& x : found) x = wrap_angle(x);
    std::sort(found.begin(), found.end());
    std::vector<double> uniq;
    for (double x : found) {
        if (!uniq.empty() && circle_dist(uniq.back(), x) < 1e-7) continue;
        uniq.push_back(x);
    }
    if (uniq.size() > 1 && circle_dist(uniq.front(), uniq.back()) < 1e-7)
        uniq.erase(uniq.begin());

    for (size_t i = 0; i + 1 < uniq.size(); ++i)
        if (uniq[i + 1] - uniq[i] < 4.0 * h) out.resolved = false;

    out.roots = std::move(uniq);
    return out;
}

}  // namespace caustix
