#include "caustix/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "caustix/angles.hpp"
#include "caustix/roots.hpp"

namespace caustix {

double phi_c(double r) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("phi_c: r must lie in (0, 1)");
    return std::acos((1.0 - std::sqrt(1.0 + 8.0 * r * r)) / (4.0 * r));
}

namespace {

Stability classify(double multiplier) {
    const double a = std::abs(multiplier);
    if (a < 1.0 - 1e-9) return Stability::Attracting;
    if (a > 1.0 + 1e-9) return Stability::Repelling;
    return Stability::Neutral;
}

MapParams base_map(double r) { return make_params(r, pi, Variant::Reflect); }

}  // namespace

std::vector<PeriodicPoint> period2_structure(double r) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("period2_structure: r must lie in (0, 1)");
    const MapParams p = base_map(r);
    const double pc = phi_c(r);
    const double mult_axis = iterate_jet(p, 0.0, 2).d1;
    const double mult_pair = iterate_jet(p, pc, 2).d1;
    std::vector<PeriodicPoint> out{
        {-pc, 2, mult_pair, classify(mult_pair)},
        {0.0, 2, mult_axis, classify(mult_axis)},
        {pc, 2, mult_pair, classify(mult_pair)},
        {pi, 2, mult_axis, classify(mult_axis)},
    };
    return out;
}

SymmetricSolutions find_symmetric_solutions(const MapParams& p, int n,
                                            SymRelation relation, int grid) {
    if (n < 1) throw std::invalid_argument("find_symmetric_solutions: n must be >= 1");
    if (grid < 64) throw std::invalid_argument("find_symmetric_solutions: grid too small");
    if (p.variant != Variant::Reflect || circle_dist(canonical_omega(p), pi) > 1e-12)
        throw std::invalid_argument(
            "find_symmetric_solutions: requires the Reflect map at omega = pi");

    // Solve iterate(phi) - (coef*phi + shift) = 0 mod 2pi.
    double coef = 1.0, shift = 0.0;
    switch (relation) {
        case SymRelation::FixedPoint: coef = 1.0; shift = 0.0; break;
        case SymRelation::MinusPhi: coef = -1.0; shift = 0.0; break;
        case SymRelation::PlusPi: coef = 1.0; shift = pi; break;
        case SymRelation::PiMinusPhi: coef = -1.0; shift = pi; break;
    }
    auto u = [&](double phi) { return iterate_lift(p, phi, n) - coef * phi - shift; };
    RootScan scan = scan_circle_roots(u, grid);
    if (!scan.resolved)
        throw std::runtime_error(
            "find_symmetric_solutions: roots not separated at this grid resolution; "
            "increase the grid");
    return {std::move(scan.roots), scan.grid, scan.resolution};
}

DisplacementCheck displacement_bound_check(double r, int grid) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("displacement_bound_check: r must lie in [0, 1)");
    const MapParams p = base_map(r);
    double min_disp = two_pi;
    for (int i = 0; i < grid; ++i) {
        const double phi = -pi + (i + 1) * two_pi / grid;
        const double d = circle_dist(map_lift(p, phi), phi);
        min_disp = std::min(min_disp, d);
    }
    const double bound = pi - 2.0 * std::abs(std::log(1.0 - r));
    const bool holds = bound <= 0.0 || min_disp >= bound - 1e-12;
    return {min_disp, bound, holds};
}

std::vector<double> asymptotic_orbit(const MapParams& p, double phi0, long n1, long n2) {
    if (!(n1 >= 0 && n1 < n2))
        throw std::invalid_argument("asymptotic_orbit: need 0 <= n1 < n2");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n2 - n1 - 1));
    double x = wrap_angle(phi0);
    for (long n = 1; n < n2; ++n) {
        x = wrap_angle(map_lift(p, x));
        if (n > n1) out.push_back(x);
    }
    return out;
}

RasterGrid bifurcation_raster(double r_min, double r_max, int r_steps,
                              BifurcationSeed seed, double custom_phi, long n1, long n2,
                              int threads) {
    if (!(r_min <= r_max) || r_steps < 1)
        throw std::invalid_argument("bifurcation_raster: bad parameter range");
    if (!(n1 >= 0 && n1 < n2))
        throw std::invalid_argument("bifurcation_raster: need 0 <= n1 < n2");

    RasterGrid grid;
    grid.xs.resize(r_steps);
    grid.columns.resize(r_steps);
    for (int c = 0; c < r_steps; ++c)
        grid.xs[c] = r_steps == 1 ? r_min
                                  : r_min + (r_max - r_min) * c / (r_steps - 1);

    // Resolve seeds before any worker thread starts, so threads cannot throw.
    std::vector<double> seeds(r_steps, custom_phi);
    if (seed != BifurcationSeed::Custom) {
        for (int c = 0; c < r_steps; ++c) {
            const CriticalPoints cp = critical_points(grid.xs[c]);
            if (cp.phis.empty())
                throw std::invalid_argument(
                    "bifurcation_raster: critical seeds exist only for r >= 1/3 "
                    "(offending r=" + std::to_string(grid.xs[c]) + ")");
            seeds[c] = seed == BifurcationSeed::CriticalPlus ? cp.phis.back()
                                                             : cp.phis.front();
        }
    }

    auto column = [&](int c) {
        grid.columns[c] = asymptotic_orbit(base_map(grid.xs[c]), seeds[c], n1, n2);
    };

    const int nthreads = std::max(1, std::min<int>(threads, r_steps));
    if (nthreads == 1) {
        for (int c = 0; c < r_steps; ++c) column(c);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t] {
                for (int c = t; c < r_steps; c += nthreads) column(c);
            });
        for (auto& th : pool) th.join();
    }
    return grid;
}

std::optional<int> attracting_period_at(double r, double seed_phi, int max_period) {
    if (max_period < 1)
        throw std::invalid_argument("attracting_period_at: max_period must be >= 1");
    const MapParams p = base_map(r);
    constexpr long transient = 30000;
    const int window = 4 * max_period + 64;

    double x = wrap_angle(seed_phi);
    for (long i = 0; i < transient; ++i) x = wrap_angle(map_lift(p, x));
    std::vector<double> w(window);
    for (int i = 0; i < window; ++i) {
        x = wrap_angle(map_lift(p, x));
        w[i] = x;
    }
    constexpr double tol = 1e-7;
    for (int q = 1; q <= max_period; ++q) {
        bool periodic = true;
        for (int i = 0; i + q < window; ++i)
            if (circle_dist(w[i], w[i + q]) > tol) {
                periodic = false;
                break;
            }
        if (periodic) return q;
    }
    return std::nullopt;
}

double period_doubling_onset(double r_lo, double r_hi) {
    auto shifted_multiplier = [](double r) {
        return iterate_jet(base_map(r), 0.0, 2).d1 + 1.0;
    };
    return bisect(shifted_multiplier, r_lo, r_hi, 1e-12);
}

}  // namespace caustix
