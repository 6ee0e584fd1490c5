#include "caustix/locking.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "caustix/angles.hpp"
#include "caustix/roots.hpp"

namespace caustix {

namespace {

// Signed lift displacement of q steps started at x, using reduced phases so
// that arbitrarily long orbits never lose precision to a growing lift.
double block_displacement(const MapParams& mp, double& phi, int q) {
    double total = 0.0;
    for (int i = 0; i < q; ++i) {
        const double next = map_lift(mp, phi);
        total += next - phi;
        phi = wrap_angle(next);
    }
    return total;
}

struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

void run_strided(int jobs, int threads, const std::function<void(int)>& body) {
    threads = std::clamp(threads, 1, 64);
    if (threads == 1 || jobs <= 1) {
        for (int j = 0; j < jobs; ++j) body(j);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int j = t; j < jobs; j += threads) body(j);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

RotationEstimate rotation_number(const MapParams& p, double phi0, long iterations) {
    if (iterations < 1)
        throw std::invalid_argument("rotation_number: iterations must be >= 1");
    double phi = wrap_angle(phi0);
    Kahan acc;
    for (long i = 0; i < iterations; ++i) {
        const double next = map_lift(p, phi);
        acc.add(next - phi);
        phi = wrap_angle(next);
    }
    return {acc.sum / static_cast<double>(iterations),
            2.0 * two_pi / static_cast<double>(iterations), iterations};
}

RotationInterval rotation_interval(const MapParams& p, long iterations, double phi0) {
    if (iterations < 1)
        throw std::invalid_argument("rotation_interval: iterations must be >= 1");
    const CriticalPoints cp =
        p.variant == Variant::Reflect ? critical_points(p.r) : CriticalPoints{};
    if (cp.phis.size() < 2) {
        const RotationEstimate e = rotation_number(p, phi0, iterations);
        return {e, e};
    }
    const double pcr = cp.phis.back();
    const double top = map_lift(p, -pcr);   // local max of the lift
    const double bottom = map_lift(p, pcr); // local min of the lift
    auto run = [&](bool upper) {
        double phi = wrap_angle(phi0);
        Kahan acc;
        for (long i = 0; i < iterations; ++i) {
            const double base = map_lift(p, phi);
            double next;
            if (upper) {
                const double cap = top + two_pi * std::floor((phi + pcr) / two_pi);
                next = std::max(base, cap);
            } else {
                const double cap = bottom + two_pi * std::ceil((phi - pcr) / two_pi);
                next = std::min(base, cap);
            }
            acc.add(next - phi);
            phi = wrap_angle(next);
        }
        return RotationEstimate{acc.sum / static_cast<double>(iterations),
                                2.0 * two_pi / static_cast<double>(iterations),
                                iterations};
    };
    return {run(false), run(true)};
}

namespace {

constexpr int kExtremumGrid = 4096;
constexpr double kLockEps = 1e-12;

// Extremum over the circle of g(x) = (q-block displacement at x) - 2 pi p.
double extremum_defect(const MapParams& mp, int p, int q, bool want_max) {
    auto g = [&](double x) {
        double phi = x;
        return block_displacement(mp, phi, q) - two_pi * p;
    };
    const double h = two_pi / kExtremumGrid;
    double best = g(-pi);
    int best_i = 0;
    for (int i = 1; i < kExtremumGrid; ++i) {
        const double v = g(-pi + i * h);
        if (want_max ? v > best : v < best) {
            best = v;
            best_i = i;
        }
    }
    const double x0 = -pi + best_i * h;
    auto objective = [&](double x) { return want_max ? -g(x) : g(x); };
    const double xs = refine_minimum(objective, x0 - h, x0 + h, 1e-10);
    const double vs = g(xs);
    return want_max ? std::max(best, vs) : std::min(best, vs);
}

}  // namespace

ResonanceInterval lock_interval(double r, Variant variant, int p, int q, double tol) {
    if (q < 1) throw std::invalid_argument("lock_interval: q must be >= 1");
    if (!(tol > 0.0 && tol < 1.0))
        throw std::invalid_argument("lock_interval: tol must lie in (0, 1)");
    if (variant == Variant::Reflect && r > 1.0 / 3.0 + 1e-12)
        throw std::domain_error(
            "lock_interval: the Reflect family is monotone in omega only for r <= 1/3");

    auto max_defect = [&](double om) {
        return extremum_defect(make_params(r, om, variant), p, q, true);
    };
    auto min_defect = [&](double om) {
        return extremum_defect(make_params(r, om, variant), p, q, false);
    };
    auto locked = [&](double om) {
        return min_defect(om) <= kLockEps && max_defect(om) >= -kLockEps;
    };

    double center = two_pi * p / q;
    if (!locked(center)) {
        bool found = false;
        for (int j = 1; j <= 256 && !found; ++j) {
            for (double s : {1.0, -1.0}) {
                const double om = center + s * j / 256.0;
                if (locked(om)) {
                    center = om;
                    found = true;
                    break;
                }
            }
        }
        if (!found)
            throw std::runtime_error(
                "lock_interval: no locked parameter found near the resonance center");
    }

    // Lower edge: zero of the (increasing) maximum defect.
    double hi = center, d = std::max(tol, 1e-4);
    while (max_defect(center - d) >= 0.0) {
        hi = center - d;
        d *= 2.0;
        if (d > 16.0)
            throw std::runtime_error("lock_interval: lower edge escaped the search range");
    }
    double lo = center - d;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (max_defect(mid) < 0.0 ? lo : hi) = mid;
    }
    const double omega_lo = 0.5 * (lo + hi);

    // Upper edge: zero of the (increasing) minimum defect.
    lo = center;
    d = std::max(tol, 1e-4);
    while (min_defect(center + d) <= 0.0) {
        lo = center + d;
        d *= 2.0;
        if (d > 16.0)
            throw std::runtime_error("lock_interval: upper edge escaped the search range");
    }
    hi = center + d;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (min_defect(mid) > 0.0 ? hi : lo) = mid;
    }
    const double omega_hi = 0.5 * (lo + hi);

    return {p, q, omega_lo, omega_hi, std::max(0.0, omega_hi - omega_lo), tol};
}

ResonanceInterval resonance_interval(double r, int p, int q, double tol) {
    if (q < 1) throw std::invalid_argument("resonance_interval: q must be >= 1");
    if (std::gcd(std::abs(p), q) != 1)
        throw std::invalid_argument("resonance_interval: p/q must be in lowest terms");
    if (r > 1.0 / 3.0 + 1e-12)
        throw std::domain_error(
            "resonance_interval: requires r <= 1/3 (injective Reflect family)");
    return lock_interval(r, Variant::Reflect, p, q, tol);
}

std::vector<TongueRow> tongue_raster(int p, int q, double r_min, double r_max,
                                     int r_steps, double tol, int threads) {
    if (r_steps < 1) throw std::invalid_argument("tongue_raster: r_steps must be >= 1");
    if (!(r_min >= 0.0 && r_min <= r_max && r_max <= 1.0 / 3.0 + 1e-12))
        throw std::invalid_argument("tongue_raster: need 0 <= r_min <= r_max <= 1/3");
    std::vector<TongueRow> rows(r_steps);
    run_strided(r_steps, threads, [&](int j) {
        const double r = r_steps == 1
                             ? r_min
                             : r_min + j * (r_max - r_min) / (r_steps - 1);
        const ResonanceInterval iv = resonance_interval(r, p, q, tol);
        rows[j] = {r, iv.omega_lo, iv.omega_hi, iv.width};
    });
    return rows;
}

std::vector<StaircaseRow> staircase(double r, int omega_samples, long iterations,
                                    Variant variant, double phi0, int threads) {
    if (omega_samples < 2)
        throw std::invalid_argument("staircase: omega_samples must be >= 2");
    if (iterations < 1) throw std::invalid_argument("staircase: iterations must be >= 1");
    (void)make_params(r, 0.0, variant);  // validate r before spawning workers
    std::vector<StaircaseRow> rows(omega_samples);
    run_strided(omega_samples, threads, [&](int j) {
        const double omega = -pi + (j + 1) * two_pi / omega_samples;
        const RotationEstimate est =
            rotation_number(make_params(r, omega, variant), phi0, iterations);
        rows[j] = {omega, est.value, est.error_bound};
    });
    return rows;
}

SeriesWidth series_width_pi(double r, int x_grid, Variant variant) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("series_width_pi: r must lie in [0, 1)");
    if (x_grid < 64) throw std::invalid_argument("series_width_pi: x_grid too small");
    if (variant == Variant::Conjugate) return {0.0, 0.0, 0.0};

    auto a = [r](double x) {
        return 2.0 * r * r * std::sin(2.0 * x) +
               r * r * r * (2.0 * std::sin(x) - 2.0 * std::sin(3.0 * x));
    };
    const double h = two_pi / x_grid;
    double lo_v = a(-pi), hi_v = lo_v;
    int lo_i = 0, hi_i = 0;
    for (int i = 1; i < x_grid; ++i) {
        const double v = a(-pi + i * h);
        if (v < lo_v) { lo_v = v; lo_i = i; }
        if (v > hi_v) { hi_v = v; hi_i = i; }
    }
    const double x_lo = -pi + lo_i * h;
    const double x_hi = -pi + hi_i * h;
    lo_v = std::min(lo_v, a(refine_minimum(a, x_lo - h, x_lo + h, 1e-12)));
    auto neg = [&](double x) { return -a(x); };
    hi_v = std::max(hi_v, a(refine_minimum(neg, x_hi - h, x_hi + h, 1e-12)));
    return {lo_v, hi_v, hi_v - lo_v};
}

WidthFit width_exponent_fit(int p, int q, double r_lo, double r_hi, int points,
                            double tol) {
    if (points < 2) throw std::invalid_argument("width_exponent_fit: points must be >= 2");
    if (!(r_lo > 0.0 && r_lo < r_hi && r_hi <= 1.0 / 3.0 + 1e-12))
        throw std::invalid_argument("width_exponent_fit: need 0 < r_lo < r_hi <= 1/3");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int used = 0;
    for (int j = 0; j < points; ++j) {
        const double r = r_lo * std::pow(r_hi / r_lo, double(j) / (points - 1));
        const double w = resonance_interval(r, p, q, tol).width;
        if (w <= 10.0 * tol) continue;  // below edge resolution
        const double lx = std::log(r), ly = std::log(w);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++used;
    }
    if (used < 2)
        throw std::runtime_error("width_exponent_fit: too few resolvable widths");
    return {(used * sxy - sx * sy) / (used * sxx - sx * sx), used};
}

bool conjugate_nonlocking_check(double r, int p, int q, double resolution) {
    if (!(resolution > 0.0))
        throw std::invalid_argument("conjugate_nonlocking_check: resolution must be > 0");
    const double tol = std::min(resolution / 100.0, 1e-9);
    return lock_interval(r, Variant::Conjugate, p, q, tol).width < resolution;
}

namespace {

bool orbit_locks(const MapParams& mp, int p, int q) {
    double phi = 0.37;  // generic start, off the symmetry axes
    double drift = 0.0;
    double defect = 0.0;
    constexpr long budget = 300000;
    for (long k = 0; k < budget; ++k) {
        defect = block_displacement(mp, phi, q) - two_pi * p;
        if (std::abs(defect) < 1e-11) return true;
        drift += defect;
        if (std::abs(drift) > 4.0 * pi) return false;
    }
    // Budget exhausted: near-edge orbits converge too slowly to reach 1e-11,
    // but a persistently small defect still identifies the plateau. The
    // threshold must sit well below the smallest detectable drift rate
    // (4 pi / budget ~ 4e-5), or rigid families with no plateau at all would
    // show a spurious band of this width around the resonance.
    return std::abs(defect) < 1e-8;
}

}  // namespace

ResonanceInterval plateau_width(double r, Variant variant, int p, int q, double tol) {
    if (q < 1) throw std::invalid_argument("plateau_width: q must be >= 1");
    if (std::gcd(std::abs(p), q) != 1)
        throw std::invalid_argument("plateau_width: p/q must be in lowest terms");
    if (!(tol > 0.0 && tol < 1.0))
        throw std::invalid_argument("plateau_width: tol must lie in (0, 1)");

    auto locked = [&](double om) {
        return orbit_locks(make_params(r, om, variant), p, q);
    };

    double center = two_pi * p / q;
    if (!locked(center)) {
        bool found = false;
        for (int j = 1; j <= 256 && !found; ++j) {
            for (double s : {1.0, -1.0}) {
                const double om = center + s * j / 256.0;
                if (locked(om)) {
                    center = om;
                    found = true;
                    break;
                }
            }
        }
        if (!found)
            throw std::runtime_error("plateau_width: no locked parameter near the center");
    }

    double in = center, d = std::max(tol, 1e-3);
    while (locked(center - d)) {
        in = center - d;
        d *= 2.0;
        if (d > 16.0)
            throw std::runtime_error("plateau_width: lower edge escaped the search range");
    }
    double out = center - d;
    while (in - out > tol) {
        const double mid = 0.5 * (out + in);
        (locked(mid) ? in : out) = mid;
    }
    const double omega_lo = 0.5 * (out + in);

    in = center;
    d = std::max(tol, 1e-3);
    while (locked(center + d)) {
        in = center + d;
        d *= 2.0;
        if (d > 16.0)
            throw std::runtime_error("plateau_width: upper edge escaped the search range");
    }
    out = center + d;
    while (out - in > tol) {
        const double mid = 0.5 * (in + out);
        (locked(mid) ? in : out) = mid;
    }
    const double omega_hi = 0.5 * (in + out);

    return {p, q, omega_lo, omega_hi, std::max(0.0, omega_hi - omega_lo), tol};
}

double conjugate_rotation_exact(double r, double omega) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("conjugate_rotation_exact: r must lie in [0, 1)");
    const double delta = std::remainder(omega, two_pi);
    const double k = std::round((omega - delta) / two_pi);
    if (std::abs(delta) <= 2.0 * std::asin(r)) return two_pi * k;
    const double c = std::cos(0.5 * delta) / std::sqrt(1.0 - r * r);
    const double w = 2.0 * std::acos(std::clamp(c, -1.0, 1.0));
    return two_pi * k + std::copysign(w, delta);
}

}  // namespace caustix
