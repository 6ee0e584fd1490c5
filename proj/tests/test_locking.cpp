#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "caustix/angles.hpp"
#include "caustix/locking.hpp"
#include "caustix/map.hpp"

using namespace caustix;

TEST_CASE("rotation number of a rigid rotation is exact") {
    const RotationEstimate est = rotation_number(make_params(0.0, 0.37), 0.0, 1000);
    CHECK(est.value == doctest::Approx(0.37).epsilon(1e-14));
    CHECK(est.iterations_used == 1000);
    CHECK(est.error_bound == doctest::Approx(2 * two_pi / 1000).epsilon(1e-15));
    CHECK_THROWS_AS(rotation_number(make_params(0.0, 0.37), 0.0, 0),
                    std::invalid_argument);
}

TEST_CASE("rotation number sticks at the half turn inside the tongue") {
    const RotationEstimate est =
        rotation_number(make_params(0.2, pi), 0.3, 200000);
    CHECK(std::abs(est.value - pi) <= est.error_bound);
    // Slightly detuned but still inside the locked interval.
    const RotationEstimate near =
        rotation_number(make_params(0.2, pi - 0.001), 0.3, 200000);
    CHECK(std::abs(near.value - pi) <= near.error_bound);
}

TEST_CASE("rotation number is independent of the starting point") {
    const MapParams p = make_params(0.28, 2.8);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> uphi(-pi, pi);
    const RotationEstimate ref = rotation_number(p, 0.0, 50000);
    for (int i = 0; i < 16; ++i) {
        const RotationEstimate est = rotation_number(p, uphi(rng), 50000);
        CHECK(std::abs(est.value - ref.value) <= est.error_bound + ref.error_bound);
    }
}

TEST_CASE("conjugate family: measured rotation matches the exact formula") {
    for (double omega : {0.2, 1.0, 2.0, 2.9, -2.2}) {
        const double r = 0.3;
        const RotationEstimate est =
            rotation_number(make_params(r, omega, Variant::Conjugate), 0.1, 400000);
        const double exact = conjugate_rotation_exact(r, omega);
        CHECK(std::abs(est.value - exact) <= est.error_bound + 1e-9);
    }
    // Plateau at zero for |omega| <= 2 arcsin r.
    CHECK(conjugate_rotation_exact(0.3, 0.5) == 0.0);
    CHECK(conjugate_rotation_exact(0.3, 0.61) != 0.0);
    // Half turn maps to half turn by symmetry.
    CHECK(conjugate_rotation_exact(0.3, pi) == doctest::Approx(pi).epsilon(1e-14));
    // Lift scale: adding a full turn adds a full turn.
    CHECK(conjugate_rotation_exact(0.3, 1.0 + two_pi) ==
          doctest::Approx(conjugate_rotation_exact(0.3, 1.0) + two_pi).epsilon(1e-13));
}

TEST_CASE("half-turn resonance interval at r=0.25") {
    const ResonanceInterval iv = resonance_interval(0.25, 1, 2);
    CHECK(iv.omega_lo == doctest::Approx(3.0231371097).epsilon(1e-6));
    CHECK(iv.omega_hi == doctest::Approx(3.2600481975).epsilon(1e-6));
    CHECK(iv.width == doctest::Approx(0.23691109).epsilon(1e-5));
    CHECK(iv.p == 1);
    CHECK(iv.q == 2);
    CHECK(iv.bracket_tol <= 1e-10);
}

TEST_CASE("half-turn interval widths scale like r^2") {
    const ResonanceInterval w05 = resonance_interval(0.05, 1, 2);
    const ResonanceInterval w10 = resonance_interval(0.1, 1, 2);
    CHECK(w05.width == doctest::Approx(9.9751e-3).epsilon(1e-3));
    CHECK(w10.width == doctest::Approx(3.9610e-2).epsilon(1e-3));
    CHECK(w10.width / w05.width == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("fixed-point tongue width is 4 arcsin r") {
    for (double r : {0.1, 0.3}) {
        const ResonanceInterval iv = resonance_interval(r, 0, 1);
        CHECK(iv.width == doctest::Approx(4 * std::asin(r)).epsilon(1e-6));
        CHECK(iv.omega_lo == doctest::Approx(-2 * std::asin(r)).epsilon(1e-6));
    }
}

TEST_CASE("resonance interval rejects bad input") {
    CHECK_THROWS_AS(resonance_interval(0.4, 1, 2), std::domain_error);
    CHECK_THROWS_AS(resonance_interval(0.2, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(resonance_interval(0.2, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(lock_interval(0.35, Variant::Reflect, 1, 2), std::domain_error);
}

TEST_CASE("rotation at the interval midpoint locks; outside it drifts") {
    const ResonanceInterval iv = resonance_interval(0.2, 1, 2);
    const double mid = 0.5 * (iv.omega_lo + iv.omega_hi);
    const RotationEstimate locked =
        rotation_number(make_params(0.2, mid), 0.41, 100000);
    CHECK(std::abs(locked.value - pi) <= locked.error_bound);
    const RotationEstimate above =
        rotation_number(make_params(0.2, iv.omega_hi + 0.05), 0.41, 100000);
    CHECK(above.value - pi > 1e-4);
}

TEST_CASE("negated winding mirrors the interval") {
    const ResonanceInterval pos = resonance_interval(0.2, 1, 2);
    const ResonanceInterval neg = resonance_interval(0.2, -1, 2);
    CHECK(neg.omega_lo == doctest::Approx(-pos.omega_hi).epsilon(1e-8));
    CHECK(neg.omega_hi == doctest::Approx(-pos.omega_lo).epsilon(1e-8));
}

TEST_CASE("rotation interval collapses for injective maps") {
    const RotationInterval small = rotation_interval(make_params(0.2, 2.5), 50000);
    CHECK(std::abs(small.upper.value - small.lower.value) <=
          small.lower.error_bound + small.upper.error_bound);
    const RotationInterval conj =
        rotation_interval(make_params(0.7, 2.5, Variant::Conjugate), 50000);
    CHECK(std::abs(conj.upper.value - conj.lower.value) <=
          conj.lower.error_bound + conj.upper.error_bound);
}

TEST_CASE("rotation interval of the noninjective regime brackets zero lock") {
    // omega = 0 keeps a fixed point for every r, so 0 lies in the interval.
    const RotationInterval iv = rotation_interval(make_params(0.34, 0.0), 20000);
    CHECK(iv.lower.value <= iv.lower.error_bound);
    CHECK(iv.upper.value >= -iv.upper.error_bound);
    // Just past the critical offset the interval is still narrow.
    const RotationInterval just =
        rotation_interval(make_params(1.0 / 3.0 + 1e-4, 2.9), 20000);
    CHECK(just.upper.value - just.lower.value <
          1e-3 + just.lower.error_bound + just.upper.error_bound);
}

TEST_CASE("staircase is nondecreasing and diagonal at r=0") {
    const auto flat = staircase(0.0, 64, 1000);
    for (const auto& row : flat)
        CHECK(row.rotation == doctest::Approx(row.omega).epsilon(1e-12));
    const auto rows = staircase(0.25, 128, 20000, Variant::Reflect, 0.5);
    REQUIRE(rows.size() == 128);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].omega > rows[i - 1].omega);
        CHECK(rows[i].rotation >=
              rows[i - 1].rotation - rows[i].error_bound - rows[i - 1].error_bound);
    }
}

TEST_CASE("staircase is deterministic across thread counts") {
    const auto one = staircase(0.21, 96, 5000, Variant::Reflect, 0.4, 1);
    const auto four = staircase(0.21, 96, 5000, Variant::Reflect, 0.4, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].omega == four[i].omega);
        CHECK(one[i].rotation == four[i].rotation);  // bitwise
    }
}

TEST_CASE("tongue raster matches the pointwise intervals") {
    const auto rows = tongue_raster(1, 2, 0.05, 0.2, 4, 1e-10, 3);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].r > rows[i - 1].r);
    const ResonanceInterval direct = resonance_interval(rows[2].r, 1, 2, 1e-10);
    CHECK(rows[2].omega_lo == doctest::Approx(direct.omega_lo).epsilon(1e-12));
    CHECK(rows[2].omega_hi == doctest::Approx(direct.omega_hi).epsilon(1e-12));
}

TEST_CASE("perturbative width against the measured interval") {
    for (double r : {0.05, 0.1}) {
        const SeriesWidth sw = series_width_pi(r);
        const ResonanceInterval iv = resonance_interval(r, 1, 2);
        CHECK(sw.offset_lo < 0.0);
        CHECK(sw.offset_hi > 0.0);
        const double rel = std::abs(sw.width - iv.width) / iv.width;
        CHECK(rel <= (r <= 0.05 ? 0.02 : 0.05));
    }
    const SeriesWidth conj = series_width_pi(0.1, 4096, Variant::Conjugate);
    CHECK(conj.width == 0.0);
}

TEST_CASE("direct plateau measurement agrees with the interval solver") {
    const double r = 0.15;
    const ResonanceInterval solver = resonance_interval(r, 1, 2, 1e-10);
    const ResonanceInterval direct = plateau_width(r, Variant::Reflect, 1, 2, 1e-8);
    CHECK(std::abs(direct.omega_lo - solver.omega_lo) <= 2e-6);
    CHECK(std::abs(direct.omega_hi - solver.omega_hi) <= 2e-6);
    CHECK(std::abs(direct.width - solver.width) <= 2e-6);
}

TEST_CASE("conjugate family does not lock away from trivial resonances") {
    CHECK(conjugate_nonlocking_check(0.3, 1, 2));
    CHECK(conjugate_nonlocking_check(0.0, 1, 2));
    // The fixed-point tongue is genuine even for the conjugate family.
    CHECK(!conjugate_nonlocking_check(0.3, 0, 1));
}

TEST_CASE("width exponent fits") {
    const WidthFit fit = width_exponent_fit(1, 2, 0.03, 0.12, 5, 1e-10);
    CHECK(fit.points_used >= 4);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.1));
}
