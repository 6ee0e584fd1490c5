#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "caustix/angles.hpp"
#include "caustix/caustic.hpp"
#include "caustix/map.hpp"
#include "caustix/orbit.hpp"

using namespace caustix;

TEST_CASE("chord lines pass through both boundary points") {
    const MapParams p = make_params(0.3, pi);
    for (double phi : {-2.0, -0.7, 0.1, 1.4, 2.9}) {
        const ChordLine l = chord_line(p, 1, phi);
        const double f = iterate_lift(p, phi, 1);
        CHECK(std::abs(l.a * std::cos(phi) + l.b * std::sin(phi) - l.c) <= 1e-14);
        CHECK(std::abs(l.a * std::cos(f) + l.b * std::sin(f) - l.c) <= 1e-14);
        CHECK(!l.degenerate);
    }
}

TEST_CASE("centred source: double bounce folds back onto the circle") {
    const MapParams p = make_params(0.0, pi);
    const auto curve = caustic_curve(p, 2, 64);
    REQUIRE(curve.size() == 64);
    for (const auto& s : curve) {
        CHECK(!s.at_infinity);
        CHECK(std::hypot(s.pos.x, s.pos.y) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("envelope tangent agrees between the explicit form and the jets") {
    const MapParams p = make_params(0.27, pi);
    for (double phi : {-1.9, -0.4, 0.33, 1.2, 2.8}) {
        const CausticSample s = caustic_point(p, 1, phi);
        const CausticJets j = caustic_jets(p, 1, phi);
        REQUIRE(!s.at_infinity);
        CHECK(s.pos.x == doctest::Approx(j.x.d0).epsilon(1e-13));
        CHECK(s.pos.y == doctest::Approx(j.y.d0).epsilon(1e-13));
        CHECK(s.tangent.x == doctest::Approx(j.x.d1).epsilon(1e-11));
        CHECK(s.tangent.y == doctest::Approx(j.y.d1).epsilon(1e-11));
    }
}

TEST_CASE("cusp discriminant at cos(phi) = r") {
    for (double r : {0.3, 0.4, 0.5, 0.6}) {
        const MapParams p = make_params(r, pi);
        const double phi = std::acos(r);
        const CausticJets j = caustic_jets(p, 1, phi);
        REQUIRE(!j.at_infinity);
        // Stationary point of the envelope.
        const double scale = 1 + std::abs(j.x.d2) + std::abs(j.y.d2);
        CHECK(std::abs(j.x.d1) <= 1e-12 * scale);
        CHECK(std::abs(j.y.d1) <= 1e-12 * scale);
        const double disc = j.x.d2 * j.y.d3 - j.x.d3 * j.y.d2;
        const double want = 72.0 * std::pow(r, 4) / (1 - r * r);
        CHECK(disc == doctest::Approx(want).epsilon(1e-10));
    }
    const MapParams half = make_params(0.5, pi);
    const CausticJets j = caustic_jets(half, 1, std::acos(0.5));
    CHECK(j.x.d2 * j.y.d3 - j.x.d3 * j.y.d2 == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("single bounce: exactly four semicubical cusps") {
    for (double r : {0.1, 0.3, 0.5, 0.7}) {
        const MapParams p = make_params(r, pi);
        const auto recs = find_cusps(p, 1);
        REQUIRE(recs.size() == 4);
        const double pc = std::acos(r);
        // The record for the cusp at pi may canonicalize to either seam side,
        // so match targets to records on the circle.
        for (double want : {-pc, 0.0, pc, pi}) {
            double best = 10.0;
            for (const auto& rec : recs) best = std::min(best, circle_dist(rec.phi, want));
            CHECK(best <= 2e-6);
        }
        for (const auto& rec : recs) CHECK(rec.kind == CuspKind::Semicubical);
        // Sorted output.
        for (int k = 1; k < 4; ++k) CHECK(recs[k - 1].phi < recs[k].phi);
    }
    // At r = 1/2 the axis cusp escapes to infinity but is still reported.
    const auto at_half = find_cusps(make_params(0.5, pi), 1);
    REQUIRE(at_half.size() == 4);
    bool has_infinite = false;
    for (const auto& rec : at_half)
        if (std::isinf(rec.discriminant)) {
            has_infinite = true;
            CHECK(circle_dist(rec.phi, 0.0) <= 1e-9);
        }
    CHECK(has_infinite);
}

TEST_CASE("triple bounce keeps the axis cusps") {
    const auto recs = find_cusps(make_params(0.2, pi), 3);
    REQUIRE(recs.size() == 4);
    bool has0 = false, haspi = false;
    for (const auto& rec : recs) {
        if (circle_dist(rec.phi, 0.0) <= 1e-9) has0 = true;
        if (circle_dist(rec.phi, pi) <= 1e-9) haspi = true;
    }
    CHECK(has0);
    CHECK(haspi);
}

TEST_CASE("even iterates have no cusps away from the degenerate offset") {
    CHECK(find_cusps(make_params(0.2, pi), 2).empty());
    CHECK(find_cusps(make_params(0.2, pi), 4).empty());
}

TEST_CASE("degenerate offset: flat circle contact replaces the cusp pair") {
    const auto recs = find_cusps(make_params(1.0 / 3.0, pi), 2);
    bool has0 = false, haspi = false;
    for (const auto& rec : recs) {
        if (circle_dist(rec.phi, 0.0) <= 1e-6) {
            has0 = true;
            CHECK(rec.kind == CuspKind::CircleTangency);
        }
        if (circle_dist(rec.phi, pi) <= 1e-6) {
            haspi = true;
            CHECK(rec.kind == CuspKind::CircleTangency);
        }
    }
    CHECK(has0);
    CHECK(haspi);
}

TEST_CASE("closed-form cusp criterion at symmetric points") {
    // Regular point of a regular caustic: no cusp.
    CHECK(!cusp_criterion_symmetric(make_params(0.2, pi), 2, 0.0,
                                    SymRelation::FixedPoint)
               .has_value());
    // Degenerate offset: the criterion reports the degeneracy.
    const auto deg = cusp_criterion_symmetric(make_params(1.0 / 3.0, pi), 2, 0.0,
                                              SymRelation::FixedPoint);
    REQUIRE(deg.has_value());
    CHECK(deg->kind == CuspKind::Degenerate);
    // Single bounce at the axis: a genuine semicubical cusp.
    const auto cusp = cusp_criterion_symmetric(make_params(0.2, pi), 1, 0.0,
                                               SymRelation::PlusPi);
    REQUIRE(cusp.has_value());
    CHECK(cusp->kind == CuspKind::Semicubical);
    // The relation must actually hold at phi.
    CHECK_THROWS_AS(cusp_criterion_symmetric(make_params(0.2, pi), 1, 0.3,
                                             SymRelation::MinusPhi),
                    std::invalid_argument);
}

TEST_CASE("strength sequence: seeds and recursion against direct jets") {
    for (double r : {0.1, 0.25}) {
        const auto rows = a_sequence(r, 3);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0].at_zero ==
              doctest::Approx(24 * r * r / ((1 - r) * (1 - r))).epsilon(1e-14));
        CHECK(rows[0].at_pi ==
              doctest::Approx(24 * r * r / ((1 + r) * (1 + r))).epsilon(1e-14));
        const MapParams p = make_params(r, pi);
        for (std::size_t m = 0; m < rows.size(); ++m) {
            const int n = 2 * static_cast<int>(m) + 1;
            for (double phi_a : {0.0, pi}) {
                const Jet4 j = iterate_jet(p, phi_a, n);
                const double direct = -j.d1 + j.d1 * j.d1 * j.d1 + 2 * j.d3;
                const double row = phi_a == 0.0 ? rows[m].at_zero : rows[m].at_pi;
                CHECK(row == doctest::Approx(direct).epsilon(1e-10));
                CHECK(row > 0.0);
            }
        }
    }
}

TEST_CASE("even-iterate tangency report") {
    const TangencyReport rep = tangency_points_even(0.25, 2);
    REQUIRE(rep.phis.size() == 4);
    CHECK(rep.max_unit_defect <= 1e-10);
    CHECK(rep.max_angle_defect <= 1e-10);
    CHECK(rep.phis[1] == 0.0);
    CHECK(rep.phis[3] == doctest::Approx(pi).epsilon(1e-15));
    CHECK_THROWS_AS(tangency_points_even(0.25, 0), std::invalid_argument);
}

TEST_CASE("local model of the degenerate two-bounce caustic") {
    const LocalModel m0 = taylor_local_model(1.0 / 3.0, 2, 0.0);
    CHECK(m0.well_conditioned);
    // Leading quartic/cubic coefficients of the germ at the axis.
    CHECK(m0.cx[1] == doctest::Approx(-9.0 / 8.0).epsilon(0.01));
    CHECK(m0.cy[1] == doctest::Approx(3.0).epsilon(0.01));
    // Quadratic and linear terms collapse with the degeneracy.
    CHECK(std::abs(m0.cx[0]) <= 1e-4);
    CHECK(std::abs(m0.cy[0]) <= 1e-4);

    const LocalModel mpi = taylor_local_model(1.0 / 3.0, 2, pi);
    CHECK(mpi.cx[1] == doctest::Approx(81.0 / 32.0).epsilon(0.01));
    CHECK(mpi.cy[1] == doctest::Approx(-27.0 / 4.0).epsilon(0.01));

    CHECK_THROWS_AS(taylor_local_model(0.2, 2, 1.0), std::invalid_argument);
}

TEST_CASE("local model of a nondegenerate even caustic matches the jets") {
    const double r = 0.2;
    const LocalModel m = taylor_local_model(r, 2, 0.0);
    const CausticJets j = caustic_jets(make_params(r, pi), 2, 0.0);
    CHECK(m.cx[0] == doctest::Approx(0.5 * j.x.d2).epsilon(1e-3));
    CHECK(m.cy[0] == doctest::Approx(j.y.d1).epsilon(1e-3));
}

TEST_CASE("vanishing orders at the degenerate offset") {
    const VanishingOrder v1 = vanishing_order_even(1.0 / 3.0, 1, 0.0);
    CHECK(v1.order == 3);
    CHECK(v1.slope == doctest::Approx(3.0).epsilon(0.04));
    CHECK(v1.reliable);

    const VanishingOrder v2 = vanishing_order_even(1.0 / 3.0, 2, pi);
    CHECK(v2.order == 9);
    CHECK(v2.slope == doctest::Approx(9.0).epsilon(0.04));
    CHECK(v2.reliable);
}

TEST_CASE("limiting quadrilateral vertices") {
    const double r = 0.3;
    const auto quad = quadrilateral_limit(r);
    const double pc = phi_c(r);
    CHECK(quad[0].x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(quad[0].y == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(quad[1].x == doctest::Approx(std::cos(pc)).epsilon(1e-13));
    CHECK(quad[1].y == doctest::Approx(std::sin(pc)).epsilon(1e-13));
    CHECK(quad[2].x == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(quad[3].y == doctest::Approx(-std::sin(pc)).epsilon(1e-13));
}

TEST_CASE("odd-iterate caustics collapse onto the quadrilateral") {
    const auto rows = caustic_convergence(0.3, 6);
    REQUIRE(rows.size() == 7);
    for (const auto& row : rows)
        CHECK(row.d_jet == doctest::Approx(row.d_closed).epsilon(1e-11));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].x_axis_err < rows[i - 1].x_axis_err);
        CHECK(rows[i].y_pair_err < rows[i - 1].y_pair_err);
    }
    CHECK(rows.back().x_axis_err < 1e-4);
    CHECK_THROWS_AS(caustic_convergence(0.5, 3), std::invalid_argument);
}

TEST_CASE("sectional data: half-displacement is a sum of incident angles") {
    const double r = 0.15;
    const SectionalCurve sc = sectional_curve(r, 1, 4096);
    const MapParams p = make_params(r, pi);
    for (int i : {100, 1024, 2048, 3000}) {
        const double phi = sc.phis[i];
        const double a = incident_angle(r, phi) +
                         incident_angle(r, wrap_angle(map_lift(p, phi))) +
                         incident_angle(r, wrap_angle(iterate_lift(p, phi, 2)));
        CHECK(sc.alpha[i] == doctest::Approx(a).epsilon(1e-10));
    }
    // The integrated section is even in phi.
    const int mid = static_cast<int>(sc.s.size() / 2);
    for (int k : {1, 57, 500, 1500}) {
        CHECK(sc.s[mid + k] == doctest::Approx(sc.s[mid - k]).epsilon(1e-12));
    }
    CHECK(sc.s[mid] == 0.0);
}

TEST_CASE("sectional inflection counts") {
    CHECK(sectional_curve(0.05, 0, 4096).sign_changes == 1);
    CHECK(sectional_curve(0.05, 1, 4096).sign_changes == 1);
    CHECK(sectional_curve(0.05, 2, 4096).sign_changes == 1);
    const int at_tenth = sectional_curve(0.1, 2, 4096).sign_changes;
    CHECK(at_tenth == 2);
    CHECK(sectional_curve(0.1, 2, 8192).sign_changes == at_tenth);
}
