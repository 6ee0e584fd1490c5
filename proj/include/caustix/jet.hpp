#pragma once

#include <cmath>

namespace caustix {

// Value and first four derivatives of a scalar function at a point.
// Fields are derivative values (not Taylor coefficients); all operations are
// truncated at order 4. Composition uses Faa di Bruno's formula.
struct Jet4 {
    double d0 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    double d4 = 0.0;

    friend Jet4 operator+(const Jet4& a, const Jet4& b) {
        return {a.d0 + b.d0, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3, a.d4 + b.d4};
    }
    friend Jet4 operator-(const Jet4& a, const Jet4& b) {
        return {a.d0 - b.d0, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3, a.d4 - b.d4};
    }
    friend Jet4 operator-(const Jet4& a) { return {-a.d0, -a.d1, -a.d2, -a.d3, -a.d4}; }
    friend Jet4 operator*(double s, const Jet4& a) {
        return {s * a.d0, s * a.d1, s * a.d2, s * a.d3, s * a.d4};
    }
    friend Jet4 operator*(const Jet4& a, double s) { return s * a; }

    // Leibniz rule through order 4.
    friend Jet4 operator*(const Jet4& a, const Jet4& b) {
        return {
            a.d0 * b.d0,
            a.d1 * b.d0 + a.d0 * b.d1,
            a.d2 * b.d0 + 2.0 * a.d1 * b.d1 + a.d0 * b.d2,
            a.d3 * b.d0 + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.d0 * b.d3,
            a.d4 * b.d0 + 4.0 * a.d3 * b.d1 + 6.0 * a.d2 * b.d2 + 4.0 * a.d1 * b.d3 +
                a.d0 * b.d4,
        };
    }

    // Solve h*g = f for h order by order (g.d0 must be nonzero).
    friend Jet4 operator/(const Jet4& f, const Jet4& g) {
        Jet4 h;
        h.d0 = f.d0 / g.d0;
        h.d1 = (f.d1 - h.d0 * g.d1) / g.d0;
        h.d2 = (f.d2 - h.d0 * g.d2 - 2.0 * h.d1 * g.d1) / g.d0;
        h.d3 = (f.d3 - h.d0 * g.d3 - 3.0 * h.d1 * g.d2 - 3.0 * h.d2 * g.d1) / g.d0;
        h.d4 = (f.d4 - h.d0 * g.d4 - 4.0 * h.d1 * g.d3 - 6.0 * h.d2 * g.d2 -
                4.0 * h.d3 * g.d1) / g.d0;
        return h;
    }
};

// Jet of the identity function at x.
inline Jet4 identity_jet(double x) { return {x, 1.0, 0.0, 0.0, 0.0}; }

inline Jet4 constant_jet(double c) { return {c, 0.0, 0.0, 0.0, 0.0}; }

// Jet of f(g(x)) at x, where `outer` is the jet of f at g(x) and `inner` the
// jet of g at x. Faa di Bruno through order 4.
inline Jet4 compose(const Jet4& outer, const Jet4& inner) {
    const double g1 = inner.d1, g2 = inner.d2, g3 = inner.d3, g4 = inner.d4;
    const double f1 = outer.d1, f2 = outer.d2, f3 = outer.d3, f4 = outer.d4;
    Jet4 h;
    h.d0 = outer.d0;
    h.d1 = f1 * g1;
    h.d2 = f2 * g1 * g1 + f1 * g2;
    h.d3 = f3 * g1 * g1 * g1 + 3.0 * f2 * g1 * g2 + f1 * g3;
    h.d4 = f4 * g1 * g1 * g1 * g1 + 6.0 * f3 * g1 * g1 * g2 +
           f2 * (4.0 * g1 * g3 + 3.0 * g2 * g2) + f1 * g4;
    return h;
}

inline Jet4 sin_jet(double x) {
    const double s = std::sin(x), c = std::cos(x);
    return {s, c, -s, -c, s};
}

inline Jet4 cos_jet(double x) {
    const double s = std::sin(x), c = std::cos(x);
    return {c, -s, -c, s, c};
}

}  // namespace caustix
