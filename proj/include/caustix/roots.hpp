#pragma once

#include <functional>
#include <vector>

namespace caustix {

struct RootScan {
    std::vector<double> roots;  // ascending, canonical angles in (-pi, pi]
    int grid = 0;               // scan resolution used
    double resolution = 0.0;    // grid spacing
    bool resolved = true;       // false when distinct roots sit closer than ~4 cells
};

// All phi in (-pi, pi] where the continuous function u equals a multiple of
// 2pi. u is sampled on a uniform grid; roots are bracketed on sign changes of
// the 2pi-remainder of u (cells that jump branch are rejected by a magnitude
// guard), refined by bisection to `tol`, and deduped on the circle.
RootScan scan_circle_roots(const std::function<double(double)>& u, int grid,
                           double tol = 1e-12);

// Bisection for f with f(a), f(b) of opposite sign (or zero at an endpoint).
double bisect(const std::function<double(double)>& f, double a, double b, double tol);

// Golden-section minimizer on [a, b] for a unimodal-enough smooth function;
// returns the abscissa of the minimum to within xtol.
double refine_minimum(const std::function<double(double)>& f, double a, double b,
                      double xtol);

}  // namespace caustix
