#pragma once

#include <string>
#include <vector>

#include "caustix/caustic.hpp"
#include "caustix/locking.hpp"
#include "caustix/orbit.hpp"

namespace caustix {

// Decimal rendering with 17 significant digits (round-trip safe for doubles).
std::string fmt_double(double v);

// Writes content to a sibling temp file and renames it over the target, so
// readers never observe a partially written file. Throws std::runtime_error
// on I/O failure.
void write_text_atomic(const std::string& path, const std::string& content);

// Comment preamble shared by every CSV artifact: tool version, a full
// parameter echo, and the RNG seed used by the producing run.
std::string csv_preamble(const std::string& params_echo, unsigned long long seed);

// Column schema: phi,x,y,at_infinity(0|1).
std::string caustic_csv(const std::vector<CausticSample>& samples,
                        const std::string& params_echo, unsigned long long seed);

// Column schema: r,phi_sample; one row per (column, sample), column-major.
std::string raster_csv(const RasterGrid& grid, const std::string& params_echo,
                       unsigned long long seed);

// Column schema: r,omega_lo,omega_hi,width.
std::string tongue_csv(const std::vector<TongueRow>& rows,
                       const std::string& params_echo, unsigned long long seed);

// Column schema: omega,rotation,error_bound.
std::string staircase_csv(const std::vector<StaircaseRow>& rows,
                          const std::string& params_echo, unsigned long long seed);

// Column schema: k,phi for orbit samples indexed from first_index.
std::string orbit_csv(const std::vector<double>& phis, long first_index,
                      const std::string& params_echo, unsigned long long seed);

const char* cusp_kind_name(CuspKind kind);

// JSON array of {phi, kind, discriminant}; an infinite discriminant is
// encoded as the string "infinite" (JSON has no infinity literal).
std::string cusp_json(const std::vector<CuspRecord>& records);

struct SvgStyle {
    bool compressed = false;  // draw the dashed radius-2 circle of infinity
    double source_r = 0.0;    // source point marker at (r, 0)
};

// Deterministic SVG 1.1 document: fixed 800x800 viewport mapping the square
// [-2.2, 2.2]^2, thin unit circle, thick caustic polyline split into subpaths
// at samples at infinity, source point marked. Empty input yields the frame
// only.
std::string caustic_svg(const std::vector<CausticSample>& samples, const SvgStyle& style);

// Bifurcation scatter panel in the same viewport style: parameter on the
// horizontal axis, phase angle on the vertical axis.
std::string raster_svg(const RasterGrid& grid, double r_min, double r_max);

}  // namespace caustix
