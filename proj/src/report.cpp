#include "caustix/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "caustix/angles.hpp"
#include "caustix/version.hpp"

namespace caustix {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string fmt_fixed6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// World [-2.2, 2.2]^2 to the fixed 800x800 pixel viewport, y up.
double px(double x) { return (x + 2.2) / 4.4 * 800.0; }
double py(double y) { return (2.2 - y) / 4.4 * 800.0; }

}  // namespace

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path dir = target.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out.good()) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("write_text_atomic: failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("write_text_atomic: failed renaming onto " + path);
    }
}

std::string csv_preamble(const std::string& params_echo, unsigned long long seed) {
    std::string out;
    out += "# caustix ";
    out += version_string;
    out += "\n# params: ";
    out += params_echo;
    out += "\n# seed: ";
    out += std::to_string(seed);
    out += "\n";
    return out;
}

std::string caustic_csv(const std::vector<CausticSample>& samples,
                        const std::string& params_echo, unsigned long long seed) {
    std::string out = csv_preamble(params_echo, seed);
    out += "phi,x,y,at_infinity\n";
    for (const CausticSample& s : samples) {
        out += fmt_double(s.phi);
        out += ',';
        out += fmt_double(s.pos.x);
        out += ',';
        out += fmt_double(s.pos.y);
        out += ',';
        out += s.at_infinity ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string raster_csv(const RasterGrid& grid, const std::string& params_echo,
                       unsigned long long seed) {
    std::string out = csv_preamble(params_echo, seed);
    out += "r,phi_sample\n";
    for (std::size_t c = 0; c < grid.xs.size(); ++c) {
        const std::string r = fmt_double(grid.xs[c]);
        for (double phi : grid.columns[c]) {
            out += r;
            out += ',';
            out += fmt_double(phi);
            out += '\n';
        }
    }
    return out;
}

std::string tongue_csv(const std::vector<TongueRow>& rows,
                       const std::string& params_echo, unsigned long long seed) {
    std::string out = csv_preamble(params_echo, seed);
    out += "r,omega_lo,omega_hi,width\n";
    for (const TongueRow& row : rows) {
        out += fmt_double(row.r);
        out += ',';
        out += fmt_double(row.omega_lo);
        out += ',';
        out += fmt_double(row.omega_hi);
        out += ',';
        out += fmt_double(row.width);
        out += '\n';
    }
    return out;
}

std::string staircase_csv(const std::vector<StaircaseRow>& rows,
                          const std::string& params_echo, unsigned long long seed) {
    std::string out = csv_preamble(params_echo, seed);
    out += "omega,rotation,error_bound\n";
    for (const StaircaseRow& row : rows) {
        out += fmt_double(row.omega);
        out += ',';
        out += fmt_double(row.rotation);
        out += ',';
        out += fmt_double(row.error_bound);
        out += '\n';
    }
    return out;
}

std::string orbit_csv(const std::vector<double>& phis, long first_index,
                      const std::string& params_echo, unsigned long long seed) {
    std::string out = csv_preamble(params_echo, seed);
    out += "k,phi\n";
    for (std::size_t i = 0; i < phis.size(); ++i) {
        out += std::to_string(first_index + static_cast<long>(i));
        out += ',';
        out += fmt_double(phis[i]);
        out += '\n';
    }
    return out;
}

const char* cusp_kind_name(CuspKind kind) {
    switch (kind) {
        case CuspKind::Semicubical: return "semicubical";
        case CuspKind::CircleTangency: return "circle_tangency";
        case CuspKind::Degenerate: return "degenerate";
    }
    return "degenerate";
}

std::string cusp_json(const std::vector<CuspRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CuspRecord& rec : records) {
        nlohmann::json item;
        item["phi"] = rec.phi;
        item["kind"] = cusp_kind_name(rec.kind);
        if (std::isfinite(rec.discriminant))
            item["discriminant"] = rec.discriminant;
        else
            item["discriminant"] = "infinite";
        arr.push_back(std::move(item));
    }
    return arr.dump(2) + "\n";
}

namespace {

void append_polyline(std::string& out, const std::vector<CausticSample>& samples,
                     const char* stroke, const char* width) {
    // Subpaths break wherever a sample is at infinity or leaves a sane
    // multiple of the viewport (uncompressed curves can spike arbitrarily).
    auto drawable = [](const CausticSample& s) {
        return !s.at_infinity && std::abs(s.pos.x) <= 22.0 && std::abs(s.pos.y) <= 22.0;
    };
    std::string d;
    bool open = false;
    for (const CausticSample& s : samples) {
        if (!drawable(s)) {
            open = false;
            continue;
        }
        d += open ? " L " : (d.empty() ? "M " : " M ");
        d += fmt_fixed6(px(s.pos.x));
        d += ' ';
        d += fmt_fixed6(py(s.pos.y));
        open = true;
    }
    if (d.empty()) return;
    out += "<path d=\"";
    out += d;
    out += "\" fill=\"none\" stroke=\"";
    out += stroke;
    out += "\" stroke-width=\"";
    out += width;
    out += "\"/>\n";
}

}  // namespace

std::string caustic_svg(const std::vector<CausticSample>& samples, const SvgStyle& style) {
    std::string out;
    out +=
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
        "height=\"800\" viewBox=\"0 0 800 800\">\n"
        "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"#ffffff\"/>\n";
    // Unit circle, thin.
    out += "<circle cx=\"400.000000\" cy=\"400.000000\" r=\"";
    out += fmt_fixed6(800.0 / 4.4);
    out += "\" fill=\"none\" stroke=\"#909090\" stroke-width=\"1\"/>\n";
    if (style.compressed) {
        out += "<circle cx=\"400.000000\" cy=\"400.000000\" r=\"";
        out += fmt_fixed6(2.0 / 4.4 * 800.0);
        out += "\" fill=\"none\" stroke=\"#b0b0b0\" stroke-width=\"1\" "
               "stroke-dasharray=\"6 4\"/>\n";
    }
    append_polyline(out, samples, "#202020", "2.5");
    // Source point at (r, 0).
    out += "<circle cx=\"";
    out += fmt_fixed6(px(style.source_r));
    out += "\" cy=\"";
    out += fmt_fixed6(py(0.0));
    out += "\" r=\"4\" fill=\"#c03030\"/>\n";
    out += "</svg>\n";
    return out;
}

std::string raster_svg(const RasterGrid& grid, double r_min, double r_max) {
    const double span = r_max > r_min ? r_max - r_min : 1.0;
    std::string out;
    out +=
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
        "height=\"800\" viewBox=\"0 0 800 800\">\n"
        "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"#ffffff\"/>\n"
        "<rect x=\"40\" y=\"40\" width=\"720\" height=\"720\" fill=\"none\" "
        "stroke=\"#909090\" stroke-width=\"1\"/>\n";
    for (std::size_t c = 0; c < grid.xs.size(); ++c) {
        const double fx = 40.0 + (grid.xs[c] - r_min) / span * 720.0;
        const std::string sx = fmt_fixed6(fx);
        for (double phi : grid.columns[c]) {
            out += "<circle cx=\"";
            out += sx;
            out += "\" cy=\"";
            out += fmt_fixed6(40.0 + (pi - phi) / two_pi * 720.0);
            out += "\" r=\"0.7\" fill=\"#203050\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace caustix
