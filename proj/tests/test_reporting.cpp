#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "caustix/angles.hpp"
#include "caustix/caustic.hpp"
#include "caustix/map.hpp"
#include "caustix/report.hpp"
#include "caustix/version.hpp"

using namespace caustix;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("seventeen significant digits round-trip doubles") {
    for (double v : {3.141592653589793, 1.0 / 3.0, 1e-17, 6.02214076e23,
                     -2.2250738585072014e-308, 0.0}) {
        const std::string s = fmt_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(std::signbit(std::strtod(fmt_double(-0.0).c_str(), nullptr)));
}

TEST_CASE("atomic text writes create parents and replace content") {
    const auto dir = std::filesystem::temp_directory_path() / "caustix_test_io";
    std::filesystem::remove_all(dir);
    const auto path = dir / "nested" / "out.txt";
    write_text_atomic(path.string(), "first\n");
    CHECK(slurp(path) == "first\n");
    write_text_atomic(path.string(), "second\n");
    CHECK(slurp(path) == "second\n");
    // No stray temp files left behind.
    int entries = 0;
    for (auto it : std::filesystem::directory_iterator(path.parent_path())) {
        (void)it;
        ++entries;
    }
    CHECK(entries == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("CSV preamble carries version, parameters and seed") {
    const std::string pre = csv_preamble("demo r=0.5", 42);
    CHECK(pre.find(version_string) != std::string::npos);
    CHECK(pre.find("demo r=0.5") != std::string::npos);
    CHECK(pre.find("seed: 42") != std::string::npos);
    for (std::size_t pos = 0; pos < pre.size(); pos = pre.find('\n', pos) + 1)
        CHECK(pre[pos] == '#');
}

TEST_CASE("caustic CSV structure") {
    const auto curve = caustic_curve(make_params(0.0, pi), 2, 16);
    const std::string csv = caustic_csv(curve, "caustic r=0", 7);
    CHECK(csv.find("phi,x,y,at_infinity\n") != std::string::npos);
    CHECK(count_lines(csv) == 3 + 1 + 16);  // preamble, header, rows
    CHECK(csv.find(",1\n") == std::string::npos);  // nothing at infinity here
}

TEST_CASE("orbit, tongue, staircase and raster CSV structure") {
    const std::string orbit = orbit_csv({0.1, 0.2, 0.3}, 5, "orbit", 1);
    CHECK(orbit.find("k,phi\n") != std::string::npos);
    CHECK(orbit.find("5,0.1") != std::string::npos);
    CHECK(count_lines(orbit) == 3 + 1 + 3);

    const std::string tongue =
        tongue_csv({{0.1, 3.0, 3.2, 0.2}}, "tongue", 2);
    CHECK(tongue.find("r,omega_lo,omega_hi,width\n") != std::string::npos);
    CHECK(count_lines(tongue) == 3 + 1 + 1);

    const std::string stair =
        staircase_csv({{0.5, 0.51, 0.01}, {0.6, 0.61, 0.01}}, "stair", 3);
    CHECK(stair.find("omega,rotation,error_bound\n") != std::string::npos);
    CHECK(count_lines(stair) == 3 + 1 + 2);

    RasterGrid grid;
    grid.xs = {0.4, 0.5};
    grid.columns = {{0.1, 0.2}, {0.3}};
    const std::string raster = raster_csv(grid, "raster", 4);
    CHECK(raster.find("r,phi_sample\n") != std::string::npos);
    CHECK(count_lines(raster) == 3 + 1 + 3);
    // Column-major: both rows of the first column precede the second column.
    CHECK(raster.find("0.40000000000000002,0.1") < raster.find("0.5,0.3"));
}

TEST_CASE("cusp JSON encodes infinite discriminants as a string") {
    std::vector<CuspRecord> recs;
    CuspRecord finite;
    finite.phi = 0.5;
    finite.kind = CuspKind::Semicubical;
    finite.discriminant = 6.0;
    CuspRecord infinite;
    infinite.phi = 0.0;
    infinite.kind = CuspKind::Semicubical;
    infinite.discriminant = std::numeric_limits<double>::infinity();
    recs.push_back(finite);
    recs.push_back(infinite);

    const std::string text = cusp_json(recs);
    const nlohmann::json parsed = nlohmann::json::parse(text);
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0]["kind"] == "semicubical");
    CHECK(parsed[0]["discriminant"] == 6.0);
    CHECK(parsed[1]["discriminant"] == "infinite");
}

TEST_CASE("caustic SVG is deterministic and carries the fixed frame") {
    const auto curve = caustic_curve(make_params(0.375, pi), 1, 128);
    SvgStyle style;
    style.source_r = 0.375;
    const std::string a = caustic_svg(curve, style);
    const std::string b = caustic_svg(curve, style);
    CHECK(a == b);  // bytewise
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("width=\"800\"") != std::string::npos);
    CHECK(a.find("<path") != std::string::npos);
    CHECK(a.find("stroke-dasharray") == std::string::npos);

    SvgStyle compressed = style;
    compressed.compressed = true;
    CHECK(caustic_svg(curve, compressed).find("stroke-dasharray") !=
          std::string::npos);

    // Empty data: frame only, no curve path.
    const std::string empty = caustic_svg({}, style);
    CHECK(empty.find("<svg") != std::string::npos);
    CHECK(empty.find("class=\"curve\"") == std::string::npos);
}

TEST_CASE("raster SVG renders one dot per sample") {
    RasterGrid grid;
    grid.xs = {0.4, 0.6};
    grid.columns = {{0.1, -0.2}, {1.0}};
    const std::string svg = raster_svg(grid, 0.4, 0.6);
    CHECK(svg.find("<svg") != std::string::npos);
    int dots = 0;
    for (std::size_t pos = svg.find("<circle"); pos != std::string::npos;
         pos = svg.find("<circle", pos + 1))
        ++dots;
    CHECK(dots >= 3);
    CHECK(raster_svg(grid, 0.4, 0.6) == svg);
}
