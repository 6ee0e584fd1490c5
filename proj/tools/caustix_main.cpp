// caustix: numerical laboratory for off-center reflection circle maps,
// their caustics, and their mode-locking behaviour.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "caustix/angles.hpp"
#include "caustix/caustic.hpp"
#include "caustix/locking.hpp"
#include "caustix/map.hpp"
#include "caustix/orbit.hpp"
#include "caustix/report.hpp"
#include "caustix/verify.hpp"
#include "caustix/version.hpp"

namespace {

using namespace caustix;

Variant parse_variant(const std::string& name) {
    if (name == "reflect") return Variant::Reflect;
    if (name == "conjugate") return Variant::Conjugate;
    throw std::invalid_argument("unknown variant: " + name);
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_text_atomic(path, content);
}

std::string num(double v) { return fmt_double(v); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"caustix - circle-map caustics and mode-locking laboratory"};
    app.set_version_flag("--version", std::string("caustix ") + version_string);
    app.require_subcommand(1);

    // ---- map-eval ----------------------------------------------------------
    double me_r = 0.0, me_omega = pi;
    std::string me_variant = "reflect", me_csv;
    int me_iter = 1, me_samples = 256;
    unsigned long long me_seed = 1;
    CLI::App* me = app.add_subcommand("map-eval",
                                      "Tabulate an iterate of the map and its jets");
    me->add_option("--r", me_r, "Source offset in [0,1)")->required();
    me->add_option("--omega", me_omega, "Rotation offset in radians (default pi)");
    me->add_option("--variant", me_variant, "Family: reflect | conjugate")
        ->check(CLI::IsMember({"reflect", "conjugate"}));
    me->add_option("--iter", me_iter, "Iterate order n >= 1")->check(CLI::PositiveNumber);
    me->add_option("--samples", me_samples, "Sample count over one period")
        ->check(CLI::PositiveNumber);
    me->add_option("--seed", me_seed, "Seed recorded in the output header");
    me->add_option("--csv", me_csv, "Write CSV here instead of stdout");

    // ---- orbit --------------------------------------------------------------
    double ob_r = 0.0, ob_omega = pi, ob_phi0 = 0.5;
    std::string ob_variant = "reflect", ob_csv;
    long ob_iter = 1000, ob_transient = 0, ob_keep = -1;
    unsigned long long ob_seed = 1;
    CLI::App* ob = app.add_subcommand("orbit", "Emit an orbit segment as CSV");
    ob->add_option("--r", ob_r, "Source offset in [0,1)")->required();
    ob->add_option("--omega", ob_omega, "Rotation offset in radians (default pi)");
    ob->add_option("--variant", ob_variant, "Family: reflect | conjugate")
        ->check(CLI::IsMember({"reflect", "conjugate"}));
    ob->add_option("--phi0", ob_phi0, "Initial angle (default 0.5)");
    ob->add_option("--iter", ob_iter, "Total iterations")->check(CLI::PositiveNumber);
    ob->add_option("--transient", ob_transient, "Iterations to discard from the front")
        ->check(CLI::NonNegativeNumber);
    ob->add_option("--keep", ob_keep, "Keep only this many trailing samples");
    ob->add_option("--seed", ob_seed, "Seed recorded in the output header");
    ob->add_option("--csv", ob_csv, "Write CSV here instead of stdout");

    // ---- bifurcation --------------------------------------------------------
    double bf_rmin = 0.34, bf_rmax = 0.99, bf_phi0 = 0.0;
    int bf_steps = 512, bf_threads = 1;
    long bf_transient = 1000, bf_keep = 64;
    bool bf_minus = false, bf_custom = false;
    unsigned long long bf_seed = 1;
    std::string bf_csv, bf_out;
    CLI::App* bf = app.add_subcommand(
        "bifurcation", "Asymptotic-orbit raster over a range of source offsets");
    bf->add_option("--r-min", bf_rmin, "Lower end of the offset range");
    bf->add_option("--r-max", bf_rmax, "Upper end of the offset range");
    bf->add_option("--r-steps", bf_steps, "Number of raster columns")
        ->check(CLI::PositiveNumber);
    CLI::Option* bf_phi0_opt =
        bf->add_option("--phi0", bf_phi0, "Custom seed angle (default: critical point)");
    bf->add_flag("--seed-minus", bf_minus, "Seed at the negative critical point");
    bf->add_option("--transient", bf_transient, "Iterations to discard")
        ->check(CLI::NonNegativeNumber);
    bf->add_option("--keep", bf_keep, "Samples kept per column")
        ->check(CLI::PositiveNumber);
    bf->add_option("--threads", bf_threads, "Worker threads")->check(CLI::PositiveNumber);
    bf->add_option("--seed", bf_seed, "Seed recorded in the output header");
    bf->add_option("--csv", bf_csv, "Write raster CSV here");
    bf->add_option("--out", bf_out, "Write scatter SVG here");
    bf->callback([&]() { bf_custom = bf_phi0_opt->count() > 0; });

    // ---- caustic ------------------------------------------------------------
    double ca_r = 0.0, ca_omega = pi;
    std::string ca_variant = "reflect", ca_csv, ca_out;
    int ca_iter = 1, ca_samples = 1024;
    unsigned long long ca_seed = 1;
    CLI::App* ca = app.add_subcommand("caustic",
                                      "Sample the caustic of an iterate of the map");
    ca->add_option("--r", ca_r, "Source offset in [0,1)")->required();
    ca->add_option("--omega", ca_omega, "Rotation offset in radians (default pi)");
    ca->add_option("--variant", ca_variant, "Family: reflect | conjugate")
        ->check(CLI::IsMember({"reflect", "conjugate"}));
    ca->add_option("--iter", ca_iter, "Iterate order n >= 1")->check(CLI::PositiveNumber);
    ca->add_option("--samples", ca_samples, "Curve sample count (>= 16)");
    ca->add_option("--seed", ca_seed, "Seed recorded in the output header");
    ca->add_option("--csv", ca_csv, "Write CSV here instead of stdout");
    ca->add_option("--out", ca_out, "Write SVG plot here");

    // ---- cusps --------------------------------------------------------------
    double cu_r = 0.0;
    int cu_iter = 1, cu_samples = 8192;
    std::string cu_json;
    CLI::App* cu = app.add_subcommand("cusps",
                                      "Locate cusps of the caustic of an iterate");
    cu->add_option("--r", cu_r, "Source offset in [0,1)")->required();
    cu->add_option("--iter", cu_iter, "Iterate order n >= 1")->check(CLI::PositiveNumber);
    cu->add_option("--samples", cu_samples, "Scan grid resolution")
        ->check(CLI::PositiveNumber);
    cu->add_option("--json", cu_json, "Write JSON here instead of stdout");

    // ---- tangency -----------------------------------------------------------
    double tg_r = 0.0;
    int tg_iter = 2;
    std::string tg_json;
    CLI::App* tg = app.add_subcommand(
        "tangency", "Circle-tangency report for an even iterate's caustic");
    tg->add_option("--r", tg_r, "Source offset in (0,1)")->required();
    tg->add_option("--iter", tg_iter, "Even iterate order (default 2)");
    tg->add_option("--json", tg_json, "Write JSON here instead of stdout");

    // ---- tongue -------------------------------------------------------------
    int to_p = 1, to_q = 2, to_steps = 16, to_threads = 1;
    double to_rmin = 0.02, to_rmax = 0.2, to_tol = 1e-10;
    unsigned long long to_seed = 1;
    std::string to_csv;
    CLI::App* to = app.add_subcommand(
        "tongue", "Resonance interval widths over a range of source offsets");
    to->add_option("--p", to_p, "Winding count of the resonance");
    to->add_option("--q", to_q, "Period of the resonance")->check(CLI::PositiveNumber);
    to->add_option("--r-min", to_rmin, "Lower end of the offset range");
    to->add_option("--r-max", to_rmax, "Upper end of the offset range");
    to->add_option("--r-steps", to_steps, "Number of rows")->check(CLI::PositiveNumber);
    to->add_option("--tol", to_tol, "Edge bracketing tolerance");
    to->add_option("--threads", to_threads, "Worker threads")->check(CLI::PositiveNumber);
    to->add_option("--seed", to_seed, "Seed recorded in the output header");
    to->add_option("--csv", to_csv, "Write CSV here instead of stdout");

    // ---- staircase ----------------------------------------------------------
    double st_r = 0.0, st_phi0 = 0.0;
    int st_samples = 256, st_threads = 1;
    long st_iter = 100000;
    std::string st_variant = "reflect", st_csv;
    unsigned long long st_seed = 1;
    CLI::App* st = app.add_subcommand("staircase",
                                      "Rotation number as a function of the offset");
    st->add_option("--r", st_r, "Source offset in [0,1)")->required();
    st->add_option("--samples", st_samples, "Number of offset samples")
        ->check(CLI::PositiveNumber);
    st->add_option("--iter", st_iter, "Iterations per sample")->check(CLI::PositiveNumber);
    st->add_option("--variant", st_variant, "Family: reflect | conjugate")
        ->check(CLI::IsMember({"reflect", "conjugate"}));
    st->add_option("--phi0", st_phi0, "Initial angle (default 0)");
    st->add_option("--threads", st_threads, "Worker threads")->check(CLI::PositiveNumber);
    st->add_option("--seed", st_seed, "Seed recorded in the output header");
    st->add_option("--csv", st_csv, "Write CSV here instead of stdout");

    // ---- rotation -----------------------------------------------------------
    double ro_r = 0.0, ro_omega = 0.0, ro_phi0 = 0.0;
    long ro_iter = 100000;
    std::string ro_variant = "reflect", ro_json;
    CLI::App* ro = app.add_subcommand("rotation",
                                      "Estimate the rotation number of one map");
    ro->add_option("--r", ro_r, "Source offset in [0,1)")->required();
    ro->add_option("--omega", ro_omega, "Rotation offset in radians")->required();
    ro->add_option("--variant", ro_variant, "Family: reflect | conjugate")
        ->check(CLI::IsMember({"reflect", "conjugate"}));
    ro->add_option("--phi0", ro_phi0, "Initial angle (default 0)");
    ro->add_option("--iter", ro_iter, "Iterations")->check(CLI::PositiveNumber);
    ro->add_option("--json", ro_json, "Write a JSON estimate here");

    // ---- verify -------------------------------------------------------------
    std::string ve_suite = "all", ve_json;
    unsigned long long ve_seed = 1;
    int ve_threads = 4;
    double ve_timeout = 300.0;
    CLI::App* ve = app.add_subcommand("verify", "Run the numerical acceptance checks");
    ve->add_option("--suite", ve_suite, "core | caustics | dynamics | locking | all")
        ->check(CLI::IsMember({"core", "caustics", "dynamics", "locking", "all"}));
    ve->add_option("--seed", ve_seed, "Seed for randomized checks");
    ve->add_option("--threads", ve_threads, "Worker threads")->check(CLI::PositiveNumber);
    ve->add_option("--timeout", ve_timeout, "Per-check timeout in seconds");
    ve->add_option("--json", ve_json, "Write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (me->parsed()) {
            const MapParams p = make_params(me_r, me_omega, parse_variant(me_variant));
            std::string echo = "map-eval r=" + num(me_r) + " omega=" + num(me_omega) +
                               " variant=" + me_variant + " iter=" +
                               std::to_string(me_iter) + " samples=" +
                               std::to_string(me_samples);
            std::string body = csv_preamble(echo, me_seed);
            body += "phi,f,d1,d2,d3,d4\n";
            for (int i = 0; i < me_samples; ++i) {
                const double phi = -pi + (i + 1) * two_pi / me_samples;
                const Jet4 j = iterate_jet(p, phi, me_iter);
                body += num(phi) + "," + num(j.d0) + "," + num(j.d1) + "," +
                        num(j.d2) + "," + num(j.d3) + "," + num(j.d4) + "\n";
            }
            emit(me_csv, body);
            return 0;
        }
        if (ob->parsed()) {
            const MapParams p = make_params(ob_r, ob_omega, parse_variant(ob_variant));
            long n1 = ob_transient;
            const long n2 = ob_iter;
            if (ob_keep >= 0) n1 = std::max(n1, n2 - 1 - ob_keep);
            const std::vector<double> phis = asymptotic_orbit(p, ob_phi0, n1, n2);
            const std::string echo =
                "orbit r=" + num(ob_r) + " omega=" + num(ob_omega) + " variant=" +
                ob_variant + " phi0=" + num(ob_phi0) + " iter=" +
                std::to_string(ob_iter) + " transient=" + std::to_string(ob_transient);
            emit(ob_csv, orbit_csv(phis, n1 + 1, echo, ob_seed));
            return 0;
        }
        if (bf->parsed()) {
            const BifurcationSeed kind = bf_custom ? BifurcationSeed::Custom
                                         : bf_minus ? BifurcationSeed::CriticalMinus
                                                    : BifurcationSeed::CriticalPlus;
            const RasterGrid grid =
                bifurcation_raster(bf_rmin, bf_rmax, bf_steps, kind, bf_phi0,
                                   bf_transient, bf_transient + bf_keep, bf_threads);
            const std::string echo =
                "bifurcation r-min=" + num(bf_rmin) + " r-max=" + num(bf_rmax) +
                " r-steps=" + std::to_string(bf_steps) + " transient=" +
                std::to_string(bf_transient) + " keep=" + std::to_string(bf_keep);
            if (!bf_csv.empty()) write_text_atomic(bf_csv, raster_csv(grid, echo, bf_seed));
            if (!bf_out.empty())
                write_text_atomic(bf_out, raster_svg(grid, bf_rmin, bf_rmax));
            if (bf_csv.empty() && bf_out.empty())
                std::cout << raster_csv(grid, echo, bf_seed);
            return 0;
        }
        if (ca->parsed()) {
            const MapParams p = make_params(ca_r, ca_omega, parse_variant(ca_variant));
            const auto raw = caustic_curve(p, ca_iter, ca_samples, false);
            const std::string echo = "caustic r=" + num(ca_r) + " omega=" +
                                     num(ca_omega) + " variant=" + ca_variant +
                                     " iter=" + std::to_string(ca_iter) +
                                     " samples=" + std::to_string(ca_samples);
            if (!ca_out.empty()) {
                bool needs_compress = false;
                for (const auto& s : raw) {
                    if (s.at_infinity ||
                        std::max(std::abs(s.pos.x), std::abs(s.pos.y)) > 2.2)
                        needs_compress = true;
                }
                const auto drawn = needs_compress
                                       ? caustic_curve(p, ca_iter, ca_samples, true)
                                       : raw;
                SvgStyle style;
                style.compressed = needs_compress;
                style.source_r = ca_r;
                write_text_atomic(ca_out, caustic_svg(drawn, style));
            }
            if (ca_out.empty() || !ca_csv.empty())
                emit(ca_csv, caustic_csv(raw, echo, ca_seed));
            return 0;
        }
        if (cu->parsed()) {
            const MapParams p = make_params(cu_r, pi, Variant::Reflect);
            const auto records = find_cusps(p, cu_iter, cu_samples);
            emit(cu_json, cusp_json(records));
            return 0;
        }
        if (tg->parsed()) {
            if (tg_iter < 2 || tg_iter % 2 != 0)
                throw std::invalid_argument("tangency: --iter must be a positive even number");
            const TangencyReport rep = tangency_points_even(tg_r, tg_iter / 2);
            nlohmann::json j;
            j["phis"] = rep.phis;
            j["max_unit_defect"] = rep.max_unit_defect;
            j["max_angle_defect"] = rep.max_angle_defect;
            emit(tg_json, j.dump(2) + "\n");
            return 0;
        }
        if (to->parsed()) {
            const auto rows = tongue_raster(to_p, to_q, to_rmin, to_rmax, to_steps,
                                            to_tol, to_threads);
            const std::string echo = "tongue p=" + std::to_string(to_p) + " q=" +
                                     std::to_string(to_q) + " r-min=" + num(to_rmin) +
                                     " r-max=" + num(to_rmax) + " r-steps=" +
                                     std::to_string(to_steps) + " tol=" + num(to_tol);
            emit(to_csv, tongue_csv(rows, echo, to_seed));
            return 0;
        }
        if (st->parsed()) {
            const auto rows = staircase(st_r, st_samples, st_iter,
                                        parse_variant(st_variant), st_phi0, st_threads);
            const std::string echo = "staircase r=" + num(st_r) + " samples=" +
                                     std::to_string(st_samples) + " iter=" +
                                     std::to_string(st_iter) + " variant=" + st_variant +
                                     " phi0=" + num(st_phi0);
            emit(st_csv, staircase_csv(rows, echo, st_seed));
            return 0;
        }
        if (ro->parsed()) {
            const MapParams p = make_params(ro_r, ro_omega, parse_variant(ro_variant));
            const RotationEstimate est = rotation_number(p, ro_phi0, ro_iter);
            std::printf("%.12g\n", est.value);
            if (!ro_json.empty()) {
                nlohmann::json j;
                j["value"] = est.value;
                j["error_bound"] = est.error_bound;
                j["iterations_used"] = est.iterations_used;
                write_text_atomic(ro_json, j.dump(2) + "\n");
            }
            return 0;
        }
        if (ve->parsed()) {
            const VerifyReport rep = run_suite(ve_suite, ve_seed, ve_threads, ve_timeout);
            std::cout << verify_table(rep);
            if (!ve_json.empty())
                write_text_atomic(ve_json, verify_json(rep));
            else
                std::cout << verify_json(rep);
            return rep.overall_pass ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
