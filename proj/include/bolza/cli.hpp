#pragma once

#include "bolza/quotient.hpp"
#include "bolza/render.hpp"
#include "bolza/report.hpp"
#include "bolza/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

// Command-line driver: parameter queries, distances on the surface, diameter
// and systole estimation, the verification suite, and tessellation rendering.
// Exit statuses: 0 success, 1 verification failure, 2 usage error, 3
// numeric/resource error.

namespace bolza {

namespace detail {

inline DiskPoint parse_point(const std::string& text) {
    double re = 0.0, im = 0.0;
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            re = std::stod(text);
        } else {
            re = std::stod(text.substr(0, comma));
            im = std::stod(text.substr(comma + 1));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("point", "expected \"re,im\", got " + text);
    }
    return DiskPoint(complex(re, im));
}

inline void write_text(const std::string& path, const std::string& payload) {
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open " + path);
    file.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!file)
        throw std::runtime_error("write failed on " + path);
}

/// Writes (or prints) the report and returns 0/1 by the aggregate result.
inline int finish_with_report(const ReportDocument& doc,
                              const std::string& out,
                              const std::string& format, std::FILE* stream) {
    for (const VerificationReport& r : doc.checks)
        std::fprintf(stream, "%-20s %s  margin=%+.6e  samples=%lld  (%.2fs)\n",
                     r.name.c_str(), r.pass ? "pass" : "FAIL", r.margin,
                     r.samples, r.seconds);
    if (!out.empty())
        export_report(doc, out, format);
    return doc.all_checks_pass() ? 0 : 1;
}

} // namespace detail

/// Runs one CLI invocation (argv without the program name).  Never throws;
/// all errors are mapped to the documented exit statuses.
inline int run_cli(const std::vector<std::string>& args,
                   std::FILE* stream = stdout) {
    CLI::App app{"Geodesic distances, diameter verification, and "
                 "tessellation rendering for the generalized Bolza surfaces"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string out_path;
    std::string format = "json";
    std::string z_text = "0", w_text = "0";
    int depth = 1;
    bool dual = false;
    std::vector<std::string> check_names;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--genus", cfg.genus, "Surface genus (>= 2)")
            ->check(CLI::Range(2, 1000));
        cmd->add_option("--cutoff", cfg.ball_cutoff,
                        "Group ball cutoff (default: four circumradii)");
        cmd->add_option("--grid", cfg.grid_n, "Grid resolution")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--samples", cfg.samples_n, "Random sample count")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", cfg.seed, "Random seed");
        cmd->add_option("--out", out_path, "Output file path");
        cmd->add_option("--format", format, "Report format")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* cmd_params = app.add_subcommand("params", "Print the derived surface constants");
    CLI::App* cmd_distance = app.add_subcommand("distance", "Distance between two points on the surface");
    CLI::App* cmd_d0 = app.add_subcommand("d0", "Distance from a point to the center orbit");
    CLI::App* cmd_dv = app.add_subcommand("dv", "Distance from a point to the vertex orbit");
    CLI::App* cmd_diameter = app.add_subcommand("diameter", "Estimate the diameter and check it equals R");
    CLI::App* cmd_systole = app.add_subcommand("systole", "Shortest closed geodesic length");
    CLI::App* cmd_bounds = app.add_subcommand("bounds", "Classical systole/area/diameter inequalities");
    CLI::App* cmd_verify = app.add_subcommand("verify", "Run the verification suite");
    CLI::App* cmd_tessellate = app.add_subcommand("tessellate", "Render the tessellation as SVG");
    for (CLI::App* cmd : {cmd_params, cmd_distance, cmd_d0, cmd_dv,
                          cmd_diameter, cmd_systole, cmd_bounds, cmd_verify,
                          cmd_tessellate})
        add_common(cmd);
    cmd_distance->add_option("--z", z_text, "First point as \"re,im\"");
    cmd_distance->add_option("--w", w_text, "Second point as \"re,im\"");
    cmd_d0->add_option("--z", z_text, "Point as \"re,im\"");
    cmd_dv->add_option("--z", z_text, "Point as \"re,im\"");
    cmd_verify->add_option("--check", check_names,
                           "Only run the named checks (repeatable)");
    cmd_tessellate->add_option("--depth", depth,
                               "Polygon word-length depth")
        ->check(CLI::NonNegativeNumber);
    cmd_tessellate->add_flag("--dual", dual, "Overlay the dual tessellation");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::fprintf(stream, "%s", app.help().c_str());
        return 0;
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }

    try {
        const SurfaceParams sp = surface_params(cfg.genus);
        if (cfg.genus > 50)
            std::fprintf(stderr,
                         "warning: genus %d puts vertices within %.1e of the "
                         "disk boundary; precision degrades\n",
                         cfg.genus, 1.0 - std::tanh(sp.circumradius / 2.0));

        const auto make_ball = [&](double cutoff) {
            return enumerate_ball(sp, cutoff, BallOptions{});
        };

        if (app.got_subcommand(cmd_params)) {
            std::fprintf(stream, "genus               %d\n", sp.genus);
            std::fprintf(stream, "circumradius        %.12f\n", sp.circumradius);
            std::fprintf(stream, "side_length         %.12f\n", sp.side_length);
            std::fprintf(stream, "circumradius_prime  %.12f\n",
                         sp.circumradius_prime);
            std::fprintf(stream, "side_prime          %.12f\n", sp.side_prime);
            std::fprintf(stream, "area                %.12f\n", sp.area);
            std::fprintf(stream, "systole             %.12f\n",
                         systole_closed_form(sp));
            return 0;
        }

        if (app.got_subcommand(cmd_distance)) {
            const DiskPoint z = detail::parse_point(z_text);
            const DiskPoint w = detail::parse_point(w_text);
            const TranslateBall ball =
                make_ball(cfg.resolved_cutoff(sp));
            std::fprintf(stream, "%.12f\n", quotient_distance(ball, z, w));
            return 0;
        }
        if (app.got_subcommand(cmd_d0)) {
            std::fprintf(stream, "%.12f\n",
                         distance_to_center_direct(
                             sp, detail::parse_point(z_text)));
            return 0;
        }
        if (app.got_subcommand(cmd_dv)) {
            std::fprintf(stream, "%.12f\n",
                         distance_to_vertex_direct(
                             sp, detail::parse_point(z_text)));
            return 0;
        }

        if (app.got_subcommand(cmd_diameter)) {
            RunConfig echo = cfg;
            echo.ball_cutoff = cfg.resolved_cutoff(sp);
            const TranslateBall ball = make_ball(echo.ball_cutoff);
            const DiameterEstimate est = diameter_estimate(
                sp, ball, cfg.grid_n, cfg.samples_n, cfg.seed);
            std::fprintf(stream, "diameter  %.12f\n", est.supremum);
            std::fprintf(stream, "expected  %.12f\n", sp.circumradius);
            const ReportDocument doc = make_report(
                sp, echo, systole(ball), {est.report});
            return detail::finish_with_report(doc, out_path, format, stream);
        }

        if (app.got_subcommand(cmd_systole)) {
            const double cutoff = cfg.ball_cutoff > 0.0
                                      ? cfg.ball_cutoff
                                      : 2.0 * sp.side_length + 0.3;
            const TranslateBall ball = make_ball(cutoff);
            const VerificationReport rep = verify_systole(sp, ball);
            std::fprintf(stream, "systole   %.12f\n", systole(ball));
            std::fprintf(stream, "expected  %.12f\n", systole_closed_form(sp));
            RunConfig echo = cfg;
            echo.ball_cutoff = cutoff;
            const ReportDocument doc =
                make_report(sp, echo, systole(ball), {rep});
            return detail::finish_with_report(doc, out_path, format, stream);
        }

        if (app.got_subcommand(cmd_bounds)) {
            const double cutoff = cfg.ball_cutoff > 0.0
                                      ? cfg.ball_cutoff
                                      : 2.0 * sp.side_length + 0.3;
            const TranslateBall ball = make_ball(cutoff);
            const double sys = systole(ball);
            const BoundsBreakdown bb =
                literature_bounds(sp, sys, sp.circumradius);
            static const char* const labels[5] = {
                "2 l sinh(D) >= area", "2 sinh(l/4) D <= area",
                "4 cosh(l/2) <= 3 cosh(D) - 1", "cosh(D) >= area/2pi + 1",
                "cosh(D) >= cot(pi/(6(2g-1)))/sqrt(3)"};
            for (int i = 0; i < 5; ++i)
                std::fprintf(stream, "%-38s slack %+.6f\n", labels[i],
                             bb.margins[static_cast<std::size_t>(i)]);
            RunConfig echo = cfg;
            echo.ball_cutoff = cutoff;
            const ReportDocument doc =
                make_report(sp, echo, sys, {bb.report});
            return detail::finish_with_report(doc, out_path, format, stream);
        }

        if (app.got_subcommand(cmd_verify)) {
            RunConfig echo = cfg;
            echo.ball_cutoff = cfg.resolved_cutoff(sp);
            const TranslateBall ball = make_ball(echo.ball_cutoff);
            SuiteConfig suite;
            suite.grid_n = cfg.grid_n;
            suite.samples_n = cfg.samples_n;
            suite.seed = cfg.seed;
            std::vector<VerificationReport> checks =
                run_verification_suite(sp, ball, suite);
            if (!check_names.empty()) {
                std::vector<VerificationReport> kept;
                for (const VerificationReport& r : checks)
                    for (const std::string& want : check_names)
                        if (r.name == want) {
                            kept.push_back(r);
                            break;
                        }
                if (kept.empty()) {
                    std::fprintf(stderr, "no such check among: ");
                    for (const VerificationReport& r : checks)
                        std::fprintf(stderr, "%s ", r.name.c_str());
                    std::fprintf(stderr, "\n");
                    return 2;
                }
                checks = std::move(kept);
            }
            const ReportDocument doc =
                make_report(sp, echo, systole(ball), std::move(checks));
            return detail::finish_with_report(doc, out_path, format, stream);
        }

        if (app.got_subcommand(cmd_tessellate)) {
            const double needed =
                static_cast<double>(depth) * sp.side_length + 0.5;
            const double cutoff = cfg.ball_cutoff > 0.0
                                      ? cfg.ball_cutoff
                                      : std::max(needed, sp.circumradius);
            const TranslateBall ball = make_ball(cutoff);
            const std::string svg =
                render_tessellation_svg(sp, ball, depth, dual);
            if (out_path.empty())
                std::fprintf(stream, "%s", svg.c_str());
            else
                detail::write_text(out_path, svg);
            return 0;
        }
    } catch (const insufficient_ball& e) {
        std::fprintf(stderr, "insufficient_ball: %s\n", e.what());
        return 3;
    } catch (const resource_limit& e) {
        std::fprintf(stderr, "resource_limit: %s\n", e.what());
        return 3;
    } catch (const numerical_pathology& e) {
        std::fprintf(stderr, "numerical_pathology: %s\n", e.what());
        return 3;
    } catch (const CLI::ParseError& e) {
        // Late validation (e.g. malformed point literals) is a usage error.
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}

} // namespace bolza
