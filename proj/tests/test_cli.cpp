#include <catch2/catch_amalgamated.hpp>

#include "bolza/bolza.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace bolza;

namespace {

ReportDocument sample_document() {
    const SurfaceParams sp = surface_params(2);
    RunConfig cfg;
    cfg.genus = 2;
    cfg.ball_cutoff = 4.0 * sp.circumradius;
    cfg.grid_n = 17;
    cfg.samples_n = 23;
    cfg.seed = 99;
    VerificationReport a;
    a.name = "alpha";
    a.pass = true;
    a.margin = 1.5e-3;
    a.samples = 42;
    a.seconds = 0.25;
    VerificationReport b;
    b.name = "beta";
    b.pass = false;
    b.margin = -2.75e-9;
    b.samples = 7;
    b.seconds = 0.5;
    return make_report(sp, cfg, sp.side_length, {a, b});
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::size_t count_occurrences(const std::string& text, const std::string& what) {
    std::size_t n = 0;
    for (std::size_t at = text.find(what); at != std::string::npos;
         at = text.find(what, at + what.size()))
        ++n;
    return n;
}

/// Runs the CLI with output captured to a temporary stream; returns the exit
/// code and the captured stdout-equivalent text.
std::pair<int, std::string> run_captured(const std::vector<std::string>& args) {
    std::FILE* stream = std::tmpfile();
    REQUIRE(stream != nullptr);
    const int code = run_cli(args, stream);
    std::string text;
    std::rewind(stream);
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, stream)) > 0)
        text.append(buf, got);
    std::fclose(stream);
    return {code, text};
}

} // namespace

// ---------------------------------------------------------------------------
// Report documents.
// ---------------------------------------------------------------------------

TEST_CASE("report survives a json round trip through text", "[report]") {
    const ReportDocument doc = sample_document();
    const std::string text = to_json_string(doc);
    const ReportDocument rt =
        report_from_json(nlohmann::ordered_json::parse(text));
    CHECK(rt.version == doc.version);
    CHECK(rt.config.genus == doc.config.genus);
    CHECK(rt.config.ball_cutoff == doc.config.ball_cutoff);
    CHECK(rt.config.grid_n == doc.config.grid_n);
    CHECK(rt.config.samples_n == doc.config.samples_n);
    CHECK(rt.config.seed == doc.config.seed);
    CHECK(rt.circumradius == doc.circumradius);
    CHECK(rt.side_length == doc.side_length);
    CHECK(rt.circumradius_prime == doc.circumradius_prime);
    CHECK(rt.side_prime == doc.side_prime);
    CHECK(rt.area == doc.area);
    CHECK(rt.systole_length == doc.systole_length);
    REQUIRE(rt.checks.size() == doc.checks.size());
    for (std::size_t i = 0; i < rt.checks.size(); ++i) {
        CHECK(rt.checks[i].name == doc.checks[i].name);
        CHECK(rt.checks[i].pass == doc.checks[i].pass);
        CHECK(rt.checks[i].margin == doc.checks[i].margin);
        CHECK(rt.checks[i].samples == doc.checks[i].samples);
        CHECK(rt.checks[i].seconds == doc.checks[i].seconds);
    }
}

TEST_CASE("report serialization is deterministic and ordered", "[report]") {
    const ReportDocument doc = sample_document();
    const std::string one = to_json_string(doc);
    const std::string two = to_json_string(doc);
    CHECK(one == two);
    CHECK(one.back() == '\n');
    const std::size_t at_version = one.find("\"version\"");
    const std::size_t at_config = one.find("\"config\"");
    const std::size_t at_constants = one.find("\"constants\"");
    const std::size_t at_checks = one.find("\"checks\"");
    REQUIRE(at_version != std::string::npos);
    CHECK(at_version < at_config);
    CHECK(at_config < at_constants);
    CHECK(at_constants < at_checks);
    CHECK(one.find("\"1.0.0\"") != std::string::npos);
}

TEST_CASE("csv export carries the header and one row per check", "[report]") {
    const ReportDocument doc = sample_document();
    const std::string csv = to_csv_string(doc);
    CHECK(csv.rfind("name,pass,margin,samples,seconds\n", 0) == 0);
    CHECK(count_occurrences(csv, "\n") == 1 + doc.checks.size());
    CHECK(csv.find("alpha,true,") != std::string::npos);
    CHECK(csv.find("beta,false,") != std::string::npos);
    CHECK(csv.find("42") != std::string::npos);
}

TEST_CASE("report files are written byte-identically", "[report]") {
    const ReportDocument doc = sample_document();
    const std::string jpath = "/tmp/bolza_test_report.json";
    const std::string cpath = "/tmp/bolza_test_report.csv";
    export_report(doc, jpath, "json");
    export_report(doc, cpath, "csv");
    CHECK(read_file(jpath) == to_json_string(doc));
    CHECK(read_file(cpath) == to_csv_string(doc));
    std::remove(jpath.c_str());
    std::remove(cpath.c_str());
    CHECK_THROWS_AS(export_report(doc, jpath, "xml"), std::invalid_argument);
    CHECK_THROWS_AS(export_report(doc, "/nonexistent/dir/report.json", "json"),
                    std::runtime_error);
}

TEST_CASE("document with no checks passes vacuously", "[report]") {
    ReportDocument doc = sample_document();
    doc.checks.clear();
    CHECK(doc.all_checks_pass());
    const std::string text = to_json_string(doc);
    CHECK(text.find("\"checks\": []") != std::string::npos);
    const ReportDocument rt =
        report_from_json(nlohmann::ordered_json::parse(text));
    CHECK(rt.checks.empty());
}

TEST_CASE("a failing check yields a failure exit from the report printer",
          "[report]") {
    const ReportDocument failing = sample_document(); // "beta" fails
    std::FILE* stream = std::tmpfile();
    REQUIRE(stream != nullptr);
    CHECK(detail::finish_with_report(failing, "", "json", stream) == 1);
    ReportDocument passing = failing;
    passing.checks[1].pass = true;
    CHECK(detail::finish_with_report(passing, "", "json", stream) == 0);
    std::fclose(stream);
}

// ---------------------------------------------------------------------------
// Geodesic arcs and the tessellation rendering.
// ---------------------------------------------------------------------------

namespace {

/// Reconstructs the center the SVG renderer would pick for the arc command
/// "A r r 0 0 sweep" from p to q, i.e. the minor-arc center consistent with
/// the sweep direction in the y-down viewport.
std::pair<double, double> svg_chosen_center(const DiskPoint& p,
                                            const DiskPoint& q,
                                            const GeodesicArc& arc) {
    const double x1 = detail::svg_x(p.re()), y1 = detail::svg_y(p.im());
    const double x2 = detail::svg_x(q.re()), y2 = detail::svg_y(q.im());
    const double r = 500.0 * arc.radius;
    const double dx = x2 - x1, dy = y2 - y1;
    const double chord = std::hypot(dx, dy);
    REQUIRE(chord <= 2.0 * r * (1.0 + 1e-12));
    const double h = std::sqrt(std::max(0.0, r * r - 0.25 * chord * chord));
    const double mx = 0.5 * (x1 + x2), my = 0.5 * (y1 + y2);
    const double ux = -dy / chord, uy = dx / chord;
    for (const double sign : {1.0, -1.0}) {
        const double cx = mx + sign * h * ux, cy = my + sign * h * uy;
        const double a1 = std::atan2(y1 - cy, x1 - cx);
        const double a2 = std::atan2(y2 - cy, x2 - cx);
        double span_pos = std::fmod(a2 - a1 + 4.0 * pi, 2.0 * pi);
        const double traversed =
            arc.sweep == 1 ? span_pos : 2.0 * pi - span_pos;
        if (traversed <= pi + 1e-9)
            return {cx, cy};
    }
    FAIL("no candidate center matches the sweep direction");
    return {0.0, 0.0};
}

} // namespace

TEST_CASE("geodesic arcs meet the unit circle at right angles", "[render]") {
    const SurfaceParams sp = surface_params(2);
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> radius(0.0, 0.92);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    const auto random_point = [&] {
        const double r = radius(rng), t = angle(rng);
        return DiskPoint(r * std::cos(t), r * std::sin(t));
    };
    int curved = 0;
    for (int i = 0; i < 200; ++i) {
        const DiskPoint p = random_point();
        const DiskPoint q = random_point();
        const GeodesicArc arc = geodesic_arc(p, q);
        if (arc.straight)
            continue;
        ++curved;
        CHECK(std::abs(arc.cx * arc.cx + arc.cy * arc.cy -
                       arc.radius * arc.radius - 1.0) < 1e-6);
        // The hyperbolic midpoint lies on the drawn circle, strictly between
        // the endpoints along the minor arc.
        const DiskPoint m = hyperbolic_midpoint(p, q);
        CHECK(std::abs(std::hypot(m.re() - arc.cx, m.im() - arc.cy) -
                       arc.radius) < 1e-9);
        const double ap = std::atan2(p.im() - arc.cy, p.re() - arc.cx);
        const double aq = std::atan2(q.im() - arc.cy, q.re() - arc.cx);
        const double am = std::atan2(m.im() - arc.cy, m.re() - arc.cx);
        const double delta = std::remainder(aq - ap, 2.0 * pi);
        const double tm = std::remainder(am - ap, 2.0 * pi) / delta;
        CHECK(tm > 0.0);
        CHECK(tm < 1.0);
        // The sweep flag selects exactly the circle just verified.
        const auto [ccx, ccy] = svg_chosen_center(p, q, arc);
        CHECK(std::abs(ccx - detail::svg_x(arc.cx)) < 1e-5);
        CHECK(std::abs(ccy - detail::svg_y(arc.cy)) < 1e-5);
    }
    CHECK(curved > 150);
    // Polygon sides are never collinear with the origin.
    for (int k = 0; k < sp.side_count(); ++k) {
        const DiskPoint& p = sp.vertices[static_cast<std::size_t>(k)];
        const DiskPoint& q =
            sp.vertices[static_cast<std::size_t>((k + 1) % sp.side_count())];
        const GeodesicArc arc = geodesic_arc(p, q);
        REQUIRE_FALSE(arc.straight);
        CHECK(std::abs(arc.cx * arc.cx + arc.cy * arc.cy -
                       arc.radius * arc.radius - 1.0) < 1e-6);
    }
    // Diameters degenerate to straight chords.
    CHECK(geodesic_arc(DiskPoint(0.4, 0.2), DiskPoint(-0.4, -0.2)).straight);
    CHECK(geodesic_arc(DiskPoint(), DiskPoint(0.3, 0.5)).straight);
}

TEST_CASE("tessellation svg carries the expected element counts", "[render]") {
    const SurfaceParams sp = surface_params(2);
    const TranslateBall ball = enumerate_ball(
        sp, std::max(sp.side_length + 0.5, sp.circumradius), BallOptions{});
    const std::string depth0 = render_tessellation_svg(sp, ball, 0, false);
    CHECK(count_occurrences(depth0, "<path ") == 8);
    CHECK(count_occurrences(depth0, "<circle ") == 1);
    CHECK(depth0.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
    const std::string depth1 = render_tessellation_svg(sp, ball, 1, false);
    CHECK(count_occurrences(depth1, "class=\"cell\"") == 9);
    const std::string dual0 = render_tessellation_svg(sp, ball, 0, true);
    CHECK(count_occurrences(dual0, "class=\"dual\"") == 8);
    CHECK(render_tessellation_svg(sp, ball, 0, false) == depth0);
    CHECK_THROWS_AS(render_tessellation_svg(sp, ball, -1, false),
                    std::invalid_argument);
}

// ---------------------------------------------------------------------------
// The command-line front end, in process.
// ---------------------------------------------------------------------------

TEST_CASE("cli exit codes separate success, usage, and resource errors",
          "[cli]") {
    CHECK(run_captured({"params"}).first == 0);
    CHECK(run_captured({"params", "--genus", "3"}).first == 0);
    CHECK(run_captured({"--help"}).first == 0);
    CHECK(run_captured({"d0", "--z", "0.3,0.2"}).first == 0);
    CHECK(run_captured({"dv", "--z", "0.25"}).first == 0);

    CHECK(run_captured({}).first == 2);
    CHECK(run_captured({"frobnicate"}).first == 2);
    CHECK(run_captured({"params", "--bogus"}).first == 2);
    CHECK(run_captured({"params", "--genus", "1"}).first == 2);
    CHECK(run_captured({"d0", "--z", "junk"}).first == 2);

    // A ball too small for the witness search is a resource failure.
    CHECK(run_captured({"distance", "--cutoff", "3.0", "--z", "0", "--w",
                        "0.1,0.1"}).first == 3);
    CHECK(run_captured({"tessellate", "--depth", "0", "--out",
                        "/nonexistent/dir/t.svg"}).first == 3);
}

TEST_CASE("cli distance agrees with the library on the marked pair", "[cli]") {
    const SurfaceParams sp = surface_params(2);
    char w_text[64];
    std::snprintf(w_text, sizeof w_text, "%.17g,%.17g",
                  sp.vertices[1].re(), sp.vertices[1].im());
    const auto [code, text] = run_captured({"distance", "--z", "0", "--w",
                                            w_text});
    REQUIRE(code == 0);
    CHECK(std::stod(text) == Catch::Approx(sp.circumradius).margin(1e-9));
}

TEST_CASE("cli params prints the frozen constants", "[cli]") {
    const auto [code, text] = run_captured({"params"});
    REQUIRE(code == 0);
    CHECK(text.find("2.448452447678") != std::string::npos); // circumradius
    CHECK(text.find("3.057141838962") != std::string::npos); // side length
}

TEST_CASE("cli verify runs are reproducible modulo timing", "[cli]") {
    const std::string p1 = "/tmp/bolza_cli_verify_1.json";
    const std::string p2 = "/tmp/bolza_cli_verify_2.json";
    const std::vector<std::string> base = {"verify",    "--genus", "2",
                                           "--grid",    "16",      "--samples",
                                           "50",        "--seed",  "3",
                                           "--format",  "json"};
    std::vector<std::string> run1 = base;
    run1.push_back("--out");
    run1.push_back(p1);
    std::vector<std::string> run2 = base;
    run2.push_back("--out");
    run2.push_back(p2);
    REQUIRE(run_captured(run1).first == 0);
    REQUIRE(run_captured(run2).first == 0);
    nlohmann::ordered_json j1 = nlohmann::ordered_json::parse(read_file(p1));
    nlohmann::ordered_json j2 = nlohmann::ordered_json::parse(read_file(p2));
    std::remove(p1.c_str());
    std::remove(p2.c_str());
    for (nlohmann::ordered_json* j : {&j1, &j2})
        for (auto& check : (*j)["checks"])
            check["seconds"] = 0.0;
    CHECK(j1.dump(2) == j2.dump(2));
    // The twelve checks arrive in the frozen order and all pass.
    REQUIRE(j1["checks"].size() == 12);
    CHECK(j1["checks"][0]["name"] == "theorem2");
    CHECK(j1["checks"][11]["name"] == "monotonicity");
    for (const auto& check : j1["checks"])
        CHECK(check["pass"].get<bool>());
    // The echoed cutoff is the resolved default, not the sentinel.
    CHECK(j1["config"]["cutoff"].get<double>() > 9.0);
}

TEST_CASE("cli verify check filter keeps only the named checks", "[cli]") {
    const std::string path = "/tmp/bolza_cli_subset.json";
    const auto [code, text] = run_captured(
        {"verify", "--grid", "16", "--samples", "50", "--check", "systole",
         "--check", "monotonicity", "--out", path});
    REQUIRE(code == 0);
    const nlohmann::ordered_json j =
        nlohmann::ordered_json::parse(read_file(path));
    std::remove(path.c_str());
    REQUIRE(j["checks"].size() == 2);
    CHECK(j["checks"][0]["name"] == "systole");
    CHECK(j["checks"][1]["name"] == "monotonicity");
    CHECK(run_captured({"verify", "--grid", "16", "--samples", "50",
                        "--check", "nonsense"}).first == 2);
}

TEST_CASE("cli tessellate writes the svg to the requested path", "[cli]") {
    const std::string path = "/tmp/bolza_cli_tessellation.svg";
    REQUIRE(run_captured({"tessellate", "--depth", "0", "--out", path}).first ==
            0);
    const std::string svg = read_file(path);
    std::remove(path.c_str());
    CHECK(count_occurrences(svg, "<path ") == 8);
    CHECK(count_occurrences(svg, "<circle ") == 1);
    // Without --out the drawing goes to the stream.
    const auto [code, text] = run_captured({"tessellate", "--depth", "0"});
    REQUIRE(code == 0);
    CHECK(text == svg);
}
