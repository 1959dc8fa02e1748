#pragma once

#include "bolza/verify.hpp"
#include "bolza/group_ball.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

// Serializable run artifacts: the run configuration, the derived surface
// constants, and the verification check list, exportable as JSON or CSV with
// deterministic bytes for identical documents.

namespace bolza {

inline constexpr const char* report_version = "1.0.0";

/// Settings of one CLI run, echoed into every report.
struct RunConfig {
    int genus = 2;
    double ball_cutoff = 0.0; // 0 = default (four circumradii)
    int grid_n = 100;
    int samples_n = 200;
    std::uint64_t seed = 0;

    double resolved_cutoff(const SurfaceParams& sp) const {
        return ball_cutoff > 0.0 ? ball_cutoff : 4.0 * sp.circumradius;
    }
};

/// A full run artifact: version, configuration echo, derived constants, and
/// the executed checks.
struct ReportDocument {
    std::string version = report_version;
    RunConfig config;
    double circumradius = 0.0;
    double side_length = 0.0;
    double circumradius_prime = 0.0;
    double side_prime = 0.0;
    double area = 0.0;
    double systole_length = 0.0;
    std::vector<VerificationReport> checks;

    bool all_checks_pass() const {
        for (const VerificationReport& r : checks)
            if (!r.pass)
                return false;
        return true;
    }
};

inline ReportDocument make_report(const SurfaceParams& sp,
                                  const RunConfig& config,
                                  double systole_length,
                                  std::vector<VerificationReport> checks) {
    ReportDocument doc;
    doc.config = config;
    doc.circumradius = sp.circumradius;
    doc.side_length = sp.side_length;
    doc.circumradius_prime = sp.circumradius_prime;
    doc.side_prime = sp.side_prime;
    doc.area = sp.area;
    doc.systole_length = systole_length;
    doc.checks = std::move(checks);
    return doc;
}

inline nlohmann::ordered_json to_json(const ReportDocument& doc) {
    nlohmann::ordered_json j;
    j["version"] = doc.version;
    j["config"] = {{"genus", doc.config.genus},
                   {"cutoff", doc.config.ball_cutoff},
                   {"grid", doc.config.grid_n},
                   {"samples", doc.config.samples_n},
                   {"seed", doc.config.seed}};
    j["constants"] = {{"circumradius", doc.circumradius},
                      {"side_length", doc.side_length},
                      {"circumradius_prime", doc.circumradius_prime},
                      {"side_prime", doc.side_prime},
                      {"area", doc.area},
                      {"systole", doc.systole_length}};
    j["checks"] = nlohmann::ordered_json::array();
    for (const VerificationReport& r : doc.checks)
        j["checks"].push_back({{"name", r.name},
                               {"pass", r.pass},
                               {"margin", r.margin},
                               {"samples", r.samples},
                               {"seconds", r.seconds}});
    return j;
}

inline std::string to_json_string(const ReportDocument& doc) {
    return to_json(doc).dump(2) + "\n";
}

/// Inverse of to_json (used for round-trip checks).
inline ReportDocument report_from_json(const nlohmann::ordered_json& j) {
    ReportDocument doc;
    doc.version = j.at("version").get<std::string>();
    const auto& c = j.at("config");
    doc.config.genus = c.at("genus").get<int>();
    doc.config.ball_cutoff = c.at("cutoff").get<double>();
    doc.config.grid_n = c.at("grid").get<int>();
    doc.config.samples_n = c.at("samples").get<int>();
    doc.config.seed = c.at("seed").get<std::uint64_t>();
    const auto& k = j.at("constants");
    doc.circumradius = k.at("circumradius").get<double>();
    doc.side_length = k.at("side_length").get<double>();
    doc.circumradius_prime = k.at("circumradius_prime").get<double>();
    doc.side_prime = k.at("side_prime").get<double>();
    doc.area = k.at("area").get<double>();
    doc.systole_length = k.at("systole").get<double>();
    for (const auto& r : j.at("checks")) {
        VerificationReport rep;
        rep.name = r.at("name").get<std::string>();
        rep.pass = r.at("pass").get<bool>();
        rep.margin = r.at("margin").get<double>();
        rep.samples = r.at("samples").get<long long>();
        rep.seconds = r.at("seconds").get<double>();
        doc.checks.push_back(std::move(rep));
    }
    return doc;
}

inline std::string to_csv_string(const ReportDocument& doc) {
    std::string out = "name,pass,margin,samples,seconds\n";
    char line[256];
    for (const VerificationReport& r : doc.checks) {
        std::snprintf(line, sizeof line, "%s,%s,%.17g,%lld,%.17g\n",
                      r.name.c_str(), r.pass ? "true" : "false", r.margin,
                      r.samples, r.seconds);
        out += line;
    }
    return out;
}

/// Writes the document in the named format ("json" or "csv").
inline void export_report(const ReportDocument& doc, const std::string& path,
                          const std::string& format) {
    std::string payload;
    if (format == "json")
        payload = to_json_string(doc);
    else if (format == "csv")
        payload = to_csv_string(doc);
    else
        throw std::invalid_argument("export_report: unknown format " + format);
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("export_report: cannot open " + path);
    file.write(payload.data(),
               static_cast<std::streamsize>(payload.size()));
    if (!file)
        throw std::runtime_error("export_report: write failed on " + path);
}

} // namespace bolza
