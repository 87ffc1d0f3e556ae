#include "bvk/report.hpp"

#include <fstream>
#include <iostream>

#include <json.hpp>

#include "bvk/errors.hpp"

namespace bvk {

const char* const kReportSchemaVersion = "bvk-report-1";

namespace {

using OrderedJson = nlohmann::ordered_json;

OrderedJson report_to_json(const ResidualReport& r) {
    OrderedJson j;
    j["suite"] = r.suite;
    j["case_id"] = r.case_id;
    j["anchor"] = r.anchor;
    j["grid"] = r.grid;
    j["max_residual"] = r.max_residual;
    j["mean_residual"] = r.mean_residual;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["wall_ms"] = r.wall_ms;
    j["note"] = r.note;
    return j;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string reports_to_json(const std::vector<ResidualReport>& reports) {
    OrderedJson root;
    root["schema_version"] = kReportSchemaVersion;
    root["reports"] = OrderedJson::array();
    for (const auto& r : reports) root["reports"].push_back(report_to_json(r));
    return root.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<ResidualReport>& reports) {
    std::string out =
        "suite,case_id,anchor,grid,max_residual,mean_residual,tolerance,pass,wall_ms,note\n";
    for (const auto& r : reports) {
        OrderedJson nums = {r.max_residual, r.mean_residual, r.tolerance, r.wall_ms};
        out += csv_escape(r.suite) + "," + csv_escape(r.case_id) + "," + csv_escape(r.anchor) +
               "," + csv_escape(r.grid) + "," + nums[0].dump() + "," + nums[1].dump() + "," +
               nums[2].dump() + "," + (r.pass ? "true" : "false") + "," + nums[3].dump() + "," +
               csv_escape(r.note) + "\n";
    }
    return out;
}

std::vector<ResidualReport> reports_from_json(const std::string& text) {
    OrderedJson root = OrderedJson::parse(text);
    if (!root.contains("schema_version") || root["schema_version"] != kReportSchemaVersion)
        throw IoError("unexpected report schema version");
    std::vector<ResidualReport> out;
    for (const auto& j : root["reports"]) {
        ResidualReport r;
        r.suite = j.at("suite").get<std::string>();
        r.case_id = j.at("case_id").get<std::string>();
        r.anchor = j.at("anchor").get<std::string>();
        r.grid = j.at("grid").get<std::string>();
        r.max_residual = j.at("max_residual").get<double>();
        r.mean_residual = j.at("mean_residual").get<double>();
        r.tolerance = j.at("tolerance").get<double>();
        r.pass = j.at("pass").get<bool>();
        r.wall_ms = j.at("wall_ms").get<double>();
        r.note = j.at("note").get<std::string>();
        out.push_back(std::move(r));
    }
    return out;
}

void emit_report(const std::vector<ResidualReport>& reports, ReportFormat format,
                 const std::string& path) {
    std::string payload =
        format == ReportFormat::json ? reports_to_json(reports) : reports_to_csv(reports);
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    out << payload;
    if (!out.good()) throw IoError("failed writing output file: " + path);
}

}  // namespace bvk
