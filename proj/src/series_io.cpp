// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include "blockdpp/series_io.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "blockdpp/version.hpp"

namespace blockdpp {

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_series_csv(std::ostream& os, std::span<const StatSeries> series) {
    for (const StatSeries& s : series) s.validate();
    os << "# blockdpp " << kVersion << "\n";
    std::map<std::string, std::string> merged;
    for (const StatSeries& s : series) merged.insert(s.meta.begin(), s.meta.end());
    for (const auto& [k, v] : merged) os << "# " << k << " = " << v << "\n";

    os << csv_quote(series.empty() ? "x" : "x (" + series.front().x_unit + ")");
    for (const StatSeries& s : series) {
        os << "," << csv_quote(s.label);
        if (!s.yerr.empty()) os << "," << csv_quote(s.label + "_stderr");
    }
    os << "\n";

    const std::size_t rows = series.empty() ? 0 : series.front().x.size();
    for (std::size_t i = 0; i < rows; ++i) {
        os << format_double(series.front().x[i]);
        for (const StatSeries& s : series) {
            os << "," << format_double(i < s.y.size() ? s.y[i] : 0.0);
            if (!s.yerr.empty()) os << "," << format_double(s.yerr[i]);
        }
        os << "\n";
    }
}

void write_series_json(std::ostream& os, std::span<const StatSeries> series) {
    for (const StatSeries& s : series) s.validate();
    nlohmann::json root;
    root["version"] = kVersion;
    for (const StatSeries& s : series) {
        nlohmann::json j;
        j["label"] = s.label;
        j["x_unit"] = s.x_unit;
        j["x"] = s.x;
        j["y"] = s.y;
        if (!s.yerr.empty()) j["yerr"] = s.yerr;
        j["meta"] = s.meta;
        root["series"].push_back(std::move(j));
    }
    os << root.dump(2) << "\n";
}

void write_samples_csv(std::ostream& os, std::span<const PointSample> samples,
                       const std::vector<std::pair<std::string, std::string>>& meta) {
    os << "# blockdpp " << kVersion << "\n";
    for (const auto& [k, v] : meta) os << "# " << k << " = " << v << "\n";
    os << "replicate_index,positions...\n";
    for (const PointSample& s : samples) {
        os << s.replicate_index;
        for (double p : s.positions) os << "," << format_double(p);
        os << "\n";
    }
}

void write_samples_json(std::ostream& os, std::span<const PointSample> samples,
                        const std::vector<std::pair<std::string, std::string>>& meta) {
    nlohmann::json root;
    root["version"] = kVersion;
    for (const auto& [k, v] : meta) root["meta"][k] = v;
    nlohmann::json reps = nlohmann::json::array();
    nlohmann::json positions = nlohmann::json::array();
    for (const PointSample& s : samples) {
        reps.push_back(s.replicate_index);
        positions.push_back(s.positions);
    }
    root["replicate_index"] = std::move(reps);
    root["positions"] = std::move(positions);
    root["domain"] =
        (!samples.empty() && samples.front().domain == SampleDomain::circle) ? "circle" : "line";
    os << root.dump(2) << "\n";
}

}  // namespace blockdpp
