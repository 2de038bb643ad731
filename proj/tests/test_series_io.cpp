// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "blockdpp/series_io.hpp"

using namespace blockdpp;

namespace {

StatSeries demo_series() {
    StatSeries s;
    s.label = "demo";
    s.x_unit = "position";
    s.x = {0.0, 1.0, 2.0};
    s.y = {1.5, -0.25, 3.0};
    s.meta["command"] = "density";
    s.meta["note"] = "a,quoted \"field\"";
    return s;
}

}  // namespace

TEST_CASE("csv quoting follows RFC 4180") {
    CHECK(csv_quote("plain") == "plain");
    CHECK(csv_quote("with,comma") == "\"with,comma\"");
    CHECK(csv_quote("with \"quote\"") == "\"with \"\"quote\"\"\"");
    CHECK(csv_quote("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("csv emission is deterministic and carries metadata") {
    const std::vector<StatSeries> series{demo_series()};
    std::ostringstream a, b;
    write_series_csv(a, series);
    write_series_csv(b, series);
    CHECK(a.str() == b.str());
    const std::string text = a.str();
    CHECK(text.find("# blockdpp") == 0);
    CHECK(text.find("# command = density") != std::string::npos);
    CHECK(text.find("x (position),demo") != std::string::npos);
    CHECK(text.find("0,1.5") != std::string::npos);
}

TEST_CASE("json emission parses back") {
    const std::vector<StatSeries> series{demo_series()};
    std::ostringstream os;
    write_series_json(os, series);
    const auto parsed = nlohmann::json::parse(os.str());
    CHECK(parsed["series"].size() == 1);
    CHECK(parsed["series"][0]["label"] == "demo");
    CHECK(parsed["series"][0]["y"][2] == 3.0);
    CHECK(parsed["series"][0]["meta"]["note"] == "a,quoted \"field\"");
}

TEST_CASE("sample dumps in both formats") {
    PointSample s;
    s.replicate_index = 7;
    s.positions = {-1.0, 0.5};
    const std::vector<PointSample> samples{s};
    std::ostringstream csv;
    write_samples_csv(csv, samples, {{"seed", "9"}});
    CHECK(csv.str().find("replicate_index,positions...") != std::string::npos);
    CHECK(csv.str().find("7,-1,0.5") != std::string::npos);

    std::ostringstream js;
    write_samples_json(js, samples, {{"seed", "9"}});
    const auto parsed = nlohmann::json::parse(js.str());
    CHECK(parsed["positions"][0].size() == 2);
    CHECK(parsed["meta"]["seed"] == "9");
    CHECK(parsed["domain"] == "line");
}

TEST_CASE("series validation is enforced on write") {
    StatSeries bad = demo_series();
    bad.y.pop_back();
    std::ostringstream os;
    const std::vector<StatSeries> series{bad};
    CHECK_THROWS_AS(write_series_csv(os, series), std::invalid_argument);
}
