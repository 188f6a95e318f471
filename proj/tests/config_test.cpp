#include <sstream>

#include "doctest.h"
#include "experiment.hpp"
#include "reproduce.hpp"

using namespace cachenet;
using namespace cachenet::cli;

TEST_CASE("the built-in scenario parses and resolves") {
    RawConfig raw = parse_raw_config(default_config_text(), "<built-in>");
    ExperimentSpec spec = build_spec(raw);
    CHECK(spec.arrival_rate == 0.2);
    CHECK(spec.tx_prob == 0.9);
    CHECK(spec.num_replications == 20);
    REQUIRE(spec.catalog.has_value());
    CHECK(spec.catalog->user_capacity == 200);

    ScenarioParams params = spec.resolve_params();
    CHECK(params.external_request_prob == doctest::Approx(0.8647193064031946).epsilon(1e-10));
    CHECK(params.helper_hit_prob == doctest::Approx(0.30791204154846313).epsilon(1e-10));
    CHECK(params.links.p_sd_s == doctest::Approx(0.9394130628134758).epsilon(1e-12));
}

TEST_CASE("parse diagnostics carry the source location") {
    auto expect_error = [](const std::string& text, const std::string& fragment) {
        try {
            build_spec(parse_raw_config(text, "test.cfg"));
            FAIL("expected ConfigError for: ", text);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    expect_error("[traffic]\narrival_rate 0.2\n", "test.cfg:2");
    expect_error("[traffic]\narrival_rate = abc\n", "cannot parse 'abc'");
    expect_error("[traffic]\nno_such_key = 1\n", "unknown key 'no_such_key'");
    expect_error("arrival_rate = 0.2\n", "outside any section");
    expect_error("[catalog]\narrival_rate = 0.2\n", "belongs to section [traffic]");
}

TEST_CASE("derived and explicit probabilities cannot be mixed") {
    std::string text = default_config_text();
    RawConfig raw = parse_raw_config(text, "<built-in>");
    apply_override(raw, "external_request_prob", "0.9");
    apply_override(raw, "helper_hit_prob", "0.3");
    CHECK_THROWS_AS(build_spec(raw), ConfigError);
}

TEST_CASE("explicit link probabilities replace the geometry") {
    std::string text = R"(
[links]
p_sd_s = 0.9
p_sd_s_dc = 0.5
p_su_s = 0.95
p_dc_dc = 0.9
p_dc_s_dc = 0.4
[traffic]
arrival_rate = 0.1
tx_prob = 0.5
helper_assist_prob = 0.5
dc_availability = 0.7
external_request_prob = 0.8
helper_hit_prob = 0.3
)";
    ExperimentSpec spec = build_spec(parse_raw_config(text, "test.cfg"));
    ScenarioParams params = spec.resolve_params();
    CHECK(params.links.p_sd_s == 0.9);
    CHECK(params.external_request_prob == 0.8);
}

TEST_CASE("overrides replace parsed values and reject unknown keys") {
    RawConfig raw = parse_raw_config(default_config_text(), "<built-in>");
    apply_override(raw, "arrival_rate", "0.35");
    apply_override(raw, "request_model", "persistent");
    ExperimentSpec spec = build_spec(raw);
    CHECK(spec.arrival_rate == 0.35);
    CHECK(spec.request_model == RequestModel::persistent);
    CHECK_THROWS_AS(apply_override(raw, "bogus", "1"), ConfigError);
}

TEST_CASE("sweep ranges expand inclusively") {
    RawConfig raw = parse_raw_config(default_config_text(), "<built-in>");
    apply_override(raw, "axis", "lambda");
    apply_override(raw, "start", "0.1");
    apply_override(raw, "stop", "0.3");
    apply_override(raw, "step", "0.1");
    ExperimentSpec spec = build_spec(raw);
    auto points = spec.sweep.points();
    REQUIRE(points.size() == 3);
    CHECK(points[0] == doctest::Approx(0.1));
    CHECK(points[2] == doctest::Approx(0.3));
}

TEST_CASE("explicit sweep values win over the range") {
    RawConfig raw = parse_raw_config(default_config_text(), "<built-in>");
    apply_override(raw, "axis", "alpha");
    apply_override(raw, "values", "0.3, 0.7, 1.0");
    ExperimentSpec spec = build_spec(raw);
    auto points = spec.sweep.points();
    REQUIRE(points.size() == 3);
    CHECK(points[1] == 0.7);
}

TEST_CASE("numbers are printed with six significant digits") {
    CHECK(csv_number(0.123456789) == "0.123457");
    CHECK(csv_number(1234567.0) == "1.23457e+06");
    CHECK(csv_number(0.5) == "0.5");
    CHECK(csv_number(kUnreachableDelay) == "unreachable");
}

TEST_CASE("analyze emits one row per sweep point") {
    RawConfig raw = parse_raw_config(default_config_text(), "<built-in>");
    apply_override(raw, "axis", "lambda");
    apply_override(raw, "values", "0.1, 0.2");
    ExperimentSpec spec = build_spec(raw);

    std::ostringstream out;
    run_analyze(spec, out);
    std::istringstream lines(out.str());
    std::string line;
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);  // header + two points
    CHECK(out.str().find("lambda,") == 0);
}

TEST_CASE("a zero-traffic scenario analyzes to a zero-throughput row") {
    RawConfig raw = parse_raw_config(default_config_text(), "<built-in>");
    apply_override(raw, "arrival_rate", "0");
    apply_override(raw, "external_request_prob", "0");
    apply_override(raw, "helper_hit_prob", "0");
    // the explicit probabilities replace the catalog wholesale
    raw.sections.erase("catalog");
    ExperimentSpec spec = build_spec(raw);

    std::ostringstream out;
    run_analyze(spec, out);
    CHECK(out.str().find(",0,") != std::string::npos);
    ScenarioParams params = spec.resolve_params();
    CHECK(analyze(params, spec.weight).throughput_s == 0.0);
    CHECK(analyze(params, spec.weight).throughput_u == 0.0);
}

TEST_CASE("reproduce target names are validated") {
    RawConfig raw = parse_raw_config(default_config_text(), "<built-in>");
    ExperimentSpec spec = build_spec(raw);
    std::ostringstream csv, report;
    CHECK_THROWS_AS(run_reproduce("table99", spec, csv, report), ConfigError);
    CHECK(reproduce_targets().size() == 15);
}
