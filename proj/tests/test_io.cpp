#include <catch2/catch.hpp>

#include "channelkit/json_io.hpp"
#include "channelkit/rng.hpp"
#include "channelkit/scenario.hpp"

#include "worked_instances.hpp"

using namespace channelkit;

TEST_CASE("ket rendering") {
    CHECK(render_ket(worked::mood_prior()) == "1/8|p> + 3/8|n> + 1/2|o>");
    CHECK(render_ket(distribution<rational>::point(space({"a", "b"}), "a")) == "1|a>");
    CHECK(render_rows(worked::remark_channel()) ==
          "c(0) = 1/9|a> + 2/3|b> + 2/9|c>\n"
          "c(1) = 7/25|a> + 7/25|b> + 11/25|c>\n");
    CHECK(render_formal_sum(worked::remark_evidence()) == "1/2*1_a + 1/3*1_b + 1/6*1_c");
}

TEST_CASE("fixed-point rendering rounds half to even") {
    CHECK(format_fixed(rational(299, 4000), 4) == "0.0748");   // 0.07475 ties up to even
    CHECK(format_fixed(rational(1, 8), 4) == "0.1250");
    CHECK(format_fixed(rational(25, 10000), 3) == "0.002");    // 0.0025 ties down to even
    CHECK(format_fixed(rational(35, 10000), 3) == "0.004");    // 0.0035 ties up to even
    CHECK(format_fixed(rational(77, 299), 4) == "0.2575");
    CHECK(format_fixed(rational(0), 4) == "0.0000");
    CHECK(format_fixed(rational(3), 2) == "3.00");
    CHECK(format_fixed(rational(9999, 10000), 3) == "1.000");
    CHECK(format_fixed(rational(-1, 8), 3) == "-0.125");
    CHECK(format_fixed(rational(-1, 80000), 3) == "0.000");
    CHECK(format_fixed(0.125, 4) == "0.1250");
}

TEST_CASE("json round trips are exact") {
    SECTION("worked instances") {
        auto d = worked::mood_prior();
        CHECK(distribution_from_json<rational>(
                  parse_json_text(distribution_to_json(d).dump())) == d);
        auto c = worked::mood_channel();
        CHECK(channel_from_json<rational>(parse_json_text(channel_to_json(c).dump())) == c);
        auto q = worked::grade_evidence();
        CHECK(predicate_from_json<rational>(parse_json_text(predicate_to_json(q).dump())) ==
              q);
    }
    SECTION("random instances on both backends") {
        splitmix64 rng(51);
        for (int t = 0; t < 50; ++t) {
            space x = gen::random_space(rng, 2, 6, "x");
            auto d = gen::random_distribution<rational>(rng, x, false);
            CHECK(distribution_from_json<rational>(
                      parse_json_text(distribution_to_json(d).dump())) == d);
            auto fd = gen::random_distribution<double>(rng, x, false);
            CHECK(distribution_from_json<double>(
                      parse_json_text(distribution_to_json(fd).dump())) == fd);
        }
    }
}

TEST_CASE("json validation errors carry field paths") {
    SECTION("missing field") {
        try {
            distribution_from_json<rational>(parse_json_text(R"({"space": ["a"]})"), "prior");
            FAIL("expected validation_error");
        } catch (const validation_error& e) {
            CHECK(e.field() == "prior.weights");
        }
    }
    SECTION("label outside the space") {
        try {
            distribution_from_json<rational>(
                parse_json_text(R"({"space": ["a"], "weights": {"b": "1"}})"), "prior");
            FAIL("expected validation_error");
        } catch (const validation_error& e) {
            CHECK(e.field() == "prior.weights.b");
        }
    }
    SECTION("malformed scalar") {
        CHECK_THROWS_AS(distribution_from_json<rational>(parse_json_text(
                            R"({"space": ["a"], "weights": {"a": "x/y"}})")),
                        validation_error);
    }
    SECTION("weights that do not sum to one") {
        CHECK_THROWS_AS(distribution_from_json<rational>(parse_json_text(
                            R"({"space": ["a", "b"], "weights": {"a": "1/2", "b": "1/4"}})")),
                        validation_error);
    }
    SECTION("broken json text") {
        CHECK_THROWS_AS(parse_json_text("{not json"), parse_error);
    }
    SECTION("channel row for an unknown input") {
        auto text = R"({"domain": ["u"], "codomain": ["a"],
                        "rows": {"u": {"a": "1"}, "v": {"a": "1"}}})";
        CHECK_THROWS_AS(channel_from_json<rational>(parse_json_text(text)),
                        validation_error);
    }
}

TEST_CASE("kind detection and backend scanning") {
    CHECK(detect_kind(parse_json_text(R"({"weights": {}, "space": []})")) ==
          object_kind::distribution);
    CHECK(detect_kind(parse_json_text(R"({"values": {}, "space": []})")) ==
          object_kind::predicate);
    CHECK(detect_kind(parse_json_text(R"({"rows": {}, "domain": [], "codomain": []})")) ==
          object_kind::channel);
    CHECK(detect_kind(builtin_scenario("mood-marks")) == object_kind::scenario);

    auto scan = scan_document(builtin_scenario("mood-marks"));
    CHECK(scan.has_fraction);
    CHECK_FALSE(scan.has_decimal);

    auto decimal = scan_document(parse_json_text(
        R"({"space": ["a", "b"], "weights": {"a": "0.25", "b": "0.75"}})"));
    CHECK(decimal.has_decimal);
    CHECK_FALSE(decimal.has_fraction);

    // Labels with dots do not influence the scan.
    auto tricky = scan_document(parse_json_text(
        R"({"space": ["v2.5", "b"], "weights": {"v2.5": "1/2", "b": "1/2"}})"));
    CHECK_FALSE(tricky.has_decimal);
    CHECK(tricky.has_fraction);
}

TEST_CASE("backend decision") {
    backend_scan fractions{true, false};
    backend_scan decimals{false, true};
    backend_scan neutral{false, false};
    backend_scan mixed{true, true};

    CHECK(decide_backend(fractions, std::nullopt) == backend_kind::rational_backend);
    CHECK(decide_backend(decimals, std::nullopt) == backend_kind::float_backend);
    CHECK(decide_backend(neutral, std::nullopt) == backend_kind::rational_backend);
    CHECK(decide_backend(fractions, std::string("float")) == backend_kind::float_backend);
    CHECK(decide_backend(neutral, std::string("float")) == backend_kind::float_backend);
    CHECK_THROWS_AS(decide_backend(mixed, std::nullopt), validation_error);
    CHECK_THROWS_AS(decide_backend(neutral, std::string("decimal")), validation_error);
}

TEST_CASE("scenario validation") {
    SECTION("built-ins parse") {
        for (const auto& name : builtin_scenario_names()) {
            auto s = scenario_from_json<rational>(builtin_scenario(name));
            CHECK(s.name == name);
        }
    }
    SECTION("missing evidence") {
        auto j = builtin_scenario("mood-marks");
        j.erase("evidence_predicate");
        j.erase("evidence_state");
        CHECK_THROWS_AS(scenario_from_json<rational>(j), validation_error);
    }
    SECTION("rule without matching evidence") {
        auto j = builtin_scenario("mood-marks");
        j.erase("evidence_predicate");
        j["rule"] = "pearl";
        CHECK_THROWS_AS(scenario_from_json<rational>(j), validation_error);
    }
    SECTION("evidence on the wrong space") {
        auto j = builtin_scenario("mood-marks");
        j["evidence_predicate"] = {{"space", {"p", "n", "o"}},
                                   {"values", {{"p", "1/2"}}}};
        CHECK_THROWS_AS(scenario_from_json<rational>(j), validation_error);
    }
    SECTION("unknown focus label") {
        auto j = builtin_scenario("mood-marks");
        j["focus"] = {"nope"};
        CHECK_THROWS_AS(scenario_from_json<rational>(j), validation_error);
    }
    SECTION("unknown rule") {
        auto j = builtin_scenario("mood-marks");
        j["rule"] = "bayes";
        CHECK_THROWS_AS(scenario_from_json<rational>(j), validation_error);
    }
    SECTION("point evidence stands in for both forms") {
        auto j = builtin_scenario("mood-marks");
        j.erase("evidence_predicate");
        j.erase("evidence_state");
        j["evidence_point"] = "5";
        auto s = scenario_from_json<rational>(j);
        auto rep = run_scenario(s);
        REQUIRE(rep.distributions.size() >= 4);
        // Point-Jeffrey equals the dagger row at 5.
        auto row = jeffrey_point_update(s.prior, s.chan, "5");
        const auto& dist = rep.distributions.back();
        for (std::size_t i = 0; i < row.size(); ++i)
            CHECK(dist.exact[i] == scalar_traits<rational>::render(row.weight(i)));
    }
}

TEST_CASE("reports carry exact fractions and deterministic output") {
    auto s = scenario_from_json<rational>(builtin_scenario("mood-marks"));
    auto rep = run_scenario(s);

    SECTION("table holds the figure values") {
        auto table = render_report(rep, report_format::table);
        CHECK(table.find("0.2575") != std::string::npos);
        CHECK(table.find("0.5418") != std::string::npos);
        CHECK(table.find("0.2007") != std::string::npos);
        CHECK(table.find("0.2486") != std::string::npos);
        CHECK(table.find("0.5025") != std::string::npos);
        CHECK(table.find("0.2489") != std::string::npos);
        CHECK(table.find("77/299") != std::string::npos);
    }
    SECTION("json carries fraction strings") {
        auto text = render_report(rep, report_format::json_format);
        CHECK(text.find("\"77/299\"") != std::string::npos);
        CHECK(text.find("\"299/4000\"") != std::string::npos);
    }
    SECTION("csv is byte-identical across runs") {
        auto again = run_scenario(scenario_from_json<rational>(builtin_scenario("mood-marks")));
        CHECK(render_report(rep, report_format::csv) ==
              render_report(again, report_format::csv));
        CHECK(render_report(rep, report_format::json_format) ==
              render_report(again, report_format::json_format));
    }
}
