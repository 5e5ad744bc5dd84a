#include <catch2/catch.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "channelkit/cli.hpp"

using namespace channelkit;

namespace {

struct cli_result {
    int code = 0;
    std::string out;
    std::string err;
};

cli_result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::main(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << text;
    return path;
}

} // namespace

TEST_CASE("cli run of the built-in scenarios") {
    auto result = run_cli({"run", "mood-marks", "--rule", "both"});
    REQUIRE(result.code == 0);
    CHECK(result.out.find("0.2575") != std::string::npos);
    CHECK(result.out.find("0.5418") != std::string::npos);
    CHECK(result.out.find("0.2007") != std::string::npos);
    CHECK(result.out.find("0.2486") != std::string::npos);
    CHECK(result.out.find("0.5025") != std::string::npos);
    CHECK(result.out.find("0.2489") != std::string::npos);

    auto exclusivity = run_cli({"run", "exclusivity", "--rule", "both"});
    REQUIRE(exclusivity.code == 0);
    // Validity column 0.31074, 0.31079, 0.31019 at the table's 4 decimals,
    // divergence column 0.238, 0.240, 0.221.
    CHECK(exclusivity.out.find("validity_prior = 0.3107") != std::string::npos);
    CHECK(exclusivity.out.find("validity_after_pearl = 0.3108") != std::string::npos);
    CHECK(exclusivity.out.find("validity_after_jeffrey = 0.3102") != std::string::npos);
    CHECK(exclusivity.out.find("kl_prior = 0.2381") != std::string::npos);
    CHECK(exclusivity.out.find("kl_after_pearl = 0.2399") != std::string::npos);
    CHECK(exclusivity.out.find("kl_after_jeffrey = 0.2215") != std::string::npos);
}

TEST_CASE("cli truth evidence returns the prior unchanged") {
    auto result = run_cli({"run", "mood-marks", "--rule", "pearl", "--evidence", "truth"});
    REQUIRE(result.code == 0);
    CHECK(result.out.find("posterior_pearl = 1/8|p> + 3/8|n> + 1/2|o>") !=
          std::string::npos);
}

TEST_CASE("cli focus and prepare flags") {
    auto focus = run_cli({"run", "mood-marks", "--focus", "1,2,3"});
    REQUIRE(focus.code == 0);
    CHECK(focus.out.find("0.3033") != std::string::npos);
    CHECK(focus.out.find("0.2541") != std::string::npos);

    auto prepared = run_cli({"run", "mood-marks-prepare-pessimist"});
    REQUIRE(prepared.code == 0);
    CHECK(prepared.out.find("0.3525") != std::string::npos);
    CHECK(prepared.out.find("0.3392") != std::string::npos);

    auto optimist = run_cli({"run", "mood-marks-prepare-optimist"});
    REQUIRE(optimist.code == 0);
    CHECK(optimist.out.find("0.1581") != std::string::npos);
    CHECK(optimist.out.find("0.1549") != std::string::npos);

    // The built-in focus scenario matches the --focus flag on the plain one.
    auto builtin_focus = run_cli({"run", "mood-marks-focus"});
    REQUIRE(builtin_focus.code == 0);
    CHECK(builtin_focus.out.find("0.3033") != std::string::npos);
    CHECK(builtin_focus.out.find("0.2541") != std::string::npos);

    // Under the variant channel, both rules worsen total variation.
    auto tv = run_cli({"run", "exclusivity-tv"});
    REQUIRE(tv.code == 0);
    CHECK(tv.out.find("tv_prior = 0.3950") != std::string::npos);
    CHECK(tv.out.find("tv_after_pearl = 0.3952") != std::string::npos);
    CHECK(tv.out.find("tv_after_jeffrey = 0.3951") != std::string::npos);
}

TEST_CASE("cli formats") {
    auto js = run_cli({"run", "exclusivity", "--format", "json"});
    REQUIRE(js.code == 0);
    CHECK(js.out.find("\"425/839\"") != std::string::npos);

    auto csv1 = run_cli({"run", "exclusivity", "--format", "csv"});
    auto csv2 = run_cli({"run", "exclusivity", "--format", "csv"});
    REQUIRE(csv1.code == 0);
    CHECK(csv1.out == csv2.out);
    CHECK(csv1.out.rfind("kind,key,item,value,exact", 0) == 0);

    auto bad = run_cli({"run", "exclusivity", "--format", "yaml"});
    CHECK(bad.code != 0);
}

TEST_CASE("cli scenario files and the float backend") {
    auto path = write_temp("channelkit_test_scenario.json", R"({
      "name": "coin",
      "prior": {"space": ["h", "t"], "weights": {"h": "0.5", "t": "0.5"}},
      "channel": {"domain": ["h", "t"], "codomain": ["yes", "no"],
                  "rows": {"h": {"yes": "0.9", "no": "0.1"},
                           "t": {"yes": "0.2", "no": "0.8"}}},
      "evidence_state": {"space": ["yes", "no"], "weights": {"yes": "0.7", "no": "0.3"}},
      "rule": "jeffrey"
    })");
    auto result = run_cli({"run", path.string()});
    REQUIRE(result.code == 0);
    CHECK(result.out.find("backend:  float") != std::string::npos);
    CHECK(result.out.find("posterior_jeffrey") != std::string::npos);

    SECTION("mixed scalars are rejected") {
        auto mixed = write_temp("channelkit_test_mixed.json", R"({
          "name": "mixed",
          "prior": {"space": ["h", "t"], "weights": {"h": "1/2", "t": "0.5"}},
          "channel": {"domain": ["h", "t"], "codomain": ["a"],
                      "rows": {"h": {"a": "1"}, "t": {"a": "1"}}},
          "evidence_point": "a",
          "rule": "both"
        })");
        auto bad = run_cli({"run", mixed.string()});
        CHECK(bad.code == 1);
        CHECK(bad.err.find("fraction") != std::string::npos);
    }
    SECTION("validation errors name the field") {
        auto broken = write_temp("channelkit_test_broken.json", R"({
          "name": "broken",
          "prior": {"space": ["h", "t"], "weights": {"h": "2/3", "t": "2/3"}},
          "channel": {"domain": ["h", "t"], "codomain": ["a"],
                      "rows": {"h": {"a": "1"}, "t": {"a": "1"}}},
          "evidence_point": "a"
        })");
        auto bad = run_cli({"run", broken.string()});
        CHECK(bad.code == 1);
        CHECK(bad.err.find("prior") != std::string::npos);
    }
}

TEST_CASE("cli backend environment variable") {
    // Force the float backend for a fraction-only scenario.
    ::setenv("CHANNELKIT_BACKEND", "float", 1);
    auto result = run_cli({"run", "mood-marks"});
    ::unsetenv("CHANNELKIT_BACKEND");
    REQUIRE(result.code == 0);
    CHECK(result.out.find("backend:  float") != std::string::npos);
    CHECK(result.out.find("0.2575") != std::string::npos);

    auto flag = run_cli({"run", "mood-marks", "--backend", "float"});
    REQUIRE(flag.code == 0);
    CHECK(flag.out.find("backend:  float") != std::string::npos);
}

TEST_CASE("cli prepare flag matches the built-in preparation scenario") {
    auto pred = write_temp("channelkit_test_prepare.json", R"({
      "space": ["p", "n", "o"],
      "values": {"p": "7/10", "n": "1/2", "o": "3/10"}
    })");
    auto flagged = run_cli({"run", "mood-marks", "--prepare", pred.string()});
    auto builtin = run_cli({"run", "mood-marks-prepare-pessimist"});
    REQUIRE(flagged.code == 0);
    CHECK(flagged.out.find("0.3525") != std::string::npos);
    CHECK(flagged.out.find("0.3392") != std::string::npos);
    // Same posteriors as the built-in, modulo the scenario name line.
    auto strip_first = [](const std::string& s) { return s.substr(s.find('\n')); };
    CHECK(strip_first(flagged.out) == strip_first(builtin.out));
}

TEST_CASE("cli combines focus and preparation") {
    auto pred = write_temp("channelkit_test_prepare2.json", R"({
      "space": ["p", "n", "o"],
      "values": {"p": "7/10", "n": "1/2", "o": "3/10"}
    })");
    auto result =
        run_cli({"run", "mood-marks", "--focus", "1,2,3", "--prepare", pred.string()});
    REQUIRE(result.code == 0);
    CHECK(result.out.find("prepared_prior") != std::string::npos);
    CHECK(result.out.find("posterior_pearl") != std::string::npos);
    CHECK(result.out.find("posterior_jeffrey") != std::string::npos);
    CHECK(result.out.find("sharp(focus)") != std::string::npos);
}

TEST_CASE("cli rejects a rule without its evidence") {
    auto path = write_temp("channelkit_test_jeffrey_only.json", R"({
      "name": "jeffrey-only",
      "prior": {"space": ["h", "t"], "weights": {"h": "1/2", "t": "1/2"}},
      "channel": {"domain": ["h", "t"], "codomain": ["a", "b"],
                  "rows": {"h": {"a": "3/4", "b": "1/4"},
                           "t": {"a": "1/4", "b": "3/4"}}},
      "evidence_state": {"space": ["a", "b"], "weights": {"a": "1/3", "b": "2/3"}},
      "rule": "jeffrey"
    })");
    CHECK(run_cli({"run", path.string()}).code == 0);
    auto mismatched = run_cli({"run", path.string(), "--rule", "pearl"});
    CHECK(mismatched.code == 1);
    CHECK(mismatched.err.find("evidence predicate") != std::string::npos);
}

TEST_CASE("cli show refuses scenario files") {
    auto path = write_temp("channelkit_test_show_scenario.json",
                           builtin_scenario("exclusivity").dump());
    auto result = run_cli({"show", path.string()});
    CHECK(result.code == 1);
    CHECK(result.err.find("run") != std::string::npos);
}

TEST_CASE("cli verify trials override and seed reproducibility") {
    auto small = run_cli({"verify", "appendix", "--trials", "5", "--seed", "1"});
    CHECK(small.code == 0);
    CHECK(small.out.find("5 trials") != std::string::npos);
    auto again = run_cli({"verify", "appendix", "--trials", "5", "--seed", "1"});
    CHECK(again.out == small.out);
}

TEST_CASE("cli show") {
    auto dist = write_temp("channelkit_test_dist.json", R"({
      "space": ["p", "n", "o"],
      "weights": {"p": "1/8", "n": "3/8", "o": "1/2"}
    })");
    auto shown = run_cli({"show", dist.string()});
    REQUIRE(shown.code == 0);
    CHECK(shown.out == "1/8|p> + 3/8|n> + 1/2|o>\n");

    auto chan = write_temp("channelkit_test_chan.json", R"({
      "domain": ["0", "1"],
      "codomain": ["a", "b", "c"],
      "rows": {"0": {"a": "1/9", "b": "2/3", "c": "2/9"},
               "1": {"a": "7/25", "b": "7/25", "c": "11/25"}}
    })");
    auto rows = run_cli({"show", chan.string()});
    REQUIRE(rows.code == 0);
    CHECK(rows.out.find("c(0) = 1/9|a> + 2/3|b> + 2/9|c>") != std::string::npos);

    auto point = write_temp("channelkit_test_point.json", R"({
      "space": ["a", "b"], "weights": {"a": "1"}
    })");
    CHECK(run_cli({"show", point.string()}).out == "1|a>\n");

    auto missing = run_cli({"show", "/nonexistent/nope.json"});
    CHECK(missing.code == 1);
}

TEST_CASE("cli verify") {
    auto golden = run_cli({"verify", "paper-numbers"});
    CHECK(golden.code == 0);
    CHECK(golden.out.find("[ ok ]") != std::string::npos);
    CHECK(golden.out.find("[FAIL]") == std::string::npos);

    auto vacuous = run_cli({"verify", "properties", "--trials", "0"});
    CHECK(vacuous.code == 0);

    auto unknown = run_cli({"verify", "everything"});
    CHECK(unknown.code == 1);

    auto usage = run_cli({"frobnicate"});
    CHECK(usage.code != 0);
}
