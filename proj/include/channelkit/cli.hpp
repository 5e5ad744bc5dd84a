#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "channelkit/errors.hpp"
#include "channelkit/json_io.hpp"
#include "channelkit/scenario.hpp"
#include "channelkit/verify.hpp"

namespace channelkit {
namespace cli {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline json load_scenario_json(const std::string& name_or_path) {
    for (const auto& name : builtin_scenario_names())
        if (name == name_or_path) return builtin_scenario(name);
    return parse_json_text(read_file(name_or_path));
}

inline std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

template <typename S>
int run_with_backend(const json& j, report_format format, std::ostream& out) {
    scenario<S> s = scenario_from_json<S>(j);
    out << render_report(run_scenario(s), format);
    return 0;
}

// Entry point shared by the binary and the tests.
inline int main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"channelkit: Pearl and Jeffrey updating along channels"};
    app.require_subcommand(1);

    // --- run ---------------------------------------------------------------
    std::string run_target;
    std::string run_rule;
    std::string run_format = "table";
    std::string run_focus;
    std::string run_prepare;
    std::string run_evidence;
    std::string run_backend;
    auto* run_cmd = app.add_subcommand(
        "run", "Run a scenario (a built-in name or a JSON file path)");
    run_cmd->add_option("scenario", run_target,
                        "Built-in scenario (mood-marks, mood-marks-focus, "
                        "mood-marks-prepare-pessimist, mood-marks-prepare-optimist, "
                        "exclusivity, exclusivity-tv) or path to a scenario file")
        ->required();
    run_cmd->add_option("--rule", run_rule, "pearl, jeffrey or both");
    run_cmd->add_option("--format", run_format, "table, json or csv");
    run_cmd->add_option("--focus", run_focus, "Comma-separated codomain labels to focus on");
    run_cmd->add_option("--prepare", run_prepare, "Path to a preparation predicate file");
    run_cmd->add_option("--evidence", run_evidence,
                        "'truth' or a path to a predicate file, replacing the "
                        "scenario's evidence predicate");
    run_cmd->add_option("--backend", run_backend, "rational or float (default rational)");

    // --- verify ------------------------------------------------------------
    std::string verify_suite;
    std::uint64_t verify_seed = 42;
    long long verify_trials = -1;
    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
    verify_cmd->add_option("suite", verify_suite, "paper-numbers, properties, appendix or all")
        ->required();
    verify_cmd->add_option("--seed", verify_seed, "Seed for the randomized suites");
    verify_cmd->add_option("--trials", verify_trials,
                           "Trial count for the randomized suites (0 = vacuous pass)");

    // --- show --------------------------------------------------------------
    std::string show_path;
    auto* show_cmd =
        app.add_subcommand("show", "Pretty-print a distribution, predicate or channel file");
    show_cmd->add_option("path", show_path, "Path to a JSON file")->required();

    // CLI11 consumes the argument vector in reverse, without the program name.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (run_cmd->parsed()) {
            json j = load_scenario_json(run_target);
            if (!run_rule.empty()) j["rule"] = run_rule;
            if (!run_focus.empty()) j["focus"] = split_csv(run_focus);
            if (!run_prepare.empty())
                j["preparation"] = parse_json_text(read_file(run_prepare));
            if (!run_evidence.empty()) {
                if (run_evidence == "truth") {
                    if (!j.contains("channel") || !j.at("channel").contains("codomain"))
                        throw validation_error("channel.codomain",
                                               "needed to build the truth predicate");
                    json values = json::object();
                    for (const auto& label : j.at("channel").at("codomain"))
                        values[label.get<std::string>()] = "1";
                    j["evidence_predicate"] = {{"space", j.at("channel").at("codomain")},
                                               {"values", values}};
                } else {
                    j["evidence_predicate"] = parse_json_text(read_file(run_evidence));
                }
            }
            report_format format = parse_format(run_format);
            std::optional<std::string> backend_override;
            if (!run_backend.empty()) backend_override = run_backend;
            backend_kind backend = decide_backend(scan_document(j), backend_override);
            if (backend == backend_kind::rational_backend)
                return run_with_backend<rational>(j, format, out);
            return run_with_backend<double>(j, format, out);
        }
        if (verify_cmd->parsed()) {
            if (verify_suite != "paper-numbers" && verify_suite != "properties" &&
                verify_suite != "appendix" && verify_suite != "all")
                throw validation_error("suite", "expected paper-numbers, properties, "
                                                "appendix or all, got '" +
                                                    verify_suite + "'");
            verify::options opts;
            opts.seed = verify_seed;
            opts.trials = verify_trials;
            return verify::run(verify_suite, opts, out).ok() ? 0 : 1;
        }
        if (show_cmd->parsed()) {
            json j = parse_json_text(read_file(show_path));
            backend_kind backend = decide_backend(scan_document(j), std::nullopt);
            switch (detect_kind(j)) {
            case object_kind::distribution:
                out << (backend == backend_kind::rational_backend
                            ? render_ket(distribution_from_json<rational>(j))
                            : render_ket(distribution_from_json<double>(j)))
                    << "\n";
                break;
            case object_kind::predicate:
                out << (backend == backend_kind::rational_backend
                            ? render_formal_sum(predicate_from_json<rational>(j))
                            : render_formal_sum(predicate_from_json<double>(j)))
                    << "\n";
                break;
            case object_kind::channel:
                out << (backend == backend_kind::rational_backend
                            ? render_rows(channel_from_json<rational>(j))
                            : render_rows(channel_from_json<double>(j)));
                break;
            case object_kind::scenario:
                throw validation_error("show", "this is a scenario file; use `run`");
            default:
                throw validation_error("show",
                                       "cannot tell whether this is a distribution, "
                                       "predicate or channel");
            }
            return 0;
        }
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace cli
} // namespace channelkit
