#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "channelkit/channel.hpp"
#include "channelkit/distribution.hpp"
#include "channelkit/errors.hpp"
#include "channelkit/json_io.hpp"
#include "channelkit/predicate.hpp"
#include "channelkit/predictive.hpp"
#include "channelkit/updates.hpp"

namespace channelkit {

enum class update_rule { pearl, jeffrey, both };

inline update_rule parse_rule(const std::string& s) {
    if (s == "pearl") return update_rule::pearl;
    if (s == "jeffrey") return update_rule::jeffrey;
    if (s == "both") return update_rule::both;
    throw validation_error("rule", "expected pearl, jeffrey or both, got '" + s + "'");
}

inline const char* rule_name(update_rule r) {
    switch (r) {
    case update_rule::pearl: return "pearl";
    case update_rule::jeffrey: return "jeffrey";
    default: return "both";
    }
}

// A named bundle of prior + channel + evidence + options, the unit of work
// for the CLI `run` command.
template <typename S>
struct scenario {
    std::string name;
    distribution<S> prior;
    channel<S> chan;
    std::optional<predicate<S>> evidence_predicate;
    std::optional<distribution<S>> evidence_state;
    std::optional<std::string> evidence_point;
    std::vector<std::string> focus;  // empty: no focus
    std::optional<predicate<S>> preparation;
    update_rule rule = update_rule::both;
};

template <typename S>
scenario<S> scenario_from_json(const json& j) {
    if (!j.is_object()) throw validation_error("scenario", "expected a JSON object");
    scenario<S> s;
    s.name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>()
                                                            : std::string("unnamed");
    s.prior = distribution_from_json<S>(detail::expect_field(j, "prior", "scenario"), "prior");
    s.chan = channel_from_json<S>(detail::expect_field(j, "channel", "scenario"), "channel");
    if (s.prior.outcomes() != s.chan.domain())
        throw validation_error("prior.space", "prior space must equal the channel domain");

    if (j.contains("evidence_predicate"))
        s.evidence_predicate =
            predicate_from_json<S>(j.at("evidence_predicate"), "evidence_predicate");
    if (j.contains("evidence_state"))
        s.evidence_state = distribution_from_json<S>(j.at("evidence_state"), "evidence_state");
    if (j.contains("evidence_point")) {
        if (!j.at("evidence_point").is_string())
            throw validation_error("evidence_point", "expected a label string");
        s.evidence_point = j.at("evidence_point").get<std::string>();
        if (!s.chan.codomain().contains(*s.evidence_point))
            throw validation_error("evidence_point",
                                   "label '" + *s.evidence_point + "' not in the codomain");
    }
    if (j.contains("focus")) {
        if (!j.at("focus").is_array())
            throw validation_error("focus", "expected an array of labels");
        for (const auto& l : j.at("focus")) {
            if (!l.is_string()) throw validation_error("focus", "labels must be strings");
            s.focus.push_back(l.get<std::string>());
        }
    }
    if (j.contains("preparation"))
        s.preparation = predicate_from_json<S>(j.at("preparation"), "preparation");
    if (j.contains("rule")) {
        if (!j.at("rule").is_string()) throw validation_error("rule", "expected a string");
        s.rule = parse_rule(j.at("rule").get<std::string>());
    }

    if (s.evidence_predicate && s.evidence_predicate->outcomes() != s.chan.codomain())
        throw validation_error("evidence_predicate.space",
                               "evidence must live on the channel codomain");
    if (s.evidence_state && s.evidence_state->outcomes() != s.chan.codomain())
        throw validation_error("evidence_state.space",
                               "evidence must live on the channel codomain");
    if (s.preparation && s.preparation->outcomes() != s.chan.domain())
        throw validation_error("preparation.space",
                               "preparation must live on the channel domain");
    if (!s.focus.empty()) {
        try {
            static_cast<void>(focus_spec(s.chan.codomain(), s.focus));
        } catch (const error& e) {
            throw validation_error("focus", e.what());
        }
    }

    const bool pearl_ready = s.evidence_predicate.has_value() || s.evidence_point.has_value();
    const bool jeffrey_ready = s.evidence_state.has_value() || s.evidence_point.has_value();
    if (!pearl_ready && !jeffrey_ready)
        throw validation_error("scenario", "no evidence given");
    if ((s.rule == update_rule::pearl || s.rule == update_rule::both) && !pearl_ready)
        throw validation_error("scenario",
                               "rule includes pearl but there is no evidence predicate or point");
    if ((s.rule == update_rule::jeffrey || s.rule == update_rule::both) && !jeffrey_ready)
        throw validation_error("scenario",
                               "rule includes jeffrey but there is no evidence state or point");
    return s;
}

// ---------------------------------------------------------------------------
// Reports: every number carries the formula that produced it, plus the exact
// fraction when the backend is exact.
// ---------------------------------------------------------------------------

struct report_value {
    std::string key;
    std::string formula;
    std::string exact;  // empty on the float backend
    double value = 0.0;
};

struct report_distribution {
    std::string key;
    std::string formula;
    std::vector<std::string> labels;
    std::vector<std::string> exact;
    std::vector<double> values;
    std::string ket;
};

struct report {
    std::string scenario_name;
    std::string backend;
    std::string rule;
    std::vector<report_distribution> distributions;
    std::vector<report_value> metrics;
};

enum class report_format { table, json_format, csv };

inline report_format parse_format(const std::string& s) {
    if (s == "table") return report_format::table;
    if (s == "json") return report_format::json_format;
    if (s == "csv") return report_format::csv;
    throw validation_error("format", "expected table, json or csv, got '" + s + "'");
}

namespace detail {

template <typename S>
report_distribution describe(const std::string& key, const std::string& formula,
                             const distribution<S>& d) {
    report_distribution out;
    out.key = key;
    out.formula = formula;
    out.labels = d.outcomes().labels();
    for (std::size_t i = 0; i < d.size(); ++i) {
        out.exact.push_back(scalar_traits<S>::is_exact ? scalar_traits<S>::render(d.weight(i))
                                                       : std::string());
        out.values.push_back(scalar_traits<S>::to_double(d.weight(i)));
    }
    out.ket = render_ket(d);
    return out;
}

template <typename S>
report_value describe_scalar(const std::string& key, const std::string& formula, const S& v) {
    report_value out;
    out.key = key;
    out.formula = formula;
    if (scalar_traits<S>::is_exact) out.exact = scalar_traits<S>::render(v);
    out.value = scalar_traits<S>::to_double(v);
    return out;
}

inline report_value describe_double(const std::string& key, const std::string& formula,
                                    double v) {
    report_value out;
    out.key = key;
    out.formula = formula;
    out.value = v;
    return out;
}

} // namespace detail

// Runs a scenario: applies preparation to the prior, focus to the evidence,
// then the requested update rules, and collects posteriors plus validity,
// divergence and total-variation metrics.
template <typename S>
report run_scenario(const scenario<S>& s) {
    report rep;
    rep.scenario_name = s.name;
    rep.backend = scalar_traits<S>::name();
    rep.rule = rule_name(s.rule);

    const bool run_pearl = s.rule != update_rule::jeffrey &&
                           (s.evidence_predicate || s.evidence_point);
    const bool run_jeffrey = s.rule != update_rule::pearl &&
                             (s.evidence_state || s.evidence_point);

    distribution<S> prior_eff =
        s.preparation ? condition(s.prior, *s.preparation) : s.prior;

    std::optional<predicate<S>> q;
    std::string q_formula = "q";
    if (s.evidence_predicate) {
        q = *s.evidence_predicate;
    } else if (s.evidence_point) {
        q = predicate<S>::point(s.chan.codomain(), *s.evidence_point);
        q_formula = "point_predicate(" + *s.evidence_point + ")";
    }
    std::optional<distribution<S>> tau;
    std::string tau_formula = "tau";
    if (s.evidence_state) {
        tau = *s.evidence_state;
    } else if (s.evidence_point) {
        tau = distribution<S>::point(s.chan.codomain(), *s.evidence_point);
        tau_formula = "point_state(" + *s.evidence_point + ")";
    }

    std::optional<focus_spec> focus;
    if (!s.focus.empty()) focus.emplace(s.chan.codomain(), s.focus);

    distribution<S> prediction = pushforward(s.chan, s.prior);
    rep.distributions.push_back(detail::describe("prior", "given", s.prior));
    if (s.preparation)
        rep.distributions.push_back(detail::describe(
            "prepared_prior", "condition(prior, preparation)", prior_eff));
    rep.distributions.push_back(
        detail::describe("prediction", "pushforward(channel, prior)", prediction));

    std::optional<distribution<S>> posterior_pearl;
    std::optional<distribution<S>> posterior_jeffrey;

    if (run_pearl) {
        predicate<S> q_eff = focus ? pred_and(*q, focus->template indicator<S>()) : *q;
        std::string formula = "condition(" +
                              std::string(s.preparation ? "prepared_prior" : "prior") +
                              ", pullback(channel, " +
                              (focus ? "pred_and(" + q_formula + ", sharp(focus))" : q_formula) +
                              "))";
        posterior_pearl = pearl_update(prior_eff, s.chan, q_eff);
        rep.distributions.push_back(
            detail::describe("posterior_pearl", formula, *posterior_pearl));
    }
    if (run_jeffrey) {
        std::string base = s.preparation ? "prepared_prior" : "prior";
        if (!focus && s.evidence_point && !s.evidence_state) {
            posterior_jeffrey = jeffrey_point_update(prior_eff, s.chan, *s.evidence_point);
            rep.distributions.push_back(detail::describe(
                "posterior_jeffrey",
                "jeffrey_point_update(" + base + ", channel, " + *s.evidence_point + ")",
                *posterior_jeffrey));
        } else {
            distribution<S> tau_eff =
                focus ? condition(*tau, focus->template indicator<S>()) : *tau;
            std::string formula =
                "pushforward(dagger(channel, " + base + "), " +
                (focus ? "condition(" + tau_formula + ", sharp(focus))" : tau_formula) + ")";
            posterior_jeffrey = jeffrey_update(prior_eff, s.chan, tau_eff);
            rep.distributions.push_back(
                detail::describe("posterior_jeffrey", formula, *posterior_jeffrey));
        }
    }

    if (q) {
        rep.metrics.push_back(detail::describe_scalar(
            "validity_prior", "validity(prediction, " + q_formula + ")",
            validity(prediction, *q)));
        if (posterior_pearl)
            rep.metrics.push_back(detail::describe_scalar(
                "validity_after_pearl",
                "validity(pushforward(channel, posterior_pearl), " + q_formula + ")",
                validity(pushforward(s.chan, *posterior_pearl), *q)));
        if (posterior_jeffrey)
            rep.metrics.push_back(detail::describe_scalar(
                "validity_after_jeffrey",
                "validity(pushforward(channel, posterior_jeffrey), " + q_formula + ")",
                validity(pushforward(s.chan, *posterior_jeffrey), *q)));
    }
    if (tau) {
        rep.metrics.push_back(detail::describe_double(
            "kl_prior", "kl_divergence(" + tau_formula + ", prediction)",
            kl_divergence(*tau, prediction)));
        rep.metrics.push_back(detail::describe_double(
            "tv_prior", "total_variation(" + tau_formula + ", prediction)",
            total_variation(*tau, prediction)));
        if (posterior_pearl) {
            distribution<S> pushed = pushforward(s.chan, *posterior_pearl);
            rep.metrics.push_back(detail::describe_double(
                "kl_after_pearl",
                "kl_divergence(" + tau_formula + ", pushforward(channel, posterior_pearl))",
                kl_divergence(*tau, pushed)));
            rep.metrics.push_back(detail::describe_double(
                "tv_after_pearl",
                "total_variation(" + tau_formula + ", pushforward(channel, posterior_pearl))",
                total_variation(*tau, pushed)));
        }
        if (posterior_jeffrey) {
            distribution<S> pushed = pushforward(s.chan, *posterior_jeffrey);
            rep.metrics.push_back(detail::describe_double(
                "kl_after_jeffrey",
                "kl_divergence(" + tau_formula + ", pushforward(channel, posterior_jeffrey))",
                kl_divergence(*tau, pushed)));
            rep.metrics.push_back(detail::describe_double(
                "tv_after_jeffrey",
                "total_variation(" + tau_formula + ", pushforward(channel, posterior_jeffrey))",
                total_variation(*tau, pushed)));
        }
    }
    if (posterior_pearl && posterior_jeffrey)
        rep.metrics.push_back(detail::describe_double(
            "kl_pearl_vs_jeffrey", "kl_divergence(posterior_pearl, posterior_jeffrey)",
            kl_divergence(*posterior_pearl, *posterior_jeffrey)));
    return rep;
}

// ---------------------------------------------------------------------------
// Rendering. Tables round to 4 decimals (half-to-even); json and csv carry
// exact fractions alongside full-precision floats. Output is deterministic.
// ---------------------------------------------------------------------------

inline std::string render_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string render_report(const report& rep, report_format format) {
    std::ostringstream os;
    switch (format) {
    case report_format::table: {
        // Round the exact fraction when there is one, so that half-to-even
        // applies to the true value rather than to its double image.
        auto fixed4 = [](const std::string& exact, double value) -> std::string {
            if (!exact.empty()) return format_fixed(rational::parse(exact), 4);
            if (std::isinf(value)) return "inf";
            return format_fixed(value, 4);
        };
        os << "scenario: " << rep.scenario_name << "\n";
        os << "backend:  " << rep.backend << "\n";
        os << "rule:     " << rep.rule << "\n\n";
        for (const auto& d : rep.distributions) {
            os << d.key << " = " << d.ket << "\n";
            os << "  formula: " << d.formula << "\n ";
            for (std::size_t i = 0; i < d.labels.size(); ++i)
                os << " " << d.labels[i] << ": " << fixed4(d.exact[i], d.values[i]);
            os << "\n";
        }
        if (!rep.metrics.empty()) os << "\n";
        for (const auto& m : rep.metrics) {
            os << m.key << " = " << fixed4(m.exact, m.value);
            if (!m.exact.empty()) os << "  (exact " << m.exact << ")";
            os << "\n  formula: " << m.formula << "\n";
        }
        break;
    }
    case report_format::json_format: {
        json j;
        j["scenario"] = rep.scenario_name;
        j["backend"] = rep.backend;
        j["rule"] = rep.rule;
        json dists = json::array();
        for (const auto& d : rep.distributions) {
            json item;
            item["key"] = d.key;
            item["formula"] = d.formula;
            item["ket"] = d.ket;
            json weights = json::object();
            json approx = json::object();
            for (std::size_t i = 0; i < d.labels.size(); ++i) {
                if (!d.exact[i].empty()) weights[d.labels[i]] = d.exact[i];
                approx[d.labels[i]] = render_double(d.values[i]);
            }
            if (!weights.empty()) item["weights"] = weights;
            item["approx"] = approx;
            dists.push_back(item);
        }
        j["distributions"] = dists;
        json metrics = json::array();
        for (const auto& m : rep.metrics) {
            json item;
            item["key"] = m.key;
            item["formula"] = m.formula;
            if (!m.exact.empty()) item["exact"] = m.exact;
            item["value"] = render_double(m.value);
            metrics.push_back(item);
        }
        j["metrics"] = metrics;
        os << j.dump(2) << "\n";
        break;
    }
    case report_format::csv: {
        os << "kind,key,item,value,exact\n";
        for (const auto& d : rep.distributions)
            for (std::size_t i = 0; i < d.labels.size(); ++i)
                os << "distribution," << d.key << "," << d.labels[i] << ","
                   << render_double(d.values[i]) << "," << d.exact[i] << "\n";
        for (const auto& m : rep.metrics)
            os << "metric," << m.key << ",," << render_double(m.value) << "," << m.exact
               << "\n";
        break;
    }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Built-in scenarios: the running mood/marks example, its focus and
// preparation variants, and the two-point instance where the rules part ways.
// ---------------------------------------------------------------------------

namespace builtin {

inline const char* mood_marks_core = R"json({
  "prior": {"space": ["p","n","o"],
            "weights": {"p": "1/8", "n": "3/8", "o": "1/2"}},
  "channel": {
    "domain": ["p","n","o"],
    "codomain": ["1","2","3","4","5","6","7","8","9","10"],
    "rows": {
      "p": {"1":"1/50","2":"2/50","3":"10/50","4":"15/50","5":"10/50",
            "6":"6/50","7":"3/50","8":"1/50","9":"1/50","10":"1/50"},
      "n": {"1":"1/50","2":"2/50","3":"4/50","4":"10/50","5":"15/50",
            "6":"10/50","7":"5/50","8":"1/50","9":"1/50","10":"1/50"},
      "o": {"1":"1/50","2":"1/50","3":"1/50","4":"2/50","5":"4/50",
            "6":"10/50","7":"15/50","8":"10/50","9":"4/50","10":"2/50"}
    }
  },
  "evidence_predicate": {
    "space": ["1","2","3","4","5","6","7","8","9","10"],
    "values": {"1":"1/10","2":"3/10","3":"3/10","4":"2/10","5":"1/10"}},
  "evidence_state": {
    "space": ["1","2","3","4","5","6","7","8","9","10"],
    "weights": {"1":"1/10","2":"3/10","3":"3/10","4":"2/10","5":"1/10"}},
  "rule": "both"
})json";

inline const char* exclusivity_core = R"json({
  "prior": {"space": ["0","1"], "weights": {"0": "1/2", "1": "1/2"}},
  "channel": {
    "domain": ["0","1"],
    "codomain": ["a","b","c"],
    "rows": {
      "0": {"a": "1/9", "b": "2/3", "c": "2/9"},
      "1": {"a": "7/25", "b": "7/25", "c": "11/25"}
    }
  },
  "evidence_predicate": {"space": ["a","b","c"],
                         "values": {"a": "1/2", "b": "1/3", "c": "1/6"}},
  "evidence_state": {"space": ["a","b","c"],
                     "weights": {"a": "1/2", "b": "1/3", "c": "1/6"}},
  "rule": "both"
})json";

inline const char* exclusivity_tv_rows = R"json({
  "rows": {
    "0": {"a": "1/10", "b": "1/2", "c": "2/5"},
    "1": {"a": "11/100", "b": "33/100", "c": "56/100"}
  }
})json";

} // namespace builtin

inline std::vector<std::string> builtin_scenario_names() {
    return {"mood-marks",
            "mood-marks-focus",
            "mood-marks-prepare-pessimist",
            "mood-marks-prepare-optimist",
            "exclusivity",
            "exclusivity-tv"};
}

inline json builtin_scenario(const std::string& name) {
    json j;
    if (name == "mood-marks" || name == "mood-marks-focus" ||
        name == "mood-marks-prepare-pessimist" || name == "mood-marks-prepare-optimist") {
        j = json::parse(builtin::mood_marks_core);
        if (name == "mood-marks-focus") j["focus"] = {"1", "2", "3"};
        if (name == "mood-marks-prepare-pessimist")
            j["preparation"] = {{"space", {"p", "n", "o"}},
                                {"values", {{"p", "7/10"}, {"n", "1/2"}, {"o", "3/10"}}}};
        if (name == "mood-marks-prepare-optimist")
            j["preparation"] = {{"space", {"p", "n", "o"}},
                                {"values", {{"p", "3/10"}, {"n", "1/2"}, {"o", "7/10"}}}};
    } else if (name == "exclusivity" || name == "exclusivity-tv") {
        j = json::parse(builtin::exclusivity_core);
        if (name == "exclusivity-tv")
            j["channel"]["rows"] = json::parse(builtin::exclusivity_tv_rows)["rows"];
    } else {
        throw validation_error("scenario", "unknown built-in scenario '" + name + "'");
    }
    j["name"] = name;
    return j;
}

// Backend selection: decimal scalars force the float backend; otherwise the
// CHANNELKIT_BACKEND environment variable (or an explicit override) decides,
// defaulting to rational. Mixed fraction/decimal documents are rejected.
enum class backend_kind { rational_backend, float_backend };

inline backend_kind decide_backend(const backend_scan& scan,
                                   const std::optional<std::string>& override_name) {
    if (scan.has_fraction && scan.has_decimal)
        throw validation_error("scenario",
                               "mixes fraction and decimal scalars; pick one backend");
    if (scan.has_decimal) return backend_kind::float_backend;
    std::optional<std::string> choice = override_name;
    if (!choice) {
        if (const char* env = std::getenv("CHANNELKIT_BACKEND")) choice = std::string(env);
    }
    if (choice) {
        if (*choice == "rational") return backend_kind::rational_backend;
        if (*choice == "float") return backend_kind::float_backend;
        throw validation_error("backend",
                               "expected rational or float, got '" + *choice + "'");
    }
    return backend_kind::rational_backend;
}

} // namespace channelkit
