#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "channelkit/channel.hpp"
#include "channelkit/distribution.hpp"
#include "channelkit/errors.hpp"
#include "channelkit/predicate.hpp"
#include "channelkit/rational.hpp"
#include "channelkit/space.hpp"

namespace channelkit {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Fixed-point rendering. The rational path rounds half-to-even with integer
// arithmetic, so table output of exact values is itself exact.
// ---------------------------------------------------------------------------

inline std::string format_fixed(const rational& v, int places) {
    using integer = rational::integer;
    integer num = v.numerator();
    integer den = v.denominator();
    const bool negative = num < 0;
    if (negative) num = -num;
    integer pow10 = 1;
    for (int i = 0; i < places; ++i) pow10 *= 10;
    integer scaled = num * pow10;
    integer q = scaled / den;
    integer r = scaled % den;
    integer twice = 2 * r;
    if (twice > den || (twice == den && (q % 2) != 0)) ++q;
    integer whole = q / pow10;
    integer frac = q % pow10;
    std::ostringstream os;
    if (negative && (whole != 0 || frac != 0)) os << '-';
    os << whole;
    if (places > 0) {
        std::string f = frac.str();
        os << '.' << std::string(places - static_cast<int>(f.size()), '0') << f;
    }
    return os.str();
}

inline std::string format_fixed(double v, int places) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", places, v);
    return buf;
}

// ---------------------------------------------------------------------------
// Ket notation, e.g. "1/8|p> + 3/8|n> + 1/2|o>". Zero terms are omitted.
// ---------------------------------------------------------------------------

template <typename S>
std::string render_ket(const distribution<S>& d) {
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!(d.weight(i) > scalar_traits<S>::zero())) continue;
        if (!out.empty()) out += " + ";
        out += scalar_traits<S>::render(d.weight(i)) + "|" + d.outcomes().label(i) + ">";
    }
    if (out.empty()) out = "0";
    return out;
}

template <typename S>
std::string render_formal_sum(const predicate<S>& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p.value(i) > scalar_traits<S>::zero())) continue;
        if (!out.empty()) out += " + ";
        out += scalar_traits<S>::render(p.value(i)) + "*1_" + p.outcomes().label(i);
    }
    if (out.empty()) out = "0";
    return out;
}

template <typename S>
std::string render_rows(const channel<S>& c) {
    std::string out;
    for (std::size_t i = 0; i < c.domain().size(); ++i) {
        out += "c(" + c.domain().label(i) + ") = " + render_ket(c.row(i)) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON serialization. Weights are scalar strings: exact fractions such as
// "77/299" on the rational backend, decimal strings on the float backend.
// ---------------------------------------------------------------------------

template <typename S>
json distribution_to_json(const distribution<S>& d) {
    json weights = json::object();
    for (std::size_t i = 0; i < d.size(); ++i)
        weights[d.outcomes().label(i)] = scalar_traits<S>::render(d.weight(i));
    return json{{"space", d.outcomes().labels()}, {"weights", weights}};
}

template <typename S>
json predicate_to_json(const predicate<S>& p) {
    json values = json::object();
    for (std::size_t i = 0; i < p.size(); ++i)
        values[p.outcomes().label(i)] = scalar_traits<S>::render(p.value(i));
    return json{{"space", p.outcomes().labels()}, {"values", values}};
}

template <typename S>
json channel_to_json(const channel<S>& c) {
    json rows = json::object();
    for (std::size_t i = 0; i < c.domain().size(); ++i) {
        json row = json::object();
        const auto& r = c.row(i);
        for (std::size_t j = 0; j < r.size(); ++j)
            row[c.codomain().label(j)] = scalar_traits<S>::render(r.weight(j));
        rows[c.domain().label(i)] = row;
    }
    return json{{"domain", c.domain().labels()},
                {"codomain", c.codomain().labels()},
                {"rows", rows}};
}

namespace detail {

inline const json& expect_field(const json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) throw validation_error(path + "." + key, "missing field");
    return *it;
}

inline space space_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) throw validation_error(path, "expected an array of labels");
    std::vector<std::string> labels;
    for (const auto& l : j) {
        if (!l.is_string()) throw validation_error(path, "labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    try {
        return space(std::move(labels));
    } catch (const error& e) {
        throw validation_error(path, e.what());
    }
}

template <typename S>
std::vector<S> values_from_json(const json& j, const space& sp, const std::string& path) {
    if (!j.is_object()) throw validation_error(path, "expected an object of scalars");
    std::vector<S> out(sp.size(), scalar_traits<S>::zero());
    for (const auto& [label, value] : j.items()) {
        auto idx = sp.find(label);
        if (!idx) throw validation_error(path + "." + label, "label not in space");
        if (!value.is_string())
            throw validation_error(path + "." + label, "scalars must be strings");
        try {
            out[*idx] = scalar_traits<S>::parse(value.template get<std::string>());
        } catch (const error& e) {
            throw validation_error(path + "." + label, e.what());
        }
    }
    return out;
}

} // namespace detail

template <typename S>
distribution<S> distribution_from_json(const json& j, const std::string& path = "distribution") {
    space sp = detail::space_from_json(detail::expect_field(j, "space", path), path + ".space");
    auto weights = detail::values_from_json<S>(detail::expect_field(j, "weights", path), sp,
                                               path + ".weights");
    try {
        return distribution<S>::from_weights(std::move(sp), std::move(weights));
    } catch (const error& e) {
        throw validation_error(path, e.what());
    }
}

template <typename S>
predicate<S> predicate_from_json(const json& j, const std::string& path = "predicate") {
    space sp = detail::space_from_json(detail::expect_field(j, "space", path), path + ".space");
    auto values = detail::values_from_json<S>(detail::expect_field(j, "values", path), sp,
                                              path + ".values");
    try {
        return predicate<S>::from_values(std::move(sp), std::move(values));
    } catch (const error& e) {
        throw validation_error(path, e.what());
    }
}

template <typename S>
channel<S> channel_from_json(const json& j, const std::string& path = "channel") {
    space dom = detail::space_from_json(detail::expect_field(j, "domain", path), path + ".domain");
    space cod =
        detail::space_from_json(detail::expect_field(j, "codomain", path), path + ".codomain");
    const json& rows = detail::expect_field(j, "rows", path);
    if (!rows.is_object()) throw validation_error(path + ".rows", "expected an object");
    std::vector<distribution<S>> parsed;
    parsed.reserve(dom.size());
    for (const auto& label : dom.labels()) {
        auto it = rows.find(label);
        if (it == rows.end())
            throw validation_error(path + ".rows." + label, "missing row");
        auto weights = detail::values_from_json<S>(*it, cod, path + ".rows." + label);
        try {
            parsed.push_back(distribution<S>::from_weights(cod, std::move(weights)));
        } catch (const error& e) {
            throw validation_error(path + ".rows." + label, e.what());
        }
    }
    for (const auto& [label, unused] : rows.items()) {
        (void)unused;
        if (!dom.contains(label))
            throw validation_error(path + ".rows." + label, "row label not in domain");
    }
    try {
        return channel<S>::from_rows(std::move(dom), std::move(parsed));
    } catch (const error& e) {
        throw validation_error(path, e.what());
    }
}

enum class object_kind { distribution, predicate, channel, scenario, unknown };

inline object_kind detect_kind(const json& j) {
    if (!j.is_object()) return object_kind::unknown;
    if (j.contains("prior") && j.contains("channel")) return object_kind::scenario;
    if (j.contains("rows")) return object_kind::channel;
    if (j.contains("weights")) return object_kind::distribution;
    if (j.contains("values")) return object_kind::predicate;
    return object_kind::unknown;
}

// Which scalar formats appear in a document: fraction strings ("3/8") force
// the rational backend, decimal strings force the float backend, and plain
// integers are neutral. Mixing the two forced kinds is a validation error.
struct backend_scan {
    bool has_fraction = false;
    bool has_decimal = false;
};

inline void scan_scalars(const json& j, backend_scan& scan) {
    if (j.is_object() || j.is_array()) {
        for (const auto& child : j) scan_scalars(child, scan);
    } else if (j.is_string()) {
        const std::string& s = j.get_ref<const std::string&>();
        if (s.find('/') != std::string::npos) scan.has_fraction = true;
        else if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
                 s.find('E') != std::string::npos) {
            // Require a digit so ordinary words are not misread as numbers.
            for (char c : s)
                if (c >= '0' && c <= '9') {
                    scan.has_decimal = true;
                    break;
                }
        }
    }
}

// Scan only the scalar-bearing subtrees of a document, so that names and
// labels never influence backend selection.
inline backend_scan scan_document(const json& j) {
    backend_scan scan;
    auto scan_field = [&](const json& obj, const char* key) {
        if (obj.is_object() && obj.contains(key)) scan_scalars(obj.at(key), scan);
    };
    switch (detect_kind(j)) {
    case object_kind::distribution:
        scan_field(j, "weights");
        break;
    case object_kind::predicate:
        scan_field(j, "values");
        break;
    case object_kind::channel:
        scan_field(j, "rows");
        break;
    case object_kind::scenario:
        if (j.contains("prior")) scan_field(j.at("prior"), "weights");
        if (j.contains("channel")) scan_field(j.at("channel"), "rows");
        if (j.contains("evidence_predicate")) scan_field(j.at("evidence_predicate"), "values");
        if (j.contains("evidence_state")) scan_field(j.at("evidence_state"), "weights");
        if (j.contains("preparation")) scan_field(j.at("preparation"), "values");
        break;
    case object_kind::unknown:
        scan_scalars(j, scan);
        break;
    }
    return scan;
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(e.what());
    }
}

} // namespace channelkit
