#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "channelkit/appendix.hpp"
#include "channelkit/channel.hpp"
#include "channelkit/distribution.hpp"
#include "channelkit/json_io.hpp"
#include "channelkit/matrix.hpp"
#include "channelkit/predicate.hpp"
#include "channelkit/predictive.hpp"
#include "channelkit/rng.hpp"
#include "channelkit/scenario.hpp"
#include "channelkit/updates.hpp"

namespace channelkit {
namespace verify {

struct options {
    std::uint64_t seed = 42;
    long long trials = -1;  // negative: use each check's own default
};

struct outcome {
    std::string name;
    bool passed = false;
    std::string expected;
    std::string actual;
    std::string tolerance;
};

using check_fn = outcome (*)(const options&);

struct named_check {
    const char* suite;  // "paper-numbers", "properties" or "appendix"
    const char* name;
    check_fn fn;
};

inline long long effective_trials(const options& o, long long fallback) {
    return o.trials < 0 ? fallback : o.trials;
}

// ---------------------------------------------------------------------------
// Fixtures: the two worked instances that every golden number comes from.
// ---------------------------------------------------------------------------

namespace fixtures {

template <typename S>
struct mood_instance {
    space moods;
    space marks;
    distribution<S> prior;
    channel<S> chan;
    predicate<S> evidence;     // grade evidence q
    distribution<S> evidence_state;  // same weights as a state tau
    predicate<S> pessimist;    // preparation predicate r
};

template <typename S>
mood_instance<S> mood() {
    using T = scalar_traits<S>;
    mood_instance<S> m{
        space({"p", "n", "o"}),
        space({"1", "2", "3", "4", "5", "6", "7", "8", "9", "10"}),
        {}, {}, {}, {}, {}};
    auto row = [&](std::vector<long long> fifty) {
        std::vector<S> w;
        for (long long k : fifty) w.push_back(T::ratio(k, 50));
        return distribution<S>::from_weights(m.marks, std::move(w));
    };
    m.prior = distribution<S>::from_weights(
        m.moods, {T::ratio(1, 8), T::ratio(3, 8), T::ratio(1, 2)});
    m.chan = channel<S>::from_rows(m.moods, {row({1, 2, 10, 15, 10, 6, 3, 1, 1, 1}),
                                             row({1, 2, 4, 10, 15, 10, 5, 1, 1, 1}),
                                             row({1, 1, 1, 2, 4, 10, 15, 10, 4, 2})});
    std::vector<S> q(m.marks.size(), T::zero());
    q[0] = T::ratio(1, 10);
    q[1] = T::ratio(3, 10);
    q[2] = T::ratio(3, 10);
    q[3] = T::ratio(2, 10);
    q[4] = T::ratio(1, 10);
    m.evidence = predicate<S>::from_values(m.marks, q);
    std::vector<S> t(m.marks.size(), T::zero());
    t[0] = T::ratio(1, 10);
    t[1] = T::ratio(3, 10);
    t[2] = T::ratio(3, 10);
    t[3] = T::ratio(2, 10);
    t[4] = T::ratio(1, 10);
    m.evidence_state = distribution<S>::from_weights(m.marks, std::move(t));
    m.pessimist = predicate<S>::from_values(
        m.moods, {T::ratio(7, 10), T::ratio(1, 2), T::ratio(3, 10)});
    return m;
}

template <typename S>
struct remark_instance {
    space bits;
    space letters;
    distribution<S> prior;
    channel<S> chan;     // the divergence/validity instance
    channel<S> chan_tv;  // the total-variation instance c'
    predicate<S> evidence;
    distribution<S> evidence_state;
};

template <typename S>
remark_instance<S> remark() {
    using T = scalar_traits<S>;
    remark_instance<S> r{space({"0", "1"}), space({"a", "b", "c"}), {}, {}, {}, {}, {}};
    r.prior = distribution<S>::uniform(r.bits);
    r.chan = channel<S>::from_rows(
        r.bits,
        {distribution<S>::from_weights(r.letters,
                                       {T::ratio(1, 9), T::ratio(2, 3), T::ratio(2, 9)}),
         distribution<S>::from_weights(r.letters,
                                       {T::ratio(7, 25), T::ratio(7, 25), T::ratio(11, 25)})});
    r.chan_tv = channel<S>::from_rows(
        r.bits,
        {distribution<S>::from_weights(r.letters,
                                       {T::ratio(1, 10), T::ratio(1, 2), T::ratio(2, 5)}),
         distribution<S>::from_weights(
             r.letters, {T::ratio(11, 100), T::ratio(33, 100), T::ratio(56, 100)})});
    r.evidence = predicate<S>::from_values(
        r.letters, {T::ratio(1, 2), T::ratio(1, 3), T::ratio(1, 6)});
    r.evidence_state = distribution<S>::from_weights(
        r.letters, {T::ratio(1, 2), T::ratio(1, 3), T::ratio(1, 6)});
    return r;
}

} // namespace fixtures

// ---------------------------------------------------------------------------
// Outcome helpers.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fractions(const std::vector<rational>& v) {
    std::string out;
    for (const auto& r : v) {
        if (!out.empty()) out += ", ";
        out += r.str();
    }
    return out;
}

inline std::string fractions(const distribution<rational>& d) {
    return fractions(d.weights());
}

inline std::string doubles(const std::vector<double>& v, int precision = 6) {
    std::ostringstream os;
    os << std::setprecision(precision);
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    return os.str();
}

inline outcome exact_match(const std::string& name, const std::string& expected,
                           const std::string& actual) {
    return outcome{name, expected == actual, expected, actual, "exact"};
}

inline outcome exact_flag(const std::string& name, bool passed,
                          const std::string& expected, const std::string& actual) {
    return outcome{name, passed, expected, actual, "exact"};
}

inline outcome approx(const std::string& name, double expected, double actual, double tol) {
    std::ostringstream e, a, t;
    e << std::setprecision(10) << expected;
    a << std::setprecision(10) << actual;
    t << "+/-" << tol;
    return outcome{name, std::abs(actual - expected) <= tol, e.str(), a.str(), t.str()};
}

inline outcome approx_vector(const std::string& name, const std::vector<double>& expected,
                             const std::vector<double>& actual, double tol) {
    bool ok = expected.size() == actual.size();
    for (std::size_t i = 0; ok && i < expected.size(); ++i)
        ok = std::abs(actual[i] - expected[i]) <= tol;
    std::ostringstream t;
    t << "+/-" << tol;
    return outcome{name, ok, doubles(expected), doubles(actual), t.str()};
}

inline outcome sweep(const std::string& name, long long violations, long long trials,
                     const std::string& tolerance) {
    return outcome{name, violations == 0, "0 violations",
                   std::to_string(violations) + " violations in " + std::to_string(trials) +
                       " trials",
                   tolerance};
}

inline std::vector<double> approx_weights(const distribution<rational>& d) {
    std::vector<double> v;
    for (const auto& w : d.weights()) v.push_back(w.to_double());
    return v;
}

} // namespace detail

// ---------------------------------------------------------------------------
// The check registry.
// ---------------------------------------------------------------------------

inline const std::vector<named_check>& checks() {
    using R = rational;
    using detail::approx;
    using detail::approx_vector;
    using detail::approx_weights;
    using detail::exact_flag;
    using detail::exact_match;
    using detail::fractions;
    using detail::sweep;

    static const std::vector<named_check> registry = {
        // ---------------------- worked-example numbers ---------------------
        {"paper-numbers", "mood/prediction-at-5",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             return exact_match("mood/prediction-at-5", "71/400",
                                pushforward(m.chan, m.prior).at("5").str());
         }},
        {"paper-numbers", "mood/pullback-grade-evidence",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             auto tq = pullback(m.chan, m.evidence);
             return exact_match("mood/pullback-grade-evidence", "77/500, 27/250, 3/100",
                                fractions(tq.values()));
         }},
        {"paper-numbers", "mood/prior-validity",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             return exact_match("mood/prior-validity", "299/4000",
                                validity(m.prior, pullback(m.chan, m.evidence)).str());
         }},
        {"paper-numbers", "mood/pearl-posterior",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             return exact_match("mood/pearl-posterior", "77/299, 162/299, 60/299",
                                fractions(pearl_update(m.prior, m.chan, m.evidence)));
         }},
        {"paper-numbers", "mood/pearl-posterior-rounded",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             return approx_vector("mood/pearl-posterior-rounded", {0.2575, 0.5418, 0.2007},
                                  approx_weights(pearl_update(m.prior, m.chan, m.evidence)),
                                  5e-5);
         }},
        {"paper-numbers", "mood/posterior-validity",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             auto posterior = pearl_update(m.prior, m.chan, m.evidence);
             return exact_match(
                 "mood/posterior-validity", "15577/149500",
                 validity(pushforward(m.chan, posterior), m.evidence).str());
         }},
        {"paper-numbers", "mood/jeffrey-posterior",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             auto expected = fractions(
                 {rational(972795, 3913520), rational(1966737, 3913520),
                  rational(973988, 3913520)});
             return exact_match(
                 "mood/jeffrey-posterior", expected,
                 fractions(jeffrey_update(m.prior, m.chan, m.evidence_state)));
         }},
        {"paper-numbers", "mood/jeffrey-posterior-rounded",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             return approx_vector(
                 "mood/jeffrey-posterior-rounded", {0.2486, 0.5025, 0.2489},
                 approx_weights(jeffrey_update(m.prior, m.chan, m.evidence_state)), 5e-5);
         }},
        {"paper-numbers", "mood/kl-prior",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             return approx("mood/kl-prior", 1.336,
                           kl_divergence(m.evidence_state, pushforward(m.chan, m.prior)),
                           5e-4);
         }},
        {"paper-numbers", "mood/kl-after-jeffrey",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             auto sj = jeffrey_update(m.prior, m.chan, m.evidence_state);
             return approx("mood/kl-after-jeffrey", 1.087,
                           kl_divergence(m.evidence_state, pushforward(m.chan, sj)), 5e-4);
         }},
        {"paper-numbers", "mood/kl-pearl-vs-jeffrey",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             auto sp = pearl_update(m.prior, m.chan, m.evidence);
             auto sj = jeffrey_update(m.prior, m.chan, m.evidence_state);
             return approx("mood/kl-pearl-vs-jeffrey", 0.007, kl_divergence(sp, sj), 5e-4);
         }},
        {"paper-numbers", "mood/dagger-row-1-is-prior",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             auto inv = dagger(m.chan, m.prior);
             return exact_flag("mood/dagger-row-1-is-prior", inv.row("1") == m.prior,
                               fractions(m.prior), fractions(inv.row("1")));
         }},
        {"paper-numbers", "mood/interdefinability-pearl-as-jeffrey",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             auto direct = pearl_update(m.prior, m.chan, m.evidence);
             auto via = pearl_as_jeffrey(m.prior, m.chan, m.evidence);
             return exact_flag("mood/interdefinability-pearl-as-jeffrey", direct == via,
                               fractions(direct), fractions(via));
         }},
        {"paper-numbers", "mood/interdefinability-evidence-predicate",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             auto direct = jeffrey_update(m.prior, m.chan, m.evidence_state);
             auto q = evidence_state_as_predicate(m.evidence_state, m.chan, m.prior);
             auto via = pearl_update(m.prior, m.chan, q);
             return exact_flag("mood/interdefinability-evidence-predicate", direct == via,
                               fractions(direct), fractions(via));
         }},
        {"paper-numbers", "mood/generative-joint-gamma-p1",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             auto joint = generative_joint<R>::from(m.prior, m.chan);
             return exact_match("mood/generative-joint-gamma-p1", "1/400",
                                joint.at("p", "1").str());
         }},
        {"paper-numbers", "mood/point-evidence-adjunction",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             auto predicted = pushforward(m.chan, m.prior);
             bool ok = true;
             for (const auto& y : m.marks.labels())
                 ok = ok && validity(m.prior,
                                     pullback(m.chan, predicate<R>::point(m.marks, y))) ==
                                predicted.at(y);
             return exact_flag("mood/point-evidence-adjunction", ok,
                               "validity(prior, c<<1_y) = prediction(y) for all y",
                               ok ? "holds for all 10 marks" : "violated");
         }},
        {"paper-numbers", "mood/free-energy-identity-y5",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             auto sides = free_energy_identity_check(m.prior, m.prior, m.chan, "5");
             return approx("mood/free-energy-identity-y5", sides.lhs, sides.rhs, 1e-10);
         }},
        {"paper-numbers", "remark/prediction",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             return exact_match("remark/prediction", "44/225, 71/150, 149/450",
                                fractions(pushforward(r.chan, r.prior)));
         }},
        {"paper-numbers", "remark/pullback",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             return exact_match("remark/pullback", "17/54, 23/75",
                                fractions(pullback(r.chan, r.evidence).values()));
         }},
        {"paper-numbers", "remark/pearl-posterior",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             return exact_match("remark/pearl-posterior", "425/839, 414/839",
                                fractions(pearl_update(r.prior, r.chan, r.evidence)));
         }},
        {"paper-numbers", "remark/jeffrey-posterior",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             return exact_match(
                 "remark/jeffrey-posterior", "805675/1861904, 1056229/1861904",
                 fractions(jeffrey_update(r.prior, r.chan, r.evidence_state)));
         }},
        {"paper-numbers", "remark/jeffrey-posterior-rounded",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             return approx_vector(
                 "remark/jeffrey-posterior-rounded", {0.4327, 0.5673},
                 approx_weights(jeffrey_update(r.prior, r.chan, r.evidence_state)), 5e-5);
         }},
        {"paper-numbers", "remark/dagger-row-a",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             return exact_match("remark/dagger-row-a", "25/88, 63/88",
                                fractions(dagger(r.chan, r.prior).row("a")));
         }},
        {"paper-numbers", "remark/validity-prior",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             return approx("remark/validity-prior", 0.31074,
                           validity(pushforward(r.chan, r.prior), r.evidence).to_double(),
                           5e-5);
         }},
        {"paper-numbers", "remark/validity-after-pearl",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             auto sp = pearl_update(r.prior, r.chan, r.evidence);
             return approx("remark/validity-after-pearl", 0.31079,
                           validity(pushforward(r.chan, sp), r.evidence).to_double(), 5e-5);
         }},
        {"paper-numbers", "remark/validity-after-jeffrey",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             auto sj = jeffrey_update(r.prior, r.chan, r.evidence_state);
             return approx("remark/validity-after-jeffrey", 0.31019,
                           validity(pushforward(r.chan, sj), r.evidence).to_double(), 5e-5);
         }},
        {"paper-numbers", "remark/kl-prior",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             return approx("remark/kl-prior", 0.238,
                           kl_divergence(r.evidence_state, pushforward(r.chan, r.prior)),
                           5e-4);
         }},
        {"paper-numbers", "remark/kl-after-pearl",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             auto sp = pearl_update(r.prior, r.chan, r.evidence);
             return approx("remark/kl-after-pearl", 0.240,
                           kl_divergence(r.evidence_state, pushforward(r.chan, sp)), 5e-4);
         }},
        {"paper-numbers", "remark/kl-after-jeffrey",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             auto sj = jeffrey_update(r.prior, r.chan, r.evidence_state);
             return approx("remark/kl-after-jeffrey", 0.221,
                           kl_divergence(r.evidence_state, pushforward(r.chan, sj)), 5e-4);
         }},
        {"paper-numbers", "remark/jeffrey-validity-decreases",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             auto sj = jeffrey_update(r.prior, r.chan, r.evidence_state);
             rational before = validity(pushforward(r.chan, r.prior), r.evidence);
             rational after = validity(pushforward(r.chan, sj), r.evidence);
             return exact_flag("remark/jeffrey-validity-decreases", after < before,
                               "validity strictly below prior",
                               after.str() + " vs prior " + before.str());
         }},
        {"paper-numbers", "remark/pearl-divergence-increases",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             auto sp = pearl_update(r.prior, r.chan, r.evidence);
             double before = kl_divergence(r.evidence_state, pushforward(r.chan, r.prior));
             double after = kl_divergence(r.evidence_state, pushforward(r.chan, sp));
             return exact_flag("remark/pearl-divergence-increases", after > before,
                               "divergence strictly above prior",
                               detail::doubles({after}) + " vs prior " +
                                   detail::doubles({before}));
         }},
        {"paper-numbers", "remark/tv-increases-after-pearl",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             auto sp = pearl_update(r.prior, r.chan_tv, r.evidence);
             double before =
                 total_variation(r.evidence_state, pushforward(r.chan_tv, r.prior));
             double after = total_variation(r.evidence_state, pushforward(r.chan_tv, sp));
             return exact_flag("remark/tv-increases-after-pearl", after > before,
                               "total variation strictly above prior",
                               detail::doubles({after}) + " vs prior " +
                                   detail::doubles({before}));
         }},
        {"paper-numbers", "remark/tv-increases-after-jeffrey",
         +[](const options&) {
             auto r = fixtures::remark<R>();
             auto sj = jeffrey_update(r.prior, r.chan_tv, r.evidence_state);
             double before =
                 total_variation(r.evidence_state, pushforward(r.chan_tv, r.prior));
             double after = total_variation(r.evidence_state, pushforward(r.chan_tv, sj));
             return exact_flag("remark/tv-increases-after-jeffrey", after > before,
                               "total variation strictly above prior",
                               detail::doubles({after}) + " vs prior " +
                                   detail::doubles({before}));
         }},
        {"paper-numbers", "focus/pearl-mood",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             focus_spec f(m.marks, {"1", "2", "3"});
             return approx_vector("focus/pearl-mood", {0.3033, 0.4672, 0.2295},
                                  approx_weights(focus_pearl(m.prior, m.chan, m.evidence, f)),
                                  5e-5);
         }},
        {"paper-numbers", "focus/jeffrey-mood",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             focus_spec f(m.marks, {"1", "2", "3"});
             return approx_vector(
                 "focus/jeffrey-mood", {0.2541, 0.4657, 0.2802},
                 approx_weights(focus_jeffrey(m.prior, m.chan, m.evidence_state, f)), 5e-5);
         }},
        {"paper-numbers", "prepare/pessimist-pearl",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             return approx_vector(
                 "prepare/pessimist-pearl", {0.3525, 0.5298, 0.1177},
                 approx_weights(prepared_pearl(m.prior, m.chan, m.evidence, m.pessimist)),
                 5e-5);
         }},
        {"paper-numbers", "prepare/pessimist-jeffrey",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             return approx_vector("prepare/pessimist-jeffrey", {0.3392, 0.5047, 0.1561},
                                  approx_weights(prepared_jeffrey(m.prior, m.chan,
                                                                  m.evidence_state,
                                                                  m.pessimist)),
                                  5e-5);
         }},
        {"paper-numbers", "prepare/optimist-pearl",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             return approx_vector(
                 "prepare/optimist-pearl", {0.1581, 0.5544, 0.2875},
                 approx_weights(
                     prepared_pearl(m.prior, m.chan, m.evidence, pred_not(m.pessimist))),
                 5e-5);
         }},
        {"paper-numbers", "prepare/optimist-jeffrey",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             return approx_vector(
                 "prepare/optimist-jeffrey", {0.1549, 0.5066, 0.3384},
                 approx_weights(prepared_jeffrey(m.prior, m.chan, m.evidence_state,
                                                 pred_not(m.pessimist))),
                 5e-5);
         }},
        {"paper-numbers", "focus/directional-more-pessimism",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             focus_spec f(m.marks, {"1", "2", "3"});
             rational plain_p = pearl_update(m.prior, m.chan, m.evidence).at("p");
             rational plain_j = jeffrey_update(m.prior, m.chan, m.evidence_state).at("p");
             rational focus_p = focus_pearl(m.prior, m.chan, m.evidence, f).at("p");
             rational focus_j = focus_jeffrey(m.prior, m.chan, m.evidence_state, f).at("p");
             bool ok = focus_p > plain_p && focus_j > plain_j;
             return exact_flag("focus/directional-more-pessimism", ok,
                               "focused p-weight above unfocused for both rules",
                               "pearl " + focus_p.str() + " vs " + plain_p.str() +
                                   "; jeffrey " + focus_j.str() + " vs " + plain_j.str());
         }},
        {"paper-numbers", "prepare/directional-pessimist-above-optimist",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             auto optimist = pred_not(m.pessimist);
             rational pp = prepared_pearl(m.prior, m.chan, m.evidence, m.pessimist).at("p");
             rational po = prepared_pearl(m.prior, m.chan, m.evidence, optimist).at("p");
             rational jp = prepared_jeffrey(m.prior, m.chan, m.evidence_state, m.pessimist)
                               .at("p");
             rational jo = prepared_jeffrey(m.prior, m.chan, m.evidence_state, optimist)
                               .at("p");
             bool ok = pp > po && jp > jo;
             return exact_flag("prepare/directional-pessimist-above-optimist", ok,
                               "pessimistic preparation gives more p-weight for both rules",
                               "pearl " + pp.str() + " vs " + po.str() + "; jeffrey " +
                                   jp.str() + " vs " + jo.str());
         }},

        // --------------------------- properties ---------------------------
        {"properties", "properties/pearl-validity-increase",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto sigma = gen::random_distribution<R>(rng, x, false);
                 auto c = gen::random_channel<R>(rng, x, y, false);
                 auto q = gen::random_predicate<R>(rng, y, true);
                 auto posterior = pearl_update(sigma, c, q);
                 if (!(validity(pushforward(c, posterior), q) >=
                       validity(pushforward(c, sigma), q)))
                     ++bad;
             }
             return sweep("properties/pearl-validity-increase", bad, n, "exact");
         }},
        {"properties", "properties/update-rightness",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 1);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, false);
                 auto p = gen::random_predicate<R>(rng, x, true);
                 if (!(validity(condition(omega, p), p) >= validity(omega, p))) ++bad;
             }
             return sweep("properties/update-rightness", bad, n, "exact");
         }},
        {"properties", "properties/jeffrey-divergence-decrease",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 2);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto c = gen::random_channel<R>(rng, x, y, true);
                 auto tau = gen::random_distribution<R>(rng, y, t % 2 == 0);
                 auto sj = jeffrey_update(sigma, c, tau);
                 double before = kl_divergence(tau, pushforward(c, sigma));
                 double after = kl_divergence(tau, pushforward(c, sj));
                 if (!(after <= before + 1e-12)) ++bad;
             }
             return sweep("properties/jeffrey-divergence-decrease", bad, n, "1e-12 slack");
         }},
        {"properties", "properties/adjunction",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 3);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto omega = gen::random_distribution<R>(rng, x, false);
                 auto c = gen::random_channel<R>(rng, x, y, false);
                 auto q = gen::random_predicate<R>(rng, y, false);
                 if (!(validity(pushforward(c, omega), q) == validity(omega, pullback(c, q))))
                     ++bad;
             }
             return sweep("properties/adjunction", bad, n, "exact");
         }},
        {"properties", "properties/bayes-product-rule",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 4);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, false);
                 auto p = gen::random_predicate<R>(rng, x, true);
                 auto q = gen::random_predicate<R>(rng, x, false);
                 rational lhs = validity(condition(omega, p), q) * validity(omega, p);
                 rational rhs = validity(omega, pred_and(p, q));
                 if (!(lhs == rhs)) ++bad;
             }
             return sweep("properties/bayes-product-rule", bad, n, "exact");
         }},
        {"properties", "properties/bayes-double-update",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 5);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, false);
                 auto p = gen::random_predicate<R>(rng, x, true);
                 auto q = gen::random_predicate<R>(rng, x, true);
                 if (!(condition(condition(omega, p), q) == condition(omega, pred_and(p, q))))
                     ++bad;
             }
             return sweep("properties/bayes-double-update", bad, n, "exact");
         }},
        {"properties", "properties/dagger-rows-are-conditionings",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 6);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto c = gen::random_channel<R>(rng, x, y, true);
                 auto inv = dagger(c, sigma);
                 for (const auto& label : y.labels())
                     if (!(inv.row(label) ==
                           condition(sigma, pullback(c, predicate<R>::point(y, label)))))
                         ++bad;
             }
             return sweep("properties/dagger-rows-are-conditionings", bad, n, "exact");
         }},
        {"properties", "properties/interdefinability-round-trip",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 7);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto c = gen::random_channel<R>(rng, x, y, true);
                 auto q = gen::random_predicate<R>(rng, y, true);
                 auto tau = gen::random_distribution<R>(rng, y, false);
                 if (!(pearl_as_jeffrey(sigma, c, q) == pearl_update(sigma, c, q))) ++bad;
                 auto derived = evidence_state_as_predicate(tau, c, sigma);
                 if (!(pearl_update(sigma, c, derived) == jeffrey_update(sigma, c, tau)))
                     ++bad;
             }
             return sweep("properties/interdefinability-round-trip", bad, n, "exact");
         }},
        {"properties", "properties/jeffrey-point-agrees-with-pearl-point",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 8);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto c = gen::random_channel<R>(rng, x, y, true);
                 const std::string& label = y.label(rng.below(y.size()));
                 auto point = jeffrey_point_update(sigma, c, label);
                 auto pearl = pearl_update(sigma, c, predicate<R>::point(y, label));
                 if (!(point == pearl)) ++bad;
             }
             return sweep("properties/jeffrey-point-agrees-with-pearl-point", bad, n,
                          "exact");
         }},
        {"properties", "properties/jeffrey-fixed-point",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 9);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto c = gen::random_channel<R>(rng, x, y, true);
                 if (!(jeffrey_update(sigma, c, pushforward(c, sigma)) == sigma)) ++bad;
             }
             return sweep("properties/jeffrey-fixed-point", bad, n, "exact");
         }},
        {"properties", "properties/kl-positivity",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 10);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto a = gen::random_distribution<R>(rng, x, true);
                 auto b = gen::random_distribution<R>(rng, x, true);
                 if (kl_divergence(a, a) != 0.0) ++bad;
                 double d = kl_divergence(a, b);
                 if (a == b ? d != 0.0 : !(d > 0.0)) ++bad;
             }
             return sweep("properties/kl-positivity", bad, n, "exact at 0");
         }},
        {"properties", "properties/tv-metric",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 11);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto a = gen::random_distribution<R>(rng, x, false);
                 auto b = gen::random_distribution<R>(rng, x, false);
                 auto c = gen::random_distribution<R>(rng, x, false);
                 double ab = total_variation(a, b);
                 double ba = total_variation(b, a);
                 double ac = total_variation(a, c);
                 double cb = total_variation(c, b);
                 if (ab != ba) ++bad;
                 if (!(ab >= 0.0 && ab <= 1.0)) ++bad;
                 if (total_variation(a, a) != 0.0) ++bad;
                 if (!(ab <= ac + cb + 1e-15)) ++bad;
             }
             return sweep("properties/tv-metric", bad, n, "1e-15 triangle slack");
         }},
        {"properties", "properties/pullback-truth-and-affine",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 12);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto c = gen::random_channel<R>(rng, x, y, false);
                 if (!(pullback(c, predicate<R>::truth(y)) == predicate<R>::truth(x))) ++bad;
                 auto p = gen::random_predicate<R>(rng, y, false);
                 auto q = gen::random_predicate<R>(rng, y, false);
                 rational lambda(rng.between(0, gen::kResolution), gen::kResolution);
                 std::vector<rational> mixed(y.size());
                 for (std::size_t i = 0; i < y.size(); ++i)
                     mixed[i] = lambda * p.value(i) + (rational(1) - lambda) * q.value(i);
                 auto convex = predicate<R>::from_values(y, mixed);
                 auto lhs = pullback(c, convex);
                 auto pa = pullback(c, p);
                 auto pb = pullback(c, q);
                 for (std::size_t i = 0; i < x.size(); ++i)
                     if (!(lhs.value(i) ==
                           lambda * pa.value(i) + (rational(1) - lambda) * pb.value(i)))
                         ++bad;
             }
             return sweep("properties/pullback-truth-and-affine", bad, n, "exact");
         }},
        {"properties", "properties/compose-functoriality",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 13);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 space z = gen::random_space(rng, 2, 6, "z");
                 auto sigma = gen::random_distribution<R>(rng, x, false);
                 auto c = gen::random_channel<R>(rng, x, y, false);
                 auto d = gen::random_channel<R>(rng, y, z, false);
                 if (!(pushforward(compose(c, d), sigma) ==
                       pushforward(d, pushforward(c, sigma))))
                     ++bad;
             }
             return sweep("properties/compose-functoriality", bad, n, "exact");
         }},
        {"properties", "properties/condition-support",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 14);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, false);
                 auto p = gen::random_predicate<R>(rng, x, true);
                 auto updated = condition(omega, p);
                 for (std::size_t i = 0; i < x.size(); ++i) {
                     bool in_both = omega.weight(i) > rational(0) && p.value(i) > rational(0);
                     if (updated.weight(i) > rational(0) && !in_both) ++bad;
                 }
             }
             return sweep("properties/condition-support", bad, n, "exact");
         }},
        {"properties", "properties/halpern-perfect-prediction",
         +[](const options& o) {
             const long long n = effective_trials(o, 100);
             splitmix64 rng(o.seed + 15);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space y = gen::random_space(rng, 2, 4, "y");
                 space x = gen::random_space(rng, y.size(), 6, "x");
                 auto images = gen::random_surjection(rng, x.size(), y.size());
                 std::vector<std::string> image_labels;
                 for (std::size_t i : images) image_labels.push_back(y.label(i));
                 auto f = channel<R>::deterministic(x, y, image_labels);
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto tau = gen::random_distribution<R>(rng, y, true);
                 auto report = halpern_fiber_check(f, sigma, tau, 0, rng);
                 if (!report.perfect_prediction) ++bad;
             }
             return sweep("properties/halpern-perfect-prediction", bad, n, "exact");
         }},
        {"properties", "properties/halpern-divergence-dominance",
         +[](const options& o) {
             const long long n = effective_trials(o, 100);
             splitmix64 rng(o.seed + 16);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space y = gen::random_space(rng, 2, 4, "y");
                 space x = gen::random_space(rng, y.size(), 6, "x");
                 auto images = gen::random_surjection(rng, x.size(), y.size());
                 std::vector<std::string> image_labels;
                 for (std::size_t i : images) image_labels.push_back(y.label(i));
                 auto f = channel<R>::deterministic(x, y, image_labels);
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto tau = gen::random_distribution<R>(rng, y, true);
                 auto report = halpern_fiber_check(f, sigma, tau, 100, rng);
                 bad += static_cast<long long>(report.divergence_violations);
             }
             return sweep("properties/halpern-divergence-dominance", bad, n * 100,
                          "exact (float evaluation)");
         }},
        {"properties", "properties/free-energy-identity",
         +[](const options& o) {
             const long long n = effective_trials(o, 500);
             splitmix64 rng(o.seed + 17);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto c = gen::random_channel<R>(rng, x, y, true);
                 auto omega = gen::random_distribution<R>(rng, x, true);
                 const std::string& label = y.label(rng.below(y.size()));
                 auto sides = free_energy_identity_check(omega, sigma, c, label);
                 if (!(std::abs(sides.lhs - sides.rhs) <= 1e-10)) ++bad;
             }
             return sweep("properties/free-energy-identity", bad, n, "1e-10");
         }},
        {"properties", "properties/free-energy-maximizer",
         +[](const options& o) {
             const long long n = effective_trials(o, 500);
             splitmix64 rng(o.seed + 18);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto c = gen::random_channel<R>(rng, x, y, true);
                 auto omega = gen::random_distribution<R>(rng, x, true);
                 const std::string& label = y.label(rng.below(y.size()));
                 auto best = jeffrey_point_update(sigma, c, label);
                 if (!(free_energy(best, sigma, c, label) >=
                       free_energy(omega, sigma, c, label)))
                     ++bad;
             }
             return sweep("properties/free-energy-maximizer", bad, n, "exact (float)");
         }},
        {"properties", "properties/focus-whole-codomain-reduces",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 19);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto c = gen::random_channel<R>(rng, x, y, true);
                 auto q = gen::random_predicate<R>(rng, y, true);
                 auto tau = gen::random_distribution<R>(rng, y, true);
                 focus_spec whole(y, y.labels());
                 if (!(focus_pearl(sigma, c, q, whole) == pearl_update(sigma, c, q))) ++bad;
                 if (!(focus_jeffrey(sigma, c, tau, whole) == jeffrey_update(sigma, c, tau)))
                     ++bad;
             }
             return sweep("properties/focus-whole-codomain-reduces", bad, n, "exact");
         }},
        {"properties", "properties/preparation-truth-reduces",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 20);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto c = gen::random_channel<R>(rng, x, y, true);
                 auto q = gen::random_predicate<R>(rng, y, true);
                 auto tau = gen::random_distribution<R>(rng, y, true);
                 auto one = predicate<R>::truth(x);
                 if (!(prepared_pearl(sigma, c, q, one) == pearl_update(sigma, c, q))) ++bad;
                 if (!(prepared_jeffrey(sigma, c, tau, one) == jeffrey_update(sigma, c, tau)))
                     ++bad;
             }
             return sweep("properties/preparation-truth-reduces", bad, n, "exact");
         }},
        {"properties", "properties/prepared-two-path-equality",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 21);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto c = gen::random_channel<R>(rng, x, y, true);
                 auto q = gen::random_predicate<R>(rng, y, true);
                 auto r = gen::random_predicate<R>(rng, x, true);
                 auto two_step = prepared_pearl(sigma, c, q, r);
                 auto one_step = condition(sigma, pred_and(r, pullback(c, q)));
                 if (!(two_step == one_step)) ++bad;
             }
             return sweep("properties/prepared-two-path-equality", bad, n, "exact");
         }},
        {"properties", "properties/focus-singleton-is-point-update",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 22);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto c = gen::random_channel<R>(rng, x, y, true);
                 auto tau = gen::random_distribution<R>(rng, y, true);
                 const std::string& label = y.label(rng.below(y.size()));
                 focus_spec single(y, {label});
                 if (!(focus_jeffrey(sigma, c, tau, single) ==
                       jeffrey_point_update(sigma, c, label)))
                     ++bad;
             }
             return sweep("properties/focus-singleton-is-point-update", bad, n, "exact");
         }},
        {"properties", "properties/serialization-round-trip",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 23);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto d = gen::random_distribution<R>(rng, x, false);
                 auto p = gen::random_predicate<R>(rng, x, false);
                 auto c = gen::random_channel<R>(rng, x, y, false);
                 auto d2 = distribution_from_json<R>(
                     parse_json_text(distribution_to_json(d).dump()));
                 auto p2 =
                     predicate_from_json<R>(parse_json_text(predicate_to_json(p).dump()));
                 auto c2 = channel_from_json<R>(parse_json_text(channel_to_json(c).dump()));
                 if (!(d2 == d && p2 == p && c2 == c)) ++bad;
             }
             return sweep("properties/serialization-round-trip", bad, n, "exact");
         }},

        // ---------------------------- appendix ----------------------------
        {"appendix", "appendix/b-matrix-symmetric-bv-ones",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 30);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, true);
                 auto test = gen::random_test<R>(rng, x, 2 + rng.below(5));
                 auto b = build_B(omega, test);
                 auto v = validity_vector(omega, test);
                 bool ok = b.nonnegative();
                 for (std::size_t i = 0; ok && i < b.order(); ++i)
                     for (std::size_t j = i + 1; j < b.order(); ++j)
                         if (b(i, j) != b(j, i)) { ok = false; break; }
                 auto bv = b * v;
                 for (double entry : bv)
                     if (std::abs(entry - 1.0) > 1e-12) ok = false;
                 if (!ok) ++bad;
             }
             return sweep("appendix/b-matrix-symmetric-bv-ones", bad, n, "1e-12");
         }},
        {"appendix", "appendix/b-matrix-positive-definite",
         +[](const options& o) {
             // Positive definiteness requires the test arms to be linearly
             // independent, so at most |X| of them; with more arms B is
             // merely positive semidefinite.
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 31);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, true);
                 auto test = gen::random_test<R>(rng, x, 2 + rng.below(x.size() - 1));
                 auto b = build_B(omega, test);
                 auto eig = sym_eig(b);
                 if (!(eig.eigenvalues.front() > 0.0)) ++bad;
                 // Quadratic-form spot checks.
                 for (int k = 0; k < 100; ++k) {
                     std::vector<double> z(b.order());
                     for (auto& e : z) e = rng.uniform() * 2.0 - 1.0;
                     bool zero = true;
                     for (double e : z) zero = zero && e == 0.0;
                     if (zero) continue;
                     auto bz = b * z;
                     double quad = 0.0;
                     for (std::size_t i = 0; i < z.size(); ++i) quad += z[i] * bz[i];
                     if (!(quad > 0.0)) ++bad;
                 }
             }
             return sweep("appendix/b-matrix-positive-definite", bad, n, "exact sign");
         }},
        {"appendix", "appendix/c-matrix-stochastic-radius-one",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 32);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, true);
                 auto test = gen::random_test<R>(rng, x, 2 + rng.below(5));
                 auto c = build_C(omega, test);
                 bool ok = c.nonnegative();
                 for (std::size_t j = 0; ok && j < c.order(); ++j) {
                     double col = 0.0;
                     for (std::size_t i = 0; i < c.order(); ++i) col += c(i, j);
                     if (std::abs(col - 1.0) > 1e-12) ok = false;
                 }
                 if (std::abs(spectral_radius(c) - 1.0) > 1e-9) ok = false;
                 if (!ok) ++bad;
             }
             return sweep("appendix/c-matrix-stochastic-radius-one", bad, n,
                          "cols 1e-12, rho 1e-9");
         }},
        {"appendix", "appendix/c-matrix-fixed-point-and-vb",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 33);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, true);
                 auto test = gen::random_test<R>(rng, x, 2 + rng.below(5));
                 auto b = build_B(omega, test);
                 auto c = build_C(omega, test);
                 auto v = validity_vector(omega, test);
                 bool ok = true;
                 auto cv = c * v;
                 for (std::size_t i = 0; i < v.size(); ++i)
                     if (std::abs(cv[i] - v[i]) > 1e-12) ok = false;
                 auto vb = square_matrix::diagonal(v) * b;
                 if (max_abs_diff(c, vb) > 1e-12) ok = false;
                 // Exact identities on the rational side: C = VB and Cv = v,
                 // with every entry computed from the defining formulas.
                 auto vals = test_validities(omega, test);
                 for (std::size_t i = 0; ok && i < test.size(); ++i) {
                     rational cv_exact(0);
                     for (std::size_t j = 0; j < test.size(); ++j) {
                         rational c_ij = validity(condition(omega, test.at(j)), test.at(i));
                         rational b_ij = validity(omega, pred_and(test.at(i), test.at(j))) /
                                         (vals[i] * vals[j]);
                         if (!(c_ij == vals[i] * b_ij)) ok = false;
                         cv_exact += c_ij * vals[j];
                     }
                     if (!(cv_exact == vals[i])) ok = false;
                 }
                 if (!ok) ++bad;
             }
             return sweep("appendix/c-matrix-fixed-point-and-vb", bad, n,
                          "1e-12 float, exact rational");
         }},
        {"appendix", "appendix/mood-test-bv-ones",
         +[](const options&) {
             auto m = fixtures::mood<R>();
             std::vector<predicate<R>> arms;
             for (const auto& y : m.marks.labels())
                 arms.push_back(pullback(m.chan, predicate<R>::point(m.marks, y)));
             auto test = n_test<R>::from_predicates(std::move(arms));
             auto b = build_B(m.prior, test);
             auto v = validity_vector(m.prior, test);
             auto bv = b * v;
             double worst = 0.0;
             for (double entry : bv) worst = std::max(worst, std::abs(entry - 1.0));
             return outcome{"appendix/mood-test-bv-ones", worst <= 1e-12,
                            "B v = 1 componentwise", "max deviation " +
                                detail::doubles({worst}),
                            "1e-12"};
         }},
        {"appendix", "appendix/sqrt-psd-reconstruction",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 34);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, true);
                 auto test = gen::random_test<R>(rng, x, 2 + rng.below(x.size() - 1));
                 auto b = build_B(omega, test);
                 auto half = sqrt_psd(b);
                 if (max_abs_diff(half * half, b) > 1e-8) ++bad;
                 auto inv_half = psd_power(b, -0.5);
                 if (max_abs_diff(half * inv_half,
                                  square_matrix::identity(b.order())) > 1e-8)
                     ++bad;
             }
             return sweep("appendix/sqrt-psd-reconstruction", bad, n, "1e-8");
         }},
        {"appendix", "appendix/jacobi-reconstruction",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 35);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 std::size_t order = 2 + rng.below(5);
                 square_matrix a(order);
                 for (std::size_t i = 0; i < order; ++i)
                     for (std::size_t j = i; j < order; ++j) {
                         double v = rng.uniform() * 2.0 - 1.0;
                         a(i, j) = v;
                         a(j, i) = v;
                     }
                 auto eig = sym_eig(a);
                 square_matrix reconstructed =
                     eig.eigenvectors * square_matrix::diagonal(eig.eigenvalues) *
                     eig.eigenvectors.transpose();
                 if (max_abs_diff(reconstructed, a) > 1e-8) ++bad;
                 if (max_abs_diff(eig.eigenvectors.transpose() * eig.eigenvectors,
                                  square_matrix::identity(order)) > 1e-8)
                     ++bad;
             }
             return sweep("appendix/jacobi-reconstruction", bad, n, "1e-8");
         }},
        {"appendix", "appendix/proposition-eq4",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 36);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, true);
                 std::size_t arms = 2 + rng.below(5);
                 auto test = gen::random_test<R>(rng, x, arms);
                 auto r = gen::random_distribution<R>(
                     rng, gen::random_space(rng, arms, arms, "r"), true);
                 if (proposition_lhs(omega, test, r.weights()) > 1.0 + 1e-12) ++bad;
             }
             return sweep("appendix/proposition-eq4", bad, n, "<= 1 + 1e-12");
         }},
        {"appendix", "appendix/proposition-equality-at-v",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 37);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, true);
                 auto test = gen::random_test<R>(rng, x, 2 + rng.below(5));
                 auto v = test_validities(omega, test);
                 if (std::abs(proposition_lhs(omega, test, v) - 1.0) > 1e-12) ++bad;
             }
             return sweep("appendix/proposition-equality-at-v", bad, n, "1e-12");
         }},
        {"appendix", "appendix/lemma5-diag-bound",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 38);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, true);
                 auto test = gen::random_test<R>(rng, x, 2 + rng.below(5));
                 std::vector<double> d(test.size());
                 for (auto& e : d) e = rng.uniform() * 2.0;
                 if (!lemma_diag_bound_check(omega, test, d).holds) ++bad;
             }
             return sweep("appendix/lemma5-diag-bound", bad, n, "1e-9");
         }},
        {"appendix", "appendix/lemma4-similarity",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 39);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, true);
                 auto test = gen::random_test<R>(rng, x, 2 + rng.below(x.size() - 1));
                 std::vector<double> d(test.size());
                 for (auto& e : d) e = rng.uniform() * 2.0;
                 if (!dagger_similarity_check(omega, test, d).holds) ++bad;
             }
             return sweep("appendix/lemma4-similarity", bad, n, "1e-7 relative");
         }},
        {"appendix", "appendix/subinvariance-bound",
         +[](const options& o) {
             const long long n = effective_trials(o, 200);
             splitmix64 rng(o.seed + 40);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 std::size_t order = 2 + rng.below(5);
                 square_matrix a(order);
                 for (std::size_t i = 0; i < order; ++i)
                     for (std::size_t j = 0; j < order; ++j) a(i, j) = rng.uniform();
                 std::vector<double> xvec(order);
                 for (auto& e : xvec) e = 0.1 + rng.uniform();
                 if (!subinvariance_bound_check(a, xvec).holds) ++bad;
             }
             return sweep("appendix/subinvariance-bound", bad, n, "1e-9");
         }},
        {"appendix", "appendix/proposition-proof-dc-radius-one",
         +[](const options& o) {
             const long long n = effective_trials(o, 200);
             splitmix64 rng(o.seed + 41);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, true);
                 std::size_t arms = 2 + rng.below(5);
                 auto test = gen::random_test<R>(rng, x, arms);
                 auto c = build_C(omega, test);
                 auto r = gen::random_distribution<R>(
                     rng, gen::random_space(rng, arms, arms, "r"), true);
                 std::vector<double> rv;
                 for (const auto& w : r.weights()) rv.push_back(w.to_double());
                 auto cr = c * rv;
                 std::vector<double> d(arms);
                 for (std::size_t i = 0; i < arms; ++i) d[i] = rv[i] / cr[i];
                 double rho = spectral_radius(square_matrix::diagonal(d) * c);
                 if (std::abs(rho - 1.0) > 1e-9) ++bad;
             }
             return sweep("appendix/proposition-proof-dc-radius-one", bad, n, "1e-9");
         }},
        {"appendix", "appendix/gelfand-stochastic-constant-one",
         +[](const options& o) {
             const long long n = effective_trials(o, 200);
             splitmix64 rng(o.seed + 42);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 auto omega = gen::random_distribution<R>(rng, x, true);
                 auto test = gen::random_test<R>(rng, x, 2 + rng.below(5));
                 auto c = build_C(omega, test);
                 for (double term : gelfand_estimate(c, 64))
                     if (std::abs(term - 1.0) > 1e-12) ++bad;
             }
             return sweep("appendix/gelfand-stochastic-constant-one", bad, n, "1e-12");
         }},
        {"appendix", "appendix/gelfand-approaches-radius",
         +[](const options& o) {
             const long long n = effective_trials(o, 200);
             splitmix64 rng(o.seed + 43);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 square_matrix a(4);
                 for (std::size_t i = 0; i < 4; ++i)
                     for (std::size_t j = 0; j < 4; ++j) a(i, j) = rng.uniform();
                 double rho = spectral_radius(a);
                 double final = gelfand_estimate(a, 64).back();
                 if (!(std::abs(final - rho) <= 0.05 * rho)) ++bad;
             }
             return sweep("appendix/gelfand-approaches-radius", bad, n, "5% relative");
         }},
        {"appendix", "appendix/divergence-decrease-chain",
         +[](const options& o) {
             const long long n = effective_trials(o, 1000);
             splitmix64 rng(o.seed + 44);
             long long bad = 0;
             for (long long t = 0; t < n; ++t) {
                 space x = gen::random_space(rng, 2, 6, "x");
                 space y = gen::random_space(rng, 2, 6, "y");
                 auto sigma = gen::random_distribution<R>(rng, x, true);
                 auto c = gen::random_channel<R>(rng, x, y, true);
                 auto tau = gen::random_distribution<R>(rng, y, t % 2 == 0);
                 auto chain = divergence_chain_check(sigma, c, tau);
                 if (!(chain.ratio_sum <= 1.0 + 1e-12)) ++bad;
                 if (!(chain.kl_difference <= chain.log_bound + 1e-12)) ++bad;
             }
             return sweep("appendix/divergence-decrease-chain", bad, n, "1e-12");
         }},
    };
    return registry;
}

// ---------------------------------------------------------------------------
// Runner: prints one line per check plus a summary; exit status 0 iff all
// selected checks pass.
// ---------------------------------------------------------------------------

struct summary {
    std::size_t total = 0;
    std::size_t passed = 0;
    bool ok() const { return passed == total; }
};

inline bool suite_selected(const std::string& suite, const char* check_suite) {
    return suite == "all" || suite == check_suite;
}

inline summary run(const std::string& suite, const options& opts, std::ostream& out) {
    summary s;
    for (const auto& check : checks()) {
        if (!suite_selected(suite, check.suite)) continue;
        outcome result = check.fn(opts);
        ++s.total;
        if (result.passed) ++s.passed;
        out << (result.passed ? "[ ok ] " : "[FAIL] ") << std::left << std::setw(52)
            << result.name << " expected: " << result.expected
            << " | actual: " << result.actual << " | tolerance: " << result.tolerance
            << "\n";
    }
    out << s.passed << "/" << s.total << " checks passed (suite: " << suite
        << ", seed: " << opts.seed << ", trials: ";
    if (opts.trials < 0) out << "default";
    else out << opts.trials;
    out << ")\n";
    return s;
}

} // namespace verify
} // namespace channelkit
