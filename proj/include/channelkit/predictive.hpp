#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "channelkit/channel.hpp"
#include "channelkit/distribution.hpp"
#include "channelkit/errors.hpp"
#include "channelkit/predicate.hpp"
#include "channelkit/updates.hpp"

namespace channelkit {

// The generative model of a prior and a channel: the joint state
// gamma(x, y) = sigma(x) c(x)(y), whose marginals recover the prior and the
// prediction.
template <typename S>
class generative_joint {
public:
    static generative_joint from(const distribution<S>& sigma, const channel<S>& c) {
        require_same_space(c.domain(), sigma.outcomes(), "generative_joint");
        generative_joint g;
        g.internal_ = sigma.outcomes();
        g.external_ = c.codomain();
        g.gamma_.resize(g.internal_.size() * g.external_.size());
        for (std::size_t i = 0; i < g.internal_.size(); ++i)
            for (std::size_t j = 0; j < g.external_.size(); ++j)
                g.gamma_[i * g.external_.size() + j] = sigma.weight(i) * c.row(i).weight(j);
        return g;
    }

    const space& internal_space() const { return internal_; }
    const space& external_space() const { return external_; }

    const S& at(std::size_t i, std::size_t j) const {
        return gamma_[i * external_.size() + j];
    }
    const S& at(std::string_view x, std::string_view y) const {
        return at(internal_.index_of(x), external_.index_of(y));
    }

    // Marginal over the external side: recovers the prior.
    distribution<S> marginal_internal() const {
        std::vector<S> w(internal_.size(), scalar_traits<S>::zero());
        for (std::size_t i = 0; i < internal_.size(); ++i)
            for (std::size_t j = 0; j < external_.size(); ++j) w[i] += at(i, j);
        return distribution<S>::from_weights(internal_, std::move(w));
    }

    // Marginal over the internal side: recovers the prediction.
    distribution<S> marginal_external() const {
        std::vector<S> w(external_.size(), scalar_traits<S>::zero());
        for (std::size_t i = 0; i < internal_.size(); ++i)
            for (std::size_t j = 0; j < external_.size(); ++j) w[j] += at(i, j);
        return distribution<S>::from_weights(external_, std::move(w));
    }

private:
    space internal_, external_;
    std::vector<S> gamma_;
};

// Free energy of a candidate internal state at a point observation y:
//   F(omega) = sum_x omega(x) ln(gamma(x,y) / omega(x)).
// Requires omega to be supported where the joint is; maximized (over omega)
// by the dagger row at y.
template <typename S>
double free_energy(const distribution<S>& omega, const distribution<S>& sigma,
                   const channel<S>& c, std::string_view y) {
    require_same_space(omega.outcomes(), sigma.outcomes(), "free_energy");
    require_same_space(c.domain(), sigma.outcomes(), "free_energy");
    const std::size_t j = c.codomain().index_of(y);
    double total = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        if (!(omega.weight(i) > scalar_traits<S>::zero())) continue;
        S gamma = sigma.weight(i) * c.row(i).weight(j);
        if (!(gamma > scalar_traits<S>::zero()))
            throw support_violation("free_energy: omega has mass at '" +
                                    omega.outcomes().label(i) +
                                    "' where the joint state vanishes");
        const double w = scalar_traits<S>::to_double(omega.weight(i));
        total += w * std::log(scalar_traits<S>::to_double(gamma) / w);
    }
    return total;
}

struct free_energy_identity {
    double lhs = 0.0;  // D_KL(omega, dagger row at y)
    double rhs = 0.0;  // -F(omega) + ln((c >> sigma)(y))
};

// Both sides of the identity relating divergence from the point-Jeffrey
// posterior to free energy; they agree to float accuracy.
template <typename S>
free_energy_identity free_energy_identity_check(const distribution<S>& omega,
                                                const distribution<S>& sigma,
                                                const channel<S>& c, std::string_view y) {
    free_energy_identity out;
    distribution<S> row = jeffrey_point_update(sigma, c, y);
    out.lhs = kl_divergence(omega, row);
    const std::size_t j = c.codomain().index_of(y);
    S predicted = scalar_traits<S>::zero();
    for (std::size_t i = 0; i < sigma.size(); ++i)
        predicted += sigma.weight(i) * c.row(i).weight(j);
    out.rhs = -free_energy(omega, sigma, c, y) +
              std::log(scalar_traits<S>::to_double(predicted));
    return out;
}

// A nonempty subset of a space, used to mask evidence.
class focus_spec {
public:
    focus_spec(space sp, std::vector<std::string> labels)
        : space_(std::move(sp)), labels_(std::move(labels)) {
        if (labels_.empty()) throw invalid_argument("focus_spec: empty focus set");
        std::vector<bool> seen(space_.size(), false);
        for (const auto& l : labels_) {
            std::size_t i = space_.index_of(l);
            if (seen[i]) throw invalid_argument("focus_spec: duplicate label '" + l + "'");
            seen[i] = true;
        }
    }

    const space& outcomes() const { return space_; }
    const std::vector<std::string>& labels() const { return labels_; }

    template <typename S>
    predicate<S> indicator() const {
        return predicate<S>::sharp(space_, labels_);
    }

private:
    space space_;
    std::vector<std::string> labels_;
};

// Focused Pearl update: mask the evidence predicate by the focus indicator.
template <typename S>
distribution<S> focus_pearl(const distribution<S>& sigma, const channel<S>& c,
                            const predicate<S>& q, const focus_spec& focus) {
    require_same_space(c.codomain(), focus.outcomes(), "focus_pearl");
    return pearl_update(sigma, c, pred_and(q, focus.indicator<S>()));
}

// Focused Jeffrey update: condition the evidence state on the focus set.
template <typename S>
distribution<S> focus_jeffrey(const distribution<S>& sigma, const channel<S>& c,
                              const distribution<S>& tau, const focus_spec& focus) {
    require_same_space(c.codomain(), focus.outcomes(), "focus_jeffrey");
    return jeffrey_update(sigma, c, condition(tau, focus.indicator<S>()));
}

// Expectation management before a Pearl update: condition the prior on an
// internal predicate r first. Equal to conditioning once on r & (c << q).
template <typename S>
distribution<S> prepared_pearl(const distribution<S>& sigma, const channel<S>& c,
                               const predicate<S>& q, const predicate<S>& r) {
    return pearl_update(condition(sigma, r), c, q);
}

// Expectation management before a Jeffrey update: the dagger is taken at
// the prepared prior.
template <typename S>
distribution<S> prepared_jeffrey(const distribution<S>& sigma, const channel<S>& c,
                                 const distribution<S>& tau, const predicate<S>& r) {
    return jeffrey_update(condition(sigma, r), c, tau);
}

} // namespace channelkit
