#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "channelkit/channel.hpp"
#include "channelkit/distribution.hpp"
#include "channelkit/errors.hpp"
#include "channelkit/predicate.hpp"
#include "channelkit/rng.hpp"
#include "channelkit/space.hpp"

namespace channelkit {

// Bayesian inversion of a channel with respect to a prior. Row y of the
// result is sigma(x)·c(x)(y) / (c >> sigma)(y); it requires the prediction
// to have full support and names the first outcome where it does not.
template <typename S>
channel<S> dagger(const channel<S>& c, const distribution<S>& sigma) {
    distribution<S> predicted = pushforward(c, sigma);
    for (std::size_t j = 0; j < predicted.size(); ++j)
        if (!(predicted.weight(j) > scalar_traits<S>::zero()))
            throw prediction_not_full_support(predicted.outcomes().label(j));
    std::vector<distribution<S>> rows;
    rows.reserve(predicted.size());
    for (std::size_t j = 0; j < predicted.size(); ++j) {
        std::vector<S> w(sigma.size());
        for (std::size_t i = 0; i < sigma.size(); ++i)
            w[i] = sigma.weight(i) * c.row(i).weight(j) / predicted.weight(j);
        rows.push_back(distribution<S>::from_weights(sigma.outcomes(), std::move(w)));
    }
    return channel<S>::from_rows(predicted.outcomes(), std::move(rows));
}

// Pearl's rule: condition the prior on the transformed evidence predicate.
template <typename S>
distribution<S> pearl_update(const distribution<S>& sigma, const channel<S>& c,
                             const predicate<S>& q) {
    return condition(sigma, pullback(c, q));
}

// Jeffrey's rule: push the evidence state back through the dagger.
template <typename S>
distribution<S> jeffrey_update(const distribution<S>& sigma, const channel<S>& c,
                               const distribution<S>& tau) {
    require_same_space(c.codomain(), tau.outcomes(), "jeffrey_update");
    return pushforward(dagger(c, sigma), tau);
}

// Jeffrey update by a single observed point: the dagger row at y, computed
// directly so that only the prediction at y needs to be nonzero.
template <typename S>
distribution<S> jeffrey_point_update(const distribution<S>& sigma, const channel<S>& c,
                                     std::string_view y) {
    require_same_space(c.domain(), sigma.outcomes(), "jeffrey_point_update");
    const std::size_t j = c.codomain().index_of(y);
    S predicted = scalar_traits<S>::zero();
    for (std::size_t i = 0; i < sigma.size(); ++i)
        predicted += sigma.weight(i) * c.row(i).weight(j);
    if (!(predicted > scalar_traits<S>::zero()))
        throw zero_prediction_at_point("jeffrey_point_update: prediction is zero at '" +
                                       std::string(y) + "'");
    std::vector<S> w(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i)
        w[i] = sigma.weight(i) * c.row(i).weight(j) / predicted;
    return distribution<S>::from_weights(sigma.outcomes(), std::move(w));
}

// Kullback-Leibler divergence, natural logarithm. Terms with omega(x) = 0
// contribute nothing; a support violation yields +infinity rather than an
// error so that divergence tables can still be rendered.
template <typename S>
double kl_divergence(const distribution<S>& omega, const distribution<S>& rho) {
    require_same_space(omega.outcomes(), rho.outcomes(), "kl_divergence");
    double total = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        if (!(omega.weight(i) > scalar_traits<S>::zero())) continue;
        if (!(rho.weight(i) > scalar_traits<S>::zero()))
            return std::numeric_limits<double>::infinity();
        const double w = scalar_traits<S>::to_double(omega.weight(i));
        const double r = scalar_traits<S>::to_double(rho.weight(i));
        total += w * std::log(w / r);
    }
    return total;
}

// Total variation distance: half the l1 distance, in [0,1].
template <typename S>
double total_variation(const distribution<S>& omega, const distribution<S>& rho) {
    require_same_space(omega.outcomes(), rho.outcomes(), "total_variation");
    double total = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i)
        total += std::abs(scalar_traits<S>::to_double(omega.weight(i)) -
                          scalar_traits<S>::to_double(rho.weight(i)));
    return total / 2.0;
}

// Pearl's update expressed through Jeffrey's rule: the predicted state,
// conditioned on q, serves as the Jeffrey evidence.
template <typename S>
distribution<S> pearl_as_jeffrey(const distribution<S>& sigma, const channel<S>& c,
                                 const predicate<S>& q) {
    distribution<S> predicted = pushforward(c, sigma);
    return jeffrey_update(sigma, c, condition(predicted, q));
}

// Jeffrey evidence turned into a Pearl predicate: the likelihood ratios
// tau(y)/(c >> sigma)(y), rescaled by their maximum into [0,1]. Any positive
// rescaling gives the same update; dividing by the maximum is canonical.
template <typename S>
predicate<S> evidence_state_as_predicate(const distribution<S>& tau, const channel<S>& c,
                                         const distribution<S>& sigma) {
    require_same_space(c.codomain(), tau.outcomes(), "evidence_state_as_predicate");
    distribution<S> predicted = pushforward(c, sigma);
    for (std::size_t j = 0; j < predicted.size(); ++j)
        if (!(predicted.weight(j) > scalar_traits<S>::zero()))
            throw prediction_not_full_support(predicted.outcomes().label(j));
    std::vector<S> ratio(tau.size());
    S max_ratio = scalar_traits<S>::zero();
    for (std::size_t j = 0; j < tau.size(); ++j) {
        ratio[j] = tau.weight(j) / predicted.weight(j);
        if (ratio[j] > max_ratio) max_ratio = ratio[j];
    }
    for (auto& r : ratio) r /= max_ratio;
    return predicate<S>::from_values(tau.outcomes(), std::move(ratio));
}

// Result of exercising the deterministic-channel (perfect prediction)
// property: Jeffrey's update pushes forward to the evidence exactly, and no
// feasible state diverges less from the prior than the Jeffrey update does.
struct halpern_report {
    bool perfect_prediction = false;
    std::size_t trials = 0;
    std::size_t divergence_violations = 0;
    double min_margin = std::numeric_limits<double>::infinity();

    bool holds() const { return perfect_prediction && divergence_violations == 0; }
};

// Verifies the two claims for a deterministic channel <f>:
//   (a) <f> >> sigma_J == tau, with sigma_J = <f>^dagger_sigma >> tau;
//   (b) D_KL(sigma, sigma_J) <= D_KL(sigma, omega) for sampled omega with
//       <f> >> omega == tau (drawn by mixing random fiber conditionals by tau).
template <typename S>
halpern_report halpern_fiber_check(const channel<S>& det, const distribution<S>& sigma,
                                   const distribution<S>& tau, std::size_t trials,
                                   splitmix64& rng) {
    require_same_space(det.domain(), sigma.outcomes(), "halpern_fiber_check");
    require_same_space(det.codomain(), tau.outcomes(), "halpern_fiber_check");
    if (!det.is_deterministic())
        throw invalid_argument("halpern_fiber_check: channel is not deterministic");

    const std::size_t nx = sigma.size();
    const std::size_t ny = tau.size();
    std::vector<std::size_t> image(nx);
    std::vector<std::vector<std::size_t>> fiber(ny);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j)
            if (det.row(i).weight(j) == scalar_traits<S>::one()) {
                image[i] = j;
                fiber[j].push_back(i);
                break;
            }
    }

    // Fiber masses of the prior; the prediction must be positive wherever
    // the evidence is, or the Jeffrey update is undefined.
    std::vector<S> fiber_mass(ny, scalar_traits<S>::zero());
    for (std::size_t i = 0; i < nx; ++i) fiber_mass[image[i]] += sigma.weight(i);
    for (std::size_t j = 0; j < ny; ++j)
        if (tau.weight(j) > scalar_traits<S>::zero() &&
            !(fiber_mass[j] > scalar_traits<S>::zero()))
            throw prediction_not_full_support(tau.outcomes().label(j));

    // sigma_J: renormalize the prior on each fiber and mix by tau.
    std::vector<S> sj(nx, scalar_traits<S>::zero());
    for (std::size_t i = 0; i < nx; ++i) {
        const std::size_t j = image[i];
        if (tau.weight(j) > scalar_traits<S>::zero())
            sj[i] = tau.weight(j) * sigma.weight(i) / fiber_mass[j];
    }
    distribution<S> sigma_j = distribution<S>::from_weights(sigma.outcomes(), sj);

    halpern_report report;
    distribution<S> pushed = pushforward(det, sigma_j);
    if constexpr (scalar_traits<S>::is_exact) {
        report.perfect_prediction = pushed == tau;
    } else {
        bool close = true;
        for (std::size_t j = 0; j < ny; ++j)
            close = close && std::abs(pushed.weight(j) - tau.weight(j)) <= 1e-12;
        report.perfect_prediction = close;
    }

    const double kl_j = kl_divergence(sigma, sigma_j);
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<S> w(nx, scalar_traits<S>::zero());
        for (std::size_t j = 0; j < ny; ++j) {
            if (!(tau.weight(j) > scalar_traits<S>::zero()) || fiber[j].empty()) continue;
            std::vector<S> mix(fiber[j].size());
            S total = scalar_traits<S>::zero();
            for (auto& m : mix) {
                if constexpr (scalar_traits<S>::is_exact)
                    m = scalar_traits<S>::ratio(rng.between(1, gen::kResolution), 1);
                else
                    m = rng.uniform() + 1e-6;
                total += m;
            }
            for (std::size_t k = 0; k < fiber[j].size(); ++k)
                w[fiber[j][k]] = tau.weight(j) * mix[k] / total;
        }
        distribution<S> omega = distribution<S>::from_weights(sigma.outcomes(), std::move(w));
        const double kl_w = kl_divergence(sigma, omega);
        const double margin = (std::isinf(kl_j) && std::isinf(kl_w)) ? 0.0 : kl_w - kl_j;
        if (margin < report.min_margin) report.min_margin = margin;
        if (margin < 0.0) ++report.divergence_violations;
        ++report.trials;
    }
    return report;
}

} // namespace channelkit
