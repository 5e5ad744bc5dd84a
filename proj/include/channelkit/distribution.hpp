#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "channelkit/errors.hpp"
#include "channelkit/rational.hpp"
#include "channelkit/space.hpp"

namespace channelkit {

// A finite probability distribution: one weight per outcome of its space,
// all weights >= 0, summing to one (exactly on the rational backend, within
// 1e-9 on the float backend). Zero-weight outcomes are stored explicitly;
// the support is computed on demand.
template <typename S>
class distribution {
public:
    using scalar = S;
    using traits = scalar_traits<S>;

    distribution() = default;

    static distribution from_weights(space sp, std::vector<S> weights,
                                     bool normalize = false) {
        if (weights.size() != sp.size())
            throw invalid_argument("distribution: want " + std::to_string(sp.size()) +
                                   " weights, got " + std::to_string(weights.size()));
        S total = traits::zero();
        for (const auto& w : weights) {
            if (w < traits::zero())
                throw negative_weight("distribution: negative weight");
            total += w;
        }
        if (normalize) {
            if (!(total > traits::zero()))
                throw zero_total_mass("distribution: cannot normalize zero total mass");
            for (auto& w : weights) w /= total;
        } else if (!traits::is_one_sum(total)) {
            throw not_normalized("distribution: weights sum to " + traits::render(total) +
                                 ", not 1");
        }
        return distribution(std::move(sp), std::move(weights));
    }

    static distribution from_map(space sp, const std::map<std::string, S>& weights,
                                 bool normalize = false) {
        std::vector<S> w(sp.size(), traits::zero());
        for (const auto& [label, value] : weights)
            w[sp.index_of(label)] = value;
        return from_weights(std::move(sp), std::move(w), normalize);
    }

    // Point mass 1|x>.
    static distribution point(space sp, std::string_view label) {
        std::vector<S> w(sp.size(), traits::zero());
        w[sp.index_of(label)] = traits::one();
        return distribution(std::move(sp), std::move(w));
    }

    static distribution uniform(space sp) {
        const auto n = static_cast<long long>(sp.size());
        std::vector<S> w(sp.size(), traits::ratio(1, n));
        return from_weights(std::move(sp), std::move(w), true);
    }

    const space& outcomes() const { return space_; }
    std::size_t size() const { return weights_.size(); }
    const std::vector<S>& weights() const { return weights_; }
    const S& weight(std::size_t i) const { return weights_[i]; }
    const S& at(std::string_view label) const { return weights_[space_.index_of(label)]; }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < weights_.size(); ++i)
            if (weights_[i] > traits::zero()) out.push_back(i);
        return out;
    }

    bool full_support() const {
        for (const auto& w : weights_)
            if (!(w > traits::zero())) return false;
        return true;
    }

    friend bool operator==(const distribution& a, const distribution& b) {
        return a.space_ == b.space_ && a.weights_ == b.weights_;
    }
    friend bool operator!=(const distribution& a, const distribution& b) {
        return !(a == b);
    }

private:
    distribution(space sp, std::vector<S> weights)
        : space_(std::move(sp)), weights_(std::move(weights)) {}

    space space_;
    std::vector<S> weights_;
};

} // namespace channelkit
