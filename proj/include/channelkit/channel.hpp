#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "channelkit/distribution.hpp"
#include "channelkit/errors.hpp"
#include "channelkit/predicate.hpp"
#include "channelkit/space.hpp"

namespace channelkit {

// A channel X -> D(Y): one distribution on the codomain per outcome of the
// domain. Equivalently a conditional probability table / stochastic matrix.
template <typename S>
class channel {
public:
    using scalar = S;
    using traits = scalar_traits<S>;

    channel() = default;

    static channel from_rows(space domain, std::vector<distribution<S>> rows) {
        if (rows.size() != domain.size())
            throw invalid_argument("channel: want " + std::to_string(domain.size()) +
                                   " rows, got " + std::to_string(rows.size()));
        for (const auto& r : rows)
            require_same_space(rows.front().outcomes(), r.outcomes(), "channel rows");
        return channel(std::move(domain), std::move(rows));
    }

    static channel from_map(space domain, space codomain,
                            const std::map<std::string, std::map<std::string, S>>& rows,
                            bool normalize = false) {
        std::vector<distribution<S>> r;
        r.reserve(domain.size());
        for (const auto& label : domain.labels()) {
            auto it = rows.find(label);
            if (it == rows.end())
                throw invalid_argument("channel: missing row for outcome '" + label + "'");
            r.push_back(distribution<S>::from_map(codomain, it->second, normalize));
        }
        return from_rows(std::move(domain), std::move(r));
    }

    // <f>: the deterministic channel of a function given pointwise by labels.
    static channel deterministic(space domain, space codomain,
                                 const std::vector<std::string>& images) {
        if (images.size() != domain.size())
            throw invalid_argument("channel: want one image per domain outcome");
        std::vector<distribution<S>> rows;
        rows.reserve(images.size());
        for (const auto& y : images)
            rows.push_back(distribution<S>::point(codomain, y));
        return from_rows(std::move(domain), std::move(rows));
    }

    static channel identity(const space& sp) {
        return deterministic(sp, sp, sp.labels());
    }

    const space& domain() const { return domain_; }
    const space& codomain() const { return rows_.front().outcomes(); }
    const distribution<S>& row(std::size_t i) const { return rows_[i]; }
    const distribution<S>& row(std::string_view label) const {
        return rows_[domain_.index_of(label)];
    }
    const std::vector<distribution<S>>& rows() const { return rows_; }

    // True when every row is a point mass.
    bool is_deterministic() const {
        for (const auto& r : rows_) {
            std::size_t ones = 0;
            for (std::size_t j = 0; j < r.size(); ++j) {
                const S& w = r.weight(j);
                if (w == traits::one()) ++ones;
                else if (!(w == traits::zero())) return false;
            }
            if (ones != 1) return false;
        }
        return true;
    }

    friend bool operator==(const channel& a, const channel& b) {
        return a.domain_ == b.domain_ && a.rows_ == b.rows_;
    }
    friend bool operator!=(const channel& a, const channel& b) { return !(a == b); }

private:
    channel(space domain, std::vector<distribution<S>> rows)
        : domain_(std::move(domain)), rows_(std::move(rows)) {}

    space domain_;
    std::vector<distribution<S>> rows_;
};

// State transformation c >> sigma, the prediction on the codomain.
template <typename S>
distribution<S> pushforward(const channel<S>& c, const distribution<S>& sigma) {
    require_same_space(c.domain(), sigma.outcomes(), "pushforward");
    std::vector<S> w(c.codomain().size(), scalar_traits<S>::zero());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma.weight(i) == scalar_traits<S>::zero()) continue;
        const auto& row = c.row(i);
        for (std::size_t j = 0; j < w.size(); ++j)
            w[j] += sigma.weight(i) * row.weight(j);
    }
    return distribution<S>::from_weights(c.codomain(), std::move(w));
}

// Predicate transformation c << q, acting against the direction of the channel.
template <typename S>
predicate<S> pullback(const channel<S>& c, const predicate<S>& q) {
    require_same_space(c.codomain(), q.outcomes(), "pullback");
    std::vector<S> v(c.domain().size(), scalar_traits<S>::zero());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& row = c.row(i);
        S acc = scalar_traits<S>::zero();
        for (std::size_t j = 0; j < q.size(); ++j)
            acc += row.weight(j) * q.value(j);
        v[i] = acc;
    }
    return predicate<S>::from_values(c.domain(), std::move(v));
}

// Sequential composition: first c, then d.
template <typename S>
channel<S> compose(const channel<S>& c, const channel<S>& d) {
    require_same_space(c.codomain(), d.domain(), "compose");
    std::vector<distribution<S>> rows;
    rows.reserve(c.domain().size());
    for (std::size_t i = 0; i < c.domain().size(); ++i)
        rows.push_back(pushforward(d, c.row(i)));
    return channel<S>::from_rows(c.domain(), std::move(rows));
}

} // namespace channelkit
