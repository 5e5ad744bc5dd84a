#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "channelkit/distribution.hpp"
#include "channelkit/errors.hpp"
#include "channelkit/rational.hpp"
#include "channelkit/space.hpp"

namespace channelkit {

// A fuzzy predicate: a [0,1]-valued function on a space. Sharp predicates
// take only the values 0 and 1; the point predicate 1_x is 1 exactly at x.
template <typename S>
class predicate {
public:
    using scalar = S;
    using traits = scalar_traits<S>;

    predicate() = default;

    static predicate from_values(space sp, std::vector<S> values) {
        if (values.size() != sp.size())
            throw invalid_argument("predicate: want " + std::to_string(sp.size()) +
                                   " values, got " + std::to_string(values.size()));
        for (auto& v : values) {
            if (!traits::in_unit_interval(v))
                throw invalid_argument("predicate: value " + traits::render(v) +
                                       " outside [0,1]");
            v = traits::clamp_unit(v);
        }
        return predicate(std::move(sp), std::move(values));
    }

    static predicate from_map(space sp, const std::map<std::string, S>& values) {
        std::vector<S> v(sp.size(), traits::zero());
        for (const auto& [label, value] : values)
            v[sp.index_of(label)] = value;
        return from_values(std::move(sp), std::move(v));
    }

    static predicate truth(space sp) {
        std::vector<S> v(sp.size(), traits::one());
        return predicate(std::move(sp), std::move(v));
    }

    static predicate point(space sp, std::string_view label) {
        std::vector<S> v(sp.size(), traits::zero());
        v[sp.index_of(label)] = traits::one();
        return predicate(std::move(sp), std::move(v));
    }

    // Indicator 1_F of a subset given by labels.
    static predicate sharp(space sp, const std::vector<std::string>& subset) {
        std::vector<S> v(sp.size(), traits::zero());
        for (const auto& label : subset)
            v[sp.index_of(label)] = traits::one();
        return predicate(std::move(sp), std::move(v));
    }

    const space& outcomes() const { return space_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<S>& values() const { return values_; }
    const S& value(std::size_t i) const { return values_[i]; }
    const S& at(std::string_view label) const { return values_[space_.index_of(label)]; }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (values_[i] > traits::zero()) out.push_back(i);
        return out;
    }

    friend bool operator==(const predicate& a, const predicate& b) {
        return a.space_ == b.space_ && a.values_ == b.values_;
    }
    friend bool operator!=(const predicate& a, const predicate& b) { return !(a == b); }

private:
    predicate(space sp, std::vector<S> values)
        : space_(std::move(sp)), values_(std::move(values)) {}

    space space_;
    std::vector<S> values_;
};

// Conjunction: pointwise product.
template <typename S>
predicate<S> pred_and(const predicate<S>& p, const predicate<S>& q) {
    require_same_space(p.outcomes(), q.outcomes(), "pred_and");
    std::vector<S> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = p.value(i) * q.value(i);
    return predicate<S>::from_values(p.outcomes(), std::move(v));
}

// Orthocomplement: p^⊥(x) = 1 - p(x).
template <typename S>
predicate<S> pred_not(const predicate<S>& p) {
    std::vector<S> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        v[i] = scalar_traits<S>::one() - p.value(i);
    return predicate<S>::from_values(p.outcomes(), std::move(v));
}

// Expected value of a predicate in a state.
template <typename S>
S validity(const distribution<S>& omega, const predicate<S>& p) {
    require_same_space(omega.outcomes(), p.outcomes(), "validity");
    S total = scalar_traits<S>::zero();
    for (std::size_t i = 0; i < omega.size(); ++i)
        total += omega.weight(i) * p.value(i);
    return total;
}

// Updating: the normalized pointwise product omega|_p. Undefined (and a
// typed error) when the validity is zero.
template <typename S>
distribution<S> condition(const distribution<S>& omega, const predicate<S>& p) {
    S v = validity(omega, p);
    if (!(v > scalar_traits<S>::zero()))
        throw zero_validity("condition: evidence has zero validity in this state");
    std::vector<S> w(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i)
        w[i] = omega.weight(i) * p.value(i) / v;
    return distribution<S>::from_weights(omega.outcomes(), std::move(w));
}

// An n-test: predicates summing pointwise to the truth predicate.
template <typename S>
class n_test {
public:
    using traits = scalar_traits<S>;

    static n_test from_predicates(std::vector<predicate<S>> preds) {
        if (preds.empty()) throw invalid_test("n_test: no predicates");
        const space& sp = preds.front().outcomes();
        for (const auto& p : preds)
            require_same_space(sp, p.outcomes(), "n_test");
        for (std::size_t i = 0; i < sp.size(); ++i) {
            S total = traits::zero();
            for (const auto& p : preds) total += p.value(i);
            if (!traits::is_one_sum(total))
                throw invalid_test("n_test: values at '" + sp.label(i) + "' sum to " +
                                   traits::render(total) + ", not 1");
        }
        return n_test(std::move(preds));
    }

    // The point predicates 1_x, one per outcome.
    static n_test from_points(const space& sp) {
        std::vector<predicate<S>> preds;
        preds.reserve(sp.size());
        for (const auto& label : sp.labels())
            preds.push_back(predicate<S>::point(sp, label));
        return n_test(std::move(preds));
    }

    std::size_t size() const { return preds_.size(); }
    const predicate<S>& at(std::size_t i) const { return preds_[i]; }
    const std::vector<predicate<S>>& predicates() const { return preds_; }
    const space& outcomes() const { return preds_.front().outcomes(); }

private:
    explicit n_test(std::vector<predicate<S>> preds) : preds_(std::move(preds)) {}
    std::vector<predicate<S>> preds_;
};

template <typename S>
n_test<S> test_from_points(const space& sp) {
    return n_test<S>::from_points(sp);
}

} // namespace channelkit
