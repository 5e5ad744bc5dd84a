#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "channelkit/channel.hpp"
#include "channelkit/distribution.hpp"
#include "channelkit/predicate.hpp"
#include "channelkit/space.hpp"

namespace channelkit {

// SplitMix64: the seeded generator behind every randomized suite. Chosen so
// that a given seed reproduces the same instances on every platform.
class splitmix64 {
public:
    explicit splitmix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : next() % n; }

    // Uniform in [lo, hi] inclusive.
    long long between(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

// Random-instance generation for the property suites: spaces of size 2..6,
// weights from normalized i.i.d. uniform draws (integer resolution on the
// exact backend), predicate values i.i.d. uniform on [0,1], and a small
// positive floor where full support is required.
namespace gen {

inline constexpr long long kResolution = 1000;

inline space random_space(splitmix64& rng, std::size_t min_size, std::size_t max_size,
                          const std::string& prefix) {
    std::size_t n = min_size + rng.below(max_size - min_size + 1);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back(prefix + std::to_string(i));
    return space(std::move(labels));
}

template <typename S>
distribution<S> random_distribution(splitmix64& rng, const space& sp, bool full_support) {
    std::vector<S> w(sp.size());
    if constexpr (scalar_traits<S>::is_exact) {
        bool any = false;
        for (auto& x : w) {
            long long k = rng.between(full_support ? 1 : 0, kResolution);
            any = any || k > 0;
            x = scalar_traits<S>::ratio(k, 1);
        }
        if (!any) w[rng.below(w.size())] = scalar_traits<S>::one();
    } else {
        for (auto& x : w) {
            double u = rng.uniform();
            x = full_support ? u + 1e-6 : u;
        }
    }
    return distribution<S>::from_weights(sp, std::move(w), true);
}

template <typename S>
predicate<S> random_predicate(splitmix64& rng, const space& sp, bool positive = false) {
    std::vector<S> v(sp.size());
    for (auto& x : v) {
        if constexpr (scalar_traits<S>::is_exact)
            x = scalar_traits<S>::ratio(rng.between(positive ? 1 : 0, kResolution),
                                        kResolution);
        else
            x = positive ? 1e-6 + (1.0 - 1e-6) * rng.uniform() : rng.uniform();
    }
    return predicate<S>::from_values(sp, std::move(v));
}

template <typename S>
channel<S> random_channel(splitmix64& rng, const space& dom, const space& cod,
                          bool full_support_rows) {
    std::vector<distribution<S>> rows;
    rows.reserve(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i)
        rows.push_back(random_distribution<S>(rng, cod, full_support_rows));
    return channel<S>::from_rows(dom, std::move(rows));
}

// A random n-test: at each outcome, a random distribution over the arms.
template <typename S>
n_test<S> random_test(splitmix64& rng, const space& sp, std::size_t arms) {
    std::vector<std::string> arm_labels;
    for (std::size_t a = 0; a < arms; ++a) arm_labels.push_back("t" + std::to_string(a));
    const space arm_space(std::move(arm_labels));
    std::vector<std::vector<S>> values(arms, std::vector<S>(sp.size()));
    for (std::size_t x = 0; x < sp.size(); ++x) {
        auto mix = random_distribution<S>(rng, arm_space, true);
        for (std::size_t a = 0; a < arms; ++a) values[a][x] = mix.weight(a);
    }
    std::vector<predicate<S>> preds;
    preds.reserve(arms);
    for (auto& v : values)
        preds.push_back(predicate<S>::from_values(sp, std::move(v)));
    return n_test<S>::from_predicates(std::move(preds));
}

// A random surjection dom -> cod as an image-label vector (needs |dom| >= |cod|).
inline std::vector<std::size_t> random_surjection(splitmix64& rng, std::size_t dom,
                                                  std::size_t cod) {
    std::vector<std::size_t> image(dom);
    // Hit every codomain point once, at distinct domain positions.
    std::vector<std::size_t> slots(dom);
    for (std::size_t i = 0; i < dom; ++i) slots[i] = i;
    for (std::size_t i = 0; i < dom; ++i)
        std::swap(slots[i], slots[i + rng.below(dom - i)]);
    for (std::size_t y = 0; y < cod; ++y) image[slots[y]] = y;
    for (std::size_t i = cod; i < dom; ++i) image[slots[i]] = rng.below(cod);
    return image;
}

} // namespace gen
} // namespace channelkit
