#pragma once

// Independent oracles for the tests: direct one-line evaluations of the
// defining sums, operating on plain vectors so they share no code with the
// library's operational paths.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

template <typename S>
S validity(const std::vector<S>& w, const std::vector<S>& p) {
    S total{};
    for (std::size_t i = 0; i < w.size(); ++i) total += w[i] * p[i];
    return total;
}

template <typename S>
std::vector<S> condition(const std::vector<S>& w, const std::vector<S>& p) {
    S v = validity(w, p);
    std::vector<S> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] * p[i] / v;
    return out;
}

// rows[i][j] = c(x_i)(y_j)
template <typename S>
std::vector<S> pushforward(const std::vector<std::vector<S>>& rows,
                           const std::vector<S>& sigma) {
    std::vector<S> out(rows.front().size(), S{});
    for (std::size_t i = 0; i < sigma.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += sigma[i] * rows[i][j];
    return out;
}

template <typename S>
std::vector<S> pullback(const std::vector<std::vector<S>>& rows, const std::vector<S>& q) {
    std::vector<S> out(rows.size(), S{});
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) out[i] += rows[i][j] * q[j];
    return out;
}

// Bayesian inversion row at codomain index y, straight from the defining
// ratio sigma(x) c(x)(y) / sum_x' sigma(x') c(x')(y).
template <typename S>
std::vector<S> dagger_row(const std::vector<std::vector<S>>& rows,
                          const std::vector<S>& sigma, std::size_t y) {
    S denom{};
    for (std::size_t i = 0; i < sigma.size(); ++i) denom += sigma[i] * rows[i][y];
    std::vector<S> out(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) out[i] = sigma[i] * rows[i][y] / denom;
    return out;
}

template <typename S>
std::vector<S> jeffrey(const std::vector<std::vector<S>>& rows, const std::vector<S>& sigma,
                       const std::vector<S>& tau) {
    std::vector<S> out(sigma.size(), S{});
    for (std::size_t y = 0; y < tau.size(); ++y) {
        if (!(tau[y] > S{})) continue;
        auto row = dagger_row(rows, sigma, y);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += tau[y] * row[i];
    }
    return out;
}

inline double kl(const std::vector<double>& w, const std::vector<double>& r) {
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0.0) continue;
        if (r[i] == 0.0) return std::numeric_limits<double>::infinity();
        total += w[i] * std::log(w[i] / r[i]);
    }
    return total;
}

inline double tv(const std::vector<double>& a, const std::vector<double>& b) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
    return total / 2.0;
}

} // namespace oracle
