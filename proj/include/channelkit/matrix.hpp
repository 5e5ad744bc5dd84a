#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "channelkit/errors.hpp"

namespace channelkit {

// Dense real square matrix, row-major doubles.
class square_matrix {
public:
    explicit square_matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {
        if (n == 0) throw invalid_argument("square_matrix: order must be >= 1");
    }

    static square_matrix identity(std::size_t n) {
        square_matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static square_matrix diagonal(const std::vector<double>& d) {
        square_matrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t order() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const std::vector<double>& data() const { return a_; }

    square_matrix transpose() const {
        square_matrix t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool nonnegative() const {
        return std::all_of(a_.begin(), a_.end(), [](double v) { return v >= 0.0; });
    }

    bool finite() const {
        return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
    }

private:
    std::size_t n_;
    std::vector<double> a_;
};

inline square_matrix operator*(const square_matrix& a, const square_matrix& b) {
    if (a.order() != b.order())
        throw invalid_argument("matrix product: order mismatch");
    const std::size_t n = a.order();
    square_matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline std::vector<double> operator*(const square_matrix& a, const std::vector<double>& x) {
    if (a.order() != x.size())
        throw invalid_argument("matrix-vector product: size mismatch");
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

// The 1-norm used by the appendix: maximum absolute column sum.
inline double one_norm(const square_matrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.order(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < a.order(); ++i) col += std::abs(a(i, j));
        best = std::max(best, col);
    }
    return best;
}

inline double frobenius_norm(const square_matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

inline double max_abs_diff(const square_matrix& a, const square_matrix& b) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j)
            best = std::max(best, std::abs(a(i, j) - b(i, j)));
    return best;
}

struct sym_eig_result {
    std::vector<double> eigenvalues;  // ascending
    square_matrix eigenvectors;       // columns, orthogonal: A = Q diag(l) Q^T

    sym_eig_result(std::size_t n) : eigenvalues(n, 0.0), eigenvectors(n) {}
};

// Cyclic Jacobi eigendecomposition for symmetric matrices. Sweeps rotate
// away each off-diagonal entry in turn; stops when the off-diagonal
// Frobenius mass falls below 1e-12 relative to the matrix scale. Sweep cap
// 100, after which no_convergence is raised.
inline sym_eig_result sym_eig(const square_matrix& input) {
    const std::size_t n = input.order();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(input(i, j) - input(j, i)) > 1e-9)
                throw not_symmetric("sym_eig: matrix is not symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");

    square_matrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (input(i, j) + input(j, i));

    sym_eig_result result(n);
    square_matrix& q = result.eigenvectors;
    q = square_matrix::identity(n);

    const double scale = std::max(1.0, frobenius_norm(a));
    const double tol = 1e-12 * scale;
    const std::size_t max_sweeps = 100;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    std::size_t sweep = 0;
    while (off_norm() > tol) {
        if (++sweep > max_sweeps)
            throw no_convergence("sym_eig: sweep cap reached");
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t r = p + 1; r < n; ++r) {
                if (a(p, r) == 0.0) continue;
                const double theta = (a(r, r) - a(p, p)) / (2.0 * a(p, r));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akr = a(k, r);
                    a(k, p) = c * akp - s * akr;
                    a(k, r) = s * akp + c * akr;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), ark = a(r, k);
                    a(p, k) = c * apk - s * ark;
                    a(r, k) = s * apk + c * ark;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double qkp = q(k, p), qkr = q(k, r);
                    q(k, p) = c * qkp - s * qkr;
                    q(k, r) = s * qkp + c * qkr;
                }
            }
    }

    for (std::size_t i = 0; i < n; ++i) result.eigenvalues[i] = a(i, i);

    // Sort ascending, carrying eigenvector columns along.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return result.eigenvalues[x] < result.eigenvalues[y];
    });
    sym_eig_result sorted(n);
    for (std::size_t k = 0; k < n; ++k) {
        sorted.eigenvalues[k] = result.eigenvalues[order[k]];
        for (std::size_t i = 0; i < n; ++i)
            sorted.eigenvectors(i, k) = q(i, order[k]);
    }
    return sorted;
}

// Q diag(f(l)) Q^T for a symmetric positive-definite matrix; used for the
// square root and its inverse. Definiteness threshold: smallest eigenvalue
// above 1e-12 times the largest.
inline square_matrix psd_power(const square_matrix& a, double exponent) {
    sym_eig_result eig = sym_eig(a);
    const double largest = eig.eigenvalues.back();
    if (!(largest > 0.0) || eig.eigenvalues.front() <= 1e-12 * largest)
        throw not_positive_definite("psd_power: matrix is not positive definite");
    const std::size_t n = a.order();
    square_matrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += eig.eigenvectors(i, k) * std::pow(eig.eigenvalues[k], exponent) *
                     eig.eigenvectors(j, k);
            out(i, j) = s;
        }
    return out;
}

inline square_matrix sqrt_psd(const square_matrix& a) { return psd_power(a, 0.5); }

// Spectral radius of a nonnegative matrix by power iteration from the
// all-ones vector; the dominant eigenvalue is real and nonnegative for such
// matrices. Estimate is the 1-norm of the normalized iterate image;
// relative-change tolerance 1e-12, iteration cap 100000.
inline double spectral_radius(const square_matrix& a) {
    if (!a.nonnegative())
        throw invalid_argument("spectral_radius: matrix has negative entries");
    const std::size_t n = a.order();
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    double estimate = 0.0;
    const std::size_t cap = 100000;
    for (std::size_t iter = 0; iter < cap; ++iter) {
        std::vector<double> y = a * x;
        double norm = 0.0;
        for (double v : y) norm += v;
        if (norm == 0.0) return 0.0;
        for (double& v : y) v /= norm;
        const double change = std::abs(norm - estimate);
        estimate = norm;
        x = std::move(y);
        if (iter > 0 && change <= 1e-12 * std::max(1.0, estimate)) return estimate;
    }
    throw no_convergence("spectral_radius: iteration cap reached");
}

// Gelfand estimator: the sequence ||A^k||_1^(1/k) for k = 1..n_max, which
// converges to the spectral radius from above.
inline std::vector<double> gelfand_estimate(const square_matrix& a, std::size_t n_max) {
    if (n_max < 1) throw invalid_argument("gelfand_estimate: n_max must be >= 1");
    std::vector<double> seq;
    seq.reserve(n_max);
    square_matrix power = a;
    for (std::size_t k = 1; k <= n_max; ++k) {
        if (!power.finite())
            throw overflow("gelfand_estimate: matrix power exceeded float range; "
                           "rescale A by a positive constant and scale the result back");
        seq.push_back(std::pow(one_norm(power), 1.0 / static_cast<double>(k)));
        if (k < n_max) power = power * a;
    }
    return seq;
}

struct subinvariance_result {
    double bound = 0.0;  // r = max_i (Ax)_i / x_i
    double rho = 0.0;
    bool holds = false;  // rho <= r + 1e-9
};

// Subinvariance bound: for nonnegative A and positive x, Ax <= r x implies
// rho(A) <= r. Computes the tightest such r and checks the bound.
inline subinvariance_result subinvariance_bound_check(const square_matrix& a,
                                                      const std::vector<double>& x) {
    if (x.size() != a.order())
        throw invalid_argument("subinvariance_bound_check: vector size mismatch");
    for (double v : x)
        if (!(v > 0.0))
            throw non_positive_vector("subinvariance_bound_check: x must be positive");
    std::vector<double> ax = a * x;
    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, ax[i] / x[i]);
    subinvariance_result out;
    out.bound = r;
    out.rho = spectral_radius(a);
    out.holds = out.rho <= r + 1e-9;
    return out;
}

} // namespace channelkit
