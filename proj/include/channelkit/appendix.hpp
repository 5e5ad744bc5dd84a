#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "channelkit/channel.hpp"
#include "channelkit/distribution.hpp"
#include "channelkit/errors.hpp"
#include "channelkit/matrix.hpp"
#include "channelkit/predicate.hpp"
#include "channelkit/updates.hpp"

namespace channelkit {

// Validities v_i = omega |= p_i of the arms of a test; all must be positive.
// Exact on the rational backend.
template <typename S>
std::vector<S> test_validities(const distribution<S>& omega, const n_test<S>& test) {
    std::vector<S> v;
    v.reserve(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) {
        v.push_back(validity(omega, test.at(i)));
        if (!(v.back() > scalar_traits<S>::zero()))
            throw zero_validity_in_test("test arm " + std::to_string(i) +
                                        " has zero validity");
    }
    return v;
}

// The validity vector as floats; entries positive, summing to one.
template <typename S>
std::vector<double> validity_vector(const distribution<S>& omega, const n_test<S>& test) {
    std::vector<double> v;
    for (const auto& s : test_validities(omega, test))
        v.push_back(scalar_traits<S>::to_double(s));
    return v;
}

// B_ij = (omega |= p_i & p_j) / (v_i v_j): symmetric, nonnegative, positive
// definite, with B v = all-ones. Entries are computed on the scalar backend
// and converted to floats once, here.
template <typename S>
square_matrix build_B(const distribution<S>& omega, const n_test<S>& test) {
    const std::vector<S> v = test_validities(omega, test);
    const std::size_t n = test.size();
    square_matrix b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            S joint = validity(omega, pred_and(test.at(i), test.at(j)));
            double entry = scalar_traits<S>::to_double(joint / (v[i] * v[j]));
            b(i, j) = entry;
            b(j, i) = entry;
        }
    return b;
}

// C_ij = omega|_{p_j} |= p_i: the conditional-expectations matrix, built by
// actually conditioning (so the C = V B identity is a genuine cross-check).
// Columns sum to one, C v = v.
template <typename S>
square_matrix build_C(const distribution<S>& omega, const n_test<S>& test) {
    test_validities(omega, test);
    const std::size_t n = test.size();
    square_matrix c(n);
    for (std::size_t j = 0; j < n; ++j) {
        distribution<S> cond = condition(omega, test.at(j));
        for (std::size_t i = 0; i < n; ++i)
            c(i, j) = scalar_traits<S>::to_double(validity(cond, test.at(i)));
    }
    return c;
}

// Left-hand side of the weighted-update inequality:
//   sum_i r_i v_i / (C r)_i  <=  1
// for weights r in [0,1] summing to one. Zero weights are allowed and their
// terms contribute nothing; this is the limit reading the main theorem's
// proof relies on when it instantiates r with an evidence state.
template <typename S>
double proposition_lhs(const distribution<S>& omega, const n_test<S>& test,
                       const std::vector<S>& r) {
    const std::size_t n = test.size();
    if (r.size() != n) throw bad_weights("proposition_lhs: weight count mismatch");
    S total = scalar_traits<S>::zero();
    bool any_positive = false;
    for (const auto& w : r) {
        if (w < scalar_traits<S>::zero() || w > scalar_traits<S>::one())
            throw bad_weights("proposition_lhs: weights must lie in [0,1]");
        any_positive = any_positive || w > scalar_traits<S>::zero();
        total += w;
    }
    if (!any_positive || !scalar_traits<S>::is_one_sum(total))
        throw bad_weights("proposition_lhs: weights must sum to 1");

    const std::vector<S> v = test_validities(omega, test);
    // (C r)_i = sum_j r_j (omega|_{p_j} |= p_i), via Bayes equal to
    // sum_j r_j (omega |= p_i & p_j) / v_j.
    S lhs = scalar_traits<S>::zero();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(r[i] > scalar_traits<S>::zero())) continue;
        S cr = scalar_traits<S>::zero();
        for (std::size_t j = 0; j < n; ++j)
            cr += r[j] * validity(omega, pred_and(test.at(i), test.at(j))) / v[j];
        lhs += r[i] * v[i] / cr;
    }
    return scalar_traits<S>::to_double(lhs);
}

struct lemma_diag_bound_result {
    double weighted_sum = 0.0;  // sum_i d_i v_i
    double rho = 0.0;           // rho(D C)
    bool holds = false;         // weighted_sum <= rho + 1e-9
};

// Lemma check: sum_i d_i v_i <= rho(DC) for a nonnegative diagonal D.
template <typename S>
lemma_diag_bound_result lemma_diag_bound_check(const distribution<S>& omega,
                                               const n_test<S>& test,
                                               const std::vector<double>& d) {
    if (d.size() != test.size())
        throw invalid_argument("lemma_diag_bound_check: diagonal size mismatch");
    for (double v : d)
        if (v < 0.0) throw invalid_argument("lemma_diag_bound_check: d must be >= 0");
    const std::vector<double> v = validity_vector(omega, test);
    square_matrix dc = square_matrix::diagonal(d) * build_C(omega, test);
    lemma_diag_bound_result out;
    for (std::size_t i = 0; i < d.size(); ++i) out.weighted_sum += d[i] * v[i];
    out.rho = spectral_radius(dc);
    out.holds = out.weighted_sum <= out.rho + 1e-9;
    return out;
}

struct similarity_result {
    double rho_dc = 0.0;   // rho(D C), power iteration
    double rho_sym = 0.0;  // rho(B^1/2 D V B^1/2), symmetric eigensolver
    bool holds = false;    // agreement to 1e-7 relative
};

// Lemma check: rho(DC) = rho(B^(1/2) D V B^(1/2)). The right-hand matrix is
// symmetric, so its radius comes from the Jacobi eigensolver; the two sides
// therefore use independent computations.
template <typename S>
similarity_result dagger_similarity_check(const distribution<S>& omega,
                                          const n_test<S>& test,
                                          const std::vector<double>& d) {
    if (d.size() != test.size())
        throw invalid_argument("dagger_similarity_check: diagonal size mismatch");
    const std::vector<double> v = validity_vector(omega, test);
    square_matrix b = build_B(omega, test);
    square_matrix c = build_C(omega, test);
    square_matrix d_mat = square_matrix::diagonal(d);

    similarity_result out;
    out.rho_dc = spectral_radius(d_mat * c);

    std::vector<double> dv(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) dv[i] = d[i] * v[i];
    square_matrix half = sqrt_psd(b);
    square_matrix sym = half * square_matrix::diagonal(dv) * half;
    // Symmetrize away rounding drift before the eigensolver.
    for (std::size_t i = 0; i < sym.order(); ++i)
        for (std::size_t j = i + 1; j < sym.order(); ++j) {
            double m = 0.5 * (sym(i, j) + sym(j, i));
            sym(i, j) = m;
            sym(j, i) = m;
        }
    sym_eig_result eig = sym_eig(sym);
    for (double lambda : eig.eigenvalues)
        out.rho_sym = std::max(out.rho_sym, std::abs(lambda));

    out.holds = std::abs(out.rho_dc - out.rho_sym) <= 1e-7 * std::max(1.0, out.rho_dc);
    return out;
}

struct divergence_chain_result {
    double ratio_sum = 0.0;      // sum_y tau(y)(c>>sigma)(y) / (c>>sigma_J)(y)
    double kl_difference = 0.0;  // D(tau, c>>sigma_J) - D(tau, c>>sigma)
    double log_bound = 0.0;      // ln(ratio_sum)
};

// The quantitative chain in the proof that Jeffrey's rule decreases
// divergence: the ratio sum is at most 1, and by Jensen's inequality its
// logarithm bounds the divergence difference from above.
template <typename S>
divergence_chain_result divergence_chain_check(const distribution<S>& sigma,
                                               const channel<S>& c,
                                               const distribution<S>& tau) {
    distribution<S> predicted = pushforward(c, sigma);
    distribution<S> sigma_j = jeffrey_update(sigma, c, tau);
    distribution<S> predicted_j = pushforward(c, sigma_j);

    divergence_chain_result out;
    S ratio = scalar_traits<S>::zero();
    for (std::size_t y = 0; y < tau.size(); ++y) {
        if (!(tau.weight(y) > scalar_traits<S>::zero())) continue;
        ratio += tau.weight(y) * predicted.weight(y) / predicted_j.weight(y);
    }
    out.ratio_sum = scalar_traits<S>::to_double(ratio);
    out.kl_difference = kl_divergence(tau, predicted_j) - kl_divergence(tau, predicted);
    out.log_bound = std::log(out.ratio_sum);
    return out;
}

} // namespace channelkit
