#include <catch2/catch.hpp>

#include <cmath>

#include "channelkit/matrix.hpp"
#include "channelkit/rng.hpp"

using namespace channelkit;

TEST_CASE("square matrix basics") {
    CHECK_THROWS_AS(square_matrix(0), invalid_argument);
    auto i3 = square_matrix::identity(3);
    CHECK(i3(0, 0) == 1.0);
    CHECK(i3(0, 1) == 0.0);
    auto d = square_matrix::diagonal({2.0, 3.0});
    auto product = d * d;
    CHECK(product(0, 0) == 4.0);
    CHECK(product(1, 1) == 9.0);
    CHECK(one_norm(d) == 3.0);
    std::vector<double> v{1.0, 1.0};
    CHECK((d * v) == std::vector<double>{2.0, 3.0});
}

TEST_CASE("jacobi eigendecomposition") {
    SECTION("identity and diagonal") {
        auto eig = sym_eig(square_matrix::identity(3));
        for (double l : eig.eigenvalues) CHECK(l == Approx(1.0));
        auto eig2 = sym_eig(square_matrix::diagonal({3.0, 2.0}));
        CHECK(eig2.eigenvalues[0] == Approx(2.0));
        CHECK(eig2.eigenvalues[1] == Approx(3.0));
    }
    SECTION("known 2x2") {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        square_matrix a(2);
        a(0, 0) = 2; a(0, 1) = 1; a(1, 0) = 1; a(1, 1) = 2;
        auto eig = sym_eig(a);
        CHECK(eig.eigenvalues[0] == Approx(1.0).margin(1e-12));
        CHECK(eig.eigenvalues[1] == Approx(3.0).margin(1e-12));
    }
    SECTION("reconstruction and orthogonality on random symmetric matrices") {
        splitmix64 rng(17);
        for (int t = 0; t < 50; ++t) {
            std::size_t n = 2 + rng.below(5);
            square_matrix a(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    double v = rng.uniform() * 4.0 - 2.0;
                    a(i, j) = v;
                    a(j, i) = v;
                }
            auto eig = sym_eig(a);
            auto rebuilt = eig.eigenvectors * square_matrix::diagonal(eig.eigenvalues) *
                           eig.eigenvectors.transpose();
            CHECK(max_abs_diff(rebuilt, a) <= 1e-8);
            CHECK(max_abs_diff(eig.eigenvectors.transpose() * eig.eigenvectors,
                               square_matrix::identity(n)) <= 1e-8);
        }
    }
    SECTION("asymmetry is rejected") {
        square_matrix a(2);
        a(0, 1) = 1.0;
        CHECK_THROWS_AS(sym_eig(a), not_symmetric);
    }
}

TEST_CASE("psd square root") {
    SECTION("identity and diagonal") {
        CHECK(max_abs_diff(sqrt_psd(square_matrix::identity(3)),
                           square_matrix::identity(3)) <= 1e-12);
        auto root = sqrt_psd(square_matrix::diagonal({4.0, 9.0}));
        CHECK(root(0, 0) == Approx(2.0));
        CHECK(root(1, 1) == Approx(3.0));
        CHECK(std::abs(root(0, 1)) <= 1e-12);
    }
    SECTION("square of the root reproduces the matrix") {
        splitmix64 rng(18);
        for (int t = 0; t < 30; ++t) {
            std::size_t n = 2 + rng.below(4);
            // Random SPD matrix M M^T + I.
            square_matrix m(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform() * 2.0 - 1.0;
            square_matrix spd = m * m.transpose();
            for (std::size_t i = 0; i < n; ++i) spd(i, i) += 1.0;
            auto root = sqrt_psd(spd);
            CHECK(max_abs_diff(root * root, spd) <= 1e-8);
            auto inv_root = psd_power(spd, -0.5);
            CHECK(max_abs_diff(root * inv_root, square_matrix::identity(n)) <= 1e-8);
        }
    }
    SECTION("indefinite matrices are rejected") {
        CHECK_THROWS_AS(sqrt_psd(square_matrix::diagonal({1.0, -1.0})),
                        not_positive_definite);
        CHECK_THROWS_AS(sqrt_psd(square_matrix::diagonal({1.0, 0.0})),
                        not_positive_definite);
    }
}

TEST_CASE("spectral radius by power iteration") {
    SECTION("diagonal matrices") {
        CHECK(spectral_radius(square_matrix::diagonal({0.5, 2.0, 1.5})) == Approx(2.0));
        CHECK(spectral_radius(square_matrix::diagonal({2.0})) == Approx(2.0));
    }
    SECTION("zero matrix") {
        CHECK(spectral_radius(square_matrix(3)) == 0.0);
    }
    SECTION("column-stochastic matrices have radius one") {
        splitmix64 rng(19);
        for (int t = 0; t < 50; ++t) {
            std::size_t n = 2 + rng.below(5);
            square_matrix a(n);
            for (std::size_t j = 0; j < n; ++j) {
                double total = 0.0;
                std::vector<double> col(n);
                for (auto& v : col) {
                    v = rng.uniform() + 1e-3;
                    total += v;
                }
                for (std::size_t i = 0; i < n; ++i) a(i, j) = col[i] / total;
            }
            CHECK(spectral_radius(a) == Approx(1.0).margin(1e-9));
        }
    }
    SECTION("negative entries are rejected") {
        CHECK_THROWS_AS(spectral_radius(square_matrix::diagonal({-1.0})), invalid_argument);
    }
    SECTION("an imprimitive matrix hits the iteration cap") {
        // Eigenvalues +/- sqrt(2): the 1-norm estimate oscillates forever.
        square_matrix a(2);
        a(0, 1) = 2.0;
        a(1, 0) = 1.0;
        CHECK_THROWS_AS(spectral_radius(a), no_convergence);
    }
}

TEST_CASE("gelfand estimator") {
    SECTION("diagonal: constant sequence") {
        auto seq = gelfand_estimate(square_matrix::diagonal({2.0}), 8);
        REQUIRE(seq.size() == 8);
        for (double v : seq) CHECK(v == Approx(2.0));
    }
    SECTION("approaches the spectral radius from above") {
        splitmix64 rng(20);
        for (int t = 0; t < 30; ++t) {
            square_matrix a(4);
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) a(i, j) = rng.uniform();
            double rho = spectral_radius(a);
            auto seq = gelfand_estimate(a, 64);
            CHECK(seq.back() >= rho - 1e-9);
            CHECK(std::abs(seq.back() - rho) <= 0.05 * rho);
        }
    }
    SECTION("overflow carries rescaling advice") {
        square_matrix a(2);
        a(0, 0) = 1e200;
        a(0, 1) = 1e200;
        a(1, 0) = 1e200;
        a(1, 1) = 1e200;
        try {
            gelfand_estimate(a, 64);
            FAIL("expected overflow");
        } catch (const overflow& e) {
            CHECK(std::string(e.what()).find("rescale") != std::string::npos);
        }
    }
    CHECK_THROWS_AS(gelfand_estimate(square_matrix::identity(2), 0), invalid_argument);
}

TEST_CASE("subinvariance bound") {
    SECTION("identity is tight") {
        auto result =
            subinvariance_bound_check(square_matrix::identity(3), {1.0, 2.0, 3.0});
        CHECK(result.bound == Approx(1.0));
        CHECK(result.rho == Approx(1.0));
        CHECK(result.holds);
    }
    SECTION("random nonnegative matrices") {
        splitmix64 rng(23);
        for (int t = 0; t < 50; ++t) {
            std::size_t n = 2 + rng.below(5);
            square_matrix a(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform();
            std::vector<double> x(n);
            for (auto& v : x) v = 0.1 + rng.uniform();
            auto result = subinvariance_bound_check(a, x);
            CHECK(result.holds);
            CHECK(result.rho <= result.bound + 1e-9);
        }
    }
    SECTION("nonpositive vectors are rejected") {
        CHECK_THROWS_AS(subinvariance_bound_check(square_matrix::identity(2), {1.0, 0.0}),
                        non_positive_vector);
    }
}
