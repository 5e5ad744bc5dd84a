#include <catch2/catch.hpp>

#include "channelkit/channel.hpp"
#include "channelkit/distribution.hpp"
#include "channelkit/predicate.hpp"
#include "channelkit/rng.hpp"

#include "oracles.hpp"
#include "worked_instances.hpp"

using namespace channelkit;

TEST_CASE("space validation") {
    CHECK_THROWS_AS(space(std::vector<std::string>{}), invalid_argument);
    CHECK_THROWS_AS(space({"a", "a"}), invalid_argument);
    CHECK_THROWS_AS(space({"a", ""}), invalid_argument);
    space s({"a", "b"});
    CHECK(s.size() == 2);
    CHECK(s.index_of("b") == 1);
    CHECK_THROWS_AS(s.index_of("c"), unknown_outcome);
    CHECK(s == space({"a", "b"}));
    CHECK(s != space({"b", "a"}));
}

TEST_CASE("distribution construction") {
    space s({"p", "n", "o"});
    auto sigma = distribution<rational>::from_weights(
        s, {rational(1, 8), rational(3, 8), rational(1, 2)});
    CHECK(sigma.at("p") == rational(1, 8));
    CHECK(sigma.full_support());

    SECTION("negative weight") {
        CHECK_THROWS_AS(distribution<rational>::from_weights(
                            s, {rational(-1, 8), rational(5, 8), rational(1, 2)}),
                        negative_weight);
    }
    SECTION("not normalized") {
        CHECK_THROWS_AS(
            distribution<rational>::from_weights(s, {rational(1), rational(3), rational(4)}),
            not_normalized);
    }
    SECTION("normalization by total mass") {
        auto d = distribution<rational>::from_weights(
            s, {rational(1), rational(3), rational(4)}, true);
        CHECK(d == sigma);
    }
    SECTION("zero total mass") {
        CHECK_THROWS_AS(distribution<rational>::from_weights(
                            s, {rational(0), rational(0), rational(0)}, true),
                        zero_total_mass);
    }
    SECTION("point mass") {
        auto d = distribution<rational>::point(s, "n");
        CHECK(d.at("n") == rational(1));
        CHECK(d.at("p") == rational(0));
        CHECK_FALSE(d.full_support());
        CHECK(d.support() == std::vector<std::size_t>{1});
    }
    SECTION("unknown outcome in map constructor") {
        CHECK_THROWS_AS(
            distribution<rational>::from_map(s, {{"q", rational(1)}}, false),
            unknown_outcome);
    }
    SECTION("float tolerance") {
        auto d = distribution<double>::from_weights(s, {0.25, 0.25, 0.5 + 5e-10});
        CHECK(d.at("o") == Approx(0.5));
        CHECK_THROWS_AS(distribution<double>::from_weights(s, {0.25, 0.25, 0.51}),
                        not_normalized);
    }
}

TEST_CASE("predicate construction and algebra") {
    space s({"a", "b", "c"});
    CHECK_THROWS_AS(
        predicate<rational>::from_values(s, {rational(2), rational(0), rational(0)}),
        invalid_argument);
    auto p = predicate<rational>::from_values(
        s, {rational(7, 10), rational(1, 2), rational(3, 10)});

    SECTION("negation is the orthocomplement") {
        auto np = pred_not(p);
        CHECK(np.values() ==
              std::vector<rational>{rational(3, 10), rational(1, 2), rational(7, 10)});
        CHECK(pred_not(np) == p);
        CHECK(pred_not(predicate<rational>::truth(s)).values() ==
              std::vector<rational>{rational(0), rational(0), rational(0)});
    }
    SECTION("conjunction is pointwise product") {
        CHECK(pred_and(p, predicate<rational>::truth(s)) == p);
        auto sharp_ab = predicate<rational>::sharp(s, {"a", "b"});
        auto sharp_bc = predicate<rational>::sharp(s, {"b", "c"});
        CHECK(pred_and(sharp_ab, sharp_bc) == predicate<rational>::sharp(s, {"b"}));
    }
    SECTION("point predicate is sharp") {
        auto pa = predicate<rational>::point(s, "a");
        CHECK(pa.values() == std::vector<rational>{rational(1), rational(0), rational(0)});
    }
    SECTION("tests partition unity") {
        auto t = test_from_points<rational>(s);
        CHECK(t.size() == 3);
        std::vector<predicate<rational>> arms = t.predicates();
        // Tampering with an arm breaks the partition.
        arms[0] = predicate<rational>::truth(s);
        CHECK_THROWS_AS(n_test<rational>::from_predicates(arms), invalid_test);
    }
}

TEST_CASE("validity and conditioning on the mood example") {
    auto sigma = worked::mood_prior();
    auto c = worked::mood_channel();
    auto q = worked::grade_evidence();

    auto transformed = pullback(c, q);
    CHECK(transformed.at("p") == rational(77, 500));
    CHECK(transformed.at("n") == rational(54, 500));
    CHECK(transformed.at("o") == rational(15, 500));

    CHECK(validity(sigma, transformed) == rational(299, 4000));

    auto updated = condition(sigma, transformed);
    CHECK(updated.weights() ==
          std::vector<rational>{rational(77, 299), rational(162, 299), rational(60, 299)});

    SECTION("truth evidence is the identity") {
        CHECK(condition(sigma, predicate<rational>::truth(sigma.outcomes())) == sigma);
        CHECK(validity(sigma, predicate<rational>::truth(sigma.outcomes())) == rational(1));
    }
    SECTION("zero validity is a typed error") {
        auto dead = predicate<rational>::point(sigma.outcomes(), "p");
        auto no_p = distribution<rational>::from_map(
            sigma.outcomes(), {{"n", rational(1, 2)}, {"o", rational(1, 2)}});
        CHECK_THROWS_AS(condition(no_p, dead), zero_validity);
    }
    SECTION("space mismatch is rejected") {
        CHECK_THROWS_AS(validity(sigma, q), space_mismatch);
        CHECK_THROWS_AS(condition(sigma, q), space_mismatch);
        CHECK_THROWS_AS(pred_and(transformed, q), space_mismatch);
    }
}

TEST_CASE("pushforward matches the worked values and the oracle") {
    auto sigma = worked::mood_prior();
    auto c = worked::mood_channel();
    auto predicted = pushforward(c, sigma);
    CHECK(predicted.at("5") == rational(71, 400));

    SECTION("identity channel") {
        CHECK(pushforward(channel<rational>::identity(sigma.outcomes()), sigma) == sigma);
    }
    SECTION("remark prediction") {
        auto predicted2 = pushforward(worked::remark_channel(), worked::remark_prior());
        CHECK(predicted2.weights() == std::vector<rational>{rational(44, 225),
                                                            rational(71, 150),
                                                            rational(149, 450)});
    }
    SECTION("oracle agreement on random instances") {
        splitmix64 rng(3);
        for (int t = 0; t < 50; ++t) {
            space x = gen::random_space(rng, 2, 6, "x");
            space y = gen::random_space(rng, 2, 6, "y");
            auto s = gen::random_distribution<rational>(rng, x, false);
            auto ch = gen::random_channel<rational>(rng, x, y, false);
            std::vector<std::vector<rational>> rows;
            for (const auto& r : ch.rows()) rows.push_back(r.weights());
            CHECK(pushforward(ch, s).weights() == oracle::pushforward(rows, s.weights()));
            auto qq = gen::random_predicate<rational>(rng, y, false);
            CHECK(pullback(ch, qq).values() == oracle::pullback(rows, qq.values()));
        }
    }
    SECTION("space mismatch") {
        CHECK_THROWS_AS(pushforward(c, predicted), space_mismatch);
    }
}

TEST_CASE("pullback of remark evidence") {
    auto c = worked::remark_channel();
    auto q = worked::remark_evidence();
    auto t = pullback(c, q);
    CHECK(t.at("0") == rational(17, 54));
    CHECK(t.at("1") == rational(23, 75));
    CHECK(pullback(c, predicate<rational>::truth(c.codomain())) ==
          predicate<rational>::truth(c.domain()));
}

TEST_CASE("double update law on a fixed instance") {
    space s({"a", "b", "c"});
    auto omega = distribution<rational>::from_weights(
        s, {rational(1, 6), rational(1, 3), rational(1, 2)});
    auto p = predicate<rational>::from_values(
        s, {rational(1, 2), rational(1, 4), rational(3, 4)});
    auto q = predicate<rational>::from_values(
        s, {rational(1, 3), rational(2, 3), rational(1, 6)});
    // Both sides evaluated through their defining formulas by the oracle.
    auto lhs = oracle::condition(oracle::condition(omega.weights(), p.values()), q.values());
    std::vector<rational> pq{p.value(0) * q.value(0), p.value(1) * q.value(1),
                             p.value(2) * q.value(2)};
    auto rhs = oracle::condition(omega.weights(), pq);
    CHECK(lhs == rhs);
    CHECK(condition(condition(omega, p), q).weights() == lhs);
    CHECK(condition(omega, pred_and(p, q)).weights() == rhs);
}

TEST_CASE("channel construction and composition") {
    space x({"u", "v"});
    space y({"a", "b", "c"});

    SECTION("rows must share the codomain") {
        auto row1 = distribution<rational>::uniform(y);
        auto row2 = distribution<rational>::uniform(space({"a", "b"}));
        CHECK_THROWS_AS(channel<rational>::from_rows(x, {row1, row2}), space_mismatch);
    }
    SECTION("row count must match the domain") {
        auto row = distribution<rational>::uniform(y);
        CHECK_THROWS_AS(channel<rational>::from_rows(x, {row}), invalid_argument);
    }
    SECTION("deterministic channels and composition") {
        auto f = channel<rational>::deterministic(x, y, {"a", "c"});
        CHECK(f.is_deterministic());
        CHECK(f.row("u") == distribution<rational>::point(y, "a"));

        space z({"L", "R"});
        auto g = channel<rational>::deterministic(y, z, {"L", "L", "R"});
        auto gf = compose(f, g);
        CHECK(gf == channel<rational>::deterministic(x, z, {"L", "R"}));
        CHECK(compose(f, channel<rational>::identity(y)) == f);
    }
    SECTION("functoriality against the oracle") {
        splitmix64 rng(5);
        for (int t = 0; t < 30; ++t) {
            space xs = gen::random_space(rng, 2, 5, "x");
            space ys = gen::random_space(rng, 2, 5, "y");
            space zs = gen::random_space(rng, 2, 5, "z");
            auto sigma = gen::random_distribution<rational>(rng, xs, false);
            auto c = gen::random_channel<rational>(rng, xs, ys, false);
            auto d = gen::random_channel<rational>(rng, ys, zs, false);
            CHECK(pushforward(compose(c, d), sigma) ==
                  pushforward(d, pushforward(c, sigma)));
        }
    }
    SECTION("compose requires matching spaces") {
        auto f = channel<rational>::deterministic(x, y, {"a", "c"});
        CHECK_THROWS_AS(compose(f, f), space_mismatch);
    }
}

TEST_CASE("adjunction between pushforward and pullback") {
    splitmix64 rng(9);
    for (int t = 0; t < 50; ++t) {
        space x = gen::random_space(rng, 2, 6, "x");
        space y = gen::random_space(rng, 2, 6, "y");
        auto omega = gen::random_distribution<rational>(rng, x, false);
        auto c = gen::random_channel<rational>(rng, x, y, false);
        auto q = gen::random_predicate<rational>(rng, y, false);
        CHECK(validity(pushforward(c, omega), q) == validity(omega, pullback(c, q)));
    }
}

TEST_CASE("point predicates specialize the adjunction") {
    auto sigma = worked::mood_prior();
    auto c = worked::mood_channel();
    auto predicted = pushforward(c, sigma);
    for (const auto& y : c.codomain().labels()) {
        auto point = predicate<rational>::point(c.codomain(), y);
        CHECK(validity(sigma, pullback(c, point)) == predicted.at(y));
    }
}
