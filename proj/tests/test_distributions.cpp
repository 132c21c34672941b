#include <doctest.h>

#include <cmath>

#include <boost/math/distributions/geometric.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "frog/distributions.hpp"
#include "frog/random.hpp"

using namespace frog;

TEST_SUITE("distributions") {

TEST_CASE("tail examples") {
    auto d1 = InitialDistribution::dirac(1);
    CHECK(d1.tail(1.0) == 1.0);
    CHECK(d1.tail(1.5) == 0.0);
    CHECK(d1.tail(0.0) == 1.0);
    CHECK(InitialDistribution::poisson(1.0).tail(3.0) == doctest::Approx(1 - std::exp(-1.0) * 2.5));
    auto lp = InitialDistribution::log_pareto(0.5);
    CHECK(lp.tail_at_log(4.0) == doctest::Approx(0.5));
    CHECK(lp.tail_at_log(0.5) == 1.0);
    // floor(e^X) >= e^4 iff e^X >= 55.
    CHECK(lp.tail(std::exp(4.0)) == doctest::Approx(std::pow(std::log(55.0), -0.5)).epsilon(1e-12));
    auto yl = InitialDistribution::ylogy();
    CHECK(yl.tail_at_log(std::exp(1.0)) == doctest::Approx(std::exp(-std::exp(1.0))).epsilon(1e-9));
    for (const auto& mu : {d1, lp, yl, InitialDistribution::geometric(0.3)})
        CHECK(mu.tail_at_log(ExtLog::neg_inf()) == 1.0);
}

TEST_CASE("tails are non-increasing and match pmf sums") {
    std::vector<InitialDistribution> laws{InitialDistribution::dirac(3),       InitialDistribution::poisson(2.5),
                                          InitialDistribution::geometric(0.4), InitialDistribution::log_pareto(0.5),
                                          InitialDistribution::ylogy(),         InitialDistribution::table({1, 2, 0, 1})};
    for (const auto& mu : laws) {
        CAPTURE(mu.describe());
        double prev = 1.0, cum = 0.0;
        for (int k = 0; k < 40; ++k) {
            double t = mu.tail(k);
            CHECK(t <= prev + 1e-15);
            CHECK(t == doctest::Approx(1.0 - cum).epsilon(1e-9));
            CHECK(mu.tail_above(k) == doctest::Approx(t - mu.pmf(k)).epsilon(1e-9));
            cum += mu.pmf(k);
            prev = t;
        }
    }
}

TEST_CASE("light-tailed pmfs match Boost") {
    boost::math::poisson_distribution<double> P(2.5);
    boost::math::geometric_distribution<double> G(0.4);
    auto p = InitialDistribution::poisson(2.5);
    auto g = InitialDistribution::geometric(0.4);
    for (int k = 0; k < 30; ++k) {
        CHECK(p.pmf(k) == doctest::Approx(boost::math::pdf(P, k)).epsilon(1e-12));
        CHECK(g.pmf(k) == doctest::Approx(boost::math::pdf(G, k)).epsilon(1e-12));
    }
    CHECK(g.mean() == doctest::Approx(1.5));
    CHECK(InitialDistribution::table({1, 1}).pmf(1) == 0.5);
}

TEST_CASE("table and parameter validation") {
    CHECK_THROWS_AS(InitialDistribution::table({}), std::invalid_argument);
    CHECK_THROWS_AS(InitialDistribution::table({1, -1}), std::invalid_argument);
    CHECK_THROWS_AS(InitialDistribution::poisson(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(InitialDistribution::geometric(0.0), std::invalid_argument);
    CHECK_THROWS_AS(InitialDistribution::log_pareto(0.0), std::invalid_argument);
    CHECK_THROWS_AS(InitialDistribution::dirac(-1), std::invalid_argument);
}

TEST_CASE("sampling moments") {
    const int n = 1000000;
    RngStream r = RngStream::derive(5, {1});
    auto g = InitialDistribution::geometric(0.5);
    double s = 0;
    for (int i = 0; i < n; ++i) s += static_cast<double>(g.sample(r).value());
    CHECK(s / n == doctest::Approx(1.0).epsilon(0.01));

    auto lp = InitialDistribution::log_pareto(0.5);
    int hits = 0;
    bool huge = false;
    for (int i = 0; i < n; ++i) {
        auto c = lp.sample(r);
        if (!c.is_zero() && c.log() >= 4.0) ++hits;
        if (!c.is_exact()) huge = true;
    }
    CHECK(static_cast<double>(hits) / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(huge);

    auto d = InitialDistribution::dirac(1);
    for (int i = 0; i < 10; ++i) CHECK(d.sample(r).value() == 1);

    auto p = InitialDistribution::poisson(3.0);
    double sp = 0, sp2 = 0;
    for (int i = 0; i < n / 4; ++i) {
        double v = static_cast<double>(p.sample(r).value());
        sp += v;
        sp2 += v * v;
    }
    double m = sp / (n / 4);
    CHECK(m == doctest::Approx(3.0).epsilon(0.01));
    CHECK(sp2 / (n / 4) - m * m == doctest::Approx(3.0).epsilon(0.03));
}

TEST_CASE("ylogy sampling agrees with the latent tail") {
    auto yl = InitialDistribution::ylogy();
    RngStream r = RngStream::derive(9, {2});
    const int n = 400000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        auto c = yl.sample(r);
        if (!c.is_zero() && c.log() >= 3.0) ++hits;
    }
    double p = yl.tail_at_log(3.0);
    CHECK(std::fabs(static_cast<double>(hits) / n - p) < 4 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("ParticleCount") {
    auto a = ParticleCount::exact(5);
    CHECK(a.value() == 5);
    CHECK(a.log() == doctest::Approx(std::log(5.0)));
    auto big = ParticleCount::from_log(1e5);
    CHECK_FALSE(big.is_exact());
    CHECK_THROWS_AS(big.value(), std::overflow_error);
    CHECK(a.plus(ParticleCount::exact(2)).value() == 7);
    CHECK(big.plus(a).log() == doctest::Approx(1e5));
    CHECK(ParticleCount::from_log(2.0).is_exact());
    CHECK(ParticleCount::exact(0).is_zero());
}

}
