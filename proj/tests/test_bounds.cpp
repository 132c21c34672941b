#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "frog/bounds.hpp"
#include "frog/walks.hpp"

using namespace frog;

TEST_SUITE("bounds") {

TEST_CASE("erlang bound examples") {
    auto a = erlang_lower(1, 1.0);
    CHECK(a.bound == doctest::Approx(std::exp(-1.0)));
    CHECK(a.exact == doctest::Approx(1 - std::exp(-1.0)));
    auto b = erlang_lower(2, 0.1);
    CHECK(b.bound == doctest::Approx(std::exp(-0.1) * 0.005));
    CHECK(b.exact == doctest::Approx(1 - std::exp(-0.1) * 1.1));
    auto c = erlang_lower(3, 1e-8);
    CHECK(c.bound < 1e-20);
    CHECK(c.exact < 1e-20);
    for (int n = 1; n <= 40; n += 3)
        for (double t : {0.01, 0.5, 3.0, 30.0}) {
            auto e = erlang_lower(n, t);
            CHECK(e.bound <= e.exact);
            CHECK(e.exact == doctest::Approx(boost::math::gamma_p(n, t)).epsilon(1e-10));
        }
}

TEST_CASE("reach lower bound examples") {
    auto A = SpeedFunction::constant(2.0, 100);
    CHECK(reach_lower_bound(0, 0, A) == doctest::Approx(std::exp(-0.5) / 4));
    CHECK(reach_lower_bound(1, 0, A) == doctest::Approx(1.0 / (16 * std::sqrt(2.0))));
    CHECK_THROWS_AS(reach_lower_bound(0, 0, SpeedFunction::constant(1.0, 10)), std::domain_error);
    CHECK(std::isfinite(log_reach_lower_bound(999, 0, SpeedFunction::power(1.0, 2000))));
}

TEST_CASE("reach lower bound holds against simulation") {
    auto A = SpeedFunction::constant(2.0, 200);
    auto e = estimate_reach_tail(A, 0, 0, InitialDistribution::dirac(1), 200000, RngStream::derive(1, {}), {60, 4096});
    CHECK(e.estimate >= reach_lower_bound(0, 0, A) - 3 * e.stderr_);
}

TEST_CASE("e2 and its floor") {
    auto A = SpeedFunction::constant(2.0, 100);
    auto v = e2(0, 5, A);
    CHECK(v.e2() == doctest::Approx(std::exp(-0.5) / 4));
    CHECK(v.floor() == doctest::Approx(0.0625));
    auto tight = SpeedFunction::constant(1.0 + 1e-9, 100);
    CHECK_FALSE(e2(3, 3, tight).gate);
    for (std::size_t m = 0; m < 1000; m += 7)
        for (int i = 0; i <= static_cast<int>(m); i += 11) {
            auto w = e2(i, m, SpeedFunction::power(1.0, 2000));
            CHECK(std::isfinite(w.log_e2));
            CHECK(std::isfinite(w.log_floor));
        }
}

TEST_CASE("r_lower closed forms") {
    auto A = SpeedFunction::constant(2.0, 100);
    double E = e2(1, 4, A).e2();
    CHECK(r_lower(1, 4, InitialDistribution::dirac(1), A).value == doctest::Approx(E).epsilon(1e-12));
    CHECK(r_lower(1, 4, InitialDistribution::dirac(0), A).value == 0.0);
    for (double lam : {0.3, 1.0, 7.0}) {
        auto r = r_lower(1, 4, InitialDistribution::poisson(lam), A);
        CHECK(std::fabs(r.value - (1 - std::exp(-lam * E))) < 1e-10);
        CHECK(r.remainder < 1e-11);
    }
    auto g = r_lower(0, 2, InitialDistribution::geometric(0.5), A);
    double q = e2(0, 2, A).e2();
    // E[(1-q)^eta] = p / (1 - (1-p)(1-q)).
    CHECK(g.value == doctest::Approx(1 - 0.5 / (1 - 0.5 * (1 - q))).epsilon(1e-10));
}

TEST_CASE("Poisson chain upper bound") {
    auto A = SpeedFunction::constant(2.0, 5000);
    auto c = reach_upper_chain(0, 1, A);
    CHECK(c.converged);
    CHECK_FALSE(c.inconclusive);
    CHECK(c.last_term < 1e-15);
    double direct = 0.0;
    for (long long n = 1; n < 200; ++n) direct += boost::math::gamma_p(static_cast<double>(n), 0.5 * static_cast<double>(n));
    CHECK(c.value == doctest::Approx(direct).epsilon(1e-10));
    CHECK(c.value >= 1 - std::exp(-0.5));
    auto huge = reach_upper_chain(0, 1, SpeedFunction::constant(1e12, 100));
    CHECK(huge.value < 1e-11);
    auto slow = reach_upper_chain(0, 1, SpeedFunction::constant(0.5, 5000));
    CHECK(slow.inconclusive);
    auto e = estimate_reach_tail(A, 0, 0, InitialDistribution::dirac(1), 200000, RngStream::derive(2, {}), {60, 4096});
    CHECK(e.estimate <= c.value + 3 * e.stderr_);
}

TEST_CASE("geometric tail constant") {
    std::vector<double> a;
    for (int i = 0; i < 60; ++i) a.push_back(std::pow(2.0, -i));
    auto t = geometric_tail_constant(a, 0.5, 1);
    CHECK(t.witnessed == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(t.witnessed <= t.a_priori + 1e-12);
    std::vector<double> p;
    for (int i = 0; i < 30; ++i) p.push_back(std::exp(-1.0 - std::lgamma(i + 1.0)));
    auto tp = geometric_tail_constant(p, 0.5, 1);
    CHECK(std::isfinite(tp.witnessed));
    CHECK(tp.witnessed <= tp.a_priori + 1e-12);
    std::vector<double> harm;
    for (int i = 1; i < 30; ++i) harm.push_back(1.0 / i);
    CHECK_THROWS_AS(geometric_tail_constant(harm, 0.5, 1), RatioViolation);
    try {
        geometric_tail_constant(harm, 0.5, 1);
    } catch (const RatioViolation& e) {
        CHECK(e.index() == 1);
    }
}

TEST_CASE("make_check direction and slack") {
    CHECK(make_check("x", "", BoundDirection::Lower, 0.5, 0.49, 0.01).satisfied);
    CHECK_FALSE(make_check("x", "", BoundDirection::Lower, 0.5, 0.4, 0.01).satisfied);
    CHECK(make_check("x", "", BoundDirection::Upper, 0.5, 0.52, 0.01).satisfied);
    CHECK_FALSE(make_check("x", "", BoundDirection::Upper, 0.5, 0.6, 0.01).satisfied);
    // Zero hits out of 1e4 against a bound of 1e-5: the plug-in stderr is 0.
    CHECK_FALSE(make_check("x", "", BoundDirection::Lower, 1e-5, 0.0, 0.0).satisfied);
    CHECK(make_check("x", "", BoundDirection::Lower, 1e-5, 0.0, 0.0, 10000).satisfied);
    CHECK_FALSE(make_check("x", "", BoundDirection::Lower, 0.01, 0.0, 0.0, 10000).satisfied);
}

}
