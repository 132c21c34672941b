#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>

#include "frog/walks.hpp"
#include "oracles.hpp"

using namespace frog;

namespace {
double walk_pmf(int k, double s) { return std::exp(-s) * boost::math::cyl_bessel_i(k, s); }
}  // namespace

TEST_SUITE("walks") {

TEST_CASE("trajectory generation") {
    RngStream r = RngStream::derive(1, {0});
    auto t = sample_trajectory(r, 50);
    CHECK(t.jumps() == 50);
    CHECK(t.hit_max_jumps);
    for (std::size_t k = 1; k < t.jumps(); ++k) CHECK(t.times[k] > t.times[k - 1]);
    int s = 0;
    for (std::size_t k = 0; k < t.jumps(); ++k) {
        CHECK(std::abs(t.steps[k]) == 1);
        s += t.steps[k];
    }
    CHECK(t.position(t.jumps()) == s);
    CHECK(t.position(0) == 0);
    RngStream r2 = RngStream::derive(1, {1});
    auto u = sample_trajectory(r2, 1000000, 3.0);
    CHECK(u.hit_max_time);
    CHECK(u.times.back() <= 3.0);
}

TEST_CASE("ell_A agrees with the epoch scan") {
    for (auto A : {SpeedFunction::constant(2.0, 200), SpeedFunction::power(1.0, 200), SpeedFunction::constant(0.5, 200)})
        for (std::size_t x : {0u, 3u}) {
            const int cap = 40;
            for (std::uint64_t rep = 0; rep < 300; ++rep) {
                RngStream r = RngStream::derive(2, {rep, x});
                std::vector<Trajectory> trs;
                for (int w = 0; w < 3; ++w)
                    trs.push_back(sample_trajectory(r, 100000, A.segment(x, cap)));
                auto got = ell_A(A, x, trs, cap);
                int want = oracle::ell_epoch_scan(A, x, trs, cap);
                CHECK(got.value == want);
                CHECK(got.saturated == (want == cap));
            }
        }
}

TEST_CASE("ell_A worked examples") {
    auto A = SpeedFunction::constant(1.0, 20);
    Trajectory t;
    t.times = {0.5, 1.2, 1.9, 2.5};
    t.steps = {+1, +1, +1, -1};
    // tau_1 = 0.5 <= 1, tau_2 = 1.2 <= 2, tau_3 = 1.9 <= 3.
    CHECK(ell_A(A, 0, {t}, 20).value == 3);
    t.steps = {-1, +1, +1, +1};
    // S reaches 1 at 1.9 > 1.
    CHECK(ell_A(A, 0, {t}, 20).value == 0);
    CHECK(ell_A(A, 0, {}, 20).value == 0);
    t.steps = {+1, +1, +1, +1};
    auto cap = ell_A(A, 0, {t}, 2);
    CHECK(cap.value == 2);
    CHECK(cap.saturated);
}

TEST_CASE("walk_reach consumes the stream like sample_trajectory") {
    auto A = SpeedFunction::power(1.0, 500);
    for (std::uint64_t rep = 0; rep < 500; ++rep) {
        RngStream a = RngStream::derive(3, {rep}), b = a;
        int online = walk_reach(A, 2, 60, a);
        auto tr = sample_trajectory(b, 10000000, A.segment(2, 60));
        CHECK(online == ell_A(A, 2, {tr}, 60).value);
    }
}

TEST_CASE("single-walk tail matches the reflection formula") {
    // A = 1, cap 1: psi_0 > 0 iff the walk passes 1 before time 1.
    auto A = SpeedFunction::constant(1.0, 100);
    const std::size_t n = 100000;
    auto e = estimate_reach_tail(A, 0, 0, InitialDistribution::dirac(1), n, RngStream::derive(4, {}), {1, 4096});
    double p = 1.0 - walk_pmf(0, 1.0) - walk_pmf(1, 1.0);
    CHECK(e.replicas == n);
    CHECK(e.stderr_ == doctest::Approx(std::sqrt(e.estimate * (1 - e.estimate) / n)));
    CHECK(std::fabs(e.estimate - p) < 4 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("tail profile is consistent with single estimates") {
    auto A = SpeedFunction::constant(2.0, 200);
    auto mu = InitialDistribution::poisson(2.0);
    auto base = RngStream::derive(5, {});
    ReachOptions o{50, 4096};
    auto prof = reach_tail_profile(A, 1, {0, 1, 3}, mu, 3000, base, o, 2);
    REQUIRE(prof.size() == 3);
    CHECK(prof[0].estimate >= prof[1].estimate);
    CHECK(prof[1].estimate >= prof[2].estimate);
    auto single = estimate_reach_tail(A, 1, 1, mu, 3000, base, o, 1);
    CHECK(single.estimate == prof[1].estimate);
    CHECK(single.hits == prof[1].hits);
    CHECK_THROWS_AS(reach_tail_profile(A, 1, {50}, mu, 10, base, o), std::invalid_argument);
}

TEST_CASE("swarm path agrees in law with individual walks") {
    auto A = SpeedFunction::power(1.0, 500);
    const auto count = ParticleCount::exact(300);
    const int n = 4000;
    double s_exact = 0, s2_exact = 0, s_swarm = 0, s2_swarm = 0;
    for (int r = 0; r < n; ++r) {
        double a = sample_reach(A, 1, count, RngStream::derive(6, {0, std::uint64_t(r)}), {200, 100000}).value;
        double b = sample_reach(A, 1, count, RngStream::derive(6, {1, std::uint64_t(r)}), {200, 10}).value;
        s_exact += a;
        s2_exact += a * a;
        s_swarm += b;
        s2_swarm += b * b;
    }
    double m1 = s_exact / n, m2 = s_swarm / n;
    double v = (s2_exact / n - m1 * m1 + s2_swarm / n - m2 * m2) / n;
    CAPTURE(m1);
    CAPTURE(m2);
    CHECK(std::fabs(m1 - m2) < 4 * std::sqrt(v));
}

TEST_CASE("huge counts run through the swarm and saturate honestly") {
    auto A = SpeedFunction::power(1.0, 2000);
    const double logN = 200.0;
    // log of the expected number of walkers passing h by segment(0, h), from the exact single-walk law.
    auto log_passers = [&](int h) {
        double s = A.segment(0, static_cast<std::size_t>(h)), up = 0.0;
        for (int k = h; k < h + 400; ++k) up += walk_pmf(k, s);
        return logN + std::log(2.0 * up - walk_pmf(h, s));
    };
    int lo = 0, hi = 0;
    for (int h = 1; h <= 100 && hi == 0; ++h) {
        if (log_passers(h) >= 3.0) lo = h;
        if (log_passers(h) <= -3.0) hi = h;
    }
    REQUIRE(hi > lo);
    auto r = sample_reach(A, 0, ParticleCount::from_log(logN), RngStream::derive(7, {}), {100, 4096});
    CAPTURE(lo);
    CAPTURE(hi);
    CHECK(r.value >= lo);
    CHECK(r.value < hi);
    CHECK_FALSE(r.saturated);
    auto sat = sample_reach(A, 0, ParticleCount::from_log(logN), RngStream::derive(7, {}), {lo, 4096});
    CHECK(sat.value == lo);
    CHECK(sat.saturated);
    CHECK_THROWS(sample_reach(A, 0, ParticleCount::from_log(logN), RngStream::derive(7, {}), {100, 0}));
    CHECK(sample_reach(A, 0, ParticleCount::exact(0), RngStream::derive(7, {}), {100, 4096}).value == 0);
}

}
