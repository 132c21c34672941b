#include <doctest.h>

#include <atomic>
#include <cmath>
#include <set>
#include <vector>

#include "frog/random.hpp"

using namespace frog;

TEST_SUITE("random") {

TEST_CASE("streams are reproducible and addressable") {
    RngStream a = RngStream::derive(7, {1, 2, 3});
    RngStream b = RngStream::derive(7, {1, 2, 3});
    std::vector<std::uint64_t> xa, xb;
    for (int i = 0; i < 100; ++i) {
        xa.push_back(a());
        xb.push_back(b());
    }
    CHECK(xa == xb);
    RngStream c = RngStream::derive(7, {1, 2, 3});
    CHECK(c.at(57) == xa[57]);
}

TEST_CASE("distinct paths give distinct streams") {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t s = 0; s < 4; ++s)
        for (std::uint64_t i = 0; i < 50; ++i) firsts.insert(RngStream::derive(s, {i})());
    CHECK(firsts.size() == 200);
    RngStream base(3);
    CHECK(base.child(1)() != base.child(2)());
    CHECK(RngStream::derive(1, {2, 3})() != RngStream::derive(1, {3, 2})());
}

TEST_CASE("moments") {
    RngStream r = RngStream::derive(11, {0});
    const int n = 200000;
    double su = 0, se = 0, se2 = 0, ss = 0;
    for (int i = 0; i < n; ++i) {
        double u = r.uniform();
        CHECK_FALSE((u < 0.0 || u >= 1.0));
        su += u;
        double e = r.exponential();
        se += e;
        se2 += e * e;
        ss += r.sign();
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(se / n == doctest::Approx(1.0).epsilon(0.015));
    CHECK(se2 / n == doctest::Approx(2.0).epsilon(0.03));
    CHECK(std::fabs(ss / n) < 5.0 / std::sqrt(n));
}

TEST_CASE("parallel_for visits every index once regardless of worker count") {
    for (unsigned w : {1u, 2u, 5u}) {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), w, [&](std::size_t i) { hits[i]++; });
        bool ok = true;
        for (auto& h : hits) ok = ok && h == 1;
        CHECK(ok);
    }
    CHECK(default_workers() >= 1);
}

}
