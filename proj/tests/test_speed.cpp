#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "frog/speed.hpp"

using namespace frog;

TEST_SUITE("speed") {

TEST_CASE("prefix and segment against direct sums") {
    auto A = SpeedFunction::power(1.5, 300);
    double direct = 0.0;
    CHECK(A.prefix(0) == 0.0);
    for (std::size_t z = 1; z <= 300; ++z) {
        direct += 1.0 / std::pow(static_cast<double>(z), 1.5);
        CHECK(A.prefix(z) == doctest::Approx(direct).epsilon(1e-13));
        CHECK(A.prefix(z) > A.prefix(z - 1));
    }
    for (std::size_t i = 0; i <= 300; i += 17)
        for (std::size_t j = 0; i + j <= 300; j += 13)
            CHECK(std::fabs(A.segment(i, j) - (A.prefix(i + j) - A.prefix(i))) <= 1e-12 * (1 + A.prefix(i + j)));
    CHECK_THROWS_AS(A.segment(200, 101), HorizonError);
    CHECK_THROWS_AS(A.A(0), HorizonError);
    CHECK_THROWS_AS(A.A(301), HorizonError);
}

TEST_CASE("log_a examples") {
    auto lin = SpeedFunction::power(1.0, 100);
    CHECK(lin.log_a(0).is_neg_inf());
    CHECK(lin.log_a(1).value() == doctest::Approx(0.0));
    CHECK(lin.log_a(2).value() == doctest::Approx(std::log(8.0 / 9.0)));
    auto li = SpeedFunction::log_increment(2000);
    for (std::size_t i : {1u, 5u, 50u, 1999u}) {
        double n = static_cast<double>(i);
        CHECK(li.log_a(i).value() == doctest::Approx(std::lgamma(n + 1) - n * std::log(std::log(n + 1))).epsilon(1e-9));
    }
}

TEST_CASE("log-increment prefix telescopes") {
    auto li = SpeedFunction::log_increment(100000);
    for (std::size_t i : {1u, 10u, 1000u, 100000u})
        CHECK(std::fabs(li.prefix(i) - std::log(static_cast<double>(i) + 1)) <= 1e-9);
    CHECK(li.A(1) == doctest::Approx(1.0 / std::log(2.0)));
}

TEST_CASE("a-tail constant for the log-increment speed is small") {
    auto li = SpeedFunction::log_increment(500);
    double sup = 0.0;
    for (std::size_t j = 1; j <= 250; ++j) {
        double s = 0.0, lj = li.log_a(j).value();
        for (std::size_t i = j; i <= 500; ++i) s += std::exp(lj - li.log_a(i).value());
        sup = std::max(sup, s);
    }
    CHECK(sup < 10.0);
}

TEST_CASE("normalize_linear_floor") {
    auto c = normalize_linear_floor(SpeedFunction::constant(2.0, 5));
    CHECK(c.A(1) == 2.0);
    CHECK(c.A(2) == 2.0);
    CHECK(c.A(3) == 3.0);
    auto sq = normalize_linear_floor(SpeedFunction::power(2.0, 10));
    CHECK(sq.family() == SpeedFamily::Power);
    auto t = normalize_linear_floor(SpeedFunction::table({0.5, 5, 5}));
    CHECK(t.A(1) == 1.0);
    CHECK(t.A(2) == 5.0);
    CHECK(t.A(3) == 5.0);
}

TEST_CASE("shifted") {
    auto A = SpeedFunction::power(1.0, 50);
    auto B = A.shifted(3);
    CHECK(B.horizon() == 47);
    CHECK(B.offset() == 3);
    CHECK(B.A(1) == 4.0);
    CHECK(B.prefix(2) == doctest::Approx(0.25 + 0.2));
    auto li = SpeedFunction::log_increment(50).shifted(4);
    CHECK(li.prefix(3) == doctest::Approx(std::log(8.0 / 5.0)).epsilon(1e-12));
    CHECK_THROWS_AS(A.shifted(50), HorizonError);
}

TEST_CASE("validation and table files") {
    CHECK_THROWS_AS(SpeedFunction::constant(0.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(SpeedFunction::table({}), std::invalid_argument);
    CHECK_THROWS_AS(SpeedFunction::table({2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(SpeedFunction::table({1.0, -1.0}), std::invalid_argument);
    std::string path = "speed_table_test.txt";
    {
        std::ofstream out(path);
        out << "1\n2\n\n2.5\n";
    }
    auto t = SpeedFunction::load_table(path);
    CHECK(t.horizon() == 3);
    CHECK(t.A(3) == 2.5);
    {
        std::ofstream out(path);
        out << "1\nabc\n";
    }
    CHECK_THROWS_AS(SpeedFunction::load_table(path), std::invalid_argument);
    std::remove(path.c_str());
    CHECK_THROWS(SpeedFunction::load_table("does/not/exist"));
}

}
