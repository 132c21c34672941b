#include <doctest.h>

#include "frog/config.hpp"

using namespace frog;

TEST_SUITE("config") {

TEST_CASE("malformed JSON reports the line") {
    try {
        parse_config("{\n  \"R\": 3,\n  \"mu\": {\"family\": }\n}", "bad.json");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("bad.json:3") == 0);
    }
    CHECK_THROWS_AS(parse_config("[1, 2]", "x"), ConfigError);
    CHECK_THROWS_AS(load_config("no/such/file.json"), ConfigError);
}

TEST_CASE("unknown keys are rejected with their line") {
    auto doc = parse_config("{\n\"R\": 1,\n\"bogus\": 2\n}", "c.json");
    try {
        check_keys(doc, doc.root, {"R"}, "test");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("typed getters") {
    auto doc = parse_config(R"({"a": 2.5, "b": 3, "c": "s", "d": true, "e": [1, 2], "f": "inf", "g": 4.0})", "x");
    CHECK(get_double(doc, doc.root, "a", 0) == 2.5);
    CHECK(get_double(doc, doc.root, "f", 0) == std::numeric_limits<double>::infinity());
    CHECK(get_double(doc, doc.root, "zz", 7) == 7);
    CHECK(get_int(doc, doc.root, "b", 0) == 3);
    CHECK(get_int(doc, doc.root, "g", 0) == 4);
    CHECK_THROWS_AS(get_int(doc, doc.root, "a", 0), ConfigError);
    CHECK_THROWS_AS(get_int(doc, doc.root, "b", 0, 5), ConfigError);
    CHECK(get_string(doc, doc.root, "c", "") == "s");
    CHECK_THROWS_AS(get_string(doc, doc.root, "b", ""), ConfigError);
    CHECK(get_bool(doc, doc.root, "d", false));
    CHECK(get_int_list(doc, doc.root, "e", {}) == std::vector<std::int64_t>{1, 2});
    CHECK_THROWS_AS(get_int_list(doc, doc.root, "b", {}), ConfigError);
}

TEST_CASE("speed and mu specs") {
    auto doc = parse_config("{}", "x");
    auto sp = [&](const char* s) { return parse_speed(doc, Json::parse(s), 100); };
    auto mu = [&](const char* s) { return parse_mu(doc, Json::parse(s)); };
    CHECK(sp(R"({"family":"constant","B":2})").A(5) == 2.0);
    CHECK(sp(R"({"family":"power","alpha":2,"horizon":10})").horizon() == 10);
    CHECK(sp(R"({"family":"logincrement"})").family() == SpeedFamily::LogIncrement);
    CHECK(sp(R"({"family":"table","values":[1,2,3]})").A(3) == 3.0);
    CHECK_THROWS_AS(sp(R"({"family":"table"})"), ConfigError);
    CHECK_THROWS_AS(sp(R"({"family":"cubic"})"), ConfigError);
    CHECK_THROWS_AS(sp(R"({"family":"constant","B":-1})"), ConfigError);
    CHECK_THROWS_AS(sp(R"({"family":"constant","alpha":1})"), ConfigError);
    CHECK(mu(R"({"family":"dirac","k":2})").pmf(2) == 1.0);
    CHECK(mu(R"({"family":"poisson","lambda":1})").family() == DistFamily::Poisson);
    CHECK(mu(R"({"family":"geometric","p":0.5})").mean() == doctest::Approx(1.0));
    CHECK(mu(R"({"family":"logpareto","a":0.5})").family() == DistFamily::LogPareto);
    CHECK(mu(R"({"family":"ylogy"})").family() == DistFamily::YLogY);
    CHECK(mu(R"({"family":"table","pmf":[1,1]})").pmf(0) == 0.5);
    CHECK_THROWS_AS(mu(R"({"family":"poisson","lambda":-1})"), ConfigError);
    CHECK_THROWS_AS(mu(R"({"family":"zipf"})"), ConfigError);
    CHECK_THROWS_AS(mu(R"(3)"), ConfigError);
}

}
