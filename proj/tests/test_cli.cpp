#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frog/cli.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("frogkit_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

fs::path write(const fs::path& dir, const std::string& leaf, const std::string& text) {
    std::ofstream(dir / leaf) << text;
    return dir / leaf;
}

int run(std::vector<std::string> args, std::string* err = nullptr) {
    std::ostringstream o, e;
    int rc = frog::run(args, o, e);
    if (err) *err = e.str();
    return rc;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit 2") {
    std::string err;
    CHECK(run({"sim-frog", "--bogus"}, &err) == 2);
    CHECK(err.find("Usage") != std::string::npos);
    CHECK(run({}, &err) == 2);
    CHECK(run({"no-such-command"}, &err) == 2);
    CHECK(run({"sim-frog", "--seed", "abc"}, &err) == 2);
    CHECK(run({"--help"}) == 0);
}

TEST_CASE("config validation exits 2 with a location") {
    auto d = scratch("validation");
    std::string err;
    auto bad = write(d, "bad.json", "{\n \"R\": 16,\n \"mu\": {\"family\":\"dirac\",\"k\":1},\n \"oops\": 1\n}");
    CHECK(run({"sim-frog", "--config", bad.string(), "--out", (d / "o").string()}, &err) == 2);
    CHECK(err.find("bad.json:4") != std::string::npos);
    auto broken = write(d, "broken.json", "{\n \"R\": 16,\n \"mu\": \n}");
    CHECK(run({"sim-frog", "--config", broken.string(), "--out", (d / "o").string()}, &err) == 2);
    CHECK(err.find("broken.json:4") != std::string::npos);
    auto rho = write(d, "rho.json", R"({"speed":{"family":"power","alpha":2},"mu":{"family":"dirac","k":1},"rho":1})");
    CHECK(run({"check-conditions", "--config", rho.string(), "--out", (d / "o").string()}, &err) == 2);
    CHECK(run({"sim-frog", "--config", (d / "missing.json").string()}, &err) == 2);
}

TEST_CASE("capped runs exit 3 and are flagged") {
    auto d = scratch("capped");
    auto cfg = write(d, "c.json", R"({"R": 64, "mu": {"family":"poisson","lambda":3}, "particle_cap": 10})");
    CHECK(run({"sim-frog", "--config", cfg.string(), "--out", (d / "o").string()}) == 3);
    auto side = nlohmann::json::parse(slurp(d / "o" / "sim-frog.json"));
    CHECK(side["partial"] == true);
    CHECK(side["exit_code"] == 3);
    CHECK(side["stop_reasons"][0] == "particle-cap");
}

TEST_CASE("sidecar and outputs") {
    auto d = scratch("sidecar");
    auto cfg = write(d, "c.json", R"({"R": 32, "mu": {"family":"dirac","k":1}, "replicas": 3})");
    CHECK(run({"sim-frog", "--config", cfg.string(), "--out", (d / "o").string(), "--seed", "42"}) == 0);
    auto side = nlohmann::json::parse(slurp(d / "o" / "sim-frog.json"));
    for (const char* k : {"subcommand", "git_describe", "config", "seed", "replicas", "outputs", "partial", "exit_code",
                          "wall_clock_seconds"})
        CHECK(side.contains(k));
    CHECK(side["seed"] == 42);
    CHECK(side["regime"]["label"] == "linear-like");
    for (const auto& f : side["outputs"]) CHECK(fs::exists(d / "o" / f.get<std::string>()));
    CHECK(slurp(d / "o" / "theta_rep000.csv").rfind("site,theta,reached\n", 0) == 0);
}

TEST_CASE("FROGKIT_OUT_DIR sets the default output directory") {
    auto d = scratch("env");
    setenv("FROGKIT_OUT_DIR", (d / "envout").string().c_str(), 1);
    CHECK(run({"check-conditions", "--horizon", "64"}) == 2);  // no speed
    auto cfg = write(d, "c.json", R"({"speed":{"family":"constant","B":2},"mu":{"family":"dirac","k":1}})");
    CHECK(run({"check-conditions", "--config", cfg.string(), "--horizon", "64"}) == 0);
    unsetenv("FROGKIT_OUT_DIR");
    CHECK(fs::exists(d / "envout" / "conditions_summary.csv"));
}

TEST_CASE("flag overrides win over config") {
    auto d = scratch("overrides");
    auto cfg = write(d, "c.json", R"({"R": 32, "mu": {"family":"dirac","k":1}, "replicas": 3, "seed": 1})");
    CHECK(run({"sim-frog", "--config", cfg.string(), "--out", (d / "o").string(), "--replicas", "1", "--horizon", "8",
               "--seed", "5", "--seed", "6"}) == 0);
    auto side = nlohmann::json::parse(slurp(d / "o" / "sim-frog.json"));
    CHECK(side["replicas"] == 1);
    CHECK(side["seed"] == 6);
    CHECK(fs::exists(d / "o" / "theta_rep000.csv"));
    CHECK_FALSE(fs::exists(d / "o" / "theta_rep001.csv"));
    CHECK(slurp(d / "o" / "theta_rep000.csv").find("\n8,") != std::string::npos);
}

}
