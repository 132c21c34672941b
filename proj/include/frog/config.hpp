#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "frog/distributions.hpp"
#include "frog/speed.hpp"

namespace frog {

using Json = nlohmann::ordered_json;

// Validation failure with a source location (line 0 when unknown).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, int line, const std::string& msg);
    int line() const { return line_; }

private:
    int line_;
};

struct ConfigDoc {
    std::string source;  // file name or "<flags>"
    std::string text;
    Json root = Json::object();

    // First line mentioning "key", or 0.
    int line_of(const std::string& key) const;
    [[noreturn]] void fail(const std::string& key, const std::string& msg) const;
};

ConfigDoc load_config(const std::string& path);
ConfigDoc parse_config(const std::string& text, const std::string& source);

// Rejects keys outside `allowed`.
void check_keys(const ConfigDoc& doc, const Json& obj, const std::vector<std::string>& allowed,
                const std::string& where);

double get_double(const ConfigDoc& doc, const Json& obj, const std::string& key, double def);
std::int64_t get_int(const ConfigDoc& doc, const Json& obj, const std::string& key, std::int64_t def,
                     std::int64_t min = 0);
std::string get_string(const ConfigDoc& doc, const Json& obj, const std::string& key, const std::string& def);
bool get_bool(const ConfigDoc& doc, const Json& obj, const std::string& key, bool def);
std::vector<std::int64_t> get_int_list(const ConfigDoc& doc, const Json& obj, const std::string& key,
                                       const std::vector<std::int64_t>& def, std::int64_t min = 0);

// {"family":"constant","B":2} | {"family":"power","alpha":2} | {"family":"logincrement"}
// | {"family":"table","values":[...]} | {"family":"table","path":"A.txt"}; optional "horizon".
SpeedFunction parse_speed(const ConfigDoc& doc, const Json& spec, std::size_t default_horizon);

// {"family":"dirac","k":1} | poisson "lambda" | geometric "p" | logpareto "a"
// | ylogy "rate" | table "pmf".
InitialDistribution parse_mu(const ConfigDoc& doc, const Json& spec);

}  // namespace frog
