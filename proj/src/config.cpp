#include "frog/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace frog {

ConfigError::ConfigError(const std::string& source, int line, const std::string& msg)
    : std::runtime_error(line > 0 ? source + ":" + std::to_string(line) + ": " + msg : source + ": " + msg),
      line_(line) {}

int ConfigDoc::line_of(const std::string& key) const {
    auto pos = text.find("\"" + key + "\"");
    if (pos == std::string::npos) return 0;
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

void ConfigDoc::fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(source, key.empty() ? 0 : line_of(key), msg);
}

ConfigDoc parse_config(const std::string& text, const std::string& source) {
    ConfigDoc doc;
    doc.source = source;
    doc.text = text;
    try {
        doc.root = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t byte = std::min<std::size_t>(e.byte, text.size());
        int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
        std::string what = e.what();
        auto p = what.find("parse error");
        throw ConfigError(source, line, "malformed JSON (" + (p == std::string::npos ? what : what.substr(p)) + ")");
    }
    if (!doc.root.is_object()) throw ConfigError(source, 1, "top level must be a JSON object");
    return doc;
}

ConfigDoc load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

void check_keys(const ConfigDoc& doc, const Json& obj, const std::vector<std::string>& allowed,
                const std::string& where) {
    if (!obj.is_object()) doc.fail("", where + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            doc.fail(it.key(), "unknown key \"" + it.key() + "\" in " + where);
}

double get_double(const ConfigDoc& doc, const Json& obj, const std::string& key, double def) {
    if (!obj.contains(key)) return def;
    const auto& v = obj.at(key);
    if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity"))
        return std::numeric_limits<double>::infinity();
    if (!v.is_number()) doc.fail(key, "\"" + key + "\" must be a number");
    return v.get<double>();
}

std::int64_t get_int(const ConfigDoc& doc, const Json& obj, const std::string& key, std::int64_t def,
                     std::int64_t min) {
    if (!obj.contains(key)) return def;
    const auto& v = obj.at(key);
    std::int64_t out;
    if (v.is_number_integer())
        out = v.get<std::int64_t>();
    else if (v.is_number_float() && v.get<double>() == std::floor(v.get<double>()) && std::fabs(v.get<double>()) < 9e18)
        out = static_cast<std::int64_t>(v.get<double>());
    else
        doc.fail(key, "\"" + key + "\" must be an integer");
    if (out < min) doc.fail(key, "\"" + key + "\" must be >= " + std::to_string(min));
    return out;
}

std::string get_string(const ConfigDoc& doc, const Json& obj, const std::string& key, const std::string& def) {
    if (!obj.contains(key)) return def;
    if (!obj.at(key).is_string()) doc.fail(key, "\"" + key + "\" must be a string");
    return obj.at(key).get<std::string>();
}

bool get_bool(const ConfigDoc& doc, const Json& obj, const std::string& key, bool def) {
    if (!obj.contains(key)) return def;
    if (!obj.at(key).is_boolean()) doc.fail(key, "\"" + key + "\" must be true or false");
    return obj.at(key).get<bool>();
}

std::vector<std::int64_t> get_int_list(const ConfigDoc& doc, const Json& obj, const std::string& key,
                                       const std::vector<std::int64_t>& def, std::int64_t min) {
    if (!obj.contains(key)) return def;
    const auto& v = obj.at(key);
    if (!v.is_array()) doc.fail(key, "\"" + key + "\" must be a list of integers");
    std::vector<std::int64_t> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) doc.fail(key, "\"" + key + "\" must be a list of integers");
        out.push_back(e.get<std::int64_t>());
        if (out.back() < min) doc.fail(key, "entries of \"" + key + "\" must be >= " + std::to_string(min));
    }
    return out;
}

namespace {
std::vector<double> number_list(const ConfigDoc& doc, const Json& spec, const std::string& key) {
    const auto& v = spec.at(key);
    if (!v.is_array() || v.empty()) doc.fail(key, "\"" + key + "\" must be a non-empty list of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) doc.fail(key, "\"" + key + "\" must be a non-empty list of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

template <class F>
auto rethrow_as_config(const ConfigDoc& doc, const std::string& key, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        doc.fail(key, e.what());
    }
}
}  // namespace

SpeedFunction parse_speed(const ConfigDoc& doc, const Json& spec, std::size_t default_horizon) {
    if (!spec.is_object()) doc.fail("speed", "speed spec must be an object");
    std::string fam = get_string(doc, spec, "family", "");
    auto H = static_cast<std::size_t>(get_int(doc, spec, "horizon", static_cast<std::int64_t>(default_horizon), 1));
    return rethrow_as_config(doc, "family", [&]() -> SpeedFunction {
        if (fam == "constant") {
            check_keys(doc, spec, {"family", "B", "horizon"}, "speed");
            return SpeedFunction::constant(get_double(doc, spec, "B", 1.0), H);
        }
        if (fam == "power") {
            check_keys(doc, spec, {"family", "alpha", "horizon"}, "speed");
            return SpeedFunction::power(get_double(doc, spec, "alpha", 1.0), H);
        }
        if (fam == "logincrement") {
            check_keys(doc, spec, {"family", "horizon"}, "speed");
            return SpeedFunction::log_increment(H);
        }
        if (fam == "table") {
            check_keys(doc, spec, {"family", "values", "path"}, "speed");
            if (spec.contains("values") == spec.contains("path"))
                doc.fail("family", "table speed needs exactly one of \"values\" or \"path\"");
            if (spec.contains("path")) return SpeedFunction::load_table(get_string(doc, spec, "path", ""));
            return SpeedFunction::table(number_list(doc, spec, "values"));
        }
        doc.fail("family", "unknown speed family \"" + fam + "\" (constant, power, logincrement, table)");
    });
}

InitialDistribution parse_mu(const ConfigDoc& doc, const Json& spec) {
    if (!spec.is_object()) doc.fail("mu", "mu spec must be an object");
    std::string fam = get_string(doc, spec, "family", "");
    return rethrow_as_config(doc, "family", [&]() -> InitialDistribution {
        if (fam == "dirac") {
            check_keys(doc, spec, {"family", "k"}, "mu");
            return InitialDistribution::dirac(get_int(doc, spec, "k", 1));
        }
        if (fam == "poisson") {
            check_keys(doc, spec, {"family", "lambda"}, "mu");
            return InitialDistribution::poisson(get_double(doc, spec, "lambda", 1.0));
        }
        if (fam == "geometric") {
            check_keys(doc, spec, {"family", "p"}, "mu");
            return InitialDistribution::geometric(get_double(doc, spec, "p", 0.5));
        }
        if (fam == "logpareto") {
            check_keys(doc, spec, {"family", "a"}, "mu");
            return InitialDistribution::log_pareto(get_double(doc, spec, "a", 0.5));
        }
        if (fam == "ylogy") {
            check_keys(doc, spec, {"family", "rate"}, "mu");
            return InitialDistribution::ylogy(get_double(doc, spec, "rate", 1.0));
        }
        if (fam == "table") {
            check_keys(doc, spec, {"family", "pmf"}, "mu");
            if (!spec.contains("pmf")) doc.fail("family", "table mu needs \"pmf\"");
            return InitialDistribution::table(number_list(doc, spec, "pmf"));
        }
        doc.fail("family", "unknown mu family \"" + fam + "\" (dirac, poisson, geometric, logpareto, ylogy, table)");
    });
}

}  // namespace frog
