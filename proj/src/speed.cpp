#include "frog/speed.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace frog {

namespace {

std::vector<double> tabulate(std::size_t horizon, double (*f)(double, double), double param) {
    if (horizon < 1) throw std::invalid_argument("speed horizon must be >= 1");
    std::vector<double> v(horizon);
    for (std::size_t z = 1; z <= horizon; ++z) v[z - 1] = f(static_cast<double>(z), param);
    return v;
}

}  // namespace

SpeedFunction::SpeedFunction(SpeedFamily family, double param, std::size_t offset, std::vector<double> values)
    : family_(family), param_(param), offset_(offset), values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("speed horizon must be >= 1");
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!(values_[k] > 0.0) || !std::isfinite(values_[k]))
            throw std::invalid_argument("speed: A(" + std::to_string(k + 1) + ") must be positive and finite");
        if (k > 0 && values_[k] < values_[k - 1])
            throw std::invalid_argument("speed: A is decreasing at z=" + std::to_string(k + 1));
    }
    prefix_.resize(values_.size() + 1);
    prefix_[0] = 0.0;
    CompensatedSum acc;
    for (std::size_t z = 1; z <= values_.size(); ++z) {
        if (family_ == SpeedFamily::LogIncrement)
            acc.add(std::log1p(1.0 / static_cast<double>(z + offset_)));
        else
            acc.add(1.0 / values_[z - 1]);
        prefix_[z] = acc.value();
    }
}

SpeedFunction SpeedFunction::constant(double B, std::size_t horizon) {
    if (!(B > 0.0)) throw std::invalid_argument("constant speed needs B > 0");
    return SpeedFunction(SpeedFamily::Constant, B, 0, tabulate(horizon, [](double, double b) { return b; }, B));
}

SpeedFunction SpeedFunction::power(double alpha, std::size_t horizon) {
    if (!(alpha > 0.0)) throw std::invalid_argument("power speed needs alpha > 0");
    return SpeedFunction(SpeedFamily::Power, alpha, 0,
                         tabulate(horizon, [](double z, double a) { return std::pow(z, a); }, alpha));
}

SpeedFunction SpeedFunction::log_increment(std::size_t horizon) {
    return SpeedFunction(SpeedFamily::LogIncrement, 0.0, 0,
                         tabulate(horizon, [](double z, double) { return 1.0 / std::log1p(1.0 / z); }, 0.0));
}

SpeedFunction SpeedFunction::table(std::vector<double> values) {
    return SpeedFunction(SpeedFamily::Table, 0.0, 0, std::move(values));
}

SpeedFunction SpeedFunction::load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open speed table " + path);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ss(line);
        double v;
        if (!(ss >> v)) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": not a number");
        values.push_back(v);
    }
    return table(std::move(values));
}

std::string SpeedFunction::describe() const {
    std::ostringstream os;
    switch (family_) {
        case SpeedFamily::Constant: os << "constant(B=" << param_ << ")"; break;
        case SpeedFamily::Power: os << "power(alpha=" << param_ << ")"; break;
        case SpeedFamily::LogIncrement: os << "logincrement"; break;
        case SpeedFamily::Table: os << "table"; break;
    }
    if (offset_ > 0) os << "+shift" << offset_;
    os << "[H=" << horizon() << "]";
    return os.str();
}

double SpeedFunction::A(std::size_t z) const {
    if (z < 1 || z > values_.size())
        throw HorizonError("A(" + std::to_string(z) + ") outside 1.." + std::to_string(values_.size()));
    return values_[z - 1];
}

double SpeedFunction::prefix(std::size_t i) const {
    if (i > values_.size())
        throw HorizonError("prefix(" + std::to_string(i) + ") beyond horizon " + std::to_string(values_.size()));
    return prefix_[i];
}

double SpeedFunction::segment(std::size_t i, std::size_t j) const {
    if (i + j > values_.size())
        throw HorizonError("segment(" + std::to_string(i) + "," + std::to_string(j) + ") beyond horizon " +
                           std::to_string(values_.size()));
    return prefix_[i + j] - prefix_[i];
}

ExtLog SpeedFunction::log_a(std::size_t i) const {
    if (i == 0) return ExtLog::neg_inf();
    double p = prefix(i);
    double n = static_cast<double>(i);
    return ExtLog::of(std::lgamma(n + 1.0) - n * std::log(p));
}

SpeedFunction SpeedFunction::shifted(std::size_t k) const {
    if (k >= values_.size()) throw HorizonError("shift consumes the whole horizon");
    std::vector<double> v(values_.begin() + static_cast<std::ptrdiff_t>(k), values_.end());
    return SpeedFunction(family_, param_, offset_ + k, std::move(v));
}

SpeedFunction normalize_linear_floor(const SpeedFunction& A) {
    std::vector<double> v(A.horizon());
    bool changed = false;
    for (std::size_t z = 1; z <= A.horizon(); ++z) {
        double zz = static_cast<double>(z);
        v[z - 1] = std::max(A.A(z), zz);
        if (v[z - 1] != A.A(z)) changed = true;
    }
    if (!changed) return A;
    return SpeedFunction::table(std::move(v));
}

}  // namespace frog
