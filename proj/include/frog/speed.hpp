#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "frog/numerics.hpp"

namespace frog {

class HorizonError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

enum class SpeedFamily { Constant, Power, LogIncrement, Table };

// Non-decreasing speed A(z), z = 1..H, with cached reciprocal prefix sums.
// Immutable after construction.
class SpeedFunction {
public:
    static constexpr std::size_t kDefaultHorizon = 1000000;

    static SpeedFunction constant(double B, std::size_t horizon = kDefaultHorizon);
    static SpeedFunction power(double alpha, std::size_t horizon = kDefaultHorizon);
    static SpeedFunction log_increment(std::size_t horizon = kDefaultHorizon);
    // values[z-1] = A(z).
    static SpeedFunction table(std::vector<double> values);
    static SpeedFunction load_table(const std::string& path);

    SpeedFamily family() const { return family_; }
    double parameter() const { return param_; }
    // Site offset: this function is z -> base(z + offset).
    std::size_t offset() const { return offset_; }
    std::size_t horizon() const { return values_.size(); }
    std::string describe() const;

    double A(std::size_t z) const;
    double prefix(std::size_t i) const;
    double segment(std::size_t i, std::size_t j) const;
    ExtLog log_a(std::size_t i) const;

    // z -> A(z + k), horizon reduced by k.
    SpeedFunction shifted(std::size_t k) const;

private:
    SpeedFunction(SpeedFamily family, double param, std::size_t offset, std::vector<double> values);

    SpeedFamily family_;
    double param_;
    std::size_t offset_;
    std::vector<double> values_;
    std::vector<double> prefix_;
};

// z -> A(z) v z.
SpeedFunction normalize_linear_floor(const SpeedFunction& A);

}  // namespace frog
