#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "frog/distributions.hpp"
#include "frog/speed.hpp"

namespace frog {

enum class Verdict { Converging, Diverging, Inconclusive };
std::string to_string(Verdict v);

struct Checkpoint {
    std::size_t n;  // number of terms summed
    double partial_sum;
    double last_term;
};

// Numeric summary of one series. Verdicts are diagnostics up to `horizon`, not proofs.
struct SeriesDiagnostic {
    std::string name;
    std::size_t horizon = 0;
    std::vector<Checkpoint> checkpoints;  // n = 1, 2, 4, ..., horizon
    std::vector<double> block_ratios;     // (S(4n)-S(2n)) / (S(2n)-S(n))
    double partial_sum = 0.0;
    double last_term = 0.0;
    Verdict numeric = Verdict::Inconclusive;
    std::optional<Verdict> analytic;
    Verdict verdict = Verdict::Inconclusive;
    std::string note;
};

// term(k) for k = 0..horizon-1.
SeriesDiagnostic analyze_series(std::string name, std::size_t horizon, const std::function<double(std::size_t)>& term);

struct ConditionReport {
    std::string condition;
    std::size_t horizon = 0;
    std::vector<SeriesDiagnostic> series;
    std::string label;
    std::vector<std::string> notes;
};

// sum_{z=1}^{horizon} 1/A(z).
SeriesDiagnostic check_speed_series(const SpeedFunction& speed, std::size_t horizon);

// Tail series sum_i mu([a_i, inf)) on the linear-floor normalized speed, paired
// with divergence of sum 1/A for the original speed.
ConditionReport check_nonexplosion(const InitialDistribution& mu, const SpeedFunction& speed, std::size_t horizon);

struct ShiftResult {
    SpeedFunction speed;
    std::size_t z0;
};
// z0 = min{z : A(z) > 1 and mu([0, A(z)]) > 0}; returns z -> A(z + z0 - 1).
ShiftResult shift_speed(const InitialDistribution& mu, const SpeedFunction& speed);

// Terms m = 1..horizon of sum_m prod_{i=1}^m mu([0, A(m)^{rho i}]) and of the
// surrogate sum_m exp(-sum_i mu((A(m)^{rho i}, inf))), A already shifted.
struct ExplosionTerms {
    std::vector<double> product;
    std::vector<double> surrogate;
};
ExplosionTerms explosion_series(const InitialDistribution& mu, const SpeedFunction& shifted, double rho,
                                std::size_t horizon);

constexpr std::size_t kDefaultExplosionHorizon = 4096;

ConditionReport check_explosion(const InitialDistribution& mu, const SpeedFunction& speed, double rho,
                                std::size_t horizon = kDefaultExplosionHorizon);

}  // namespace frog
