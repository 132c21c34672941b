#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frog/numerics.hpp"
#include "frog/random.hpp"

namespace frog {

// A particle count. Exact below 2^62; above that only its natural log is kept
// (heavy-tailed laws produce counts such as floor(e^{10^5})).
class ParticleCount {
public:
    static constexpr std::int64_t kExactLimit = std::int64_t(1) << 62;

    ParticleCount() = default;
    static ParticleCount exact(std::int64_t n);
    static ParticleCount from_log(double log_n);

    bool is_exact() const { return exact_; }
    bool is_zero() const { return exact_ && n_ == 0; }
    // Throws std::overflow_error if the count is not exact.
    std::int64_t value() const;
    double log() const;
    double approx() const;
    std::string str() const;

    bool operator==(const ParticleCount& o) const;
    ParticleCount plus(const ParticleCount& o) const;

private:
    bool exact_ = true;
    std::int64_t n_ = 0;
    double log_n_ = 0.0;
};

enum class DistFamily { Dirac, Poisson, Geometric, LogPareto, YLogY, Table };

// Law mu on the non-negative integers. For LogPareto and YLogY the count is the
// floor of a continuous latent (e^X or e^{Y ln Y});
// finite thresholds are exact, log-scale queries use the latent.
class InitialDistribution {
public:
    static InitialDistribution dirac(std::int64_t k0);
    static InitialDistribution poisson(double lambda);
    // pmf p(1-p)^k, k >= 0; mean (1-p)/p.
    static InitialDistribution geometric(double p);
    // P{X >= t} = t^{-a}, t >= 1; count floor(e^X).
    static InitialDistribution log_pareto(double a);
    // Y ~ Exponential(rate); count floor(e^{Y ln Y}), y ln y read as 0 for y <= 1.
    static InitialDistribution ylogy(double rate = 1.0);
    // pmf[k] = mu({k}); normalized on construction.
    static InitialDistribution table(std::vector<double> pmf);

    DistFamily family() const { return family_; }
    double parameter() const { return param_; }
    std::string describe() const;

    // mu([x, inf)).
    double tail(double x) const;
    // mu([e^l, inf)) without forming e^l.
    double tail_at_log(double l) const;
    double tail_at_log(const ExtLog& l) const;
    // mu((x, inf)) and its log-threshold form.
    double tail_above(double x) const;
    double tail_above_at_log(double l) const;

    double pmf(std::int64_t k) const;
    double mean() const;

    ParticleCount sample(RngStream& rng) const;

private:
    InitialDistribution(DistFamily f, double param) : family_(f), param_(param) {}
    // Only defined for the continuous-latent families.
    double latent_tail_at_log(double l) const;

    DistFamily family_;
    double param_;
    std::vector<double> pmf_;
    std::vector<double> table_tail_;
};

// Root y > 1 of y ln y = l for l > 0 (bisection, then Newton polish).
double ylogy_root(double l);

}  // namespace frog
