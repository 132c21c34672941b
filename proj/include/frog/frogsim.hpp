#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "frog/distributions.hpp"
#include "frog/speed.hpp"

namespace frog {

enum class LeftMode { TwoSided, LeftRemoved };
enum class StopReason { ReachedR, ParticleCap, TimeCap, Exhausted };
std::string to_string(LeftMode m);
std::string to_string(StopReason r);

struct FrogConfig {
    InitialDistribution mu = InitialDistribution::dirac(1);
    std::size_t R = 256;
    LeftMode mode = LeftMode::LeftRemoved;
    // Two-sided mode: sleeping particles live on [-L, R].
    std::size_t L = 0;
    std::size_t particle_cap = 2'000'000;
    double time_cap = std::numeric_limits<double>::infinity();
    // Biased speedup: freeze particles more than W sites behind the rightmost visited site.
    std::optional<std::size_t> window;
    // Sites holding more particles than this run as one SwarmFront; 0 disables it.
    std::int64_t swarm_threshold = 4096;
    std::uint64_t seed = 0;
    std::uint64_t replica = 0;

    void validate() const;
};

struct ActivationRecord {
    long first_site = 0;  // -L in two-sided mode, else 0
    std::size_t R = 0;
    // Indexed by site - first_site, sites first_site..R. theta is +inf if not reached.
    std::vector<double> theta_;
    std::vector<long> origin_;
    std::vector<ParticleCount> count_;

    std::uint64_t events = 0;       // individual jumps
    std::uint64_t front_steps = 0;  // swarm front advances
    std::size_t particles = 0;      // individually simulated particles
    std::size_t swarms = 0;
    std::size_t frozen = 0;
    bool origin_boost = false;
    bool swarm_left_ignored = false;
    bool window_used = false;
    StopReason stop = StopReason::Exhausted;
    double wall_clock_seconds = 0.0;

    double theta(long site) const;
    bool reached(long site) const;
    long origin(long site) const;
    const ParticleCount& count(long site) const;
    bool partial() const { return stop != StopReason::ReachedR; }
    // theta_0..theta_R.
    std::vector<double> theta_right() const;
};

// One realization; two runs with equal config are bit-identical (apart from wall clock).
ActivationRecord simulate(const FrogConfig& cfg);

struct RegimeReport {
    std::size_t n0 = 1;
    std::size_t levels = 0;
    std::vector<double> median_delta;  // k = 0..levels-1
    double slope = 0.0;
    double stability = 0.0;  // median(theta_R / R) / median(theta_{R/2} / (R/2))
    std::string label;
    std::vector<double> replica_slopes;
    std::vector<std::string> replica_labels;
    double agreement = 0.0;
    std::size_t used = 0;
    std::size_t excluded = 0;
    std::string note = "labels are finite-size diagnostics, not theorems";
};

// thetas[r][n] = theta_n, n = 0..R, with R = n0 * 2^levels; +inf marks "not reached".
RegimeReport regime_diagnostic(const std::vector<std::vector<double>>& thetas, std::size_t n0 = 1);
RegimeReport regime_diagnostic(const std::vector<ActivationRecord>& records, std::size_t n0 = 1);

std::string regime_label(double slope, double stability);

struct ActivationInterval {
    long from;  // activator origin
    long to;
    double dt;
    double budget;  // segment(from, to - from)
    bool fast;
};
struct IntervalSummary {
    std::vector<ActivationInterval> intervals;  // from site R back towards 0
    std::size_t fast = 0;
    std::size_t slow = 0;
    double slow_budget = 0.0;
    double theta_R = 0.0;
};
// Follows activator origins from R back to 0 (left-removed records that reached R).
IntervalSummary fast_slow_intervals(const ActivationRecord& rec, const SpeedFunction& speed);

}  // namespace frog
