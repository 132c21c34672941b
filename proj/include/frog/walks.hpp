#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "frog/distributions.hpp"
#include "frog/random.hpp"
#include "frog/speed.hpp"

namespace frog {

struct Trajectory {
    std::vector<double> times;  // tau_1 < tau_2 < ...
    std::vector<int> steps;     // +1 / -1
    bool hit_max_jumps = false;
    bool hit_max_time = false;

    std::size_t jumps() const { return times.size(); }
    // Position after the first k jumps.
    int position(std::size_t k) const;
};

// Exp(1) interarrivals and fair +/-1 steps; generation stops at whichever of
// max_jumps / max_time is hit first.
Trajectory sample_trajectory(RngStream& rng, std::size_t max_jumps,
                             double max_time = std::numeric_limits<double>::infinity());

struct Reach {
    int value = 0;
    bool saturated = false;  // value == cap; the true statistic may be larger
};

constexpr int kDefaultReachCap = 1000;

// Fast-reach statistic of site x from the given trajectories, evaluated at jump
// epochs: the largest k with tau_n <= segment(x, min(S_n, cap)) and
// min(S_n, cap) >= k, or 0.
Reach ell_A(const SpeedFunction& speed, std::size_t x, const std::vector<Trajectory>& trajectories,
            int cap = kDefaultReachCap);

// Reach of a single walk generated on the fly and truncated once tau > segment(x, cap).
// Consumes the stream in the same order as sample_trajectory.
int walk_reach(const SpeedFunction& speed, std::size_t x, int cap, RngStream& rng);

struct ReachOptions {
    int cap = kDefaultReachCap;
    // Sites with more particles than this are handled by SwarmFront; 0 disables it
    // (counts that are not exact are then refused).
    std::int64_t swarm_threshold = 4096;
};

// psi for a site holding `count` particles.
Reach sample_reach(const SpeedFunction& speed, std::size_t x, const ParticleCount& count, RngStream rng,
                   const ReachOptions& opts = {});
// Draws eta(x) ~ mu then evaluates the reach.
Reach sample_site_reach(const SpeedFunction& speed, std::size_t x, const InitialDistribution& mu, RngStream rng,
                        const ReachOptions& opts = {});

struct TailEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::size_t replicas = 0;
    std::size_t hits = 0;
    std::size_t saturated = 0;
    int cap = kDefaultReachCap;
};

// Monte Carlo estimate of P{psi_x > j}; replica r draws from base.child(r).
TailEstimate estimate_reach_tail(const SpeedFunction& speed, std::size_t x, int j, const InitialDistribution& mu,
                                 std::size_t replicas, const RngStream& base, const ReachOptions& opts = {},
                                 unsigned workers = 1);

// Same replicas, all thresholds at once.
std::vector<TailEstimate> reach_tail_profile(const SpeedFunction& speed, std::size_t x, const std::vector<int>& js,
                                             const InitialDistribution& mu, std::size_t replicas,
                                             const RngStream& base, const ReachOptions& opts = {},
                                             unsigned workers = 1);

}  // namespace frog
