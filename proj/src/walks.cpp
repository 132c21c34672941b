#include "frog/walks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "frog/swarm.hpp"

namespace frog {

int Trajectory::position(std::size_t k) const {
    if (k > steps.size()) throw std::out_of_range("Trajectory::position beyond generated jumps");
    int s = 0;
    for (std::size_t i = 0; i < k; ++i) s += steps[i];
    return s;
}

Trajectory sample_trajectory(RngStream& rng, std::size_t max_jumps, double max_time) {
    if (max_jumps < 1 && !(max_time > 0.0))
        throw std::invalid_argument("sample_trajectory: need max_jumps >= 1 or max_time > 0");
    Trajectory tr;
    double t = 0.0;
    for (;;) {
        if (tr.times.size() >= max_jumps) {
            tr.hit_max_jumps = true;
            break;
        }
        t += rng.exponential();
        if (t > max_time) {
            tr.hit_max_time = true;
            break;
        }
        tr.times.push_back(t);
        tr.steps.push_back(rng.sign());
    }
    return tr;
}

namespace {
void check_reach_args(const SpeedFunction& speed, std::size_t x, int cap) {
    if (cap < 1) throw std::invalid_argument("reach cap must be >= 1");
    if (x + static_cast<std::size_t>(cap) > speed.horizon())
        throw HorizonError("reach: x + cap = " + std::to_string(x + cap) + " exceeds speed horizon " +
                           std::to_string(speed.horizon()));
}
}  // namespace

Reach ell_A(const SpeedFunction& speed, std::size_t x, const std::vector<Trajectory>& trajectories, int cap) {
    check_reach_args(speed, x, cap);
    int best = 0;
    for (const auto& tr : trajectories) {
        int pos = 0;
        for (std::size_t n = 0; n < tr.times.size() && best < cap; ++n) {
            pos += tr.steps[n];
            if (pos < 1) continue;
            int s = std::min(pos, cap);
            if (s > best && tr.times[n] <= speed.segment(x, static_cast<std::size_t>(s))) best = s;
        }
        if (best == cap) break;
    }
    return {best, best == cap};
}

int walk_reach(const SpeedFunction& speed, std::size_t x, int cap, RngStream& rng) {
    check_reach_args(speed, x, cap);
    const double T = speed.segment(x, static_cast<std::size_t>(cap));
    double t = 0.0;
    int pos = 0, top = 0, best = 0;
    for (;;) {
        t += rng.exponential();
        if (t > T) break;
        pos += rng.sign();
        if (pos > top) {
            top = pos;
            if (t <= speed.segment(x, static_cast<std::size_t>(top))) best = top;
            if (top == cap) break;
        }
    }
    return best;
}

Reach sample_reach(const SpeedFunction& speed, std::size_t x, const ParticleCount& count, RngStream rng,
                   const ReachOptions& opts) {
    check_reach_args(speed, x, opts.cap);
    if (count.is_zero()) return {0, false};
    const bool use_swarm =
        opts.swarm_threshold > 0 && (!count.is_exact() || count.value() > opts.swarm_threshold);
    if (!use_swarm) {
        if (!count.is_exact())
            throw std::overflow_error("site " + std::to_string(x) + " holds " + count.str() +
                                      " particles; enable the swarm path");
        int best = 0;
        for (std::int64_t j = 0; j < count.value() && best < opts.cap; ++j)
            best = std::max(best, walk_reach(speed, x, opts.cap, rng));
        return {best, best == opts.cap};
    }
    SwarmFront front(count, rng.child(0x5357));
    const double T = speed.segment(x, static_cast<std::size_t>(opts.cap));
    int best = 0;
    while (auto g = front.advance(T)) {
        int lvl = front.level();
        if (*g <= speed.segment(x, static_cast<std::size_t>(lvl))) best = lvl;
        if (lvl >= opts.cap) break;
    }
    return {best, best == opts.cap};
}

Reach sample_site_reach(const SpeedFunction& speed, std::size_t x, const InitialDistribution& mu, RngStream rng,
                        const ReachOptions& opts) {
    RngStream eta_rng = rng.child(0xE7A);
    ParticleCount n = mu.sample(eta_rng);
    return sample_reach(speed, x, n, rng.child(0x3A1C), opts);
}

std::vector<TailEstimate> reach_tail_profile(const SpeedFunction& speed, std::size_t x, const std::vector<int>& js,
                                             const InitialDistribution& mu, std::size_t replicas,
                                             const RngStream& base, const ReachOptions& opts, unsigned workers) {
    if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
    for (int j : js) {
        if (j < 0) throw std::invalid_argument("reach threshold must be >= 0");
        if (j >= opts.cap)
            throw std::invalid_argument("reach threshold j=" + std::to_string(j) + " is not below the cap " +
                                        std::to_string(opts.cap));
    }
    check_reach_args(speed, x, opts.cap);
    std::vector<Reach> out(replicas);
    parallel_for(replicas, workers,
                 [&](std::size_t r) { out[r] = sample_site_reach(speed, x, mu, base.child(r), opts); });
    std::vector<TailEstimate> res;
    for (int j : js) {
        TailEstimate e;
        e.replicas = replicas;
        e.cap = opts.cap;
        for (const auto& r : out) {
            if (r.value > j) ++e.hits;
            if (r.saturated) ++e.saturated;
        }
        double n = static_cast<double>(replicas);
        e.estimate = static_cast<double>(e.hits) / n;
        e.stderr_ = std::sqrt(e.estimate * (1.0 - e.estimate) / n);
        res.push_back(e);
    }
    return res;
}

TailEstimate estimate_reach_tail(const SpeedFunction& speed, std::size_t x, int j, const InitialDistribution& mu,
                                 std::size_t replicas, const RngStream& base, const ReachOptions& opts,
                                 unsigned workers) {
    return reach_tail_profile(speed, x, {j}, mu, replicas, base, opts, workers).front();
}

}  // namespace frog
