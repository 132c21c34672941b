#pragma once

#include <map>
#include <optional>

#include "frog/distributions.hpp"
#include "frog/random.hpp"

namespace frog {

// Running maximum of n independent continuous-time simple symmetric walks
// started together at 0. Walkers are kept as occupation counts; each call to
// advance() samples the next first-passage time of the maximum from the
// product of single-walk passage laws, picks the walker that passed, and
// redistributes the others under the "has not passed" conditioning.
//
// Approximations: occupation cells whose expected count is below 1e-12 are
// dropped, and splits of counts above 2^53 are deterministic (relative
// fluctuations below 1e-8). Dropping walkers can only delay the front.
class SwarmFront {
public:
    SwarmFront(ParticleCount n, RngStream rng);

    // Time (since the start) at which the maximum first reaches
    // max(target, level()+1), or nullopt if that happens after time_limit; the
    // front is then exhausted. Intermediate levels are not observed.
    std::optional<double> advance(double time_limit, int target = 0);

    int level() const { return level_; }
    double time() const { return time_; }
    bool exhausted() const { return exhausted_; }
    std::size_t cells() const { return cells_.size(); }

private:
    struct Eval {
        double phi;
        double dphi;
    };
    Eval evaluate(double u, int hmax) const;
    void redistribute(double u, int hmax);

    RngStream rng_;
    std::map<int, ParticleCount> cells_;
    int level_ = 0;
    int target_ = 1;
    double time_ = 0.0;
    bool exhausted_ = false;
};

}  // namespace frog
