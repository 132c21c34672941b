#include "frog/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "frog/numerics.hpp"

namespace frog {

namespace {

constexpr double kLogDeterministic = 36.7;  // ~ log 2^53
const double kLogNegligible = std::log(1e-12);
// Passage times beyond this are treated as never (the front is then exhausted).
const double kLogMaxStep = std::log(1e6);

// log of the cumulative hazard -log(1 - F) from log F.
double log_hazard(const WalkKernel& k, int h) {
    double lp = k.log_passed(h);
    if (lp < -20.0) return lp + std::log1p(0.5 * std::exp(lp));
    return std::log(-k.log_not_passed(h));
}

}  // namespace

SwarmFront::SwarmFront(ParticleCount n, RngStream rng) : rng_(rng) {
    if (n.is_zero()) throw std::invalid_argument("SwarmFront needs at least one walker");
    cells_[0] = n;
}

SwarmFront::Eval SwarmFront::evaluate(double u, int hmax) const {
    WalkKernel k(u, hmax + 1);
    std::vector<double> terms, slopes;
    terms.reserve(cells_.size());
    slopes.reserve(cells_.size());
    for (const auto& [pos, n] : cells_) {
        int h = target_ - pos;
        double lh = log_hazard(k, h);
        terms.push_back(n.log() + lh);
        double lnp = k.log_not_passed(h);
        slopes.push_back(std::exp(std::log(static_cast<double>(h)) + k.log_pmf(h) - lnp - lh));
    }
    double phi = log_sum_exp(terms);
    double d = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) d += std::exp(terms[i] - phi) * slopes[i];
    return {phi, d};
}

std::optional<double> SwarmFront::advance(double time_limit, int target) {
    if (exhausted_) return std::nullopt;
    target_ = std::max(target, level_ + 1);
    double budget = time_limit - time_;
    if (!(budget > 0.0)) {
        exhausted_ = true;
        return std::nullopt;
    }
    const double logE = std::log(rng_.exponential());
    const int hmax = target_ - cells_.begin()->first;

    double u = std::numeric_limits<double>::infinity();
    for (const auto& [pos, n] : cells_) {
        int h = target_ - pos;
        double g = (logE - n.log() + std::lgamma(h + 1.0)) / h + std::log(2.0);
        u = std::min(u, g);
    }
    // Root of phi(u) = log E in u = log s; the bracket's upper end is the time budget.
    const double um = std::min(std::log(budget), kLogMaxStep);
    double lo = -std::numeric_limits<double>::infinity();
    double hi = um;
    bool hi_evaluated = false;
    u = std::min(u, um);
    for (int it = 0; it < 300; ++it) {
        Eval e = evaluate(u, hmax);
        double f = e.phi - logE;
        if (f < 0.0) {
            if (u >= um) {
                exhausted_ = true;
                return std::nullopt;
            }
            lo = u;
        } else {
            hi = u;
            hi_evaluated = true;
        }
        if (std::fabs(f) < 1e-13) break;
        if (std::isfinite(lo) && hi - lo < 1e-14 * std::max(1.0, std::fabs(u))) break;
        double step = e.dphi > 0.0 ? -f / e.dphi : (f < 0.0 ? 8.0 : -8.0);
        double next = u + std::clamp(step, -8.0, 8.0);
        if (next >= hi)
            next = hi_evaluated ? (std::isfinite(lo) ? 0.5 * (lo + hi) : hi - 8.0) : um;
        else if (next <= lo)
            next = 0.5 * (lo + hi);
        if (next == u) break;
        u = next;
    }
    redistribute(u, hmax);
    time_ += std::exp(u);
    return time_;
}

void SwarmFront::redistribute(double u, int hmax) {
    WalkKernel k(u, 2 * hmax + 2);
    const int K = k.kmax();

    // Which cell produced the passage: weights proportional to n * hazard.
    std::vector<double> logw;
    for (const auto& [pos, n] : cells_) {
        int h = target_ - pos;
        logw.push_back(n.log() + std::log(static_cast<double>(h)) + k.log_pmf(h) - k.log_not_passed(h));
    }
    double m = *std::max_element(logw.begin(), logw.end());
    double total = 0.0;
    for (double& w : logw) {
        w = std::exp(w - m);
        total += w;
    }
    double pick = rng_.uniform() * total;
    std::size_t winner = logw.size() - 1;
    for (std::size_t i = 0; i < logw.size(); ++i) {
        pick -= logw[i];
        if (pick < 0.0) {
            winner = i;
            break;
        }
    }

    std::map<int, ParticleCount> next;
    auto deposit = [&](int pos, ParticleCount c) {
        if (c.is_zero()) return;
        auto it = next.find(pos);
        if (it == next.end())
            next.emplace(pos, c);
        else
            it->second = it->second.plus(c);
    };

    std::size_t idx = 0;
    for (const auto& [pos, n0] : cells_) {
        ParticleCount n = n0;
        if (idx++ == winner) {
            if (n.is_exact()) n = ParticleCount::exact(n.value() - 1);
        }
        if (n.is_zero()) continue;
        const int h = target_ - pos;
        const double lnp = k.log_not_passed(h);
        auto log_q = [&](int x) {
            double a = k.log_pmf(x);
            if (a == kNegInf) return kNegInf;
            double b = k.log_pmf(2 * h - x);
            return a + log1m_exp(std::min(0.0, b - a)) - lnp;
        };
        // Displacements in order 0, 1, -1, 2, -2, ...; q_x decreases in |x| on each side.
        auto for_each_x = [&](auto&& body) {
            bool up = h - 1 >= 1, down = true;
            if (!body(0)) return;
            for (int d = 1; up || down; ++d) {
                if (up) {
                    if (d > h - 1)
                        up = false;
                    else
                        up = body(d);
                }
                if (down) {
                    if (-d < -K)
                        down = false;
                    else
                        down = body(-d);
                }
            }
        };
        if (n.is_exact() && n.log() <= kLogDeterministic) {
            std::int64_t rem = n.value();
            double used = 0.0;
            for_each_x([&](int x) {
                if (rem == 0) return false;
                double lq = log_q(x);
                if (lq == kNegInf) return false;
                double q = std::exp(lq);
                double rest = 1.0 - used;
                double p = rest > q ? q / rest : 1.0;
                used += q;
                std::binomial_distribution<long long> bin(rem, std::clamp(p, 0.0, 1.0));
                std::int64_t c = bin(rng_);
                rem -= c;
                deposit(pos + x, ParticleCount::exact(c));
                return q > 1e-18;
            });
            if (rem > 0) deposit(pos, ParticleCount::exact(rem));
        } else {
            const double ln = n.log();
            for_each_x([&](int x) {
                double lq = log_q(x);
                if (lq == kNegInf) return false;
                double ll = ln + lq;
                if (ll > kLogDeterministic) {
                    deposit(pos + x, ParticleCount::from_log(ll));
                } else if (ll > kLogNegligible) {
                    std::poisson_distribution<long long> poi(std::exp(ll));
                    deposit(pos + x, ParticleCount::exact(poi(rng_)));
                } else {
                    return false;
                }
                return true;
            });
        }
    }
    level_ = target_;
    deposit(level_, ParticleCount::exact(1));
    cells_ = std::move(next);
}

}  // namespace frog
