#include "frog/frogsim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "frog/random.hpp"
#include "frog/swarm.hpp"

namespace frog {

std::string to_string(LeftMode m) { return m == LeftMode::TwoSided ? "two-sided" : "left-removed"; }

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::ReachedR: return "reached-R";
        case StopReason::ParticleCap: return "particle-cap";
        case StopReason::TimeCap: return "time-cap";
        case StopReason::Exhausted: return "exhausted";
    }
    return "exhausted";
}

void FrogConfig::validate() const {
    if (R < 1) throw std::invalid_argument("R must be >= 1");
    if (particle_cap < 1) throw std::invalid_argument("particle cap must be >= 1");
    if (!(time_cap > 0.0)) throw std::invalid_argument("time cap must be > 0");
    if (mode == LeftMode::LeftRemoved && L != 0) throw std::invalid_argument("L is only meaningful in two-sided mode");
    if (R > static_cast<std::size_t>(std::numeric_limits<int>::max() / 2) ||
        L > static_cast<std::size_t>(std::numeric_limits<int>::max() / 2))
        throw std::invalid_argument("window too large");
    if (swarm_threshold < 0) throw std::invalid_argument("swarm threshold must be >= 0");
}

namespace {
std::size_t index_of(const ActivationRecord& r, long site) {
    if (site < r.first_site || site > static_cast<long>(r.R))
        throw std::out_of_range("site " + std::to_string(site) + " outside the recorded window");
    return static_cast<std::size_t>(site - r.first_site);
}

std::uint64_t zigzag(long x) {
    return x >= 0 ? static_cast<std::uint64_t>(x) << 1 : (static_cast<std::uint64_t>(-(x + 1)) << 1) | 1;
}

struct Event {
    double t;
    std::uint64_t seq;
    std::int64_t id;  // >= 0 particle, < 0 swarm ~id
    bool operator>(const Event& o) const { return t != o.t ? t > o.t : seq > o.seq; }
};

struct Particle {
    int pos;
    int origin;
    RngStream rng;
};

struct Swarm {
    SwarmFront front;
    int site;
    double t0;
};
}  // namespace

double ActivationRecord::theta(long site) const { return theta_[index_of(*this, site)]; }
bool ActivationRecord::reached(long site) const { return std::isfinite(theta(site)); }
long ActivationRecord::origin(long site) const { return origin_[index_of(*this, site)]; }
const ParticleCount& ActivationRecord::count(long site) const { return count_[index_of(*this, site)]; }

std::vector<double> ActivationRecord::theta_right() const {
    std::vector<double> out;
    for (long n = 0; n <= static_cast<long>(R); ++n) out.push_back(theta(n));
    return out;
}

ActivationRecord simulate(const FrogConfig& cfg) {
    cfg.validate();
    auto wall0 = std::chrono::steady_clock::now();
    const double inf = std::numeric_limits<double>::infinity();
    const int R = static_cast<int>(cfg.R);
    const int left_edge = cfg.mode == LeftMode::TwoSided ? -static_cast<int>(cfg.L) : 0;

    ActivationRecord rec;
    rec.first_site = left_edge;
    rec.R = cfg.R;
    const std::size_t width = static_cast<std::size_t>(R - left_edge + 1);
    rec.theta_.assign(width, inf);
    rec.origin_.assign(width, std::numeric_limits<long>::min());
    rec.count_.assign(width, ParticleCount::exact(0));
    rec.window_used = cfg.window.has_value();

    std::vector<Particle> parts;
    std::vector<Swarm> swarms;
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue;
    std::uint64_t seq = 0;
    int lo = 0, hi = 0;
    bool done = false;

    auto push_swarm_step = [&](std::size_t idx) {
        Swarm& sw = swarms[idx];
        auto g = sw.front.advance(cfg.time_cap - sw.t0, hi + 1 - sw.site);
        if (g) queue.push({sw.t0 + *g, seq++, -1 - static_cast<std::int64_t>(idx)});
    };

    auto activate = [&](int s, double t, int origin) {
        if (s < left_edge || s > R) return;
        std::size_t k = static_cast<std::size_t>(s - left_edge);
        rec.theta_[k] = t;
        rec.origin_[k] = origin;
        if (s == R) {
            rec.stop = StopReason::ReachedR;
            done = true;
            return;
        }
        RngStream eta_rng = RngStream::derive(cfg.seed, {cfg.replica, 1, zigzag(s)});
        ParticleCount n = cfg.mu.sample(eta_rng);
        if (s == 0 && n.is_zero()) {
            n = ParticleCount::exact(1);
            rec.origin_boost = true;
        }
        rec.count_[k] = n;
        if (n.is_zero()) return;
        bool swarm = cfg.swarm_threshold > 0 && (!n.is_exact() || n.value() > cfg.swarm_threshold);
        if (swarm) {
            if (cfg.mode == LeftMode::TwoSided && lo > left_edge) rec.swarm_left_ignored = true;
            swarms.push_back({SwarmFront(n, RngStream::derive(cfg.seed, {cfg.replica, 3, zigzag(s)})), s, t});
            ++rec.swarms;
            push_swarm_step(swarms.size() - 1);
            return;
        }
        if (!n.is_exact() || rec.particles + static_cast<std::size_t>(n.value()) > cfg.particle_cap) {
            rec.stop = StopReason::ParticleCap;
            done = true;
            return;
        }
        for (std::int64_t j = 0; j < n.value(); ++j) {
            Particle p{s, s, RngStream::derive(cfg.seed, {cfg.replica, 2, zigzag(s), static_cast<std::uint64_t>(j)})};
            double next = t + p.rng.exponential();
            parts.push_back(p);
            queue.push({next, seq++, static_cast<std::int64_t>(parts.size() - 1)});
        }
        rec.particles += static_cast<std::size_t>(n.value());
    };

    auto visit = [&](int s, double t, int origin) {
        if (s == hi + 1) {
            hi = s;
            activate(s, t, origin);
        } else if (s == lo - 1) {
            lo = s;
            activate(s, t, origin);
        } else if (s > hi || s < lo) {
            throw std::logic_error("visited set is no longer an interval");
        }
    };

    activate(0, 0.0, 0);
    while (!done) {
        if (queue.empty()) {
            rec.stop = StopReason::Exhausted;
            break;
        }
        Event ev = queue.top();
        queue.pop();
        if (ev.t > cfg.time_cap) {
            rec.stop = StopReason::TimeCap;
            break;
        }
        if (ev.id >= 0) {
            Particle& p = parts[static_cast<std::size_t>(ev.id)];
            if (cfg.window && p.pos + static_cast<long>(*cfg.window) < hi) {
                ++rec.frozen;
                continue;
            }
            p.pos += p.rng.sign();
            ++rec.events;
            int pos = p.pos, origin = p.origin;
            double next = ev.t + p.rng.exponential();
            visit(pos, ev.t, origin);
            if (done) break;
            queue.push({next, seq++, ev.id});
        } else {
            std::size_t idx = static_cast<std::size_t>(-1 - ev.id);
            ++rec.front_steps;
            int s = swarms[idx].site + swarms[idx].front.level();
            visit(s, ev.t, swarms[idx].site);
            if (done) break;
            if (s < R) push_swarm_step(idx);
        }
    }
    rec.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    return rec;
}

std::string regime_label(double slope, double stability) {
    if (slope <= -0.5) return "explosive-like";
    if (slope >= -0.1 && stability >= 0.5 && stability <= 2.0) return "linear-like";
    return "indeterminate";
}

namespace {
double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double ls_slope(const std::vector<double>& y) {
    const double n = static_cast<double>(y.size());
    double mx = (n - 1.0) / 2.0, my = 0.0;
    for (double v : y) my += v;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        double dx = static_cast<double>(k) - mx;
        sxy += dx * (y[k] - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

// Increments below the resolution of theta_R carry no information; clamp them there.
double resolved(double d, double thetaR) {
    return std::max({d, thetaR * std::numeric_limits<double>::epsilon(), std::numeric_limits<double>::min()});
}
}  // namespace

RegimeReport regime_diagnostic(const std::vector<std::vector<double>>& thetas, std::size_t n0) {
    if (thetas.empty()) throw std::invalid_argument("regime_diagnostic needs at least one record");
    if (n0 < 1) throw std::invalid_argument("n0 must be >= 1");
    const std::size_t R = thetas.front().size() - 1;
    std::size_t levels = 0;
    while ((n0 << (levels + 1)) <= R) ++levels;
    if ((n0 << levels) != R) throw std::invalid_argument("R must equal n0 * 2^k");
    if (levels < 2) throw std::invalid_argument("need at least two dyadic levels");

    RegimeReport rep;
    rep.n0 = n0;
    rep.levels = levels;
    std::vector<std::vector<double>> deltas(levels);
    std::vector<double> speed_R, speed_half;
    for (const auto& th : thetas) {
        if (th.size() != R + 1) throw std::invalid_argument("records must share R");
        if (!std::isfinite(th[R])) {
            ++rep.excluded;
            continue;
        }
        std::vector<double> ly;
        for (std::size_t k = 0; k < levels; ++k) {
            double d = resolved(th[n0 << (k + 1)] - th[n0 << k], th[R]);
            deltas[k].push_back(d);
            ly.push_back(std::log(d));
        }
        double st = (th[R] / R) / (th[R / 2] / (R / 2.0));
        speed_R.push_back(th[R] / R);
        speed_half.push_back(th[R / 2] / (R / 2.0));
        double s = ls_slope(ly);
        rep.replica_slopes.push_back(s);
        rep.replica_labels.push_back(regime_label(s, st));
        ++rep.used;
    }
    if (rep.used == 0) {
        rep.label = "indeterminate";
        rep.note = "no record reached R";
        return rep;
    }
    std::vector<double> ly;
    for (auto& d : deltas) {
        rep.median_delta.push_back(median(d));
        ly.push_back(std::log(rep.median_delta.back()));
    }
    rep.slope = ls_slope(ly);
    rep.stability = median(speed_R) / median(speed_half);
    rep.label = regime_label(rep.slope, rep.stability);
    rep.agreement = static_cast<double>(std::count(rep.replica_labels.begin(), rep.replica_labels.end(), rep.label)) /
                    static_cast<double>(rep.used);
    return rep;
}

RegimeReport regime_diagnostic(const std::vector<ActivationRecord>& records, std::size_t n0) {
    std::vector<std::vector<double>> th;
    for (const auto& r : records) th.push_back(r.theta_right());
    return regime_diagnostic(th, n0);
}

IntervalSummary fast_slow_intervals(const ActivationRecord& rec, const SpeedFunction& speed) {
    const long R = static_cast<long>(rec.R);
    if (!rec.reached(R)) throw std::invalid_argument("fast_slow_intervals needs a record that reached R");
    IntervalSummary out;
    out.theta_R = rec.theta(R);
    long n = R;
    while (n != 0) {
        long o = rec.origin(n);
        if (o < 0) throw std::invalid_argument("activator origin " + std::to_string(o) + " is left of the origin");
        if (o >= n) throw std::logic_error("activator origin is not left of the activated site");
        ActivationInterval iv;
        iv.from = o;
        iv.to = n;
        iv.dt = rec.theta(n) - rec.theta(o);
        iv.budget = speed.segment(static_cast<std::size_t>(o), static_cast<std::size_t>(n - o));
        iv.fast = iv.dt <= iv.budget;
        if (iv.fast)
            ++out.fast;
        else {
            ++out.slow;
            out.slow_budget += iv.budget;
        }
        out.intervals.push_back(iv);
        n = o;
    }
    if (out.theta_R < out.slow_budget * (1.0 - 1e-12)) throw std::logic_error("slow budgets exceed theta_R");
    return out;
}

}  // namespace frog
