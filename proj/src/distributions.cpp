#include "frog/distributions.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace frog {

namespace {
const double kLogExactLimit = std::log(static_cast<double>(ParticleCount::kExactLimit));
}

ParticleCount ParticleCount::exact(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("negative particle count");
    if (n >= kExactLimit) return from_log(std::log(static_cast<double>(n)));
    ParticleCount c;
    c.exact_ = true;
    c.n_ = n;
    return c;
}

ParticleCount ParticleCount::from_log(double log_n) {
    if (std::isnan(log_n)) throw std::invalid_argument("NaN particle count");
    if (log_n == kNegInf) return exact(0);
    if (log_n < kLogExactLimit - 1e-9) return exact(static_cast<std::int64_t>(std::llround(std::exp(log_n))));
    ParticleCount c;
    c.exact_ = false;
    c.log_n_ = log_n;
    return c;
}

std::int64_t ParticleCount::value() const {
    if (!exact_) throw std::overflow_error("particle count e^" + std::to_string(log_n_) + " is not exact");
    return n_;
}

double ParticleCount::log() const {
    if (exact_) return n_ == 0 ? kNegInf : std::log(static_cast<double>(n_));
    return log_n_;
}

double ParticleCount::approx() const { return exact_ ? static_cast<double>(n_) : std::exp(log_n_); }

std::string ParticleCount::str() const {
    if (exact_) return std::to_string(n_);
    std::ostringstream os;
    os.precision(17);
    os << "e^" << log_n_;
    return os.str();
}

bool ParticleCount::operator==(const ParticleCount& o) const {
    if (exact_ != o.exact_) return false;
    return exact_ ? n_ == o.n_ : log_n_ == o.log_n_;
}

ParticleCount ParticleCount::plus(const ParticleCount& o) const {
    if (exact_ && o.exact_ && n_ < kExactLimit - o.n_) return exact(n_ + o.n_);
    return from_log(log_add_exp(log(), o.log()));
}

double ylogy_root(double l) {
    if (!(l > 0.0)) throw std::domain_error("ylogy_root: need l > 0");
    double lo = 1.0, hi = std::max(std::exp(1.0), l);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid * std::log(mid) < l)
            lo = mid;
        else
            hi = mid;
    }
    double y = 0.5 * (lo + hi);
    for (int it = 0; it < 2; ++it) {
        double step = (y * std::log(y) - l) / (std::log(y) + 1.0);
        double next = y - step;
        if (next > lo * (1 - 1e-12) && next < hi * (1 + 1e-12)) y = next;
    }
    return y;
}

InitialDistribution InitialDistribution::dirac(std::int64_t k0) {
    if (k0 < 0) throw std::invalid_argument("dirac: k0 must be >= 0");
    return InitialDistribution(DistFamily::Dirac, static_cast<double>(k0));
}

InitialDistribution InitialDistribution::poisson(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("poisson: lambda must be >= 0");
    return InitialDistribution(DistFamily::Poisson, lambda);
}

InitialDistribution InitialDistribution::geometric(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("geometric: p must be in (0,1]");
    return InitialDistribution(DistFamily::Geometric, p);
}

InitialDistribution InitialDistribution::log_pareto(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("logpareto: a must be > 0");
    return InitialDistribution(DistFamily::LogPareto, a);
}

InitialDistribution InitialDistribution::ylogy(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) throw std::invalid_argument("ylogy: rate must be > 0");
    return InitialDistribution(DistFamily::YLogY, rate);
}

InitialDistribution InitialDistribution::table(std::vector<double> pmf) {
    if (pmf.empty()) throw std::invalid_argument("table distribution needs at least one entry");
    double total = 0.0;
    for (double p : pmf) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("table distribution: bad probability");
        total += p;
    }
    if (!(total > 0.0)) throw std::invalid_argument("table distribution: zero mass");
    InitialDistribution d(DistFamily::Table, 0.0);
    for (double& p : pmf) p /= total;
    d.table_tail_.assign(pmf.size() + 1, 0.0);
    for (std::size_t k = pmf.size(); k-- > 0;) d.table_tail_[k] = d.table_tail_[k + 1] + pmf[k];
    d.pmf_ = std::move(pmf);
    return d;
}

std::string InitialDistribution::describe() const {
    std::ostringstream os;
    switch (family_) {
        case DistFamily::Dirac: os << "dirac(" << param_ << ")"; break;
        case DistFamily::Poisson: os << "poisson(" << param_ << ")"; break;
        case DistFamily::Geometric: os << "geometric(" << param_ << ")"; break;
        case DistFamily::LogPareto: os << "logpareto(" << param_ << ")"; break;
        case DistFamily::YLogY: os << "ylogy(" << param_ << ")"; break;
        case DistFamily::Table: os << "table(" << pmf_.size() << ")"; break;
    }
    return os.str();
}

double InitialDistribution::latent_tail_at_log(double l) const {
    if (family_ == DistFamily::LogPareto) return l <= 1.0 ? 1.0 : std::pow(l, -param_);
    if (l <= 0.0) return 1.0;
    return std::exp(-param_ * ylogy_root(l));
}

double InitialDistribution::tail(double x) const {
    if (std::isnan(x)) throw std::invalid_argument("tail: NaN threshold");
    if (x <= 0.0) return 1.0;
    switch (family_) {
        case DistFamily::Dirac: return snapped_ceil(x) <= param_ ? 1.0 : 0.0;
        case DistFamily::Poisson: {
            double n = snapped_ceil(x);
            if (n > 9e18) return 0.0;
            return poisson_tail(param_, static_cast<long long>(n));
        }
        case DistFamily::Geometric: {
            double n = snapped_ceil(x);
            if (param_ == 1.0) return 0.0;
            return std::exp(n * std::log1p(-param_));
        }
        case DistFamily::LogPareto:
        case DistFamily::YLogY: {
            double n = snapped_ceil(x);
            return n <= 0.0 ? 1.0 : latent_tail_at_log(std::log(n));
        }
        case DistFamily::Table: {
            double n = snapped_ceil(x);
            if (n >= static_cast<double>(pmf_.size())) return 0.0;
            return table_tail_[static_cast<std::size_t>(n)];
        }
    }
    return 0.0;
}

double InitialDistribution::tail_at_log(double l) const {
    if (std::isnan(l)) throw std::invalid_argument("tail_at_log: NaN threshold");
    if (l == kNegInf) return 1.0;
    if (family_ == DistFamily::LogPareto || family_ == DistFamily::YLogY) return latent_tail_at_log(l);
    if (l > 700.0) return 0.0;
    return tail(std::exp(l));
}

double InitialDistribution::tail_at_log(const ExtLog& l) const { return tail_at_log(l.value()); }

double InitialDistribution::tail_above(double x) const {
    if (std::isnan(x)) throw std::invalid_argument("tail_above: NaN threshold");
    if (x < 0.0) return 1.0;
    double n = snapped_floor(x) + 1.0;
    return tail(n);
}

double InitialDistribution::tail_above_at_log(double l) const {
    if (std::isnan(l)) throw std::invalid_argument("tail_above_at_log: NaN threshold");
    if (family_ == DistFamily::LogPareto || family_ == DistFamily::YLogY)
        return l == kNegInf ? 1.0 : latent_tail_at_log(l);
    if (l == kNegInf) return tail_above(0.0);
    if (l > 700.0) return 0.0;
    return tail_above(std::exp(l));
}

double InitialDistribution::pmf(std::int64_t k) const {
    if (k < 0) return 0.0;
    switch (family_) {
        case DistFamily::Dirac: return static_cast<double>(k) == param_ ? 1.0 : 0.0;
        case DistFamily::Poisson: return std::exp(log_poisson_pmf(param_, k));
        case DistFamily::Geometric:
            if (param_ == 1.0) return k == 0 ? 1.0 : 0.0;
            return param_ * std::exp(static_cast<double>(k) * std::log1p(-param_));
        case DistFamily::LogPareto:
        case DistFamily::YLogY:
            if (k == 0) return 0.0;
            return tail(static_cast<double>(k)) - tail(static_cast<double>(k + 1));
        case DistFamily::Table: return static_cast<std::size_t>(k) < pmf_.size() ? pmf_[k] : 0.0;
    }
    return 0.0;
}

double InitialDistribution::mean() const {
    switch (family_) {
        case DistFamily::Dirac:
        case DistFamily::Poisson: return param_;
        case DistFamily::Geometric: return (1.0 - param_) / param_;
        case DistFamily::LogPareto:
        case DistFamily::YLogY: return std::numeric_limits<double>::infinity();
        case DistFamily::Table: {
            double m = 0.0;
            for (std::size_t k = 0; k < pmf_.size(); ++k) m += static_cast<double>(k) * pmf_[k];
            return m;
        }
    }
    return 0.0;
}

namespace {
ParticleCount floor_exp(double x) {
    if (x < 42.0) return ParticleCount::exact(static_cast<std::int64_t>(std::floor(std::exp(x))));
    return ParticleCount::from_log(x);
}
}  // namespace

ParticleCount InitialDistribution::sample(RngStream& rng) const {
    switch (family_) {
        case DistFamily::Dirac: return ParticleCount::exact(static_cast<std::int64_t>(param_));
        case DistFamily::Poisson: {
            if (param_ == 0.0) return ParticleCount::exact(0);
            std::poisson_distribution<long long> d(param_);
            return ParticleCount::exact(d(rng));
        }
        case DistFamily::Geometric: {
            if (param_ == 1.0) return ParticleCount::exact(0);
            std::geometric_distribution<long long> d(param_);
            return ParticleCount::exact(d(rng));
        }
        case DistFamily::LogPareto: {
            double u = rng.uniform_pos();
            return floor_exp(std::pow(u, -1.0 / param_));
        }
        case DistFamily::YLogY: {
            double y = -std::log(rng.uniform_pos()) / param_;
            return floor_exp(y > 1.0 ? y * std::log(y) : 0.0);
        }
        case DistFamily::Table: {
            double u = rng.uniform();
            double acc = 0.0;
            for (std::size_t k = 0; k < pmf_.size(); ++k) {
                acc += pmf_[k];
                if (u < acc) return ParticleCount::exact(static_cast<std::int64_t>(k));
            }
            for (std::size_t k = pmf_.size(); k-- > 0;)
                if (pmf_[k] > 0.0) return ParticleCount::exact(static_cast<std::int64_t>(k));
            return ParticleCount::exact(0);
        }
    }
    return ParticleCount::exact(0);
}

}  // namespace frog
