#include "frog/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "frog/numerics.hpp"

namespace frog {

BoundCheck make_check(std::string id, std::string params, BoundDirection dir, double bound, double comparison,
                      double comparison_stderr, std::size_t replicas) {
    BoundCheck c;
    c.id = std::move(id);
    c.params = std::move(params);
    c.direction = dir;
    c.bound = bound;
    c.comparison = comparison;
    c.comparison_stderr = comparison_stderr;
    double se = comparison_stderr;
    if (replicas > 0 && bound > 0.0 && bound < 1.0)
        se = std::max(se, std::sqrt(bound * (1.0 - bound) / static_cast<double>(replicas)));
    const double slack = 3.0 * se;
    c.satisfied = dir == BoundDirection::Lower ? bound <= comparison + slack : comparison <= bound + slack;
    return c;
}

ErlangBound erlang_lower(int n, double b) {
    if (n < 1) throw std::invalid_argument("erlang_lower: n must be >= 1");
    if (!(b > 0.0)) throw std::invalid_argument("erlang_lower: b must be > 0");
    double lb = -b + n * std::log(b) - log_factorial(n);
    return {std::exp(lb), gamma_p(n, b)};
}

namespace {
double speed_above_one(const SpeedFunction& speed, std::size_t z, const char* what) {
    double A = speed.A(z);
    if (!(A > 1.0))
        throw std::domain_error(std::string(what) + ": A(" + std::to_string(z) + ") = " + std::to_string(A) +
                                " <= 1; shift the speed first (shift_speed)");
    return A;
}
}  // namespace

double log_reach_lower_bound(int n, std::size_t x, const SpeedFunction& speed) {
    if (n < 0) throw std::invalid_argument("reach_lower_bound: n must be >= 0");
    double A = speed_above_one(speed, x + n + 1, "reach_lower_bound");
    double k = n + 1.0;
    return (1.0 - 1.0 / A) * k - k * std::log(A) - 1.0 - k * std::log(2.0) - 0.5 * std::log(k);
}

double reach_lower_bound(int n, std::size_t x, const SpeedFunction& speed) {
    return std::exp(log_reach_lower_bound(n, x, speed));
}

double E2Value::e2() const { return std::exp(log_e2); }
double E2Value::floor() const { return std::exp(log_floor); }

E2Value e2(int i, std::size_t m, const SpeedFunction& speed) {
    if (i < 0 || static_cast<std::size_t>(i) > m) throw std::invalid_argument("e2 needs 0 <= i <= m");
    double A = speed.A(m + 1);
    double k = i + 1.0;
    E2Value v;
    v.log_e2 = -1.0 - 0.5 * std::log(k) + k * (1.0 - 1.0 / A - std::log(2.0 * A));
    v.log_floor = -(i + 2.0) * std::log(2.0 * A);
    v.gate = 1.0 / A <= 2.0 / (std::exp(1.0) * std::sqrt(m + 1.0));
    return v;
}

RLower r_lower(int i, std::size_t m, const InitialDistribution& mu, const SpeedFunction& speed) {
    const double le = e2(i, m, speed).log_e2;
    const double l1m = std::log1p(-std::exp(le));
    constexpr std::size_t kMaxTerms = 1000000;
    CompensatedSum acc, mass;
    std::size_t k = 0;
    for (; k < kMaxTerms; ++k) {
        double p = mu.pmf(static_cast<std::int64_t>(k));
        mass.add(p);
        if (k > 0 && p > 0.0) acc.add(p * -std::expm1(static_cast<double>(k) * l1m));
        if (mass.value() >= 1.0 - 1e-12) break;
    }
    double rem = mu.tail(static_cast<double>(k + 1));
    return {acc.value(), rem, k + 1};
}

ChainBound reach_upper_chain(std::size_t i, int j, const SpeedFunction& speed, std::size_t max_terms) {
    if (j < 1) throw std::invalid_argument("reach_upper_chain: j must be >= 1");
    ChainBound out;
    double a = speed.segment(i, static_cast<std::size_t>(j));
    out.c_form = a > 0.0 ? std::exp(-a + j * std::log(a) - log_factorial(j)) : 0.0;
    CompensatedSum acc;
    double prev = -1.0;
    std::size_t rising = 0;
    for (std::size_t t = 0; t < max_terms; ++t) {
        std::size_t n = static_cast<std::size_t>(j) + t;
        if (i + n > speed.horizon()) {
            out.horizon_hit = true;
            break;
        }
        double lam = speed.segment(i, n);
        double term = lam > 0.0 ? std::exp(log_poisson_tail(lam, static_cast<long long>(n))) : 0.0;
        acc.add(term);
        out.terms = t + 1;
        out.last_term = term;
        if (prev >= 0.0) rising = term >= prev && term > 0.0 ? rising + 1 : 0;
        if (rising >= 50) {
            out.inconclusive = true;
            break;
        }
        if (term < 1e-15 && (prev < 0.0 || term <= prev)) {
            out.converged = true;
            break;
        }
        prev = term;
    }
    out.value = acc.value();
    if (!out.converged && !out.inconclusive) out.inconclusive = true;
    return out;
}

RatioViolation::RatioViolation(std::size_t index, double ratio, double r)
    : std::domain_error("ratio alpha_" + std::to_string(index + 1) + "/alpha_" + std::to_string(index) + " = " +
                        std::to_string(ratio) + " exceeds r = " + std::to_string(r)),
      index_(index) {}

TailConstant geometric_tail_constant(const std::vector<double>& alpha, double r, std::size_t n) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("geometric_tail_constant: need 0 < r < 1");
    const std::size_t N = alpha.size();
    if (N == 0 || n >= N) throw std::invalid_argument("geometric_tail_constant: need n < alpha.size()");
    for (std::size_t i = 0; i < N; ++i)
        if (!(alpha[i] > 0.0) || !std::isfinite(alpha[i]))
            throw std::domain_error("alpha_" + std::to_string(i) + " must be positive and finite");
    for (std::size_t i = n; i + 1 < N; ++i) {
        double q = alpha[i + 1] / alpha[i];
        if (q > r) throw RatioViolation(i, q, r);
    }
    // Suffix sums, with the unseen tail bounded by alpha_{N-1} r / (1 - r).
    std::vector<double> suffix(N + 1, 0.0);
    suffix[N] = alpha[N - 1] * r / (1.0 - r);
    for (std::size_t i = N; i-- > 0;) suffix[i] = suffix[i + 1] + alpha[i];

    TailConstant c{0.0, 0.0, 0};
    for (std::size_t m = 0; m < N; ++m) {
        double v = suffix[m] / alpha[m];
        if (v > c.witnessed) {
            c.witnessed = v;
            c.argmax = m;
        }
        double bound;
        if (m >= n) {
            bound = 1.0 / (1.0 - r);
        } else {
            double peak = 0.0;
            for (std::size_t i = m; i <= n; ++i) peak = std::max(peak, alpha[i] / alpha[m]);
            bound = static_cast<double>(n - m) * peak + peak / (1.0 - r);
        }
        c.a_priori = std::max(c.a_priori, bound);
    }
    if (c.witnessed > c.a_priori * (1.0 + 1e-12))
        throw std::logic_error("geometric_tail_constant exceeded its a-priori bound");
    return c;
}

}  // namespace frog
