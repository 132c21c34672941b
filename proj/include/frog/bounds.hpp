#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "frog/distributions.hpp"
#include "frog/speed.hpp"

namespace frog {

enum class BoundDirection { Lower, Upper };

struct BoundCheck {
    std::string id;
    std::string params;
    BoundDirection direction = BoundDirection::Lower;
    double bound = 0.0;
    double comparison = 0.0;
    double comparison_stderr = 0.0;  // 0 for exact comparisons
    bool satisfied = false;
};

// satisfied = bound <= comparison + 3 stderr (Lower) or comparison <= bound + 3 stderr (Upper).
// With replicas > 0 the comparison is a binomial proportion and stderr is at
// least the one implied by the bound itself, sqrt(b(1-b)/replicas).
BoundCheck make_check(std::string id, std::string params, BoundDirection dir, double bound, double comparison,
                      double comparison_stderr, std::size_t replicas = 0);

struct ErlangBound {
    double bound;  // e^{-b} b^n / n!
    double exact;  // P{tau_n <= b}
};
ErlangBound erlang_lower(int n, double b);

// Single-walk lower bound for reaching beyond x + n from x:
// e^{(1 - 1/A)(n+1)} / (A^{n+1} e 2^{n+1} sqrt(n+1)), A = A(x+n+1). Requires A > 1 there.
double log_reach_lower_bound(int n, std::size_t x, const SpeedFunction& speed);
double reach_lower_bound(int n, std::size_t x, const SpeedFunction& speed);

struct E2Value {
    double log_e2;
    double log_floor;
    bool gate;  // 1/A(m+1) <= 2 / (e sqrt(m+1))
    double e2() const;
    double floor() const;
};
E2Value e2(int i, std::size_t m, const SpeedFunction& speed);

struct RLower {
    double value;
    double remainder;  // mass of mu beyond the summed range
    std::size_t terms;
};
// 1 - E_mu[(1 - E2(i,m))^eta], summed to the 1 - 1e-12 quantile of mu.
RLower r_lower(int i, std::size_t m, const InitialDistribution& mu, const SpeedFunction& speed);

struct ChainBound {
    double value = 0.0;
    std::size_t terms = 0;
    double last_term = 0.0;
    bool converged = false;
    bool inconclusive = false;  // term ratios stayed >= 1
    bool horizon_hit = false;
    // e^{-a} a^j / j! with a = segment(i, j); the unspecified constant is omitted.
    double c_form = 0.0;
};
// sum_{n >= j} P{Poisson(segment(i, n)) >= n}, up to max_terms terms.
ChainBound reach_upper_chain(std::size_t i, int j, const SpeedFunction& speed, std::size_t max_terms = 100000);

class RatioViolation : public std::domain_error {
public:
    RatioViolation(std::size_t index, double ratio, double r);
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

struct TailConstant {
    double witnessed;  // sup_m (sum_{i>=m} alpha_i) / alpha_m, tail extrapolated geometrically
    double a_priori;   // the bound implied by the ratio condition
    std::size_t argmax;
};
// alpha[0..N-1] > 0 with alpha_{i+1}/alpha_i <= r < 1 for i >= n.
TailConstant geometric_tail_constant(const std::vector<double>& alpha, double r, std::size_t n);

}  // namespace frog
