#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace frog {

// Natural-log magnitude that may be -infinity (the log of zero).
class ExtLog {
public:
    static ExtLog neg_inf() { return ExtLog(true, 0.0); }
    static ExtLog of(double v);

    bool is_neg_inf() const { return neg_inf_; }
    // -infinity for the sentinel.
    double value() const { return neg_inf_ ? -std::numeric_limits<double>::infinity() : v_; }

private:
    ExtLog(bool neg_inf, double v) : neg_inf_(neg_inf), v_(v) {}
    bool neg_inf_;
    double v_;
};

// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add_exp(double a, double b);
double log_sum_exp(const std::vector<double>& xs);
// log(exp(a) - exp(b)) for a >= b.
double log_sub_exp(double a, double b);
// log(1 - exp(x)) for x <= 0.
double log1m_exp(double x);

double log_factorial(double n);

// Regularized incomplete gamma functions in log space, a > 0, x >= 0.
double log_gamma_p(double a, double x);
double log_gamma_q(double a, double x);
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// P{Poisson(lambda) >= n}.
double poisson_tail(double lambda, long long n);
double log_poisson_tail(double lambda, long long n);
double log_poisson_pmf(double lambda, long long k);

// Ceil/floor that snap values within 1e-9 relative of an integer onto it.
double snapped_ceil(double x);
double snapped_floor(double x);

// Transition law of the continuous-time simple symmetric walk (rate 1, +/-1 steps).
// p_s(k) = e^{-s} I_k(s), evaluated in log space from log s so that s may be far
// below the double range.
class WalkKernel {
public:
    // Covers displacements 0..kmax (the law is symmetric).
    WalkKernel(double log_s, int kmax);

    double log_s() const { return log_s_; }
    int kmax() const { return kmax_; }
    double log_pmf(int k) const;
    // log P{S_s >= h}, h >= 0.
    double log_upper_tail(int h) const;
    // log P{max_{u<=s} S_u >= h}, h >= 1.
    double log_passed(int h) const;
    // log P{max_{u<=s} S_u < h}, h >= 1.
    double log_not_passed(int h) const;

private:
    double log_s_;
    int kmax_;
    std::vector<double> log_p_;
    std::vector<double> log_tail_;
    std::vector<double> central_;
};

}  // namespace frog
