#include "frog/numerics.hpp"

#include <algorithm>
#include <stdexcept>

namespace frog {

ExtLog ExtLog::of(double v) {
    if (std::isnan(v)) throw std::invalid_argument("ExtLog: NaN");
    if (v == kNegInf) return neg_inf();
    return ExtLog(false, v);
}

void CompensatedSum::add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

double log_sum_exp(const std::vector<double>& xs) {
    double m = kNegInf;
    for (double x : xs) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

double log1m_exp(double x) {
    if (x > 0.0) throw std::domain_error("log1m_exp: positive argument");
    if (x > -0.6931471805599453) return std::log(-std::expm1(x));
    return std::log1p(-std::exp(x));
}

double log_sub_exp(double a, double b) {
    if (b == kNegInf) return a;
    if (b > a) throw std::domain_error("log_sub_exp: b > a");
    return a + log1m_exp(b - a);
}

double log_factorial(double n) { return std::lgamma(n + 1.0); }

namespace {

// Series for the lower function: log of sum_{n>=0} x^n / ((a+1)...(a+n)).
double log_p_series(double a, double x) {
    double term = 1.0, sum = 1.0;
    for (int n = 1; n < 100000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return -x + a * std::log(x) - std::lgamma(a + 1.0) + std::log(sum);
}

// Lentz continued fraction for the upper function.
double log_q_fraction(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return -x + a * std::log(x) - std::lgamma(a) + std::log(h);
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw std::domain_error("incomplete gamma: need a > 0, x >= 0");
}

}  // namespace

double log_gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return kNegInf;
    if (x < a + 1.0) return log_p_series(a, x);
    return log1m_exp(log_q_fraction(a, x));
}

double log_gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return log1m_exp(log_p_series(a, x));
    return log_q_fraction(a, x);
}

double gamma_p(double a, double x) { return std::exp(log_gamma_p(a, x)); }
double gamma_q(double a, double x) { return std::exp(log_gamma_q(a, x)); }

double log_poisson_tail(double lambda, long long n) {
    if (lambda < 0.0) throw std::domain_error("poisson_tail: negative mean");
    if (n <= 0) return 0.0;
    if (lambda == 0.0) return kNegInf;
    return log_gamma_p(static_cast<double>(n), lambda);
}

double poisson_tail(double lambda, long long n) { return std::exp(log_poisson_tail(lambda, n)); }

double log_poisson_pmf(double lambda, long long k) {
    if (k < 0) return kNegInf;
    if (lambda == 0.0) return k == 0 ? 0.0 : kNegInf;
    return -lambda + k * std::log(lambda) - log_factorial(static_cast<double>(k));
}

double snapped_ceil(double x) {
    double r = std::round(x);
    if (std::fabs(x - r) <= 1e-9 * std::max(1.0, std::fabs(x))) return r;
    return std::ceil(x);
}

double snapped_floor(double x) {
    double r = std::round(x);
    if (std::fabs(x - r) <= 1e-9 * std::max(1.0, std::fabs(x))) return r;
    return std::floor(x);
}

WalkKernel::WalkKernel(double log_s, int kmax) : log_s_(log_s), kmax_(kmax) {
    if (kmax < 1) throw std::invalid_argument("WalkKernel: kmax must be >= 1");
    const double s = std::exp(log_s);
    if (s > 1e10) throw std::domain_error("WalkKernel: time too large");
    const int K = kmax + 40 + static_cast<int>(std::ceil(12.0 * std::sqrt(s)));
    // Ratios r_k = I_{k+1}(s) / I_k(s) by backward recurrence, started from a
    // bound that is accurate for k well above s.
    std::vector<double> log_r(K + 1);
    double kk = K + 1.0;
    double r = s / (kk + std::sqrt(kk * kk + s * s));
    log_r[K] = std::log(r);
    if (s == 0.0) log_r[K] = log_s - std::log(2.0 * kk);
    for (int k = K - 1; k >= 0; --k) {
        double sr = std::exp(log_s + log_r[k + 1]);
        log_r[k] = log_s - std::log(2.0 * (k + 1) + sr);
    }
    // log(I_k / I_0) and normalization sum_{k in Z} p(k) = 1.
    std::vector<double> rel(K + 1);
    rel[0] = 0.0;
    for (int k = 1; k <= K; ++k) rel[k] = rel[k - 1] + log_r[k - 1];
    CompensatedSum tail;
    for (int k = K; k >= 1; --k) tail.add(std::exp(rel[k]));
    double log_p0 = -std::log1p(2.0 * tail.value());

    log_p_.resize(K + 1);
    for (int k = 0; k <= K; ++k) log_p_[k] = log_p0 + rel[k];

    log_tail_.assign(K + 2, kNegInf);
    for (int k = K; k >= 0; --k) log_tail_[k] = log_add_exp(log_tail_[k + 1], log_p_[k]);

    // central_[h] = P{-h <= S <= h-1} = p(0) + 2 sum_{k=1}^{h-1} p(k) + p(h).
    central_.assign(K + 1, 0.0);
    CompensatedSum acc;
    acc.add(std::exp(log_p_[0]));
    for (int h = 1; h <= K; ++h) {
        central_[h] = acc.value() + std::exp(log_p_[h]);
        acc.add(2.0 * std::exp(log_p_[h]));
    }
    kmax_ = K;
}

double WalkKernel::log_pmf(int k) const {
    k = std::abs(k);
    if (k > kmax_) return kNegInf;
    return log_p_[k];
}

double WalkKernel::log_upper_tail(int h) const {
    if (h < 0) throw std::invalid_argument("log_upper_tail: h must be >= 0");
    if (h > kmax_) return kNegInf;
    return log_tail_[h];
}

double WalkKernel::log_passed(int h) const {
    if (h < 1) throw std::invalid_argument("log_passed: h must be >= 1");
    if (h > kmax_) return kNegInf;
    return log_add_exp(log_tail_[h], log_tail_[h + 1]);
}

double WalkKernel::log_not_passed(int h) const {
    if (h < 1) throw std::invalid_argument("log_not_passed: h must be >= 1");
    double lp = log_passed(h);
    if (lp < std::log(0.5)) return log1m_exp(lp);
    if (h > kmax_) return 0.0;
    return std::log(central_[h]);
}

}  // namespace frog
