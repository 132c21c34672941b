#include "frog/conditions.hpp"

#include <cmath>
#include <stdexcept>

#include "frog/numerics.hpp"

namespace frog {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Converging: return "converging-diagnostic";
        case Verdict::Diverging: return "diverging-diagnostic";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

SeriesDiagnostic analyze_series(std::string name, std::size_t horizon, const std::function<double(std::size_t)>& term) {
    if (horizon < 1) throw std::invalid_argument("series horizon must be >= 1");
    SeriesDiagnostic d;
    d.name = std::move(name);
    d.horizon = horizon;
    CompensatedSum acc;
    std::size_t next_cp = 1;
    std::vector<double> at_cp;
    for (std::size_t k = 0; k < horizon; ++k) {
        double t = term(k);
        if (!std::isfinite(t) || t < 0.0)
            throw std::domain_error(d.name + ": term " + std::to_string(k) + " is not a finite non-negative number");
        acc.add(t);
        d.last_term = t;
        if (k + 1 == next_cp || k + 1 == horizon) {
            d.checkpoints.push_back({k + 1, acc.value(), t});
            if (k + 1 == next_cp) {
                at_cp.push_back(acc.value());
                next_cp *= 2;
            }
        }
    }
    d.partial_sum = acc.value();

    // at_cp[k] = S(2^k); blocks b_k = S(2^{k+1}) - S(2^k).
    std::vector<double> blocks;
    for (std::size_t k = 0; k + 1 < at_cp.size(); ++k) blocks.push_back(at_cp[k + 1] - at_cp[k]);
    for (std::size_t k = 0; k + 1 < blocks.size(); ++k)
        d.block_ratios.push_back(blocks[k] > 0.0 ? blocks[k + 1] / blocks[k] : 0.0);

    if (blocks.size() < 3) {
        d.numeric = Verdict::Inconclusive;
        d.note = "too few dyadic blocks";
    } else {
        double last = blocks.back();
        double rel = d.partial_sum > 0.0 ? last / d.partial_sum : 0.0;
        double q1 = d.block_ratios[d.block_ratios.size() - 1];
        double q2 = d.block_ratios[d.block_ratios.size() - 2];
        if (last == 0.0 || rel < 1e-12)
            d.numeric = Verdict::Converging;
        else if (q1 >= 0.9 && q2 >= 0.9)
            d.numeric = Verdict::Diverging;
        else if (q1 <= 0.75 && q2 <= 0.8)
            d.numeric = Verdict::Converging;
        else
            d.numeric = Verdict::Inconclusive;
    }
    d.verdict = d.numeric;
    return d;
}

SeriesDiagnostic check_speed_series(const SpeedFunction& speed, std::size_t horizon) {
    if (horizon > speed.horizon())
        throw HorizonError("speed series horizon " + std::to_string(horizon) + " exceeds speed horizon " +
                           std::to_string(speed.horizon()));
    auto d = analyze_series("sum 1/A(z)", horizon, [&](std::size_t k) { return 1.0 / speed.A(k + 1); });
    d.partial_sum = speed.prefix(horizon);
    switch (speed.family()) {
        case SpeedFamily::Constant:
        case SpeedFamily::LogIncrement: d.analytic = Verdict::Diverging; break;
        case SpeedFamily::Power:
            d.analytic = speed.parameter() > 1.0 ? Verdict::Converging : Verdict::Diverging;
            break;
        case SpeedFamily::Table: break;
    }
    if (d.analytic) d.verdict = *d.analytic;
    return d;
}

ConditionReport check_nonexplosion(const InitialDistribution& mu, const SpeedFunction& speed, std::size_t horizon) {
    ConditionReport rep;
    rep.condition = "non-explosion";
    rep.horizon = horizon;
    SpeedFunction norm = normalize_linear_floor(speed);
    if (horizon > norm.horizon())
        throw HorizonError("non-explosion horizon " + std::to_string(horizon) + " exceeds speed horizon " +
                           std::to_string(norm.horizon()));
    auto speed_diag = check_speed_series(speed, horizon);
    auto tails = analyze_series("sum mu([a_i, inf))", horizon,
                                [&](std::size_t i) { return mu.tail_at_log(norm.log_a(i)); });
    rep.series = {speed_diag, tails};
    if (speed_diag.verdict == Verdict::Diverging && tails.verdict == Verdict::Converging)
        rep.label = "non-explosion-consistent";
    else if (tails.verdict == Verdict::Diverging)
        rep.label = "non-explosion-condition-fails";
    else
        rep.label = "inconclusive";
    rep.notes.push_back("speed normalized to max(A(z), z) for the tail series");
    rep.notes.push_back("diagnostic up to horizon " + std::to_string(horizon) + ", not a proof");
    return rep;
}

ShiftResult shift_speed(const InitialDistribution& mu, const SpeedFunction& speed) {
    for (std::size_t z = 1; z <= speed.horizon(); ++z) {
        double A = speed.A(z);
        if (A > 1.0 && 1.0 - mu.tail_above(A) > 0.0) return {speed.shifted(z - 1), z};
    }
    throw std::domain_error("shift_speed: no z <= " + std::to_string(speed.horizon()) +
                            " with A(z) > 1 and mu([0, A(z)]) > 0");
}

ExplosionTerms explosion_series(const InitialDistribution& mu, const SpeedFunction& shifted, double rho,
                                std::size_t horizon) {
    if (!(rho > 1.0)) throw std::invalid_argument("rho must be > 1");
    if (horizon > shifted.horizon())
        throw HorizonError("explosion horizon " + std::to_string(horizon) + " exceeds speed horizon " +
                           std::to_string(shifted.horizon()));
    ExplosionTerms out;
    out.product.reserve(horizon);
    out.surrogate.reserve(horizon);
    for (std::size_t m = 1; m <= horizon; ++m) {
        const double lnA = std::log(shifted.A(m));
        CompensatedSum logprod, tails;
        bool zero = false;
        for (std::size_t i = 1; i <= m; ++i) {
            double t = mu.tail_above_at_log(rho * static_cast<double>(i) * lnA);
            if (t >= 1.0) {
                zero = true;
            } else {
                logprod.add(std::log1p(-t));
            }
            tails.add(t);
            // Tails are non-increasing in i; stop once the rest cannot matter.
            if (t == 0.0) break;
            if (t * static_cast<double>(m - i) < 1e-17 * tails.value()) break;
        }
        out.product.push_back(zero ? 0.0 : std::exp(logprod.value()));
        out.surrogate.push_back(std::exp(-tails.value()));
    }
    return out;
}

ConditionReport check_explosion(const InitialDistribution& mu, const SpeedFunction& speed, double rho,
                                std::size_t horizon) {
    if (!(rho > 1.0)) throw std::invalid_argument("check_explosion: rho must be > 1 (got " + std::to_string(rho) + ")");
    ConditionReport rep;
    rep.condition = "explosion";
    rep.horizon = horizon;
    ShiftResult sh = shift_speed(mu, speed);
    rep.notes.push_back("shifted speed by z0 - 1 = " + std::to_string(sh.z0 - 1));
    auto terms = explosion_series(mu, sh.speed, rho, horizon);
    auto speed_diag = check_speed_series(sh.speed, std::min(horizon, sh.speed.horizon()));
    auto prod = analyze_series("sum_m prod_i mu([0, A(m)^(rho i)])", horizon,
                               [&](std::size_t k) { return terms.product[k]; });
    auto surr = analyze_series("sum_m exp(-sum_i mu((A(m)^(rho i), inf)))", horizon,
                               [&](std::size_t k) { return terms.surrogate[k]; });
    rep.series = {speed_diag, prod, surr};
    if (speed_diag.verdict == Verdict::Converging && prod.verdict == Verdict::Converging)
        rep.label = "explosion-consistent";
    else if (prod.verdict == Verdict::Diverging)
        rep.label = "explosion-condition-fails";
    else
        rep.label = "inconclusive";
    rep.notes.push_back("diagnostic up to horizon " + std::to_string(horizon) + ", not a proof");
    return rep;
}

}  // namespace frog
