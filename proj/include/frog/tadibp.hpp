#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frog/distributions.hpp"
#include "frog/random.hpp"
#include "frog/speed.hpp"
#include "frog/walks.hpp"

namespace frog {

enum class PsiProvenance { Explicit, Sampled };

// Grain lengths psi_0..psi_H of totally asymmetric Boolean percolation on Z_+;
// the grain at x covers [x, x + psi_x].
struct PsiField {
    std::vector<int> psi;
    // saturated[x]: psi_x was capped (the true reach is at least psi_x).
    std::vector<bool> saturated;
    PsiProvenance provenance = PsiProvenance::Explicit;

    PsiField() = default;
    explicit PsiField(std::vector<int> values);

    std::size_t horizon() const { return psi.empty() ? 0 : psi.size() - 1; }
    std::size_t saturated_count() const;
};

// Y_0 = psi_0, Y_m = max(psi_m, Y_{m-1} - 1).
std::vector<int> y_sequence(const PsiField& f);

// Site 0 is wet by convention; m >= 1 is wet iff Y_{m-1} >= 1.
std::vector<bool> wet_mask(const PsiField& f);
bool is_wet(const PsiField& f, std::size_t m);

// Y_m > 0 for every m in [x, H-1]: the horizon-censored version of x -> infinity.
bool connected_to_horizon(const PsiField& f, std::size_t x);

// Exhaustive chain search on the literal definition. Small fields only (H <= 64).
bool chain_connected(const PsiField& f, std::size_t x, std::size_t y);

class PercolationRefused : public std::runtime_error {
public:
    PercolationRefused(std::size_t x, std::size_t first_gap);
    std::size_t first_gap() const { return gap_; }

private:
    std::size_t gap_;
};

// Rightmost-argmax covering chain x_0 < x_1 < ... of [x, H]. Throws
// PercolationRefused naming the first m >= x with Y_m = 0 when x is not
// connected to the horizon.
std::vector<std::size_t> percolation_sequence(const PsiField& f, std::size_t x);

// prod (1 - r_i) via summed log1p.
double dry_probability(const std::vector<double>& r);

// Partial sums over m = 0..M-1 of prod_{i=0}^m (1 - r(m-i, i)), where
// r(x, j) = P{psi_x > j}.
std::vector<double> bc_partial_sums(std::size_t M, const std::function<double(std::size_t, int)>& r);

// Independent psi_x = reach of site x with eta(x) ~ mu; site x uses rng.child(x).
PsiField sample_psi_field(const SpeedFunction& speed, const InitialDistribution& mu, std::size_t H,
                          const RngStream& rng, const ReachOptions& opts = {});

// One integer per line, site 0 first.
PsiField read_psi_field(const std::string& path);
void write_psi_field(const PsiField& f, const std::string& path);

}  // namespace frog
