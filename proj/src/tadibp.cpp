#include "frog/tadibp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace frog {

PsiField::PsiField(std::vector<int> values) : psi(std::move(values)), saturated(psi.size(), false) {
    if (psi.empty()) throw std::invalid_argument("psi field needs at least site 0");
    for (std::size_t x = 0; x < psi.size(); ++x)
        if (psi[x] < 0) throw std::invalid_argument("psi_" + std::to_string(x) + " is negative");
}

std::size_t PsiField::saturated_count() const { return static_cast<std::size_t>(std::count(saturated.begin(), saturated.end(), true)); }

std::vector<int> y_sequence(const PsiField& f) {
    std::vector<int> y(f.psi.size());
    for (std::size_t m = 0; m < y.size(); ++m) y[m] = m == 0 ? f.psi[0] : std::max(f.psi[m], y[m - 1] - 1);
    return y;
}

std::vector<bool> wet_mask(const PsiField& f) {
    auto y = y_sequence(f);
    std::vector<bool> wet(y.size());
    if (!wet.empty()) wet[0] = true;
    for (std::size_t m = 1; m < y.size(); ++m) wet[m] = y[m - 1] >= 1;
    return wet;
}

bool is_wet(const PsiField& f, std::size_t m) {
    if (m > f.horizon()) throw std::out_of_range("site beyond field horizon");
    return wet_mask(f)[m];
}

namespace {
// First m in [x, H-1] with Y_m = 0, or H.
std::size_t first_gap(const std::vector<int>& y, std::size_t x) {
    std::size_t H = y.size() - 1;
    for (std::size_t m = x; m < H; ++m)
        if (y[m] == 0) return m;
    return H;
}
}  // namespace

bool connected_to_horizon(const PsiField& f, std::size_t x) {
    if (x > f.horizon()) throw std::out_of_range("site beyond field horizon");
    auto y = y_sequence(f);
    return first_gap(y, x) == f.horizon();
}

bool chain_connected(const PsiField& f, std::size_t x, std::size_t y) {
    const std::size_t H = f.horizon();
    if (H > 64) throw std::invalid_argument("chain_connected is an oracle for H <= 64");
    if (x > y || y > H) throw std::out_of_range("chain_connected needs 0 <= x <= y <= H");
    auto reach = [&](std::size_t z) { return z + static_cast<std::size_t>(f.psi[z]); };
    std::vector<bool> seen(H + 1, false);
    std::vector<std::size_t> stack;
    for (std::size_t z = 0; z <= x; ++z)
        if (reach(z) >= x) {
            seen[z] = true;
            stack.push_back(z);
        }
    while (!stack.empty()) {
        std::size_t z = stack.back();
        stack.pop_back();
        if (z <= y && y <= reach(z)) return true;
        for (std::size_t w = z; w <= std::min(reach(z), H); ++w)
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return false;
}

PercolationRefused::PercolationRefused(std::size_t x, std::size_t gap)
    : std::runtime_error("site " + std::to_string(x) + " is not connected to the horizon: Y_" +
                         std::to_string(gap) + " = 0"),
      gap_(gap) {}

std::vector<std::size_t> percolation_sequence(const PsiField& f, std::size_t x) {
    const std::size_t H = f.horizon();
    if (x > H) throw std::out_of_range("site beyond field horizon");
    auto y = y_sequence(f);
    std::size_t gap = first_gap(y, x);
    if (gap != H) throw PercolationRefused(x, gap);

    auto reach = [&](std::size_t z) { return z + static_cast<std::size_t>(f.psi[z]); };
    auto argmax = [&](std::size_t lo, std::size_t hi) {
        std::size_t best = lo;
        for (std::size_t z = lo; z <= hi; ++z)
            if (reach(z) >= reach(best)) best = z;
        return best;
    };
    std::vector<std::size_t> seq{argmax(0, x)};
    while (reach(seq.back()) < H) {
        std::size_t cur = seq.back();
        std::size_t next = argmax(cur + 1, reach(cur));
        if (reach(next) <= reach(cur)) throw std::logic_error("percolation_sequence stalled");
        seq.push_back(next);
    }
    if (seq.size() > 1 && !(seq[0] <= x && x < seq[1]))
        throw std::logic_error("percolation_sequence: x_0 <= x < x_1 violated");
    return seq;
}

double dry_probability(const std::vector<double>& r) {
    double s = 0.0;
    bool zero = false;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] >= 0.0 && r[i] <= 1.0))
            throw std::domain_error("dry_probability: r_" + std::to_string(i) + " is outside [0,1]");
        if (r[i] == 1.0)
            zero = true;
        else
            s += std::log1p(-r[i]);
    }
    return zero ? 0.0 : std::exp(s);
}

std::vector<double> bc_partial_sums(std::size_t M, const std::function<double(std::size_t, int)>& r) {
    std::vector<double> out;
    out.reserve(M);
    CompensatedSum acc;
    for (std::size_t m = 0; m < M; ++m) {
        std::vector<double> rs;
        for (std::size_t i = 0; i <= m; ++i) rs.push_back(r(m - i, static_cast<int>(i)));
        acc.add(dry_probability(rs));
        out.push_back(acc.value());
    }
    return out;
}

PsiField sample_psi_field(const SpeedFunction& speed, const InitialDistribution& mu, std::size_t H,
                          const RngStream& rng, const ReachOptions& opts) {
    PsiField f;
    f.psi.resize(H + 1);
    f.saturated.assign(H + 1, false);
    f.provenance = PsiProvenance::Sampled;
    for (std::size_t x = 0; x <= H; ++x) {
        Reach r = sample_site_reach(speed, x, mu, rng.child(x), opts);
        f.psi[x] = r.value;
        f.saturated[x] = r.saturated;
    }
    return f;
}

PsiField read_psi_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open psi field " + path);
    std::vector<int> v;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream is(line);
        long long k;
        std::string rest;
        if (!(is >> k) || (is >> rest) || k < 0 || k > 1'000'000'000)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected a non-negative integer");
        v.push_back(static_cast<int>(k));
    }
    PsiField f(std::move(v));
    f.provenance = PsiProvenance::Explicit;
    return f;
}

void write_psi_field(const PsiField& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write psi field " + path);
    for (int v : f.psi) out << v << '\n';
}

}  // namespace frog
