#include "frog/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "frog/bounds.hpp"
#include "frog/conditions.hpp"
#include "frog/config.hpp"
#include "frog/frogsim.hpp"
#include "frog/random.hpp"
#include "frog/tadibp.hpp"
#include "frog/walks.hpp"

#ifndef FROGKIT_GIT_DESCRIBE
#define FROGKIT_GIT_DESCRIBE "unknown"
#endif

namespace fs = std::filesystem;

namespace frog {

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T>
std::string num(T v)
    requires std::is_integral_v<T>
{
    return std::to_string(v);
}

class Csv {
public:
    Csv(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw std::runtime_error("cannot write " + path.string());
        row(header);
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replicas;
    std::optional<std::size_t> horizon;
    std::string out;
    unsigned workers = 0;
};

struct Context {
    Context(std::string n, Options o, ConfigDoc d, fs::path p, std::ostream& os)
        : name(std::move(n)), opt(std::move(o)), doc(std::move(d)), dir(std::move(p)), out(os) {}

    std::string name;
    Options opt;
    ConfigDoc doc;
    fs::path dir;
    std::ostream& out;
    Json meta = Json::object();
    std::vector<std::string> outputs;
    std::uint64_t seed = 1;
    bool partial = false;

    fs::path file(const std::string& leaf) {
        outputs.push_back(leaf);
        return dir / leaf;
    }
    const Json& cfg() const { return doc.root; }
    std::size_t replicas(std::size_t def) {
        std::size_t r = opt.replicas ? *opt.replicas
                                     : static_cast<std::size_t>(get_int(doc, cfg(), "replicas",
                                                                        static_cast<std::int64_t>(def), 1));
        if (r < 1) throw ConfigError(doc.source, 0, "replicas must be >= 1");
        meta["replicas"] = r;
        return r;
    }
    std::size_t horizon(const std::string& key, std::size_t def, std::size_t min = 1) {
        std::size_t h = opt.horizon ? *opt.horizon
                                    : static_cast<std::size_t>(get_int(doc, cfg(), key, static_cast<std::int64_t>(def),
                                                                       static_cast<std::int64_t>(min)));
        if (h < min) throw ConfigError(doc.source, 0, key + " must be >= " + std::to_string(min));
        return h;
    }
    SpeedFunction speed(const std::string& key = "speed") {
        if (!cfg().contains(key)) doc.fail("", "missing \"" + key + "\" spec");
        return parse_speed(doc, cfg().at(key), SpeedFunction::kDefaultHorizon);
    }
    InitialDistribution mu(const std::string& key = "mu") {
        if (!cfg().contains(key)) doc.fail("", "missing \"" + key + "\" spec");
        return parse_mu(doc, cfg().at(key));
    }
};

ReachOptions reach_options(Context& c) {
    ReachOptions o;
    o.cap = static_cast<int>(get_int(c.doc, c.cfg(), "cap", kDefaultReachCap, 1));
    o.swarm_threshold = get_int(c.doc, c.cfg(), "swarm_threshold", 4096, 0);
    c.meta["cap"] = o.cap;
    return o;
}

// ---------------------------------------------------------------- sim-frog

FrogConfig frog_config(Context& c, const Json& obj, std::size_t R) {
    FrogConfig f;
    f.mu = c.mu();
    f.R = R;
    std::string mode = get_string(c.doc, obj, "mode", "left-removed");
    if (mode == "left-removed")
        f.mode = LeftMode::LeftRemoved;
    else if (mode == "two-sided")
        f.mode = LeftMode::TwoSided;
    else
        c.doc.fail("mode", "mode must be \"left-removed\" or \"two-sided\"");
    f.L = static_cast<std::size_t>(get_int(c.doc, obj, "L", 0));
    f.particle_cap = static_cast<std::size_t>(get_int(c.doc, obj, "particle_cap", 2'000'000, 1));
    f.time_cap = get_double(c.doc, obj, "time_cap", std::numeric_limits<double>::infinity());
    if (obj.contains("window")) f.window = static_cast<std::size_t>(get_int(c.doc, obj, "window", 0));
    f.swarm_threshold = get_int(c.doc, obj, "swarm_threshold", 4096, 0);
    f.seed = c.seed;
    try {
        f.validate();
    } catch (const std::invalid_argument& e) {
        c.doc.fail("", e.what());
    }
    return f;
}

std::vector<ActivationRecord> run_replicas(const FrogConfig& base, std::size_t replicas, unsigned workers) {
    std::vector<ActivationRecord> recs(replicas);
    parallel_for(replicas, workers, [&](std::size_t r) {
        FrogConfig f = base;
        f.replica = r;
        recs[r] = simulate(f);
    });
    return recs;
}

std::optional<RegimeReport> try_regime(const std::vector<ActivationRecord>& recs, std::size_t n0) {
    std::size_t R = recs.front().R;
    std::size_t k = 0;
    while ((n0 << (k + 1)) <= R) ++k;
    if ((n0 << k) != R || k < 2) return std::nullopt;
    return regime_diagnostic(recs, n0);
}

Json regime_json(const RegimeReport& r) {
    Json j;
    j["label"] = r.label;
    j["slope"] = r.slope;
    j["stability"] = r.stability;
    j["agreement"] = r.agreement;
    j["replicas_used"] = r.used;
    j["excluded"] = r.excluded;
    j["n0"] = r.n0;
    j["levels"] = r.levels;
    j["note"] = r.note;
    return j;
}

int cmd_sim_frog(Context& c) {
    check_keys(c.doc, c.cfg(),
               {"mu", "R", "mode", "L", "particle_cap", "time_cap", "window", "swarm_threshold", "replicas", "seed",
                "n0", "speed"},
               "sim-frog config");
    std::size_t R = c.horizon("R", 256);
    FrogConfig base = frog_config(c, c.cfg(), R);
    std::size_t reps = c.replicas(1);
    auto n0 = static_cast<std::size_t>(get_int(c.doc, c.cfg(), "n0", 1, 1));
    std::optional<SpeedFunction> speed;
    if (c.cfg().contains("speed")) speed = c.speed();

    auto recs = run_replicas(base, reps, c.opt.workers);

    Csv summary(c.file("summary.csv"), {"replica", "stop_reason", "theta_R", "events", "front_steps", "particles",
                                        "swarms", "frozen", "origin_boost", "partial"});
    Json stops = Json::array();
    double wall = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        const auto& rec = recs[r];
        char leaf[48];
        std::snprintf(leaf, sizeof leaf, "theta_rep%03zu.csv", r);
        Csv th(c.file(leaf), {"site", "theta", "reached"});
        for (long s = rec.first_site; s <= static_cast<long>(rec.R); ++s)
            th.row({num(s), num(rec.theta(s)), rec.reached(s) ? "1" : "0"});
        summary.row({num(r), to_string(rec.stop), num(rec.theta(static_cast<long>(R))), num(rec.events),
                     num(rec.front_steps), num(rec.particles), num(rec.swarms), num(rec.frozen),
                     rec.origin_boost ? "1" : "0", rec.partial() ? "1" : "0"});
        stops.push_back(to_string(rec.stop));
        if (rec.partial()) c.partial = true;
        wall += rec.wall_clock_seconds;
    }
    c.meta["stop_reasons"] = stops;
    c.meta["simulation_wall_clock_seconds"] = wall;
    if (base.window) c.meta["warning"] = "front-window pruning is a biased speedup";
    if (std::any_of(recs.begin(), recs.end(), [](const auto& r) { return r.swarm_left_ignored; }))
        c.meta["swarm_left_ignored"] = true;

    if (auto rep = try_regime(recs, n0)) {
        Csv reg(c.file("regime.csv"), {"level", "site_lo", "site_hi", "median_delta"});
        for (std::size_t k = 0; k < rep->median_delta.size(); ++k)
            reg.row({num(k), num(n0 << k), num(n0 << (k + 1)), num(rep->median_delta[k])});
        Csv rr(c.file("regime_replicas.csv"), {"replica", "slope", "label"});
        std::size_t used = 0;
        for (std::size_t r = 0; r < reps; ++r) {
            if (!recs[r].reached(static_cast<long>(R))) continue;
            rr.row({num(r), num(rep->replica_slopes[used]), rep->replica_labels[used]});
            ++used;
        }
        c.meta["regime"] = regime_json(*rep);
        c.out << "regime: " << rep->label << " (slope " << num(rep->slope) << ", agreement " << num(rep->agreement)
              << ", " << rep->note << ")\n";
    }
    if (speed && base.mode == LeftMode::LeftRemoved) {
        Csv iv(c.file("intervals.csv"), {"replica", "from", "to", "dt", "budget", "fast"});
        for (std::size_t r = 0; r < reps; ++r) {
            if (!recs[r].reached(static_cast<long>(R))) continue;
            auto s = fast_slow_intervals(recs[r], *speed);
            for (const auto& v : s.intervals)
                iv.row({num(r), num(v.from), num(v.to), num(v.dt), num(v.budget), v.fast ? "1" : "0"});
        }
    }
    std::size_t reached = static_cast<std::size_t>(
        std::count_if(recs.begin(), recs.end(), [&](const auto& r) { return r.reached(static_cast<long>(R)); }));
    c.out << "sim-frog: " << reached << "/" << reps << " replicas reached R=" << R << "\n";
    return c.partial ? kExitPartial : kExitOk;
}

// -------------------------------------------------------------- sim-tadibp

int cmd_sim_tadibp(Context& c) {
    check_keys(c.doc, c.cfg(), {"speed", "mu", "H", "cap", "swarm_threshold", "replicas", "seed", "export_fields"},
               "sim-tadibp config");
    auto speed = c.speed();
    auto mu = c.mu();
    std::size_t H = c.horizon("H", 64);
    auto ro = reach_options(c);
    std::size_t reps = c.replicas(1);
    bool exp = get_bool(c.doc, c.cfg(), "export_fields", false);

    std::vector<PsiField> fields(reps);
    parallel_for(reps, c.opt.workers, [&](std::size_t r) {
        fields[r] = sample_psi_field(speed, mu, H, RngStream::derive(c.seed, {r}), ro);
    });

    Csv fcsv(c.file("fields.csv"), {"replica", "site", "psi", "saturated", "y", "wet"});
    Csv scsv(c.file("tadibp_summary.csv"),
             {"replica", "connected_to_horizon", "first_gap", "saturated_sites", "sequence_length"});
    std::vector<std::size_t> dry(H + 1, 0);
    std::size_t sat = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        const auto& f = fields[r];
        auto y = y_sequence(f);
        auto wet = wet_mask(f);
        for (std::size_t x = 0; x <= H; ++x) {
            fcsv.row({num(r), num(x), num(f.psi[x]), f.saturated[x] ? "1" : "0", num(y[x]), wet[x] ? "1" : "0"});
            if (!wet[x]) ++dry[x];
        }
        std::string gap = "", len = "";
        bool conn = connected_to_horizon(f, 0);
        try {
            len = num(percolation_sequence(f, 0).size());
        } catch (const PercolationRefused& e) {
            gap = num(e.first_gap());
        }
        scsv.row({num(r), conn ? "1" : "0", gap, num(f.saturated_count()), len});
        sat += f.saturated_count();
        if (exp) {
            char leaf[48];
            std::snprintf(leaf, sizeof leaf, "psi_rep%03zu.txt", r);
            write_psi_field(f, c.file(leaf).string());
        }
    }
    Csv dcsv(c.file("dry_frequency.csv"), {"site", "dry", "fields", "frequency", "stderr"});
    for (std::size_t x = 0; x <= H; ++x) {
        double p = static_cast<double>(dry[x]) / static_cast<double>(reps);
        dcsv.row({num(x), num(dry[x]), num(reps), num(p), num(std::sqrt(p * (1 - p) / static_cast<double>(reps)))});
    }
    c.meta["saturated_sites"] = sat;
    c.meta["horizon_note"] = "connectivity is censored at H = " + std::to_string(H);
    if (sat > 0) c.partial = true;
    c.out << "sim-tadibp: " << reps << " fields up to H=" << H << ", " << sat << " saturated sites\n";
    return c.partial ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------- dry-prob

struct TailTable {
    // est[x][j] for the requested pairs.
    std::map<std::pair<std::size_t, int>, TailEstimate> est;
    std::size_t saturated = 0;
};

TailTable tail_table(const SpeedFunction& speed, const InitialDistribution& mu,
                     const std::map<std::size_t, std::vector<int>>& wanted, std::size_t replicas, std::uint64_t seed,
                     const ReachOptions& ro, unsigned workers) {
    TailTable t;
    for (const auto& [x, js] : wanted) {
        auto prof = reach_tail_profile(speed, x, js, mu, replicas, RngStream::derive(seed, {1, x}), ro, workers);
        for (std::size_t k = 0; k < js.size(); ++k) t.est[{x, js[k]}] = prof[k];
        if (!prof.empty()) t.saturated += prof.front().saturated;
    }
    return t;
}

int cmd_dry_prob(Context& c) {
    check_keys(c.doc, c.cfg(),
               {"speed", "mu", "sites", "replicas", "fields", "cap", "swarm_threshold", "seed", "bc_terms"},
               "dry-prob config");
    auto speed = c.speed();
    auto mu = c.mu();
    auto ro = reach_options(c);
    auto sites = get_int_list(c.doc, c.cfg(), "sites", {2, 5, 10, 15}, 1);
    if (c.opt.horizon) sites = {static_cast<std::int64_t>(*c.opt.horizon)};
    std::size_t reps = c.replicas(10000);
    auto nfields = static_cast<std::size_t>(get_int(c.doc, c.cfg(), "fields", 0));
    auto bc = static_cast<std::size_t>(get_int(c.doc, c.cfg(), "bc_terms", 0));

    // m is dry iff psi_i < m - i for all i < m: r_i = P{psi_i > m - 1 - i}.
    std::map<std::size_t, std::vector<int>> wanted;
    for (auto m : sites)
        for (std::int64_t i = 0; i < m; ++i) wanted[static_cast<std::size_t>(i)].push_back(static_cast<int>(m - 1 - i));
    for (std::size_t m = 0; m < bc; ++m)
        for (std::size_t i = 0; i <= m; ++i) wanted[m - i].push_back(static_cast<int>(i));
    for (auto& [x, js] : wanted) {
        std::sort(js.begin(), js.end());
        js.erase(std::unique(js.begin(), js.end()), js.end());
    }
    auto tab = tail_table(speed, mu, wanted, reps, c.seed, ro, c.opt.workers);

    std::size_t Hmax = static_cast<std::size_t>(*std::max_element(sites.begin(), sites.end()));
    std::vector<std::size_t> dry(Hmax + 1, 0);
    if (nfields > 0) {
        std::vector<PsiField> fields(nfields);
        parallel_for(nfields, c.opt.workers, [&](std::size_t f) {
            fields[f] = sample_psi_field(speed, mu, Hmax, RngStream::derive(c.seed, {2, f}), ro);
        });
        for (const auto& f : fields) {
            auto wet = wet_mask(f);
            for (std::size_t m = 0; m <= Hmax; ++m)
                if (!wet[m]) ++dry[m];
        }
    }

    Csv out(c.file("dry_prob.csv"),
            {"m", "formula", "formula_stderr", "empirical", "empirical_stderr", "fields", "z"});
    for (auto m64 : sites) {
        auto m = static_cast<std::size_t>(m64);
        std::vector<double> r;
        double rel2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& e = tab.est.at({i, static_cast<int>(m - 1 - i)});
            r.push_back(e.estimate);
            if (e.estimate < 1.0) rel2 += std::pow(e.stderr_ / (1.0 - e.estimate), 2);
        }
        double p = dry_probability(r);
        double se = p * std::sqrt(rel2);
        std::vector<std::string> row{num(m), num(p), num(se)};
        if (nfields > 0) {
            double q = static_cast<double>(dry[m]) / static_cast<double>(nfields);
            double qse = std::sqrt(q * (1 - q) / static_cast<double>(nfields));
            double comb = std::sqrt(se * se + qse * qse);
            row.insert(row.end(), {num(q), num(qse), num(nfields), num(comb > 0 ? (p - q) / comb : 0.0)});
        } else {
            row.insert(row.end(), {"", "", "0", ""});
        }
        out.row(row);
        c.out << "dry-prob: m=" << m << " formula=" << num(p) << "\n";
    }
    if (bc > 0) {
        auto sums = bc_partial_sums(bc, [&](std::size_t x, int j) { return tab.est.at({x, j}).estimate; });
        Csv b(c.file("bc.csv"), {"m", "term", "partial_sum"});
        for (std::size_t m = 0; m < sums.size(); ++m) b.row({num(m), num(sums[m] - (m ? sums[m - 1] : 0.0)), num(sums[m])});
    }
    c.meta["saturated_replicas"] = tab.saturated;
    if (tab.saturated > 0) c.partial = true;
    return c.partial ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------- ell-tail

int cmd_ell_tail(Context& c) {
    check_keys(c.doc, c.cfg(), {"speed", "mu", "x", "sites", "js", "replicas", "cap", "swarm_threshold", "seed"},
               "ell-tail config");
    auto speed = c.speed();
    auto mu = c.mu();
    auto ro = reach_options(c);
    if (c.opt.horizon) {
        ro.cap = static_cast<int>(*c.opt.horizon);
        c.meta["cap"] = ro.cap;
    }
    std::vector<std::int64_t> xs = c.cfg().contains("sites") ? get_int_list(c.doc, c.cfg(), "sites", {})
                                                              : std::vector<std::int64_t>{get_int(c.doc, c.cfg(), "x", 0)};
    auto js64 = get_int_list(c.doc, c.cfg(), "js", {0, 1, 2, 3, 4, 5});
    std::vector<int> js(js64.begin(), js64.end());
    std::size_t reps = c.replicas(10000);
    Csv out(c.file("ell_tail.csv"), {"x", "j", "estimate", "stderr", "replicas", "hits", "saturated", "cap"});
    std::size_t sat = 0;
    for (auto x : xs) {
        std::vector<TailEstimate> prof;
        try {
            prof = reach_tail_profile(speed, static_cast<std::size_t>(x), js, mu, reps,
                                      RngStream::derive(c.seed, {1, static_cast<std::uint64_t>(x)}), ro, c.opt.workers);
        } catch (const std::invalid_argument& e) {
            c.doc.fail("js", e.what());
        }
        for (std::size_t k = 0; k < js.size(); ++k) {
            const auto& e = prof[k];
            out.row({num(x), num(js[k]), num(e.estimate), num(e.stderr_), num(e.replicas), num(e.hits),
                     num(e.saturated), num(e.cap)});
        }
        sat += prof.empty() ? 0 : prof.front().saturated;
    }
    c.meta["saturated_replicas"] = sat;
    if (sat > 0) c.partial = true;
    c.out << "ell-tail: " << xs.size() * js.size() << " estimates, cap " << ro.cap << ", " << sat
          << " saturated replicas\n";
    return c.partial ? kExitPartial : kExitOk;
}

// -------------------------------------------------------- check-conditions

Json series_json(const SeriesDiagnostic& d) {
    Json j;
    j["name"] = d.name;
    j["horizon"] = d.horizon;
    j["partial_sum"] = d.partial_sum;
    j["last_term"] = d.last_term;
    j["numeric"] = to_string(d.numeric);
    j["analytic"] = d.analytic ? Json(to_string(*d.analytic)) : Json(nullptr);
    j["verdict"] = to_string(d.verdict);
    j["block_ratios"] = d.block_ratios;
    Json cps = Json::array();
    for (const auto& cp : d.checkpoints) cps.push_back({{"n", cp.n}, {"partial_sum", cp.partial_sum}, {"last_term", cp.last_term}});
    j["checkpoints"] = cps;
    if (!d.note.empty()) j["note"] = d.note;
    return j;
}

int cmd_check_conditions(Context& c) {
    check_keys(c.doc, c.cfg(), {"speed", "mu", "rho", "horizon", "checks", "seed", "replicas"},
               "check-conditions config");
    auto speed = c.speed();
    std::size_t H = c.horizon("horizon", kDefaultExplosionHorizon, 8);
    std::vector<std::string> checks{"speed", "nonexplosion", "explosion"};
    if (c.cfg().contains("checks")) {
        checks.clear();
        if (!c.cfg().at("checks").is_array()) c.doc.fail("checks", "\"checks\" must be a list");
        for (const auto& v : c.cfg().at("checks")) {
            if (!v.is_string()) c.doc.fail("checks", "\"checks\" entries must be strings");
            checks.push_back(v.get<std::string>());
        }
    }
    std::vector<ConditionReport> reports;
    for (const auto& ch : checks) {
        if (ch == "speed") {
            ConditionReport rep;
            rep.condition = "speed";
            rep.horizon = H;
            rep.series = {check_speed_series(speed, H)};
            rep.label = to_string(rep.series.front().verdict);
            reports.push_back(rep);
        } else if (ch == "nonexplosion") {
            reports.push_back(check_nonexplosion(c.mu(), speed, H));
        } else if (ch == "explosion") {
            double rho = get_double(c.doc, c.cfg(), "rho", 2.0);
            if (!(rho > 1.0)) c.doc.fail("rho", "rho must be > 1");
            try {
                reports.push_back(check_explosion(c.mu(), speed, rho, H));
            } catch (const std::domain_error& e) {
                c.doc.fail("speed", e.what());
            }
        } else {
            c.doc.fail("checks", "unknown check \"" + ch + "\" (speed, nonexplosion, explosion)");
        }
    }
    Csv cp(c.file("conditions.csv"), {"condition", "series", "n", "partial_sum", "last_term"});
    Csv sm(c.file("conditions_summary.csv"),
           {"condition", "series", "numeric", "analytic", "verdict", "label", "horizon"});
    Json js = Json::array();
    for (const auto& rep : reports) {
        Json jr;
        jr["condition"] = rep.condition;
        jr["label"] = rep.label;
        jr["horizon"] = rep.horizon;
        jr["notes"] = rep.notes;
        Json ser = Json::array();
        for (const auto& s : rep.series) {
            for (const auto& k : s.checkpoints)
                cp.row({rep.condition, "\"" + s.name + "\"", num(k.n), num(k.partial_sum), num(k.last_term)});
            sm.row({rep.condition, "\"" + s.name + "\"", to_string(s.numeric), s.analytic ? to_string(*s.analytic) : "",
                    to_string(s.verdict), rep.label, num(rep.horizon)});
            ser.push_back(series_json(s));
        }
        jr["series"] = ser;
        js.push_back(jr);
        c.out << rep.condition << ": " << rep.label << " (up to horizon " << rep.horizon << ")\n";
        for (const auto& s : rep.series)
            c.out << "  " << s.name << "  sum=" << num(s.partial_sum) << "  " << to_string(s.verdict) << "\n";
    }
    std::ofstream(c.file("conditions.json")) << js.dump(2) << "\n";
    return kExitOk;
}

// ------------------------------------------------------------------ bounds

int cmd_bounds(Context& c) {
    check_keys(c.doc, c.cfg(),
               {"speed", "mu", "checks", "walks", "i_max", "j_max", "m_max", "cap", "swarm_threshold", "seed",
                "replicas"},
               "bounds config");
    auto speed = c.speed();
    std::vector<std::string> checks{"erlang", "sandwich", "e2", "r_lower"};
    if (c.cfg().contains("checks")) {
        checks.clear();
        if (!c.cfg().at("checks").is_array()) c.doc.fail("checks", "\"checks\" must be a list");
        for (const auto& v : c.cfg().at("checks")) {
            if (!v.is_string()) c.doc.fail("checks", "\"checks\" entries must be strings");
            checks.push_back(v.get<std::string>());
        }
    }
    auto ro = reach_options(c);
    std::size_t walks = c.opt.replicas ? *c.opt.replicas
                                       : static_cast<std::size_t>(get_int(c.doc, c.cfg(), "walks", 10000, 1));
    c.meta["walks"] = walks;
    int imax = static_cast<int>(get_int(c.doc, c.cfg(), "i_max", 5));
    int jmax = static_cast<int>(get_int(c.doc, c.cfg(), "j_max", 5, 1));
    auto mmax = static_cast<std::size_t>(c.horizon("m_max", 30));
    std::vector<BoundCheck> rows;
    std::size_t sat = 0, gate_failed = 0;
    for (const auto& ch : checks) {
        if (ch == "erlang") {
            for (int n = 1; n <= 5; ++n)
                for (double b : {0.1, 1.0, 5.0}) {
                    auto e = erlang_lower(n, b);
                    rows.push_back(make_check("erlang_lower", "n=" + num(n) + " b=" + num(b), BoundDirection::Lower,
                                              e.bound, e.exact, 0.0));
                }
        } else if (ch == "sandwich") {
            auto dirac1 = InitialDistribution::dirac(1);
            for (int i = 0; i <= imax; ++i) {
                std::vector<int> js;
                for (int j = 1; j <= jmax; ++j) js.push_back(j - 1);
                auto prof = reach_tail_profile(speed, static_cast<std::size_t>(i), js, dirac1, walks,
                                               RngStream::derive(c.seed, {3, static_cast<std::uint64_t>(i)}), ro,
                                               c.opt.workers);
                sat += prof.front().saturated;
                for (int j = 1; j <= jmax; ++j) {
                    const auto& e = prof[static_cast<std::size_t>(j - 1)];
                    std::string p = "i=" + num(i) + " j=" + num(j);
                    double lb;
                    try {
                        lb = reach_lower_bound(j - 1, static_cast<std::size_t>(i), speed);
                    } catch (const std::domain_error& err) {
                        c.doc.fail("speed", err.what());
                    }
                    rows.push_back(make_check("reach_lower", p, BoundDirection::Lower, lb, e.estimate, e.stderr_, walks));
                    auto ub = reach_upper_chain(static_cast<std::size_t>(i), j, speed);
                    rows.push_back(make_check(ub.inconclusive ? "reach_upper_inconclusive" : "reach_upper", p,
                                              BoundDirection::Upper, ub.value, e.estimate, e.stderr_, walks));
                }
            }
        } else if (ch == "e2") {
            for (std::size_t m = 0; m <= mmax; ++m)
                for (std::size_t i = 0; i <= m; ++i) {
                    auto v = e2(static_cast<int>(i), m, speed);
                    if (!v.gate) {
                        ++gate_failed;
                        continue;
                    }
                    rows.push_back(make_check("e2_floor", "i=" + num(i) + " m=" + num(m), BoundDirection::Lower,
                                              v.floor(), v.e2(), 0.0));
                }
        } else if (ch == "r_lower") {
            auto mu = c.mu();
            std::map<std::size_t, std::vector<int>> wanted;
            for (std::size_t m = 0; m <= mmax; ++m)
                for (std::size_t i = 0; i <= std::min<std::size_t>(m, static_cast<std::size_t>(imax)); ++i)
                    wanted[m - i].push_back(static_cast<int>(i));
            for (auto& [x, js] : wanted) {
                std::sort(js.begin(), js.end());
                js.erase(std::unique(js.begin(), js.end()), js.end());
            }
            auto tab = tail_table(speed, mu, wanted, walks, c.seed, ro, c.opt.workers);
            sat += tab.saturated;
            for (std::size_t m = 0; m <= mmax; ++m)
                for (std::size_t i = 0; i <= std::min<std::size_t>(m, static_cast<std::size_t>(imax)); ++i) {
                    auto rl = r_lower(static_cast<int>(i), m, mu, speed);
                    const auto& e = tab.est.at({m - i, static_cast<int>(i)});
                    rows.push_back(make_check("r_lower", "i=" + num(i) + " m=" + num(m), BoundDirection::Lower,
                                              rl.value, e.estimate, e.stderr_, walks));
                }
        } else {
            c.doc.fail("checks", "unknown check \"" + ch + "\" (erlang, sandwich, e2, r_lower)");
        }
    }
    Csv out(c.file("bounds.csv"),
            {"id", "params", "direction", "bound", "comparison", "comparison_stderr", "satisfied"});
    std::size_t failed = 0;
    for (const auto& r : rows) {
        out.row({r.id, r.params, r.direction == BoundDirection::Lower ? "lower" : "upper", num(r.bound),
                 num(r.comparison), num(r.comparison_stderr), r.satisfied ? "1" : "0"});
        if (!r.satisfied) ++failed;
    }
    c.meta["checks"] = rows.size();
    c.meta["unsatisfied"] = failed;
    c.meta["e2_gate_not_met"] = gate_failed;
    c.meta["saturated_replicas"] = sat;
    if (sat > 0) c.partial = true;
    c.out << "bounds: " << rows.size() << " checks, " << failed << " unsatisfied\n";
    return c.partial ? kExitPartial : kExitOk;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(Context& c) {
    check_keys(c.doc, c.cfg(),
               {"mu", "speed", "R", "replicas", "seed", "n0", "mode", "L", "particle_cap", "time_cap", "window",
                "swarm_threshold", "plot"},
               "sweep config");
    auto list_of = [&](const std::string& key) {
        std::vector<Json> v;
        if (!c.cfg().contains(key)) return v;
        const auto& j = c.cfg().at(key);
        if (j.is_array())
            for (const auto& e : j) v.push_back(e);
        else
            v.push_back(j);
        return v;
    };
    auto mus = list_of("mu");
    if (mus.empty()) c.doc.fail("", "sweep needs \"mu\"");
    auto speeds = list_of("speed");
    std::vector<std::size_t> Rs;
    if (c.opt.horizon)
        Rs = {*c.opt.horizon};
    else
        for (auto r : get_int_list(c.doc, c.cfg(), "R", {256}, 1)) Rs.push_back(static_cast<std::size_t>(r));
    std::size_t reps = c.replicas(1);
    auto n0 = static_cast<std::size_t>(get_int(c.doc, c.cfg(), "n0", 1, 1));
    bool plot = get_bool(c.doc, c.cfg(), "plot", false);

    struct Cell {
        std::string mu, speed;
        std::size_t R;
        std::optional<FrogConfig> cfg;
        std::string error;
        std::vector<ActivationRecord> recs;
    };
    std::vector<Cell> cells;
    for (const auto& m : mus)
        for (std::size_t si = 0; si < std::max<std::size_t>(1, speeds.size()); ++si)
            for (auto R : Rs) {
                Cell cell;
                cell.R = R;
                cell.speed = speeds.empty() ? "" : parse_speed(c.doc, speeds[si], SpeedFunction::kDefaultHorizon).describe();
                Json obj = c.cfg();
                obj["mu"] = m;
                ConfigDoc sub = c.doc;
                sub.root = obj;
                Context tmp(c.name, c.opt, sub, c.dir, c.out);
                tmp.seed = c.seed;
                try {
                    cell.mu = parse_mu(sub, m).describe();
                    cell.cfg = frog_config(tmp, obj, R);
                } catch (const ConfigError& e) {
                    throw;
                } catch (const std::exception& e) {
                    cell.error = e.what();
                }
                cells.push_back(std::move(cell));
            }

    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (!cells[k].cfg) continue;
        cells[k].recs.resize(reps);
        for (std::size_t r = 0; r < reps; ++r) jobs.push_back({k, r});
    }
    std::vector<std::string> errors(jobs.size());
    parallel_for(jobs.size(), c.opt.workers, [&](std::size_t q) {
        auto [k, r] = jobs[q];
        FrogConfig f = *cells[k].cfg;
        f.replica = r;
        try {
            cells[k].recs[r] = simulate(f);
        } catch (const std::exception& e) {
            errors[q] = e.what();
        }
    });
    for (std::size_t q = 0; q < jobs.size(); ++q)
        if (!errors[q].empty() && cells[jobs[q].first].error.empty()) cells[jobs[q].first].error = errors[q];

    Csv out(c.file("sweep.csv"), {"cell_id", "mu", "speed", "R", "label", "slope", "agreement", "replicas_used",
                                  "excluded", "capped", "error"});
    std::optional<Csv> dat;
    if (plot) dat.emplace(c.file("sweep_theta.dat"), std::vector<std::string>{"cell_id", "n", "median_theta"});
    bool flagged = false;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        auto& cell = cells[k];
        std::string label, slope, agree, used, excl;
        bool capped = false;
        if (cell.error.empty()) {
            capped = std::any_of(cell.recs.begin(), cell.recs.end(), [](const auto& r) { return r.partial(); });
            try {
                if (auto rep = try_regime(cell.recs, n0)) {
                    label = rep->label;
                    slope = num(rep->slope);
                    agree = num(rep->agreement);
                    used = num(rep->used);
                    excl = num(rep->excluded);
                } else {
                    cell.error = "R is not n0 * 2^k with k >= 2";
                }
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
            if (dat)
                for (std::size_t n = 1; n <= cell.R; ++n) {
                    std::vector<double> th;
                    for (const auto& r : cell.recs) th.push_back(r.theta(static_cast<long>(n)));
                    std::sort(th.begin(), th.end());
                    dat->row({num(k), num(n), num(th[th.size() / 2])});
                }
        }
        if (capped || !cell.error.empty()) flagged = true;
        std::string err = cell.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '"', '\'');
        out.row({num(k), "\"" + cell.mu + "\"", "\"" + cell.speed + "\"", num(cell.R), label, slope, agree, used,
                 excl, capped ? "1" : "0", err.empty() ? "" : "\"" + err + "\""});
        c.out << "cell " << k << ": " << (label.empty() ? "error" : label) << (capped ? " (capped)" : "") << "\n";
    }
    if (plot) {
        std::ofstream gp(c.file("sweep_theta.gp"));
        gp << "set datafile separator ','\nset key autotitle columnhead\nset logscale y\n"
              "set xlabel 'site n'\nset ylabel 'median theta_n'\nplot";
        for (std::size_t k = 0; k < cells.size(); ++k)
            gp << (k ? "," : "") << " 'sweep_theta.dat' using (column(1)==" << k << " ? column(2) : 1/0):3 with lines title 'cell "
               << k << "'";
        gp << "\n";
    }
    c.meta["cells"] = cells.size();
    c.partial = flagged;
    return flagged ? kExitPartial : kExitOk;
}

// ------------------------------------------------------------------ driver

using Handler = int (*)(Context&);

struct Subcommand {
    const char* name;
    const char* help;
    Handler fn;
};

constexpr Subcommand kSubcommands[] = {
    {"sim-frog", "simulate the frog model and classify the growth regime", cmd_sim_frog},
    {"sim-tadibp", "sample percolation fields psi_x = reach of site x", cmd_sim_tadibp},
    {"dry-prob", "dry-site product formula against sampled fields", cmd_dry_prob},
    {"ell-tail", "Monte Carlo tail of the fast-reach statistic", cmd_ell_tail},
    {"check-conditions", "series conditions for explosion / non-explosion", cmd_check_conditions},
    {"bounds", "closed-form bounds and their Monte Carlo checks", cmd_bounds},
    {"sweep", "regime diagnostic over a parameter grid", cmd_sweep},
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"frogkit: frog model and Boolean percolation toolkit", "frogkit"};
    app.require_subcommand(1, 1);
    std::map<std::string, Options> opts;
    std::map<std::string, CLI::App*> subs;
    for (const auto& sc : kSubcommands) {
        auto* s = app.add_subcommand(sc.name, sc.help);
        Options& o = opts[sc.name];
        s->add_option("--config", o.config, "JSON config file")->take_last();
        s->add_option("--seed", o.seed, "master seed (overrides config)")->take_last();
        s->add_option("--replicas", o.replicas, "replica count (overrides config)")->take_last();
        s->add_option("--horizon", o.horizon, "main horizon of the subcommand (see README)")->take_last();
        s->add_option("--out", o.out, "output directory (default $FROGKIT_OUT_DIR or ./frogkit_out)")->take_last();
        s->add_option("--workers", o.workers, "worker threads, 0 = auto")->take_last();
        subs[sc.name] = s;
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitValidation;
    }

    const Subcommand* chosen = nullptr;
    for (const auto& sc : kSubcommands)
        if (subs[sc.name]->parsed()) chosen = &sc;
    Options o = opts[chosen->name];
    if (o.out.empty()) {
        const char* env = std::getenv("FROGKIT_OUT_DIR");
        o.out = env && *env ? env : "frogkit_out";
    }
    auto t0 = std::chrono::steady_clock::now();
    Context ctx(chosen->name, o, ConfigDoc{}, fs::path(o.out), out);
    ctx.doc.source = "<defaults>";
    int code = kExitOk;
    try {
        if (!o.config.empty()) ctx.doc = load_config(o.config);
        ctx.seed = o.seed ? *o.seed : static_cast<std::uint64_t>(get_int(ctx.doc, ctx.doc.root, "seed", 1));
        fs::create_directories(ctx.dir);
        code = chosen->fn(ctx);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    Json side;
    side["subcommand"] = ctx.name;
    side["git_describe"] = FROGKIT_GIT_DESCRIBE;
    side["config_source"] = ctx.doc.source;
    side["config"] = ctx.doc.root;
    side["seed"] = ctx.seed;
    for (auto it = ctx.meta.begin(); it != ctx.meta.end(); ++it) side[it.key()] = it.value();
    side["outputs"] = ctx.outputs;
    side["partial"] = ctx.partial;
    side["exit_code"] = code;
    side["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ofstream(ctx.dir / (ctx.name + ".json")) << side.dump(2) << "\n";
    if (code == kExitPartial) err << "warning: results are capped or partial; see " << ctx.name << ".json\n";
    return code;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace frog
