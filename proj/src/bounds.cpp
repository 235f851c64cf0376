#include "truncvar/bounds.hpp"

#include "truncvar/closed_forms.hpp"
#include "truncvar/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace truncvar {

namespace {

// Substream offsets so estimators under one master seed never share paths.
constexpr std::uint64_t kStride = 1ull << 32;

constexpr double kPathwiseTol = 1e-9;
constexpr long kLowPowerPaths = 1000;

// Two-sided Broadie-Glasserman style continuity shift: the discretely
// monitored drawdown behaves like a continuous one with the barrier moved
// by about beta*sqrt(dt) (once for the unseen max, once for the crossing).
constexpr double kMonitorBeta = 1.1652;

Quantity mc_quantity(const EstimateCI& est, double scale = 1.0) {
    return {scale * est.mean, std::abs(scale) * est.std_error, false};
}

Quantity exact_quantity(double value) {
    return {value, 0.0, true};
}

BoundReport make_report(std::string claim_id, std::string description, Quantity lhs, Quantity rhs,
                        const ModelParams& params, const SimConfig& sim) {
    BoundReport r;
    r.claim_id = std::move(claim_id);
    r.description = std::move(description);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs.value - lhs.value;
    r.slack = 3.0 * std::sqrt(lhs.std_error * lhs.std_error + rhs.std_error * rhs.std_error);
    r.passed = r.margin >= -r.slack;
    r.low_power = sim.n_paths < kLowPowerPaths;
    r.params = params;
    r.sim = sim;
    return r;
}

BoundReport make_pathwise_report(std::string claim_id, std::string description, double min_margin,
                                 const ModelParams& params, const SimConfig& sim) {
    BoundReport r;
    r.claim_id = std::move(claim_id);
    r.description = std::move(description);
    r.lhs = exact_quantity(0.0);
    r.rhs = exact_quantity(min_margin);
    r.margin = min_margin;
    r.slack = kPathwiseTol;
    r.passed = r.margin >= -r.slack;
    r.low_power = sim.n_paths < kLowPowerPaths;
    r.params = params;
    r.sim = sim;
    return r;
}

std::vector<double> quantile_points(std::vector<double> samples, int n_quantiles) {
    std::sort(samples.begin(), samples.end());
    std::vector<double> qs;
    qs.reserve(n_quantiles);
    const std::size_t n = samples.size();
    for (int j = 1; j <= n_quantiles; ++j) {
        const double frac = static_cast<double>(j) / static_cast<double>(n_quantiles + 1);
        std::size_t idx = static_cast<std::size_t>(frac * static_cast<double>(n - 1));
        idx = std::min(idx, n - 1);
        qs.push_back(samples[idx]);
    }
    return qs;
}

double binomial_se(double p, double n) {
    return std::sqrt(std::max(p * (1.0 - p), 0.0) / n);
}

} // namespace

double grid_bias_allowance(double value_at_c, double value_at_c_shifted) {
    return std::abs(value_at_c_shifted - value_at_c);
}

RegimeParams make_regime_params(const ModelParams& params, Regime expected) {
    validate(params);
    const double threshold = expected_tc(params.mu, params.c) / 3.0;
    const Regime actual = params.horizon_T >= threshold ? Regime::Long : Regime::Short;
    if (actual != expected) {
        throw std::invalid_argument(
            "regime mismatch: horizon_T vs expected_tc/3 does not match the requested regime");
    }
    return {params, actual};
}

std::vector<BoundReport> verify_long_regime(const RegimeParams& rp, const SimConfig& sim,
                                            int n_threads) {
    if (rp.regime != Regime::Long) {
        throw std::invalid_argument("verify_long_regime: requires the long regime");
    }
    make_regime_params(rp.params, Regime::Long); // re-check against the horizon
    const ModelParams& params = rp.params;
    const double e_tc = expected_tc(params.mu, params.c);
    const double ratio = params.horizon_T / e_tc;

    const EstimateCI est_utv = estimate_expected_utv(params, sim, n_threads, 1 * kStride);
    const EstimateCI est_sup_tct =
        estimate_sup_functional(params, sim, SupWindow::TcAndT, n_threads, 2 * kStride);
    ModelParams third = params;
    third.horizon_T = e_tc / 3.0;
    const EstimateCI est_sup_third =
        estimate_sup_functional(third, sim, SupWindow::FixedT, n_threads, 3 * kStride);
    const double hv = hv_mean(params.mu, params.c);

    std::vector<BoundReport> reports;
    {
        auto r = make_report("THM_3_4_LOWER", "0.3 (T/E T_c) E sup over [0,T_c^T] <= E UTV[0,T]",
                             mc_quantity(est_sup_tct, 0.3 * ratio), mc_quantity(est_utv), params,
                             sim);
        r.extras = {{"constant", 0.3}, {"T_over_ETc", ratio}, {"expected_tc", e_tc}};
        if (!est_sup_tct.reliable) r.extras["cap_fraction"] = est_sup_tct.cap_fraction;
        reports.push_back(std::move(r));
    }
    {
        auto r = make_report("THM_3_4_UPPER", "E UTV[0,T] <= 27 (T/E T_c) E sup over [0,T_c^T]",
                             mc_quantity(est_utv), mc_quantity(est_sup_tct, 27.0 * ratio), params,
                             sim);
        r.extras = {{"constant", 27.0}, {"T_over_ETc", ratio}, {"expected_tc", e_tc}};
        reports.push_back(std::move(r));
    }
    {
        auto r = make_report("COR_3_5_LOWER", "3 (T/E T_c) E sup over [0,E T_c/3] <= E UTV[0,T]",
                             mc_quantity(est_sup_third, 3.0 * ratio), mc_quantity(est_utv), params,
                             sim);
        r.extras = {{"constant", 3.0}, {"T_over_ETc", ratio}, {"expected_tc", e_tc}};
        reports.push_back(std::move(r));
    }
    {
        auto r = make_report("COR_3_5_UPPER",
                             "E UTV[0,T] <= 27 (T/E T_c) * closed-form E sup over [0,T_c]",
                             mc_quantity(est_utv), exact_quantity(27.0 * ratio * hv), params, sim);
        r.extras = {{"constant", 27.0}, {"T_over_ETc", ratio}, {"expected_tc", e_tc},
                    {"hv_mean", hv}};
        reports.push_back(std::move(r));
    }
    return reports;
}

std::vector<BoundReport> verify_short_regime(const RegimeParams& rp, const SimConfig& sim,
                                             int n_threads) {
    if (rp.regime != Regime::Short) {
        throw std::invalid_argument("verify_short_regime: requires the short regime");
    }
    make_regime_params(rp.params, Regime::Short);
    const ModelParams& params = rp.params;

    // Both sides from the same paths: the lower bound is then exact pathwise.
    const PairedSupUtv paired = sample_sup_and_utv(params, sim, n_threads, 4 * kStride);
    const EstimateCI est_sup = summarize(paired.sup, sim);
    const EstimateCI est_utv = summarize(paired.utv, sim);

    std::vector<BoundReport> reports;
    {
        auto r = make_report("THM_3_7_LOWER", "E sup over [0,T] <= E UTV[0,T]",
                             mc_quantity(est_sup), mc_quantity(est_utv), params, sim);
        r.extras = {{"constant", 1.0}};
        reports.push_back(std::move(r));
    }
    {
        auto r = make_report("THM_3_7_UPPER_PROOF", "E UTV[0,T] <= (9/2) E sup over [0,T]",
                             mc_quantity(est_utv), mc_quantity(est_sup, 4.5), params, sim);
        r.extras = {{"constant", 4.5}};
        reports.push_back(std::move(r));
    }
    {
        auto r = make_report("THM_3_7_UPPER", "E UTV[0,T] <= 5 E sup over [0,T]",
                             mc_quantity(est_utv), mc_quantity(est_sup, 5.0), params, sim);
        r.extras = {{"constant", 5.0}};
        reports.push_back(std::move(r));
    }
    return reports;
}

std::vector<BoundReport> verify_lemma32(const ModelParams& params, const SimConfig& sim, double T,
                                        int n_threads) {
    const Lemma32Samples samples = sample_lemma32(params, sim, T, n_threads, 5 * kStride);
    const double e = std::exp(1.0);
    const double dom_scale = 0.5 * (1.0 - std::exp(-1.0));

    std::vector<BoundReport> reports;
    {
        double min_margin = std::numeric_limits<double>::infinity();
        long violations = 0;
        for (std::size_t i = 0; i < samples.utv.size(); ++i) {
            const double m = e * samples.discounted[i] - samples.utv[i];
            min_margin = std::min(min_margin, m);
            if (m < -kPathwiseTol) {
                ++violations;
            }
        }
        auto r = make_pathwise_report("LEM_3_2_N10",
                                      "UTV[0,T] <= e * discounted segment sum, every path",
                                      min_margin, params, sim);
        r.extras = {{"violations", static_cast<double>(violations)}, {"T", T}};
        reports.push_back(std::move(r));
    }
    {
        std::vector<double> scaled(samples.discounted.size());
        for (std::size_t i = 0; i < scaled.size(); ++i) {
            scaled[i] = dom_scale * samples.discounted[i];
        }
        const auto qs = quantile_points(scaled, 50);
        const auto p_utv = empirical_ccdf(samples.utv, qs);
        const auto p_scaled = empirical_ccdf(scaled, qs);
        const double n = static_cast<double>(sim.n_paths);

        double min_margin = std::numeric_limits<double>::infinity();
        double slack_at_min = 0.0;
        bool all_ok = true;
        for (std::size_t j = 0; j < qs.size(); ++j) {
            const double diff = p_utv[j] - p_scaled[j];
            const double se =
                std::sqrt(binomial_se(p_utv[j], n) * binomial_se(p_utv[j], n) +
                          binomial_se(p_scaled[j], n) * binomial_se(p_scaled[j], n));
            if (diff < -3.0 * se) {
                all_ok = false;
            }
            if (diff < min_margin) {
                min_margin = diff;
                slack_at_min = 3.0 * se;
            }
        }
        BoundReport r;
        r.claim_id = "LEM_3_2_N11";
        r.description = "CCDF of UTV[0,T] dominates CCDF of (1-1/e)/2 * discounted sum";
        r.lhs = exact_quantity(0.0);
        r.rhs = exact_quantity(min_margin);
        r.margin = min_margin;
        r.slack = slack_at_min;
        r.passed = all_ok;
        r.low_power = sim.n_paths < kLowPowerPaths;
        r.params = params;
        r.sim = sim;
        r.extras = {{"quantiles", 50.0}, {"scale", dom_scale}, {"T", T}};
        reports.push_back(std::move(r));
    }
    return reports;
}

BoundReport verify_lemma33(const ModelParams& params, const SimConfig& sim, int n_threads) {
    long capped = 0;
    const auto tc = sample_tc_times(params, sim, n_threads, &capped, 6 * kStride);
    const double threshold = expected_tc(params.mu, params.c) / 3.0;
    long below = 0;
    for (double t : tc) {
        if (t < threshold) {
            ++below;
        }
    }
    const double n = static_cast<double>(sim.n_paths);
    const double freq = static_cast<double>(below) / n;
    const double se = binomial_se(freq, n);

    auto r = make_report("LEM_3_3", "P(T_c < E T_c / 3) <= 7/9",
                         Quantity{freq, se, false}, exact_quantity(7.0 / 9.0), params, sim);
    r.extras = {{"constant_fraction", 1.0 / 3.0},
                {"constant_bound", 7.0 / 9.0},
                {"threshold", threshold},
                {"cap_fraction", static_cast<double>(capped) / n}};
    return r;
}

namespace {

struct RelationAccumulator {
    double tv_ge_utv = std::numeric_limits<double>::infinity();
    double tv_ge_dtv = std::numeric_limits<double>::infinity();
    double tv_le_sum = std::numeric_limits<double>::infinity();
    double duality = std::numeric_limits<double>::infinity();
    double superadd_tv = std::numeric_limits<double>::infinity();
    double superadd_utv = std::numeric_limits<double>::infinity();
    double superadd_dtv = std::numeric_limits<double>::infinity();

    void absorb(const RelationAccumulator& o) {
        tv_ge_utv = std::min(tv_ge_utv, o.tv_ge_utv);
        tv_ge_dtv = std::min(tv_ge_dtv, o.tv_ge_dtv);
        tv_le_sum = std::min(tv_le_sum, o.tv_le_sum);
        duality = std::min(duality, o.duality);
        superadd_tv = std::min(superadd_tv, o.superadd_tv);
        superadd_utv = std::min(superadd_utv, o.superadd_utv);
        superadd_dtv = std::min(superadd_dtv, o.superadd_dtv);
    }
};

RelationAccumulator relation_margins(const Path& p, double c,
                                     const std::vector<double>& split_points) {
    RelationAccumulator acc;
    const double tv = tv_linear(p, c);
    const double utv = utv_linear(p, c);
    const double dtv = dtv_linear(p, c);
    acc.tv_ge_utv = tv - utv;
    acc.tv_ge_dtv = tv - dtv;
    acc.tv_le_sum = utv + dtv - tv;
    acc.duality = -std::abs(dtv_linear(negate_path(p), c) - utv);

    std::vector<double> cuts;
    cuts.push_back(p.times.front());
    for (double s : split_points) {
        cuts.push_back(s);
    }
    cuts.push_back(p.times.back());
    double sum_tv = 0.0;
    double sum_utv = 0.0;
    double sum_dtv = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Path sub = slice_path(p, cuts[i], cuts[i + 1]);
        sum_tv += tv_linear(sub, c);
        sum_utv += utv_linear(sub, c);
        sum_dtv += dtv_linear(sub, c);
    }
    acc.superadd_tv = tv - sum_tv;
    acc.superadd_utv = utv - sum_utv;
    acc.superadd_dtv = dtv - sum_dtv;
    return acc;
}

} // namespace

std::vector<BoundReport> verify_path_relations(const Path& p, double c,
                                               const std::vector<double>& split_points) {
    if (p.empty()) {
        throw std::invalid_argument("verify_path_relations: empty path");
    }
    for (double s : split_points) {
        if (s < p.times.front() || s > p.times.back()) {
            throw std::invalid_argument("verify_path_relations: split point outside path range");
        }
    }
    const auto acc = relation_margins(p, c, split_points);
    ModelParams params;
    params.c = std::max(c, 1e-300);
    SimConfig sim;
    sim.n_paths = 1;
    sim.n_steps = static_cast<long>(p.size()) - 1;

    std::vector<BoundReport> reports;
    reports.push_back(make_pathwise_report("REL_TV_GE_UTV", "TV >= UTV", acc.tv_ge_utv, params, sim));
    reports.push_back(make_pathwise_report("REL_TV_GE_DTV", "TV >= DTV", acc.tv_ge_dtv, params, sim));
    reports.push_back(
        make_pathwise_report("REL_TV_LE_SUM", "TV <= UTV + DTV", acc.tv_le_sum, params, sim));
    reports.push_back(make_pathwise_report("REL_DUALITY", "UTV(p) == DTV(negated p)", acc.duality,
                                           params, sim));
    reports.push_back(make_pathwise_report("REL_SUPERADD_TV", "sum of sliced TV <= whole TV",
                                           acc.superadd_tv, params, sim));
    reports.push_back(make_pathwise_report("REL_SUPERADD_UTV", "sum of sliced UTV <= whole UTV",
                                           acc.superadd_utv, params, sim));
    reports.push_back(make_pathwise_report("REL_SUPERADD_DTV", "sum of sliced DTV <= whole DTV",
                                           acc.superadd_dtv, params, sim));
    return reports;
}

std::vector<BoundReport> verify_relations_bulk(const ModelParams& params, const SimConfig& sim,
                                               int n_threads) {
    validate(params);
    validate(sim);
    const double T = params.horizon_T;
    const std::vector<double> splits = {0.25 * T, 0.5 * T, 0.75 * T};

    // Minima over paths are order-independent; workers fill disjoint slots.
    std::vector<RelationAccumulator> per_path(sim.n_paths);
    std::vector<double> mono(sim.n_paths);
    for_each_path_public(sim.n_paths, n_threads, [&](long i) {
        const Path p = generate_bm_path(params, sim.n_steps, sim.seed,
                                        7 * kStride + static_cast<std::uint64_t>(i));
        per_path[i] = relation_margins(p, params.c, splits);
        mono[i] = std::min(utv_linear(p, params.c) - utv_linear(p, 2.0 * params.c),
                           tv_linear(p, params.c) - tv_linear(p, 2.0 * params.c));
    });
    RelationAccumulator acc;
    double mono_margin = std::numeric_limits<double>::infinity();
    for (long i = 0; i < sim.n_paths; ++i) {
        acc.absorb(per_path[i]);
        mono_margin = std::min(mono_margin, mono[i]);
    }

    std::vector<BoundReport> reports;
    reports.push_back(
        make_pathwise_report("REL_TV_GE_UTV", "TV >= UTV on every path", acc.tv_ge_utv, params, sim));
    reports.push_back(
        make_pathwise_report("REL_TV_GE_DTV", "TV >= DTV on every path", acc.tv_ge_dtv, params, sim));
    reports.push_back(make_pathwise_report("REL_TV_LE_SUM", "TV <= UTV + DTV on every path",
                                           acc.tv_le_sum, params, sim));
    reports.push_back(make_pathwise_report("REL_DUALITY", "UTV(p) == DTV(negated p) on every path",
                                           acc.duality, params, sim));
    reports.push_back(make_pathwise_report("REL_SUPERADD_TV", "superadditivity of TV",
                                           acc.superadd_tv, params, sim));
    reports.push_back(make_pathwise_report("REL_SUPERADD_UTV", "superadditivity of UTV",
                                           acc.superadd_utv, params, sim));
    reports.push_back(make_pathwise_report("REL_SUPERADD_DTV", "superadditivity of DTV",
                                           acc.superadd_dtv, params, sim));
    reports.push_back(make_pathwise_report("REL_MONO_C", "variation non-increasing in c",
                                           mono_margin, params, sim));
    return reports;
}

BoundReport verify_shift_invariance(const ModelParams& params, const SimConfig& sim, double delta,
                                    int n_threads) {
    validate(params);
    validate(sim);
    if (!(delta > 0.0)) {
        throw std::invalid_argument("verify_shift_invariance: delta must be > 0");
    }
    const double dt = params.horizon_T / static_cast<double>(sim.n_steps);
    const long shift_steps = std::max<long>(1, std::llround(delta / dt));

    // Window A: [0, T] directly. Window B: [delta, T+delta] from an
    // independent batch, rebased by dropping the first shift_steps samples.
    const auto batch_a = sample_utv(params, sim, n_threads, 8 * kStride);

    ModelParams extended = params;
    extended.horizon_T = params.horizon_T + static_cast<double>(shift_steps) * dt;
    SimConfig sim_b = sim;
    sim_b.n_steps = sim.n_steps + shift_steps;
    std::vector<double> batch_b(sim.n_paths);
    {
        const double c = params.c;
        for (long i = 0; i < sim_b.n_paths; ++i) {
            const Path p = generate_bm_path(extended, sim_b.n_steps, sim.seed,
                                            9 * kStride + static_cast<std::uint64_t>(i));
            batch_b[i] = utv_values(
                {p.values.data() + shift_steps, static_cast<std::size_t>(sim.n_steps + 1)}, c);
        }
    }

    std::vector<double> pooled = batch_a;
    pooled.insert(pooled.end(), batch_b.begin(), batch_b.end());
    const auto qs = quantile_points(pooled, 20);
    const auto pa = empirical_ccdf(batch_a, qs);
    const auto pb = empirical_ccdf(batch_b, qs);
    const double n = static_cast<double>(sim.n_paths);

    double min_margin = std::numeric_limits<double>::infinity();
    bool all_ok = true;
    for (std::size_t j = 0; j < qs.size(); ++j) {
        const double se = std::sqrt(binomial_se(pa[j], n) * binomial_se(pa[j], n) +
                                    binomial_se(pb[j], n) * binomial_se(pb[j], n));
        const double slack = std::max(3.0 * se, 1e-12);
        const double margin = slack - std::abs(pa[j] - pb[j]);
        min_margin = std::min(min_margin, margin);
        if (margin < 0.0) {
            all_ok = false;
        }
    }
    BoundReport r;
    r.claim_id = "SHIFT_INVARIANCE";
    r.description = "UTV law over [0,T] matches [delta, T+delta] at 20 quantiles";
    r.lhs = exact_quantity(0.0);
    r.rhs = exact_quantity(min_margin);
    r.margin = min_margin;
    r.slack = 0.0;
    r.passed = all_ok;
    r.low_power = sim.n_paths < kLowPowerPaths;
    r.params = params;
    r.sim = sim;
    r.extras = {{"delta", delta}, {"quantiles", 20.0}};
    return r;
}

std::vector<BoundReport> verify_closed_forms(const ModelParams& params, const SimConfig& sim,
                                             int n_threads) {
    validate(params);
    validate(sim);
    const double e_tc = expected_tc(params.mu, params.c);
    const double dt = e_tc / static_cast<double>(sim.n_steps);
    const double shift = kMonitorBeta * std::sqrt(dt);

    std::vector<BoundReport> reports;
    {
        const EstimateCI est = estimate_expected_tc(params, sim, n_threads, 10 * kStride);
        SimConfig coarse = sim;
        coarse.n_steps = std::max<long>(2, sim.n_steps / 2);
        const EstimateCI probe = estimate_expected_tc(params, coarse, n_threads, 11 * kStride);
        const double allowance =
            grid_bias_allowance(e_tc, expected_tc(params.mu, params.c + shift));

        auto r = make_report("CLOSED_FORM_TC", "E T_c estimate matches the closed form",
                             mc_quantity(est), exact_quantity(e_tc), params, sim);
        r.two_sided = true;
        r.slack += allowance;
        r.passed = std::abs(r.margin) <= r.slack;
        r.extras = {{"bias_allowance", allowance},
                    {"cap_fraction", est.cap_fraction},
                    {"coarse_grid_mean", probe.mean},
                    {"fine_minus_coarse", est.mean - probe.mean}};
        reports.push_back(std::move(r));
    }
    {
        const EstimateCI est =
            estimate_sup_functional(params, sim, SupWindow::UntilTc, n_threads, 12 * kStride);
        const double hv = hv_mean(params.mu, params.c);
        const double allowance = grid_bias_allowance(hv, hv_mean(params.mu, params.c + shift)) +
                                 grid_bias_allowance(hv, hv_mean(params.mu, params.c - shift));

        auto r = make_report("CLOSED_FORM_HV_MEAN",
                             "E (sup rally - c)_+ until T_c matches the closed form",
                             mc_quantity(est), exact_quantity(hv), params, sim);
        r.two_sided = true;
        r.slack += allowance;
        r.passed = std::abs(r.margin) <= r.slack;
        r.extras = {{"bias_allowance", allowance}, {"cap_fraction", est.cap_fraction}};
        reports.push_back(std::move(r));
    }
    return reports;
}

std::vector<BoundReport> run_default_grid(const SimConfig& sim, int n_threads,
                                          const std::string& claim_filter) {
    const auto keep = [&claim_filter](const std::string& id) {
        return claim_filter.empty() || id.find(claim_filter) != std::string::npos;
    };
    const auto append = [&](std::vector<BoundReport>& into, std::vector<BoundReport> batch) {
        for (auto& r : batch) {
            if (keep(r.claim_id)) {
                into.push_back(std::move(r));
            }
        }
    };
    const auto any_kept = [&](std::initializer_list<const char*> ids) {
        for (const char* id : ids) {
            if (keep(id)) {
                return true;
            }
        }
        return false;
    };

    std::vector<BoundReport> all;
    for (double mu : {-1.0, 0.0, 1.0}) {
        for (double c : {0.5, 1.0}) {
            ModelParams base;
            base.mu = mu;
            base.c = c;
            const double e_tc = expected_tc(mu, c);

            if (any_kept({"THM_3_4", "COR_3_5"})) {
                ModelParams long_params = base;
                long_params.horizon_T = 3.0 * e_tc;
                append(all, verify_long_regime(make_regime_params(long_params, Regime::Long), sim,
                                               n_threads));
            }
            if (any_kept({"THM_3_7"})) {
                ModelParams short_params = base;
                short_params.horizon_T = 0.1 * e_tc;
                append(all, verify_short_regime(make_regime_params(short_params, Regime::Short),
                                                sim, n_threads));
            }
            if (any_kept({"LEM_3_2"})) {
                ModelParams p = base;
                p.horizon_T = 1.0;
                append(all, verify_lemma32(p, sim, 1.0, n_threads));
            }
            if (any_kept({"LEM_3_3"})) {
                ModelParams p = base;
                p.horizon_T = 1.0;
                std::vector<BoundReport> batch;
                batch.push_back(verify_lemma33(p, sim, n_threads));
                append(all, std::move(batch));
            }
            if (any_kept({"REL_"})) {
                ModelParams p = base;
                p.horizon_T = 1.0;
                append(all, verify_relations_bulk(p, sim, n_threads));
            }
            if (any_kept({"SHIFT_INVARIANCE"})) {
                ModelParams p = base;
                p.horizon_T = 1.0;
                std::vector<BoundReport> batch;
                batch.push_back(verify_shift_invariance(p, sim, 0.5, n_threads));
                append(all, std::move(batch));
            }
            if (any_kept({"CLOSED_FORM"})) {
                ModelParams p = base;
                p.horizon_T = 1.0;
                append(all, verify_closed_forms(p, sim, n_threads));
            }
        }
    }
    return all;
}

} // namespace truncvar
