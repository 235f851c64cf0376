#pragma once

#include "truncvar/montecarlo.hpp"
#include "truncvar/path.hpp"

#include <map>
#include <string>
#include <vector>

namespace truncvar {

// One side of an inequality: a Monte Carlo estimate or an exact value.
struct Quantity {
    double value = 0.0;
    double std_error = 0.0;
    bool exact = false;
};

// Pass/fail record for one verified inequality. The claim reads
// lhs <= rhs (or |rhs - lhs| <= slack when two_sided), margin = rhs - lhs.
struct BoundReport {
    std::string claim_id;
    std::string description;
    Quantity lhs;
    Quantity rhs;
    double margin = 0.0;
    double slack = 0.0; // statistical allowance on the favorable side
    bool two_sided = false;
    bool passed = false;
    bool low_power = false; // too few paths for the pass/fail to mean much
    ModelParams params;
    SimConfig sim;
    std::map<std::string, double> extras; // claim constants, diagnostics
};

enum class Regime { Long, Short };

struct RegimeParams {
    ModelParams params;
    Regime regime = Regime::Long;
};

// Classifies by horizon against a third of the mean drawdown-hitting time
// and refuses a mismatch with `expected`.
RegimeParams make_regime_params(const ModelParams& params, Regime expected);

std::vector<BoundReport> verify_long_regime(const RegimeParams& rp, const SimConfig& sim,
                                            int n_threads = 0);
std::vector<BoundReport> verify_short_regime(const RegimeParams& rp, const SimConfig& sim,
                                             int n_threads = 0);

// Almost-sure bound (zero violations) and the stochastic-domination bound
// at 50 quantiles, both against the discounted segment sum.
std::vector<BoundReport> verify_lemma32(const ModelParams& params, const SimConfig& sim, double T,
                                        int n_threads = 0);

// P(T_c < E T_c / 3) <= 7/9 with binomial slack.
BoundReport verify_lemma33(const ModelParams& params, const SimConfig& sim, int n_threads = 0);

// Exact pathwise relations on one path: orderings of TV/UTV/DTV, negation
// duality, and superadditivity over the given split points.
std::vector<BoundReport> verify_path_relations(const Path& p, double c,
                                               const std::vector<double>& split_points);

// Same pathwise relations plus monotonicity in c, sweeping simulated paths;
// margins are minima over all paths.
std::vector<BoundReport> verify_relations_bulk(const ModelParams& params, const SimConfig& sim,
                                               int n_threads = 0);

// Distribution of UTV over [0,T] vs an independent window [delta, T+delta],
// compared at 20 quantiles.
BoundReport verify_shift_invariance(const ModelParams& params, const SimConfig& sim, double delta,
                                    int n_threads = 0);

// Closed forms vs their Monte Carlo estimates (two-sided, with a grid-bias
// allowance); also echoes a coarse-grid probe of the discretization bias.
std::vector<BoundReport> verify_closed_forms(const ModelParams& params, const SimConfig& sim,
                                             int n_threads = 0);

// Everything above over the default grid mu in {-1,0,1} x c in {0.5,1}.
// claim_filter, when non-empty, keeps claims whose id contains it.
std::vector<BoundReport> run_default_grid(const SimConfig& sim, int n_threads = 0,
                                          const std::string& claim_filter = "");

// Heuristic closed-form allowance for discrete monitoring of a level-c
// drawdown: the barrier is effectively shifted by ~1.1652*sqrt(dt).
double grid_bias_allowance(double value_at_c, double value_at_c_shifted);

} // namespace truncvar
