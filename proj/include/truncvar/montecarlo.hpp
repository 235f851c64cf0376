#pragma once

#include "truncvar/path.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace truncvar {

// Runs fn(path_index) over [0, n_paths) with a static split over workers;
// n_threads <= 0 means hardware concurrency.
void parallel_for_paths(long n_paths, int n_threads, const std::function<void(long)>& fn);

struct EstimateCI {
    double mean = 0.0;
    double std_error = 0.0;
    long n_paths = 0;
    long n_steps = 0;
    std::uint64_t seed = 0;
    double cap_fraction = 0.0; // fraction of paths that hit the simulation cap
    bool reliable = true;      // false when cap_fraction > 1%
};

enum class SupWindow {
    FixedT,  // [0, T]
    UntilTc, // [0, T_c], chunked until the drawdown stop, capped at 50 chunks
    TcAndT,  // [0, T_c ^ T]
};

// Order-independent reduction (recursive pairwise), so threaded and serial
// runs produce identical bits.
double pairwise_sum(const std::vector<double>& xs);

// Two-pass mean / standard error over per-path samples; requires n >= 2.
EstimateCI summarize(const std::vector<double>& samples, const SimConfig& sim);

// Per-path samplers. Each is a deterministic function of (sim.seed,
// path_offset + path index); path_offset separates the substreams of
// different estimators sharing one master seed.

std::vector<double> sample_tc_times(const ModelParams& params, const SimConfig& sim,
                                    int n_threads = 0, long* n_capped = nullptr,
                                    std::uint64_t path_offset = 0);

std::vector<double> sample_utv(const ModelParams& params, const SimConfig& sim,
                               int n_threads = 0, std::uint64_t path_offset = 0);

std::vector<double> sample_sup_functional(const ModelParams& params, const SimConfig& sim,
                                          SupWindow window, int n_threads = 0,
                                          long* n_capped = nullptr, std::uint64_t path_offset = 0);

// Plain max drawup over [0, T] with no truncation level subtracted.
std::vector<double> sample_max_drawup(const ModelParams& params, const SimConfig& sim,
                                      int n_threads = 0, std::uint64_t path_offset = 0);

// (sup drawup - c)_+ and UTV from the same fixed-horizon paths.
struct PairedSupUtv {
    std::vector<double> sup;
    std::vector<double> utv;
};
PairedSupUtv sample_sup_and_utv(const ModelParams& params, const SimConfig& sim,
                                int n_threads = 0, std::uint64_t path_offset = 0);

// UTV over [0, T] and the discounted segment sum over [0, 2T], per path.
struct Lemma32Samples {
    std::vector<double> utv;
    std::vector<double> discounted;
};
Lemma32Samples sample_lemma32(const ModelParams& params, const SimConfig& sim, double T,
                              int n_threads = 0, std::uint64_t path_offset = 0);

EstimateCI estimate_expected_tc(const ModelParams& params, const SimConfig& sim,
                                int n_threads = 0, std::uint64_t path_offset = 0);
EstimateCI estimate_expected_utv(const ModelParams& params, const SimConfig& sim,
                                 int n_threads = 0, std::uint64_t path_offset = 0);
EstimateCI estimate_sup_functional(const ModelParams& params, const SimConfig& sim,
                                   SupWindow window, int n_threads = 0,
                                   std::uint64_t path_offset = 0);

struct ExpMomentEstimate {
    EstimateCI at_M;
    EstimateCI at_half_M; // same paths truncated at M/2, exposes truncation drift
};
ExpMomentEstimate estimate_exp_moment(double alpha, const ModelParams& params,
                                      const SimConfig& sim, double truncation_M,
                                      int n_threads = 0, std::uint64_t path_offset = 0);

// Fraction of samples >= each query point; non-increasing in the query.
std::vector<double> empirical_ccdf(const std::vector<double>& samples,
                                   const std::vector<double>& query);

} // namespace truncvar
