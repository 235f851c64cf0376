#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace truncvar {

// Sampled process path: values[i] observed at times[i]. Simulated paths live
// on a uniform grid with strictly increasing times; user-supplied paths only
// need non-decreasing times and equal lengths.
struct Path {
    std::vector<double> times;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
};

// Parameters of W_t = B_t + mu*t and of the price process exp(mu*t + sigma*B_t).
struct ModelParams {
    double mu = 0.0;        // drift per unit time
    double sigma = 1.0;     // volatility > 0 (price process only; W has unit vol)
    double c = 1.0;         // truncation level > 0
    double horizon_T = 1.0; // time horizon > 0
};

struct SimConfig {
    long n_steps = 1000;
    long n_paths = 10000;
    std::uint64_t seed = 0;
};

void validate(const ModelParams& params);
void validate(const SimConfig& sim);

// RNG for path `path_index` under master `seed`. State is mixed from
// (seed, path_index) through std::seed_seq, so any path can be regenerated
// on its own, in any order, on any worker.
std::mt19937_64 make_path_rng(std::uint64_t seed, std::uint64_t path_index);

// Streams W_t = B_t + mu*t on the uniform grid t_k = k*dt for a single path.
// Monte Carlo workers consume this directly instead of materializing Path
// objects; generate_bm_path is a thin wrapper, so both produce identical
// values for the same (seed, path_index, dt).
class BmSampler {
  public:
    BmSampler(double mu, double dt, std::uint64_t seed, std::uint64_t path_index);

    // Advances to t_{k+1} and returns W there.
    double advance();

    double current() const { return mu_ * time() + brownian_; }
    double brownian() const { return brownian_; }
    double time() const { return static_cast<double>(step_) * dt_; }
    long step() const { return step_; }

  private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_;
    double mu_;
    double dt_;
    double sqrt_dt_;
    double brownian_ = 0.0;
    long step_ = 0;
};

// n_steps+1 samples of W on the uniform grid over [0, horizon_T]; W_0 = 0,
// increments are N(mu*dt, dt).
Path generate_bm_path(const ModelParams& params, long n_steps, std::uint64_t seed,
                      std::uint64_t path_index);

// Price path exp(mu*t + sigma*B_t) built from the same Gaussian stream as
// generate_bm_path; value at t=0 is 1.
Path generate_gbm_price_path(const ModelParams& params, long n_steps, std::uint64_t seed,
                             std::uint64_t path_index);

// Same times, values multiplied by -1.
Path negate_path(const Path& p);

// Samples with a <= t <= b, order preserved. For a > b the result is empty
// (and any variation of it evaluates to 0).
Path slice_path(const Path& p, double a, double b);

} // namespace truncvar
