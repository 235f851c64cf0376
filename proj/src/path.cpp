#include "truncvar/path.hpp"

#include <cmath>
#include <stdexcept>

namespace truncvar {

void validate(const ModelParams& params) {
    if (!(params.sigma > 0.0)) {
        throw std::invalid_argument("ModelParams: sigma must be > 0");
    }
    if (!(params.c > 0.0)) {
        throw std::invalid_argument("ModelParams: c must be > 0");
    }
    if (!(params.horizon_T > 0.0)) {
        throw std::invalid_argument("ModelParams: horizon_T must be > 0");
    }
    if (!std::isfinite(params.mu)) {
        throw std::invalid_argument("ModelParams: mu must be finite");
    }
}

void validate(const SimConfig& sim) {
    if (sim.n_steps < 1) {
        throw std::invalid_argument("SimConfig: n_steps must be >= 1");
    }
    if (sim.n_paths < 1) {
        throw std::invalid_argument("SimConfig: n_paths must be >= 1");
    }
}

std::mt19937_64 make_path_rng(std::uint64_t seed, std::uint64_t path_index) {
    // Split the 64-bit inputs into 32-bit words; seed_seq mixes them into the
    // full generator state.
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(path_index & 0xffffffffu),
                      static_cast<std::uint32_t>(path_index >> 32),
                      0x9e3779b9u};
    return std::mt19937_64(seq);
}

BmSampler::BmSampler(double mu, double dt, std::uint64_t seed, std::uint64_t path_index)
    : rng_(make_path_rng(seed, path_index)),
      normal_(0.0, 1.0),
      mu_(mu),
      dt_(dt),
      sqrt_dt_(std::sqrt(dt)) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("BmSampler: dt must be > 0");
    }
}

double BmSampler::advance() {
    brownian_ += sqrt_dt_ * normal_(rng_);
    ++step_;
    return current();
}

Path generate_bm_path(const ModelParams& params, long n_steps, std::uint64_t seed,
                      std::uint64_t path_index) {
    validate(params);
    if (n_steps < 1) {
        throw std::invalid_argument("generate_bm_path: n_steps must be >= 1");
    }
    const double dt = params.horizon_T / static_cast<double>(n_steps);
    BmSampler sampler(params.mu, dt, seed, path_index);

    Path p;
    p.times.reserve(n_steps + 1);
    p.values.reserve(n_steps + 1);
    p.times.push_back(0.0);
    p.values.push_back(0.0);
    for (long k = 0; k < n_steps; ++k) {
        const double w = sampler.advance();
        p.times.push_back(sampler.time());
        p.values.push_back(w);
    }
    return p;
}

Path generate_gbm_price_path(const ModelParams& params, long n_steps, std::uint64_t seed,
                             std::uint64_t path_index) {
    validate(params);
    if (n_steps < 1) {
        throw std::invalid_argument("generate_gbm_price_path: n_steps must be >= 1");
    }
    const double dt = params.horizon_T / static_cast<double>(n_steps);
    BmSampler sampler(params.mu, dt, seed, path_index);

    Path p;
    p.times.reserve(n_steps + 1);
    p.values.reserve(n_steps + 1);
    p.times.push_back(0.0);
    p.values.push_back(1.0);
    for (long k = 0; k < n_steps; ++k) {
        sampler.advance();
        p.times.push_back(sampler.time());
        p.values.push_back(std::exp(params.mu * sampler.time() + params.sigma * sampler.brownian()));
    }
    return p;
}

Path negate_path(const Path& p) {
    Path out;
    out.times = p.times;
    out.values.reserve(p.values.size());
    for (double v : p.values) {
        out.values.push_back(-v);
    }
    return out;
}

Path slice_path(const Path& p, double a, double b) {
    Path out;
    if (a > b) {
        return out;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.times[i] >= a && p.times[i] <= b) {
            out.times.push_back(p.times[i]);
            out.values.push_back(p.values[i]);
        }
    }
    return out;
}

} // namespace truncvar
