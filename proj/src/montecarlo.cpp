#include "truncvar/montecarlo.hpp"

#include "truncvar/closed_forms.hpp"
#include "truncvar/variation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace truncvar {

namespace {

constexpr int kMaxChunks = 50; // cap for open-ended stopping-time windows

int resolve_threads(int n_threads, long n_paths) {
    int n = n_threads;
    if (n <= 0) {
        n = static_cast<int>(std::thread::hardware_concurrency());
        if (n <= 0) {
            n = 1;
        }
    }
    return static_cast<int>(std::min<long>(n, std::max<long>(n_paths, 1)));
}

// Static contiguous split over path indices; workers never share state, so
// the result vectors are filled identically for any thread count.
template <class Fn>
void for_each_path(long n_paths, int n_threads, Fn&& fn) {
    const int workers = resolve_threads(n_threads, n_paths);
    if (workers <= 1) {
        for (long i = 0; i < n_paths; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const long block = (n_paths + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long lo = w * block;
        const long hi = std::min(n_paths, lo + block);
        if (lo >= hi) {
            break;
        }
        threads.emplace_back([lo, hi, &fn] {
            for (long i = lo; i < hi; ++i) {
                fn(i);
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
}

} // namespace

void parallel_for_paths(long n_paths, int n_threads, const std::function<void(long)>& fn) {
    for_each_path(n_paths, n_threads, fn);
}

namespace {

double pairwise_sum_span(const double* xs, std::size_t n) {
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += xs[i];
        }
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_span(xs, half) + pairwise_sum_span(xs + half, n - half);
}

} // namespace

double pairwise_sum(const std::vector<double>& xs) {
    return pairwise_sum_span(xs.data(), xs.size());
}

EstimateCI summarize(const std::vector<double>& samples, const SimConfig& sim) {
    const long n = static_cast<long>(samples.size());
    if (n < 2) {
        throw std::invalid_argument("summarize: need at least 2 samples");
    }
    EstimateCI est;
    est.n_paths = n;
    est.n_steps = sim.n_steps;
    est.seed = sim.seed;
    est.mean = pairwise_sum(samples) / static_cast<double>(n);
    std::vector<double> sq(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double d = samples[i] - est.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    est.std_error = std::sqrt(var / static_cast<double>(n));
    return est;
}

std::vector<double> sample_tc_times(const ModelParams& params, const SimConfig& sim,
                                    int n_threads, long* n_capped, std::uint64_t path_offset) {
    validate(params);
    validate(sim);
    const double chunk_T = expected_tc(params.mu, params.c);
    const double dt = chunk_T / static_cast<double>(sim.n_steps);
    const long max_steps = static_cast<long>(kMaxChunks) * sim.n_steps;
    const double c = params.c;

    std::vector<double> out(sim.n_paths);
    std::atomic<long> capped{0};
    for_each_path(sim.n_paths, n_threads, [&](long i) {
        BmSampler bm(params.mu, dt, sim.seed, path_offset + static_cast<std::uint64_t>(i));
        double run_max = 0.0;
        double t_hit = static_cast<double>(kMaxChunks) * chunk_T;
        bool hit = false;
        for (long k = 0; k < max_steps; ++k) {
            const double w = bm.advance();
            run_max = std::max(run_max, w);
            if (run_max - w >= c) {
                t_hit = bm.time();
                hit = true;
                break;
            }
        }
        if (!hit) {
            capped.fetch_add(1, std::memory_order_relaxed);
        }
        out[i] = t_hit;
    });
    if (n_capped != nullptr) {
        *n_capped = capped.load();
    }
    return out;
}

std::vector<double> sample_utv(const ModelParams& params, const SimConfig& sim, int n_threads,
                               std::uint64_t path_offset) {
    validate(params);
    validate(sim);
    const double dt = params.horizon_T / static_cast<double>(sim.n_steps);
    const double c = params.c;

    std::vector<double> out(sim.n_paths);
    for_each_path(sim.n_paths, n_threads, [&, dt, c](long i) {
        thread_local std::vector<double> buf;
        buf.clear();
        buf.reserve(sim.n_steps + 1);
        BmSampler bm(params.mu, dt, sim.seed, path_offset + static_cast<std::uint64_t>(i));
        buf.push_back(0.0);
        for (long k = 0; k < sim.n_steps; ++k) {
            buf.push_back(bm.advance());
        }
        out[i] = utv_values(buf, c);
    });
    return out;
}

std::vector<double> sample_sup_functional(const ModelParams& params, const SimConfig& sim,
                                          SupWindow window, int n_threads, long* n_capped,
                                          std::uint64_t path_offset) {
    validate(params);
    validate(sim);
    const double c = params.c;

    // Open-ended windows use the hitting-time scale as the chunk horizon.
    double dt = 0.0;
    long max_steps = 0;
    switch (window) {
        case SupWindow::FixedT:
            dt = params.horizon_T / static_cast<double>(sim.n_steps);
            max_steps = sim.n_steps;
            break;
        case SupWindow::UntilTc:
            dt = expected_tc(params.mu, params.c) / static_cast<double>(sim.n_steps);
            max_steps = static_cast<long>(kMaxChunks) * sim.n_steps;
            break;
        case SupWindow::TcAndT: {
            dt = expected_tc(params.mu, params.c) / static_cast<double>(sim.n_steps);
            max_steps = std::max<long>(1, std::llround(params.horizon_T / dt));
            break;
        }
    }
    const bool stop_at_tc = window != SupWindow::FixedT;

    std::vector<double> out(sim.n_paths);
    std::atomic<long> capped{0};
    for_each_path(sim.n_paths, n_threads, [&](long i) {
        BmSampler bm(params.mu, dt, sim.seed, path_offset + static_cast<std::uint64_t>(i));
        double run_max = 0.0;
        double run_min = 0.0;
        double drawup = 0.0;
        bool hit = false;
        for (long k = 0; k < max_steps; ++k) {
            const double w = bm.advance();
            run_min = std::min(run_min, w);
            drawup = std::max(drawup, w - run_min);
            run_max = std::max(run_max, w);
            if (stop_at_tc && run_max - w >= c) {
                hit = true;
                break;
            }
        }
        if (window == SupWindow::UntilTc && !hit) {
            capped.fetch_add(1, std::memory_order_relaxed);
        }
        out[i] = std::max(drawup - c, 0.0);
    });
    if (n_capped != nullptr) {
        *n_capped = capped.load();
    }
    return out;
}

std::vector<double> sample_max_drawup(const ModelParams& params, const SimConfig& sim,
                                      int n_threads, std::uint64_t path_offset) {
    validate(params);
    validate(sim);
    const double dt = params.horizon_T / static_cast<double>(sim.n_steps);

    std::vector<double> out(sim.n_paths);
    for_each_path(sim.n_paths, n_threads, [&](long i) {
        BmSampler bm(params.mu, dt, sim.seed, path_offset + static_cast<std::uint64_t>(i));
        double run_min = 0.0;
        double drawup = 0.0;
        for (long k = 0; k < sim.n_steps; ++k) {
            const double w = bm.advance();
            run_min = std::min(run_min, w);
            drawup = std::max(drawup, w - run_min);
        }
        out[i] = drawup;
    });
    return out;
}

PairedSupUtv sample_sup_and_utv(const ModelParams& params, const SimConfig& sim, int n_threads,
                                std::uint64_t path_offset) {
    validate(params);
    validate(sim);
    const double dt = params.horizon_T / static_cast<double>(sim.n_steps);
    const double c = params.c;

    PairedSupUtv out;
    out.sup.resize(sim.n_paths);
    out.utv.resize(sim.n_paths);
    for_each_path(sim.n_paths, n_threads, [&, dt, c](long i) {
        thread_local std::vector<double> buf;
        buf.clear();
        buf.reserve(sim.n_steps + 1);
        BmSampler bm(params.mu, dt, sim.seed, path_offset + static_cast<std::uint64_t>(i));
        buf.push_back(0.0);
        double run_min = 0.0;
        double drawup = 0.0;
        for (long k = 0; k < sim.n_steps; ++k) {
            const double w = bm.advance();
            buf.push_back(w);
            run_min = std::min(run_min, w);
            drawup = std::max(drawup, w - run_min);
        }
        out.sup[i] = std::max(drawup - c, 0.0);
        out.utv[i] = utv_values(buf, c);
    });
    return out;
}

Lemma32Samples sample_lemma32(const ModelParams& params, const SimConfig& sim, double T,
                              int n_threads, std::uint64_t path_offset) {
    validate(params);
    validate(sim);
    if (!(T > 0.0)) {
        throw std::invalid_argument("sample_lemma32: T must be > 0");
    }
    // Simulate on [0, 2T]: every segment window that matters for the
    // almost-sure bound ends by 2T.
    const long half_steps = (sim.n_steps + 1) / 2;
    const long total_steps = 2 * half_steps;
    const double dt = T / static_cast<double>(half_steps);
    const double c = params.c;

    Lemma32Samples out;
    out.utv.resize(sim.n_paths);
    out.discounted.resize(sim.n_paths);
    for_each_path(sim.n_paths, n_threads, [&](long i) {
        thread_local Path p;
        p.times.clear();
        p.values.clear();
        p.times.reserve(total_steps + 1);
        p.values.reserve(total_steps + 1);
        BmSampler bm(params.mu, dt, sim.seed, path_offset + static_cast<std::uint64_t>(i));
        p.times.push_back(0.0);
        p.values.push_back(0.0);
        for (long k = 0; k < total_steps; ++k) {
            const double w = bm.advance();
            p.times.push_back(bm.time());
            p.values.push_back(w);
        }
        out.utv[i] = utv_values({p.values.data(), static_cast<std::size_t>(half_steps + 1)}, c);
        out.discounted[i] = discounted_utv(p, c, T);
    });
    return out;
}

EstimateCI estimate_expected_tc(const ModelParams& params, const SimConfig& sim, int n_threads,
                                std::uint64_t path_offset) {
    long capped = 0;
    const auto samples = sample_tc_times(params, sim, n_threads, &capped, path_offset);
    EstimateCI est = summarize(samples, sim);
    est.cap_fraction = static_cast<double>(capped) / static_cast<double>(sim.n_paths);
    est.reliable = est.cap_fraction <= 0.01;
    return est;
}

EstimateCI estimate_expected_utv(const ModelParams& params, const SimConfig& sim, int n_threads,
                                 std::uint64_t path_offset) {
    return summarize(sample_utv(params, sim, n_threads, path_offset), sim);
}

EstimateCI estimate_sup_functional(const ModelParams& params, const SimConfig& sim,
                                   SupWindow window, int n_threads, std::uint64_t path_offset) {
    long capped = 0;
    const auto samples = sample_sup_functional(params, sim, window, n_threads, &capped, path_offset);
    EstimateCI est = summarize(samples, sim);
    est.cap_fraction = static_cast<double>(capped) / static_cast<double>(sim.n_paths);
    est.reliable = est.cap_fraction <= 0.01;
    return est;
}

ExpMomentEstimate estimate_exp_moment(double alpha, const ModelParams& params,
                                      const SimConfig& sim, double truncation_M, int n_threads,
                                      std::uint64_t path_offset) {
    validate(params);
    validate(sim);
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("estimate_exp_moment: alpha must be > 0");
    }
    if (!(truncation_M > 0.0)) {
        throw std::invalid_argument("estimate_exp_moment: truncation_M must be > 0");
    }
    const double dt = params.horizon_T / static_cast<double>(sim.n_steps);
    const double c = params.c;

    std::vector<double> full(sim.n_paths);
    std::vector<double> half(sim.n_paths);
    for_each_path(sim.n_paths, n_threads, [&, dt, c](long i) {
        thread_local std::vector<double> buf;
        buf.clear();
        buf.reserve(sim.n_steps + 1);
        BmSampler bm(params.mu, dt, sim.seed, path_offset + static_cast<std::uint64_t>(i));
        buf.push_back(0.0);
        for (long k = 0; k < sim.n_steps; ++k) {
            buf.push_back(bm.advance());
        }
        const double tv = tv_values(buf, c);
        full[i] = std::exp(alpha * std::min(tv, truncation_M));
        half[i] = std::exp(alpha * std::min(tv, 0.5 * truncation_M));
    });
    return {summarize(full, sim), summarize(half, sim)};
}

std::vector<double> empirical_ccdf(const std::vector<double>& samples,
                                   const std::vector<double>& query) {
    if (samples.empty()) {
        throw std::invalid_argument("empirical_ccdf: samples must be non-empty");
    }
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    out.reserve(query.size());
    const double n = static_cast<double>(sorted.size());
    for (double q : query) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), q);
        out.push_back(static_cast<double>(sorted.end() - it) / n);
    }
    return out;
}

} // namespace truncvar
