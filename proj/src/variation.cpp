#include "truncvar/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace truncvar {

namespace {

void check_level(double c) {
    if (!(c >= 0.0)) {
        throw std::invalid_argument("truncation level c must be >= 0");
    }
    // c == 0 is admitted as the classic-variation limit.
}

void check_path(const Path& p) {
    if (p.times.size() != p.values.size()) {
        throw std::invalid_argument("Path: times and values must have equal length");
    }
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

} // namespace

double utv_values(std::span<const double> xs, double c) {
    check_level(c);
    const std::size_t n = xs.size();
    if (n < 2) {
        return 0.0;
    }
    // best = sup over partitions within the prefix; m = best over buy points j
    // of (prefix value before j) - x_j.
    double best = 0.0;
    double m = -xs[0];
    for (std::size_t i = 1; i < n; ++i) {
        best = std::max(best, m + xs[i] - c);
        m = std::max(m, best - xs[i]); // buying at i resumes from the prefix best
    }
    return best;
}

double dtv_values(std::span<const double> xs, double c) {
    std::vector<double> neg(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        neg[i] = -xs[i];
    }
    return utv_values(neg, c);
}

double tv_values(std::span<const double> xs, double c) {
    check_level(c);
    const std::size_t n = xs.size();
    if (n < 2) {
        return 0.0;
    }
    // Chains may pass through any sample; extending the prefix-best chain
    // through intermediate points only adds non-negative terms, so tracking
    // prefix bests instead of chain-ending bests loses nothing.
    double best = 0.0;
    double m_minus = -xs[0]; // max of (best - x_j)
    double m_plus = xs[0];   // max of (best + x_j)
    for (std::size_t i = 1; i < n; ++i) {
        best = std::max({best, m_minus + xs[i] - c, m_plus - xs[i] - c});
        m_minus = std::max(m_minus, best - xs[i]);
        m_plus = std::max(m_plus, best + xs[i]);
    }
    return best;
}

double utv_linear(const Path& p, double c) {
    check_path(p);
    return utv_values(p.values, c);
}

double dtv_linear(const Path& p, double c) {
    check_path(p);
    return utv_linear(negate_path(p), c);
}

double tv_linear(const Path& p, double c) {
    check_path(p);
    return tv_values(p.values, c);
}

GreedyResult utv_greedy_segments(const Path& p, double c) {
    check_path(p);
    check_level(c);
    GreedyResult out;
    const auto& x = p.values;
    const std::size_t n = x.size();
    if (n == 0) {
        return out;
    }

    std::size_t start = 0;
    while (true) {
        SegmentStats seg;
        seg.start_index = start;
        seg.argmax_index = start;
        seg.argmin_index = start;

        double det_max = x[start];   // running max, drives the stopping rule
        double win_min = x[start];   // running min, drives the drawup
        std::size_t win_min_idx = start;
        double drawup = 0.0;

        std::size_t i = start;
        bool stopped = false;
        while (++i < n) {
            if (x[i] < win_min) {
                win_min = x[i];
                win_min_idx = i;
            }
            drawup = std::max(drawup, x[i] - win_min);
            if (x[i] >= det_max) {
                det_max = x[i];
                seg.argmax_index = i;
                seg.argmin_index = win_min_idx;
            }
            if (det_max - x[i] >= c) {
                seg.tc_index = i;
                stopped = true;
                break;
            }
        }
        seg.max_drawup = drawup;
        out.amount += std::max(drawup - c, 0.0);
        out.segments.push_back(seg);
        if (!stopped) {
            break;
        }
        start = *seg.tc_index;
    }
    return out;
}

namespace {

double quadratic_utv(const std::vector<double>& x, double c) {
    const std::size_t n = x.size();
    if (n < 2) {
        return 0.0;
    }
    // dp[i] = best over partitions within indices [0, i]
    std::vector<double> dp(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        dp[i] = dp[i - 1];
        for (std::size_t j = 0; j < i; ++j) {
            const double before = (j == 0) ? 0.0 : dp[j - 1];
            dp[i] = std::max(dp[i], before + std::max(x[i] - x[j] - c, 0.0));
        }
    }
    return dp[n - 1];
}

double quadratic_tv(const std::vector<double>& x, double c) {
    const std::size_t n = x.size();
    if (n < 2) {
        return 0.0;
    }
    // a[i] = best over chains ending exactly at i
    std::vector<double> a(n, 0.0);
    double best = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            a[i] = std::max(a[i], a[j] + std::max(std::abs(x[i] - x[j]) - c, 0.0));
        }
        best = std::max(best, a[i]);
    }
    return best;
}

} // namespace

double quadratic_oracle(const Path& p, double c, VariationKind kind) {
    check_path(p);
    check_level(c);
    switch (kind) {
        case VariationKind::UTV:
            return quadratic_utv(p.values, c);
        case VariationKind::DTV:
            return quadratic_utv(negate_path(p).values, c);
        case VariationKind::TV:
            return quadratic_tv(p.values, c);
    }
    throw std::invalid_argument("unknown VariationKind");
}

namespace {

// Every interleaved pairing, recursively: pick the next pair (t, s) with
// t >= pos, s > t, then continue from s + 1.
void enumerate_pairs(const std::vector<double>& x, double c, std::size_t pos, double acc,
                     double& best) {
    best = std::max(best, acc);
    for (std::size_t t = pos; t + 1 < x.size(); ++t) {
        for (std::size_t s = t + 1; s < x.size(); ++s) {
            enumerate_pairs(x, c, s + 1, acc + std::max(x[s] - x[t] - c, 0.0), best);
        }
    }
}

// Every chain: pick the next element after `last`.
void enumerate_chains(const std::vector<double>& x, double c, std::size_t last, double acc,
                      double& best) {
    best = std::max(best, acc);
    for (std::size_t next = last + 1; next < x.size(); ++next) {
        enumerate_chains(x, c, next, acc + std::max(std::abs(x[next] - x[last]) - c, 0.0), best);
    }
}

} // namespace

double exhaustive_oracle(const Path& p, double c, VariationKind kind) {
    check_path(p);
    check_level(c);
    if (p.size() > 14) {
        throw std::invalid_argument("exhaustive_oracle: path length must be <= 14");
    }
    if (p.size() < 2) {
        return 0.0;
    }
    double best = 0.0;
    switch (kind) {
        case VariationKind::UTV:
            enumerate_pairs(p.values, c, 0, 0.0, best);
            return best;
        case VariationKind::DTV:
            enumerate_pairs(negate_path(p).values, c, 0, 0.0, best);
            return best;
        case VariationKind::TV:
            for (std::size_t first = 0; first < p.size(); ++first) {
                enumerate_chains(p.values, c, first, 0.0, best);
            }
            return best;
    }
    throw std::invalid_argument("unknown VariationKind");
}

Partition utv_argmax_partition(const Path& p, double c) {
    check_path(p);
    check_level(c);
    Partition part;
    const auto& x = p.values;
    const std::size_t n = x.size();
    if (n < 2) {
        return part;
    }

    // Same recursion as utv_values, but a buy at j resumes from the prefix
    // best strictly before j so the traceback yields strictly interleaved
    // pairs. Ties prefer carrying the earlier partition and the earliest buy.
    std::vector<double> best(n, 0.0);
    // closed_buy[i] = buy index when best[i] was achieved by selling at i,
    // npos when best[i] carries over from i-1.
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> closed_buy(n, npos);

    double m = -x[0];
    std::size_t m_buy = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const double close = m + x[i] - c;
        if (close > best[i - 1]) {
            best[i] = close;
            closed_buy[i] = m_buy;
        } else {
            best[i] = best[i - 1];
        }
        const double cand = best[i - 1] - x[i];
        if (cand > m) {
            m = cand;
            m_buy = i;
        }
    }

    std::size_t i = n - 1;
    std::vector<std::pair<std::size_t, std::size_t>> rev;
    while (true) {
        if (closed_buy[i] == npos) {
            if (i == 0) break;
            --i;
            continue;
        }
        const std::size_t buy = closed_buy[i];
        rev.emplace_back(buy, i);
        if (buy == 0) break;
        i = buy - 1;
    }
    part.pairs.assign(rev.rbegin(), rev.rend());
    return part;
}

double evaluate_partition(const Path& p, const Partition& part, double c) {
    check_path(p);
    double total = 0.0;
    std::size_t prev_sell = 0;
    bool first = true;
    for (const auto& [buy, sell] : part.pairs) {
        if (buy >= sell || sell >= p.size() || (!first && buy <= prev_sell)) {
            throw std::invalid_argument("Partition: pairs must be strictly interleaved and in range");
        }
        total += std::max(p.values[sell] - p.values[buy] - c, 0.0);
        prev_sell = sell;
        first = false;
    }
    return total;
}

std::optional<std::size_t> first_drawdown_time(const Path& p, double c, std::size_t from_index) {
    check_path(p);
    if (from_index >= p.size()) {
        throw std::invalid_argument("first_drawdown_time: from_index out of range");
    }
    double run_max = kNegInf;
    for (std::size_t i = from_index; i < p.size(); ++i) {
        run_max = std::max(run_max, p.values[i]);
        if (run_max - p.values[i] >= c) {
            return i;
        }
    }
    return std::nullopt;
}

double discounted_utv(const Path& p, double c, double T) {
    check_path(p);
    check_level(c);
    if (!(T > 0.0)) {
        throw std::invalid_argument("discounted_utv: T must be > 0");
    }
    const auto& x = p.values;
    const std::size_t n = x.size();
    if (n < 2) {
        return 0.0;
    }

    const double t0 = p.times.front();
    double total = 0.0;
    std::size_t start = 0;
    while (true) {
        const double t_start = p.times[start];
        // Grid-rounding guard: a window end that lands a few ulps past a
        // sample time must still include that sample.
        const double window_end =
            t_start + T + 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t_start + T));

        double det_max = x[start];
        double win_min = x[start];
        double drawup = 0.0;

        std::size_t i = start;
        std::optional<std::size_t> tc;
        while (++i < n) {
            if (p.times[i] <= window_end) {
                win_min = std::min(win_min, x[i]);
                drawup = std::max(drawup, x[i] - win_min);
            }
            det_max = std::max(det_max, x[i]);
            if (det_max - x[i] >= c) {
                tc = i;
                break;
            }
        }
        total += std::exp(-(t_start - t0) / T) * std::max(drawup - c, 0.0);
        if (!tc) {
            break;
        }
        start = *tc;
    }
    return total;
}

} // namespace truncvar
