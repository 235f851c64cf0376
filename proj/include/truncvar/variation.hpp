#pragma once

#include "truncvar/path.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace truncvar {

enum class VariationKind { TV, UTV, DTV };

// Index pairs (t_i, s_i) with t_1 < s_1 < t_2 < s_2 < ... realizing a
// variation supremum. Indices refer to Path samples.
struct Partition {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// One segment of the greedy decomposition between consecutive stopping times
// of the drawdown process.
struct SegmentStats {
    std::size_t start_index = 0;
    // First index i > start with running max - value >= c; absent for the
    // trailing partial segment.
    std::optional<std::size_t> tc_index;
    std::size_t argmax_index = 0; // last attainment of the segment running max
    std::size_t argmin_index = 0; // min over [start, argmax]
    double max_drawup = 0.0;      // sup of x_s - x_t, start <= t <= s <= segment end
};

struct GreedyResult {
    double amount = 0.0;
    std::vector<SegmentStats> segments;
};

// Value-sequence forms; the sample times never enter the suprema.
double utv_values(std::span<const double> xs, double c);
double dtv_values(std::span<const double> xs, double c);
double tv_values(std::span<const double> xs, double c);

// sup over interleaved index pairs of sum of (x_s - x_t - c)_+, O(n).
double utv_linear(const Path& p, double c);
// Mirror image; computed as utv_linear(negate_path(p), c).
double dtv_linear(const Path& p, double c);
// sup over index chains of sum of (|x_next - x_prev| - c)_+, O(n).
double tv_linear(const Path& p, double c);

// Forward pass that cuts the path at each drawdown stopping time and adds
// (max drawup - c)_+ per segment. Equals utv_linear exactly.
GreedyResult utv_greedy_segments(const Path& p, double c);

// O(n^2) reference dynamic program, kept independent of the linear recursions.
double quadratic_oracle(const Path& p, double c, VariationKind kind);

// Ground truth by literal enumeration of all partitions; refuses n > 14.
double exhaustive_oracle(const Path& p, double c, VariationKind kind);

// Traceback of the linear UTV recursion; ties broken toward the
// earliest-index partition; only strictly positive terms are kept.
Partition utv_argmax_partition(const Path& p, double c);

// Sum of (x_s - x_t - c)_+ over the pairs of `part`.
double evaluate_partition(const Path& p, const Partition& part, double c);

// Smallest index i >= from_index with max_{from<=j<=i} x_j - x_i >= c.
std::optional<std::size_t> first_drawdown_time(const Path& p, double c, std::size_t from_index);

// Discount-weighted segment sum: each segment between consecutive drawdown
// stopping times contributes exp(-elapsed/T) times its windowed drawup
// excess, the window being capped at segment start + T. Truncated at the
// path end.
double discounted_utv(const Path& p, double c, double T);

} // namespace truncvar
