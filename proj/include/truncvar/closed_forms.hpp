#pragma once

#include "truncvar/path.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace truncvar {

struct SeriesConfig {
    int max_terms = 10000;
    double term_tolerance = 1e-12;
};

struct SeriesDiag {
    int terms_used = 0;
    double residual = 0.0;   // achieved residual estimate, not a promise
    bool accelerated = false;
};

// Raised when the eigenvalue series cannot reach the requested tolerance
// within max_terms; carries the best partial evaluation.
class series_truncation_error : public std::runtime_error {
  public:
    series_truncation_error(const std::string& what, double partial, int terms, double res)
        : std::runtime_error(what), partial_sum(partial), terms_used(terms), residual(res) {}
    double partial_sum;
    int terms_used;
    double residual;
};

// Raised when no admissible splitting step exists for the exponential-moment
// bound (the Laplace factor is too large at every step down to T*1e-6).
class no_feasible_delta_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Mean time until the drawdown of W first reaches c:
// (e^{2 mu c} - 1 - 2 mu c) / (2 mu^2), series near mu*c = 0.
double expected_tc(double mu, double c);

// (E T_c)^2 / E T_c^2; lies in (1/2, 1], tends to 3/5 as mu*c -> 0.
double tc_moment_ratio(double mu, double c);

// P(sup of rally before the drawdown stop >= y), y > c.
// Prefactor times exp(-2 mu (y - c)/(e^{2 mu c} - 1)); mu = 0 by limit.
double hv_tail(double mu, double c, double y);

// E (sup rally - c)_+ up to the drawdown stop = prefactor / rate.
double hv_mean(double mu, double c);

// First n positive roots of mu_y*sin(theta) + theta*cos(theta) = 0 taken one
// per bracket ((k-1/2)pi, (k+1/2)pi). mu_y = 0 degenerates to (k-1/2)pi.
std::vector<double> eigenroots_theta(double mu_y, int n);

// Positive root of mu_y*sinh(eta) + eta*cosh(eta) = 0; exists iff mu_y < -1.
std::optional<double> eigenroot_eta(double mu_y);

// P(sup_{0<=t<=s<=T} (W_s - W_t) >= y) for W with drift mu, via the
// eigenvalue series with its hyperbolic branch. Result clamped to [0, 1].
double drawup_cdf_complement(double y, double mu, double T, const SeriesConfig& cfg = {},
                             SeriesDiag* diag = nullptr);

// E exp(alpha * sup_{0<=t<=T} W_t) by quadrature over the reflection tail.
double sup_bm_mgf(double alpha, double mu, double T);

struct ExpMomentBound {
    double bound = 0.0;
    double delta = 0.0; // splitting step the bound was assembled at
};

// Finite upper bound for E exp(alpha * TV^c[0,T] ^ M), assembled from the
// one-step Laplace factor iterated ceil(T/delta) times. delta is the largest
// step keeping the factor denominator >= 1/2.
ExpMomentBound exp_moment_upper_bound(double alpha, const ModelParams& params);

} // namespace truncvar
