#pragma once

// Special functions used by the closed-form DPD expressions. All functions
// take strictly positive real arguments (or a probability for the normal
// quantile) and throw std::domain_error otherwise.

namespace llrss::specfn {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b), evaluated with
/// Stirling corrections when either argument is large so that the three
/// large log-gamma values never cancel.
double log_beta(double a, double b);

double digamma(double x);
double trigamma(double x);

/// Standard normal CDF (thin wrapper over erfc).
double std_normal_cdf(double x);

/// Inverse of the standard normal CDF for 0 < p < 1.
double std_normal_quantile(double p);

}  // namespace llrss::specfn
