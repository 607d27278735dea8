#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "llrss/dpd.hpp"
#include "llrss/model.hpp"

namespace llrss::quad {

/// Integrands against the weight f_i(y)^(tau+1), with s the score of ln f_i.
enum class Integrand { power, score_alpha, score_beta, score_alpha_sq, score_beta_sq, score_cross };

std::string_view to_string(Integrand k) noexcept;

struct IntegralSpec {
    Integrand kind;
    LLParams params;
    RankStat rank;
    Tuning tau;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    /// Integral of the absolute integrand, a natural scale for relative error.
    double l1 = 0.0;
    std::size_t evaluations = 0;
};

/// Refinement ran out of intervals before meeting the tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best, double bound)
        : std::runtime_error(what), best_(best), bound_(bound) {}
    double best_estimate() const noexcept { return best_; }
    double error_bound() const noexcept { return bound_; }

private:
    double best_;
    double bound_;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t initial_intervals = 16;
    std::size_t max_intervals = 4000;
};

/// Globally adaptive Gauss-Kronrod (7/15) over (lo, hi). The integrand is
/// never evaluated at the endpoints.
QuadResult integrate_interval(const std::function<double(double)>& g, double lo, double hi,
                              const QuadOptions& opt = {});

/// Integral over (0, inf) through x = scale t / (1 - t).
QuadResult integrate_half_line(const std::function<double(double)>& g, double scale, const QuadOptions& opt = {});

/// The defining integral of one closed form, computed numerically.
QuadResult integrate(const IntegralSpec& spec, const QuadOptions& opt = {});

}  // namespace llrss::quad
