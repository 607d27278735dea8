#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace llrss::optim {

using Vec2 = std::array<double, 2>;

struct Problem {
    /// May return +inf to reject a point (e.g. outside the admissible region).
    std::function<double(const Vec2&)> value;
    std::function<Vec2(const Vec2&)> gradient;
};

struct Options {
    double simplex_step = 0.1;
    std::size_t simplex_max_iter = 400;
    double simplex_ftol = 1e-9;
    std::size_t max_iter = 200;
    double grad_tol = 1e-8;
    double step_tol = 1e-10;
    /// A run counts as converged when the final gradient norm is below this.
    double accept_grad_tol = 1e-6;
    bool record_trace = false;
};

struct Result {
    Vec2 x{};
    double value = 0.0;
    Vec2 grad{};
    double grad_norm = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    /// Objective at each accepted iterate when Options::record_trace is set.
    std::vector<double> trace;
};

double norm(const Vec2& v) noexcept;

/// Nelder-Mead from x0; returns the best vertex.
Result nelder_mead(const Problem& prob, const Vec2& x0, const Options& opt);

/// BFGS with Armijo backtracking from x0.
Result bfgs(const Problem& prob, const Vec2& x0, const Options& opt);

/// Damped Newton with a Hessian from central differences of the analytic
/// gradient, Armijo backtracking, and a positive-definite shift.
Result newton(const Problem& prob, const Vec2& x0, const Options& opt);

/// Nelder-Mead to locate the basin, then Newton polish.
Result minimize(const Problem& prob, const Vec2& x0, const Options& opt);

}  // namespace llrss::optim
