#include "llrss/dpd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "llrss/classical.hpp"
#include "llrss/specfn.hpp"

namespace llrss {

Tuning::Tuning(double tau) : tau_(tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw std::domain_error("Tuning: tau must be finite and non-negative, got " + std::to_string(tau));
    }
}

namespace dpd {
namespace {

void require_positive_tau(const Tuning& t, const char* fn) {
    if (!(t.tau() > 0.0)) throw std::domain_error(std::string(fn) + ": tau must be positive");
}

std::size_t distinct_count(const RankedSample& s) {
    std::vector<double> v(s.values().begin(), s.values().end());
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

// (1/n) sum [I_i - (1 + 1/tau) expm1(tau ln f_i)], which equals H + (1 + 1/tau).
// Dropping the constant keeps the small-tau objective free of cancellation.
double shifted_objective(const RankedSample& s, const LLParams& p, const Tuning& t) {
    const std::size_t n = s.n();
    const double tau = t.tau();
    double sum = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const RankStat r(i, n);
        sum += integral_term(p, r, t) - (1.0 + 1.0 / tau) * std::expm1(tau * model::log_order_pdf(p, r, s[i - 1]));
    }
    return sum / static_cast<double>(n);
}

}  // namespace

BetaArgs beta_args(const LLParams& p, const RankStat& r, const Tuning& t) {
    const double b = p.beta();
    const double tau = t.tau();
    const auto id = static_cast<double>(r.i());
    const auto nd = static_cast<double>(r.n());
    const BetaArgs out{(nd - id + 1.0) * (tau + 1.0) + tau / b, id * (tau + 1.0) - tau / b};
    if (!(out.lower > 0.0)) {
        throw std::domain_error("beta_args: beta(tau+1) <= tau (beta=" + std::to_string(b) +
                                ", tau=" + std::to_string(tau) + ")");
    }
    return out;
}

bool admissible(double beta, double tau) noexcept { return beta * (tau + 1.0) > tau; }

double log_integral_term(const LLParams& p, const RankStat& r, const Tuning& t) {
    const BetaArgs ab = beta_args(p, r, t);
    const double tau = t.tau();
    return (tau + 1.0) * model::log_comb_c(r.i(), r.n()) + tau * std::log(p.beta() / p.alpha()) +
           specfn::log_beta(ab.upper, ab.lower);
}

double integral_term(const LLParams& p, const RankStat& r, const Tuning& t) {
    return std::exp(log_integral_term(p, r, t));
}

double objective(const RankedSample& s, const LLParams& p, const Tuning& t) {
    require_positive_tau(t, "dpd::objective");
    return shifted_objective(s, p, t) - (1.0 + 1.0 / t.tau());
}

std::array<double, 2> gradient(const RankedSample& s, const LLParams& p, const Tuning& t) {
    require_positive_tau(t, "dpd::gradient");
    const std::size_t n = s.n();
    const double tau = t.tau();
    const double a = p.alpha();
    const double b = p.beta();
    std::array<double, 2> g{0.0, 0.0};
    for (std::size_t i = 1; i <= n; ++i) {
        const RankStat r(i, n);
        const BetaArgs ab = beta_args(p, r, t);
        const double integral = integral_term(p, r, t);
        g[0] += -(tau / a) * integral;
        g[1] += integral * (tau / b) * (1.0 + (specfn::digamma(ab.lower) - specfn::digamma(ab.upper)) / b);

        const double weight = (1.0 + tau) * std::exp(tau * model::log_order_pdf(p, r, s[i - 1]));
        const auto sc = model::order_score(p, r, s[i - 1]);
        g[0] -= weight * sc[0];
        g[1] -= weight * sc[1];
    }
    g[0] /= static_cast<double>(n);
    g[1] /= static_cast<double>(n);
    return g;
}

FitResult fit_mdpde(const RankedSample& s, const Tuning& t, std::optional<LLParams> init, const FitOptions& options) {
    require_positive_tau(t, "fit_mdpde");
    if (distinct_count(s) < 2) throw std::domain_error("fit_mdpde: need at least two distinct observations");
    const double tau = t.tau();

    LLParams start = init.value_or(classical::robust_start(s));
    // beta = 1 is admissible for every tau since tau / (tau + 1) < 1.
    if (!admissible(start.beta(), tau)) start = LLParams(start.alpha(), 1.0);

    optim::Problem prob;
    prob.value = [&](const optim::Vec2& x) {
        if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || std::abs(x[0]) > 700.0 || std::abs(x[1]) > 700.0)
            return std::numeric_limits<double>::infinity();
        const double beta = std::exp(x[1]);
        if (!admissible(beta, tau)) return std::numeric_limits<double>::infinity();
        return shifted_objective(s, LLParams(std::exp(x[0]), beta), t);
    };
    prob.gradient = [&](const optim::Vec2& x) {
        const LLParams p(std::exp(x[0]), std::exp(x[1]));
        const auto g = gradient(s, p, t);
        return optim::Vec2{g[0] * p.alpha(), g[1] * p.beta()};
    };
    auto res = optim::minimize(prob, {std::log(start.alpha()), std::log(start.beta())}, options.optimizer);
    const double shift = 1.0 + 1.0 / tau;
    for (double& v : res.trace) v -= shift;
    return FitResult{LLParams(std::exp(res.x[0]), std::exp(res.x[1])), res.value - shift, res.converged,
                     res.iterations, res.grad_norm, std::move(res.trace)};
}

}  // namespace dpd
}  // namespace llrss
