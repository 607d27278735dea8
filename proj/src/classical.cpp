#include "llrss/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "llrss/specfn.hpp"

namespace llrss::classical {
namespace {

std::vector<double> log_values(const RankedSample& s) {
    std::vector<double> z(s.n());
    std::transform(s.values().begin(), s.values().end(), z.begin(), [](double x) { return std::log(x); });
    return z;
}

std::size_t distinct_count(const RankedSample& s) {
    std::vector<double> v(s.values().begin(), s.values().end());
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

}  // namespace

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty input");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

double mle_objective(const RankedSample& s, const LLParams& p) {
    const std::size_t n = s.n();
    double sum = 0.0;
    for (std::size_t i = 1; i <= n; ++i) sum -= model::log_order_pdf(p, RankStat(i, n), s[i - 1]);
    return sum / static_cast<double>(n);
}

std::array<double, 2> mle_gradient(const RankedSample& s, const LLParams& p) {
    const std::size_t n = s.n();
    std::array<double, 2> g{0.0, 0.0};
    for (std::size_t i = 1; i <= n; ++i) {
        const auto sc = model::order_score(p, RankStat(i, n), s[i - 1]);
        g[0] -= sc[0];
        g[1] -= sc[1];
    }
    g[0] /= static_cast<double>(n);
    g[1] /= static_cast<double>(n);
    return g;
}

FitResult fit_mle(const RankedSample& s, std::optional<LLParams> init, const FitOptions& options) {
    if (s.n() < 2 || distinct_count(s) < 2) {
        // Two parameters cannot be identified from a single distinct value.
        const LLParams guess = init.value_or(LLParams(classical::median({s.values().begin(), s.values().end()}), 1.0));
        return FitResult{guess, mle_objective(s, guess), false, 0, std::numeric_limits<double>::infinity(), {}};
    }
    const LLParams start = init.value_or(robust_start(s));

    optim::Problem prob;
    prob.value = [&](const optim::Vec2& x) {
        if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || std::abs(x[0]) > 700.0 || std::abs(x[1]) > 700.0)
            return std::numeric_limits<double>::infinity();
        return mle_objective(s, LLParams(std::exp(x[0]), std::exp(x[1])));
    };
    prob.gradient = [&](const optim::Vec2& x) {
        const LLParams p(std::exp(x[0]), std::exp(x[1]));
        const auto g = mle_gradient(s, p);
        return optim::Vec2{g[0] * p.alpha(), g[1] * p.beta()};
    };
    const auto res = optim::minimize(prob, {std::log(start.alpha()), std::log(start.beta())}, options.optimizer);
    return FitResult{LLParams(std::exp(res.x[0]), std::exp(res.x[1])), res.value, res.converged, res.iterations,
                     res.grad_norm, res.trace};
}

LLParams fit_rm(const RankedSample& s) {
    const std::size_t n = s.n();
    if (n < 3) throw std::domain_error("fit_rm: needs at least 3 observations");
    std::vector<double> z = log_values(s);
    std::sort(z.begin(), z.end());
    std::vector<double> y(n);
    for (std::size_t i = 1; i <= n; ++i) {
        // ln(1 / (1 - F) - 1) with F = i / (n + 1).
        y[i - 1] = std::log(static_cast<double>(i) / static_cast<double>(n + 1 - i));
    }

    std::vector<double> inner_medians;
    inner_medians.reserve(n);
    std::vector<double> slopes;
    slopes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        slopes.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || z[j] == z[i]) continue;
            slopes.push_back((y[i] - y[j]) / (z[i] - z[j]));
        }
        if (!slopes.empty()) inner_medians.push_back(median(slopes));
    }
    if (inner_medians.empty()) throw std::domain_error("fit_rm: all pairs have equal log values");
    const double b1 = median(inner_medians);

    std::vector<double> intercepts(n);
    for (std::size_t i = 0; i < n; ++i) intercepts[i] = y[i] - b1 * z[i];
    const double b0 = median(std::move(intercepts));
    return LLParams(std::exp(-b0 / b1), b1);
}

LLParams fit_sm(const RankedSample& s) {
    if (s.n() < 2) throw std::domain_error("fit_sm: needs at least 2 observations");
    const std::vector<double> z = log_values(s);
    const double mu = median(z);
    std::vector<double> dev(z.size());
    std::transform(z.begin(), z.end(), dev.begin(), [mu](double v) { return std::abs(v - mu); });
    const double mad = median(std::move(dev));
    if (!(mad > 0.0)) throw std::domain_error("fit_sm: zero median absolute deviation");
    return LLParams(std::exp(mu), specfn::std_normal_quantile(0.75) / mad);
}

LLParams fit_hl(const RankedSample& s) {
    const std::size_t n = s.n();
    if (n < 2) throw std::domain_error("fit_hl: needs at least 2 observations");
    const std::vector<double> z = log_values(s);
    std::vector<double> means;
    std::vector<double> gaps;
    means.reserve(n * (n - 1) / 2);
    gaps.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            means.push_back(0.5 * (z[i] + z[j]));
            gaps.push_back(std::abs(z[i] - z[j]));
        }
    }
    const double gap = median(std::move(gaps));
    if (!(gap > 0.0)) throw std::domain_error("fit_hl: median pairwise gap is zero");
    return LLParams(std::exp(median(std::move(means))), std::numbers::sqrt2 * specfn::std_normal_quantile(0.75) / gap);
}

LLParams robust_start(const RankedSample& s) {
    try {
        return fit_hl(s);
    } catch (const std::domain_error&) {
    }
    try {
        return fit_sm(s);
    } catch (const std::domain_error&) {
    }
    return LLParams(median({s.values().begin(), s.values().end()}), 1.0);
}

}  // namespace llrss::classical
