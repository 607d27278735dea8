#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace testing {

/// Composite Simpson on [lo, hi] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, std::size_t panels = 20000) {
    if (panels % 2 != 0) ++panels;
    const double h = (hi - lo) / static_cast<double>(panels);
    double acc = f(lo) + f(hi);
    for (std::size_t k = 1; k < panels; ++k) acc += f(lo + h * static_cast<double>(k)) * (k % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

/// Asymptotic Kolmogorov tail P(K > x).
inline double kolmogorov_tail(double x) {
    if (x < 1e-3) return 1.0;
    double acc = 0.0;
    for (int k = 1; k < 200; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        acc += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * acc, 0.0, 1.0);
}

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
struct KsResult {
    double d;
    double p_value;
};

inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_tail((ne + 0.12 + 0.11 / ne) * d)};
}

/// One-sample KS against a continuous CDF.
inline KsResult ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf) {
    std::sort(a.begin(), a.end());
    const double n = static_cast<double>(a.size());
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double f = cdf(a[k]);
        d = std::max({d, static_cast<double>(k + 1) / n - f, f - static_cast<double>(k) / n});
    }
    const double ne = std::sqrt(n);
    return {d, kolmogorov_tail((ne + 0.12 + 0.11 / ne) * d)};
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace testing
