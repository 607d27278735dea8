#pragma once

#include <array>
#include <cstddef>

namespace llrss {

/// Log-logistic parameters: scale alpha (the median) and shape beta.
class LLParams {
public:
    LLParams(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

    friend bool operator==(const LLParams&, const LLParams&) = default;

private:
    double alpha_;
    double beta_;
};

/// Rank i of a set of size n, 1 <= i <= n.
class RankStat {
public:
    RankStat(std::size_t i, std::size_t n);

    std::size_t i() const noexcept { return i_; }
    std::size_t n() const noexcept { return n_; }

private:
    std::size_t i_;
    std::size_t n_;
};

namespace model {

double pdf(const LLParams& p, double x);
double log_pdf(const LLParams& p, double x);
double cdf(const LLParams& p, double x);
double quantile(const LLParams& p, double u);

/// Density of the i-th order statistic of n iid log-logistic draws.
double order_pdf(const LLParams& p, const RankStat& r, double y);
double log_order_pdf(const LLParams& p, const RankStat& r, double y);

/// Gradient of ln order_pdf with respect to (alpha, beta).
std::array<double, 2> order_score(const LLParams& p, const RankStat& r, double y);

/// c(i, n) = n! / ((n - i)! (i - 1)!), via log-gamma.
double comb_c(std::size_t i, std::size_t n);
double log_comb_c(std::size_t i, std::size_t n);

/// ln(1 + exp(t)) without overflow.
double softplus(double t) noexcept;

}  // namespace model
}  // namespace llrss
