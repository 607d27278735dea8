#include "llrss/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "llrss/specfn.hpp"

namespace llrss {

LLParams::LLParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0.0) || !(beta > 0.0) || std::isinf(alpha) || std::isinf(beta)) {
        throw std::domain_error("LLParams: alpha and beta must be finite and positive (alpha=" +
                                std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
    }
}

RankStat::RankStat(std::size_t i, std::size_t n) : i_(i), n_(n) {
    if (i < 1 || i > n) {
        throw std::domain_error("RankStat: rank " + std::to_string(i) + " outside 1.." +
                                std::to_string(n));
    }
}

namespace model {
namespace {

void require_positive_point(double x, const char* fn) {
    if (!(x > 0.0)) {
        throw std::domain_error(std::string(fn) + ": point must be positive, got " + std::to_string(x));
    }
}

}  // namespace

double softplus(double t) noexcept {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double log_pdf(const LLParams& p, double x) {
    require_positive_point(x, "pdf");
    const double b = p.beta();
    const double lu = std::log(x / p.alpha());
    return std::log(b / p.alpha()) + (b - 1.0) * lu - 2.0 * softplus(b * lu);
}

double pdf(const LLParams& p, double x) {
    if (std::isinf(x)) return 0.0;
    return std::exp(log_pdf(p, x));
}

double cdf(const LLParams& p, double x) {
    require_positive_point(x, "cdf");
    // 1 / (1 + (x/alpha)^-beta) written as a logistic in ln x.
    const double t = p.beta() * std::log(x / p.alpha());
    return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
}

double quantile(const LLParams& p, double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("quantile: probability must lie in (0, 1), got " + std::to_string(u));
    }
    return p.alpha() * std::exp((std::log(u) - std::log1p(-u)) / p.beta());
}

double log_comb_c(std::size_t i, std::size_t n) {
    if (i < 1 || i > n) {
        throw std::domain_error("comb_c: rank " + std::to_string(i) + " outside 1.." + std::to_string(n));
    }
    const auto nd = static_cast<double>(n);
    const auto id = static_cast<double>(i);
    return specfn::log_gamma(nd + 1.0) - specfn::log_gamma(nd - id + 1.0) - specfn::log_gamma(id);
}

double comb_c(std::size_t i, std::size_t n) {
    return std::exp(log_comb_c(i, n));
}

double log_order_pdf(const LLParams& p, const RankStat& r, double y) {
    require_positive_point(y, "order_pdf");
    const double b = p.beta();
    const auto id = static_cast<double>(r.i());
    const auto nd = static_cast<double>(r.n());
    const double lu = std::log(y / p.alpha());
    return log_comb_c(r.i(), r.n()) + std::log(b / p.alpha()) + (id * b - 1.0) * lu -
           (nd + 1.0) * softplus(b * lu);
}

std::array<double, 2> order_score(const LLParams& p, const RankStat& r, double y) {
    require_positive_point(y, "order_score");
    const double b = p.beta();
    const auto id = static_cast<double>(r.i());
    const auto nd = static_cast<double>(r.n());
    // With L = beta ln(y/alpha) and V = L's logistic transform:
    //   d/dalpha = (beta/alpha) ((n+1) V - i)
    //   d/dbeta  = (1 + L (i - (n+1) V)) / beta
    const double l = b * std::log(y / p.alpha());
    const double v = l >= 0.0 ? 1.0 / (1.0 + std::exp(-l)) : std::exp(l) / (1.0 + std::exp(l));
    return {(b / p.alpha()) * ((nd + 1.0) * v - id), (1.0 + l * (id - (nd + 1.0) * v)) / b};
}

double order_pdf(const LLParams& p, const RankStat& r, double y) {
    if (std::isinf(y)) return 0.0;
    return std::exp(log_order_pdf(p, r, y));
}

}  // namespace model
}  // namespace llrss
