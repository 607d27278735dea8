#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

#include "llrss/dpd.hpp"
#include "llrss/model.hpp"

namespace llrss {

using Mat2 = std::array<std::array<double, 2>, 2>;
using Vec2d = std::array<double, 2>;

/// Raised when J is too ill-conditioned to invert.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(const std::string& what, double condition)
        : std::runtime_error(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

/// How the per-rank variability matrices are pooled into K.
///   pooled:   K = J_{2tau} - xi xi^T with xi averaged over ranks first.
///   per_rank: K = (1/n) sum_i (J_{2tau}^(i) - xi_i xi_i^T), the variance of
///             a sum of independent, non-identically distributed scores.
enum class KForm { pooled, per_rank };

struct AsymCov {
    Mat2 J{};
    Mat2 K{};
    Vec2d xi{};
    /// Asymptotic covariance of sqrt(n) (theta_hat - theta).
    Mat2 sigma{};
    /// Spectral condition number of J.
    double condition = 0.0;
};

namespace asym {

/// Sign choices for the terms on which the closed forms are ambiguous. The
/// defaults are the ones the quadrature oracle confirms; the others exist for
/// negative controls.
struct SignVariant {
    double a3 = -1.0;
    double c3 = +1.0;
};

/// Per-rank integrals of score products against f_i^(tau+1):
///   j_alpha = int s_a^2 f^(tau+1),  j_beta = int s_b^2 f^(tau+1),
///   j_cross = int s_a s_b f^(tau+1),
///   xi_alpha = int s_a f^(tau+1),   xi_beta = int s_b f^(tau+1).
double j_alpha(const LLParams& p, const RankStat& r, const Tuning& t, const SignVariant& v = {});
double j_beta(const LLParams& p, const RankStat& r, const Tuning& t, const SignVariant& v = {});
double j_cross(const LLParams& p, const RankStat& r, const Tuning& t);
double xi_alpha(const LLParams& p, const RankStat& r, const Tuning& t);
double xi_beta(const LLParams& p, const RankStat& r, const Tuning& t);

inline constexpr double kMaxCondition = 1e12;

/// Spectral condition number of a symmetric 2x2 matrix (inf when singular).
double condition_number(const Mat2& m);

/// Inverse of a symmetric 2x2 matrix; throws SingularMatrixError above max_condition.
Mat2 inverse(const Mat2& m, double max_condition = kMaxCondition);

/// Sandwich covariance J^-1 K J^-1 for a ranked set sample of size n >= 2.
AsymCov sandwich(const LLParams& p, std::size_t n, const Tuning& t, KForm form = KForm::pooled);

}  // namespace asym
}  // namespace llrss
