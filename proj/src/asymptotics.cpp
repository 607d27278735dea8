#include "llrss/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "llrss/specfn.hpp"

namespace llrss::asym {
namespace {

// Shared pieces of the closed forms for one rank. With a = lower, b = upper
// and K = c^(tau+1) (beta/alpha)^tau, the weight f_i^(tau+1) maps to a Beta
// prime density in w = (y/alpha)^beta, so every integral reduces to
//   K B(a + da, b + db) times polygamma corrections.
struct RankTerms {
    double log_k;
    double lower;
    double upper;
    double i;
    double n;

    RankTerms(const LLParams& p, const RankStat& r, const Tuning& t) {
        const dpd::BetaArgs ab = dpd::beta_args(p, r, t);
        lower = ab.lower;
        upper = ab.upper;
        i = static_cast<double>(r.i());
        n = static_cast<double>(r.n());
        log_k = (t.tau() + 1.0) * model::log_comb_c(r.i(), r.n()) + t.tau() * std::log(p.beta() / p.alpha());
    }

    // K B(upper + du, lower + dl)
    double weight(double du, double dl) const { return std::exp(log_k + specfn::log_beta(upper + du, lower + dl)); }

    // Mean and variance of ln w under the shifted weight.
    double mean_log(double du, double dl) const { return specfn::digamma(lower + dl) - specfn::digamma(upper + du); }
    double var_log(double du, double dl) const { return specfn::trigamma(lower + dl) + specfn::trigamma(upper + du); }
    double second_log(double du, double dl) const {
        const double m = mean_log(du, dl);
        return var_log(du, dl) + m * m;
    }
};

}  // namespace

double j_alpha(const LLParams& p, const RankStat& r, const Tuning& t, const SignVariant& v) {
    const RankTerms rt(p, r, t);
    const double m = rt.n - rt.i + 1.0;
    const double a1 = m * m * rt.weight(0.0, 0.0);
    const double a2 = (rt.n + 1.0) * (rt.n + 1.0) * rt.weight(2.0, 0.0);
    const double a3 = 2.0 * m * (rt.n + 1.0) * rt.weight(1.0, 0.0);
    const double ratio = p.beta() / p.alpha();
    return ratio * ratio * (a1 + a2 + v.a3 * a3);
}

double xi_alpha(const LLParams& p, const RankStat& r, const Tuning& t) {
    const RankTerms rt(p, r, t);
    return -t.tau() / (p.alpha() * (1.0 + t.tau())) * rt.weight(0.0, 0.0);
}

double j_beta(const LLParams& p, const RankStat& r, const Tuning& t, const SignVariant& v) {
    const RankTerms rt(p, r, t);
    const double w00 = rt.weight(0.0, 0.0);
    const double w01 = rt.weight(0.0, 1.0);
    const double w02 = rt.weight(0.0, 2.0);
    const double c1 = w00;
    const double c2 = rt.i * rt.i * w00 * rt.second_log(0.0, 0.0);
    const double c3 = (rt.n + 1.0) * (rt.n + 1.0) * w02 * rt.second_log(0.0, 2.0);
    const double c4 = 2.0 * rt.i * w00 * rt.mean_log(0.0, 0.0);
    const double c5 = 2.0 * (rt.n + 1.0) * w01 * rt.mean_log(0.0, 1.0);
    const double c6 = 2.0 * rt.i * (rt.n + 1.0) * w01 * rt.second_log(0.0, 1.0);
    return (c1 + c2 + v.c3 * c3 + c4 - c5 - c6) / (p.beta() * p.beta());
}

double xi_beta(const LLParams& p, const RankStat& r, const Tuning& t) {
    const RankTerms rt(p, r, t);
    const double tau = t.tau();
    return rt.weight(0.0, 0.0) * tau / (p.beta() * (1.0 + tau)) * (1.0 + rt.mean_log(0.0, 0.0) / p.beta());
}

double j_cross(const LLParams& p, const RankStat& r, const Tuning& t) {
    const RankTerms rt(p, r, t);
    const double m = rt.n - rt.i + 1.0;
    const double np1 = rt.n + 1.0;
    const double w00 = rt.weight(0.0, 0.0);
    const double w01 = rt.weight(0.0, 1.0);
    const double w10 = rt.weight(1.0, 0.0);
    const double w11 = rt.weight(1.0, 1.0);
    const double e1 = m * w00;
    const double e2 = rt.i * m * w00 * rt.mean_log(0.0, 0.0);
    const double e3 = np1 * m * w01 * rt.mean_log(0.0, 1.0);
    const double e4 = np1 * w10;
    const double e5 = np1 * rt.i * w10 * rt.mean_log(1.0, 0.0);
    const double e6 = np1 * np1 * w11 * rt.mean_log(1.0, 1.0);
    return (e1 + e2 - e3 - e4 - e5 + e6) / p.alpha();
}

double condition_number(const Mat2& m) {
    const double tr = m[0][0] + m[1][1];
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    const double l1 = std::abs(0.5 * tr + disc);
    const double l2 = std::abs(0.5 * tr - disc);
    const double lo = std::min(l1, l2);
    const double hi = std::max(l1, l2);
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

Mat2 inverse(const Mat2& m, double max_condition) {
    const double cond = condition_number(m);
    if (!(cond <= max_condition)) {
        std::ostringstream os;
        os << "matrix is singular or ill-conditioned (condition number " << cond << ", limit " << max_condition << ")";
        throw SingularMatrixError(os.str(), cond);
    }
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return Mat2{{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

namespace {

Mat2 multiply(const Mat2& a, const Mat2& b) {
    Mat2 out{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
    return out;
}

}  // namespace

AsymCov sandwich(const LLParams& p, std::size_t n, const Tuning& t, KForm form) {
    if (n < 2) throw std::domain_error("sandwich: needs n >= 2");
    const Tuning t2(2.0 * t.tau());
    if (!dpd::admissible(p.beta(), t2.tau())) {
        throw std::domain_error("sandwich: beta(2 tau + 1) <= 2 tau, K is undefined");
    }
    AsymCov out;
    Mat2 j2{};
    Mat2 xx{};
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const RankStat r(i, n);
        const double ja = j_alpha(p, r, t), jb = j_beta(p, r, t), jc = j_cross(p, r, t);
        out.J[0][0] += scale * ja;
        out.J[0][1] += scale * jc;
        out.J[1][1] += scale * jb;
        const double ka = j_alpha(p, r, t2), kb = j_beta(p, r, t2), kc = j_cross(p, r, t2);
        j2[0][0] += scale * ka;
        j2[0][1] += scale * kc;
        j2[1][1] += scale * kb;
        const double xa = xi_alpha(p, r, t), xb = xi_beta(p, r, t);
        out.xi[0] += scale * xa;
        out.xi[1] += scale * xb;
        xx[0][0] += scale * xa * xa;
        xx[0][1] += scale * xa * xb;
        xx[1][1] += scale * xb * xb;
    }
    out.J[1][0] = out.J[0][1];
    j2[1][0] = j2[0][1];
    xx[1][0] = xx[0][1];

    if (form == KForm::pooled) {
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) out.K[r][c] = j2[r][c] - out.xi[r] * out.xi[c];
    } else {
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) out.K[r][c] = j2[r][c] - xx[r][c];
    }

    out.condition = condition_number(out.J);
    const Mat2 jinv = inverse(out.J);
    out.sigma = multiply(multiply(jinv, out.K), jinv);
    // Symmetrize away rounding.
    const double off = 0.5 * (out.sigma[0][1] + out.sigma[1][0]);
    out.sigma[0][1] = out.sigma[1][0] = off;
    return out;
}

}  // namespace llrss::asym
