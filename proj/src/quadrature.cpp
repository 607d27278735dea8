#include "llrss/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace llrss::quad {
namespace {

// Kronrod 15-point abscissae on [-1, 1] (non-negative half) and weights; the
// odd-indexed abscissae are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double lo;
    double hi;
    double value;
    double abs_value;
    double error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

Piece kronrod(const std::function<double(double)>& g, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const double fc = g(c);
    double k = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double kabs = std::abs(fc) * kWgk[7];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = g(c - dx);
        const double f2 = g(c + dx);
        k += kWgk[j] * (f1 + f2);
        kabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    return Piece{lo, hi, k * h, kabs * std::abs(h), std::abs((k - gauss) * h)};
}

double clamp_exp(double log_value) { return log_value < -745.0 ? 0.0 : std::exp(log_value); }

// Written from f_i = c F^(i-1) (1 - F)^(n-i) f with f = (beta / y) F (1 - F),
// independently of the model module.
struct OrderDensity {
    double alpha, beta, i, n, log_c;

    // ln f_i and d ln f_i / dL at x = alpha * e^z, where L = beta z.
    void eval(double z, double& log_f, double& dlog_dl) const {
        const double l = beta * z;
        const double log_cdf = -(l > 0.0 ? std::log1p(std::exp(-l)) : -l + std::log1p(std::exp(l)));
        const double log_sf = -(l > 0.0 ? l + std::log1p(std::exp(-l)) : std::log1p(std::exp(l)));
        log_f = log_c + i * log_cdf + (n - i + 1.0) * log_sf + std::log(beta) - std::log(alpha) - z;
        const double cdf = std::exp(log_cdf);
        dlog_dl = i - (n + 1.0) * cdf;
    }
};

}  // namespace

std::string_view to_string(Integrand k) noexcept {
    switch (k) {
        case Integrand::power: return "power";
        case Integrand::score_alpha: return "score_alpha";
        case Integrand::score_beta: return "score_beta";
        case Integrand::score_alpha_sq: return "score_alpha_sq";
        case Integrand::score_beta_sq: return "score_beta_sq";
        case Integrand::score_cross: return "score_cross";
    }
    return "unknown";
}

QuadResult integrate_interval(const std::function<double(double)>& g, double lo, double hi, const QuadOptions& opt) {
    std::priority_queue<Piece> heap;
    QuadResult res;
    double total = 0.0, total_abs = 0.0, total_err = 0.0;
    const std::size_t m = std::max<std::size_t>(1, opt.initial_intervals);
    for (std::size_t k = 0; k < m; ++k) {
        const double a = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(m);
        const double b = lo + (hi - lo) * static_cast<double>(k + 1) / static_cast<double>(m);
        const Piece p = kronrod(g, a, b);
        total += p.value;
        total_abs += p.abs_value;
        total_err += p.error;
        heap.push(p);
    }
    res.evaluations = 15 * m;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (heap.size() >= opt.max_intervals) {
            std::ostringstream os;
            os << "quadrature did not converge: estimate " << total << ", error bound " << total_err;
            throw QuadratureError(os.str(), total, total_err);
        }
        const Piece worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Piece left = kronrod(g, worst.lo, mid);
        const Piece right = kronrod(g, mid, worst.hi);
        res.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if (total_err < 0.0) total_err = 0.0;
    }
    // Recompute the sums from the pieces to shed the running-update drift.
    total = total_abs = total_err = 0.0;
    std::vector<Piece> pieces;
    pieces.reserve(heap.size());
    while (!heap.empty()) {
        pieces.push_back(heap.top());
        heap.pop();
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    for (const Piece& p : pieces) {
        total += p.value;
        total_abs += p.abs_value;
        total_err += p.error;
    }
    res.value = total;
    res.l1 = total_abs;
    res.error = total_err;
    return res;
}

QuadResult integrate_half_line(const std::function<double(double)>& g, double scale, const QuadOptions& opt) {
    const auto mapped = [&](double t) {
        const double x = scale * t / (1.0 - t);
        const double jac = scale / ((1.0 - t) * (1.0 - t));
        const double v = g(x);
        return v == 0.0 ? 0.0 : v * jac;
    };
    return integrate_interval(mapped, 0.0, 1.0, opt);
}

QuadResult integrate(const IntegralSpec& spec, const QuadOptions& opt) {
    const double alpha = spec.params.alpha();
    const double beta = spec.params.beta();
    const double tau = spec.tau.tau();
    const auto i = static_cast<double>(spec.rank.i());
    const auto n = static_cast<double>(spec.rank.n());
    const OrderDensity dens{alpha, beta, i, n,
                            std::lgamma(n + 1.0) - std::lgamma(n - i + 1.0) - std::lgamma(i)};

    // Integrate in t directly so that z = ln(t / (1 - t)) keeps full precision
    // near both ends: x = alpha t / (1 - t), dx = alpha / (1 - t)^2 dt.
    const auto g = [&](double t) {
        const double z = std::log(t) - std::log1p(-t);
        double log_f = 0.0, dl = 0.0;
        dens.eval(z, log_f, dl);
        const double log_jac = std::log(alpha) - 2.0 * std::log1p(-t);
        const double w = clamp_exp((tau + 1.0) * log_f + log_jac);
        if (w == 0.0) return 0.0;
        const double sa = -(beta / alpha) * dl;
        const double sb = 1.0 / beta + z * dl;
        switch (spec.kind) {
            case Integrand::power: return w;
            case Integrand::score_alpha: return sa * w;
            case Integrand::score_beta: return sb * w;
            case Integrand::score_alpha_sq: return sa * sa * w;
            case Integrand::score_beta_sq: return sb * sb * w;
            case Integrand::score_cross: return sa * sb * w;
        }
        return 0.0;
    };
    return integrate_interval(g, 0.0, 1.0, opt);
}

}  // namespace llrss::quad
