#include "llrss/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace llrss::optim {
namespace {

Vec2 add(const Vec2& a, const Vec2& b, double s = 1.0) noexcept { return {a[0] + s * b[0], a[1] + s * b[1]}; }
Vec2 sub(const Vec2& a, const Vec2& b) noexcept { return {a[0] - b[0], a[1] - b[1]}; }
double dot(const Vec2& a, const Vec2& b) noexcept { return a[0] * b[0] + a[1] * b[1]; }

double safe_value(const Problem& prob, const Vec2& x) {
    const double v = prob.value(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace

double norm(const Vec2& v) noexcept { return std::hypot(v[0], v[1]); }

Result nelder_mead(const Problem& prob, const Vec2& x0, const Options& opt) {
    std::array<Vec2, 3> simplex = {x0, add(x0, {opt.simplex_step, 0.0}), add(x0, {0.0, opt.simplex_step})};
    std::array<double, 3> fv{};
    for (std::size_t k = 0; k < 3; ++k) fv[k] = safe_value(prob, simplex[k]);
    if (!std::isfinite(fv[0])) throw std::domain_error("nelder_mead: objective not finite at the start point");

    Result res;
    std::size_t iter = 0;
    for (; iter < opt.simplex_max_iter; ++iter) {
        std::array<std::size_t, 3> order = {0, 1, 2};
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0], mid = order[1], worst = order[2];
        if (opt.record_trace) res.trace.push_back(fv[best]);

        const double spread = fv[worst] - fv[best];
        const double size = std::max(norm(sub(simplex[mid], simplex[best])), norm(sub(simplex[worst], simplex[best])));
        if (std::isfinite(spread) && spread <= opt.simplex_ftol * (1.0 + std::abs(fv[best])) && size < 1e-6) break;

        const Vec2 centroid = {(simplex[best][0] + simplex[mid][0]) / 2.0, (simplex[best][1] + simplex[mid][1]) / 2.0};
        const Vec2 dir = sub(centroid, simplex[worst]);
        const Vec2 xr = add(centroid, dir);
        const double fr = safe_value(prob, xr);
        if (fr < fv[best]) {
            const Vec2 xe = add(centroid, dir, 2.0);
            const double fe = safe_value(prob, xe);
            if (fe < fr) {
                simplex[worst] = xe;
                fv[worst] = fe;
            } else {
                simplex[worst] = xr;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[mid]) {
            simplex[worst] = xr;
            fv[worst] = fr;
            continue;
        }
        // Contraction, outside if the reflected point beats the worst vertex.
        const bool outside = fr < fv[worst];
        const Vec2 xc = outside ? add(centroid, dir, 0.5) : add(centroid, dir, -0.5);
        const double fc = safe_value(prob, xc);
        if (fc < (outside ? fr : fv[worst])) {
            simplex[worst] = xc;
            fv[worst] = fc;
            continue;
        }
        for (std::size_t k : {mid, worst}) {
            simplex[k] = add(simplex[best], sub(simplex[k], simplex[best]), 0.5);
            fv[k] = safe_value(prob, simplex[k]);
        }
    }
    const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    res.x = simplex[best];
    res.value = fv[best];
    res.iterations = iter;
    res.grad = prob.gradient(res.x);
    res.grad_norm = norm(res.grad);
    res.converged = res.grad_norm <= opt.accept_grad_tol;
    return res;
}

Result bfgs(const Problem& prob, const Vec2& x0, const Options& opt) {
    Result res;
    Vec2 x = x0;
    double fx = safe_value(prob, x);
    if (!std::isfinite(fx)) throw std::domain_error("bfgs: objective not finite at the start point");
    Vec2 g = prob.gradient(x);
    // Inverse Hessian approximation, row-major 2x2.
    std::array<double, 4> h = {1.0, 0.0, 0.0, 1.0};
    if (opt.record_trace) res.trace.push_back(fx);

    std::size_t iter = 0;
    for (; iter < opt.max_iter; ++iter) {
        if (norm(g) < opt.grad_tol) break;
        Vec2 d = {-(h[0] * g[0] + h[1] * g[1]), -(h[2] * g[0] + h[3] * g[1])};
        double slope = dot(g, d);
        if (!(slope < 0.0)) {
            h = {1.0, 0.0, 0.0, 1.0};
            d = {-g[0], -g[1]};
            slope = dot(g, d);
        }
        double step = 1.0;
        Vec2 xn{};
        double fn = 0.0;
        bool accepted = false;
        for (int k = 0; k < 60; ++k) {
            xn = add(x, d, step);
            fn = safe_value(prob, xn);
            if (fn <= fx + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (h[0] != 1.0 || h[1] != 0.0 || h[3] != 1.0) {
                h = {1.0, 0.0, 0.0, 1.0};
                continue;
            }
            break;
        }
        const Vec2 gn = prob.gradient(xn);
        const Vec2 s = sub(xn, x);
        const Vec2 y = sub(gn, g);
        x = xn;
        fx = fn;
        g = gn;
        if (opt.record_trace) res.trace.push_back(fx);
        if (norm(s) < opt.step_tol) {
            ++iter;
            break;
        }
        const double sy = dot(s, y);
        if (sy > 1e-14 * norm(s) * norm(y)) {
            // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
            const double rho = 1.0 / sy;
            const Vec2 hy = {h[0] * y[0] + h[1] * y[1], h[2] * y[0] + h[3] * y[1]};
            const double yhy = dot(y, hy);
            const double c = (1.0 + rho * yhy) * rho;
            h[0] += c * s[0] * s[0] - rho * (hy[0] * s[0] + s[0] * hy[0]);
            h[1] += c * s[0] * s[1] - rho * (hy[0] * s[1] + s[0] * hy[1]);
            h[2] += c * s[1] * s[0] - rho * (hy[1] * s[0] + s[1] * hy[0]);
            h[3] += c * s[1] * s[1] - rho * (hy[1] * s[1] + s[1] * hy[1]);
        }
    }
    res.x = x;
    res.value = fx;
    res.grad = g;
    res.grad_norm = norm(g);
    res.iterations = iter;
    res.converged = res.grad_norm <= opt.accept_grad_tol;
    return res;
}

Result newton(const Problem& prob, const Vec2& x0, const Options& opt) {
    Result res;
    Vec2 x = x0;
    double fx = safe_value(prob, x);
    if (!std::isfinite(fx)) throw std::domain_error("newton: objective not finite at the start point");
    Vec2 g = prob.gradient(x);
    if (opt.record_trace) res.trace.push_back(fx);

    std::size_t iter = 0;
    for (; iter < opt.max_iter; ++iter) {
        if (norm(g) < opt.grad_tol) break;
        // Hessian from central differences of the analytic gradient.
        constexpr double kH = 1e-5;
        std::array<double, 4> hess{};
        for (int k = 0; k < 2; ++k) {
            Vec2 xp = x, xm = x;
            xp[k] += kH;
            xm[k] -= kH;
            const Vec2 gp = prob.gradient(xp);
            const Vec2 gm = prob.gradient(xm);
            hess[k] = (gp[0] - gm[0]) / (2.0 * kH);
            hess[2 + k] = (gp[1] - gm[1]) / (2.0 * kH);
        }
        const double off = 0.5 * (hess[1] + hess[2]);
        double a = hess[0], b = off, c = hess[3];
        // Shift to positive definite when needed so d is a descent direction.
        const double tr = a + c;
        const double min_eig = 0.5 * tr - std::sqrt(0.25 * (a - c) * (a - c) + b * b);
        const double floor = 1e-8 * std::max(1.0, std::abs(tr));
        if (!std::isfinite(min_eig)) {
            a = c = 1.0;
            b = 0.0;
        } else if (min_eig < floor) {
            a += floor - min_eig;
            c += floor - min_eig;
        }
        const double det = a * c - b * b;
        const Vec2 d = {-(c * g[0] - b * g[1]) / det, -(a * g[1] - b * g[0]) / det};
        const double slope = dot(g, d);

        double step = 1.0;
        Vec2 xn{};
        double fn = 0.0;
        bool accepted = false;
        for (int k = 0; k < 60; ++k) {
            xn = add(x, d, step);
            fn = safe_value(prob, xn);
            if (fn <= fx + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        Vec2 gn{};
        if (!accepted) {
            // Near the optimum the decrease falls below the objective's
            // rounding; the analytic gradient still resolves progress there.
            xn = add(x, d);
            fn = safe_value(prob, xn);
            if (!(std::isfinite(fn) && fn <= fx + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(fx)))
                break;
            gn = prob.gradient(xn);
            if (!(norm(gn) < norm(g))) break;
        } else {
            gn = prob.gradient(xn);
        }
        const double moved = norm(sub(xn, x));
        x = xn;
        fx = fn;
        g = gn;
        if (opt.record_trace) res.trace.push_back(fx);
        if (moved < opt.step_tol) {
            ++iter;
            break;
        }
    }
    res.x = x;
    res.value = safe_value(prob, x);
    res.grad = g;
    res.grad_norm = norm(g);
    res.iterations = iter;
    res.converged = res.grad_norm <= opt.accept_grad_tol;
    return res;
}

Result minimize(const Problem& prob, const Vec2& x0, const Options& opt) {
    Result coarse = nelder_mead(prob, x0, opt);
    Result fine = newton(prob, coarse.x, opt);
    fine.iterations += coarse.iterations;
    if (opt.record_trace) {
        coarse.trace.insert(coarse.trace.end(), fine.trace.begin(), fine.trace.end());
        fine.trace = std::move(coarse.trace);
    }
    return fine;
}

}  // namespace llrss::optim
