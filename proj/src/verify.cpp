#include "llrss/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "llrss/quadrature.hpp"
#include "llrss/specfn.hpp"

namespace llrss::verify {
namespace {

struct GridAxes {
    std::vector<double> alphas;
    std::vector<double> taus;
    std::vector<double> betas;
    std::vector<std::size_t> ns;
};

GridAxes axes_for(Grid g) {
    if (g == Grid::full) {
        GridAxes a{{1.0}, {}, {1.5, 2.5, 5.0, 10.0}, {3, 5, 10}};
        for (int k = 1; k <= 10; ++k) a.taus.push_back(0.1 * k);
        return a;
    }
    return GridAxes{{1.0, 2.5}, {0.0, 0.25, 0.5}, {1.5, 5.0}, {1, 2, 3, 5}};
}

double rel_err(double closed, const quad::QuadResult& q) {
    const double denom = std::max({std::abs(q.value), 1e-3 * q.l1, 1e-300});
    return std::abs(closed - q.value) / denom;
}

std::string describe(double alpha, double beta, double tau, std::size_t i, std::size_t n) {
    std::ostringstream os;
    os << "alpha=" << alpha << " beta=" << beta << " tau=" << tau << " i=" << i << " n=" << n;
    return os.str();
}

void record(FormulaReport& f, double err, const std::string& where) {
    if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
    if (f.checks++ == 0 || err > f.max_rel_err) {
        f.max_rel_err = err;
        f.worst_config = where;
    }
}

}  // namespace

GridReport run_grid(const GridOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    const GridAxes ax = axes_for(opt.grid);
    GridReport rep;
    std::vector<FormulaReport> f;
    for (const char* name : {"integral_term", "j_alpha", "xi_alpha", "j_beta", "xi_beta", "j_cross"}) {
        f.push_back(FormulaReport{name, 0.0, "", 0, true});
    }
    double a3_minus = 0.0, a3_plus = 0.0, c3_minus = 0.0, c3_plus = 0.0;

    for (double alpha : ax.alphas) {
        for (double beta : ax.betas) {
            for (double tau : ax.taus) {
                for (std::size_t n : ax.ns) {
                    for (std::size_t i = 1; i <= n; ++i) {
                        const LLParams p(alpha, beta);
                        const RankStat r(i, n);
                        const Tuning t(tau);
                        const std::string where = describe(alpha, beta, tau, i, n);
                        const auto q = [&](quad::Integrand k) { return quad::integrate({k, p, r, t}); };
                        const auto q_pow = q(quad::Integrand::power);
                        const auto q_sa = q(quad::Integrand::score_alpha);
                        const auto q_sb = q(quad::Integrand::score_beta);
                        const auto q_saa = q(quad::Integrand::score_alpha_sq);
                        const auto q_sbb = q(quad::Integrand::score_beta_sq);
                        const auto q_sab = q(quad::Integrand::score_cross);

                        record(f[0], rel_err(dpd::integral_term(p, r, t), q_pow), where);
                        record(f[1], rel_err(asym::j_alpha(p, r, t, opt.variant), q_saa), where);
                        record(f[2], rel_err(asym::xi_alpha(p, r, t), q_sa), where);
                        record(f[3], rel_err(asym::j_beta(p, r, t, opt.variant), q_sbb), where);
                        record(f[4], rel_err(asym::xi_beta(p, r, t), q_sb), where);
                        record(f[5], rel_err(asym::j_cross(p, r, t), q_sab), where);

                        a3_minus = std::max(a3_minus, rel_err(asym::j_alpha(p, r, t, {-1.0, 1.0}), q_saa));
                        a3_plus = std::max(a3_plus, rel_err(asym::j_alpha(p, r, t, {1.0, 1.0}), q_saa));
                        c3_plus = std::max(c3_plus, rel_err(asym::j_beta(p, r, t, {-1.0, 1.0}), q_sbb));
                        c3_minus = std::max(c3_minus, rel_err(asym::j_beta(p, r, t, {-1.0, -1.0}), q_sbb));
                        ++rep.configurations;
                    }
                }
            }
        }
    }
    for (auto& fr : f) {
        fr.pass = fr.max_rel_err <= opt.tol;
        rep.pass = rep.pass && fr.pass;
    }
    rep.formulas = std::move(f);
    const auto pick = [&](double minus, double plus) {
        if (minus <= opt.tol && plus > opt.tol) return std::string("minus");
        if (plus <= opt.tol && minus > opt.tol) return std::string("plus");
        if (minus <= opt.tol && plus <= opt.tol) return std::string("both");
        return std::string("neither");
    };
    rep.signs = {{"A3", pick(a3_minus, a3_plus), a3_minus, a3_plus},
                 {"C3", pick(c3_minus, c3_plus), c3_minus, c3_plus}};
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::vector<IdentityCheck> run_identities(double tol) {
    const Tuning zero(0.0);
    IdentityCheck xi{"xi_vanishes_at_tau0", 0.0, true};
    IdentityCheck fisher_alpha{"j_alpha_tau0_closed_form", 0.0, true};
    IdentityCheck single{"j_alpha_tau0_single_draw", 0.0, true};
    IdentityCheck cross_sum{"j_cross_tau0_mean_zero", 0.0, true};
    IdentityCheck cross_form{"j_cross_tau0_closed_form", 0.0, true};

    const auto upd = [](IdentityCheck& c, double err) {
        if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
        c.max_err = std::max(c.max_err, err);
    };

    for (double alpha : {0.5, 1.0, 3.0}) {
        for (double beta : {1.5, 2.5, 5.0, 10.0}) {
            const LLParams p(alpha, beta);
            const double ratio = beta / alpha;
            for (std::size_t n = 1; n <= 20; ++n) {
                const double nd = static_cast<double>(n);
                double cross_total = 0.0;
                for (std::size_t i = 1; i <= n; ++i) {
                    const RankStat r(i, n);
                    const double id = static_cast<double>(i);
                    upd(xi, std::abs(asym::xi_alpha(p, r, zero)));
                    upd(xi, std::abs(asym::xi_beta(p, r, zero)));

                    const double expect = ratio * ratio * id * (nd - id + 1.0) / (nd + 2.0);
                    upd(fisher_alpha, std::abs(asym::j_alpha(p, r, zero) - expect) / expect);

                    const double jc = asym::j_cross(p, r, zero);
                    cross_total += jc;
                    const double jc_expect =
                        (2.0 * id - nd - 1.0 -
                         id * (nd - id + 1.0) * (specfn::digamma(id) - specfn::digamma(nd - id + 1.0))) /
                        (alpha * (nd + 2.0));
                    upd(cross_form, std::abs(jc - jc_expect) / std::max(1.0, std::abs(jc_expect)));
                }
                if (n >= 2) upd(cross_sum, std::abs(cross_total / nd));
            }
            const double one = asym::j_alpha(p, RankStat(1, 1), zero);
            upd(single, std::abs(one - beta * beta / (3.0 * alpha * alpha)) / (beta * beta / (3.0 * alpha * alpha)));
        }
    }
    std::vector<IdentityCheck> out = {xi, fisher_alpha, single, cross_sum, cross_form};
    for (auto& c : out) c.pass = c.max_err <= tol;
    return out;
}

}  // namespace llrss::verify
