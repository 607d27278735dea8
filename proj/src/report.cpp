#include "llrss/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace llrss::report {
namespace {

using nlohmann::json;

std::string fixed5(double v) {
    if (std::isnan(v)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5f", v);
    return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json matrix(const Mat2& m) { return json::array({{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}); }

std::string tau_cell(const EstimatorSummary& row) {
    if (row.tau) return fixed5(*row.tau);
    return row.kind == EstimatorKind::mle ? fixed5(0.0) : "NA";
}

}  // namespace

std::array<double, 2> FitReport::standard_errors() const {
    if (!cov) throw std::logic_error("standard_errors: no covariance attached");
    const auto nd = static_cast<double>(n);
    return {std::sqrt(cov->sigma[0][0] / nd), std::sqrt(cov->sigma[1][1] / nd)};
}

void write_sim_csv(std::ostream& os, const std::vector<SimSummary>& summaries, bool header) {
    if (header) os << kSimCsvHeader << '\n';
    for (const SimSummary& s : summaries) {
        const SimConfig& c = s.config;
        for (const EstimatorSummary& row : s.rows) {
            os << to_string(row.kind) << ',' << tau_cell(row) << ',' << c.n << ',' << fixed5(c.truth.alpha()) << ','
               << fixed5(c.truth.beta()) << ',' << to_string(c.scenario.kind) << ',' << fixed5(c.scenario.p) << ','
               << fixed5(row.bias) << ',' << fixed5(row.rmse) << ',' << fixed5(row.alpha_hat_mean) << ','
               << fixed5(row.beta_hat_mean) << ',' << row.failures << '\n';
        }
    }
}

void write_sim_json(std::ostream& os, const std::vector<SimSummary>& summaries) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "simulation";
    json runs = json::array();
    for (const SimSummary& s : summaries) {
        const SimConfig& c = s.config;
        json cfg = {{"n", c.n},
                    {"alpha_true", c.truth.alpha()},
                    {"beta_true", c.truth.beta()},
                    {"reps", c.reps},
                    {"case", std::string(to_string(c.scenario.kind))},
                    {"p", c.scenario.p},
                    {"seed", c.seed},
                    {"sampler", c.sampler == SamplerKind::literal ? "literal" : "direct"},
                    {"contaminate_before_ranking", c.contaminate_before_ranking}};
        json rows = json::array();
        for (const EstimatorSummary& row : s.rows) {
            rows.push_back({{"estimator", std::string(to_string(row.kind))},
                            {"tau", row.tau ? json(*row.tau)
                                            : (row.kind == EstimatorKind::mle ? json(0.0) : json(nullptr))},
                            {"bias", number_or_null(row.bias)},
                            {"rmse", number_or_null(row.rmse)},
                            {"alpha_hat_mean", number_or_null(row.alpha_hat_mean)},
                            {"beta_hat_mean", number_or_null(row.beta_hat_mean)},
                            {"successes", row.successes},
                            {"failures", row.failures}});
        }
        runs.push_back({{"config", cfg}, {"rows", rows}, {"wall_seconds", s.wall_seconds}});
    }
    doc["runs"] = runs;
    os << doc.dump(2) << '\n';
}

void write_fit_json(std::ostream& os, const FitReport& fit) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "fit";
    doc["estimator"] = fit.estimator;
    doc["tau"] = fit.tau ? json(*fit.tau) : json(nullptr);
    doc["n"] = fit.n;
    doc["alpha"] = fit.alpha;
    doc["beta"] = fit.beta;
    if (fit.converged) doc["converged"] = *fit.converged;
    if (fit.iterations) doc["iterations"] = *fit.iterations;
    if (fit.grad_norm) doc["grad_norm"] = number_or_null(*fit.grad_norm);
    if (fit.objective) doc["objective"] = number_or_null(*fit.objective);
    if (fit.cov) {
        const auto se = fit.standard_errors();
        doc["covariance"] = {{"J", matrix(fit.cov->J)},
                             {"K", matrix(fit.cov->K)},
                             {"xi", {fit.cov->xi[0], fit.cov->xi[1]}},
                             {"sigma", matrix(fit.cov->sigma)},
                             {"condition", fit.cov->condition},
                             {"se_alpha", se[0]},
                             {"se_beta", se[1]}};
    }
    os << doc.dump(2) << '\n';
}

void write_fit_csv(std::ostream& os, const FitReport& fit) {
    os << "estimator,tau,n,alpha,beta,converged,iterations,se_alpha,se_beta\n";
    os << fit.estimator << ',' << (fit.tau ? fixed5(*fit.tau) : "NA") << ',' << fit.n << ',' << fixed5(fit.alpha)
       << ',' << fixed5(fit.beta) << ',' << (fit.converged ? (*fit.converged ? "true" : "false") : "NA") << ','
       << (fit.iterations ? std::to_string(*fit.iterations) : "NA") << ',';
    if (fit.cov) {
        const auto se = fit.standard_errors();
        os << fixed5(se[0]) << ',' << fixed5(se[1]) << '\n';
    } else {
        os << "NA,NA\n";
    }
}

}  // namespace llrss::report
