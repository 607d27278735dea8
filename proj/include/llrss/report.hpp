#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "llrss/asymptotics.hpp"
#include "llrss/harness.hpp"

namespace llrss::report {

inline constexpr int kSchemaVersion = 1;

inline constexpr const char* kSimCsvHeader =
    "estimator,tau,n,alpha_true,beta_true,case,p,bias,rmse,alpha_hat_mean,beta_hat_mean,failures";

/// One CSV row per (summary, estimator), 5 decimals. The tau column is the
/// tuning value for DPD, 0 for MLE (its tau = 0 limit) and NA otherwise.
void write_sim_csv(std::ostream& os, const std::vector<SimSummary>& summaries, bool header = true);

/// One JSON document for the whole sweep, full precision.
void write_sim_json(std::ostream& os, const std::vector<SimSummary>& summaries);

struct FitReport {
    std::string estimator;
    std::optional<double> tau;
    std::size_t n = 0;
    double alpha = 0.0;
    double beta = 0.0;
    /// Unset for the closed-form estimators (RM, SM, HL).
    std::optional<bool> converged;
    std::optional<std::size_t> iterations;
    std::optional<double> grad_norm;
    std::optional<double> objective;
    std::optional<AsymCov> cov;

    /// Standard errors sqrt(sigma_jj / n); requires cov.
    std::array<double, 2> standard_errors() const;
};

void write_fit_json(std::ostream& os, const FitReport& fit);
void write_fit_csv(std::ostream& os, const FitReport& fit);

}  // namespace llrss::report
