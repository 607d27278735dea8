#pragma once

#include <array>
#include <optional>

#include "llrss/fit.hpp"
#include "llrss/model.hpp"
#include "llrss/sampling.hpp"

namespace llrss {

/// DPD tuning parameter tau >= 0; tau = 0 is the likelihood limit.
class Tuning {
public:
    explicit Tuning(double tau);
    double tau() const noexcept { return tau_; }

private:
    double tau_;
};

namespace dpd {

/// Arguments of the Beta function that appear in every closed form for rank
/// i of n at tuning tau:
///   upper = ((n-i+1) tau beta + (n-i+1) beta + tau) / beta
///   lower = (i beta tau + i beta - tau) / beta
/// Throws std::domain_error when lower <= 0 (tau inadmissible for this rank).
struct BetaArgs {
    double upper;
    double lower;
};
BetaArgs beta_args(const LLParams& p, const RankStat& r, const Tuning& t);

/// True when beta (tau + 1) > tau, i.e. every rank has a positive lower argument.
bool admissible(double beta, double tau) noexcept;

/// Closed form of the integral of f_i(y)^(tau+1) over (0, inf).
double integral_term(const LLParams& p, const RankStat& r, const Tuning& t);
double log_integral_term(const LLParams& p, const RankStat& r, const Tuning& t);

/// Empirical DPD objective H_{n,tau}; requires tau > 0.
double objective(const RankedSample& s, const LLParams& p, const Tuning& t);

/// (dH/dalpha, dH/dbeta).
std::array<double, 2> gradient(const RankedSample& s, const LLParams& p, const Tuning& t);

/// Minimum DPD estimate. Starts from `init` when given, otherwise from the
/// HL estimate (falling back to SM, then to (median, 1)).
FitResult fit_mdpde(const RankedSample& s, const Tuning& t, std::optional<LLParams> init = std::nullopt,
                    const FitOptions& options = {});

}  // namespace dpd
}  // namespace llrss
