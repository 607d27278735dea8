#pragma once

#include <array>
#include <optional>
#include <vector>

#include "llrss/fit.hpp"
#include "llrss/model.hpp"
#include "llrss/sampling.hpp"

namespace llrss::classical {

/// Median; even-length inputs average the two central order statistics.
double median(std::vector<double> values);

/// Mean negative RSS log-likelihood, -(1/n) sum ln f_i(y_i), and its gradient.
double mle_objective(const RankedSample& s, const LLParams& p);
std::array<double, 2> mle_gradient(const RankedSample& s, const LLParams& p);

/// RSS maximum likelihood. Samples with fewer than two distinct values are
/// ill-posed and come back with converged = false.
FitResult fit_mle(const RankedSample& s, std::optional<LLParams> init = std::nullopt,
                  const FitOptions& options = {});

/// Repeated-median regression of the logit plotting positions on ln x.
LLParams fit_rm(const RankedSample& s);

/// Median / MAD of the log sample.
LLParams fit_sm(const RankedSample& s);

/// Hodges-Lehmann location and Shamos scale of the log sample.
LLParams fit_hl(const RankedSample& s);

/// HL, else SM, else (median(y), 1).
LLParams robust_start(const RankedSample& s);

}  // namespace llrss::classical
