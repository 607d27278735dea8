#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llrss/model.hpp"
#include "llrss/sampling.hpp"

namespace llrss {

enum class EstimatorKind { mle, dpd, rm, sm, hl };

std::string_view to_string(EstimatorKind k) noexcept;
std::optional<EstimatorKind> parse_estimator(std::string_view text);

enum class SamplerKind { literal, direct };

struct SimConfig {
    LLParams truth{1.0, 5.0};
    std::size_t n = 100;
    std::size_t reps = 1000;
    /// Tuning values for the DPD rows (each must be > 0).
    std::vector<double> taus = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    ScenarioSpec scenario{};
    std::uint64_t seed = 1;
    std::vector<EstimatorKind> estimators = {EstimatorKind::mle, EstimatorKind::dpd, EstimatorKind::rm,
                                             EstimatorKind::sm, EstimatorKind::hl};
    SamplerKind sampler = SamplerKind::literal;
    /// Contaminate the raw sets before ranking instead of the ranked sample.
    bool contaminate_before_ranking = false;
    /// 0 selects LLRSS_THREADS, else the hardware concurrency.
    std::size_t threads = 0;

    /// Throws std::invalid_argument on an unusable configuration.
    void validate() const;
};

/// Aggregate over the replications in which the estimator produced a fit.
struct EstimatorSummary {
    EstimatorKind kind;
    /// Set for DPD rows only.
    std::optional<double> tau;
    double bias = 0.0;
    double rmse = 0.0;
    double alpha_hat_mean = 0.0;
    double beta_hat_mean = 0.0;
    std::size_t successes = 0;
    std::size_t failures = 0;

    std::string label() const;
};

struct SimSummary {
    SimConfig config;
    std::vector<EstimatorSummary> rows;
    double wall_seconds = 0.0;
};

namespace harness {

/// Threads used when SimConfig::threads is 0.
std::size_t default_threads();

/// One point estimate per row of a SimSummary, or nullopt on failure.
struct ReplicationFits {
    std::vector<std::optional<LLParams>> fits;
};

/// The sample used by replication r of a run.
RankedSample replication_sample(const SimConfig& config, std::uint64_t r);

/// Fits every configured estimator on one sample, in row order.
ReplicationFits fit_all(const SimConfig& config, const RankedSample& sample);

/// Deterministic in config.seed, independent of the thread count.
SimSummary run(const SimConfig& config);

/// Runs each configuration in turn. A configuration that throws yields a
/// summary whose rows are all failures.
std::vector<SimSummary> sweep(const std::vector<SimConfig>& configs);

/// The 9-point contamination grid 0, 0.05, ..., 0.40.
std::vector<double> p_grid();

}  // namespace harness
}  // namespace llrss
