#include "llrss/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "llrss/classical.hpp"
#include "llrss/dpd.hpp"

namespace llrss {

std::string_view to_string(EstimatorKind k) noexcept {
    switch (k) {
        case EstimatorKind::mle: return "mle";
        case EstimatorKind::dpd: return "dpd";
        case EstimatorKind::rm: return "rm";
        case EstimatorKind::sm: return "sm";
        case EstimatorKind::hl: return "hl";
    }
    return "unknown";
}

std::optional<EstimatorKind> parse_estimator(std::string_view text) {
    for (auto k : {EstimatorKind::mle, EstimatorKind::dpd, EstimatorKind::rm, EstimatorKind::sm, EstimatorKind::hl}) {
        if (text == to_string(k)) return k;
    }
    return std::nullopt;
}

std::string EstimatorSummary::label() const {
    std::ostringstream os;
    os << to_string(kind);
    if (tau) os << "(" << *tau << ")";
    return os.str();
}

void SimConfig::validate() const {
    if (n < 1) throw std::invalid_argument("simulation: n must be at least 1");
    if (reps < 1) throw std::invalid_argument("simulation: reps must be at least 1");
    if (estimators.empty()) throw std::invalid_argument("simulation: no estimators selected");
    const bool has_dpd = std::find(estimators.begin(), estimators.end(), EstimatorKind::dpd) != estimators.end();
    if (has_dpd && taus.empty()) throw std::invalid_argument("simulation: dpd selected with an empty tau list");
    for (double t : taus) {
        if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("simulation: every tau must be positive");
    }
    try {
        scenario.validate();
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(e.what());
    }
    if (scenario.kind != ContaminationCase::none && contaminate_before_ranking && sampler != SamplerKind::literal) {
        throw std::invalid_argument("simulation: contaminating raw sets requires the literal sampler");
    }
}

namespace harness {
namespace {

std::vector<EstimatorSummary> row_layout(const SimConfig& config) {
    std::vector<EstimatorSummary> rows;
    for (EstimatorKind k : config.estimators) {
        if (k == EstimatorKind::dpd) {
            for (double t : config.taus) rows.push_back(EstimatorSummary{k, t});
        } else {
            rows.push_back(EstimatorSummary{k, std::nullopt});
        }
    }
    return rows;
}

std::optional<LLParams> converged_or_none(const FitResult& fit) {
    if (!fit.converged) return std::nullopt;
    return fit.params;
}

template <class F>
std::optional<LLParams> guarded(F&& f) {
    try {
        return f();
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

std::size_t default_threads() {
    if (const char* env = std::getenv("LLRSS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> p_grid() {
    std::vector<double> g;
    for (int k = 0; k <= 8; ++k) g.push_back(0.05 * k);
    return g;
}

RankedSample replication_sample(const SimConfig& config, std::uint64_t r) {
    RngStream rng = RngStream::for_replication(config.seed, r);
    const bool dirty = config.scenario.kind != ContaminationCase::none && config.scenario.p > 0.0;
    if (dirty && config.contaminate_before_ranking) {
        return sampling::draw_rss_contaminated_sets(config.truth, config.n, config.scenario, rng);
    }
    RankedSample s = config.sampler == SamplerKind::literal ? sampling::draw_rss_literal(config.truth, config.n, rng)
                                                            : sampling::draw_rss_direct(config.truth, config.n, rng);
    if (dirty) s = sampling::contaminate(s, config.scenario, rng);
    return s;
}

ReplicationFits fit_all(const SimConfig& config, const RankedSample& sample) {
    ReplicationFits out;
    for (EstimatorKind k : config.estimators) {
        switch (k) {
            case EstimatorKind::mle:
                out.fits.push_back(guarded([&] { return converged_or_none(classical::fit_mle(sample)); }));
                break;
            case EstimatorKind::rm:
                out.fits.push_back(guarded([&] { return std::optional<LLParams>(classical::fit_rm(sample)); }));
                break;
            case EstimatorKind::sm:
                out.fits.push_back(guarded([&] { return std::optional<LLParams>(classical::fit_sm(sample)); }));
                break;
            case EstimatorKind::hl:
                out.fits.push_back(guarded([&] { return std::optional<LLParams>(classical::fit_hl(sample)); }));
                break;
            case EstimatorKind::dpd: {
                // Continuation in increasing tau; each converged fit seeds the next.
                std::vector<std::size_t> order(config.taus.size());
                std::iota(order.begin(), order.end(), std::size_t{0});
                std::stable_sort(order.begin(), order.end(),
                                 [&](std::size_t a, std::size_t b) { return config.taus[a] < config.taus[b]; });
                std::vector<std::optional<LLParams>> fits(config.taus.size());
                std::optional<LLParams> warm;
                for (std::size_t idx : order) {
                    fits[idx] = guarded([&] {
                        return converged_or_none(dpd::fit_mdpde(sample, Tuning(config.taus[idx]), warm));
                    });
                    if (fits[idx]) warm = fits[idx];
                }
                out.fits.insert(out.fits.end(), fits.begin(), fits.end());
                break;
            }
        }
    }
    return out;
}

SimSummary run(const SimConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    SimSummary summary{config, row_layout(config), 0.0};

    std::vector<ReplicationFits> results(config.reps);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    const auto worker = [&] {
        for (std::size_t r = next++; r < config.reps && !failed; r = next++) {
            try {
                results[r] = fit_all(config, replication_sample(config, r));
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min(config.threads > 0 ? config.threads : default_threads(), config.reps);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    const double a0 = config.truth.alpha();
    const double b0 = config.truth.beta();
    for (std::size_t row = 0; row < summary.rows.size(); ++row) {
        EstimatorSummary& es = summary.rows[row];
        double abs_sum = 0.0, sq_sum = 0.0, a_sum = 0.0, b_sum = 0.0;
        for (const ReplicationFits& rf : results) {
            const auto& fit = rf.fits[row];
            if (!fit) {
                ++es.failures;
                continue;
            }
            const double da = fit->alpha() - a0;
            const double db = fit->beta() - b0;
            abs_sum += std::abs(da) + std::abs(db);
            sq_sum += da * da + db * db;
            a_sum += fit->alpha();
            b_sum += fit->beta();
            ++es.successes;
        }
        if (es.successes == 0) {
            es.bias = es.rmse = es.alpha_hat_mean = es.beta_hat_mean = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        const auto m = static_cast<double>(es.successes);
        es.bias = abs_sum / m;
        es.rmse = std::sqrt(sq_sum / m);
        es.alpha_hat_mean = a_sum / m;
        es.beta_hat_mean = b_sum / m;
    }
    summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

std::vector<SimSummary> sweep(const std::vector<SimConfig>& configs) {
    if (configs.empty()) throw std::invalid_argument("sweep: no configurations");
    for (const SimConfig& c : configs) {
        if (c.estimators.empty()) throw std::invalid_argument("sweep: a configuration has no estimators");
    }
    std::vector<SimSummary> out;
    out.reserve(configs.size());
    for (const SimConfig& c : configs) {
        try {
            out.push_back(run(c));
        } catch (const std::exception&) {
            SimSummary failed{c, row_layout(c), 0.0};
            for (auto& row : failed.rows) {
                row.failures = c.reps;
                row.bias = row.rmse = row.alpha_hat_mean = row.beta_hat_mean =
                    std::numeric_limits<double>::quiet_NaN();
            }
            out.push_back(std::move(failed));
        }
    }
    return out;
}

}  // namespace harness
}  // namespace llrss
