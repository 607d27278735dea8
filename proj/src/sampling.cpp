#include "llrss/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace llrss {

RankedSample::RankedSample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::domain_error("RankedSample: empty sample");
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!(values_[k] > 0.0) || std::isinf(values_[k])) {
            throw std::domain_error("RankedSample: entry " + std::to_string(k + 1) +
                                    " is not a finite positive real");
        }
    }
}

RankedSample RankedSample::scaled(double k) const {
    std::vector<double> out(values_);
    for (double& v : out) v *= k;
    return RankedSample(std::move(out));
}

std::string_view to_string(ContaminationCase c) noexcept {
    switch (c) {
        case ContaminationCase::none: return "none";
        case ContaminationCase::case1: return "1";
        case ContaminationCase::case2: return "2";
        case ContaminationCase::case3: return "3";
        case ContaminationCase::case4: return "4";
    }
    return "none";
}

std::optional<ContaminationCase> parse_contamination_case(std::string_view text) {
    if (text == "none" || text == "0") return ContaminationCase::none;
    if (text == "1" || text == "case1") return ContaminationCase::case1;
    if (text == "2" || text == "case2") return ContaminationCase::case2;
    if (text == "3" || text == "case3") return ContaminationCase::case3;
    if (text == "4" || text == "case4") return ContaminationCase::case4;
    return std::nullopt;
}

void ScenarioSpec::validate() const {
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::domain_error("ScenarioSpec: contamination fraction must lie in [0, 1), got " +
                                std::to_string(p));
    }
}

std::size_t ScenarioSpec::replaced_count(std::size_t n) const {
    if (kind == ContaminationCase::none) return 0;
    return static_cast<std::size_t>(std::floor(p * static_cast<double>(n) + 1e-9));
}

namespace sampling {
namespace {

void require_size(std::size_t n) {
    if (n == 0) throw std::domain_error("RSS sampler: set size must be at least 1");
}

// Replaces `count` uniformly chosen entries of `values` (partial Fisher-Yates).
void replace_positions(std::vector<double>& values, std::size_t count, ContaminationCase kind,
                       RngStream& rng) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t j = k + static_cast<std::size_t>(rng.uniform_index(idx.size() - k));
        std::swap(idx[k], idx[j]);
        values[idx[k]] = contamination_value(kind, rng);
    }
}

}  // namespace

RankedSample draw_rss_literal(const LLParams& p, std::size_t n, RngStream& rng) {
    require_size(n);
    std::vector<double> out(n);
    std::vector<double> set(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (double& x : set) x = model::quantile(p, rng.uniform_open());
        std::nth_element(set.begin(), set.begin() + static_cast<std::ptrdiff_t>(i), set.end());
        out[i] = set[i];
    }
    return RankedSample(std::move(out));
}

RankedSample draw_rss_direct(const LLParams& p, std::size_t n, RngStream& rng) {
    require_size(n);
    std::vector<double> out(n);
    for (std::size_t i = 1; i <= n; ++i) {
        // V = G1 / (G1 + G2) ~ Beta(i, n-i+1), so V / (1 - V) = G1 / G2.
        double g1 = 0.0;
        double g2 = 0.0;
        while (!(g1 > 0.0)) g1 = rng.gamma(static_cast<double>(i));
        while (!(g2 > 0.0)) g2 = rng.gamma(static_cast<double>(n - i + 1));
        out[i - 1] = p.alpha() * std::exp((std::log(g1) - std::log(g2)) / p.beta());
    }
    return RankedSample(std::move(out));
}

double contamination_value(ContaminationCase kind, RngStream& rng) {
    switch (kind) {
        case ContaminationCase::case1: return model::quantile(LLParams(1.0, 0.2), rng.uniform_open());
        case ContaminationCase::case2: return model::quantile(LLParams(4.0, 10.0), rng.uniform_open());
        case ContaminationCase::case3: return 20.0 * rng.uniform_open();
        case ContaminationCase::case4: return 50.0;
        case ContaminationCase::none: break;
    }
    throw std::invalid_argument("contamination_value: no contaminating law for case 'none'");
}

RankedSample contaminate(const RankedSample& s, const ScenarioSpec& spec, RngStream& rng) {
    spec.validate();
    const std::size_t count = spec.replaced_count(s.n());
    if (count == 0) return s;
    std::vector<double> values(s.values().begin(), s.values().end());
    replace_positions(values, count, spec.kind, rng);
    return RankedSample(std::move(values));
}

RankedSample draw_rss_contaminated_sets(const LLParams& p, std::size_t n, const ScenarioSpec& spec,
                                        RngStream& rng) {
    require_size(n);
    spec.validate();
    const std::size_t count = spec.replaced_count(n);
    std::vector<double> out(n);
    std::vector<double> set(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (double& x : set) x = model::quantile(p, rng.uniform_open());
        if (count > 0) replace_positions(set, count, spec.kind, rng);
        std::nth_element(set.begin(), set.begin() + static_cast<std::ptrdiff_t>(i), set.end());
        out[i] = set[i];
    }
    return RankedSample(std::move(out));
}

}  // namespace sampling
}  // namespace llrss
