#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "llrss/model.hpp"
#include "llrss/rng.hpp"

namespace llrss {

/// One balanced RSS cycle: values[i-1] is the observation of rank i from a set
/// of size n = values.size().
class RankedSample {
public:
    explicit RankedSample(std::vector<double> values);

    std::size_t n() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }

    /// Multiplies every value by k > 0.
    RankedSample scaled(double k) const;

    friend bool operator==(const RankedSample&, const RankedSample&) = default;

private:
    std::vector<double> values_;
};

enum class ContaminationCase { none, case1, case2, case3, case4 };

std::string_view to_string(ContaminationCase c) noexcept;
std::optional<ContaminationCase> parse_contamination_case(std::string_view text);

struct ScenarioSpec {
    ContaminationCase kind = ContaminationCase::none;
    double p = 0.0;

    /// Throws std::domain_error unless 0 <= p < 1.
    void validate() const;
    /// floor(p * n), guarded against p*n landing just below an integer.
    std::size_t replaced_count(std::size_t n) const;
};

namespace sampling {

/// McIntyre's procedure: n sets of n draws, keep the i-th smallest of set i.
RankedSample draw_rss_literal(const LLParams& p, std::size_t n, RngStream& rng);

/// Same law in O(n): Y_i = quantile(V_i) with V_i ~ Beta(i, n - i + 1).
RankedSample draw_rss_direct(const LLParams& p, std::size_t n, RngStream& rng);

/// A single replacement value for the given case (case != none).
double contamination_value(ContaminationCase kind, RngStream& rng);

/// Replaces floor(p n) positions, chosen uniformly without replacement, by
/// draws from the contaminating distribution. No re-ranking.
RankedSample contaminate(const RankedSample& s, const ScenarioSpec& spec, RngStream& rng);

/// Alternative scheme: each raw set of the literal procedure has floor(p n)
/// of its draws replaced before ranking.
RankedSample draw_rss_contaminated_sets(const LLParams& p, std::size_t n, const ScenarioSpec& spec,
                                        RngStream& rng);

}  // namespace sampling
}  // namespace llrss
