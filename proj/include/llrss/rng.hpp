#pragma once

#include <cstdint>
#include <random>

namespace llrss {

/// Seeded random stream. Replication r of a run uses
/// RngStream::for_replication(master_seed, r); the derived seed depends only
/// on that pair, so serial and parallel runs see identical streams.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    static RngStream for_replication(std::uint64_t master_seed, std::uint64_t replication);

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform_open();
    /// Uniform integer in [0, bound).
    std::uint64_t uniform_index(std::uint64_t bound);
    /// Gamma(shape, 1) variate.
    double gamma(double shape);

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace llrss
