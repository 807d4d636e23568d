#pragma once

#include <cstdint>

namespace curlow {

/// Identifies a reproducible random stream: a counter-based generator keyed
/// by (seed, stream id). Identical keys give identical sequences everywhere.
/// Parallel trials take distinct stream ids; a trial carves further
/// independent streams out of its own with substream().
struct RngStream {
    static constexpr const char* algorithm = "splitmix64-counter";

    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    RngStream substream(std::uint64_t tag) const;

    friend bool operator==(const RngStream&, const RngStream&) = default;
};

/// Stateful draw cursor over an RngStream. The k-th output is a pure
/// function of (seed, stream id, k).
class CounterRng {
public:
    explicit CounterRng(const RngStream& stream);

    std::uint64_t next_u64();
    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound);
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();
    double normal();
    /// Rademacher variable, +1 or -1.
    double sign();

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace curlow
