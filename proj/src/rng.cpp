#include "curlow/rng.hpp"

#include <cmath>
#include <numbers>

namespace curlow {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kStreamMul = 0xD1B54A32D192ED03ull;
constexpr std::uint64_t kStreamAdd = 0x8CB92BA72F3D8DD7ull;
}  // namespace

std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

RngStream RngStream::substream(std::uint64_t tag) const {
    return RngStream{seed, mix64(stream_id * kStreamMul + mix64(tag + kGolden))};
}

CounterRng::CounterRng(const RngStream& stream)
    : key_(mix64(mix64(stream.seed) ^ (stream.stream_id * kStreamMul + kStreamAdd))) {}

std::uint64_t CounterRng::next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

std::uint64_t CounterRng::uniform_below(std::uint64_t bound) {
    // Lemire's multiply-and-reject; exact and platform independent.
    unsigned __int128 product = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            product = static_cast<unsigned __int128>(next_u64()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

double CounterRng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double CounterRng::sign() {
    return (next_u64() >> 63) ? 1.0 : -1.0;
}

}  // namespace curlow
