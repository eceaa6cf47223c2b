#pragma once

#include <array>
#include <cstdint>

namespace hlab {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

// Independent sample sets of one experiment draw from disjoint stream families.
enum class StreamTag : std::uint32_t {
    generic = 0,
    lhs = 1,
    rhs = 2,
    forms = 3,
    setup = 4,
    extra = 5,
};

// Standard normal stream addressed by (seed, tag, replica). Draws depend
// only on that address and the draw index, never on thread scheduling.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t replica, StreamTag tag = StreamTag::generic);

    double normal();
    double uniform();

private:
    void refill();

    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> counter_{};
    double cached_[2]{};
    int available_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

} // namespace hlab
