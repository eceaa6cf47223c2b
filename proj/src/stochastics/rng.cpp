#include "hlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace hlab {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

// 53 random bits mapped into the open interval (0, 1).
inline double to_open_unit(std::uint32_t hi, std::uint32_t lo)
{
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key)
{
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t replica, StreamTag tag)
{
    const std::uint64_t k = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(tag) + 0x5851F42D4C957F2Dull));
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    counter_ = {static_cast<std::uint32_t>(replica), static_cast<std::uint32_t>(replica >> 32), 0u, 0u};
}

void NormalStream::refill()
{
    const auto r = philox4x32(counter_, key_);
    if (++counter_[2] == 0) ++counter_[3];
    const double u1 = to_open_unit(r[0], r[1]);
    const double u2 = to_open_unit(r[2], r[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_[0] = radius * std::cos(angle);
    cached_[1] = radius * std::sin(angle);
    available_ = 2;
}

double NormalStream::normal()
{
    if (available_ == 0) refill();
    return cached_[2 - available_--];
}

double NormalStream::uniform()
{
    const auto r = philox4x32(counter_, key_);
    if (++counter_[2] == 0) ++counter_[3];
    available_ = 0;
    return to_open_unit(r[0], r[1]);
}

} // namespace hlab
