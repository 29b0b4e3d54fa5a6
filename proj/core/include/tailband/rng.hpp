#pragma once

#include <cstdint>
#include <vector>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

namespace tailband {

/// Reproducible random stream identified by (seed, stream_id).
///
/// The engine is MT19937-64 seeded through std::seed_seq from the 32-bit
/// halves of the key words; both algorithms are fixed by the C++ standard,
/// so the raw sequence is identical on every conforming platform. Normal
/// and exponential variates use Boost's ziggurat samplers, whose code does
/// not vary between standard library implementations.
///
/// Streams are cheap to construct. Parallel work derives one child stream
/// per work item with `derive(index)`, so results never depend on which
/// thread ran which item.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return key_[0]; }
    std::uint64_t stream_id() const noexcept { return key_[1]; }

    /// Independent child stream keyed by this stream's key plus `tag`.
    RngStream derive(std::uint64_t tag) const;

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform()
    {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return normal_(engine_); }
    double exponential() { return exponential_(engine_); }

    boost::random::mt19937_64& engine() noexcept { return engine_; }

private:
    explicit RngStream(std::vector<std::uint64_t> key);
    void reseed();

    std::vector<std::uint64_t> key_;
    boost::random::mt19937_64 engine_;
    boost::random::normal_distribution<double> normal_;
    boost::random::exponential_distribution<double> exponential_;
};

/// Stream-id domains so that independent consumers inside one run never
/// share a sequence.
namespace streams {
inline constexpr std::uint64_t sample = 0x01;
inline constexpr std::uint64_t bridge = 0x02;
inline constexpr std::uint64_t stilde = 0x03;
inline constexpr std::uint64_t sup_bm = 0x04;
inline constexpr std::uint64_t band = 0x05;
inline constexpr std::uint64_t coverage = 0x06;
inline constexpr std::uint64_t stable = 0x07;
}  // namespace streams

}  // namespace tailband
