#include "tailband/rng.hpp"

#include <random>

namespace tailband {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : RngStream(std::vector<std::uint64_t>{seed, stream_id})
{
}

RngStream::RngStream(std::vector<std::uint64_t> key) : key_(std::move(key))
{
    reseed();
}

RngStream RngStream::derive(std::uint64_t tag) const
{
    auto key = key_;
    key.push_back(tag);
    return RngStream(std::move(key));
}

void RngStream::reseed()
{
    std::vector<std::uint32_t> words;
    words.reserve(2 * key_.size() + 1);
    words.push_back(static_cast<std::uint32_t>(key_.size()));
    for (auto w : key_) {
        words.push_back(static_cast<std::uint32_t>(w & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(w >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
    normal_.reset();
    exponential_.reset();
}

}  // namespace tailband
