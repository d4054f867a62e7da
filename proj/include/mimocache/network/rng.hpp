/*
   Copyright 2026 The mimocache Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Counter-based random streams (Philox4x32-10, Salmon et al., SC'11).
// A stream is addressed by (seed, stream_id, lane); nothing is shared between
// streams, so Monte Carlo trial t can run on any worker and draw exactly the
// same numbers.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

#include <boost/random/normal_distribution.hpp>

namespace mimocache::network {

namespace philox {

inline constexpr std::uint32_t kMul0 = 0xD2511F53;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline Counter round(const Counter& c, const Key& k)
{
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
}

inline Counter philox4x32_10(Counter c, Key k)
{
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        c = round(c, k);
    }
    return c;
}

} // namespace philox

class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t lane = 0)
        : seed_(seed), stream_id_(stream_id), lane_(lane),
          key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}
    {
    }

    /// Independent stream for the same (seed, stream_id), e.g. one per
    /// sub-task of a trial.
    RngStream lane(std::uint32_t lane) const { return RngStream(seed_, stream_id_, lane); }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        if (word_ >= 4) {
            refill();
        }
        const std::uint64_t hi = buffer_[word_];
        const std::uint64_t lo = buffer_[word_ + 1];
        word_ += 2;
        return (hi << 32) | lo;
    }

    /// Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

    /// Standard normal by the ziggurat method.
    double normal() { return boost::random::normal_distribution<double>{}(*this); }

    /// Circularly-symmetric CN(0, 1): unit variance split over I and Q.
    std::complex<double> complex_normal()
    {
        constexpr double kScale = std::numbers::sqrt2 / 2.0;
        const double re = normal();
        const double im = normal();
        return {kScale * re, kScale * im};
    }

    double exponential() { return -std::log(uniform()); }

    std::uint64_t poisson(double mean)
    {
        if (!(mean > 0.0)) {
            return 0;
        }
        std::poisson_distribution<std::uint64_t> dist(mean);
        return dist(*this);
    }

private:
    void refill()
    {
        const philox::Counter ctr{static_cast<std::uint32_t>(block_), lane_, static_cast<std::uint32_t>(stream_id_),
                                  static_cast<std::uint32_t>(stream_id_ >> 32)};
        buffer_ = philox::philox4x32_10(ctr, key_);
        ++block_;
        word_ = 0;
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint32_t lane_;
    philox::Key key_;
    std::uint64_t block_ = 0;
    philox::Counter buffer_{};
    int word_ = 4;
};

} // namespace mimocache::network
