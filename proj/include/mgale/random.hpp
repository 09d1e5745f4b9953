//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/random.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <random>

namespace mgale
{
//---------------------------------------------------------------------------//
/*!
 * Per-path random source.
 *
 * Every trajectory owns an engine whose seed is a pure function of
 * (master seed, stream, path index). No state is shared between paths, so an
 * ensemble is identical whatever order or worker count produced it.
 */
class Sampler
{
  public:
    using Engine = std::mt19937_64;

    Sampler(std::uint64_t master, std::uint64_t stream, std::uint64_t index)
    {
        auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
        auto hi = [](std::uint64_t v) {
            return static_cast<std::uint32_t>(v >> 32);
        };
        std::seed_seq seq{
            lo(master), hi(master), lo(stream), hi(stream), lo(index), hi(index)};
        engine_.seed(seq);
    }

    //! Uniform on the open interval (0, 1).
    double uniform()
    {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
    }

    double normal() { return normal_(engine_); }

    //! Draw an index from a cumulative probability row.
    template<class Cdf>
    int categorical(Cdf const& cdf)
    {
        double const u = this->uniform();
        int const last = static_cast<int>(cdf.size()) - 1;
        int s = 0;
        while (s < last && u >= cdf[s])
            ++s;
        return s;
    }

  private:
    Engine engine_;
    std::normal_distribution<double> normal_;
};

//! Stream identifiers used by the estimators.
namespace stream
{
inline constexpr std::uint64_t stationary = 0;
//! Conditioning on Markov state s uses stream conditioned_state + s.
inline constexpr std::uint64_t conditioned_state = 1;
inline constexpr std::uint64_t outer_condition = 1u << 20;
inline constexpr std::uint64_t inner_base = 1u << 21;
inline constexpr std::uint64_t auxiliary = 1u << 30;
}  // namespace stream

//---------------------------------------------------------------------------//
}  // namespace mgale
