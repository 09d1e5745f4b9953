//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/simulate.hpp
//! Reproducible stationary trajectories.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "models.hpp"
#include "oracle.hpp"
#include "random.hpp"

namespace mgale
{
//---------------------------------------------------------------------------//
/*!
 * One trajectory: observations X_0..X_{n-1} plus latent variables through
 * time n, so that theta_n and D_n are available without truncation.
 */
struct PathBuffer
{
    std::vector<double> x;
    std::vector<int> states;  //!< xi_0..xi_len (Markov)
    std::vector<double> innov;  //!< times -history..len (innovation models)
    std::size_t history = 0;
    std::size_t channels = 0;

    LatentView view() const
    {
        return {states.data(), innov.data(), history, channels};
    }
    //! Last time index with latent data.
    std::ptrdiff_t latent_end() const;
};

class PathGenerator
{
  public:
    explicit PathGenerator(ProcessModel const& model);

    Oracle const& oracle() const { return oracle_; }

    /*!
     * Fill out with a path of length n.
     *
     * Without a prefix the path starts in stationarity. A prefix carries
     * latent data through some time k (states xi_0..xi_k, or innovations
     * -history..k); the new path copies it and draws the future afresh,
     * which samples the law conditional on F_k.
     */
    void generate(Sampler& rng,
                  std::size_t n,
                  PathBuffer& out,
                  PathBuffer const* prefix = nullptr) const;

    //! Prefix for a Markov path conditioned on xi_0 = s.
    PathBuffer state_prefix(int s) const;

  private:
    Oracle oracle_;
    std::vector<double> pi_cdf_;
};

//---------------------------------------------------------------------------//
/*!
 * Independent stationary trajectories with their latent variables.
 *
 * Path p is produced by Sampler(seed, stream, p), so any subset of paths
 * can be regenerated bit-exactly.
 */
struct PathEnsemble
{
    std::string model_id;
    std::size_t n = 0;
    std::size_t npaths = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = stream::stationary;
    std::vector<double> data;  //!< npaths x n, row-major

    std::size_t history = 0;
    std::size_t channels = 0;
    std::vector<int> states;  //!< npaths x (n + 1)
    std::vector<double> innov;  //!< npaths x (n + 1 + history) * channels

    bool has_latent() const { return !states.empty() || !innov.empty(); }
    std::span<double const> path(std::size_t p) const
    {
        return {data.data() + p * n, n};
    }
    LatentView latent(std::size_t p) const;
};

inline constexpr double default_value_budget = 1e9;

PathEnsemble sample_paths(ProcessModel const& model,
                          std::size_t n,
                          std::size_t npaths,
                          std::uint64_t seed,
                          unsigned workers = 1,
                          double budget = default_value_budget);

//! Row-wise S_1..S_n for every path (S_1 = X_0).
std::vector<double> partial_sums(PathEnsemble const& ens);
std::vector<double> partial_sums(std::span<double const> x);

struct InterpolatedPath
{
    std::vector<double> t;
    std::vector<double> u;
};

/*!
 * U_n(t) = S_[nt] + (nt - [nt]) X_[nt] from sums S_1..S_n (S_0 = 0).
 */
InterpolatedPath interpolate(std::span<double const> sums,
                             std::size_t n,
                             std::span<double const> t_grid);

//---------------------------------------------------------------------------//
// PERSISTENCE
//---------------------------------------------------------------------------//

void write_ensemble_csv(PathEnsemble const& ens, std::string const& path);
void write_ensemble_binary(PathEnsemble const& ens, std::string const& path);
//! Reads either layout (detected from the leading bytes). No latent data.
PathEnsemble read_ensemble(std::string const& path);

//---------------------------------------------------------------------------//
}  // namespace mgale
