//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/norms.hpp
//! L_p, plus and M-plus norm estimators.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "models.hpp"
#include "oracle.hpp"

namespace mgale
{
//---------------------------------------------------------------------------//
struct NormValue
{
    double value = 0;
    double se = 0;
    //! False when a handful of samples dominate the moment (heavy tails).
    bool se_reliable = true;
};

//! (mean |x|^p)^{1/p} with a delta-method standard error; p in {1, 2}.
NormValue lp_norm(std::span<double const> samples, double p);

//---------------------------------------------------------------------------//
/*!
 * Identifier of a stationary summand.
 *
 * Grammar: [c*]NAME with NAME one of
 *  - "X": the observation X_0
 *  - "Y:m": Y_0^m
 *  - "E:i": E_{-i}(X_0)
 * and c an optional real scale factor.
 */
struct Functional
{
    std::string name;
    std::size_t param = 0;
    double scale = 1.0;

    static Functional parse(std::string const& text);
    std::string str() const;
    Summand repr(Oracle const& o) const;
};

struct NormEstimate
{
    std::string kind;  //!< "Lp", "plus" or "mplus"
    double p = 2;
    std::string functional;
    std::string method;  //!< "exact" or "monte_carlo"
    std::size_t npaths = 0;
    std::vector<std::size_t> n_grid;
    std::vector<double> values;
    std::vector<double> se;
    double extrapolated = 0;  //!< max over the last three grid points
    double divergence_ratio = 0;
    bool divergence_flag = false;
    bool se_reliable = true;

    nlohmann::json to_json() const;
};

inline constexpr double divergence_threshold = 1.5;
inline constexpr std::size_t limsup_window = 3;

//! 2^6, ..., 2^16.
std::vector<std::size_t> default_norm_grid();

struct NormOptions
{
    std::size_t npaths = 400;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    //! Use closed forms when available (p = 2 plus norms, Gaussian p = 1).
    bool allow_exact = true;
};

NormEstimate plus_norm(ProcessModel const& model,
                       std::string const& functional,
                       double p,
                       std::vector<std::size_t> const& n_grid,
                       NormOptions const& opts);

NormEstimate mplus_norm(ProcessModel const& model,
                        std::string const& functional,
                        double p,
                        std::vector<std::size_t> const& n_grid,
                        NormOptions const& opts);

/*!
 * Plus and M-plus norms of an arbitrary summand.
 *
 * Monte Carlo estimates of both kinds come from the same paths, so the
 * M-plus value dominates the plus value path by path.
 */
struct NormPair
{
    NormEstimate plus;
    NormEstimate mplus;
};

//! Several summands evaluated along one set of simulated paths.
std::vector<NormPair> batch_norms(Oracle const& o,
                                  ProcessModel const& model,
                                  std::vector<Summand> const& zs,
                                  std::vector<std::string> const& labels,
                                  double p,
                                  std::vector<std::size_t> const& n_grid,
                                  NormOptions const& opts,
                                  bool want_mplus);

NormPair summand_norms(Oracle const& o,
                       ProcessModel const& model,
                       Summand const& z,
                       std::string const& label,
                       double p,
                       std::vector<std::size_t> const& n_grid,
                       NormOptions const& opts,
                       bool want_mplus);

//! Exact n^{-1/2} ||sum_{j<n} Z_j||_2 on a grid (+inf for heavy summands).
std::vector<double> exact_plus2(Oracle const& o,
                                Summand const& z,
                                std::vector<std::size_t> const& n_grid);

//! Fill extrapolated value and divergence flag from values.
void finalize_estimate(NormEstimate& est);

//---------------------------------------------------------------------------//
}  // namespace mgale
