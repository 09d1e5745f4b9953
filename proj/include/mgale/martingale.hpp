//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/martingale.hpp
//! Averaging construction of the approximating martingale.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "models.hpp"
#include "oracle.hpp"
#include "simulate.hpp"

namespace mgale
{
//---------------------------------------------------------------------------//
// REPRESENTATIONS
//---------------------------------------------------------------------------//

//! E_0(S_n) = sum_{i<n} E_0(X_i).
Summand cond_sum_repr(Oracle const& o, std::size_t n);

//! theta_0^m as sum_{i<m} (1 - i/m) E_0(X_i).
Summand theta_repr(Oracle const& o, std::size_t m);
//! theta_0^m as (1/m) sum_{i=1}^m E_0(S_i).
Summand theta_repr_sums(Oracle const& o, std::size_t m);

//! Y_0^m = (1/m) E_0(X_1 + ... + X_m).
Summand y_repr(Oracle const& o, std::size_t m);

//! Throws UnsupportedModel unless the model has an exact oracle.
void require_exact_oracle(ProcessModel const& model);

//---------------------------------------------------------------------------//
// SAMPLES ALONG PATHS
//---------------------------------------------------------------------------//

//! theta_k^m for k = 0..n on every path (row-major, npaths x (n+1)).
struct ThetaSamples
{
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t npaths = 0;
    std::vector<double> values;
    double route_gap = 0;  //!< max |weighted - sums| over representation
};

ThetaSamples
theta(ProcessModel const& model, PathEnsemble const& ens, std::size_t m);

//! D_k^m for k = 1..n and M_k^m for k = 0..n.
struct MartDiffSamples
{
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t npaths = 0;
    std::vector<double> d;  //!< npaths x n, entry k-1 holds D_k
    std::vector<double> mart;  //!< npaths x (n+1)
    //! max_s |E(D_1 | xi_0 = s)| for chains, 0 otherwise
    double conditional_mean_defect = 0;
};

MartDiffSamples
mart_diff(ProcessModel const& model, PathEnsemble const& ens, std::size_t m);

/*!
 * S_k = M_k + R_k along every path, k = 0..n, with S_0 = M_0 = R_0 = 0.
 *
 * All arrays are npaths x (n+1). Column 0 of d is zero (D_0 is not part of
 * M). The error fields record the checks performed during construction.
 */
struct Decomposition
{
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t npaths = 0;
    std::vector<double> sums;
    std::vector<double> theta;
    std::vector<double> d;
    std::vector<double> mart;
    std::vector<double> resid;
    std::vector<double> rbar;

    double max_identity_error = 0;  //!< |S - M - R| / (1 + |S|)
    double max_term_error = 0;  //!< X_k vs D_{k+1} + theta_k - theta_{k+1} + Y_k
    double max_rbar_gap = 0;  //!< two routes for Rbar
    double theta_route_gap = 0;

    double at(std::vector<double> const& a, std::size_t p, std::size_t k) const
    {
        return a[p * (n + 1) + k];
    }
};

Decomposition decompose(ProcessModel const& model,
                        PathEnsemble const& ens,
                        std::size_t m,
                        unsigned workers = 1);

//! Exact Y_0^m representation (per-state vector or innovation weights).
Summand y_process(ProcessModel const& model, std::size_t m);

//! max_s |E(D_1^m | xi_0 = s)| for a chain, computed state by state.
double martingale_defect(Oracle const& o, Summand const& theta);

//---------------------------------------------------------------------------//
// D_0^m AND ITS LIMIT
//---------------------------------------------------------------------------//

struct AveragedDifference
{
    std::size_t m = 0;
    std::vector<double> samples;  //!< D_0^m on each path
    double l2 = 0;  //!< exact ||D_0^m||_2 (may be +inf)
    double mean_mc = 0;
    double mean_se = 0;
    //! ||D_0^m - D_0||_p with D_0 the limit; exact and Monte Carlo versions
    Moment l1_to_limit;
    double l2_to_limit = 0;
    double l1_to_limit_mc = 0;
    double l1_to_limit_mc_se = 0;
};

struct D0Report
{
    std::vector<std::size_t> m_grid;
    std::vector<AveragedDifference> per_m;
    Eigen::MatrixXd l2_dist;  //!< exact pairwise ||D^{m'} - D^{m''}||_2
    Eigen::MatrixXd l1_dist;  //!< pairwise L1 distances
    std::vector<double> cauchy;  //!< successive L2 distances along the grid
    double tol = 0;
    std::optional<std::size_t> converged_at;  //!< first m with tail < tol
    double limit_l2 = 0;  //!< ||D_0||_2 of the limit
    std::vector<double> limit_samples;
};

inline constexpr double default_cauchy_tol = 1e-3;
std::vector<std::size_t> default_m_grid();

D0Report d0m(ProcessModel const& model,
             std::vector<std::size_t> const& m_grid,
             std::size_t npaths,
             std::uint64_t seed,
             double tol = default_cauchy_tol,
             unsigned workers = 1);

/*!
 * Uniqueness diagnostic: limits reached along two grids.
 *
 * Returns ||D_0^{a} - D_0^{b}||_2 for the last points a, b of both grids,
 * which should lie below the sum of their Cauchy tails.
 */
struct UniquenessCheck
{
    double distance = 0;
    double allowance = 0;
    bool consistent = false;
};

UniquenessCheck uniqueness_check(ProcessModel const& model,
                                 std::vector<std::size_t> const& grid_a,
                                 std::vector<std::size_t> const& grid_b);

//---------------------------------------------------------------------------//
}  // namespace mgale
