//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/models.hpp
//! Stationary process catalogue with exact conditional-expectation oracles.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "distribution.hpp"

namespace mgale
{
//---------------------------------------------------------------------------//
/*!
 * Stationary finite-state chain observed through X_i = f(xi_i).
 *
 * Construction validates the transition matrix (row-stochastic within 1e-12,
 * primitive), computes the stationary law and centers the observable so that
 * sum_s pi_s f(s) = 0.
 */
struct FiniteMarkovModel
{
    Eigen::MatrixXd transition;
    Eigen::VectorXd observable;
    Eigen::VectorXd stationary;
    std::vector<std::vector<double>> row_cdf;

    static FiniteMarkovModel
    make(Eigen::MatrixXd const& q, Eigen::VectorXd const& f, bool center = true);

    int num_states() const { return static_cast<int>(transition.rows()); }
};

//! X_i i.i.d. with a centered law.
struct IIDModel
{
    Distribution dist;
};

//! X_n = sum_{j=0}^{J} a_j xi_{n-j}; coefficients beyond J are zero.
struct LinearProcessModel
{
    std::vector<double> coeffs;
    Distribution innovation;

    std::size_t truncation() const { return coeffs.size() - 1; }
};

//! X_k = d_k + eps_{k-1} - eps_k with heavy-tailed eps (infinite variance).
struct CounterexampleModel
{
    Distribution martingale_diff;
    Distribution heavy;
};

using ModelSpec = std::
    variant<IIDModel, FiniteMarkovModel, LinearProcessModel, CounterexampleModel>;

struct ProcessModel
{
    std::string id;
    ModelSpec spec;

    //! One of "iid", "finite_markov", "linear", "counterexample".
    std::string kind() const;
    bool is_markov() const
    {
        return std::holds_alternative<FiniteMarkovModel>(spec);
    }
    //! E(X_0^2) < infinity.
    bool finite_variance() const;
    nlohmann::json to_json() const;
};

//! Build and validate a model from its declarative description.
ProcessModel model_from_json(nlohmann::json const& j);

//---------------------------------------------------------------------------//
// OPERATIONS
//---------------------------------------------------------------------------//

//! Stationary law of a primitive stochastic matrix.
Eigen::VectorXd stationary_dist(Eigen::MatrixXd const& q);

//! f minus its pi-mean.
Eigen::VectorXd
center_observable(Eigen::VectorXd const& f, Eigen::VectorXd const& pi);

//! Q^i f: evaluated at state s it is E(X_i | xi_0 = s).
Eigen::VectorXd markov_cond_exp(FiniteMarkovModel const& model, int lag);

/*!
 * Weights of E_0(S_n) on past innovations.
 *
 * Returns w with E_0(S_n) = sum_j w[j] xi_{-j}; w[j] = b_{n+j} - b_j. The
 * vector has length J+1 (weights beyond the truncation are zero).
 */
std::vector<double>
linear_cond_exp_sums(LinearProcessModel const& model, std::size_t n);

//! Prefix sums b_n = a_0 + ... + a_{n-1} and their Cesaro limit.
struct CoefficientSummary
{
    std::vector<double> b;  //!< b[0] = 0, ..., b[n_max]
    double cesaro_last = 0;  //!< (1/n_max) sum_{j=1}^{n_max} b_j
    double rel_fluctuation = 0;  //!< over the final decade
    std::optional<double> limit;  //!< c, when converged
};

inline constexpr double cesaro_tolerance = 1e-6;

CoefficientSummary b_sequence(std::vector<double> const& a,
                              std::size_t n_max,
                              double tol = cesaro_tolerance);

//---------------------------------------------------------------------------//
}  // namespace mgale
