//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/oracle.hpp
//! Exact conditional expectations of adapted stationary summands.
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "distribution.hpp"
#include "models.hpp"

namespace mgale
{
//---------------------------------------------------------------------------//
/*!
 * Read-only view of one trajectory's latent variables.
 *
 * Markov models store the state xi_t for t in [0, len). Innovation models
 * store innovations for t in [-history, len), channel-major within a time
 * step: innov[(t + history) * channels + c].
 */
struct LatentView
{
    int const* states = nullptr;
    double const* innov = nullptr;
    std::size_t history = 0;
    std::size_t channels = 0;
};

/*!
 * A stationary sequence Z_t adapted to the filtration, stored at time t.
 *
 * Markov models: Z_t = state[xi_t]. Innovation models:
 * Z_t = sum_l sum_c weights[l * channels + c] * innov_c(t - l).
 */
struct Summand
{
    Eigen::VectorXd state;
    std::vector<double> weights;
    std::size_t channels = 0;

    std::size_t lags() const
    {
        return channels ? weights.size() / channels : 0;
    }
};

//! Moment with a flag telling whether it is exact or a Monte Carlo estimate.
struct Moment
{
    double value = 0;
    double se = 0;
    bool exact = true;
};

/*!
 * Oracle for E_t(.) on a catalogue model.
 *
 * Every supported model is either a finite chain or a finite-memory linear
 * form in independent innovations. In both cases the representation of
 * E_t(Z_{t+i}) is again a Summand, so all constructions reduce to linear
 * algebra on representations.
 */
class Oracle
{
  public:
    explicit Oracle(ProcessModel const& model);

    bool markov() const { return chain_.has_value(); }
    FiniteMarkovModel const& chain() const;

    //! Innovation channels (zero for Markov models).
    std::size_t channels() const { return laws_.size(); }
    std::vector<Distribution> const& channel_laws() const { return laws_; }
    //! Largest lag of X on innovations.
    std::size_t history() const { return history_; }

    Summand zero() const;
    Summand observable() const { return x_; }

    //! Representation at time t of E_t(Z_{t+lag}).
    Summand shift(Summand const& z, std::size_t lag) const;
    //! acc += c * z
    void axpy(double c, Summand const& z, Summand& acc) const;

    //! Z_t along a trajectory. Needs t - lags(z) + 1 >= -history.
    double eval(Summand const& z, LatentView const& v, std::ptrdiff_t t) const
    {
        if (chain_)
            return z.state[v.states[t]];
        double acc = 0;
        std::size_t const c = z.channels;
        std::size_t const nl = z.lags();
        for (std::size_t l = 0; l < nl; ++l)
        {
            double const* w = z.weights.data() + l * c;
            double const* e = v.innov
                              + static_cast<std::size_t>(
                                    t - static_cast<std::ptrdiff_t>(l)
                                    + static_cast<std::ptrdiff_t>(v.history))
                                    * c;
            for (std::size_t k = 0; k < c; ++k)
                acc += w[k] * e[k];
        }
        return acc;
    }

    //! Z_t - E_{t-1}(Z_t) along a trajectory (t >= 1 for Markov models).
    double eval_diff(Summand const& z,
                     Summand const& z_shift1,
                     LatentView const& v,
                     std::ptrdiff_t t) const
    {
        return eval(z, v, t) - eval(z_shift1, v, t - 1);
    }

    //! E(Z_0 Z_k); +inf when an infinite-variance channel contributes.
    double autocov(Summand const& z, std::size_t k) const;
    std::vector<double> autocov_seq(Summand const& z, std::size_t kmax) const;
    double second_moment(Summand const& z) const { return autocov(z, 0); }

    //! E(Z_1 - E_0 Z_1)^2.
    double diff_second_moment(Summand const& z) const;
    //! E|Z_0|, exact where a closed form exists.
    Moment abs_moment(Summand const& z) const;
    //! E|Z_1 - E_0 Z_1|.
    Moment diff_abs_moment(Summand const& z) const;
    //! E|Z_j * W_0|, with both summands read at their own time.
    Moment abs_product(Summand const& z, std::size_t j, Summand const& w) const;

    //! True when Z has a nonzero weight on an infinite-variance channel.
    bool heavy(Summand const& z) const;

    //! Limit of theta^m as m grows: sum_{i>=0} E_0(X_i) in the sense of
    //! Cesaro averages (Poisson solution for chains, tail sums otherwise).
    Summand theta_limit() const;

    //! Expected value of pi-weighted g (Markov only).
    double pi_mean(Eigen::VectorXd const& g) const;

    //! Monte Carlo sample size for moments without a closed form.
    static constexpr std::size_t mc_samples = 400000;

  private:
    std::optional<FiniteMarkovModel> chain_;
    std::vector<Distribution> laws_;
    std::size_t history_ = 0;
    Summand x_;

    Moment mc_abs(std::vector<double> const& weights,
                  std::size_t lags,
                  std::uint64_t tag) const;
};

//---------------------------------------------------------------------------//
}  // namespace mgale
