//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file oracle.cpp
//---------------------------------------------------------------------------//
#include "mgale/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mgale/error.hpp"
#include "mgale/random.hpp"

namespace mgale
{
namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd matrix_power(Eigen::MatrixXd const& q, std::size_t j)
{
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(q.rows(), q.cols());
    Eigen::MatrixXd base = q;
    while (j)
    {
        if (j & 1u)
            result = result * base;
        j >>= 1;
        if (j)
            base = base * base;
    }
    return result;
}

// E|UV| for a centered Gaussian pair.
double gaussian_abs_product(double su, double sv, double cov)
{
    if (su == 0 || sv == 0)
        return 0;
    double r = std::clamp(cov / (su * sv), -1.0, 1.0);
    return 2 / std::numbers::pi * su * sv
           * (std::sqrt(1 - r * r) + r * std::asin(r));
}

}  // namespace

//---------------------------------------------------------------------------//
Oracle::Oracle(ProcessModel const& model)
{
    struct Visitor
    {
        Oracle& self;
        void operator()(FiniteMarkovModel const& m)
        {
            self.chain_ = m;
            self.x_.state = m.observable;
        }
        void operator()(IIDModel const& m)
        {
            self.laws_ = {m.dist};
            self.x_.channels = 1;
            self.x_.weights = {1.0};
        }
        void operator()(LinearProcessModel const& m)
        {
            self.laws_ = {m.innovation};
            self.history_ = m.truncation();
            self.x_.channels = 1;
            self.x_.weights = m.coeffs;
        }
        void operator()(CounterexampleModel const& m)
        {
            // Channels (d, eps): X_t = d_t - eps_t + eps_{t-1}.
            self.laws_ = {m.martingale_diff, m.heavy};
            self.history_ = 1;
            self.x_.channels = 2;
            self.x_.weights = {1.0, -1.0, 0.0, 1.0};
        }
    };
    std::visit(Visitor{*this}, model.spec);
}

FiniteMarkovModel const& Oracle::chain() const
{
    if (!chain_)
        throw UnsupportedModel("model is not a finite Markov chain");
    return *chain_;
}

Summand Oracle::zero() const
{
    Summand z;
    if (chain_)
    {
        z.state = Eigen::VectorXd::Zero(chain_->num_states());
    }
    else
    {
        z.channels = laws_.size();
    }
    return z;
}

Summand Oracle::shift(Summand const& z, std::size_t lag) const
{
    if (chain_)
    {
        Summand out = z;
        for (std::size_t i = 0; i < lag; ++i)
            out.state = chain_->transition * out.state;
        // Entries at round-off level of the input are exact zeros.
        double const floor = 64 * std::numeric_limits<double>::epsilon()
                             * (z.state.size() ? z.state.cwiseAbs().maxCoeff() : 0.0);
        if (lag > 0)
            out.state = (out.state.cwiseAbs().array() <= floor).select(0.0, out.state);
        return out;
    }
    Summand out = zero();
    std::size_t const nl = z.lags();
    if (lag < nl)
    {
        out.weights.assign(z.weights.begin() + lag * z.channels,
                           z.weights.end());
    }
    return out;
}

void Oracle::axpy(double c, Summand const& z, Summand& acc) const
{
    if (chain_)
    {
        acc.state += c * z.state;
        return;
    }
    if (acc.weights.size() < z.weights.size())
        acc.weights.resize(z.weights.size(), 0.0);
    for (std::size_t i = 0; i < z.weights.size(); ++i)
        acc.weights[i] += c * z.weights[i];
}

double Oracle::pi_mean(Eigen::VectorXd const& g) const
{
    return chain().stationary.dot(g);
}

bool Oracle::heavy(Summand const& z) const
{
    if (chain_)
        return false;
    for (std::size_t i = 0; i < z.weights.size(); ++i)
    {
        if (z.weights[i] != 0 && !laws_[i % z.channels].finite_variance())
            return true;
    }
    return false;
}

//---------------------------------------------------------------------------//
double Oracle::autocov(Summand const& z, std::size_t k) const
{
    if (chain_)
    {
        Eigen::VectorXd g = shift(z, k).state;
        return chain_->stationary.dot(z.state.cwiseProduct(g));
    }
    double acc = 0;
    std::size_t const c = z.channels;
    std::size_t const nl = z.lags();
    for (std::size_t l = 0; l + k < nl; ++l)
    {
        for (std::size_t ch = 0; ch < c; ++ch)
        {
            double const p = z.weights[l * c + ch] * z.weights[(l + k) * c + ch];
            if (p == 0)
                continue;
            double const var = laws_[ch].variance();
            if (std::isinf(var))
                return p > 0 || k == 0 ? inf : -inf;
            acc += p * var;
        }
    }
    return acc;
}

std::vector<double> Oracle::autocov_seq(Summand const& z, std::size_t kmax) const
{
    std::vector<double> out(kmax + 1, 0.0);
    if (chain_)
    {
        Eigen::VectorXd g = z.state;
        Eigen::VectorXd wz = chain_->stationary.cwiseProduct(z.state);
        for (std::size_t k = 0; k <= kmax; ++k)
        {
            out[k] = wz.dot(g);
            g = chain_->transition * g;
        }
        return out;
    }
    for (std::size_t k = 0; k <= kmax && k < std::max<std::size_t>(z.lags(), 1);
         ++k)
        out[k] = autocov(z, k);
    return out;
}

double Oracle::diff_second_moment(Summand const& z) const
{
    if (chain_)
    {
        Eigen::VectorXd const qz = chain_->transition * z.state;
        auto const& pi = chain_->stationary;
        double const v = pi.dot(z.state.cwiseAbs2()) - pi.dot(qz.cwiseAbs2());
        return std::max(v, 0.0);
    }
    Summand lag0 = zero();
    if (z.lags() > 0)
        lag0.weights.assign(z.weights.begin(), z.weights.begin() + z.channels);
    return autocov(lag0, 0);
}

//---------------------------------------------------------------------------//
Moment Oracle::abs_moment(Summand const& z) const
{
    if (chain_)
        return {chain_->stationary.dot(z.state.cwiseAbs()), 0, true};

    // Count contributing terms and check whether all of them are Gaussian.
    std::size_t nonzero = 0;
    std::size_t last = 0;
    bool all_gaussian = true;
    for (std::size_t i = 0; i < z.weights.size(); ++i)
    {
        if (z.weights[i] == 0)
            continue;
        ++nonzero;
        last = i;
        all_gaussian = all_gaussian && laws_[i % z.channels].gaussian();
    }
    if (nonzero == 0)
        return {0, 0, true};
    if (nonzero == 1)
    {
        return {std::abs(z.weights[last]) * laws_[last % z.channels].abs_mean(),
                0,
                true};
    }
    if (all_gaussian)
        return {std::sqrt(2 / std::numbers::pi * autocov(z, 0)), 0, true};
    return mc_abs(z.weights, z.lags(), 0);
}

Moment Oracle::diff_abs_moment(Summand const& z) const
{
    if (chain_)
    {
        auto const& q = chain_->transition;
        auto const& pi = chain_->stationary;
        Eigen::VectorXd const qz = q * z.state;
        double acc = 0;
        for (int s = 0; s < q.rows(); ++s)
        {
            double row = 0;
            for (int t = 0; t < q.cols(); ++t)
                row += q(s, t) * std::abs(z.state[t] - qz[s]);
            acc += pi[s] * row;
        }
        return {acc, 0, true};
    }
    Summand lag0 = zero();
    if (z.lags() > 0)
        lag0.weights.assign(z.weights.begin(), z.weights.begin() + z.channels);
    return abs_moment(lag0);
}

Moment
Oracle::abs_product(Summand const& z, std::size_t j, Summand const& w) const
{
    if (chain_)
    {
        auto const& pi = chain_->stationary;
        Eigen::VectorXd const tail = matrix_power(chain_->transition, j)
                                     * z.state.cwiseAbs();
        return {pi.dot(w.state.cwiseAbs().cwiseProduct(tail)), 0, true};
    }
    // Joint window in lags back from time j: Z_j uses rows [0, lz),
    // W_0 uses rows [j, j + lw).
    std::size_t const c = laws_.size();
    std::size_t const window = std::max(z.lags(), j + w.lags());
    std::vector<double> wz(window * c, 0.0), ww(window * c, 0.0);
    std::copy(z.weights.begin(), z.weights.end(), wz.begin());
    std::copy(w.weights.begin(), w.weights.end(), ww.begin() + j * c);

    bool all_gaussian = true;
    for (std::size_t i = 0; i < wz.size(); ++i)
    {
        // The same infinite-variance variable in both factors.
        if (wz[i] != 0 && ww[i] != 0 && !laws_[i % c].finite_variance())
            return {inf, 0, true};
        if (wz[i] != 0 || ww[i] != 0)
            all_gaussian = all_gaussian && laws_[i % c].gaussian();
    }
    if (all_gaussian)
    {
        double vz = 0, vw = 0, cov = 0;
        for (std::size_t i = 0; i < wz.size(); ++i)
        {
            double const var = laws_[i % c].variance();
            vz += wz[i] * wz[i] * var;
            vw += ww[i] * ww[i] * var;
            cov += wz[i] * ww[i] * var;
        }
        return {gaussian_abs_product(std::sqrt(vz), std::sqrt(vw), cov), 0, true};
    }

    // Monte Carlo over the joint window.
    std::size_t const n = mc_samples;
    std::vector<double> e(wz.size());
    double mean = 0, m2 = 0;
    Sampler rng(0, stream::auxiliary, 1);
    for (std::size_t s = 0; s < n; ++s)
    {
        double a = 0, b = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
        {
            double const x = laws_[i % c].sample(rng);
            a += wz[i] * x;
            b += ww[i] * x;
        }
        double const v = std::abs(a * b);
        double const delta = v - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (v - mean);
    }
    return {mean, std::sqrt(m2 / static_cast<double>(n - 1) / n), false};
}

Moment Oracle::mc_abs(std::vector<double> const& weights,
                      std::size_t lags,
                      std::uint64_t tag) const
{
    std::size_t const c = laws_.size();
    std::size_t const n = mc_samples;
    std::size_t const len = lags * c;
    double mean = 0, m2 = 0;
    Sampler rng(0, stream::auxiliary, tag);
    for (std::size_t s = 0; s < n; ++s)
    {
        double a = 0;
        for (std::size_t i = 0; i < len; ++i)
        {
            double const x = laws_[i % c].sample(rng);
            a += weights[i] * x;
        }
        double const v = std::abs(a);
        double const delta = v - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (v - mean);
    }
    return {mean, std::sqrt(m2 / static_cast<double>(n - 1) / n), false};
}

//---------------------------------------------------------------------------//
Summand Oracle::theta_limit() const
{
    if (chain_)
    {
        // Poisson equation (I - Q + 1 pi^T) g = f; g has pi-mean zero.
        auto const& q = chain_->transition;
        auto const& pi = chain_->stationary;
        Eigen::Index const s = q.rows();
        Eigen::MatrixXd a = Eigen::MatrixXd::Identity(s, s) - q
                            + Eigen::VectorXd::Ones(s) * pi.transpose();
        Summand out;
        out.state = a.fullPivLu().solve(chain_->observable);
        return out;
    }
    Summand out = zero();
    std::size_t const c = x_.channels;
    std::size_t const nl = x_.lags();
    out.weights.assign(nl * c, 0.0);
    for (std::size_t l = nl; l-- > 0;)
    {
        for (std::size_t ch = 0; ch < c; ++ch)
        {
            double const next = l + 1 < nl ? out.weights[(l + 1) * c + ch] : 0;
            out.weights[l * c + ch] = x_.weights[l * c + ch] + next;
        }
    }
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace mgale
