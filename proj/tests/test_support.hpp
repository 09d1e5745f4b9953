//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/test_support.hpp
//! Hand-rolled generators for property tests.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "mgale/models.hpp"

namespace mgale::test
{
//---------------------------------------------------------------------------//
class Gen
{
  public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    int integer(int lo, int hi)
    {
        return std::uniform_int_distribution<int>(lo, hi)(engine_);
    }
    std::uint64_t seed() { return engine_(); }

    //! Strictly positive rows, so the chain is primitive.
    Eigen::MatrixXd stochastic_matrix(int s)
    {
        Eigen::MatrixXd q(s, s);
        for (int i = 0; i < s; ++i)
        {
            for (int j = 0; j < s; ++j)
                q(i, j) = uniform(0.05, 1.0);
            q.row(i) /= q.row(i).sum();
        }
        return q;
    }

    Eigen::VectorXd vector(int s, double scale = 1.0)
    {
        Eigen::VectorXd v(s);
        for (int i = 0; i < s; ++i)
            v[i] = uniform(-scale, scale);
        return v;
    }

    ProcessModel chain(int max_states = 5)
    {
        int const s = integer(2, max_states);
        return {"gen_chain",
                FiniteMarkovModel::make(stochastic_matrix(s), vector(s, 2.0))};
    }

    ProcessModel linear(std::size_t max_len = 8)
    {
        std::size_t const len = static_cast<std::size_t>(integer(1, static_cast<int>(max_len)));
        std::vector<double> a(len);
        for (auto& x : a)
            x = uniform(-1, 1);
        Distribution const innov = integer(0, 1) ? Distribution::normal(uniform(0.5, 2))
                                                 : Distribution::uniform(uniform(0.5, 2));
        return {"gen_linear", LinearProcessModel{a, innov}};
    }

    ProcessModel iid()
    {
        switch (integer(0, 2))
        {
            case 0:
                return {"gen_iid", IIDModel{Distribution::rademacher(uniform(0.5, 2))}};
            case 1:
                return {"gen_iid", IIDModel{Distribution::normal(uniform(0.5, 2))}};
            default:
                return {"gen_iid", IIDModel{Distribution::uniform(uniform(0.5, 2))}};
        }
    }

    ProcessModel counterexample()
    {
        return {"gen_counterexample",
                CounterexampleModel{Distribution::rademacher(uniform(0.5, 2)),
                                    Distribution::symmetric_pareto(uniform(1.2, 1.9))}};
    }

    //! Any model with an exact conditional-expectation oracle.
    ProcessModel model()
    {
        switch (integer(0, 3))
        {
            case 0:
                return iid();
            case 1:
                return chain();
            case 2:
                return linear();
            default:
                return counterexample();
        }
    }

  private:
    std::mt19937_64 engine_;
};

//! Run body on `trials` generated cases; failures report the case seed.
inline void for_all(int trials,
                    std::uint64_t seed,
                    std::function<void(Gen&)> const& body)
{
    std::mt19937_64 master(seed);
    for (int t = 0; t < trials; ++t)
    {
        std::uint64_t const case_seed = master();
        SCOPED_TRACE("case " + std::to_string(t) + " seed " + std::to_string(case_seed));
        Gen g(case_seed);
        body(g);
        if (::testing::Test::HasFatalFailure())
            return;
    }
}

//! The symmetric two-state chain with flip probability a and f = +/-1.
inline ProcessModel two_state(double a = 0.25)
{
    Eigen::MatrixXd q(2, 2);
    q << 1 - a, a, a, 1 - a;
    Eigen::VectorXd f(2);
    f << 1, -1;
    return {"two_state", FiniteMarkovModel::make(q, f)};
}

//---------------------------------------------------------------------------//
}  // namespace mgale::test
