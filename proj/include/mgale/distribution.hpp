//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/distribution.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "random.hpp"

namespace mgale
{
//---------------------------------------------------------------------------//
/*!
 * Centered, symmetric scalar law used for innovations and i.i.d. draws.
 *
 * - rademacher: +/- scale with probability 1/2
 * - normal: N(0, scale^2)
 * - uniform: U(-scale, scale)
 * - symmetric_pareto: random sign times scale * U^(-1/alpha), so that
 *   P(|x| > t) = (scale/t)^alpha for t >= scale. Infinite variance when
 *   alpha <= 2, finite mean absolute value when alpha > 1.
 */
struct Distribution
{
    enum class Kind
    {
        rademacher,
        normal,
        uniform,
        symmetric_pareto
    };

    Kind kind = Kind::normal;
    double scale = 1.0;
    double alpha = 0.0;  //!< Pareto tail index

    static Distribution rademacher(double scale = 1.0);
    static Distribution normal(double sigma = 1.0);
    static Distribution uniform(double half_width);
    static Distribution symmetric_pareto(double alpha, double scale = 1.0);

    //! Validated construction from {"name": ..., params}.
    static Distribution from_json(nlohmann::json const& j);
    nlohmann::json to_json() const;
    std::string name() const;

    double variance() const;  //!< +inf when infinite
    double abs_mean() const;  //!< E|x|, +inf when infinite
    bool finite_variance() const;
    bool gaussian() const { return kind == Kind::normal; }

    double sample(Sampler& rng) const
    {
        switch (kind)
        {
            case Kind::rademacher:
                return rng.uniform() < 0.5 ? -scale : scale;
            case Kind::normal:
                return scale * rng.normal();
            case Kind::uniform:
                return scale * (2 * rng.uniform() - 1);
            case Kind::symmetric_pareto: {
                double const u = rng.uniform();
                double const mag = scale * std::pow(u, -1.0 / alpha);
                return rng.uniform() < 0.5 ? -mag : mag;
            }
        }
        return 0;
    }
};

bool operator==(Distribution const& a, Distribution const& b);

//---------------------------------------------------------------------------//
}  // namespace mgale
