//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file distribution.cpp
//---------------------------------------------------------------------------//
#include "mgale/distribution.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "mgale/error.hpp"

namespace mgale
{
namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();

double positive_param(nlohmann::json const& j, char const* key, double dflt)
{
    if (!j.contains(key))
        return dflt;
    if (!j.at(key).is_number())
        throw ModelError(std::string("distribution parameter '") + key
                         + "' must be a number");
    double const v = j.at(key).get<double>();
    if (!(v > 0) || !std::isfinite(v))
        throw ModelError(std::string("distribution parameter '") + key
                         + "' must be positive and finite");
    return v;
}
}  // namespace

//---------------------------------------------------------------------------//
Distribution Distribution::rademacher(double scale)
{
    return {Kind::rademacher, scale, 0};
}

Distribution Distribution::normal(double sigma)
{
    return {Kind::normal, sigma, 0};
}

Distribution Distribution::uniform(double half_width)
{
    return {Kind::uniform, half_width, 0};
}

Distribution Distribution::symmetric_pareto(double alpha, double scale)
{
    if (!(alpha > 1))
        throw ModelError("symmetric_pareto needs alpha > 1 for a finite mean");
    return {Kind::symmetric_pareto, scale, alpha};
}

//---------------------------------------------------------------------------//
Distribution Distribution::from_json(nlohmann::json const& j)
{
    if (j.is_string())
        return from_json(nlohmann::json{{"name", j}});
    if (!j.is_object() || !j.contains("name") || !j.at("name").is_string())
        throw ModelError("distribution needs a string 'name'");
    auto const name = j.at("name").get<std::string>();
    if (name == "rademacher")
        return rademacher(positive_param(j, "scale", 1.0));
    if (name == "normal")
        return normal(positive_param(j, "sigma", positive_param(j, "scale", 1.0)));
    if (name == "uniform")
        return uniform(positive_param(j, "half_width", positive_param(j, "scale", 1.0)));
    if (name == "symmetric_pareto")
        return symmetric_pareto(positive_param(j, "alpha", 1.5),
                                positive_param(j, "scale", 1.0));
    throw ModelError("unknown distribution '" + name + "'");
}

nlohmann::json Distribution::to_json() const
{
    nlohmann::json j{{"name", this->name()}, {"scale", scale}};
    if (kind == Kind::symmetric_pareto)
        j["alpha"] = alpha;
    return j;
}

std::string Distribution::name() const
{
    switch (kind)
    {
        case Kind::rademacher:
            return "rademacher";
        case Kind::normal:
            return "normal";
        case Kind::uniform:
            return "uniform";
        case Kind::symmetric_pareto:
            return "symmetric_pareto";
    }
    return "?";
}

//---------------------------------------------------------------------------//
double Distribution::variance() const
{
    switch (kind)
    {
        case Kind::rademacher:
        case Kind::normal:
            return scale * scale;
        case Kind::uniform:
            return scale * scale / 3;
        case Kind::symmetric_pareto:
            return alpha > 2 ? alpha * scale * scale / (alpha - 2) : inf;
    }
    return inf;
}

double Distribution::abs_mean() const
{
    switch (kind)
    {
        case Kind::rademacher:
            return scale;
        case Kind::normal:
            return scale * std::sqrt(2 / std::numbers::pi);
        case Kind::uniform:
            return scale / 2;
        case Kind::symmetric_pareto:
            return alpha > 1 ? alpha * scale / (alpha - 1) : inf;
    }
    return inf;
}

bool Distribution::finite_variance() const
{
    return std::isfinite(this->variance());
}

bool operator==(Distribution const& a, Distribution const& b)
{
    return a.kind == b.kind && a.scale == b.scale && a.alpha == b.alpha;
}

//---------------------------------------------------------------------------//
}  // namespace mgale
