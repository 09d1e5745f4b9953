//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file brownian.cpp
//---------------------------------------------------------------------------//
#include "mgale/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mgale/error.hpp"

namespace mgale
{
//---------------------------------------------------------------------------//
double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p)
{
    if (!(p > 0 && p < 1))
        throw InputError("normal_quantile needs p in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double running_max_cdf(double x)
{
    return x <= 0 ? 0.0 : 2 * normal_cdf(x) - 1;
}

double abs_max_cdf(double x)
{
    if (x <= 0)
        return 0.0;
    double const c = std::numbers::pi * std::numbers::pi / (8 * x * x);
    double sum = 0;
    for (int k = 0; k < 100000; ++k)
    {
        double const odd = 2 * k + 1;
        double const term = std::exp(-odd * odd * c) / odd;
        sum += (k % 2 ? -term : term);
        if (term < 1e-12)
            break;
    }
    return std::clamp(4 / std::numbers::pi * sum, 0.0, 1.0);
}

double time_integral_cdf(double x)
{
    return normal_cdf(x * std::sqrt(3.0));
}

std::vector<std::string> const& functional_ids()
{
    static std::vector<std::string> const ids
        = {"endpoint", "running_max", "abs_max", "time_integral"};
    return ids;
}

std::function<double(double)> functional_cdf(std::string const& id)
{
    if (id == "endpoint")
        return normal_cdf;
    if (id == "running_max")
        return running_max_cdf;
    if (id == "abs_max")
        return abs_max_cdf;
    if (id == "time_integral")
        return time_integral_cdf;
    throw InputError("unknown functional '" + id + "'");
}

std::string functional_law(std::string const& id)
{
    if (id == "endpoint")
        return "N(0,1)";
    if (id == "running_max")
        return "2Phi(x)-1";
    if (id == "abs_max")
        return "abs_max_series";
    if (id == "time_integral")
        return "N(0,1/3)";
    throw InputError("unknown functional '" + id + "'");
}

//---------------------------------------------------------------------------//
double ks_distance(std::vector<double>& sample,
                   std::function<double(double)> const& cdf)
{
    if (sample.empty())
        throw InputError("ks_distance needs a nonempty sample");
    std::sort(sample.begin(), sample.end());
    auto const n = static_cast<double>(sample.size());
    double d = 0;
    std::size_t i = 0;
    while (i < sample.size())
    {
        // Ties form one jump of the empirical CDF.
        std::size_t j = i;
        while (j + 1 < sample.size() && sample[j + 1] == sample[i])
            ++j;
        double const f = cdf(sample[i]);
        d = std::max({d,
                      static_cast<double>(j + 1) / n - f,
                      f - static_cast<double>(i) / n});
        i = j + 1;
    }
    return std::clamp(d, 0.0, 1.0);
}

double ks_critical(std::size_t n)
{
    return 1.358 / std::sqrt(static_cast<double>(n));
}

double gaussian_expectation(std::function<double(double)> const& f, double eta)
{
    if (!(eta >= 0))
        throw InputError("gaussian_expectation needs eta >= 0");
    double const s = std::sqrt(eta);
    auto integrand = [&](double x) {
        return f(x * s) * std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi);
    };
    double const inf = std::numeric_limits<double>::infinity();
    double err = 0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, -inf, inf, 15, 1e-13, &err);
}

//---------------------------------------------------------------------------//
}  // namespace mgale
