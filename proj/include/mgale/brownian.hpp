//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/brownian.hpp
//! Laws of Brownian functionals and goodness-of-fit helpers.
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace mgale
{
//---------------------------------------------------------------------------//
double normal_cdf(double x);
double normal_quantile(double p);

//! P(max_{t<=1} W(t) <= x) = 2 Phi(x) - 1 for x >= 0.
double running_max_cdf(double x);

/*!
 * P(max_{t<=1} |W(t)| <= x).
 *
 * Alternating series (4/pi) sum_k (-1)^k/(2k+1) exp(-(2k+1)^2 pi^2 / (8x^2)),
 * truncated once a term drops below 1e-12.
 */
double abs_max_cdf(double x);

//! int_0^1 W(t) dt ~ N(0, 1/3).
double time_integral_cdf(double x);

//! Functional ids: endpoint, running_max, abs_max, time_integral.
std::vector<std::string> const& functional_ids();
//! Limit CDF of a functional of standard Brownian motion.
std::function<double(double)> functional_cdf(std::string const& id);
//! Name of the limit law, for reports.
std::string functional_law(std::string const& id);

//---------------------------------------------------------------------------//
//! sup_x |F_n(x) - F(x)|; the sample is sorted in place.
double ks_distance(std::vector<double>& sample,
                   std::function<double(double)> const& cdf);

//! Two-sided Kolmogorov critical value at level 0.05 for sample size n.
double ks_critical(std::size_t n);

//! int f(x sqrt(eta)) phi(x) dx by adaptive Gauss-Kronrod on the real line.
double gaussian_expectation(std::function<double(double)> const& f, double eta);

//---------------------------------------------------------------------------//
}  // namespace mgale
