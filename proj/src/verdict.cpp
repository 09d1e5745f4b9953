//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file verdict.cpp
//---------------------------------------------------------------------------//
#include "mgale/verdict.hpp"

#include <cmath>

#include "mgale/error.hpp"

namespace mgale
{
//---------------------------------------------------------------------------//
std::string to_string(Verdict v)
{
    switch (v)
    {
        case Verdict::satisfied:
            return "satisfied";
        case Verdict::violated:
            return "violated";
        case Verdict::inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

Verdict verdict_from_string(std::string const& s)
{
    if (s == "satisfied")
        return Verdict::satisfied;
    if (s == "violated")
        return Verdict::violated;
    if (s == "inconclusive")
        return Verdict::inconclusive;
    throw InputError("unknown verdict '" + s + "'");
}

std::vector<std::size_t> tail_window(std::vector<double> const& grid)
{
    std::vector<std::size_t> idx;
    if (grid.empty())
        return idx;
    double const last = grid.back();
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (grid[i] >= last / 10)
            idx.push_back(i);
    }
    if (idx.size() < 2 && grid.size() >= 2)
        idx = {grid.size() - 2, grid.size() - 1};
    return idx;
}

Verdict limit_zero_verdict(std::vector<double> const& grid,
                           std::vector<double> const& values,
                           std::vector<double> const& se,
                           bool divergence_flag,
                           TailRule const& rule)
{
    if (values.size() != grid.size() || (!se.empty() && se.size() != grid.size()))
        throw InputError("evidence and grid sizes differ");
    if (values.empty())
        return Verdict::inconclusive;
    auto const idx = tail_window(grid);
    auto err = [&](std::size_t i) { return se.empty() ? 0.0 : se[i]; };

    bool any_inf = false, any_nan = false;
    for (auto i : idx)
    {
        any_inf = any_inf || std::isinf(values[i]);
        any_nan = any_nan || std::isnan(values[i]);
    }
    if (divergence_flag || any_inf)
        return Verdict::violated;
    if (any_nan)
        return Verdict::inconclusive;

    bool below = true, monotone = true, plateau = true;
    for (std::size_t k = 0; k < idx.size(); ++k)
    {
        double const v = values[idx[k]];
        below = below && v < rule.tol;
        plateau = plateau && v >= rule.plateau_factor * rule.tol;
        if (k > 0)
        {
            double const prev = values[idx[k - 1]];
            double const slack = rule.se_mult
                                     * std::hypot(err(idx[k]), err(idx[k - 1]))
                                 + 1e-12 * std::abs(prev);
            monotone = monotone && v <= prev + slack;
        }
    }
    if (below && monotone)
        return Verdict::satisfied;
    double const first = values[idx.front()];
    double const last = values[idx.back()];
    if (plateau && first > 0 && last / first >= rule.plateau_ratio)
        return Verdict::violated;
    return Verdict::inconclusive;
}

Verdict finite_verdict(double total)
{
    if (std::isnan(total))
        return Verdict::inconclusive;
    return std::isinf(total) ? Verdict::violated : Verdict::satisfied;
}

Verdict all_of(std::initializer_list<Verdict> parts)
{
    bool all_sat = true;
    for (auto v : parts)
    {
        if (v == Verdict::violated)
            return Verdict::violated;
        all_sat = all_sat && v == Verdict::satisfied;
    }
    return all_sat ? Verdict::satisfied : Verdict::inconclusive;
}

bool contradicts(Verdict a, Verdict b)
{
    return (a == Verdict::satisfied && b == Verdict::violated)
           || (a == Verdict::violated && b == Verdict::satisfied);
}

//---------------------------------------------------------------------------//
}  // namespace mgale
