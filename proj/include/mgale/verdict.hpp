//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/verdict.hpp
//! Three-way verdicts from finite evidence.
//---------------------------------------------------------------------------//
#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace mgale
{
//---------------------------------------------------------------------------//
enum class Verdict
{
    satisfied,
    violated,
    inconclusive
};

std::string to_string(Verdict v);
//! Throws InputError for unknown names.
Verdict verdict_from_string(std::string const& s);

inline constexpr double default_tolerance = 0.02;

/*!
 * Rule for "sequence tends to zero" clauses.
 *
 * The tail window is the last decade of the grid (at least two points).
 * - satisfied: every tail value < tol and the tail is non-increasing up to
 *   se_mult combined standard errors;
 * - violated: divergence flag, an infinite tail value, or a plateau (every
 *   tail value >= plateau_factor * tol and last/first >= plateau_ratio);
 * - inconclusive otherwise.
 */
struct TailRule
{
    double tol = default_tolerance;
    double se_mult = 2.0;
    double plateau_factor = 10.0;
    double plateau_ratio = 0.9;
};

//! Indices of the tail window for a grid.
std::vector<std::size_t> tail_window(std::vector<double> const& grid);

Verdict limit_zero_verdict(std::vector<double> const& grid,
                           std::vector<double> const& values,
                           std::vector<double> const& se,
                           bool divergence_flag,
                           TailRule const& rule);

//! Finite total -> satisfied; infinite -> violated; NaN -> inconclusive.
Verdict finite_verdict(double total);

//! Conjunction: any violated -> violated; all satisfied -> satisfied.
Verdict all_of(std::initializer_list<Verdict> parts);

//! True when one verdict is satisfied and the other violated.
bool contradicts(Verdict a, Verdict b);

//---------------------------------------------------------------------------//
}  // namespace mgale
