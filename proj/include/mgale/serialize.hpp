//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/serialize.hpp
//! JSON and CSV renderings of results.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "criteria.hpp"
#include "limit_tests.hpp"
#include "martingale.hpp"
#include "norms.hpp"

namespace mgale
{
//---------------------------------------------------------------------------//
struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string str() const;
};

//! Shortest round-trip text for a double; "inf", "-inf" and "nan" spelled out.
std::string format_double(double v);
//! Pretty JSON with a trailing newline.
std::string dump_json(nlohmann::json const& j);
//! Throws InputError when the file cannot be written.
void write_text(std::string const& path, std::string const& content);

//---------------------------------------------------------------------------//
//! Time points 0, 1, 2, 4, ..., n used to summarize a decomposition.
std::vector<std::size_t> dyadic_checkpoints(std::size_t n);

nlohmann::json decomposition_summary(Decomposition const& d);
CsvTable decomposition_table(Decomposition const& d);

CsvTable norm_table(std::vector<NormEstimate> const& estimates);
CsvTable criteria_table(CriteriaSweep const& sweep);
CsvTable clt_table(CltTestResult const& r);
CsvTable eta_table(EtaEstimate const& e);
CsvTable fclt_table(std::vector<FclTestResult> const& r);
CsvTable cdf_table(std::string const& functional,
                   std::vector<std::array<double, 3>> const& rows);
CsvTable residual_table(ResidualDecayResult const& r);

//---------------------------------------------------------------------------//
}  // namespace mgale
