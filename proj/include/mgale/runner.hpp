//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/runner.hpp
//! Configured experiment runs with manifests.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "criteria.hpp"
#include "limit_tests.hpp"
#include "models.hpp"
#include "verdict.hpp"

namespace mgale
{
//---------------------------------------------------------------------------//
struct RunOverrides
{
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<std::string> format;
    std::optional<unsigned> workers;
};

struct ExperimentConfig
{
    ProcessModel model;
    std::string task;  //!< decompose, norms, criteria, clt, fclt, full-suite
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::vector<std::size_t> n_grid;
    std::vector<std::size_t> m_grid;
    std::size_t paths = 200;
    double tol = default_tolerance;
    double cauchy_tol = 1e-3;
    std::string out_dir = "out";
    std::string format = "json";

    // decompose
    std::size_t decompose_n = 0;
    bool residual_enforce = false;
    ResidualOptions residual;
    std::vector<std::size_t> residual_grid;

    // norms
    std::vector<std::string> norm_functionals;
    double norm_p = 1;
    bool norm_mplus = true;

    // criteria
    std::vector<std::string> criteria_ids;
    CriteriaOptions criteria;
    std::map<std::string, Verdict> expect;

    // clt
    CltOptions clt;
    std::vector<std::size_t> eta_grid;
    std::size_t eta_paths = 0;

    // fclt
    std::size_t fclt_n = 0;
    std::size_t fclt_paths = 0;
    std::vector<std::string> fclt_functionals;
    FclOptions fclt;
    std::size_t cdf_points = 101;

    //! Effective configuration with defaults filled in; excludes output and
    //! worker settings, which do not affect results.
    nlohmann::json canonical;
    std::string hash;  //!< SHA-256 of canonical
};

std::vector<std::string> const& task_ids();

/*!
 * Parse and validate a configuration document.
 *
 * Relative catalogue paths resolve against base_dir. Throws ConfigError
 * naming the offending key.
 */
ExperimentConfig parse_config(nlohmann::json const& doc,
                              std::string const& base_dir,
                              RunOverrides const& ov = {});
ExperimentConfig load_config(std::string const& path, RunOverrides const& ov = {});

struct CheckResult
{
    std::string task;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RunManifest
{
    std::string config_hash;
    std::string version;
    double wall_clock = 0;
    std::map<std::string, std::vector<std::string>> outputs;  //!< task -> files
    std::map<std::string, std::string> file_hashes;  //!< file -> SHA-256
    std::vector<CheckResult> checks;
    bool passed = false;

    nlohmann::json to_json() const;
};

//! Execute the configured tasks, write outputs and manifest.json.
RunManifest run_experiment(ExperimentConfig const& cfg);

//! Catalogue ids, descriptions and parameter schemas.
nlohmann::json list_models(std::string const& catalogue_path = {});

std::string sha256_hex(std::string const& bytes);
std::string sha256_file(std::string const& path);

char const* version_string();

//---------------------------------------------------------------------------//
}  // namespace mgale
