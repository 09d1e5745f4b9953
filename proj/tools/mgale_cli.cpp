//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/mgale_cli.cpp
//! Command-line front end; talks to the library only through the C API.
//---------------------------------------------------------------------------//
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mgale/mgale.h"

namespace
{
constexpr int exit_pass = 0;
constexpr int exit_check_failure = 1;
constexpr int exit_usage = 2;

struct Overrides
{
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::string format;
    std::optional<unsigned> workers;

    std::string json() const
    {
        nlohmann::json j = nlohmann::json::object();
        if (!out.empty())
            j["out"] = out;
        if (seed)
            j["seed"] = *seed;
        if (paths)
            j["paths"] = *paths;
        if (!format.empty())
            j["format"] = format;
        if (workers)
            j["workers"] = *workers;
        return j.dump();
    }
};

void add_overrides(CLI::App* cmd, Overrides& ov)
{
    cmd->add_option("--out", ov.out, "Output directory (overrides output.dir)");
    cmd->add_option("--seed", ov.seed, "Master seed (overrides seed)");
    cmd->add_option("--paths", ov.paths, "Path count (overrides grids.paths)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", ov.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "both"}));
    cmd->add_option("--workers", ov.workers, "Worker threads")->check(CLI::PositiveNumber);
}

int report_error(mgale_status s)
{
    std::cerr << "mgale: " << mgale_status_name(s) << ": " << mgale_last_error() << '\n';
    std::string const key = mgale_last_error_key();
    if (!key.empty())
        std::cerr << "mgale: offending key: " << key << '\n';
    return exit_usage;
}

int cmd_list(std::string const& catalogue, bool as_json)
{
    mgale_result* r = nullptr;
    auto const s = mgale_list_models(catalogue.empty() ? nullptr : catalogue.c_str(), &r);
    if (s != MGALE_OK)
        return report_error(s);
    auto const j = nlohmann::json::parse(mgale_result_json(r));
    mgale_result_free(r);
    if (as_json)
    {
        std::cout << j.dump(2) << '\n';
        return exit_pass;
    }
    std::cout << "Models:\n";
    for (auto const& m : j.at("models"))
    {
        std::cout << "  " << m.at("id").get<std::string>() << " ["
                  << m.at("kind").get<std::string>() << "]";
        auto const d = m.at("description").get<std::string>();
        if (!d.empty())
            std::cout << "  " << d;
        std::cout << '\n';
    }
    std::cout << "Kinds and parameters:\n";
    for (auto const& [kind, schema] : j.at("kinds").items())
        std::cout << "  " << kind << ": " << schema.dump() << '\n';
    return exit_pass;
}

int cmd_validate(std::string const& config, Overrides const& ov)
{
    mgale_result* r = nullptr;
    auto const s = mgale_validate_config(config.c_str(), ov.json().c_str(), &r);
    if (s != MGALE_OK)
        return report_error(s);
    auto const j = nlohmann::json::parse(mgale_result_json(r));
    mgale_result_free(r);
    std::cout << "config OK: task=" << j.at("task").get<std::string>()
              << " model=" << j.at("model_id").get<std::string>()
              << " hash=" << j.at("config_hash").get<std::string>() << '\n';
    return exit_pass;
}

int cmd_run(std::string const& config, Overrides const& ov)
{
    mgale_result* r = nullptr;
    int passed = 0;
    auto const s = mgale_run_config(config.c_str(), ov.json().c_str(), &r, &passed);
    if (s != MGALE_OK)
        return report_error(s);
    auto const j = nlohmann::json::parse(mgale_result_json(r));
    mgale_result_free(r);
    for (auto const& c : j.at("checks"))
    {
        std::cout << (c.at("passed").get<bool>() ? "PASS " : "FAIL ")
                  << c.at("task").get<std::string>() << ": "
                  << c.at("name").get<std::string>();
        auto const d = c.at("detail").get<std::string>();
        if (!d.empty())
            std::cout << " (" << d << ")";
        std::cout << '\n';
    }
    std::cout << "manifest: " << j.at("out_dir").get<std::string>() << "/manifest.json\n"
              << "overall: " << (passed ? "PASS" : "FAIL") << '\n';
    return passed ? exit_pass : exit_check_failure;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Martingale approximation experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(mgale_version()));

    std::string config;
    Overrides run_ov, val_ov;
    auto* run = app.add_subcommand("run", "Run a configured experiment");
    run->add_option("--config", config, "Configuration file")->required();
    add_overrides(run, run_ov);

    auto* validate = app.add_subcommand("validate", "Check a configuration without running");
    validate->add_option("--config", config, "Configuration file")->required();
    add_overrides(validate, val_ov);

    std::string catalogue;
    bool as_json = false;
    auto* list = app.add_subcommand("list-models", "List catalogue models");
    list->add_option("--catalogue", catalogue, "Extra catalogue file");
    list->add_flag("--json", as_json, "Print JSON");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::CallForVersion const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e);
        return exit_usage;
    }

    if (*run)
        return cmd_run(config, run_ov);
    if (*validate)
        return cmd_validate(config, val_ov);
    return cmd_list(catalogue, as_json);
}
