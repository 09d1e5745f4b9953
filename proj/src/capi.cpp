//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file capi.cpp
//---------------------------------------------------------------------------//
#include "mgale/mgale.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "mgale/brownian.hpp"
#include "mgale/catalogue.hpp"
#include "mgale/criteria.hpp"
#include "mgale/error.hpp"
#include "mgale/limit_tests.hpp"
#include "mgale/norms.hpp"
#include "mgale/runner.hpp"
#include "mgale/simulate.hpp"

using nlohmann::json;

struct mgale_model
{
    mgale::ProcessModel model;
};

struct mgale_result
{
    std::string text;
};

namespace
{
thread_local std::string last_error;
thread_local std::string last_key;

void set_error(std::string msg, std::string key = {})
{
    last_error = std::move(msg);
    last_key = std::move(key);
}

// Runs fn, translating exceptions into status codes.
template<class F>
mgale_status guarded(F&& fn)
{
    set_error({});
    try
    {
        fn();
        return MGALE_OK;
    }
    catch (mgale::ConfigError const& e)
    {
        set_error(e.what(), e.key());
        return MGALE_ERR_CONFIG;
    }
    catch (mgale::ModelError const& e)
    {
        set_error(e.what());
        return MGALE_ERR_MODEL;
    }
    catch (mgale::UnsupportedModel const& e)
    {
        set_error(e.what());
        return MGALE_ERR_UNSUPPORTED;
    }
    catch (mgale::BudgetError const& e)
    {
        set_error(e.what());
        return MGALE_ERR_BUDGET;
    }
    catch (mgale::InconclusiveBudget const& e)
    {
        set_error(e.what());
        return MGALE_ERR_INCONCLUSIVE;
    }
    catch (json::exception const& e)
    {
        set_error(std::string("invalid JSON: ") + e.what());
        return MGALE_ERR_INPUT;
    }
    catch (mgale::InputError const& e)
    {
        std::string const msg = e.what();
        set_error(msg);
        bool const io = msg.rfind("cannot read", 0) == 0 || msg.rfind("cannot write", 0) == 0
                        || msg.rfind("cannot create", 0) == 0
                        || msg.rfind("write failed", 0) == 0;
        return io ? MGALE_ERR_IO : MGALE_ERR_INPUT;
    }
    catch (std::exception const& e)
    {
        set_error(e.what());
        return MGALE_ERR_INTERNAL;
    }
    catch (...)
    {
        set_error("unknown error");
        return MGALE_ERR_INTERNAL;
    }
}

mgale_status null_arg(char const* name)
{
    set_error(std::string("null argument: ") + name);
    return MGALE_ERR_INPUT;
}

json parse_options(char const* text)
{
    if (!text || !*text)
        return json::object();
    auto j = json::parse(text);
    if (!j.is_object())
        throw mgale::InputError("options must be a JSON object");
    return j;
}

mgale_result* make_result(json const& j)
{
    return new mgale_result{j.dump()};
}

std::vector<std::size_t> grid_of(json const& j, char const* key, std::vector<std::size_t> def)
{
    if (!j.contains(key))
        return def;
    auto g = j.at(key).get<std::vector<std::size_t>>();
    if (g.empty())
        throw mgale::InputError(std::string(key) + " must not be empty");
    return g;
}

mgale::RunOverrides overrides_of(char const* text)
{
    auto const j = parse_options(text);
    mgale::RunOverrides ov;
    if (j.contains("out"))
        ov.out_dir = j.at("out").get<std::string>();
    if (j.contains("seed"))
        ov.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("paths"))
        ov.paths = j.at("paths").get<std::size_t>();
    if (j.contains("format"))
        ov.format = j.at("format").get<std::string>();
    if (j.contains("workers"))
        ov.workers = j.at("workers").get<unsigned>();
    return ov;
}

}  // namespace

//---------------------------------------------------------------------------//
extern "C" {

char const* mgale_version(void)
{
    return mgale::version_string();
}

char const* mgale_status_name(mgale_status s)
{
    switch (s)
    {
    case MGALE_OK:
        return "ok";
    case MGALE_ERR_INPUT:
        return "input_error";
    case MGALE_ERR_MODEL:
        return "model_error";
    case MGALE_ERR_UNSUPPORTED:
        return "unsupported_model";
    case MGALE_ERR_BUDGET:
        return "budget_exceeded";
    case MGALE_ERR_CONFIG:
        return "config_error";
    case MGALE_ERR_IO:
        return "io_error";
    case MGALE_ERR_INCONCLUSIVE:
        return "inconclusive_budget";
    case MGALE_ERR_INTERNAL:
        return "internal_error";
    }
    return "unknown";
}

char const* mgale_last_error(void)
{
    return last_error.c_str();
}

char const* mgale_last_error_key(void)
{
    return last_key.c_str();
}

mgale_status
mgale_model_from_catalogue(char const* id, char const* catalogue_path, mgale_model** out)
{
    if (!id)
        return null_arg("id");
    if (!out)
        return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto const cat = mgale::load_catalogue(catalogue_path ? catalogue_path : "");
        *out = new mgale_model{mgale::catalogue_model(id, cat)};
    });
}

mgale_status mgale_model_from_json(char const* text, mgale_model** out)
{
    if (!text)
        return null_arg("json");
    if (!out)
        return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto m = mgale::model_from_json(json::parse(text));
        if (m.id.empty())
            m.id = "custom";
        *out = new mgale_model{std::move(m)};
    });
}

void mgale_model_free(mgale_model* m)
{
    delete m;
}

mgale_status mgale_model_describe(mgale_model const* m, mgale_result** out)
{
    if (!m)
        return null_arg("model");
    if (!out)
        return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        json j = m->model.to_json();
        j["id"] = m->model.id;
        j["finite_variance"] = m->model.finite_variance();
        *out = make_result(j);
    });
}

mgale_status mgale_list_models(char const* catalogue_path, mgale_result** out)
{
    if (!out)
        return null_arg("out");
    *out = nullptr;
    return guarded(
        [&] { *out = make_result(mgale::list_models(catalogue_path ? catalogue_path : "")); });
}

mgale_status mgale_sample_paths(mgale_model const* m,
                                size_t n,
                                size_t npaths,
                                uint64_t seed,
                                unsigned workers,
                                double* out)
{
    if (!m)
        return null_arg("model");
    if (!out)
        return null_arg("out");
    return guarded([&] {
        auto const ens = mgale::sample_paths(m->model, n, npaths, seed, workers ? workers : 1);
        std::memcpy(out, ens.data.data(), ens.data.size() * sizeof(double));
    });
}

mgale_status mgale_criteria(mgale_model const* m, char const* options_json, mgale_result** out)
{
    if (!m)
        return null_arg("model");
    if (!out)
        return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto const j = parse_options(options_json);
        auto o = mgale::CriteriaOptions::defaults();
        o.npaths = j.value("npaths", o.npaths);
        o.seed = j.value("seed", o.seed);
        o.workers = j.value("workers", o.workers);
        o.tol = j.value("tol", o.tol);
        o.horizon = j.value("horizon", o.horizon);
        o.n_grid = grid_of(j, "n_grid", o.n_grid);
        o.mc_n_grid = grid_of(j, "mc_n_grid", o.mc_n_grid);
        o.m_grid = grid_of(j, "m_grid", o.m_grid);
        auto const ids = j.value("ids", std::vector<std::string>{});
        *out = make_result(mgale::evaluate_criteria(m->model, ids, o).to_json());
    });
}

mgale_status mgale_norm(mgale_model const* m,
                        char const* functional,
                        double p,
                        char const* kind,
                        char const* options_json,
                        mgale_result** out)
{
    if (!m)
        return null_arg("model");
    if (!functional)
        return null_arg("functional");
    if (!out)
        return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto const j = parse_options(options_json);
        std::string const k = kind ? kind : "plus";
        if (k != "plus" && k != "mplus")
            throw mgale::InputError("norm kind must be 'plus' or 'mplus'");
        mgale::NormOptions o;
        o.npaths = j.value("npaths", o.npaths);
        o.seed = j.value("seed", o.seed);
        o.workers = j.value("workers", o.workers);
        auto const grid = grid_of(j, "n_grid", mgale::default_norm_grid());
        auto const est = k == "plus" ? mgale::plus_norm(m->model, functional, p, grid, o)
                                     : mgale::mplus_norm(m->model, functional, p, grid, o);
        *out = make_result(est.to_json());
    });
}

mgale_status mgale_clt_test(mgale_model const* m, char const* options_json, mgale_result** out)
{
    if (!m)
        return null_arg("model");
    if (!out)
        return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto const j = parse_options(options_json);
        mgale::CltOptions o;
        o.n = j.value("n", o.n);
        o.k = j.value("k", o.k);
        o.npaths_outer = j.value("outer", o.npaths_outer);
        o.npaths_inner = j.value("inner", o.npaths_inner);
        o.family = j.value("family", o.family);
        o.tol = j.value("tol", o.tol);
        o.seed = j.value("seed", o.seed);
        o.workers = j.value("workers", o.workers);
        if (j.contains("eta"))
            o.eta = j.at("eta").get<double>();
        *out = make_result(mgale::conditional_clt_test(m->model, o).to_json());
    });
}

mgale_status mgale_fclt_test(mgale_model const* m, char const* options_json, mgale_result** out)
{
    if (!m)
        return null_arg("model");
    if (!out)
        return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto const j = parse_options(options_json);
        mgale::FclOptions o;
        o.tol = j.value("tol", o.tol);
        o.seed = j.value("seed", o.seed);
        o.workers = j.value("workers", o.workers);
        if (j.contains("eta"))
            o.eta = j.at("eta").get<double>();
        if (j.contains("condition_state"))
            o.condition_state = j.at("condition_state").get<int>();
        auto const ids = j.value("functionals", mgale::functional_ids());
        auto const rs = mgale::fclt_suite(m->model,
                                          j.value("n", std::size_t{1000}),
                                          j.value("paths", std::size_t{10000}),
                                          ids,
                                          o);
        json arr = json::array();
        for (auto const& r : rs)
            arr.push_back(r.to_json());
        *out = make_result({{"results", arr}});
    });
}

mgale_status
mgale_validate_config(char const* path, char const* overrides_json, mgale_result** out)
{
    if (!path)
        return null_arg("path");
    if (!out)
        return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto const cfg = mgale::load_config(path, overrides_of(overrides_json));
        *out = make_result({{"valid", true},
                            {"config_hash", cfg.hash},
                            {"task", cfg.task},
                            {"model_id", cfg.model.id},
                            {"canonical", cfg.canonical}});
    });
}

mgale_status mgale_run_config(char const* path,
                              char const* overrides_json,
                              mgale_result** manifest,
                              int* passed)
{
    if (!path)
        return null_arg("path");
    if (!manifest)
        return null_arg("manifest");
    *manifest = nullptr;
    return guarded([&] {
        auto const cfg = mgale::load_config(path, overrides_of(overrides_json));
        auto const man = mgale::run_experiment(cfg);
        auto j = man.to_json();
        j["out_dir"] = cfg.out_dir;
        *manifest = make_result(j);
        if (passed)
            *passed = man.passed ? 1 : 0;
    });
}

char const* mgale_result_json(mgale_result const* r)
{
    return r ? r->text.c_str() : "";
}

void mgale_result_free(mgale_result* r)
{
    delete r;
}

}  // extern "C"
