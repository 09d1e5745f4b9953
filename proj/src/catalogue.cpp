//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file catalogue.cpp
//---------------------------------------------------------------------------//
#include "mgale/catalogue.hpp"

#include <algorithm>
#include <fstream>

#include "mgale/error.hpp"

namespace mgale
{
//---------------------------------------------------------------------------//
std::vector<CatalogueEntry> builtin_catalogue()
{
    using nlohmann::json;
    std::vector<CatalogueEntry> cat;
    cat.push_back({"iid",
                   "i.i.d. fair +/-1 signs",
                   json{{"kind", "iid"}, {"dist", {{"name", "rademacher"}}}}});
    cat.push_back(
        {"iid_normal",
         "i.i.d. standard normal",
         json{{"kind", "iid"}, {"dist", {{"name", "normal"}, {"sigma", 1.0}}}}});
    cat.push_back({"two_state",
                   "symmetric two-state chain, flip probability 1/4, f = +/-1",
                   json{{"kind", "finite_markov"},
                        {"Q", {{0.75, 0.25}, {0.25, 0.75}}},
                        {"f", {1.0, -1.0}}}});
    cat.push_back(
        {"three_state_reversible",
         "lazy birth-death chain on {0,1,2}, f = (1,0,-1)",
         json{{"kind", "finite_markov"},
              {"Q", {{0.5, 0.5, 0.0}, {0.25, 0.5, 0.25}, {0.0, 0.5, 0.5}}},
              {"f", {1.0, 0.0, -1.0}}}});
    cat.push_back(
        {"three_state_cycle",
         "non-reversible doubly stochastic rotation chain, f = (1,0,-1)",
         json{{"kind", "finite_markov"},
              {"Q", {{0.2, 0.7, 0.1}, {0.1, 0.2, 0.7}, {0.7, 0.1, 0.2}}},
              {"f", {1.0, 0.0, -1.0}}}});
    cat.push_back({"iid_chain",
                   "chain whose rows all equal pi = (0.3, 0.7)",
                   json{{"kind", "finite_markov"},
                        {"Q", {{0.3, 0.7}, {0.3, 0.7}}},
                        {"f", {1.0, -1.0}}}});
    cat.push_back(
        {"linear_geometric",
         "linear process a_j = 2^{-j-1}, J = 60, standard normal innovations",
         json{{"kind", "linear"},
              {"a_rule",
               {{"type", "geometric"}, {"first", 0.5}, {"ratio", 0.5}, {"J", 60}}},
              {"innovation", {{"name", "normal"}, {"sigma", 1.0}}}}});
    cat.push_back(
        {"linear_harmonic",
         "linear process a_j = 1/(j+1), J = 50, standard normal innovations",
         json{{"kind", "linear"},
              {"a_rule", {{"type", "harmonic"}, {"J", 50}}},
              {"innovation", {{"name", "normal"}, {"sigma", 1.0}}}}});
    cat.push_back({"counterexample",
                   "X_k = d_k + eps_{k-1} - eps_k, d = +/-1, eps symmetric "
                   "Pareto(1.5)",
                   json{{"kind", "counterexample"},
                        {"d", {{"name", "rademacher"}}},
                        {"eps",
                         {{"name", "symmetric_pareto"},
                          {"alpha", 1.5},
                          {"scale", 1.0}}}}});
    for (auto& e : cat)
        e.spec["id"] = e.id;
    return cat;
}

//---------------------------------------------------------------------------//
std::vector<CatalogueEntry> load_catalogue(std::string const& path)
{
    auto cat = builtin_catalogue();
    if (path.empty())
        return cat;
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read catalogue file '" + path + "'");
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (nlohmann::json::exception const& e)
    {
        throw InputError("catalogue file '" + path + "' is not valid JSON: "
                         + e.what());
    }
    if (!j.contains("models") || !j.at("models").is_object())
        throw InputError("catalogue file needs an object 'models'");
    for (auto const& [id, spec] : j.at("models").items())
    {
        // Validate eagerly so listings never show unbuildable entries.
        auto withid = spec;
        withid["id"] = id;
        model_from_json(withid);
        CatalogueEntry entry{id, spec.value("description", std::string{}), withid};
        auto it = std::find_if(cat.begin(), cat.end(), [&](auto const& e) {
            return e.id == id;
        });
        if (it != cat.end())
            *it = std::move(entry);
        else
            cat.push_back(std::move(entry));
    }
    return cat;
}

//---------------------------------------------------------------------------//
ProcessModel
catalogue_model(std::string_view id, std::vector<CatalogueEntry> const& cat)
{
    for (auto const& e : cat)
    {
        if (e.id == id)
            return model_from_json(e.spec);
    }
    throw InputError("unknown catalogue model '" + std::string(id) + "'");
}

ProcessModel catalogue_model(std::string_view id)
{
    return catalogue_model(id, builtin_catalogue());
}

nlohmann::json kind_schemas()
{
    using nlohmann::json;
    return json{
        {"iid", {{"dist", "distribution {name, params}"}}},
        {"finite_markov",
         {{"Q", "row-stochastic matrix rows"},
          {"f", "observable per state"},
          {"center", "bool, default true"}}},
        {"linear",
         {{"a", "coefficients a_0..a_J"},
          {"a_rule", "{type: geometric|harmonic|alternating, J, ...}"},
          {"truncation", "J (pads or cuts a)"},
          {"innovation", "distribution"}}},
        {"counterexample",
         {{"d", "finite-variance distribution"},
          {"eps", "symmetric_pareto with alpha in (1,2)"}}},
    };
}

//---------------------------------------------------------------------------//
}  // namespace mgale
