//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/catalogue.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "models.hpp"

namespace mgale
{
//---------------------------------------------------------------------------//
struct CatalogueEntry
{
    std::string id;
    std::string description;
    nlohmann::json spec;
};

//! Models shipped with the library.
std::vector<CatalogueEntry> builtin_catalogue();

/*!
 * Built-in entries merged with a catalogue file {"models": {id: spec}}.
 * Entries from the file override built-ins with the same id. An empty path
 * returns the built-ins; a path that cannot be read throws InputError.
 */
std::vector<CatalogueEntry> load_catalogue(std::string const& path);

//! Look up and build a model by id; throws InputError for unknown ids.
ProcessModel
catalogue_model(std::string_view id, std::vector<CatalogueEntry> const& cat);
ProcessModel catalogue_model(std::string_view id);

//! Parameter schema per model kind, for listings.
nlohmann::json kind_schemas();

//---------------------------------------------------------------------------//
}  // namespace mgale
