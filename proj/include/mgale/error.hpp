//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/error.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>

namespace mgale
{
//---------------------------------------------------------------------------//
//! Invalid model definition (non-stochastic matrix, non-ergodic chain, ...).
class ModelError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Invalid caller input (empty samples, t outside [0,1], unknown ids).
class InputError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Operation needs an oracle or moment the model does not have.
class UnsupportedModel : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Requested work exceeds the configured resource guard.
class BudgetError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Monte Carlo sample too small to decide at the requested tolerance.
class InconclusiveBudget : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Configuration file problem; names the offending key.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string key, std::string const& what)
        : std::runtime_error("config key '" + key + "': " + what)
        , key_(std::move(key))
    {
    }
    std::string const& key() const noexcept { return key_; }

  private:
    std::string key_;
};

//---------------------------------------------------------------------------//
}  // namespace mgale
