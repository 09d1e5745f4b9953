//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/criteria.hpp
//! Martingale-approximation criteria evaluated on catalogue models.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "models.hpp"
#include "verdict.hpp"

namespace mgale
{
//---------------------------------------------------------------------------//
struct Evidence
{
    std::string label;
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> se;  //!< empty for exact values
    std::string method = "exact";
};

struct CriterionReport
{
    std::string id;
    Verdict verdict = Verdict::inconclusive;
    double tolerance = default_tolerance;
    std::map<std::string, Verdict> clauses;
    std::vector<Evidence> evidence;
    std::vector<std::string> notes;
    nlohmann::json extra = nlohmann::json::object();

    nlohmann::json to_json() const;
};

//! All identifiers, in report order.
std::vector<std::string> const& criterion_ids();

struct CriteriaOptions
{
    std::vector<std::size_t> n_grid;  //!< exact sequences over n
    std::vector<std::size_t> mc_n_grid;  //!< Monte Carlo norms over n
    std::vector<std::size_t> m_grid;  //!< averaging parameters
    std::vector<std::size_t> i_grid;  //!< lags reported for E_{-i}(X_0)
    std::size_t npaths = 300;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    double tol = default_tolerance;
    double cauchy_tol = 1e-3;
    std::size_t horizon = 1000;  //!< K for projective and mixing sums
    std::size_t cesaro_n_max = 10000000;

    static CriteriaOptions defaults();
};

//---------------------------------------------------------------------------//
// INDIVIDUAL CRITERIA
//---------------------------------------------------------------------------//

CriterionReport check_ph(ProcessModel const& model, CriteriaOptions const& o);
CriterionReport check_zw(ProcessModel const& model, CriteriaOptions const& o);
//! Reports A, B and C.
std::vector<CriterionReport>
check_theorem2_abc(ProcessModel const& model, CriteriaOptions const& o);
//! Reports D, E, Dprime and Eprime.
std::vector<CriterionReport>
check_theorem3_de(ProcessModel const& model, CriteriaOptions const& o);
//! Reports F and G.
std::vector<CriterionReport>
check_theorem6_fg(ProcessModel const& model, CriteriaOptions const& o);

/*!
 * LIN_ZW and LIN_NEW from the coefficients alone.
 *
 * sigma is the innovation standard deviation; the E(S_n^2)/n clause compares
 * against sigma^2 c^2.
 */
std::vector<CriterionReport> linear_criteria(std::vector<double> const& a,
                                             double sigma,
                                             CriteriaOptions const& o);
std::vector<CriterionReport> linear_criteria(std::vector<double> const& a,
                                             std::size_t n_max);

//! Reports MW, PROJ_IND, MIXINGALE and PROJ_DIFF.
std::vector<CriterionReport>
projective_family(ProcessModel const& model, CriteriaOptions const& o);

//! Reports RHO_SUM and ALPHA_QUANTILE.
std::vector<CriterionReport>
mixing_sufficient_conditions(ProcessModel const& model, CriteriaOptions const& o);

//---------------------------------------------------------------------------//
// MIXING COEFFICIENTS
//---------------------------------------------------------------------------//

//! Largest singular value of the centered n-step operator on L2(pi).
double rho_coefficient(Eigen::MatrixXd const& q, Eigen::VectorXd const& pi, std::size_t n);

//! sup |P(A, B) - P(A)P(B)| over A = {xi_0 in a}, B = {xi_n in b}.
double alpha_coefficient(Eigen::MatrixXd const& q, Eigen::VectorXd const& pi, std::size_t n);

inline constexpr int max_alpha_states = 20;

//---------------------------------------------------------------------------//
// SWEEP
//---------------------------------------------------------------------------//

struct ConsistencyCheck
{
    std::string name;
    bool passed = true;
    std::string detail;
};

struct CriteriaSweep
{
    std::string model_id;
    std::vector<CriterionReport> reports;
    std::vector<ConsistencyCheck> checks;

    bool consistent() const;
    CriterionReport const* find(std::string const& id) const;
    nlohmann::json to_json() const;
};

/*!
 * Evaluate the requested criteria (all when ids is empty).
 *
 * Criteria that do not apply to the model are reported as inconclusive with
 * an "unsupported" note, so the sweep always covers every requested id.
 */
CriteriaSweep evaluate_criteria(ProcessModel const& model,
                                std::vector<std::string> const& ids,
                                CriteriaOptions const& o);

//---------------------------------------------------------------------------//
}  // namespace mgale
