//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file serialize.cpp
//---------------------------------------------------------------------------//
#include "mgale/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "mgale/error.hpp"

namespace mgale
{
namespace
{
std::string cell(std::string const& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

std::string str(std::size_t v)
{
    return std::to_string(v);
}

}  // namespace

//---------------------------------------------------------------------------//
std::string CsvTable::str() const
{
    std::string out;
    auto line = [&](std::vector<std::string> const& r) {
        for (std::size_t i = 0; i < r.size(); ++i)
        {
            if (i)
                out += ',';
            out += cell(r[i]);
        }
        out += '\n';
    };
    line(header);
    for (auto const& r : rows)
        line(r);
    return out;
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto const res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string dump_json(nlohmann::json const& j)
{
    return j.dump(2) + "\n";
}

void write_text(std::string const& path, std::string const& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << content;
    if (!out)
        throw InputError("write failed for '" + path + "'");
}

//---------------------------------------------------------------------------//
std::vector<std::size_t> dyadic_checkpoints(std::size_t n)
{
    std::vector<std::size_t> k = {0};
    for (std::size_t v = 1; v < n; v *= 2)
        k.push_back(v);
    if (n > 0)
        k.push_back(n);
    return k;
}

namespace
{
struct Moments
{
    double s2 = 0, m2 = 0, r2 = 0, rbar2 = 0, theta2 = 0;
};

Moments moments_at(Decomposition const& d, std::size_t k)
{
    Moments out;
    for (std::size_t p = 0; p < d.npaths; ++p)
    {
        auto sq = [&](std::vector<double> const& a) {
            double const v = d.at(a, p, k);
            return v * v;
        };
        out.s2 += sq(d.sums);
        out.m2 += sq(d.mart);
        out.r2 += sq(d.resid);
        out.rbar2 += sq(d.rbar);
        out.theta2 += sq(d.theta);
    }
    auto const n = static_cast<double>(d.npaths);
    out.s2 /= n;
    out.m2 /= n;
    out.r2 /= n;
    out.rbar2 /= n;
    out.theta2 /= n;
    return out;
}

}  // namespace

nlohmann::json decomposition_summary(Decomposition const& d)
{
    nlohmann::json pts = nlohmann::json::array();
    for (auto k : dyadic_checkpoints(d.n))
    {
        auto const mo = moments_at(d, k);
        pts.push_back({{"k", k},
                       {"mean_S2", mo.s2},
                       {"mean_M2", mo.m2},
                       {"mean_R2", mo.r2},
                       {"mean_Rbar2", mo.rbar2},
                       {"mean_theta2", mo.theta2}});
    }
    return {{"m", d.m},
            {"n", d.n},
            {"npaths", d.npaths},
            {"max_identity_error", d.max_identity_error},
            {"max_term_error", d.max_term_error},
            {"max_rbar_gap", d.max_rbar_gap},
            {"theta_route_gap", d.theta_route_gap},
            {"checkpoints", pts}};
}

CsvTable decomposition_table(Decomposition const& d)
{
    CsvTable t;
    t.header = {"m", "k", "mean_S2", "mean_M2", "mean_R2", "mean_Rbar2", "mean_theta2"};
    for (auto k : dyadic_checkpoints(d.n))
    {
        auto const mo = moments_at(d, k);
        t.rows.push_back({str(d.m),
                          str(k),
                          format_double(mo.s2),
                          format_double(mo.m2),
                          format_double(mo.r2),
                          format_double(mo.rbar2),
                          format_double(mo.theta2)});
    }
    return t;
}

CsvTable norm_table(std::vector<NormEstimate> const& estimates)
{
    CsvTable t;
    t.header = {"functional", "kind", "p", "method", "n", "value", "se"};
    for (auto const& e : estimates)
    {
        for (std::size_t i = 0; i < e.n_grid.size(); ++i)
        {
            t.rows.push_back({e.functional,
                              e.kind,
                              format_double(e.p),
                              e.method,
                              str(e.n_grid[i]),
                              format_double(e.values[i]),
                              i < e.se.size() ? format_double(e.se[i]) : ""});
        }
    }
    return t;
}

CsvTable criteria_table(CriteriaSweep const& sweep)
{
    CsvTable t;
    t.header = {"model_id", "criterion_id", "clause", "verdict"};
    for (auto const& r : sweep.reports)
    {
        t.rows.push_back({sweep.model_id, r.id, "", to_string(r.verdict)});
        for (auto const& [k, v] : r.clauses)
            t.rows.push_back({sweep.model_id, r.id, k, to_string(v)});
    }
    return t;
}

CsvTable clt_table(CltTestResult const& r)
{
    CsvTable t;
    t.header = {"condition", "weight", "ks", "probe", "mean", "se", "target"};
    for (auto const& c : r.conditions)
    {
        for (std::size_t p = 0; p < r.probe_ids.size(); ++p)
        {
            t.rows.push_back({c.label,
                              format_double(c.weight),
                              format_double(c.ks),
                              r.probe_ids[p],
                              format_double(c.probe_means[p]),
                              format_double(c.probe_se[p]),
                              format_double(r.probe_targets[p])});
        }
    }
    return t;
}

CsvTable eta_table(EtaEstimate const& e)
{
    CsvTable t;
    t.header = {"condition", "weight", "n", "value", "se"};
    for (auto const& c : e.conditions)
    {
        for (std::size_t i = 0; i < e.n_grid.size(); ++i)
        {
            t.rows.push_back({c.label,
                              format_double(c.weight),
                              str(e.n_grid[i]),
                              format_double(c.values[i]),
                              format_double(c.se[i])});
        }
    }
    for (std::size_t i = 0; i < e.n_grid.size(); ++i)
    {
        t.rows.push_back({"pooled",
                          "1",
                          str(e.n_grid[i]),
                          format_double(e.pooled[i]),
                          format_double(e.pooled_se[i])});
    }
    return t;
}

CsvTable fclt_table(std::vector<FclTestResult> const& r)
{
    CsvTable t;
    t.header = {"functional", "law", "n", "npaths", "eta", "mean", "variance", "ks", "passed"};
    for (auto const& x : r)
    {
        t.rows.push_back({x.functional,
                          x.law,
                          str(x.n),
                          str(x.npaths),
                          format_double(x.eta),
                          format_double(x.mean),
                          format_double(x.variance),
                          format_double(x.ks),
                          x.passed ? "true" : "false"});
    }
    return t;
}

CsvTable cdf_table(std::string const& functional,
                   std::vector<std::array<double, 3>> const& rows)
{
    CsvTable t;
    t.header = {"functional", "x", "empirical_cdf", "limit_cdf"};
    for (auto const& r : rows)
    {
        t.rows.push_back(
            {functional, format_double(r[0]), format_double(r[1]), format_double(r[2])});
    }
    return t;
}

CsvTable residual_table(ResidualDecayResult const& r)
{
    CsvTable t;
    t.header = {"n", "l1", "l1_se", "l2", "l2_se", "below_tol"};
    for (std::size_t i = 0; i < r.n_grid.size(); ++i)
    {
        t.rows.push_back({str(r.n_grid[i]),
                          format_double(r.l1[i]),
                          format_double(r.l1_se[i]),
                          format_double(r.l2[i]),
                          format_double(r.l2_se[i]),
                          r.below_tol[i] ? "true" : "false"});
    }
    return t;
}

//---------------------------------------------------------------------------//
}  // namespace mgale
