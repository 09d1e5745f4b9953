//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file models.cpp
//---------------------------------------------------------------------------//
#include "mgale/models.hpp"

#include <algorithm>
#include <cmath>

#include "mgale/error.hpp"

namespace mgale
{
namespace
{
//---------------------------------------------------------------------------//
void check_stochastic(Eigen::MatrixXd const& q)
{
    if (q.rows() != q.cols())
        throw ModelError("transition matrix must be square");
    if (q.rows() < 2)
        throw ModelError("transition matrix needs at least 2 states");
    for (Eigen::Index i = 0; i < q.rows(); ++i)
    {
        for (Eigen::Index j = 0; j < q.cols(); ++j)
        {
            if (!(q(i, j) >= 0) || !std::isfinite(q(i, j)))
                throw ModelError("transition matrix entries must be in [0,1]");
        }
        if (std::abs(q.row(i).sum() - 1) > 1e-12)
            throw ModelError("transition matrix row " + std::to_string(i)
                             + " does not sum to 1");
    }
}

//! Some power Q^k with k <= S^2 has all entries positive.
bool is_primitive(Eigen::MatrixXd const& q)
{
    auto const s = q.rows();
    using BoolMat = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
    BoolMat const a = (q.array() > 0).cast<int>();
    BoolMat p = a;
    for (Eigen::Index k = 1; k <= s * s; ++k)
    {
        if ((p.array() > 0).all())
            return true;
        p = ((p * a).array() > 0).cast<int>();
    }
    return false;
}

std::vector<double> json_vector(nlohmann::json const& j, char const* what)
{
    if (!j.is_array() || j.empty())
        throw ModelError(std::string(what) + " must be a non-empty array");
    std::vector<double> v;
    for (auto const& x : j)
    {
        if (!x.is_number())
            throw ModelError(std::string(what) + " entries must be numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

std::vector<double> coefficients_from_rule(nlohmann::json const& rule)
{
    auto const type = rule.value("type", std::string{});
    if (!rule.contains("J") || !rule.at("J").is_number_integer()
        || rule.at("J").get<long>() < 0)
    {
        throw ModelError("a_rule needs a non-negative integer 'J'");
    }
    auto const jmax = rule.at("J").get<std::size_t>();
    std::vector<double> a(jmax + 1);
    if (type == "geometric")
    {
        double const first = rule.value("first", 0.5);
        double const ratio = rule.value("ratio", 0.5);
        double v = first;
        for (auto& x : a)
        {
            x = v;
            v *= ratio;
        }
    }
    else if (type == "harmonic")
    {
        for (std::size_t j = 0; j < a.size(); ++j)
            a[j] = 1.0 / static_cast<double>(j + 1);
    }
    else if (type == "alternating")
    {
        for (std::size_t j = 0; j < a.size(); ++j)
            a[j] = (j % 2 == 0) ? 1.0 : -1.0;
    }
    else
    {
        throw ModelError("unknown a_rule type '" + type + "'");
    }
    return a;
}
}  // namespace

//---------------------------------------------------------------------------//
Eigen::VectorXd stationary_dist(Eigen::MatrixXd const& q)
{
    check_stochastic(q);
    if (!is_primitive(q))
        throw ModelError("not ergodic");

    auto const s = q.rows();
    Eigen::MatrixXd sys = q.transpose() - Eigen::MatrixXd::Identity(s, s);
    sys.row(s - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s);
    rhs(s - 1) = 1;
    Eigen::VectorXd pi = sys.fullPivLu().solve(rhs);

    if ((pi.transpose() * q - pi.transpose()).cwiseAbs().maxCoeff() > 1e-10
        || (pi.array() <= 0).any())
    {
        throw ModelError("not ergodic");
    }
    return pi / pi.sum();
}

Eigen::VectorXd
center_observable(Eigen::VectorXd const& f, Eigen::VectorXd const& pi)
{
    if (f.size() != pi.size())
        throw ModelError("observable and stationary law differ in length");
    return f.array() - pi.dot(f);
}

//---------------------------------------------------------------------------//
FiniteMarkovModel FiniteMarkovModel::make(Eigen::MatrixXd const& q,
                                          Eigen::VectorXd const& f,
                                          bool center)
{
    FiniteMarkovModel m;
    m.stationary = stationary_dist(q);
    m.transition = q;
    if (f.size() != q.rows())
        throw ModelError("observable length must equal the number of states");
    if (center)
    {
        m.observable = center_observable(f, m.stationary);
    }
    else
    {
        if (std::abs(m.stationary.dot(f)) > 1e-12)
            throw ModelError("observable is not centered under pi");
        m.observable = f;
    }
    m.row_cdf.resize(q.rows());
    for (Eigen::Index i = 0; i < q.rows(); ++i)
    {
        auto& cdf = m.row_cdf[i];
        double acc = 0;
        for (Eigen::Index j = 0; j < q.cols(); ++j)
        {
            acc += q(i, j);
            cdf.push_back(acc);
        }
        cdf.back() = 1.0;
    }
    return m;
}

Eigen::VectorXd markov_cond_exp(FiniteMarkovModel const& model, int lag)
{
    if (lag < 0)
        throw InputError("conditional expectation lag must be >= 0");
    Eigen::VectorXd v = model.observable;
    for (int i = 0; i < lag; ++i)
        v = model.transition * v;
    return v;
}

//---------------------------------------------------------------------------//
std::vector<double>
linear_cond_exp_sums(LinearProcessModel const& model, std::size_t n)
{
    if (n == 0)
        throw InputError("horizon must be >= 1");
    auto const& a = model.coeffs;
    std::size_t const len = a.size();
    // b[k] = a_0 + ... + a_{k-1}; constant beyond len.
    std::vector<double> b(len + 1, 0.0);
    for (std::size_t k = 0; k < len; ++k)
        b[k + 1] = b[k] + a[k];
    auto bk = [&](std::size_t k) { return b[std::min(k, len)]; };

    std::vector<double> w(len);
    for (std::size_t j = 0; j < len; ++j)
        w[j] = bk(n + j) - bk(j);
    return w;
}

CoefficientSummary
b_sequence(std::vector<double> const& a, std::size_t n_max, double tol)
{
    if (n_max == 0)
        throw InputError("b_sequence needs n_max >= 1");
    CoefficientSummary out;
    out.b.assign(n_max + 1, 0.0);
    for (std::size_t k = 1; k <= n_max; ++k)
        out.b[k] = out.b[k - 1] + (k - 1 < a.size() ? a[k - 1] : 0.0);

    // Cesaro means over the final decade n in [n_max/10, n_max].
    std::size_t const start = std::max<std::size_t>(1, n_max / 10);
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    double partial = 0;
    for (std::size_t k = 1; k <= n_max; ++k)
    {
        partial += out.b[k];
        if (k >= start)
        {
            double const mean = partial / static_cast<double>(k);
            lo = std::min(lo, mean);
            hi = std::max(hi, mean);
        }
    }
    out.cesaro_last = partial / static_cast<double>(n_max);
    double const scale = std::max(std::abs(out.cesaro_last), 1e-300);
    out.rel_fluctuation = (hi - lo) / scale;
    if (n_max >= 10 && out.rel_fluctuation < tol)
        out.limit = out.cesaro_last;
    return out;
}

//---------------------------------------------------------------------------//
std::string ProcessModel::kind() const
{
    struct Visitor
    {
        std::string operator()(IIDModel const&) const { return "iid"; }
        std::string operator()(FiniteMarkovModel const&) const
        {
            return "finite_markov";
        }
        std::string operator()(LinearProcessModel const&) const
        {
            return "linear";
        }
        std::string operator()(CounterexampleModel const&) const
        {
            return "counterexample";
        }
    };
    return std::visit(Visitor{}, spec);
}

bool ProcessModel::finite_variance() const
{
    struct Visitor
    {
        bool operator()(IIDModel const& m) const
        {
            return m.dist.finite_variance();
        }
        bool operator()(FiniteMarkovModel const&) const { return true; }
        bool operator()(LinearProcessModel const& m) const
        {
            return m.innovation.finite_variance();
        }
        bool operator()(CounterexampleModel const& m) const
        {
            return m.martingale_diff.finite_variance()
                   && m.heavy.finite_variance();
        }
    };
    return std::visit(Visitor{}, spec);
}

nlohmann::json ProcessModel::to_json() const
{
    nlohmann::json j{{"id", id}, {"kind", kind()}};
    if (auto const* m = std::get_if<IIDModel>(&spec))
    {
        j["dist"] = m->dist.to_json();
    }
    else if (auto const* m = std::get_if<FiniteMarkovModel>(&spec))
    {
        auto rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < m->transition.rows(); ++i)
        {
            std::vector<double> row(m->transition.cols());
            for (Eigen::Index k = 0; k < m->transition.cols(); ++k)
                row[k] = m->transition(i, k);
            rows.push_back(row);
        }
        j["Q"] = rows;
        j["f"] = std::vector<double>(m->observable.begin(), m->observable.end());
        j["pi"] = std::vector<double>(m->stationary.begin(), m->stationary.end());
    }
    else if (auto const* m = std::get_if<LinearProcessModel>(&spec))
    {
        j["a"] = m->coeffs;
        j["truncation"] = m->truncation();
        j["innovation"] = m->innovation.to_json();
    }
    else if (auto const* m = std::get_if<CounterexampleModel>(&spec))
    {
        j["d"] = m->martingale_diff.to_json();
        j["eps"] = m->heavy.to_json();
    }
    return j;
}

//---------------------------------------------------------------------------//
ProcessModel model_from_json(nlohmann::json const& j)
{
    if (!j.is_object())
        throw ModelError("model description must be an object");
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw ModelError("model needs a string 'kind'");
    ProcessModel out;
    out.id = j.value("id", std::string{});
    auto const kind = j.at("kind").get<std::string>();

    if (kind == "iid")
    {
        auto d = Distribution::from_json(
            j.contains("dist") ? j.at("dist") : nlohmann::json("rademacher"));
        if (!d.finite_variance())
            throw ModelError("iid model needs a finite-variance law");
        out.spec = IIDModel{d};
    }
    else if (kind == "finite_markov")
    {
        if (!j.contains("Q") || !j.at("Q").is_array() || j.at("Q").empty())
            throw ModelError("finite_markov needs matrix rows 'Q'");
        auto const& rows = j.at("Q");
        auto const s = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd q(s, s);
        for (Eigen::Index i = 0; i < s; ++i)
        {
            auto const row = json_vector(rows.at(i), "Q row");
            if (static_cast<Eigen::Index>(row.size()) != s)
                throw ModelError("transition matrix must be square");
            for (Eigen::Index k = 0; k < s; ++k)
                q(i, k) = row[k];
        }
        if (!j.contains("f"))
            throw ModelError("finite_markov needs observable values 'f'");
        auto const fv = json_vector(j.at("f"), "f");
        Eigen::VectorXd f = Eigen::Map<Eigen::VectorXd const>(
            fv.data(), static_cast<Eigen::Index>(fv.size()));
        out.spec = FiniteMarkovModel::make(q, f, j.value("center", true));
    }
    else if (kind == "linear")
    {
        std::vector<double> a;
        if (j.contains("a"))
            a = json_vector(j.at("a"), "a");
        else if (j.contains("a_rule"))
            a = coefficients_from_rule(j.at("a_rule"));
        else
            throw ModelError("linear model needs coefficients 'a' or 'a_rule'");
        if (j.contains("truncation"))
        {
            auto const jt = j.at("truncation");
            if (!jt.is_number_integer() || jt.get<long>() < 0)
                throw ModelError("truncation must be a non-negative integer");
            a.resize(jt.get<std::size_t>() + 1, 0.0);
        }
        auto innov = Distribution::from_json(
            j.contains("innovation") ? j.at("innovation")
                                     : nlohmann::json("normal"));
        for (double x : a)
        {
            if (!std::isfinite(x))
                throw ModelError("linear coefficients must be finite");
        }
        out.spec = LinearProcessModel{std::move(a), innov};
    }
    else if (kind == "counterexample")
    {
        auto d = Distribution::from_json(
            j.contains("d") ? j.at("d") : nlohmann::json("rademacher"));
        auto eps = Distribution::from_json(
            j.contains("eps") ? j.at("eps")
                              : nlohmann::json{{"name", "symmetric_pareto"},
                                               {"alpha", 1.5}});
        if (!d.finite_variance())
            throw ModelError("counterexample needs square-integrable d");
        if (eps.kind != Distribution::Kind::symmetric_pareto || !(eps.alpha > 1)
            || !(eps.alpha < 2))
        {
            throw ModelError(
                "counterexample eps must be symmetric_pareto with alpha in "
                "(1,2)");
        }
        out.spec = CounterexampleModel{d, eps};
    }
    else
    {
        throw ModelError("unknown model kind '" + kind + "'");
    }
    if (out.id.empty())
        out.id = kind;
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace mgale
