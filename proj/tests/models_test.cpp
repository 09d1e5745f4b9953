//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/models_test.cpp
//---------------------------------------------------------------------------//
#include <cmath>

#include <gtest/gtest.h>

#include "mgale/catalogue.hpp"
#include "mgale/error.hpp"
#include "mgale/models.hpp"
#include "test_support.hpp"

namespace mgale
{
namespace
{
using nlohmann::json;

//---------------------------------------------------------------------------//
TEST(StationaryDist, DoublyStochasticIsUniform)
{
    Eigen::MatrixXd q(3, 3);
    q << 0.2, 0.5, 0.3, 0.3, 0.2, 0.5, 0.5, 0.3, 0.2;
    auto const pi = stationary_dist(q);
    for (int i = 0; i < 3; ++i)
        EXPECT_NEAR(pi[i], 1.0 / 3, 1e-14);
}

TEST(StationaryDist, TwoStateClosedForm)
{
    // pi = (q, p)/(p + q) for flip probabilities p, q.
    double const p = 0.2, r = 0.3;
    Eigen::MatrixXd q(2, 2);
    q << 1 - p, p, r, 1 - r;
    auto const pi = stationary_dist(q);
    EXPECT_NEAR(pi[0], r / (p + r), 1e-14);
    EXPECT_NEAR(pi[1], p / (p + r), 1e-14);
    EXPECT_NEAR(pi[0], 0.6, 1e-14);
}

TEST(StationaryDist, RejectsNonErgodic)
{
    EXPECT_THROW(stationary_dist(Eigen::MatrixXd::Identity(3, 3)), ModelError);
    Eigen::MatrixXd periodic(2, 2);
    periodic << 0, 1, 1, 0;
    EXPECT_THROW(stationary_dist(periodic), ModelError);
    Eigen::MatrixXd bad(2, 2);
    bad << 0.5, 0.6, 0.5, 0.5;
    EXPECT_THROW(stationary_dist(bad), ModelError);
}

TEST(CenterObservable, Examples)
{
    Eigen::VectorXd pi(2);
    pi << 0.6, 0.4;
    Eigen::VectorXd f(2);
    f << 1, 1;
    EXPECT_NEAR(center_observable(f, pi).cwiseAbs().maxCoeff(), 0, 1e-15);
    f << 2, 0;
    auto const c = center_observable(f, pi);
    EXPECT_NEAR(c[0], 0.8, 1e-15);
    EXPECT_NEAR(c[1], -1.2, 1e-15);
    Eigen::VectorXd half(2);
    half << 0.5, 0.5;
    f << 1, -1;
    EXPECT_EQ(center_observable(f, half), f);
    EXPECT_THROW(center_observable(Eigen::VectorXd::Ones(3), pi), ModelError);
}

TEST(FiniteMarkov, UncenteredObservableRejected)
{
    Eigen::MatrixXd q(2, 2);
    q << 0.8, 0.2, 0.3, 0.7;
    Eigen::VectorXd f(2);
    f << 1, 0;
    EXPECT_THROW(FiniteMarkovModel::make(q, f, false), ModelError);
    EXPECT_NO_THROW(FiniteMarkovModel::make(q, f, true));
}

//---------------------------------------------------------------------------//
TEST(MarkovCondExp, TwoStateGeometric)
{
    for (double a : {0.1, 0.25, 0.4})
    {
        auto const m = std::get<FiniteMarkovModel>(test::two_state(a).spec);
        EXPECT_EQ(markov_cond_exp(m, 0), m.observable);
        for (int i = 1; i <= 30; ++i)
        {
            auto const v = markov_cond_exp(m, i);
            double const want = std::pow(1 - 2 * a, i);
            EXPECT_NEAR(v[0], want, 1e-14);
            EXPECT_NEAR(v[1], -want, 1e-14);
        }
    }
}

TEST(MarkovCondExp, IidChainVanishes)
{
    auto const m = std::get<FiniteMarkovModel>(catalogue_model("iid_chain").spec);
    for (int i = 1; i < 5; ++i)
        EXPECT_LE(markov_cond_exp(m, i).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(markov_cond_exp(m, -1), InputError);
}

TEST(MarkovCondExp, PropertyTowerAndSemigroup)
{
    test::for_all(50, 101, [](test::Gen& g) {
        auto const m = std::get<FiniteMarkovModel>(g.chain(6).spec);
        int const i = g.integer(1, 20);
        int const j = g.integer(0, 20);
        auto const vi = markov_cond_exp(m, i);
        EXPECT_NEAR(m.stationary.dot(vi), 0, 1e-12);
        Eigen::VectorXd qj = vi;
        for (int s = 0; s < j; ++s)
            qj = m.transition * qj;
        EXPECT_LE((markov_cond_exp(m, i + j) - qj).cwiseAbs().maxCoeff(), 1e-12);
    });
}

TEST(FiniteMarkov, PropertyStationaryInvariants)
{
    test::for_all(50, 102, [](test::Gen& g) {
        auto const m = std::get<FiniteMarkovModel>(g.chain(8).spec);
        auto const& pi = m.stationary;
        EXPECT_LE((pi.transpose() * m.transition - pi.transpose()).cwiseAbs().maxCoeff(),
                  1e-10);
        EXPECT_NEAR(pi.sum(), 1, 1e-12);
        EXPECT_GT(pi.minCoeff(), 0);
        EXPECT_NEAR(pi.dot(m.observable), 0, 1e-12);
    });
}

//---------------------------------------------------------------------------//
TEST(LinearCondExp, IidCoefficientsKeepOnlyPresent)
{
    // X_i = xi_i: E_0(S_n) = xi_0 for every n.
    LinearProcessModel const m{{1.0, 0.0, 0.0}, Distribution::normal()};
    for (std::size_t n : {1, 2, 5})
        EXPECT_EQ(linear_cond_exp_sums(m, n), (std::vector<double>{1.0, 0.0, 0.0}));
    EXPECT_THROW(linear_cond_exp_sums(m, 0), InputError);
}

TEST(LinearCondExp, PropertyMatchesBruteForce)
{
    // E_0(S_n) = sum_{i<n} E_0(X_i); E_0(X_i) puts weight a_{i+j} on xi_{-j}.
    test::for_all(40, 103, [](test::Gen& g) {
        auto const m = std::get<LinearProcessModel>(g.linear(10).spec);
        std::size_t const n = static_cast<std::size_t>(g.integer(1, 15));
        auto const w = linear_cond_exp_sums(m, n);
        auto const& a = m.coeffs;
        ASSERT_EQ(w.size(), a.size());
        for (std::size_t j = 0; j < a.size(); ++j)
        {
            double direct = 0;
            for (std::size_t i = 0; i < n; ++i)
                direct += (i + j < a.size()) ? a[i + j] : 0.0;
            EXPECT_NEAR(w[j], direct, 1e-14);
        }
    });
}

TEST(LinearCondExp, GeometricTailBounded)
{
    // ||E_0 S_n||_2^2 -> sum_j (1 - b_j)^2 = sum_j 4^{-j} = 4/3 for a_j = 2^{-j-1}.
    auto const m = std::get<LinearProcessModel>(catalogue_model("linear_geometric").spec);
    double prev = 0;
    for (std::size_t n : {1, 4, 16, 64, 256})
    {
        double s = 0;
        for (double w : linear_cond_exp_sums(m, n))
            s += w * w;
        EXPECT_GE(s, prev - 1e-15);
        prev = s;
    }
    EXPECT_NEAR(prev, 4.0 / 3, 1e-12);
}

//---------------------------------------------------------------------------//
TEST(BSequence, Examples)
{
    auto const unit = b_sequence({1.0}, 1000);
    ASSERT_TRUE(unit.limit);
    EXPECT_DOUBLE_EQ(*unit.limit, 1.0);
    for (std::size_t n = 1; n <= 1000; ++n)
        EXPECT_EQ(unit.b[n], 1.0);

    std::vector<double> geo(60);
    for (std::size_t j = 0; j < geo.size(); ++j)
        geo[j] = std::ldexp(1.0, -static_cast<int>(j) - 1);
    // Cesaro means approach 1 like 1 - 1/n, so the final-decade spread is
    // about 0.9/n_max.
    auto const short_run = b_sequence(geo, 100000);
    for (std::size_t n = 1; n <= 50; ++n)
        EXPECT_NEAR(short_run.b[n], 1 - std::ldexp(1.0, -static_cast<int>(n)), 1e-15);
    EXPECT_FALSE(short_run.limit);
    EXPECT_NEAR(short_run.rel_fluctuation, 0.9e-4, 1e-6);
    auto const g = b_sequence(geo, 10000000);
    ASSERT_TRUE(g.limit);
    EXPECT_NEAR(*g.limit, 1.0, 1e-6);
}

TEST(BSequence, AlternatingCesaroHalf)
{
    std::size_t const n_max = 10000000;
    std::vector<double> alt(n_max + 1);
    for (std::size_t j = 0; j < alt.size(); ++j)
        alt[j] = (j % 2 == 0) ? 1.0 : -1.0;
    auto const s = b_sequence(alt, n_max);
    EXPECT_EQ(s.b[1], 1.0);
    EXPECT_EQ(s.b[2], 0.0);
    EXPECT_EQ(s.b[3], 1.0);
    EXPECT_NEAR(s.cesaro_last, 0.5, 1e-6);
    ASSERT_TRUE(s.limit);
    EXPECT_NEAR(*s.limit, 0.5, 1e-6);
}

TEST(BSequence, PropertyDifferencesReconstructCoefficients)
{
    test::for_all(40, 104, [](test::Gen& g) {
        auto const m = std::get<LinearProcessModel>(g.linear(12).spec);
        auto const s = b_sequence(m.coeffs, 40);
        EXPECT_EQ(s.b[0], 0);
        EXPECT_EQ(s.b[1], m.coeffs[0]);
        for (std::size_t n = 1; n <= 40; ++n)
        {
            double const a = n - 1 < m.coeffs.size() ? m.coeffs[n - 1] : 0.0;
            EXPECT_NEAR(s.b[n] - s.b[n - 1], a, 1e-14);
        }
    });
    EXPECT_THROW(b_sequence({1.0}, 0), InputError);
}

//---------------------------------------------------------------------------//
// Re-centering an already centered observable may move entries by an ulp.
void expect_json_near(json const& a, json const& b, std::string const& where)
{
    if (a.is_number() && b.is_number())
    {
        EXPECT_NEAR(a.get<double>(), b.get<double>(), 1e-15) << where;
        return;
    }
    ASSERT_EQ(a.type(), b.type()) << where;
    if (a.is_array() || a.is_object())
    {
        ASSERT_EQ(a.size(), b.size()) << where;
        for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
        {
            if (a.is_object())
                ASSERT_EQ(ia.key(), ib.key()) << where;
            expect_json_near(*ia, *ib, where);
        }
        return;
    }
    EXPECT_EQ(a, b) << where;
}

TEST(ModelJson, RoundTripAndErrors)
{
    for (auto const& e : builtin_catalogue())
    {
        auto const m = model_from_json(e.spec);
        auto const again = model_from_json(m.to_json());
        expect_json_near(again.to_json(), m.to_json(), e.id);
    }
    EXPECT_THROW(model_from_json(json::array()), ModelError);
    EXPECT_THROW(model_from_json(json{{"kind", "nope"}}), ModelError);
    EXPECT_THROW(model_from_json(json{{"kind", "finite_markov"}, {"Q", {{1, 0}, {0, 1}}},
                                      {"f", {1, -1}}}),
                 ModelError);
    EXPECT_THROW(model_from_json(json{{"kind", "linear"}}), ModelError);
    EXPECT_THROW(model_from_json(json{{"kind", "iid"},
                                      {"dist", {{"name", "symmetric_pareto"},
                                                {"alpha", 1.5}}}}),
                 ModelError);
}

TEST(Catalogue, CoversEveryKind)
{
    std::set<std::string> kinds;
    for (auto const& e : builtin_catalogue())
        kinds.insert(catalogue_model(e.id).kind());
    EXPECT_EQ(kinds, (std::set<std::string>{"iid", "finite_markov", "linear", "counterexample"}));
    EXPECT_THROW(catalogue_model("no_such_model"), InputError);
    EXPECT_THROW(load_catalogue("/nonexistent/catalogue.json"), InputError);
}

TEST(Catalogue, CounterexampleMoments)
{
    auto const m = catalogue_model("counterexample");
    EXPECT_FALSE(m.finite_variance());
    auto const& c = std::get<CounterexampleModel>(m.spec);
    EXPECT_TRUE(c.martingale_diff.finite_variance());
    EXPECT_TRUE(std::isinf(c.heavy.variance()));
    // E|eps| = alpha/(alpha - 1) for unit-scale Pareto tails.
    EXPECT_NEAR(c.heavy.abs_mean(), 3.0, 1e-14);
}

//---------------------------------------------------------------------------//
}  // namespace
}  // namespace mgale
