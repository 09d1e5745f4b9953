//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/acceptance.cpp
//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Usage: mgale_acceptance [criterion numbers...]
//---------------------------------------------------------------------------//
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mgale/catalogue.hpp"
#include "mgale/criteria.hpp"
#include "mgale/limit_tests.hpp"
#include "mgale/martingale.hpp"
#include "mgale/norms.hpp"
#include "mgale/runner.hpp"
#include "mgale/simulate.hpp"

namespace fs = std::filesystem;
using namespace mgale;

namespace
{
struct Outcome
{
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, std::string const& what)
    {
        if (!ok)
        {
            passed = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

std::vector<std::string> chain_ids()
{
    std::vector<std::string> ids;
    for (auto const& e : builtin_catalogue())
    {
        if (catalogue_model(e.id).is_markov())
            ids.push_back(e.id);
    }
    return ids;
}

struct MeanSe
{
    double mean = 0;
    double se = 0;
};

MeanSe mean_se(std::vector<double> const& v)
{
    double m = 0;
    for (double x : v)
        m += x;
    m /= static_cast<double>(v.size());
    double s = 0;
    for (double x : v)
        s += (x - m) * (x - m);
    s /= static_cast<double>(v.size() - 1);
    return {m, std::sqrt(s / static_cast<double>(v.size()))};
}

//! Stationary S_n^2/n samples, generated path by path.
std::vector<double> sn2_samples(ProcessModel const& model, std::size_t n, std::size_t npaths,
                                std::uint64_t seed)
{
    PathGenerator const gen(model);
    PathBuffer buf;
    std::vector<double> out(npaths);
    for (std::size_t p = 0; p < npaths; ++p)
    {
        Sampler rng(seed, stream::stationary, p);
        gen.generate(rng, n, buf);
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            s += buf.x[i];
        out[p] = s * s / static_cast<double>(n);
    }
    return out;
}

//---------------------------------------------------------------------------//
// 1. Exact decomposition identity on every catalogue model.
void exact_decomposition(Outcome& out)
{
    double worst = 0;
    for (auto const& e : builtin_catalogue())
    {
        auto const model = catalogue_model(e.id);
        auto const ens = sample_paths(model, 1024, 20, 1);
        for (std::size_t m : {1, 2, 4, 8})
        {
            auto const dec = decompose(model, ens, m);
            for (std::size_t p = 0; p < ens.npaths; ++p)
            {
                auto const x = ens.path(p);
                double s = 0;
                for (std::size_t k = 1; k <= ens.n; ++k)
                {
                    s += x[k - 1];
                    double const err = std::abs(s - dec.at(dec.mart, p, k) - dec.at(dec.resid, p, k))
                                       / (1 + std::abs(s));
                    worst = std::max(worst, err);
                }
            }
        }
    }
    out.detail << "max |S-M-R|/(1+|S|) = " << worst;
    out.require(worst <= 1e-10, "identity within 1e-10");
}

// 2. i.i.d. degeneration.
void iid_degeneration(Outcome& out)
{
    for (char const* id : {"iid", "iid_normal"})
    {
        auto const model = catalogue_model(id);
        Oracle const o(model);
        double const x2 = std::sqrt(o.second_moment(o.observable()));
        auto const ens = sample_paths(model, 1024, 400, 2);
        for (std::size_t m : {1, 2, 4, 8, 64})
        {
            auto const th = theta(model, ens, m);
            bool exact = true;
            for (std::size_t p = 0; p < ens.npaths; ++p)
            {
                auto const x = ens.path(p);
                for (std::size_t k = 0; k < ens.n; ++k)
                    exact = exact && th.values[p * (ens.n + 1) + k] == x[k];
            }
            out.require(exact, std::string(id) + " theta = X");
            bool yzero = true;
            for (double w : y_repr(o, m).weights)
                yzero = yzero && w == 0;
            out.require(yzero, std::string(id) + " Y = 0");
            auto const dec = decompose(model, ens, m);
            for (std::size_t n : {16, 64, 256, 1024})
            {
                std::vector<double> r(ens.npaths);
                for (std::size_t p = 0; p < ens.npaths; ++p)
                    r[p] = dec.at(dec.resid, p, n);
                double const l2 = lp_norm(r, 2).value / std::sqrt(static_cast<double>(n));
                out.require(l2 <= 2 * x2 / std::sqrt(static_cast<double>(n)),
                            std::string(id) + " ||R_n||_2 bound at n=" + std::to_string(n));
            }
        }
    }
    out.detail << "theta_0^m = X_0 and Y_0^m = 0 exactly; ||R_n||_2 <= 2||X_0||_2 on grid";
}

// 3. Two-state chain ground truth.
void two_state_ground_truth(Outcome& out)
{
    auto const model = catalogue_model("two_state");
    auto const& c = std::get<FiniteMarkovModel>(model.spec);
    double const lambda = 1 - 2 * c.transition(0, 1);
    double const closed = (1 + lambda) / (1 - lambda);

    // Geometric covariance summation: E(X_0 X_k) = lambda^k.
    double geo = 1;
    for (int k = 1; k < 200; ++k)
        geo += 2 * std::pow(lambda, k);
    // Matrix-power brute force: E(X_0 X_k) = sum_s pi_s f_s (Q^k f)_s.
    Eigen::VectorXd qkf = c.observable;
    double brute = c.stationary.dot(c.observable.cwiseProduct(c.observable));
    for (int k = 1; k < 200; ++k)
    {
        qkf = c.transition * qkf;
        brute += 2 * c.stationary.dot(c.observable.cwiseProduct(qkf));
    }
    double const eta = reference_eta(model);

    std::size_t const n = std::size_t{1} << 14;
    auto const ms = mean_se(sn2_samples(model, n, 10000, 3));
    out.detail << "closed " << closed << ", covariance sum " << geo << ", matrix powers "
               << brute << ", ||D0||^2 " << eta << ", E(S_n^2)/n " << ms.mean << " +- "
               << ms.se;
    out.require(std::abs(closed - 3) < 1e-12, "closed form = 3");
    out.require(std::abs(geo - closed) < 1e-12, "covariance sum");
    out.require(std::abs(brute - closed) < 1e-12, "matrix powers");
    out.require(std::abs(eta - closed) <= 0.03 * closed, "||D0||^2 within 3%");
    out.require(std::abs(ms.mean - closed) <= 0.03 * closed, "E(S_n^2)/n within 3%");
}

// 4. Equivalence witnesses across the catalogue.
void equivalence_witnesses(Outcome& out)
{
    auto const o = CriteriaOptions::defaults();
    std::size_t contradictions = 0;
    for (auto const& e : builtin_catalogue())
    {
        auto const sweep = evaluate_criteria(catalogue_model(e.id), {}, o);
        for (auto const& chk : sweep.checks)
        {
            if (!chk.passed)
            {
                ++contradictions;
                out.require(false, e.id + ": " + chk.name + " " + chk.detail);
            }
        }
    }
    out.detail << builtin_catalogue().size() << " models swept, " << contradictions
               << " contradictions";
}

// 5. The heavy-tailed counterexample.
void counterexample(Outcome& out)
{
    auto const model = catalogue_model("counterexample");
    double const e_abs = std::get<CounterexampleModel>(model.spec).heavy.abs_mean();
    auto const rep = d0m(model, {1, 2, 4, 8, 16, 32, 64}, 100000, 5);
    double worst_z = 0;
    for (auto const& a : rep.per_m)
    {
        double const want = e_abs / static_cast<double>(a.m);
        double const z = std::abs(a.l1_to_limit_mc - want) / a.l1_to_limit_mc_se;
        worst_z = std::max(worst_z, z);
        out.require(z <= 3, "||D0^m - d0||_1 at m=" + std::to_string(a.m));
    }

    NormOptions no;
    no.npaths = 200;
    no.seed = 5;
    auto const y = plus_norm(model, "Y:4", 1, {100, 1000, 10000, 100000, 1000000}, no);
    out.require(y.divergence_flag, "divergence_flag for ||Y0^m||_{+1}");

    auto const crit = evaluate_criteria(model, {"Eprime"}, CriteriaOptions::defaults());
    auto const* ep = crit.find("Eprime");
    Evidence const* e0 = nullptr;
    for (auto const& ev : ep->evidence)
    {
        if (ev.label == "||E0(S_n)||_1/sqrt(n)")
            e0 = &ev;
    }
    out.require(e0 != nullptr, "E0(S_n) evidence present");
    if (e0)
    {
        bool decreasing = true;
        for (std::size_t i = 1; i < e0->values.size(); ++i)
            decreasing = decreasing && e0->values[i] <= e0->values[i - 1];
        out.require(decreasing, "||E0(S_n)||_1/sqrt(n) decreasing");
        out.require(e0->values.back() < 0.05, "||E0(S_n)||_1/sqrt(n) < 0.05");
        out.detail << "last ||E0(S_n)||_1/sqrt(n) = " << e0->values.back() << "; ";
    }
    out.detail << "max |L1 - E|eps|/m| / SE = " << worst_z << "; Y divergence ratio "
               << y.divergence_ratio;
}

// 6. Linear-process closed forms.
void linear_closed_forms(Outcome& out)
{
    std::vector<double> a(61);
    for (std::size_t j = 0; j < a.size(); ++j)
        a[j] = std::ldexp(1.0, -static_cast<int>(j) - 1);
    auto const rs = linear_criteria(a, 1.0, CriteriaOptions::defaults());
    double const gap = rs[0].extra.at("route_gap").get<double>();
    auto const& cj = rs[0].extra.at("c");
    double const c = cj.is_number() ? cj.get<double>() : std::nan("");
    out.require(gap <= 1e-10, "LIN_ZW routes agree to 1e-10");
    out.require(std::abs(c - 1) <= 1e-6, "c = 1");

    ProcessModel const model{"geo", LinearProcessModel{a, Distribution::normal()}};
    auto const ms = mean_se(sn2_samples(model, 1024, 100000, 6));
    out.require(std::abs(ms.mean - 1) <= 0.02, "E(S_n^2)/n within 2% of c^2 = 1");
    out.detail << "route gap " << gap << ", c " << c << ", E(S_n^2)/n " << ms.mean << " +- "
               << ms.se;
}

// 7. Conditional CLT for the two-state chain.
void conditional_clt(Outcome& out)
{
    CltOptions o;
    o.n = 5000;
    o.k = 0;
    o.npaths_inner = 100000;
    o.family = "bounded";
    o.tol = 0.02;
    o.seed = 7;
    auto const r = conditional_clt_test(catalogue_model("two_state"), o);
    out.require(r.conditions.size() == 2, "two conditions");
    for (auto const& c : r.conditions)
        out.require(c.ks < 0.02, "KS for " + c.label);
    out.require(r.statistic < 0.02, "probe statistic");
    out.detail << "eta " << r.eta << ", statistic " << r.statistic << ", max KS " << r.ks;
}

// 8. Functional CLT.
void functional_clt(Outcome& out)
{
    for (char const* id : {"iid", "two_state"})
    {
        FclOptions o;
        o.seed = 8;
        auto const r = fclt_test(catalogue_model(id), 10000, 100000, "running_max", o);
        out.require(r.ks < 0.02, std::string(id) + " running max KS");
        out.detail << id << " running-max KS " << r.ks << "; ";
    }
    // Endpoint with the seeds of criterion 7.
    CltOptions c;
    c.n = 5000;
    c.npaths_inner = 100000;
    c.family = "bounded";
    c.seed = 7;
    auto const model = catalogue_model("two_state");
    auto const clt = conditional_clt_test(model, c);
    for (std::size_t s = 0; s < clt.conditions.size(); ++s)
    {
        FclOptions o;
        o.seed = 7;
        o.condition_state = static_cast<int>(s);
        auto const r = fclt_test(model, 5000, 100000, "endpoint", o);
        out.require(r.ks == clt.conditions[s].ks, "endpoint equals CLT at state " + std::to_string(s));
        out.detail << "endpoint KS state " << s << " " << r.ks << " (CLT " << clt.conditions[s].ks
                   << ") ";
    }
}

// 9. Mixing coefficients.
void mixing(Outcome& out)
{
    double worst = 0;
    for (double a : {0.1, 0.25, 0.4})
    {
        Eigen::MatrixXd q(2, 2);
        q << 1 - a, a, a, 1 - a;
        Eigen::VectorXd const pi = Eigen::VectorXd::Constant(2, 0.5);
        for (int n = 1; n <= 30; ++n)
        {
            double const l = std::pow(1 - 2 * a, n);
            // Spectral oracle: centered n-step operator on pi-weighted space,
            // which for a symmetric chain is Q^n restricted to f = (1, -1).
            Eigen::MatrixXd qn = Eigen::MatrixXd::Identity(2, 2);
            for (int i = 0; i < n; ++i)
                qn = qn * q;
            Eigen::Vector2d f(1, -1);
            double const spectral = (qn * f).norm() / f.norm();
            // Exhaustive oracle over the 4 x 4 subset pairs.
            double brute = 0;
            for (unsigned sa = 0; sa < 4; ++sa)
            {
                for (unsigned sb = 0; sb < 4; ++sb)
                {
                    double pab = 0, pa = 0, pb = 0;
                    for (int i = 0; i < 2; ++i)
                    {
                        pa += (sa >> i & 1u) ? pi[i] : 0;
                        pb += (sb >> i & 1u) ? pi[i] : 0;
                        for (int j = 0; j < 2; ++j)
                            pab += ((sa >> i & 1u) && (sb >> j & 1u)) ? pi[i] * qn(i, j) : 0;
                    }
                    brute = std::max(brute, std::abs(pab - pa * pb));
                }
            }
            double const r = rho_coefficient(q, pi, static_cast<std::size_t>(n));
            double const al = alpha_coefficient(q, pi, static_cast<std::size_t>(n));
            worst = std::max({worst, std::abs(r - l), std::abs(r - spectral),
                              std::abs(al - l / 4), std::abs(al - brute)});
        }
    }
    out.require(worst <= 1e-10, "closed forms to 1e-10");
    auto const o = CriteriaOptions::defaults();
    for (auto const& id : chain_ids())
    {
        auto const c = std::get<FiniteMarkovModel>(catalogue_model(id).spec);
        for (std::size_t n = 1; n <= 32; ++n)
        {
            double const r = rho_coefficient(c.transition, c.stationary, n);
            double const al = alpha_coefficient(c.transition, c.stationary, n);
            out.require(al <= r / 4 + 1e-12, id + " alpha <= rho/4 at n=" + std::to_string(n));
        }
        auto const rs = mixing_sufficient_conditions(catalogue_model(id), o);
        out.require(rs[0].id == "RHO_SUM" && rs[0].verdict == Verdict::satisfied,
                    id + " RHO_SUM satisfied");
    }
    out.detail << "max closed-form error " << worst << " over " << chain_ids().size()
               << " catalogue chains";
}

// 10. Reproducibility across worker counts.
void reproducibility(Outcome& out)
{
    auto const base = fs::temp_directory_path() / "mgale_acceptance_repro";
    fs::remove_all(base);
    nlohmann::json const configs[] = {
        {{"model", "three_state_cycle"},
         {"task", "full-suite"},
         {"seed", 10},
         {"grids", {{"n", {32, 64, 128}}, {"m", {1, 2, 4}}, {"paths", 60}}},
         {"criteria", {{"n_grid", {2, 4, 8, 16, 32, 64, 128}},
                       {"mc_n_grid", {32, 64}},
                       {"m_grid", {1, 2, 4, 8, 16, 32, 64}}}},
         {"clt", {{"n", 64}, {"inner", 5000}}},
         {"fclt", {{"n", 64}, {"paths", 2000}}}},
        {{"model", "counterexample"}, {"task", "criteria"}, {"seed", 11},
         {"criteria", {{"n_grid", {2, 4, 8, 16, 32, 64, 128, 256}},
                       {"mc_n_grid", {32, 64, 128}},
                       {"m_grid", {1, 2, 4, 8, 16, 32, 64}}, {"npaths", 60}}}},
    };
    std::size_t compared = 0;
    int idx = 0;
    for (auto const& doc : configs)
    {
        std::map<std::string, std::string> reference;
        std::string ref_dir;
        for (unsigned workers : {1u, 4u, 1u})
        {
            RunOverrides ov;
            ov.workers = workers;
            ov.format = "both";
            ov.out_dir = (base / (std::to_string(idx++))).string();
            auto const man = run_experiment(parse_config(doc, "", ov));
            if (reference.empty())
            {
                reference = man.file_hashes;
                ref_dir = *ov.out_dir;
                continue;
            }
            out.require(man.file_hashes == reference, "manifest hashes match");
            for (auto const& [name, h] : reference)
            {
                std::ifstream a(fs::path(ref_dir) / name, std::ios::binary);
                std::ifstream b(fs::path(*ov.out_dir) / name, std::ios::binary);
                std::string const sa{std::istreambuf_iterator<char>(a), {}};
                std::string const sb{std::istreambuf_iterator<char>(b), {}};
                out.require(!sa.empty() && sa == sb, name + " bit-identical");
                ++compared;
            }
        }
    }
    fs::remove_all(base);
    out.detail << compared << " output files compared across worker counts 1/4/1";
}

}  // namespace

//---------------------------------------------------------------------------//
int main(int argc, char** argv)
{
    struct Criterion
    {
        int id;
        char const* name;
        std::function<void(Outcome&)> run;
    };
    std::vector<Criterion> const all = {
        {1, "exact decomposition", exact_decomposition},
        {2, "iid degeneration", iid_degeneration},
        {3, "two-state ground truth", two_state_ground_truth},
        {4, "equivalence witnesses", equivalence_witnesses},
        {5, "counterexample", counterexample},
        {6, "linear closed forms", linear_closed_forms},
        {7, "conditional CLT", conditional_clt},
        {8, "functional CLT", functional_clt},
        {9, "mixing coefficients", mixing},
        {10, "reproducibility", reproducibility},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::stoi(argv[i]));

    bool all_passed = true;
    for (auto const& c : all)
    {
        if (!only.empty() && !only.count(c.id))
            continue;
        Outcome out;
        auto const t0 = std::chrono::steady_clock::now();
        try
        {
            c.run(out);
        }
        catch (std::exception const& e)
        {
            out.require(false, std::string("exception: ") + e.what());
        }
        double const secs
            = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all_passed = all_passed && out.passed;
        std::cout << (out.passed ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name
                  << ", " << std::round(secs * 10) / 10 << " s): " << out.detail.str() << std::endl;
    }
    return all_passed ? 0 : 1;
}
