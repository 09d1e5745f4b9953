//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file martingale.cpp
//---------------------------------------------------------------------------//
#include "mgale/martingale.hpp"

#include <algorithm>
#include <cmath>

#include "mgale/error.hpp"
#include "mgale/parallel.hpp"

namespace mgale
{
namespace
{
Summand combine(Oracle const& o, double a, Summand const& x, double b, Summand const& y)
{
    Summand out = o.zero();
    o.axpy(a, x, out);
    o.axpy(b, y, out);
    return out;
}

double max_abs_gap(Summand const& a, Summand const& b)
{
    double gap = 0;
    if (a.state.size() || b.state.size())
        return (a.state - b.state).cwiseAbs().maxCoeff();
    std::size_t const len = std::max(a.weights.size(), b.weights.size());
    for (std::size_t i = 0; i < len; ++i)
    {
        double const u = i < a.weights.size() ? a.weights[i] : 0;
        double const v = i < b.weights.size() ? b.weights[i] : 0;
        gap = std::max(gap, std::abs(u - v));
    }
    return gap;
}

void check_m(std::size_t m)
{
    if (m == 0)
        throw InputError("averaging parameter m must be >= 1");
}

void check_latent(PathEnsemble const& ens)
{
    if (!ens.has_latent())
        throw InputError(
            "ensemble has no latent data; regenerate it with sample_paths");
}

struct MeanSe
{
    double mean = 0;
    double se = 0;
};

MeanSe mean_se(std::vector<double> const& v)
{
    MeanSe out;
    if (v.empty())
        return out;
    double mean = 0, m2 = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        double const d = v[i] - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (v[i] - mean);
    }
    out.mean = mean;
    if (v.size() > 1)
        out.se = std::sqrt(m2 / static_cast<double>(v.size() - 1)
                           / static_cast<double>(v.size()));
    return out;
}

}  // namespace

//---------------------------------------------------------------------------//
void require_exact_oracle(ProcessModel const& model)
{
    auto const k = model.kind();
    if (k != "iid" && k != "finite_markov" && k != "linear"
        && k != "counterexample")
        throw UnsupportedModel("model '" + model.id
                               + "' has no exact conditional-expectation "
                                 "oracle");
}

Summand cond_sum_repr(Oracle const& o, std::size_t n)
{
    Summand acc = o.zero();
    Summand term = o.observable();
    for (std::size_t i = 0; i < n; ++i)
    {
        o.axpy(1.0, term, acc);
        term = o.shift(term, 1);
        if (!o.markov() && term.weights.empty())
            break;
    }
    return acc;
}

Summand theta_repr(Oracle const& o, std::size_t m)
{
    check_m(m);
    Summand acc = o.zero();
    Summand term = o.observable();
    double const dm = static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i)
    {
        o.axpy(1.0 - static_cast<double>(i) / dm, term, acc);
        term = o.shift(term, 1);
    }
    return acc;
}

Summand theta_repr_sums(Oracle const& o, std::size_t m)
{
    check_m(m);
    Summand acc = o.zero();
    Summand partial = o.zero();
    Summand term = o.observable();
    for (std::size_t i = 1; i <= m; ++i)
    {
        o.axpy(1.0, term, partial);  // partial = E_0(S_i)
        term = o.shift(term, 1);
        o.axpy(1.0 / static_cast<double>(m), partial, acc);
    }
    return acc;
}

Summand y_repr(Oracle const& o, std::size_t m)
{
    check_m(m);
    Summand acc = o.zero();
    Summand term = o.shift(o.observable(), 1);
    for (std::size_t i = 1; i <= m; ++i)
    {
        o.axpy(1.0 / static_cast<double>(m), term, acc);
        term = o.shift(term, 1);
    }
    return acc;
}

Summand y_process(ProcessModel const& model, std::size_t m)
{
    require_exact_oracle(model);
    return y_repr(Oracle(model), m);
}

double martingale_defect(Oracle const& o, Summand const& th)
{
    if (!o.markov())
        return 0;
    auto const& q = o.chain().transition;
    double worst = 0;
    for (int s = 0; s < q.rows(); ++s)
    {
        double qth = 0;
        for (int t = 0; t < q.cols(); ++t)
            qth += q(s, t) * th.state[t];
        double acc = 0;
        for (int t = 0; t < q.cols(); ++t)
            acc += q(s, t) * (th.state[t] - qth);
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

//---------------------------------------------------------------------------//
ThetaSamples
theta(ProcessModel const& model, PathEnsemble const& ens, std::size_t m)
{
    require_exact_oracle(model);
    check_latent(ens);
    Oracle const o(model);
    Summand const th = theta_repr(o, m);
    ThetaSamples out;
    out.m = m;
    out.n = ens.n;
    out.npaths = ens.npaths;
    out.route_gap = max_abs_gap(th, theta_repr_sums(o, m));
    out.values.resize(ens.npaths * (ens.n + 1));
    for (std::size_t p = 0; p < ens.npaths; ++p)
    {
        auto const v = ens.latent(p);
        for (std::size_t k = 0; k <= ens.n; ++k)
            out.values[p * (ens.n + 1) + k]
                = o.eval(th, v, static_cast<std::ptrdiff_t>(k));
    }
    return out;
}

MartDiffSamples
mart_diff(ProcessModel const& model, PathEnsemble const& ens, std::size_t m)
{
    require_exact_oracle(model);
    check_latent(ens);
    Oracle const o(model);
    Summand const th = theta_repr(o, m);
    Summand const th1 = o.shift(th, 1);
    MartDiffSamples out;
    out.m = m;
    out.n = ens.n;
    out.npaths = ens.npaths;
    out.d.resize(ens.npaths * ens.n);
    out.mart.resize(ens.npaths * (ens.n + 1));
    out.conditional_mean_defect = martingale_defect(o, th);
    for (std::size_t p = 0; p < ens.npaths; ++p)
    {
        auto const v = ens.latent(p);
        double acc = 0;
        out.mart[p * (ens.n + 1)] = 0;
        for (std::size_t k = 1; k <= ens.n; ++k)
        {
            double const dk
                = o.eval_diff(th, th1, v, static_cast<std::ptrdiff_t>(k));
            out.d[p * ens.n + k - 1] = dk;
            acc += dk;
            out.mart[p * (ens.n + 1) + k] = acc;
        }
    }
    return out;
}

//---------------------------------------------------------------------------//
Decomposition decompose(ProcessModel const& model,
                        PathEnsemble const& ens,
                        std::size_t m,
                        unsigned workers)
{
    require_exact_oracle(model);
    check_latent(ens);
    check_m(m);
    Oracle const o(model);
    Summand const th = theta_repr(o, m);
    Summand const th1 = o.shift(th, 1);
    Summand const y = y_repr(o, m);
    // Second route for Rbar: E_{j-1}(S_{j+m} - S_j) = [E_0(S_{m+1}) - X_0]
    // read at time j-1.
    Summand const rb = combine(o, 1.0, cond_sum_repr(o, m + 1), -1.0, o.observable());

    std::size_t const n = ens.n;
    std::size_t const w = n + 1;
    Decomposition dec;
    dec.m = m;
    dec.n = n;
    dec.npaths = ens.npaths;
    dec.theta_route_gap = max_abs_gap(th, theta_repr_sums(o, m));
    for (auto* a : {&dec.sums, &dec.theta, &dec.d, &dec.mart, &dec.resid, &dec.rbar})
        a->assign(ens.npaths * w, 0.0);

    std::vector<double> id_err(ens.npaths), term_err(ens.npaths),
        rbar_gap(ens.npaths);
    double const dm = static_cast<double>(m);
    parallel_for(ens.npaths, workers, [&](std::size_t p) {
        auto const v = ens.latent(p);
        auto const x = ens.path(p);
        std::size_t const base = p * w;
        double s = 0, mart = 0, rbar = 0, rbar2 = 0;
        double th_prev = o.eval(th, v, 0);
        dec.theta[base] = th_prev;
        double e_id = 0, e_term = 0, e_rb = 0;
        for (std::size_t k = 1; k <= n; ++k)
        {
            auto const tk = static_cast<std::ptrdiff_t>(k);
            double const th_k = o.eval(th, v, tk);
            double const d_k = th_k - o.eval(th1, v, tk - 1);
            double const y_prev = o.eval(y, v, tk - 1);
            double const xk = x[k - 1];
            s += xk;
            mart += d_k;
            rbar += y_prev;
            rbar2 += o.eval(rb, v, tk - 1) / dm;

            double const resid = dec.theta[base] - th_k + rbar;
            dec.sums[base + k] = s;
            dec.theta[base + k] = th_k;
            dec.d[base + k] = d_k;
            dec.mart[base + k] = mart;
            dec.rbar[base + k] = rbar;
            dec.resid[base + k] = resid;

            double const scale = 1 + std::abs(s);
            e_id = std::max(e_id, std::abs(s - mart - resid) / scale);
            e_term = std::max(e_term,
                              std::abs(xk - (d_k + th_prev - th_k + y_prev))
                                  / (1 + std::abs(xk)));
            e_rb = std::max(e_rb, std::abs(rbar - rbar2) / scale);
            th_prev = th_k;
        }
        id_err[p] = e_id;
        term_err[p] = e_term;
        rbar_gap[p] = e_rb;
    });
    for (std::size_t p = 0; p < ens.npaths; ++p)
    {
        dec.max_identity_error = std::max(dec.max_identity_error, id_err[p]);
        dec.max_term_error = std::max(dec.max_term_error, term_err[p]);
        dec.max_rbar_gap = std::max(dec.max_rbar_gap, rbar_gap[p]);
    }
    return dec;
}

//---------------------------------------------------------------------------//
std::vector<std::size_t> default_m_grid()
{
    return {1, 2, 4, 8, 16, 32, 64};
}

D0Report d0m(ProcessModel const& model,
             std::vector<std::size_t> const& m_grid,
             std::size_t npaths,
             std::uint64_t seed,
             double tol,
             unsigned workers)
{
    require_exact_oracle(model);
    if (m_grid.empty())
        throw InputError("m grid must not be empty");
    if (npaths == 0)
        throw InputError("d0m needs npaths >= 1");
    Oracle const o(model);
    PathGenerator const gen(model);

    std::size_t const g = m_grid.size();
    std::vector<Summand> thetas;
    for (auto m : m_grid)
        thetas.push_back(theta_repr(o, m));
    Summand const lim = o.theta_limit();

    D0Report rep;
    rep.m_grid = m_grid;
    rep.tol = tol;
    rep.limit_l2 = std::sqrt(o.diff_second_moment(lim));

    // Samples of D_1 = D_0 shifted, on independent stationary paths.
    std::vector<std::vector<double>> samples(g, std::vector<double>(npaths));
    rep.limit_samples.resize(npaths);
    Summand const lim1 = o.shift(lim, 1);
    std::vector<Summand> shifted;
    for (auto const& t : thetas)
        shifted.push_back(o.shift(t, 1));
    parallel_for(npaths, workers, [&](std::size_t p) {
        Sampler rng(seed, stream::stationary, p);
        PathBuffer buf;
        gen.generate(rng, 1, buf);
        auto const v = buf.view();
        for (std::size_t i = 0; i < g; ++i)
            samples[i][p] = o.eval_diff(thetas[i], shifted[i], v, 1);
        rep.limit_samples[p] = o.eval_diff(lim, lim1, v, 1);
    });

    rep.l2_dist = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g),
                                        static_cast<Eigen::Index>(g));
    rep.l1_dist = rep.l2_dist;
    for (std::size_t i = 0; i < g; ++i)
    {
        for (std::size_t j = i + 1; j < g; ++j)
        {
            Summand const diff = combine(o, 1.0, thetas[i], -1.0, thetas[j]);
            double const l2 = std::sqrt(o.diff_second_moment(diff));
            double const l1 = o.diff_abs_moment(diff).value;
            auto const a = static_cast<Eigen::Index>(i);
            auto const b = static_cast<Eigen::Index>(j);
            rep.l2_dist(a, b) = rep.l2_dist(b, a) = l2;
            rep.l1_dist(a, b) = rep.l1_dist(b, a) = l1;
        }
    }
    for (std::size_t i = 0; i + 1 < g; ++i)
        rep.cauchy.push_back(rep.l2_dist(static_cast<Eigen::Index>(i),
                                         static_cast<Eigen::Index>(i + 1)));
    for (std::size_t i = 0; i < rep.cauchy.size(); ++i)
    {
        bool tail_ok = std::all_of(rep.cauchy.begin() + static_cast<long>(i),
                                   rep.cauchy.end(),
                                   [&](double c) { return c < tol; });
        if (tail_ok)
        {
            rep.converged_at = m_grid[i + 1];
            break;
        }
    }

    for (std::size_t i = 0; i < g; ++i)
    {
        AveragedDifference ad;
        ad.m = m_grid[i];
        ad.samples = std::move(samples[i]);
        ad.l2 = std::sqrt(o.diff_second_moment(thetas[i]));
        auto const ms = mean_se(ad.samples);
        ad.mean_mc = ms.mean;
        ad.mean_se = ms.se;
        Summand const diff = combine(o, 1.0, thetas[i], -1.0, lim);
        ad.l1_to_limit = o.diff_abs_moment(diff);
        ad.l2_to_limit = std::sqrt(o.diff_second_moment(diff));
        std::vector<double> absdiff(npaths);
        for (std::size_t p = 0; p < npaths; ++p)
            absdiff[p] = std::abs(ad.samples[p] - rep.limit_samples[p]);
        auto const l1 = mean_se(absdiff);
        ad.l1_to_limit_mc = l1.mean;
        ad.l1_to_limit_mc_se = l1.se;
        rep.per_m.push_back(std::move(ad));
    }
    return rep;
}

UniquenessCheck uniqueness_check(ProcessModel const& model,
                                 std::vector<std::size_t> const& grid_a,
                                 std::vector<std::size_t> const& grid_b)
{
    require_exact_oracle(model);
    if (grid_a.size() < 2 || grid_b.size() < 2)
        throw InputError("uniqueness check needs grids with >= 2 points");
    Oracle const o(model);
    auto last_step = [&](std::vector<std::size_t> const& grid) {
        auto const n = grid.size();
        Summand const diff = combine(o,
                                     1.0,
                                     theta_repr(o, grid[n - 1]),
                                     -1.0,
                                     theta_repr(o, grid[n - 2]));
        return std::sqrt(o.diff_second_moment(diff));
    };
    UniquenessCheck out;
    Summand const diff = combine(o,
                                 1.0,
                                 theta_repr(o, grid_a.back()),
                                 -1.0,
                                 theta_repr(o, grid_b.back()));
    out.distance = std::sqrt(o.diff_second_moment(diff));
    // A geometric Cauchy tail with ratio 1/2 sums to twice its last step.
    out.allowance = 2 * (last_step(grid_a) + last_step(grid_b));
    out.consistent = out.distance <= out.allowance;
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace mgale
