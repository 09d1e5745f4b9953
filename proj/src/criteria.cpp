//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file criteria.cpp
//---------------------------------------------------------------------------//
#include "mgale/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include <boost/math/special_functions/zeta.hpp>

#include "mgale/error.hpp"
#include "mgale/martingale.hpp"
#include "mgale/norms.hpp"
#include "mgale/oracle.hpp"
#include "mgale/parallel.hpp"
#include "mgale/simulate.hpp"

namespace mgale
{
namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::vector<double> as_double(std::vector<std::size_t> const& v)
{
    return {v.begin(), v.end()};
}

std::vector<std::size_t> powers_of_two(int lo, int hi)
{
    std::vector<std::size_t> g;
    for (int k = lo; k <= hi; ++k)
        g.push_back(std::size_t{1} << k);
    return g;
}

nlohmann::json num(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    return v;
}

Summand combine(Oracle const& o, double a, Summand const& x, double b, Summand const& y)
{
    Summand out = o.zero();
    o.axpy(a, x, out);
    o.axpy(b, y, out);
    return out;
}

bool same_repr(Summand const& a, Summand const& b)
{
    if (a.state.size() || b.state.size())
        return a.state.size() == b.state.size() && a.state == b.state;
    return a.weights == b.weights;
}

void require_finite_variance(ProcessModel const& model, char const* what)
{
    if (!model.finite_variance())
        throw UnsupportedModel(std::string(what) + " needs E(X_0^2) < inf; model '"
                               + model.id + "' has infinite variance");
}

TailRule rule(double tol)
{
    TailRule r;
    r.tol = tol;
    return r;
}

//---------------------------------------------------------------------------//
// Shared evaluation state for one model.
struct Context
{
    ProcessModel const& model;
    CriteriaOptions const& opts;
    Oracle o;
    std::vector<Summand> thetas;  // per m in m_grid
    std::optional<std::vector<NormPair>> y_norms;  // p = 1, per m
    std::optional<std::vector<Summand>> cond_sums;  // E_0(S_n) per n in n_grid

    Context(ProcessModel const& m, CriteriaOptions const& op)
        : model(m), opts(op), o(m)
    {
        if (op.m_grid.empty() || op.n_grid.empty() || op.mc_n_grid.empty())
            throw InputError("criteria grids must not be empty");
        for (auto mm : op.m_grid)
            thetas.push_back(theta_repr(o, mm));
    }

    std::vector<NormPair> const& y_norm_pairs()
    {
        if (!y_norms)
        {
            std::vector<Summand> ys;
            std::vector<std::string> labels;
            for (auto mm : opts.m_grid)
            {
                ys.push_back(y_repr(o, mm));
                labels.push_back("Y:" + std::to_string(mm));
            }
            NormOptions no;
            no.npaths = opts.npaths;
            no.seed = opts.seed;
            no.workers = opts.workers;
            y_norms = batch_norms(o, model, ys, labels, 1.0, opts.mc_n_grid, no, true);
        }
        return *y_norms;
    }

    std::vector<Summand> const& cond_sum_seq()
    {
        if (!cond_sums)
        {
            cond_sums.emplace();
            Summand acc = o.zero();
            Summand term = o.observable();
            std::size_t gi = 0;
            auto const& grid = opts.n_grid;
            for (std::size_t n = 1; n <= grid.back(); ++n)
            {
                o.axpy(1.0, term, acc);
                bool const exhausted = !o.markov() && term.weights.empty();
                if (!exhausted)
                    term = o.shift(term, 1);
                while (gi < grid.size() && grid[gi] == n)
                {
                    cond_sums->push_back(acc);
                    ++gi;
                }
                if (!o.markov() && term.weights.empty())
                {
                    // Representation is constant from here on.
                    while (gi < grid.size())
                    {
                        cond_sums->push_back(acc);
                        ++gi;
                    }
                    break;
                }
            }
        }
        return *cond_sums;
    }

    // Successive distances of D_0^m along the m grid, indexed by the larger m.
    Evidence cauchy(bool l1)
    {
        Evidence e;
        e.label = l1 ? "||D0^m' - D0^m||_1" : "||D0^m' - D0^m||_2";
        bool mc = false;
        for (std::size_t i = 0; i + 1 < thetas.size(); ++i)
        {
            Summand const diff = combine(o, 1.0, thetas[i + 1], -1.0, thetas[i]);
            e.grid.push_back(static_cast<double>(opts.m_grid[i + 1]));
            if (l1)
            {
                auto const mom = o.diff_abs_moment(diff);
                e.values.push_back(mom.value);
                e.se.push_back(mom.se);
                mc = mc || !mom.exact;
            }
            else
            {
                e.values.push_back(std::sqrt(o.diff_second_moment(diff)));
                e.se.push_back(0);
            }
        }
        e.method = mc ? "monte_carlo" : "exact";
        return e;
    }

    Verdict cauchy_verdict(Evidence const& e) const
    {
        if (e.values.empty())
            return Verdict::inconclusive;
        return limit_zero_verdict(e.grid, e.values, e.se, false, rule(opts.cauchy_tol));
    }

    // Y^m norms summarized over m: extrapolated value and its standard error.
    Evidence y_evidence(bool mplus, bool& divergence, bool& se_reliable)
    {
        auto const& pairs = y_norm_pairs();
        Evidence e;
        e.label = mplus ? "||Y0^m||_{M+,1}" : "||Y0^m||_{+1}";
        divergence = false;
        se_reliable = true;
        auto const idx = tail_window(as_double(opts.m_grid));
        for (std::size_t i = 0; i < pairs.size(); ++i)
        {
            auto const& est = mplus ? pairs[i].mplus : pairs[i].plus;
            e.grid.push_back(static_cast<double>(opts.m_grid[i]));
            e.values.push_back(est.extrapolated);
            auto const from = est.values.size() > limsup_window
                                  ? est.values.size() - limsup_window
                                  : 0;
            auto const arg = std::max_element(est.values.begin() + static_cast<long>(from),
                                              est.values.end())
                             - est.values.begin();
            e.se.push_back(est.se[static_cast<std::size_t>(arg)]);
            if (est.method == "monte_carlo")
                e.method = "monte_carlo";
            se_reliable = se_reliable && est.se_reliable;
            if (std::find(idx.begin(), idx.end(), i) != idx.end())
                divergence = divergence || est.divergence_flag;
        }
        return e;
    }

    // ||E_0(S_n)||_1 / sqrt(n) over the n grid.
    Evidence cond_sum_l1()
    {
        auto const& reps = cond_sum_seq();
        Evidence e;
        e.label = "||E0(S_n)||_1/sqrt(n)";
        std::optional<Moment> cached;
        Summand const* prev = nullptr;
        bool mc = false;
        for (std::size_t i = 0; i < reps.size(); ++i)
        {
            if (!prev || !same_repr(*prev, reps[i]))
                cached = o.abs_moment(reps[i]);
            prev = &reps[i];
            double const root = std::sqrt(static_cast<double>(opts.n_grid[i]));
            e.grid.push_back(static_cast<double>(opts.n_grid[i]));
            e.values.push_back(cached->value / root);
            e.se.push_back(cached->se / root);
            mc = mc || !cached->exact;
        }
        e.method = mc ? "monte_carlo" : "exact";
        return e;
    }

    // ||max_{k<=n} |E_0(S_k)| ||_1 / sqrt(n) over the n grid.
    Evidence cond_max_l1()
    {
        auto const& grid = opts.n_grid;
        std::size_t const nmax = grid.back();
        Evidence e;
        e.label = "||max_k |E0(S_k)| ||_1/sqrt(n)";
        std::vector<double> expect(grid.size(), 0.0), se(grid.size(), 0.0);
        if (o.markov())
        {
            auto const& chain = o.chain();
            Eigen::VectorXd sum = Eigen::VectorXd::Zero(chain.num_states());
            Eigen::VectorXd mx = sum;
            Eigen::VectorXd term = chain.observable;
            std::size_t gi = 0;
            for (std::size_t k = 1; k <= nmax; ++k)
            {
                sum += term;
                term = chain.transition * term;
                mx = mx.cwiseMax(sum.cwiseAbs());
                while (gi < grid.size() && grid[gi] == k)
                    expect[gi++] = chain.stationary.dot(mx);
            }
            e.method = "exact";
        }
        else
        {
            // E_0(S_k) is constant once k exceeds the memory, so only
            // k <= history + 2 matters.
            std::size_t const kmax = std::min(nmax, o.history() + 2);
            std::vector<Summand> reps;
            Summand acc = o.zero();
            Summand term = o.observable();
            for (std::size_t k = 1; k <= kmax; ++k)
            {
                o.axpy(1.0, term, acc);
                term = o.shift(term, 1);
                reps.push_back(acc);
            }
            std::size_t const c = o.channels();
            std::size_t const lags = o.history() + 1;
            auto const& laws = o.channel_laws();
            std::size_t const ns = Oracle::mc_samples / 4;
            std::size_t const blocks = 64;
            std::vector<std::vector<double>> partial(
                blocks, std::vector<double>(2 * kmax, 0.0));
            parallel_for(blocks, opts.workers, [&](std::size_t b) {
                Sampler rng(opts.seed, stream::auxiliary + 2, b);
                std::vector<double> innov(lags * c);
                LatentView v;
                v.innov = innov.data();
                v.history = lags - 1;
                v.channels = c;
                auto& acc_b = partial[b];
                for (std::size_t s = b; s < ns; s += blocks)
                {
                    for (std::size_t i = 0; i < innov.size(); ++i)
                        innov[i] = laws[i % c].sample(rng);
                    double m = 0;
                    for (std::size_t k = 0; k < kmax; ++k)
                    {
                        m = std::max(m, std::abs(o.eval(reps[k], v, 0)));
                        acc_b[2 * k] += m;
                        acc_b[2 * k + 1] += m * m;
                    }
                }
            });
            std::vector<double> mean(kmax, 0.0), sq(kmax, 0.0);
            for (auto const& pb : partial)
            {
                for (std::size_t k = 0; k < kmax; ++k)
                {
                    mean[k] += pb[2 * k];
                    sq[k] += pb[2 * k + 1];
                }
            }
            auto const dn = static_cast<double>(ns);
            bool heavy = false;
            for (auto const& r : reps)
                heavy = heavy || o.heavy(r);
            for (std::size_t gi = 0; gi < grid.size(); ++gi)
            {
                std::size_t const k = std::min(grid[gi], kmax) - 1;
                double const mu = mean[k] / dn;
                double const var = std::max(sq[k] / dn - mu * mu, 0.0);
                expect[gi] = mu;
                se[gi] = std::sqrt(var / dn);
            }
            e.method = "monte_carlo";
            if (heavy)
                e.method = "monte_carlo (se unreliable)";
        }
        for (std::size_t gi = 0; gi < grid.size(); ++gi)
        {
            double const root = std::sqrt(static_cast<double>(grid[gi]));
            e.grid.push_back(static_cast<double>(grid[gi]));
            e.values.push_back(expect[gi] / root);
            e.se.push_back(se[gi] / root);
        }
        return e;
    }
};

// Tail bound helper for chains: returns (r, rho(r)) with rho(r) < 1.
std::pair<std::size_t, double> contraction_step(Oracle const& o)
{
    auto const& chain = o.chain();
    for (std::size_t r = 1; r <= (std::size_t{1} << 20); r *= 2)
    {
        double const rho = rho_coefficient(chain.transition, chain.stationary, r);
        if (rho < 1 - 1e-12)
            return {r, rho};
    }
    return {0, 1.0};
}

// Bound on sum_{i>K} ||Q^i f||_2 from ||Q^K f||_2 (contraction of Q on L2_0).
double geometric_tail(Oracle const& o, double at_k)
{
    auto const [r, rho] = contraction_step(o);
    if (r == 0)
        return nan;
    return static_cast<double>(r) * at_k / (1 - rho);
}

double pi_norm(Oracle const& o, Eigen::VectorXd const& g)
{
    return std::sqrt(o.chain().stationary.dot(g.cwiseAbs2()));
}

CriterionReport unsupported(std::string const& id, std::string const& why)
{
    CriterionReport r;
    r.id = id;
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("unsupported: " + why);
    return r;
}

//---------------------------------------------------------------------------//
CriterionReport ph_impl(Context& cx)
{
    require_finite_variance(cx.model, "PH");
    auto const& o = cx.o;
    auto const& op = cx.opts;
    CriterionReport r;
    r.id = "PH";
    r.tolerance = op.tol;

    Evidence cauchy = cx.cauchy(false);
    r.clauses["D0m_converges_L2"] = cx.cauchy_verdict(cauchy);

    double const eta = o.diff_second_moment(o.theta_limit());
    auto const plus = exact_plus2(o, o.observable(), op.n_grid);
    Evidence var, gap;
    var.label = "E(S_n^2)/n";
    gap.label = "|E(S_n^2)/n - ||D0||_2^2|";
    for (std::size_t i = 0; i < op.n_grid.size(); ++i)
    {
        double const v = plus[i] * plus[i];
        var.grid.push_back(static_cast<double>(op.n_grid[i]));
        var.values.push_back(v);
        gap.grid.push_back(static_cast<double>(op.n_grid[i]));
        gap.values.push_back(std::abs(v - eta));
    }
    r.clauses["variance_matches"]
        = limit_zero_verdict(gap.grid, gap.values, {}, false, rule(op.tol));
    r.evidence = {cauchy, var, gap};
    r.extra["eta"] = num(eta);
    r.extra["D0m_l2_sq_at_m_max"]
        = num(o.diff_second_moment(cx.thetas.back()));
    r.extra["cauchy_tol"] = op.cauchy_tol;
    r.verdict = all_of({r.clauses["D0m_converges_L2"], r.clauses["variance_matches"]});
    return r;
}

CriterionReport zw_impl(Context& cx)
{
    require_finite_variance(cx.model, "ZW");
    auto const& o = cx.o;
    auto const& op = cx.opts;
    CriterionReport r;
    r.id = "ZW";
    r.tolerance = op.tol;

    auto const& reps = cx.cond_sum_seq();
    Evidence first, second;
    first.label = "||E0(S_n)||_2/sqrt(n)";
    second.label = "||D0^n - D0||_2";
    Summand const lim = o.theta_limit();
    for (std::size_t i = 0; i < op.n_grid.size(); ++i)
    {
        auto const n = op.n_grid[i];
        double const root = std::sqrt(static_cast<double>(n));
        first.grid.push_back(static_cast<double>(n));
        first.values.push_back(std::sqrt(o.second_moment(reps[i])) / root);
        Summand const diff = combine(o, 1.0, theta_repr(o, n), -1.0, lim);
        second.grid.push_back(static_cast<double>(n));
        second.values.push_back(std::sqrt(o.diff_second_moment(diff)));
    }
    r.clauses["E0Sn_L2_over_sqrt_n"]
        = limit_zero_verdict(first.grid, first.values, {}, false, rule(op.tol));
    r.clauses["cesaro_D0n_to_D0"]
        = limit_zero_verdict(second.grid, second.values, {}, false, rule(op.tol));
    r.evidence = {first, second};
    r.verdict = all_of({r.clauses["E0Sn_L2_over_sqrt_n"], r.clauses["cesaro_D0n_to_D0"]});
    return r;
}

std::vector<CriterionReport> abc_impl(Context& cx)
{
    require_finite_variance(cx.model, "criteria A, B, C");
    auto const& o = cx.o;
    auto const& op = cx.opts;
    auto const norm_grid = default_norm_grid();
    auto const mg = as_double(op.m_grid);

    // (a)
    Evidence ya;
    ya.label = "||Y0^m||_{+2}";
    for (auto m : op.m_grid)
    {
        auto const vals = exact_plus2(o, y_repr(o, m), norm_grid);
        ya.grid.push_back(static_cast<double>(m));
        ya.values.push_back(*std::max_element(vals.end() - limsup_window, vals.end()));
    }

    // Plus norms of E_{-i}(X_0), until the summand vanishes.
    std::size_t const m_max = op.m_grid.back();
    std::vector<double> plus_i;  // index i-1
    Summand term = o.shift(o.observable(), 1);
    double const x_norm = std::sqrt(o.second_moment(o.observable()));
    bool truncated = false;
    for (std::size_t i = 1; i <= m_max; ++i)
    {
        double const l2 = std::sqrt(o.second_moment(term));
        if (l2 == 0 || l2 <= 1e-15 * x_norm)
        {
            truncated = l2 != 0;
            break;
        }
        auto const vals = exact_plus2(o, term, norm_grid);
        plus_i.push_back(*std::max_element(vals.end() - limsup_window, vals.end()));
        term = o.shift(term, 1);
    }

    Evidence eb, ec, ei;
    eb.label = "(1/m) sum_{i<=m} ||E_{-i}(X_0)||_{+2}";
    ec.label = "(1/m) sum_{i<=m} ||E_{-i}(X_0)||_{+2}^2";
    ei.label = "||E_{-i}(X_0)||_{+2}";
    bool cs_ok = true;
    for (auto m : op.m_grid)
    {
        double sb = 0, sc = 0;
        for (std::size_t i = 0; i < std::min(m, plus_i.size()); ++i)
        {
            sb += plus_i[i];
            sc += plus_i[i] * plus_i[i];
        }
        double const b = sb / static_cast<double>(m);
        double const c = sc / static_cast<double>(m);
        eb.grid.push_back(static_cast<double>(m));
        eb.values.push_back(b);
        ec.grid.push_back(static_cast<double>(m));
        ec.values.push_back(c);
        cs_ok = cs_ok && b <= std::sqrt(c) * (1 + 1e-12) + 1e-300;
    }
    for (auto i : op.i_grid)
    {
        ei.grid.push_back(static_cast<double>(i));
        ei.values.push_back(i >= 1 && i <= plus_i.size() ? plus_i[i - 1] : 0.0);
    }

    std::vector<CriterionReport> out(3);
    out[0].id = "A";
    out[0].evidence = {ya};
    out[0].verdict = limit_zero_verdict(mg, ya.values, {}, false, rule(op.tol));
    out[1].id = "B";
    out[1].evidence = {eb, ei};
    out[1].verdict = limit_zero_verdict(mg, eb.values, {}, false, rule(op.tol));
    out[2].id = "C";
    out[2].evidence = {ec, ei};
    out[2].verdict = limit_zero_verdict(mg, ec.values, {}, false, rule(op.tol));
    for (auto& r : out)
    {
        r.tolerance = op.tol;
        r.clauses[r.id] = r.verdict;
        r.extra["plus_norm_n_grid"] = norm_grid;
    }
    out[1].extra["b_le_sqrt_c"] = cs_ok;
    if (truncated)
        out[1].notes.push_back(
            "E_{-i}(X_0) terms below 1e-15 ||X_0||_2 treated as zero");
    return out;
}

std::vector<CriterionReport> de_impl(Context& cx)
{
    auto const& op = cx.opts;
    auto const mg = as_double(op.m_grid);
    auto& o = cx.o;

    // limsup ||S_n/sqrt(n)||_1 (reported, not thresholded).
    NormOptions no;
    no.npaths = op.npaths;
    no.seed = op.seed;
    no.workers = op.workers;
    auto const sn = summand_norms(o, cx.model, o.observable(), "X", 1.0, op.mc_n_grid, no, false).plus;
    Evidence sn_ev;
    sn_ev.label = "||S_n/sqrt(n)||_1";
    sn_ev.grid = as_double(sn.n_grid);
    sn_ev.values = sn.values;
    sn_ev.se = sn.se;
    sn_ev.method = sn.method;
    double const c_obs = *std::max_element(sn.values.begin(), sn.values.end());
    Verdict const bounded = sn.divergence_flag ? Verdict::violated : Verdict::satisfied;

    bool div = false, reliable = true;
    Evidence y1 = cx.y_evidence(false, div, reliable);
    Verdict const yv = limit_zero_verdict(mg, y1.values, y1.se, div, rule(op.tol));

    Evidence e0 = cx.cond_sum_l1();
    Verdict const e0v = limit_zero_verdict(e0.grid, e0.values, e0.se, false, rule(op.tol));
    Evidence c2 = cx.cauchy(false);
    Evidence c1 = cx.cauchy(true);
    Verdict const c2v = cx.cauchy_verdict(c2);
    Verdict const c1v = cx.cauchy_verdict(c1);

    std::vector<CriterionReport> out(4);
    out[0].id = "D";
    out[0].clauses = {{"Sn_L1_bounded", bounded}, {"Y0m_plus1_to_0", yv}};
    out[0].evidence = {sn_ev, y1};
    out[0].extra["C_observed"] = num(c_obs);
    out[0].verdict = all_of({bounded, yv});
    out[1].id = "E";
    out[1].clauses = {{"E0Sn_L1_over_sqrt_n", e0v}, {"D0m_converges_L2", c2v}};
    out[1].evidence = {e0, c2};
    out[1].verdict = all_of({e0v, c2v});
    out[2].id = "Dprime";
    out[2].clauses = {{"Y0m_plus1_to_0", yv}};
    out[2].evidence = {y1};
    out[2].verdict = yv;
    out[3].id = "Eprime";
    out[3].clauses = {{"E0Sn_L1_over_sqrt_n", e0v}, {"D0m_converges_L1", c1v}};
    out[3].evidence = {e0, c1};
    out[3].verdict = all_of({e0v, c1v});
    for (auto& r : out)
    {
        r.tolerance = op.tol;
        r.extra["cauchy_tol"] = op.cauchy_tol;
    }
    if (!reliable)
    {
        out[0].notes.push_back("SE unreliable: heavy-tailed summand");
        out[2].notes.push_back("SE unreliable: heavy-tailed summand");
    }
    if (div)
    {
        out[0].notes.push_back("divergence_flag set for ||Y0^m||_{+1}");
        out[2].notes.push_back("divergence_flag set for ||Y0^m||_{+1}");
    }
    return out;
}

std::vector<CriterionReport> fg_impl(Context& cx)
{
    auto const& op = cx.opts;
    auto const mg = as_double(op.m_grid);
    bool div = false, reliable = true;
    Evidence ym = cx.y_evidence(true, div, reliable);
    Verdict const fv = limit_zero_verdict(mg, ym.values, ym.se, div, rule(op.tol));

    Evidence mx = cx.cond_max_l1();
    Verdict const mv = limit_zero_verdict(mx.grid, mx.values, mx.se, false, rule(op.tol));
    Evidence c2 = cx.cauchy(false);
    Verdict const c2v = cx.cauchy_verdict(c2);

    std::vector<CriterionReport> out(2);
    out[0].id = "F";
    out[0].clauses = {{"Y0m_mplus1_to_0", fv}};
    out[0].evidence = {ym};
    out[0].verdict = fv;
    if (!reliable)
        out[0].notes.push_back("SE unreliable: heavy-tailed summand");
    if (div)
        out[0].notes.push_back("divergence_flag set for ||Y0^m||_{M+,1}");
    out[1].id = "G";
    out[1].clauses = {{"max_E0Sk_L1_over_sqrt_n", mv}, {"D0m_converges_L2", c2v}};
    out[1].evidence = {mx, c2};
    out[1].verdict = all_of({mv, c2v});
    for (auto& r : out)
        r.tolerance = op.tol;
    return out;
}

//---------------------------------------------------------------------------//
std::vector<CriterionReport> projective_impl(Context& cx)
{
    auto const& o = cx.o;
    auto const& op = cx.opts;
    std::size_t const K = op.horizon;
    if (K < 2)
        throw InputError("projective horizon must be >= 2");
    std::vector<CriterionReport> out(4);
    out[0].id = "MW";
    out[1].id = "PROJ_IND";
    out[2].id = "MIXINGALE";
    out[3].id = "PROJ_DIFF";
    for (auto& r : out)
    {
        r.tolerance = op.tol;
        r.extra["horizon"] = K;
    }

    // Checkpoints for partial sums.
    std::vector<std::size_t> marks;
    for (std::size_t k = 1; k < K; k *= 10)
        marks.push_back(k);
    marks.push_back(K);

    double const zeta_tail = [&] {
        double s = 0;
        for (std::size_t k = 1; k <= K; ++k)
            s += std::pow(static_cast<double>(k), -1.5);
        return boost::math::zeta(1.5) - s;
    }();

    // Norms of E_0(X_n) and E_0(S_n) for n = 0..K.
    std::vector<double> ex(K + 1), es(K + 1), pdiff(K + 1);
    std::vector<Summand> exr;
    {
        Summand term = o.observable();
        Summand sum = o.zero();
        for (std::size_t n = 0; n <= K; ++n)
        {
            exr.push_back(term);
            ex[n] = std::sqrt(o.second_moment(term));
            pdiff[n] = std::sqrt(o.diff_second_moment(term));
            o.axpy(1.0, term, sum);
            es[n] = std::sqrt(o.second_moment(sum));  // E_0(S_{n+1})
            term = o.shift(term, 1);
        }
    }

    auto partial_evidence = [&](std::string label, std::vector<double> const& terms) {
        Evidence e;
        e.label = std::move(label);
        double acc = 0;
        std::size_t mi = 0;
        for (std::size_t k = 1; k <= K; ++k)
        {
            acc += terms[k];
            if (mi < marks.size() && marks[mi] == k)
            {
                e.grid.push_back(static_cast<double>(k));
                e.values.push_back(acc);
                ++mi;
            }
        }
        return std::make_pair(e, acc);
    };

    // MW
    {
        std::vector<double> terms(K + 1, 0.0);
        for (std::size_t k = 1; k <= K; ++k)
            terms[k] = es[k - 1] / std::pow(static_cast<double>(k), 1.5);
        auto [ev, partial] = partial_evidence("sum_k ||E0(S_k)||_2 / k^{3/2}", terms);
        double tail = 0;
        if (o.markov())
        {
            // E_0(S_k) = g - Q^k g with g the Poisson solution.
            double const g = pi_norm(o, o.theta_limit().state);
            tail = 2 * g * zeta_tail;
            out[0].notes.push_back("tail bounded by 2||g||_2 * zeta tail");
        }
        else
        {
            tail = es[K - 1] * zeta_tail;
            out[0].notes.push_back("tail exact: E_0(S_k) constant beyond the memory");
        }
        double const total = std::isinf(partial) ? inf : partial + tail;
        out[0].evidence = {ev};
        out[0].extra["partial_sum"] = num(partial);
        out[0].extra["tail_bound"] = num(tail);
        out[0].extra["total"] = num(total);
        out[0].verdict = finite_verdict(total);
    }

    // PROJ_IND
    {
        std::vector<double> terms(K + 1, 0.0);
        for (std::size_t n = 1; n <= K; ++n)
            terms[n] = ex[n] / std::sqrt(static_cast<double>(n));
        auto [ev, partial] = partial_evidence("sum_n n^{-1/2} ||E0(X_n)||_2", terms);
        double tail = 0;
        if (o.markov())
            tail = geometric_tail(o, ex[K]) / std::sqrt(static_cast<double>(K));
        double const total = std::isinf(partial) ? inf : partial + tail;
        out[1].evidence = {ev};
        out[1].extra["partial_sum"] = num(partial);
        out[1].extra["tail_bound"] = num(tail);
        out[1].extra["total"] = num(total);
        out[1].verdict = finite_verdict(total);
    }

    // MIXINGALE
    {
        std::vector<double> gamma(K + 1, 0.0);
        double tail = 0;
        bool infinite = false;
        if (o.markov())
        {
            auto const& chain = o.chain();
            auto const& pi = chain.stationary;
            tail = pi_norm(o, chain.observable) * geometric_tail(o, ex[K]);
            // suffix[k] = sum_{k' >= k} |Q^{k'} f| (k' <= K)
            std::vector<Eigen::VectorXd> suffix(K + 2,
                                                Eigen::VectorXd::Zero(chain.num_states()));
            for (std::size_t k = K + 1; k-- > 0;)
                suffix[k] = suffix[k + 1] + exr[k].state.cwiseAbs();
            Eigen::VectorXd v = chain.observable.cwiseAbs();  // Q^j |f|
            for (std::size_t j = 0; j <= K; ++j)
            {
                gamma[j] = pi.dot(v.cwiseProduct(suffix[j])) + tail;
                v = chain.transition * v;
            }
        }
        else
        {
            std::size_t const L = o.history();
            for (std::size_t j = 0; j <= std::min(L, K) && !infinite; ++j)
            {
                for (std::size_t k = j; k <= std::min(L, K); ++k)
                {
                    auto const mom = o.abs_product(o.observable(), j, exr[k]);
                    if (std::isinf(mom.value))
                    {
                        infinite = true;
                        gamma[j] = inf;
                        break;
                    }
                    gamma[j] += mom.value;
                }
            }
        }
        Evidence eg, ea;
        eg.label = "Gamma_j";
        for (std::size_t j = 0; j <= std::min<std::size_t>(K, 64); ++j)
        {
            eg.grid.push_back(static_cast<double>(j));
            eg.values.push_back(gamma[j]);
        }
        ea.label = "(1/m) sum_{j<m} Gamma_j";
        for (auto m : op.m_grid)
        {
            double s = 0;
            for (std::size_t j = 0; j < m; ++j)
                s += j <= K ? gamma[j] : tail;
            ea.grid.push_back(static_cast<double>(m));
            ea.values.push_back(s / static_cast<double>(m));
        }
        out[2].evidence = {eg, ea};
        out[2].extra["tail_bound"] = num(tail);
        if (infinite || std::isinf(gamma[0]))
        {
            out[2].verdict = Verdict::violated;
            out[2].notes.push_back("Gamma_0 is infinite");
        }
        else
        {
            out[2].verdict = limit_zero_verdict(ea.grid, ea.values, {}, false, rule(op.tol));
        }
    }

    // PROJ_DIFF
    {
        std::vector<double> terms(K + 1, 0.0);
        for (std::size_t i = 1; i <= K; ++i)
            terms[i] = pdiff[i];
        auto [ev, partial] = partial_evidence(
            "sum_{i>=1} ||E_{-i}(X_0) - E_{-i-1}(X_0)||_2", terms);
        double tail = o.markov() ? geometric_tail(o, ex[K]) : 0.0;
        double const total = std::isinf(partial) ? inf : partial + tail;
        Evidence vanish;
        vanish.label = "||E_{-n}(X_0)||_2";
        for (auto n : marks)
        {
            vanish.grid.push_back(static_cast<double>(n));
            vanish.values.push_back(ex[n]);
        }
        Verdict const v1 = limit_zero_verdict(vanish.grid, vanish.values, {}, false, rule(op.tol));
        out[3].evidence = {ev, vanish};
        out[3].clauses = {{"remote_past_trivial", v1}, {"sum_finite", finite_verdict(total)}};
        out[3].extra["partial_sum"] = num(partial);
        out[3].extra["tail_bound"] = num(tail);
        out[3].extra["total"] = num(total);
        out[3].verdict = all_of({v1, finite_verdict(total)});
        if (std::isinf(partial))
            out[3].notes.push_back("a projection difference has infinite L2 norm");
    }
    for (auto& r : out)
    {
        if (r.clauses.empty())
            r.clauses[r.id] = r.verdict;
    }
    return out;
}

//---------------------------------------------------------------------------//
std::vector<CriterionReport> mixing_impl(Context& cx)
{
    auto const& o = cx.o;
    auto const& op = cx.opts;
    if (!o.markov())
        throw UnsupportedModel("mixing coefficients need a finite Markov chain");
    auto const& chain = o.chain();
    auto const& q = chain.transition;
    auto const& pi = chain.stationary;
    std::vector<CriterionReport> out(2);
    out[0].id = "RHO_SUM";
    out[1].id = "ALPHA_QUANTILE";

    // RHO_SUM
    {
        Evidence e;
        e.label = "rho(2^k)";
        double sum = 0, last = 1;
        for (int k = 1; k <= 62; ++k)
        {
            double const r = rho_coefficient(q, pi, std::size_t{1} << k);
            e.grid.push_back(k);
            e.values.push_back(r);
            sum += r;
            last = r;
            if (r < 1e-300)
                break;
        }
        // rho is submultiplicative: rho(2^{k+1}) <= rho(2^k)^2.
        double const tail = last < 1 ? last * last / (1 - last * last) : inf;
        out[0].evidence = {e};
        out[0].extra["partial_sum"] = num(sum);
        out[0].extra["tail_bound"] = num(tail);
        out[0].verdict = finite_verdict(sum + tail);
    }

    // ALPHA_QUANTILE
    {
        int const s_count = chain.num_states();
        // Law of |X_0|.
        std::vector<std::pair<double, double>> law;
        for (int s = 0; s < s_count; ++s)
            law.emplace_back(std::abs(chain.observable[s]), pi[s]);
        std::sort(law.begin(), law.end());
        auto survival = [&](double t) {
            double p = 0;
            for (auto const& [v, w] : law)
                p += v > t ? w : 0.0;
            return p;
        };
        auto quantile = [&](double u) {
            if (survival(0) <= u)
                return 0.0;
            for (auto const& [v, w] : law)
            {
                if (survival(v) <= u)
                    return v;
            }
            return law.back().first;
        };
        Evidence ea, et;
        ea.label = "alpha(k)";
        et.label = "E X_0^2 I(|X_0| > Q(2 alpha(k)))";
        double total = 0;
        std::optional<std::size_t> cutoff;
        Eigen::MatrixXd qk = q;
        for (std::size_t k = 1; k <= op.horizon; ++k)
        {
            double const a = alpha_coefficient(q, pi, k);
            double const qt = quantile(2 * a);
            double term = 0;
            for (int s = 0; s < s_count; ++s)
            {
                double const f = chain.observable[s];
                if (std::abs(f) > qt)
                    term += pi[s] * f * f;
            }
            total += term;
            if (k <= 64 || k == op.horizon)
            {
                ea.grid.push_back(static_cast<double>(k));
                ea.values.push_back(a);
                et.grid.push_back(static_cast<double>(k));
                et.values.push_back(term);
            }
            if (term == 0)
            {
                cutoff = k;
                break;
            }
        }
        out[1].evidence = {ea, et};
        out[1].extra["partial_sum"] = num(total);
        out[1].notes.push_back(
            "indicator uses |X_0| > Q(2 alpha(k)); alpha(k) is nonincreasing, so "
            "terms stay 0 after the cutoff");
        if (cutoff)
        {
            out[1].extra["cutoff_k"] = *cutoff;
            out[1].verdict = finite_verdict(total);
        }
        else
        {
            out[1].verdict = Verdict::inconclusive;
            out[1].notes.push_back("indicator did not vanish within the horizon");
        }
    }
    for (auto& r : out)
    {
        r.tolerance = op.tol;
        r.clauses[r.id] = r.verdict;
    }
    return out;
}

//---------------------------------------------------------------------------//
std::vector<CriterionReport> linear_impl(std::vector<double> const& a,
                                         double sigma,
                                         CriteriaOptions const& op)
{
    if (a.empty())
        throw InputError("linear criteria need at least one coefficient");
    auto const& grid = op.n_grid;
    std::size_t const nmax = grid.back();
    std::size_t const len = a.size();
    double const var = sigma * sigma;

    // Route 1: prefix sums b_n.
    auto const coeffs = b_sequence(a, std::max(op.cesaro_n_max, nmax + len));
    auto const& b = coeffs.b;
    // Route 2: direct summation of E_0(X_i) weights.

    Evidence zw1, zw1_direct, zw2, lnew;
    zw1.label = "sigma * sqrt((1/n) sum_j (b_{j+n} - b_j)^2)";
    zw1_direct.label = "direct summation of E0(X_i) weights";
    zw2.label = "sigma * |(1/n) sum_{j<=n} b_j - c|";
    lnew.label = "|E(S_n^2)/n - sigma^2 c^2|";
    double route_gap = 0;
    double cesaro_partial = 0;
    std::size_t gi = 0;
    std::vector<double> direct(len, 0.0);
    for (std::size_t n = 1; n <= nmax; ++n)
    {
        cesaro_partial += b[n];
        // direct[j] accumulates a_{i+j} for i < n.
        for (std::size_t j = 0; j < len; ++j)
            direct[j] += (n - 1 + j < len) ? a[n - 1 + j] : 0.0;
        if (n != grid[gi])
            continue;
        double s1 = 0, s2 = 0;
        for (std::size_t j = 0; j < len; ++j)
        {
            double const w = b[n + j] - b[j];
            s1 += w * w;
            s2 += direct[j] * direct[j];
        }
        auto const dn = static_cast<double>(n);
        double const v1 = sigma * std::sqrt(s1 / dn);
        double const v2 = sigma * std::sqrt(s2 / dn);
        route_gap = std::max(route_gap, std::abs(v1 - v2));
        zw1.grid.push_back(dn);
        zw1.values.push_back(v1);
        zw1_direct.grid.push_back(dn);
        zw1_direct.values.push_back(v2);
        double const ces = cesaro_partial / dn;
        zw2.grid.push_back(dn);
        lnew.grid.push_back(dn);
        if (coeffs.limit)
            zw2.values.push_back(sigma * std::abs(ces - *coeffs.limit));
        else
            zw2.values.push_back(nan);
        ++gi;
    }
    // E(S_n^2)/n = (var/n) * sum over innovations of squared total weights.
    {
        ProcessModel pm{"linear", LinearProcessModel{a, Distribution::normal(sigma)}};
        Oracle o(pm);
        auto const plus = exact_plus2(o, o.observable(), grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            double const v = plus[i] * plus[i];
            lnew.values.push_back(coeffs.limit
                                      ? std::abs(v - var * *coeffs.limit * *coeffs.limit)
                                      : nan);
        }
    }

    Verdict const c_exists = coeffs.limit ? Verdict::satisfied : Verdict::inconclusive;
    Verdict const z1 = limit_zero_verdict(zw1.grid, zw1.values, {}, false, rule(op.tol));
    Verdict const z2 = coeffs.limit
                           ? limit_zero_verdict(zw2.grid, zw2.values, {}, false, rule(op.tol))
                           : Verdict::inconclusive;
    Verdict const n2 = coeffs.limit
                           ? limit_zero_verdict(lnew.grid, lnew.values, {}, false, rule(op.tol))
                           : Verdict::inconclusive;

    std::vector<CriterionReport> out(2);
    out[0].id = "LIN_ZW";
    out[0].clauses = {{"weights_sq_over_n_to_0", z1}, {"cesaro_converges", z2}};
    out[0].evidence = {zw1, zw1_direct, zw2};
    out[0].verdict = all_of({z1, z2});
    out[0].extra["route_gap"] = route_gap;
    out[1].id = "LIN_NEW";
    out[1].clauses = {{"cesaro_limit_exists", c_exists}, {"variance_to_sigma2_c2", n2}};
    out[1].evidence = {zw2, lnew};
    out[1].verdict = all_of({c_exists, n2});
    for (auto& r : out)
    {
        r.tolerance = op.tol;
        r.extra["c"] = coeffs.limit ? num(*coeffs.limit) : nlohmann::json(nullptr);
        r.extra["cesaro_last"] = num(coeffs.cesaro_last);
        r.extra["cesaro_rel_fluctuation"] = num(coeffs.rel_fluctuation);
        r.extra["sigma"] = sigma;
        r.notes.push_back("sequences scaled by the innovation sigma; the variance "
                          "clause compares with sigma^2 c^2");
    }
    return out;
}

}  // namespace

//---------------------------------------------------------------------------//
std::vector<std::string> const& criterion_ids()
{
    static std::vector<std::string> const ids = {
        "PH",        "ZW",     "A",         "B",       "C",
        "D",         "E",      "Dprime",    "Eprime",  "F",
        "G",         "MW",     "PROJ_IND",  "PROJ_DIFF", "MIXINGALE",
        "RHO_SUM",   "ALPHA_QUANTILE", "LIN_ZW", "LIN_NEW"};
    return ids;
}

CriteriaOptions CriteriaOptions::defaults()
{
    CriteriaOptions o;
    o.n_grid = powers_of_two(1, 18);
    o.mc_n_grid = powers_of_two(6, 14);
    o.m_grid = powers_of_two(0, 15);
    o.i_grid = powers_of_two(0, 6);
    return o;
}

nlohmann::json CriterionReport::to_json() const
{
    nlohmann::json j;
    j["criterion_id"] = id;
    j["verdict"] = to_string(verdict);
    j["tolerance"] = tolerance;
    nlohmann::json cl = nlohmann::json::object();
    for (auto const& [k, v] : clauses)
        cl[k] = to_string(v);
    j["clauses"] = cl;
    nlohmann::json ev = nlohmann::json::array();
    for (auto const& e : evidence)
    {
        nlohmann::json vals = nlohmann::json::array(), ses = nlohmann::json::array();
        for (double v : e.values)
            vals.push_back(num(v));
        for (double v : e.se)
            ses.push_back(num(v));
        nlohmann::json item = {{"label", e.label},
                               {"grid", e.grid},
                               {"values", vals},
                               {"method", e.method}};
        if (!e.se.empty())
            item["se"] = ses;
        ev.push_back(item);
    }
    j["evidence"] = ev;
    j["notes"] = notes;
    j["extra"] = extra;
    return j;
}

//---------------------------------------------------------------------------//
namespace
{
// Q^n - 1 pi^T as the n-th power of Q - 1 pi^T; squaring the centered
// operator keeps round-off from growing with n.
Eigen::MatrixXd
centered_power(Eigen::MatrixXd const& q, Eigen::VectorXd const& pi, std::size_t n)
{
    Eigen::Index const s = q.rows();
    Eigen::MatrixXd const proj = Eigen::VectorXd::Ones(s) * pi.transpose();
    Eigen::MatrixXd base = q - proj;
    if (n == 0)
        return Eigen::MatrixXd::Identity(s, s) - proj;
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(s, s);
    for (std::size_t k = n; k; k >>= 1)
    {
        if (k & 1u)
            out = out * base;
        if (k > 1)
            base = base * base;
    }
    return out;
}
}  // namespace

double rho_coefficient(Eigen::MatrixXd const& q, Eigen::VectorXd const& pi, std::size_t n)
{
    Eigen::Index const s = q.rows();
    if (q.cols() != s || pi.size() != s)
        throw InputError("rho_coefficient: dimension mismatch");
    Eigen::VectorXd const sq = pi.cwiseSqrt();
    Eigen::MatrixXd m = sq.asDiagonal() * centered_power(q, pi, n)
                        * sq.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return std::clamp(svd.singularValues()(0), 0.0, 1.0);
}

double alpha_coefficient(Eigen::MatrixXd const& q, Eigen::VectorXd const& pi, std::size_t n)
{
    Eigen::Index const s = q.rows();
    if (s > max_alpha_states)
        throw UnsupportedModel("alpha coefficient: state space too large for "
                               "exhaustive search");
    if (q.cols() != s || pi.size() != s)
        throw InputError("alpha_coefficient: dimension mismatch");
    // c(i, j) = P(xi_0 = i, xi_n = j) - pi_i pi_j
    Eigen::MatrixXd const c = pi.asDiagonal() * centered_power(q, pi, n);
    double best = 0;
    std::uint64_t const subsets = std::uint64_t{1} << s;
    Eigen::VectorXd col(s);
    for (std::uint64_t mask = 1; mask < subsets; ++mask)
    {
        col.setZero();
        for (Eigen::Index i = 0; i < s; ++i)
        {
            if (mask >> i & 1u)
                col += c.row(i).transpose();
        }
        // Best B collects the positive (or the negative) entries.
        double pos = 0, neg = 0;
        for (Eigen::Index j = 0; j < s; ++j)
            (col[j] > 0 ? pos : neg) += col[j];
        best = std::max({best, pos, -neg});
    }
    return std::min(best, 0.25);
}

//---------------------------------------------------------------------------//
CriterionReport check_ph(ProcessModel const& model, CriteriaOptions const& o)
{
    Context cx(model, o);
    return ph_impl(cx);
}

CriterionReport check_zw(ProcessModel const& model, CriteriaOptions const& o)
{
    Context cx(model, o);
    return zw_impl(cx);
}

std::vector<CriterionReport>
check_theorem2_abc(ProcessModel const& model, CriteriaOptions const& o)
{
    Context cx(model, o);
    return abc_impl(cx);
}

std::vector<CriterionReport>
check_theorem3_de(ProcessModel const& model, CriteriaOptions const& o)
{
    Context cx(model, o);
    return de_impl(cx);
}

std::vector<CriterionReport>
check_theorem6_fg(ProcessModel const& model, CriteriaOptions const& o)
{
    Context cx(model, o);
    return fg_impl(cx);
}

std::vector<CriterionReport> linear_criteria(std::vector<double> const& a,
                                             double sigma,
                                             CriteriaOptions const& o)
{
    return linear_impl(a, sigma, o);
}

std::vector<CriterionReport> linear_criteria(std::vector<double> const& a,
                                             std::size_t n_max)
{
    auto o = CriteriaOptions::defaults();
    o.n_grid.clear();
    for (std::size_t n = 1; n <= n_max; n *= 2)
        o.n_grid.push_back(n);
    return linear_impl(a, 1.0, o);
}

std::vector<CriterionReport>
projective_family(ProcessModel const& model, CriteriaOptions const& o)
{
    Context cx(model, o);
    return projective_impl(cx);
}

std::vector<CriterionReport>
mixing_sufficient_conditions(ProcessModel const& model, CriteriaOptions const& o)
{
    Context cx(model, o);
    return mixing_impl(cx);
}

//---------------------------------------------------------------------------//
bool CriteriaSweep::consistent() const
{
    return std::all_of(checks.begin(), checks.end(), [](auto const& c) {
        return c.passed;
    });
}

CriterionReport const* CriteriaSweep::find(std::string const& id) const
{
    for (auto const& r : reports)
    {
        if (r.id == id)
            return &r;
    }
    return nullptr;
}

nlohmann::json CriteriaSweep::to_json() const
{
    nlohmann::json j;
    j["model_id"] = model_id;
    nlohmann::json reps = nlohmann::json::array();
    for (auto const& r : reports)
        reps.push_back(r.to_json());
    j["reports"] = reps;
    nlohmann::json cs = nlohmann::json::array();
    for (auto const& c : checks)
        cs.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["consistency"] = cs;
    j["consistent"] = consistent();
    return j;
}

CriteriaSweep evaluate_criteria(ProcessModel const& model,
                                std::vector<std::string> const& ids,
                                CriteriaOptions const& o)
{
    auto const& all = criterion_ids();
    std::set<std::string> wanted(ids.begin(), ids.end());
    for (auto const& id : wanted)
    {
        if (std::find(all.begin(), all.end(), id) == all.end())
            throw InputError("unknown criterion id '" + id + "'");
    }
    if (wanted.empty())
        wanted.insert(all.begin(), all.end());
    auto want = [&](std::initializer_list<char const*> group) {
        return std::any_of(group.begin(), group.end(), [&](char const* g) {
            return wanted.count(g) > 0;
        });
    };

    Context cx(model, o);
    std::map<std::string, CriterionReport> got;
    auto run = [&](std::vector<std::string> const& group, auto&& fn) {
        try
        {
            for (auto& r : fn())
                got[r.id] = std::move(r);
        }
        catch (UnsupportedModel const& e)
        {
            for (auto const& id : group)
                got[id] = unsupported(id, e.what());
        }
    };
    auto one = [](CriterionReport r) { return std::vector<CriterionReport>{std::move(r)}; };

    if (want({"PH"}))
        run({"PH"}, [&] { return one(ph_impl(cx)); });
    if (want({"ZW"}))
        run({"ZW"}, [&] { return one(zw_impl(cx)); });
    if (want({"A", "B", "C"}))
        run({"A", "B", "C"}, [&] { return abc_impl(cx); });
    if (want({"D", "E", "Dprime", "Eprime"}))
        run({"D", "E", "Dprime", "Eprime"}, [&] { return de_impl(cx); });
    if (want({"F", "G"}))
        run({"F", "G"}, [&] { return fg_impl(cx); });
    if (want({"MW", "PROJ_IND", "PROJ_DIFF", "MIXINGALE"}))
        run({"MW", "PROJ_IND", "PROJ_DIFF", "MIXINGALE"},
            [&] { return projective_impl(cx); });
    if (want({"RHO_SUM", "ALPHA_QUANTILE"}))
        run({"RHO_SUM", "ALPHA_QUANTILE"}, [&] { return mixing_impl(cx); });
    if (want({"LIN_ZW", "LIN_NEW"}))
    {
        run({"LIN_ZW", "LIN_NEW"}, [&] {
            auto const* lin = std::get_if<LinearProcessModel>(&model.spec);
            if (!lin)
                throw UnsupportedModel("linear criteria need a linear process model");
            if (!lin->innovation.finite_variance())
                throw UnsupportedModel("linear criteria need finite innovation variance");
            return linear_impl(lin->coeffs, std::sqrt(lin->innovation.variance()), o);
        });
    }

    CriteriaSweep sweep;
    sweep.model_id = model.id;
    for (auto const& id : all)
    {
        if (wanted.count(id) && got.count(id))
            sweep.reports.push_back(got[id]);
    }

    auto verdict_of = [&](char const* id) -> std::optional<Verdict> {
        auto it = got.find(id);
        if (it == got.end())
            return std::nullopt;
        return it->second.verdict;
    };
    auto pair_check = [&](char const* a, char const* b, char const* name) {
        auto va = verdict_of(a), vb = verdict_of(b);
        if (!va || !vb)
            return;
        ConsistencyCheck c;
        c.name = name;
        c.passed = !contradicts(*va, *vb);
        c.detail = std::string(a) + "=" + to_string(*va) + ", " + b + "="
                   + to_string(*vb);
        sweep.checks.push_back(c);
    };
    pair_check("A", "B", "A <-> B");
    pair_check("A", "C", "A <-> C");
    pair_check("B", "C", "B <-> C");
    pair_check("D", "E", "D <-> E");
    pair_check("F", "G", "F <-> G");
    if (auto f = verdict_of("F"), d = verdict_of("Dprime"); f && d)
    {
        ConsistencyCheck c;
        c.name = "F satisfied implies Dprime";
        c.passed = !(*f == Verdict::satisfied && *d != Verdict::satisfied);
        c.detail = "F=" + to_string(*f) + ", Dprime=" + to_string(*d);
        sweep.checks.push_back(c);
    }
    auto supported = [&](char const* id) {
        auto it = got.find(id);
        return it != got.end()
               && std::none_of(it->second.notes.begin(),
                               it->second.notes.end(),
                               [](std::string const& n) {
                                   return n.rfind("unsupported", 0) == 0;
                               });
    };
    if (supported("LIN_ZW") && supported("ZW"))
    {
        ConsistencyCheck c;
        c.name = "LIN_ZW matches ZW";
        c.passed = got["LIN_ZW"].verdict == got["ZW"].verdict;
        c.detail = "LIN_ZW=" + to_string(got["LIN_ZW"].verdict)
                   + ", ZW=" + to_string(got["ZW"].verdict);
        sweep.checks.push_back(c);
    }
    if (cx.o.markov() && model.is_markov())
    {
        auto const& chain = cx.o.chain();
        if (chain.num_states() <= max_alpha_states)
        {
            ConsistencyCheck c;
            c.name = "alpha <= rho/4, both nonincreasing";
            double prev_a = 0.25, prev_r = 1.0;
            for (std::size_t n = 0; n <= 32; ++n)
            {
                double const a = alpha_coefficient(chain.transition, chain.stationary, n);
                double const r = rho_coefficient(chain.transition, chain.stationary, n);
                if (a > r / 4 + 1e-12 || a > prev_a + 1e-12 || r > prev_r + 1e-12)
                {
                    c.passed = false;
                    c.detail = "fails at n=" + std::to_string(n);
                    break;
                }
                prev_a = a;
                prev_r = r;
            }
            sweep.checks.push_back(c);
        }
    }
    return sweep;
}

//---------------------------------------------------------------------------//
}  // namespace mgale
