//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file limit_tests.cpp
//---------------------------------------------------------------------------//
#include "mgale/limit_tests.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mgale/brownian.hpp"
#include "mgale/criteria.hpp"
#include "mgale/error.hpp"
#include "mgale/martingale.hpp"
#include "mgale/oracle.hpp"
#include "mgale/parallel.hpp"
#include "mgale/random.hpp"
#include "mgale/simulate.hpp"

namespace mgale
{
namespace
{
constexpr std::size_t block_size = 256;

nlohmann::json num(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    return v;
}

// S/sqrt(n eta), computed the same way by every test.
double normalized(double s, std::size_t n, double eta)
{
    return s / std::sqrt(static_cast<double>(n)) / std::sqrt(eta);
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
    double s = 0;
    for (double x : v)
        s += x;
    auto const n = static_cast<double>(v.size());
    out.mean = s / n;
    double q = 0;
    for (double x : v)
        q += (x - out.mean) * (x - out.mean);
    out.se = v.size() > 1 ? std::sqrt(q / (n - 1) / n) : 0.0;
    return out;
}

// Runs fn(index, buffer) for every path, one reusable buffer per block.
void for_each_path(std::size_t npaths,
                   unsigned workers,
                   std::function<void(std::size_t, PathBuffer&)> const& fn)
{
    std::size_t const blocks = (npaths + block_size - 1) / block_size;
    parallel_for(blocks, workers, [&](std::size_t b) {
        PathBuffer buf;
        std::size_t const end = std::min(npaths, (b + 1) * block_size);
        for (std::size_t p = b * block_size; p < end; ++p)
            fn(p, buf);
    });
}

bool has_summable_rho(Oracle const& o)
{
    auto const& chain = o.chain();
    for (std::size_t r = 1; r <= (std::size_t{1} << 20); r *= 2)
    {
        if (rho_coefficient(chain.transition, chain.stationary, r) < 1 - 1e-12)
            return true;
    }
    return false;
}

}  // namespace

//---------------------------------------------------------------------------//
std::vector<std::string> const& probe_family_ids()
{
    static std::vector<std::string> const ids
        = {"full", "l1", "bounded", "identity", "square"};
    return ids;
}

std::vector<Probe> probe_family(std::string const& family, double eta)
{
    if (!(eta > 0))
        throw InputError("probe family needs eta > 0");
    auto const& ids = probe_family_ids();
    if (std::find(ids.begin(), ids.end(), family) == ids.end())
        throw InputError("unknown probe family '" + family + "'");
    std::vector<Probe> out;
    bool const full = family == "full";
    if (full || family == "l1" || family == "identity")
        out.push_back({"x", [](double x) { return x; }});
    if (full || family == "square")
        out.push_back({"x^2", [](double x) { return x * x; }});
    if (full || family == "l1" || family == "bounded")
    {
        out.push_back({"sin", [](double x) { return std::sin(x); }});
        out.push_back({"tanh_half", [](double x) { return std::tanh(x / 2); }});
        double const sd = std::sqrt(eta);
        double const h = 0.1 * sd;
        for (int q = 1; q <= 9; ++q)
        {
            double const t = sd * normal_quantile(q / 10.0);
            std::ostringstream id;
            id << "cdf_q" << q * 10;
            out.push_back({id.str(), [t, h](double x) { return normal_cdf((t - x) / h); }});
        }
    }
    return out;
}

double reference_eta(ProcessModel const& model)
{
    Oracle o(model);
    double const eta = o.diff_second_moment(o.theta_limit());
    if (!std::isfinite(eta))
        throw UnsupportedModel("limit martingale difference has infinite variance");
    return eta;
}

//---------------------------------------------------------------------------//
CltTestResult conditional_clt_test(ProcessModel const& model, CltOptions const& o)
{
    if (o.n == 0 || o.npaths_inner == 0)
        throw InputError("CLT test needs n >= 1 and npaths_inner >= 1");
    if (!(o.tol > 0))
        throw InputError("CLT test needs tol > 0");
    auto const need = static_cast<std::size_t>(
        std::ceil(std::pow(ks_critical(1) / o.tol, 2)));
    if (o.npaths_inner < need)
    {
        std::ostringstream os;
        os << "inner sample " << o.npaths_inner << " cannot resolve tol " << o.tol
           << " (needs >= " << need << ")";
        throw InconclusiveBudget(os.str());
    }
    PathGenerator gen(model);
    Oracle const& orc = gen.oracle();
    double const eta = o.eta ? *o.eta : reference_eta(model);
    if (!(eta > 0))
        throw UnsupportedModel("degenerate limit variance");

    CltTestResult res;
    res.model_id = model.id;
    res.n = o.n;
    res.k = o.k;
    res.npaths_inner = o.npaths_inner;
    res.family = o.family;
    res.eta = eta;
    res.tol = o.tol;
    auto const probes = probe_family(o.family, eta);
    for (auto const& p : probes)
    {
        res.probe_ids.push_back(p.id);
        res.probe_targets.push_back(gaussian_expectation(p.f, eta));
    }

    struct Cond
    {
        std::string label;
        double weight;
        PathBuffer prefix;
        std::uint64_t stream;
    };
    std::vector<Cond> conds;
    if (orc.markov() && o.k == 0 && o.enumerate_states)
    {
        res.exact_outer = true;
        auto const& pi = orc.chain().stationary;
        for (int s = 0; s < orc.chain().num_states(); ++s)
        {
            if (pi[s] > 0)
                conds.push_back({"state=" + std::to_string(s),
                                 pi[s],
                                 gen.state_prefix(s),
                                 stream::conditioned_state + static_cast<std::uint64_t>(s)});
        }
    }
    else
    {
        if (o.npaths_outer == 0)
            throw InputError("CLT test needs npaths_outer >= 1");
        for (std::size_t c = 0; c < o.npaths_outer; ++c)
        {
            Sampler rng(o.seed, stream::outer_condition, c);
            PathBuffer pre;
            gen.generate(rng, o.k, pre);
            pre.x.clear();
            conds.push_back({"outer=" + std::to_string(c),
                             1.0 / static_cast<double>(o.npaths_outer),
                             std::move(pre),
                             stream::inner_base + c});
        }
    }
    res.npaths_outer = conds.size();
    if (o.n < o.k)
        throw InputError("CLT test needs n >= k");

    res.probe_statistic.assign(probes.size(), 0.0);
    std::vector<double> stat_var(probes.size(), 0.0);
    for (auto const& c : conds)
    {
        std::vector<double> z(o.npaths_inner);
        for_each_path(o.npaths_inner, o.workers, [&](std::size_t i, PathBuffer& buf) {
            Sampler rng(o.seed, c.stream, i);
            gen.generate(rng, o.n, buf, &c.prefix);
            double s = 0;
            for (double x : buf.x)
                s += x;
            z[i] = s / std::sqrt(static_cast<double>(o.n));
        });
        ConditionResult cr;
        cr.label = c.label;
        cr.weight = c.weight;
        cr.npaths = o.npaths_inner;
        std::vector<double> fz(z.size());
        for (std::size_t p = 0; p < probes.size(); ++p)
        {
            for (std::size_t i = 0; i < z.size(); ++i)
                fz[i] = probes[p].f(z[i]);
            auto const ms = mean_se(fz);
            cr.probe_means.push_back(ms.mean);
            cr.probe_se.push_back(ms.se);
            res.probe_statistic[p] += c.weight * std::abs(ms.mean - res.probe_targets[p]);
            stat_var[p] += c.weight * c.weight * ms.se * ms.se;
        }
        std::vector<double> u(z.size());
        for (std::size_t i = 0; i < z.size(); ++i)
            u[i] = z[i] / std::sqrt(eta);
        cr.ks = ks_distance(u, normal_cdf);
        res.ks = std::max(res.ks, cr.ks);
        res.conditions.push_back(std::move(cr));
    }
    auto const worst
        = std::max_element(res.probe_statistic.begin(), res.probe_statistic.end());
    if (worst != res.probe_statistic.end())
    {
        res.statistic = *worst;
        res.statistic_se
            = std::sqrt(stat_var[static_cast<std::size_t>(worst - res.probe_statistic.begin())]);
    }
    res.passed = res.statistic < o.tol && res.ks < o.tol;
    return res;
}

nlohmann::json CltTestResult::to_json() const
{
    nlohmann::json conds = nlohmann::json::array();
    for (auto const& c : conditions)
    {
        conds.push_back({{"label", c.label},
                         {"weight", c.weight},
                         {"npaths", c.npaths},
                         {"ks", c.ks},
                         {"probe_means", c.probe_means},
                         {"probe_se", c.probe_se}});
    }
    return {{"model_id", model_id},
            {"n", n},
            {"k", k},
            {"npaths_outer", npaths_outer},
            {"npaths_inner", npaths_inner},
            {"family", family},
            {"exact_outer", exact_outer},
            {"eta", eta},
            {"probe_ids", probe_ids},
            {"probe_targets", probe_targets},
            {"probe_statistic", probe_statistic},
            {"conditions", conds},
            {"statistic", statistic},
            {"statistic_se", statistic_se},
            {"ks", ks},
            {"tol", tol},
            {"passed", passed}};
}

//---------------------------------------------------------------------------//
EtaEstimate eta_estimate(ProcessModel const& model,
                         std::vector<std::size_t> const& n_grid,
                         std::size_t npaths,
                         std::uint64_t seed,
                         unsigned workers)
{
    if (!model.finite_variance())
        throw UnsupportedModel("eta estimate needs finite variance");
    if (n_grid.empty() || npaths < 2)
        throw InputError("eta estimate needs a grid and npaths >= 2");
    if (!std::is_sorted(n_grid.begin(), n_grid.end()) || n_grid.front() == 0)
        throw InputError("eta grid must be increasing and positive");
    PathGenerator gen(model);
    Oracle const& orc = gen.oracle();
    std::size_t const nmax = n_grid.back();
    std::size_t const g = n_grid.size();

    EtaEstimate est;
    est.model_id = model.id;
    est.n_grid = n_grid;
    est.reference = orc.diff_second_moment(orc.theta_limit());

    // Per-path S_n^2/n at the grid points.
    auto run = [&](std::uint64_t stream_id, PathBuffer const* prefix) {
        std::vector<double> v(npaths * g);
        std::vector<double> x0(npaths);
        for_each_path(npaths, workers, [&](std::size_t p, PathBuffer& buf) {
            Sampler rng(seed, stream_id, p);
            gen.generate(rng, nmax, buf, prefix);
            double s = 0;
            std::size_t gi = 0;
            for (std::size_t t = 0; t < nmax; ++t)
            {
                s += buf.x[t];
                while (gi < g && n_grid[gi] == t + 1)
                    v[p * g + gi++] = s * s / static_cast<double>(t + 1);
            }
            x0[p] = buf.x[0];
        });
        return std::make_pair(v, x0);
    };
    auto summarize = [&](std::vector<double> const& v, std::vector<std::size_t> const& rows) {
        EtaCondition c;
        c.npaths = rows.size();
        std::vector<double> col(rows.size());
        for (std::size_t gi = 0; gi < g; ++gi)
        {
            for (std::size_t r = 0; r < rows.size(); ++r)
                col[r] = v[rows[r] * g + gi];
            auto const ms = mean_se(col);
            c.values.push_back(ms.mean);
            c.se.push_back(ms.se);
        }
        return c;
    };

    if (orc.markov())
    {
        auto const& pi = orc.chain().stationary;
        est.pooled.assign(g, 0.0);
        std::vector<double> var(g, 0.0);
        std::vector<std::size_t> all(npaths);
        for (std::size_t p = 0; p < npaths; ++p)
            all[p] = p;
        for (int s = 0; s < orc.chain().num_states(); ++s)
        {
            if (!(pi[s] > 0))
                continue;
            auto const prefix = gen.state_prefix(s);
            auto const [v, x0] = run(stream::conditioned_state + static_cast<std::uint64_t>(s),
                                     &prefix);
            auto c = summarize(v, all);
            c.label = "state=" + std::to_string(s);
            c.weight = pi[s];
            for (std::size_t gi = 0; gi < g; ++gi)
            {
                est.pooled[gi] += pi[s] * c.values[gi];
                var[gi] += pi[s] * pi[s] * c.se[gi] * c.se[gi];
            }
            est.conditions.push_back(std::move(c));
        }
        for (double v : var)
            est.pooled_se.push_back(std::sqrt(v));
    }
    else
    {
        auto const [v, x0] = run(stream::stationary, nullptr);
        std::vector<std::size_t> all(npaths), pos, neg;
        for (std::size_t p = 0; p < npaths; ++p)
        {
            all[p] = p;
            (x0[p] >= 0 ? pos : neg).push_back(p);
        }
        auto pooled = summarize(v, all);
        est.pooled = pooled.values;
        est.pooled_se = pooled.se;
        for (auto const& [label, rows] :
             {std::make_pair(std::string("X0>=0"), pos), std::make_pair(std::string("X0<0"), neg)})
        {
            if (rows.size() < 2)
                continue;
            auto c = summarize(v, rows);
            c.label = label;
            c.weight = static_cast<double>(rows.size()) / static_cast<double>(npaths);
            est.conditions.push_back(std::move(c));
        }
    }
    for (auto const& c : est.conditions)
    {
        double const se = std::hypot(c.se.back(), est.pooled_se.back());
        double const d = std::abs(c.values.back() - est.pooled.back());
        est.max_z = std::max(est.max_z, se > 0 ? d / se : (d > 0 ? 1e300 : 0.0));
    }
    return est;
}

nlohmann::json EtaEstimate::to_json() const
{
    nlohmann::json conds = nlohmann::json::array();
    for (auto const& c : conditions)
    {
        conds.push_back({{"label", c.label},
                         {"weight", c.weight},
                         {"npaths", c.npaths},
                         {"values", c.values},
                         {"se", c.se}});
    }
    return {{"model_id", model_id},
            {"n_grid", n_grid},
            {"conditions", conds},
            {"pooled", pooled},
            {"pooled_se", pooled_se},
            {"reference", num(reference)},
            {"max_z", max_z}};
}

//---------------------------------------------------------------------------//
namespace
{
struct FunctionalSamples
{
    double eta = 0;
    bool exploratory = false;
    std::vector<std::vector<double>> values;  //!< per functional, per path
};

FunctionalSamples functional_samples(ProcessModel const& model,
                                     std::size_t n,
                                     std::size_t npaths,
                                     std::vector<std::string> const& ids,
                                     FclOptions const& o)
{
    if (n == 0 || npaths == 0)
        throw InputError("FCLT test needs n >= 1 and npaths >= 1");
    enum Kind
    {
        endpoint,
        running_max,
        abs_max,
        time_integral
    };
    std::vector<Kind> kinds;
    for (auto const& id : ids)
    {
        functional_cdf(id);  // validates the id
        auto const& all = functional_ids();
        kinds.push_back(static_cast<Kind>(std::find(all.begin(), all.end(), id) - all.begin()));
    }
    PathGenerator gen(model);
    Oracle const& orc = gen.oracle();
    FunctionalSamples out;
    out.eta = o.eta ? *o.eta : reference_eta(model);
    if (!(out.eta > 0))
        throw UnsupportedModel("degenerate limit variance");
    bool const iid = std::holds_alternative<IIDModel>(model.spec);
    out.exploratory = !(iid || (orc.markov() && has_summable_rho(orc)));

    std::optional<PathBuffer> prefix;
    std::uint64_t stream_id = stream::stationary;
    if (o.condition_state)
    {
        if (!orc.markov())
            throw UnsupportedModel("state conditioning needs a finite Markov chain");
        prefix = gen.state_prefix(*o.condition_state);
        stream_id = stream::conditioned_state + static_cast<std::uint64_t>(*o.condition_state);
    }
    out.values.assign(kinds.size(), std::vector<double>(npaths));
    double const eta = out.eta;
    for_each_path(npaths, o.workers, [&](std::size_t p, PathBuffer& buf) {
        Sampler rng(o.seed, stream_id, p);
        gen.generate(rng, n, buf, prefix ? &*prefix : nullptr);
        double s = 0, mx = 0, amx = 0, area = 0;
        for (double x : buf.x)
        {
            double const prev = s;
            s += x;
            mx = std::max(mx, s);
            amx = std::max(amx, std::abs(s));
            area += 0.5 * (prev + s);
        }
        for (std::size_t f = 0; f < kinds.size(); ++f)
        {
            double v = 0;
            switch (kinds[f])
            {
            case endpoint:
                v = s;
                break;
            case running_max:
                v = mx;
                break;
            case abs_max:
                v = amx;
                break;
            case time_integral:
                v = area / static_cast<double>(n);
                break;
            }
            out.values[f][p] = normalized(v, n, eta);
        }
    });
    return out;
}

}  // namespace

std::vector<FclTestResult> fclt_suite(ProcessModel const& model,
                                      std::size_t n,
                                      std::size_t npaths,
                                      std::vector<std::string> const& ids,
                                      FclOptions const& o)
{
    auto samples = functional_samples(model, n, npaths, ids, o);
    std::vector<FclTestResult> out;
    for (std::size_t f = 0; f < ids.size(); ++f)
    {
        auto& v = samples.values[f];
        FclTestResult r;
        r.model_id = model.id;
        r.functional = ids[f];
        r.law = functional_law(ids[f]);
        r.n = n;
        r.npaths = npaths;
        r.eta = samples.eta;
        r.tol = o.tol;
        r.exploratory = samples.exploratory;
        r.condition_state = o.condition_state;
        auto const ms = mean_se(v);
        r.mean = ms.mean;
        double q = 0;
        for (double x : v)
            q += (x - ms.mean) * (x - ms.mean);
        r.variance = v.size() > 1 ? q / static_cast<double>(v.size() - 1) : 0.0;
        r.ks = ks_distance(v, functional_cdf(ids[f]));
        for (double level : {0.1, 0.25, 0.5, 0.75, 0.9})
        {
            auto const idx = static_cast<std::size_t>(
                std::floor(level * static_cast<double>(v.size() - 1)));
            r.quantiles.push_back(v[idx]);
        }
        r.passed = r.ks < o.tol;
        out.push_back(std::move(r));
    }
    return out;
}

FclTestResult fclt_test(ProcessModel const& model,
                        std::size_t n,
                        std::size_t npaths,
                        std::string const& functional_id,
                        FclOptions const& o)
{
    return fclt_suite(model, n, npaths, {functional_id}, o).front();
}

std::vector<std::array<double, 3>> fclt_cdf_table(ProcessModel const& model,
                                                  std::size_t n,
                                                  std::size_t npaths,
                                                  std::string const& functional_id,
                                                  FclOptions const& o,
                                                  std::size_t points)
{
    if (points < 2)
        throw InputError("CDF table needs at least two points");
    auto samples = functional_samples(model, n, npaths, {functional_id}, o);
    auto& v = samples.values.front();
    std::sort(v.begin(), v.end());
    auto const cdf = functional_cdf(functional_id);
    double const lo = v.front();
    double const hi = v.back();
    std::vector<std::array<double, 3>> rows;
    for (std::size_t i = 0; i < points; ++i)
    {
        double const x = lo + (hi - lo) * static_cast<double>(i)
                                  / static_cast<double>(points - 1);
        auto const cnt = std::upper_bound(v.begin(), v.end(), x) - v.begin();
        rows.push_back({x, static_cast<double>(cnt) / static_cast<double>(v.size()), cdf(x)});
    }
    return rows;
}

nlohmann::json FclTestResult::to_json() const
{
    nlohmann::json j = {{"model_id", model_id},
                        {"functional", functional},
                        {"law", law},
                        {"n", n},
                        {"npaths", npaths},
                        {"eta", eta},
                        {"mean", mean},
                        {"variance", variance},
                        {"quantiles", quantiles},
                        {"ks", ks},
                        {"tol", tol},
                        {"passed", passed},
                        {"exploratory", exploratory}};
    j["condition_state"] = condition_state ? nlohmann::json(*condition_state)
                                           : nlohmann::json(nullptr);
    return j;
}

//---------------------------------------------------------------------------//
ResidualDecayResult residual_decay_test(ProcessModel const& model,
                                        std::vector<std::size_t> const& n_grid,
                                        std::size_t npaths,
                                        ResidualOptions const& o)
{
    if (o.p != 1 && o.p != 2)
        throw InputError("residual decay supports p = 1 or p = 2");
    if (o.m_rule != "diagonal" && o.m_rule != "fixed")
        throw InputError("m_rule must be 'diagonal' or 'fixed'");
    if (o.m_rule == "fixed" && o.m == 0)
        throw InputError("fixed m_rule needs m >= 1");
    if (n_grid.empty() || npaths < 2)
        throw InputError("residual decay needs a grid and npaths >= 2");
    if (!std::is_sorted(n_grid.begin(), n_grid.end()) || n_grid.front() == 0)
        throw InputError("residual grid must be increasing and positive");
    std::size_t const nmax = n_grid.back();
    if (static_cast<double>(nmax) * static_cast<double>(npaths) > o.budget)
        throw BudgetError("residual decay: n_max*npaths exceeds the budget guard");
    require_exact_oracle(model);

    PathGenerator gen(model);
    Oracle const& orc = gen.oracle();
    bool const diag = o.m_rule == "diagonal";
    std::size_t const g = n_grid.size();
    std::vector<Summand> th, ys;
    for (std::size_t gi = 0; gi < (diag ? g : 1); ++gi)
    {
        std::size_t const m = diag ? n_grid[gi] : o.m;
        th.push_back(theta_repr(orc, m));
        ys.push_back(y_repr(orc, m));
    }

    std::vector<double> stat(npaths * g);
    for_each_path(npaths, o.workers, [&](std::size_t p, PathBuffer& buf) {
        Sampler rng(o.seed, stream::stationary, p);
        gen.generate(rng, nmax, buf);
        LatentView const v = buf.view();
        // Walks j = 0..len with R_j = theta_0 - theta_j + sum_{i<j} Y_i.
        auto walk = [&](Summand const& t, Summand const& y, std::size_t len, auto&& record) {
            double const t0 = orc.eval(t, v, 0);
            double rbar = 0, mx = 0;
            for (std::size_t j = 0; j <= len; ++j)
            {
                auto const tj = static_cast<std::ptrdiff_t>(j);
                double const r = t0 - orc.eval(t, v, tj) + rbar;
                mx = std::max(mx, std::abs(r));
                record(j, r, mx);
                if (j < len)
                    rbar += orc.eval(y, v, tj);
            }
        };
        if (diag)
        {
            for (std::size_t gi = 0; gi < g; ++gi)
            {
                std::size_t const n = n_grid[gi];
                walk(th[gi], ys[gi], n, [&](std::size_t j, double r, double mx) {
                    if (j == n)
                        stat[p * g + gi] = o.max_statistic ? mx : std::abs(r);
                });
            }
        }
        else
        {
            std::size_t gi = 0;
            walk(th[0], ys[0], nmax, [&](std::size_t j, double r, double mx) {
                while (gi < g && n_grid[gi] == j)
                    stat[p * g + gi++] = o.max_statistic ? mx : std::abs(r);
            });
        }
    });

    ResidualDecayResult res;
    res.model_id = model.id;
    res.p = o.p;
    res.m_rule = o.m_rule;
    res.m = diag ? 0 : o.m;
    res.max_statistic = o.max_statistic;
    res.n_grid = n_grid;
    res.tol = o.tol;
    std::vector<double> a(npaths), b(npaths);
    for (std::size_t gi = 0; gi < g; ++gi)
    {
        double const root = std::sqrt(static_cast<double>(n_grid[gi]));
        for (std::size_t p = 0; p < npaths; ++p)
        {
            a[p] = stat[p * g + gi] / root;
            b[p] = a[p] * a[p];
        }
        auto const m1 = mean_se(a);
        auto const m2 = mean_se(b);
        double const l2 = std::sqrt(m2.mean);
        res.l1.push_back(m1.mean);
        res.l1_se.push_back(m1.se);
        res.l2.push_back(l2);
        res.l2_se.push_back(l2 > 0 ? m2.se / (2 * l2) : 0.0);
    }
    auto const& vals = res.values();
    auto const& se = o.p == 1 ? res.l1_se : res.l2_se;
    res.decreasing = true;
    for (std::size_t gi = 0; gi < g; ++gi)
    {
        res.below_tol.push_back(vals[gi] < o.tol);
        if (gi > 0
            && vals[gi] > vals[gi - 1] + 2 * std::hypot(se[gi], se[gi - 1]) + 1e-12)
            res.decreasing = false;
    }
    res.passed = res.decreasing && res.below_tol.back();
    res.jensen_ok = true;
    for (std::size_t gi = 0; gi < g; ++gi)
        res.jensen_ok = res.jensen_ok && res.l1[gi] <= res.l2[gi] * (1 + 1e-12);
    return res;
}

nlohmann::json ResidualDecayResult::to_json() const
{
    return {{"model_id", model_id},
            {"p", p},
            {"m_rule", m_rule},
            {"m", m},
            {"max_statistic", max_statistic},
            {"n_grid", n_grid},
            {"l1", l1},
            {"l1_se", l1_se},
            {"l2", l2},
            {"l2_se", l2_se},
            {"below_tol", below_tol},
            {"tol", tol},
            {"decreasing", decreasing},
            {"passed", passed},
            {"jensen_ok", jensen_ok}};
}

//---------------------------------------------------------------------------//
}  // namespace mgale
