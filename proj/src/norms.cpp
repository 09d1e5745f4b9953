//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file norms.cpp
//---------------------------------------------------------------------------//
#include "mgale/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mgale/error.hpp"
#include "mgale/martingale.hpp"
#include "mgale/parallel.hpp"
#include "mgale/simulate.hpp"

namespace mgale
{
namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();

bool is_zero(Summand const& z)
{
    if (z.state.size())
        return (z.state.array() == 0).all();
    return std::all_of(
        z.weights.begin(), z.weights.end(), [](double w) { return w == 0; });
}

bool gaussian_summand(Oracle const& o, Summand const& z)
{
    if (o.markov())
        return false;
    auto const& laws = o.channel_laws();
    for (std::size_t i = 0; i < z.weights.size(); ++i)
    {
        if (z.weights[i] != 0 && !laws[i % z.channels].gaussian())
            return false;
    }
    return true;
}

void check_grid(std::vector<std::size_t> const& grid)
{
    if (grid.empty())
        throw InputError("n grid must not be empty");
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (grid[i] == 0 || (i && grid[i] <= grid[i - 1]))
            throw InputError("n grid must be positive and increasing");
    }
}

void check_p(double p)
{
    if (p != 1 && p != 2)
        throw InputError("p must be 1 or 2");
}

}  // namespace

//---------------------------------------------------------------------------//
NormValue lp_norm(std::span<double const> samples, double p)
{
    check_p(p);
    if (samples.empty())
        throw InputError("lp_norm needs at least one sample");
    auto const n = static_cast<double>(samples.size());
    double mean = 0, m2 = 0, top = 0, total = 0;
    std::size_t i = 0;
    for (double x : samples)
    {
        double const v = p == 1 ? std::abs(x) : x * x;
        double const d = v - mean;
        ++i;
        mean += d / static_cast<double>(i);
        m2 += d * (v - mean);
        top = std::max(top, v);
        total += v;
    }
    NormValue out;
    double const sd_mean
        = samples.size() > 1 ? std::sqrt(m2 / (n - 1) / n) : 0.0;
    if (p == 1)
    {
        out.value = mean;
        out.se = sd_mean;
    }
    else
    {
        out.value = std::sqrt(mean);
        out.se = out.value > 0 ? sd_mean / (2 * out.value) : 0.0;
    }
    out.se_reliable = !(samples.size() >= 100 && total > 0
                        && top > 0.05 * total);
    return out;
}

//---------------------------------------------------------------------------//
Functional Functional::parse(std::string const& text)
{
    Functional f;
    std::string body = text;
    if (auto star = body.find('*'); star != std::string::npos)
    {
        try
        {
            std::size_t used = 0;
            f.scale = std::stod(body.substr(0, star), &used);
            if (used != star)
                throw InputError("");
        }
        catch (std::exception const&)
        {
            throw InputError("bad scale in functional '" + text + "'");
        }
        body = body.substr(star + 1);
    }
    auto colon = body.find(':');
    f.name = body.substr(0, colon);
    if (f.name == "X")
    {
        if (colon != std::string::npos)
            throw InputError("functional 'X' takes no parameter");
        return f;
    }
    if (f.name != "Y" && f.name != "E")
        throw InputError("unknown functional '" + text + "'");
    if (colon == std::string::npos)
        throw InputError("functional '" + f.name + "' needs ':<int>'");
    try
    {
        std::size_t used = 0;
        auto const param = body.substr(colon + 1);
        long long v = std::stoll(param, &used);
        if (used != param.size() || v < 0)
            throw InputError("");
        f.param = static_cast<std::size_t>(v);
    }
    catch (std::exception const&)
    {
        throw InputError("bad parameter in functional '" + text + "'");
    }
    if (f.name == "Y" && f.param == 0)
        throw InputError("functional 'Y' needs m >= 1");
    return f;
}

std::string Functional::str() const
{
    std::ostringstream os;
    if (scale != 1.0)
        os << scale << '*';
    os << name;
    if (name != "X")
        os << ':' << param;
    return os.str();
}

Summand Functional::repr(Oracle const& o) const
{
    Summand base;
    if (name == "X")
        base = o.observable();
    else if (name == "Y")
        base = y_repr(o, param);
    else
        base = o.shift(o.observable(), param);
    if (scale == 1.0)
        return base;
    Summand out = o.zero();
    o.axpy(scale, base, out);
    return out;
}

//---------------------------------------------------------------------------//
std::vector<std::size_t> default_norm_grid()
{
    std::vector<std::size_t> g;
    for (int k = 6; k <= 16; ++k)
        g.push_back(std::size_t{1} << k);
    return g;
}

void finalize_estimate(NormEstimate& est)
{
    auto const len = est.values.size();
    if (len == 0)
        return;
    std::size_t const from = len > limsup_window ? len - limsup_window : 0;
    est.extrapolated
        = *std::max_element(est.values.begin() + static_cast<long>(from),
                            est.values.end());
    bool any_inf = std::any_of(est.values.begin(), est.values.end(), [](double v) {
        return std::isinf(v);
    });
    est.divergence_ratio = 0;
    std::size_t const last = len - 1;
    std::size_t const target = est.n_grid[last] / 100;
    std::optional<std::size_t> ref;
    for (std::size_t i = 0; i < last; ++i)
    {
        if (est.n_grid[i] <= target)
            ref = i;
    }
    if (ref)
    {
        double const a = est.values[*ref];
        double const b = est.values[last];
        est.divergence_ratio = a > 0 ? b / a : (b > 0 ? inf : 0.0);
    }
    est.divergence_flag = any_inf || est.divergence_ratio >= divergence_threshold;
}

nlohmann::json NormEstimate::to_json() const
{
    auto num = [](double v) -> nlohmann::json {
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        if (std::isnan(v))
            return "nan";
        return v;
    };
    nlohmann::json vals = nlohmann::json::array(), ses = nlohmann::json::array();
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        vals.push_back(num(values[i]));
        ses.push_back(num(se[i]));
    }
    return {{"kind", kind},
            {"p", p},
            {"functional", functional},
            {"method", method},
            {"npaths", npaths},
            {"n_grid", n_grid},
            {"values", vals},
            {"se", ses},
            {"extrapolated", num(extrapolated)},
            {"divergence_ratio", num(divergence_ratio)},
            {"divergence_flag", divergence_flag},
            {"se_reliable", se_reliable}};
}

//---------------------------------------------------------------------------//
std::vector<double> exact_plus2(Oracle const& o,
                                Summand const& z,
                                std::vector<std::size_t> const& n_grid)
{
    check_grid(n_grid);
    std::vector<double> out(n_grid.size());
    double const g0 = o.autocov(z, 0);
    if (std::isinf(g0))
    {
        std::fill(out.begin(), out.end(), inf);
        return out;
    }
    std::size_t const nmax = n_grid.back();
    auto const gam = o.autocov_seq(z, nmax - 1);
    // var(S_n) = n g0 + 2 sum_{k=1}^{n-1} (n - k) g_k
    double a = 0, b = 0;
    std::size_t gi = 0;
    for (std::size_t n = 1; n <= nmax && gi < n_grid.size(); ++n)
    {
        if (n >= 2)
        {
            a += gam[n - 1];
            b += static_cast<double>(n - 1) * gam[n - 1];
        }
        if (n == n_grid[gi])
        {
            auto const dn = static_cast<double>(n);
            double const var = dn * g0 + 2 * (dn * a - b);
            out[gi] = std::sqrt(std::max(var, 0.0) / dn);
            ++gi;
        }
    }
    return out;
}

std::vector<NormPair> batch_norms(Oracle const& o,
                                  ProcessModel const& model,
                                  std::vector<Summand> const& zs,
                                  std::vector<std::string> const& labels,
                                  double p,
                                  std::vector<std::size_t> const& n_grid,
                                  NormOptions const& opts,
                                  bool want_mplus)
{
    check_p(p);
    check_grid(n_grid);
    if (opts.npaths < 2)
        throw InputError("norm estimation needs npaths >= 2");
    if (labels.size() != zs.size())
        throw InputError("one label per summand is required");
    std::size_t const g = n_grid.size();
    std::size_t const nz = zs.size();
    std::vector<NormPair> out(nz);
    std::vector<char> plus_done(nz, 0), need_mc(nz, 0);
    for (std::size_t z = 0; z < nz; ++z)
    {
        for (auto* e : {&out[z].plus, &out[z].mplus})
        {
            e->p = p;
            e->functional = labels[z];
            e->n_grid = n_grid;
            e->values.assign(g, 0.0);
            e->se.assign(g, 0.0);
            e->method = "exact";
        }
        out[z].plus.kind = "plus";
        out[z].mplus.kind = "mplus";
        bool const zero = is_zero(zs[z]);
        plus_done[z] = zero;
        if (!zero && opts.allow_exact && (p == 2 || gaussian_summand(o, zs[z])))
        {
            out[z].plus.values = exact_plus2(o, zs[z], n_grid);
            if (p == 1)
            {
                for (auto& v : out[z].plus.values)
                    v *= std::sqrt(2 / std::numbers::pi);
            }
            plus_done[z] = 1;
        }
        need_mc[z] = !zero && (!plus_done[z] || want_mplus);
    }

    std::vector<std::size_t> active;
    for (std::size_t z = 0; z < nz; ++z)
    {
        if (need_mc[z])
            active.push_back(z);
    }
    if (!active.empty())
    {
        PathGenerator const gen(model);
        std::size_t const np = opts.npaths;
        std::size_t const na = active.size();
        std::size_t const nmax = n_grid.back();
        // Layout: [path][summand][grid]
        std::vector<double> end(np * na * g), mx(np * na * g);
        parallel_for(np, opts.workers, [&](std::size_t path) {
            Sampler rng(opts.seed, stream::stationary, path);
            PathBuffer buf;
            gen.generate(rng, nmax, buf);
            auto const v = buf.view();
            std::vector<double> s(na, 0.0), m(na, 0.0);
            std::size_t gi = 0;
            for (std::size_t j = 0; j < nmax; ++j)
            {
                auto const t = static_cast<std::ptrdiff_t>(j);
                for (std::size_t a = 0; a < na; ++a)
                {
                    s[a] += o.eval(zs[active[a]], v, t);
                    m[a] = std::max(m[a], std::abs(s[a]));
                }
                if (j + 1 == n_grid[gi])
                {
                    for (std::size_t a = 0; a < na; ++a)
                    {
                        end[(path * na + a) * g + gi] = s[a];
                        mx[(path * na + a) * g + gi] = m[a];
                    }
                    ++gi;
                }
            }
        });
        std::vector<double> col(np);
        auto fill = [&](std::vector<double> const& src,
                        std::size_t a,
                        NormEstimate& e) {
            e.method = "monte_carlo";
            e.npaths = np;
            for (std::size_t gi = 0; gi < g; ++gi)
            {
                for (std::size_t path = 0; path < np; ++path)
                    col[path] = src[(path * na + a) * g + gi];
                auto const nv = lp_norm(col, p);
                double const root = std::sqrt(static_cast<double>(n_grid[gi]));
                e.values[gi] = nv.value / root;
                e.se[gi] = nv.se / root;
                e.se_reliable = e.se_reliable && nv.se_reliable;
            }
        };
        for (std::size_t a = 0; a < na; ++a)
        {
            auto const z = active[a];
            if (!plus_done[z])
                fill(end, a, out[z].plus);
            if (want_mplus)
                fill(mx, a, out[z].mplus);
        }
    }
    for (std::size_t z = 0; z < nz; ++z)
    {
        if (o.heavy(zs[z]))
        {
            out[z].plus.se_reliable = out[z].plus.method == "exact";
            out[z].mplus.se_reliable = false;
        }
        finalize_estimate(out[z].plus);
        finalize_estimate(out[z].mplus);
    }
    return out;
}

NormPair summand_norms(Oracle const& o,
                       ProcessModel const& model,
                       Summand const& z,
                       std::string const& label,
                       double p,
                       std::vector<std::size_t> const& n_grid,
                       NormOptions const& opts,
                       bool want_mplus)
{
    return batch_norms(o, model, {z}, {label}, p, n_grid, opts, want_mplus)
        .front();
}

NormEstimate plus_norm(ProcessModel const& model,
                       std::string const& functional,
                       double p,
                       std::vector<std::size_t> const& n_grid,
                       NormOptions const& opts)
{
    require_exact_oracle(model);
    Oracle const o(model);
    auto const f = Functional::parse(functional);
    return summand_norms(o, model, f.repr(o), f.str(), p, n_grid, opts, false)
        .plus;
}

NormEstimate mplus_norm(ProcessModel const& model,
                        std::string const& functional,
                        double p,
                        std::vector<std::size_t> const& n_grid,
                        NormOptions const& opts)
{
    require_exact_oracle(model);
    Oracle const o(model);
    auto const f = Functional::parse(functional);
    return summand_norms(o, model, f.repr(o), f.str(), p, n_grid, opts, true)
        .mplus;
}

//---------------------------------------------------------------------------//
}  // namespace mgale
