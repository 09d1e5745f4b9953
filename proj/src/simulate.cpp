//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file simulate.cpp
//---------------------------------------------------------------------------//
#include "mgale/simulate.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mgale/error.hpp"
#include "mgale/parallel.hpp"

namespace mgale
{
namespace
{
constexpr char binary_magic[] = "MGENS1";

}  // namespace

//---------------------------------------------------------------------------//
std::ptrdiff_t PathBuffer::latent_end() const
{
    if (!states.empty())
        return static_cast<std::ptrdiff_t>(states.size()) - 1;
    if (channels == 0)
        return -1;
    return static_cast<std::ptrdiff_t>(innov.size() / channels)
           - static_cast<std::ptrdiff_t>(history) - 1;
}

PathGenerator::PathGenerator(ProcessModel const& model) : oracle_(model)
{
    if (oracle_.markov())
    {
        auto const& pi = oracle_.chain().stationary;
        double acc = 0;
        for (Eigen::Index s = 0; s < pi.size(); ++s)
        {
            acc += pi[s];
            pi_cdf_.push_back(acc);
        }
        pi_cdf_.back() = 1.0;
    }
}

PathBuffer PathGenerator::state_prefix(int s) const
{
    auto const& chain = oracle_.chain();
    if (s < 0 || s >= chain.num_states())
        throw InputError("conditioning state out of range");
    PathBuffer p;
    p.states = {s};
    return p;
}

void PathGenerator::generate(Sampler& rng,
                             std::size_t n,
                             PathBuffer& out,
                             PathBuffer const* prefix) const
{
    out.x.resize(n);
    if (oracle_.markov())
    {
        auto const& chain = oracle_.chain();
        out.history = 0;
        out.channels = 0;
        out.innov.clear();
        out.states.resize(n + 1);
        std::size_t start = 0;
        if (prefix)
        {
            if (prefix->states.empty() || prefix->states.size() > n + 1)
                throw InputError("prefix does not fit the requested path");
            std::copy(prefix->states.begin(),
                      prefix->states.end(),
                      out.states.begin());
            start = prefix->states.size();
        }
        else
        {
            out.states[0] = rng.categorical(pi_cdf_);
            start = 1;
        }
        int s = out.states[start - 1];
        for (std::size_t t = start; t <= n; ++t)
        {
            s = rng.categorical(chain.row_cdf[s]);
            out.states[t] = s;
        }
        auto const& f = chain.observable;
        for (std::size_t t = 0; t < n; ++t)
            out.x[t] = f[out.states[t]];
        return;
    }

    std::size_t const c = oracle_.channels();
    std::size_t const h = oracle_.history();
    auto const& laws = oracle_.channel_laws();
    out.history = h;
    out.channels = c;
    out.states.clear();
    std::size_t const total = (n + 1 + h) * c;
    out.innov.resize(total);
    std::size_t start = 0;
    if (prefix)
    {
        if (prefix->channels != c || prefix->history != h
            || prefix->innov.size() > total)
            throw InputError("prefix does not fit the requested path");
        std::copy(prefix->innov.begin(), prefix->innov.end(), out.innov.begin());
        start = prefix->innov.size();
    }
    for (std::size_t i = start; i < total; ++i)
        out.innov[i] = laws[i % c].sample(rng);

    LatentView const v = out.view();
    Summand const x = oracle_.observable();
    for (std::size_t t = 0; t < n; ++t)
        out.x[t] = oracle_.eval(x, v, static_cast<std::ptrdiff_t>(t));
}

//---------------------------------------------------------------------------//
LatentView PathEnsemble::latent(std::size_t p) const
{
    if (!has_latent())
        throw InputError("ensemble carries no latent data");
    LatentView v;
    v.history = history;
    v.channels = channels;
    if (!states.empty())
        v.states = states.data() + p * (n + 1);
    else
        v.innov = innov.data() + p * (n + 1 + history) * channels;
    return v;
}

PathEnsemble sample_paths(ProcessModel const& model,
                          std::size_t n,
                          std::size_t npaths,
                          std::uint64_t seed,
                          unsigned workers,
                          double budget)
{
    if (n == 0 || npaths == 0)
        throw InputError("sample_paths needs n >= 1 and npaths >= 1");
    if (static_cast<double>(n) * static_cast<double>(npaths) > budget)
    {
        std::ostringstream os;
        os << "value budget exceeded: n*npaths = "
           << static_cast<double>(n) * static_cast<double>(npaths)
           << " > budget " << budget;
        throw BudgetError(os.str());
    }
    PathGenerator gen(model);
    PathEnsemble ens;
    ens.model_id = model.id;
    ens.n = n;
    ens.npaths = npaths;
    ens.seed = seed;
    ens.data.resize(n * npaths);
    bool const markov = gen.oracle().markov();
    ens.history = gen.oracle().history();
    ens.channels = gen.oracle().channels();
    std::size_t const latent_len
        = markov ? n + 1 : (n + 1 + ens.history) * ens.channels;
    if (markov)
        ens.states.resize(latent_len * npaths);
    else
        ens.innov.resize(latent_len * npaths);

    parallel_for(npaths, workers, [&](std::size_t p) {
        Sampler rng(seed, ens.stream, p);
        PathBuffer buf;
        gen.generate(rng, n, buf);
        std::copy(buf.x.begin(), buf.x.end(), ens.data.begin() + p * n);
        if (markov)
            std::copy(buf.states.begin(),
                      buf.states.end(),
                      ens.states.begin() + p * latent_len);
        else
            std::copy(buf.innov.begin(),
                      buf.innov.end(),
                      ens.innov.begin() + p * latent_len);
    });
    return ens;
}

//---------------------------------------------------------------------------//
std::vector<double> partial_sums(std::span<double const> x)
{
    std::vector<double> s(x.size());
    double acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        acc += x[i];
        s[i] = acc;
    }
    return s;
}

std::vector<double> partial_sums(PathEnsemble const& ens)
{
    std::vector<double> out(ens.data.size());
    for (std::size_t p = 0; p < ens.npaths; ++p)
    {
        auto s = partial_sums(ens.path(p));
        std::copy(s.begin(), s.end(), out.begin() + p * ens.n);
    }
    return out;
}

InterpolatedPath interpolate(std::span<double const> sums,
                             std::size_t n,
                             std::span<double const> t_grid)
{
    if (sums.size() < n)
        throw InputError("interpolate needs n partial sums");
    auto s_at = [&](std::size_t k) { return k == 0 ? 0.0 : sums[k - 1]; };
    InterpolatedPath out;
    out.t.assign(t_grid.begin(), t_grid.end());
    out.u.reserve(t_grid.size());
    for (double t : t_grid)
    {
        if (!(t >= 0 && t <= 1))
            throw InputError("interpolation time outside [0, 1]");
        double const nt = static_cast<double>(n) * t;
        auto k = static_cast<std::size_t>(std::floor(nt));
        if (k >= n)
        {
            out.u.push_back(s_at(n));
            continue;
        }
        double const frac = nt - static_cast<double>(k);
        double const xk = s_at(k + 1) - s_at(k);
        out.u.push_back(s_at(k) + frac * xk);
    }
    return out;
}

//---------------------------------------------------------------------------//
void write_ensemble_csv(PathEnsemble const& ens, std::string const& path)
{
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << "# model_id=" << ens.model_id << ",n=" << ens.n
        << ",npaths=" << ens.npaths << ",seed=" << ens.seed << '\n';
    out << std::setprecision(17);
    for (std::size_t p = 0; p < ens.npaths; ++p)
    {
        auto row = ens.path(p);
        for (std::size_t i = 0; i < ens.n; ++i)
            out << (i ? "," : "") << row[i];
        out << '\n';
    }
    if (!out)
        throw InputError("write failed for '" + path + "'");
}

void write_ensemble_binary(PathEnsemble const& ens, std::string const& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    auto put64 = [&](std::uint64_t v) {
        out.write(reinterpret_cast<char const*>(&v), sizeof v);
    };
    out.write(binary_magic, 6);
    put64(ens.n);
    put64(ens.npaths);
    put64(ens.seed);
    put64(ens.model_id.size());
    out.write(ens.model_id.data(),
              static_cast<std::streamsize>(ens.model_id.size()));
    out.write(reinterpret_cast<char const*>(ens.data.data()),
              static_cast<std::streamsize>(ens.data.size() * sizeof(double)));
    if (!out)
        throw InputError("write failed for '" + path + "'");
}

PathEnsemble read_ensemble(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    char head[6] = {};
    in.read(head, 6);
    PathEnsemble ens;
    if (in && std::memcmp(head, binary_magic, 6) == 0)
    {
        auto get64 = [&] {
            std::uint64_t v = 0;
            in.read(reinterpret_cast<char*>(&v), sizeof v);
            return v;
        };
        ens.n = get64();
        ens.npaths = get64();
        ens.seed = get64();
        auto const idlen = get64();
        if (!in || idlen > 4096)
            throw InputError("corrupt ensemble header in '" + path + "'");
        ens.model_id.resize(idlen);
        in.read(ens.model_id.data(), static_cast<std::streamsize>(idlen));
        ens.data.resize(ens.n * ens.npaths);
        in.read(reinterpret_cast<char*>(ens.data.data()),
                static_cast<std::streamsize>(ens.data.size() * sizeof(double)));
        if (!in)
            throw InputError("truncated ensemble data in '" + path + "'");
        return ens;
    }

    in.clear();
    in.seekg(0);
    std::string line;
    std::getline(in, line);
    if (line.rfind("# ", 0) != 0)
        throw InputError("'" + path + "' is not an ensemble file");
    std::istringstream header(line.substr(2));
    std::string field;
    while (std::getline(header, field, ','))
    {
        auto eq = field.find('=');
        if (eq == std::string::npos)
            continue;
        auto key = field.substr(0, eq);
        auto val = field.substr(eq + 1);
        if (key == "model_id")
            ens.model_id = val;
        else if (key == "n")
            ens.n = std::stoull(val);
        else if (key == "npaths")
            ens.npaths = std::stoull(val);
        else if (key == "seed")
            ens.seed = std::stoull(val);
    }
    ens.data.reserve(ens.n * ens.npaths);
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string cell;
        std::size_t count = 0;
        while (std::getline(row, cell, ','))
        {
            ens.data.push_back(std::stod(cell));
            ++count;
        }
        if (count != ens.n)
            throw InputError("ragged ensemble row in '" + path + "'");
    }
    if (ens.data.size() != ens.n * ens.npaths)
        throw InputError("ensemble size does not match header in '" + path
                         + "'");
    return ens;
}

//---------------------------------------------------------------------------//
}  // namespace mgale
