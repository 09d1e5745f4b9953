//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file runner.cpp
//---------------------------------------------------------------------------//
#include "mgale/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "mgale/brownian.hpp"
#include "mgale/catalogue.hpp"
#include "mgale/error.hpp"
#include "mgale/martingale.hpp"
#include "mgale/norms.hpp"
#include "mgale/serialize.hpp"
#include "mgale/simulate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace mgale
{
namespace
{
//---------------------------------------------------------------------------//
// Typed readers that report the offending key.
json const* find(json const& obj, char const* key)
{
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

json const& section(json const& doc, char const* key)
{
    static json const empty = json::object();
    auto const* s = find(doc, key);
    if (!s)
        return empty;
    if (!s->is_object())
        throw ConfigError(key, "must be an object");
    return *s;
}

std::string join(std::string const& a, char const* b)
{
    return a.empty() ? std::string(b) : a + "." + b;
}

bool is_nonneg_int(json const& v)
{
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::uint64_t get_uint(json const& obj, std::string const& path, char const* key,
                       std::uint64_t def, std::uint64_t min = 0)
{
    auto const* v = find(obj, key);
    if (!v)
        return def;
    if (!is_nonneg_int(*v))
        throw ConfigError(join(path, key), "must be a nonnegative integer");
    auto const u = v->get<std::uint64_t>();
    if (u < min)
        throw ConfigError(join(path, key), "must be >= " + std::to_string(min));
    return u;
}

double get_positive(json const& obj, std::string const& path, char const* key, double def)
{
    auto const* v = find(obj, key);
    if (!v)
        return def;
    if (!v->is_number() || !(v->get<double>() > 0) || !std::isfinite(v->get<double>()))
        throw ConfigError(join(path, key), "must be a positive number");
    return v->get<double>();
}

bool get_bool(json const& obj, std::string const& path, char const* key, bool def)
{
    auto const* v = find(obj, key);
    if (!v)
        return def;
    if (!v->is_boolean())
        throw ConfigError(join(path, key), "must be true or false");
    return v->get<bool>();
}

std::string get_string(json const& obj, std::string const& path, char const* key,
                       std::string def, std::vector<std::string> const& allowed = {})
{
    auto const* v = find(obj, key);
    if (!v)
        return def;
    if (!v->is_string())
        throw ConfigError(join(path, key), "must be a string");
    auto s = v->get<std::string>();
    if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), s) == allowed.end())
    {
        std::string opts;
        for (auto const& a : allowed)
            opts += (opts.empty() ? "" : "|") + a;
        throw ConfigError(join(path, key), "must be one of " + opts);
    }
    return s;
}

std::vector<std::size_t> get_grid(json const& obj, std::string const& path, char const* key,
                                  std::vector<std::size_t> def)
{
    auto const* v = find(obj, key);
    if (!v)
        return def;
    if (!v->is_array())
        throw ConfigError(join(path, key), "must be an array of positive integers");
    if (v->empty())
        throw ConfigError(join(path, key), "grid must not be empty");
    std::vector<std::size_t> g;
    for (auto const& e : *v)
    {
        if (!is_nonneg_int(e) || e.get<std::uint64_t>() == 0)
            throw ConfigError(join(path, key), "entries must be positive integers");
        g.push_back(e.get<std::size_t>());
    }
    if (!std::is_sorted(g.begin(), g.end())
        || std::adjacent_find(g.begin(), g.end()) != g.end())
        throw ConfigError(join(path, key), "grid must be strictly increasing");
    return g;
}

std::vector<std::string> get_strings(json const& obj, std::string const& path, char const* key,
                                     std::vector<std::string> def)
{
    auto const* v = find(obj, key);
    if (!v)
        return def;
    if (!v->is_array() || v->empty())
        throw ConfigError(join(path, key), "must be a nonempty array of strings");
    std::vector<std::string> out;
    for (auto const& e : *v)
    {
        if (!e.is_string())
            throw ConfigError(join(path, key), "entries must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

void check_section_keys(json const& doc)
{
    static std::map<std::string, std::set<std::string>> const allowed = {
        {"grids", {"n", "m", "paths"}},
        {"tolerances", {"tol", "cauchy_tol"}},
        {"output", {"dir", "format"}},
        {"decompose", {"n", "residual"}},
        {"decompose.residual", {"p", "m_rule", "m", "max", "tol", "n_grid", "enforce"}},
        {"norms", {"functionals", "p", "mplus"}},
        {"criteria", {"ids", "n_grid", "mc_n_grid", "m_grid", "npaths", "horizon"}},
        {"clt", {"n", "k", "outer", "inner", "family", "tol", "eta", "eta_grid", "eta_paths"}},
        {"fclt", {"n", "paths", "functionals", "tol", "condition_state", "cdf_points"}},
    };
    for (auto const& [path, keys] : allowed)
    {
        json const* obj = &doc;
        std::string walked;
        for (std::size_t start = 0; obj && start <= path.size();)
        {
            auto const dot = std::min(path.find('.', start), path.size());
            auto const part = path.substr(start, dot - start);
            walked = walked.empty() ? part : walked + "." + part;
            auto it = obj->find(part);
            obj = it == obj->end() ? nullptr : &*it;
            if (obj && !obj->is_object())
                throw ConfigError(walked, "must be an object");
            start = dot + 1;
        }
        if (!obj)
            continue;
        for (auto const& [k, v] : obj->items())
        {
            if (!keys.count(k))
                throw ConfigError(path + "." + k, "unknown key");
        }
    }
}

std::vector<std::size_t> pow2_grid(int lo, int hi)
{
    std::vector<std::size_t> g;
    for (int k = lo; k <= hi; ++k)
        g.push_back(std::size_t{1} << k);
    return g;
}

json grid_json(std::vector<std::size_t> const& g)
{
    return json(g);
}

//---------------------------------------------------------------------------//
class OutputWriter
{
  public:
    OutputWriter(std::string dir, std::string format) : dir_(std::move(dir)), format_(std::move(format))
    {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec)
            throw InputError("cannot create output directory '" + dir_ + "': " + ec.message());
    }

    bool want_json() const { return format_ != "csv"; }
    bool want_csv() const { return format_ != "json"; }

    void json_file(std::string const& task, std::string const& name, json const& j)
    {
        if (want_json())
            put(task, name, dump_json(j));
    }
    void csv_file(std::string const& task, std::string const& name, CsvTable const& t)
    {
        if (want_csv())
            put(task, name, t.str());
    }
    void always(std::string const& task, std::string const& name, std::string const& text)
    {
        put(task, name, text);
    }

    RunManifest& manifest() { return manifest_; }
    std::string const& dir() const { return dir_; }

  private:
    void put(std::string const& task, std::string const& name, std::string const& text)
    {
        write_text((fs::path(dir_) / name).string(), text);
        manifest_.outputs[task].push_back(name);
        manifest_.file_hashes[name] = sha256_hex(text);
    }

    std::string dir_;
    std::string format_;
    RunManifest manifest_;
};

void check(RunManifest& m, std::string task, std::string name, bool ok, std::string detail)
{
    m.checks.push_back({std::move(task), std::move(name), ok, std::move(detail)});
}

std::string fmt(double v)
{
    return format_double(v);
}

//---------------------------------------------------------------------------//
void run_decompose(ExperimentConfig const& cfg, OutputWriter& out)
{
    auto& man = out.manifest();
    auto const ens = sample_paths(cfg.model, cfg.decompose_n, cfg.paths, cfg.seed, cfg.workers);
    json summary = {{"model_id", cfg.model.id}, {"config_hash", cfg.hash}};
    json per_m = json::array();
    CsvTable table;
    for (auto m : cfg.m_grid)
    {
        auto const d = decompose(cfg.model, ens, m, cfg.workers);
        per_m.push_back(decomposition_summary(d));
        auto t = decomposition_table(d);
        table.header = t.header;
        table.rows.insert(table.rows.end(), t.rows.begin(), t.rows.end());
        check(man, "decompose", "identity m=" + std::to_string(m),
              d.max_identity_error <= 1e-10, "max |S-M-R|/(1+|S|) = " + fmt(d.max_identity_error));
        check(man, "decompose", "term identity m=" + std::to_string(m),
              d.max_term_error <= 1e-10, "max term error = " + fmt(d.max_term_error));
    }
    summary["decompositions"] = per_m;

    auto const res = residual_decay_test(cfg.model, cfg.residual_grid, cfg.paths, cfg.residual);
    summary["residual_decay"] = res.to_json();
    if (cfg.residual_enforce)
        check(man, "decompose", "residual decay", res.passed,
              "last value " + fmt(res.values().back()) + " vs tol " + fmt(res.tol));
    check(man, "decompose", "residual jensen", res.jensen_ok, "L1 <= L2 at every n");

    out.json_file("decompose", "decompose.json", summary);
    out.csv_file("decompose", "decompose_summary.csv", table);
    out.csv_file("decompose", "residual_decay.csv", residual_table(res));
}

void run_norms(ExperimentConfig const& cfg, OutputWriter& out)
{
    auto& man = out.manifest();
    NormOptions no;
    no.npaths = cfg.paths;
    no.seed = cfg.seed;
    no.workers = cfg.workers;
    Oracle const o(cfg.model);
    std::vector<Summand> zs;
    for (auto const& f : cfg.norm_functionals)
        zs.push_back(Functional::parse(f).repr(o));
    auto const pairs = batch_norms(o, cfg.model, zs, cfg.norm_functionals, cfg.norm_p,
                                   cfg.n_grid, no, cfg.norm_mplus);
    json arr = json::array();
    std::vector<NormEstimate> flat;
    for (std::size_t i = 0; i < pairs.size(); ++i)
    {
        auto const& pr = pairs[i];
        json item = {{"functional", cfg.norm_functionals[i]}, {"plus", pr.plus.to_json()}};
        flat.push_back(pr.plus);
        if (cfg.norm_mplus)
        {
            item["mplus"] = pr.mplus.to_json();
            flat.push_back(pr.mplus);
            bool dominated = true;
            for (std::size_t k = 0; k < pr.plus.values.size(); ++k)
                dominated = dominated
                            && pr.mplus.values[k] >= pr.plus.values[k] * (1 - 1e-12) - 1e-15;
            check(man, "norms", "mplus >= plus for " + cfg.norm_functionals[i], dominated, "");
        }
        arr.push_back(item);
    }
    out.json_file("norms", "norms.json",
                  {{"model_id", cfg.model.id}, {"config_hash", cfg.hash}, {"estimates", arr}});
    out.csv_file("norms", "norms.csv", norm_table(flat));
}

void run_criteria(ExperimentConfig const& cfg, OutputWriter& out)
{
    auto& man = out.manifest();
    auto const sweep = evaluate_criteria(cfg.model, cfg.criteria_ids, cfg.criteria);
    for (auto const& c : sweep.checks)
        check(man, "criteria", "consistency: " + c.name, c.passed, c.detail);
    json expectations = json::array();
    for (auto const& [id, want] : cfg.expect)
    {
        auto const* r = sweep.find(id);
        bool const ok = r && r->verdict == want;
        std::string const got = r ? to_string(r->verdict) : "missing";
        check(man, "criteria", "expect " + id + "=" + to_string(want), ok, "got " + got);
        expectations.push_back({{"criterion_id", id}, {"expected", to_string(want)}, {"got", got},
                                {"passed", ok}});
    }
    auto j = sweep.to_json();
    j["config_hash"] = cfg.hash;
    j["expectations"] = expectations;
    out.json_file("criteria", "criteria.json", j);
    out.csv_file("criteria", "criteria.csv", criteria_table(sweep));
}

void run_clt(ExperimentConfig const& cfg, OutputWriter& out)
{
    auto& man = out.manifest();
    auto const r = conditional_clt_test(cfg.model, cfg.clt);
    check(man, "clt", "conditional CLT statistic", r.statistic < r.tol,
          "statistic " + fmt(r.statistic) + " vs tol " + fmt(r.tol));
    check(man, "clt", "conditional KS", r.ks < r.tol, "max KS " + fmt(r.ks));
    json j = {{"config_hash", cfg.hash}, {"clt", r.to_json()}};
    CsvTable eta_csv;
    if (cfg.model.finite_variance())
    {
        auto const e = eta_estimate(cfg.model, cfg.eta_grid, cfg.eta_paths, cfg.seed, cfg.workers);
        double const gap = std::abs(e.pooled.back() - e.reference);
        double const allow = std::max(0.03 * e.reference, 3 * e.pooled_se.back());
        check(man, "clt", "eta matches ||D0||^2", gap <= allow,
              "pooled " + fmt(e.pooled.back()) + " reference " + fmt(e.reference));
        j["eta"] = e.to_json();
        eta_csv = eta_table(e);
    }
    out.json_file("clt", "clt.json", j);
    out.csv_file("clt", "clt.csv", clt_table(r));
    if (!eta_csv.header.empty())
        out.csv_file("clt", "eta.csv", eta_csv);
}

void run_fclt(ExperimentConfig const& cfg, OutputWriter& out)
{
    auto& man = out.manifest();
    auto const rs = fclt_suite(cfg.model, cfg.fclt_n, cfg.fclt_paths, cfg.fclt_functionals, cfg.fclt);
    json arr = json::array();
    for (auto const& r : rs)
    {
        check(man, "fclt", "KS " + r.functional, r.passed,
              "KS " + fmt(r.ks) + " vs tol " + fmt(r.tol));
        arr.push_back(r.to_json());
    }
    out.json_file("fclt", "fclt.json", {{"config_hash", cfg.hash}, {"results", arr}});
    out.csv_file("fclt", "fclt.csv", fclt_table(rs));
    if (out.want_csv())
    {
        for (auto const& id : cfg.fclt_functionals)
        {
            auto const rows = fclt_cdf_table(cfg.model, cfg.fclt_n, cfg.fclt_paths, id, cfg.fclt,
                                             cfg.cdf_points);
            out.csv_file("fclt", "fclt_cdf_" + id + ".csv", cdf_table(id, rows));
        }
    }
}

}  // namespace

//---------------------------------------------------------------------------//
std::vector<std::string> const& task_ids()
{
    static std::vector<std::string> const ids
        = {"decompose", "norms", "criteria", "clt", "fclt", "full-suite"};
    return ids;
}

char const* version_string()
{
    return MGALE_VERSION;
}

std::string sha256_hex(std::string const& bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1
        || EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1
        || EVP_DigestFinal_ex(ctx, md, &len) != 1)
    {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("SHA-256 digest failed");
    }
    EVP_MD_CTX_free(ctx);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

std::string sha256_file(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

//---------------------------------------------------------------------------//
ExperimentConfig parse_config(json const& input, std::string const& base_dir, RunOverrides const& ov)
{
    if (!input.is_object())
        throw ConfigError("<root>", "configuration must be a JSON object");
    static std::set<std::string> const known = {"model", "catalogue", "task", "seed", "workers",
                                                "grids", "tolerances", "output", "decompose",
                                                "norms", "criteria", "clt", "fclt", "expect",
                                                "description"};
    for (auto const& [k, v] : input.items())
    {
        if (!known.count(k))
            throw ConfigError(k, "unknown key");
    }
    json doc = input;
    // Overrides patch the document so the canonical form records them.
    if (ov.seed)
        doc["seed"] = *ov.seed;
    if (ov.paths)
    {
        doc["grids"]["paths"] = *ov.paths;
        for (char const* s : {"criteria", "fclt", "clt"})
        {
            if (doc.contains(s) && doc[s].is_object())
            {
                doc[s].erase("paths");
                doc[s].erase("npaths");
                doc[s].erase("inner");
            }
        }
    }
    if (ov.out_dir)
        doc["output"]["dir"] = *ov.out_dir;
    if (ov.format)
        doc["output"]["format"] = *ov.format;
    if (ov.workers)
        doc["workers"] = *ov.workers;
    check_section_keys(doc);

    ExperimentConfig cfg;

    // Model
    auto const* model = find(doc, "model");
    if (!model)
        throw ConfigError("model", "missing");
    std::string cat_path = get_string(doc, "", "catalogue", "");
    if (!cat_path.empty() && fs::path(cat_path).is_relative() && !base_dir.empty())
        cat_path = (fs::path(base_dir) / cat_path).string();
    std::vector<CatalogueEntry> cat;
    try
    {
        cat = load_catalogue(cat_path);
    }
    catch (std::exception const& e)
    {
        throw ConfigError("catalogue", e.what());
    }
    try
    {
        if (model->is_string())
            cfg.model = catalogue_model(model->get<std::string>(), cat);
        else if (model->is_object())
            cfg.model = model_from_json(*model);
        else
            throw ConfigError("model", "must be a catalogue id or a model object");
        if (cfg.model.id.empty())
            cfg.model.id = "custom";
    }
    catch (ConfigError const&)
    {
        throw;
    }
    catch (std::exception const& e)
    {
        throw ConfigError("model", e.what());
    }

    cfg.task = get_string(doc, "", "task", "", task_ids());
    if (cfg.task.empty())
        throw ConfigError("task", "missing");
    if (!find(doc, "seed"))
        throw ConfigError("seed", "missing (a seed is required for reproducibility)");
    cfg.seed = get_uint(doc, "", "seed", 1);
    cfg.workers = static_cast<unsigned>(get_uint(doc, "", "workers", 1, 1));

    auto const& grids = section(doc, "grids");
    cfg.n_grid = get_grid(grids, "grids", "n", pow2_grid(6, 10));
    cfg.m_grid = get_grid(grids, "grids", "m", {1, 2, 4, 8});
    cfg.paths = get_uint(grids, "grids", "paths", 200, 2);

    auto const& tols = section(doc, "tolerances");
    cfg.tol = get_positive(tols, "tolerances", "tol", default_tolerance);
    cfg.cauchy_tol = get_positive(tols, "tolerances", "cauchy_tol", 1e-3);

    auto const& outp = section(doc, "output");
    cfg.out_dir = get_string(outp, "output", "dir", "out");
    cfg.format = get_string(outp, "output", "format", "json", {"json", "csv", "both"});

    // decompose
    auto const& dec = section(doc, "decompose");
    cfg.decompose_n = get_uint(dec, "decompose", "n", cfg.n_grid.back(), 1);
    {
        auto const& res = section(dec, "residual");
        std::string const rp = "decompose.residual";
        cfg.residual.p = get_positive(res, rp, "p", 2);
        if (cfg.residual.p != 1 && cfg.residual.p != 2)
            throw ConfigError(rp + ".p", "must be 1 or 2");
        cfg.residual.m_rule = get_string(res, rp, "m_rule", "diagonal", {"diagonal", "fixed"});
        cfg.residual.m = get_uint(res, rp, "m", 1, 1);
        cfg.residual.max_statistic = get_bool(res, rp, "max", false);
        cfg.residual.tol = get_positive(res, rp, "tol", 0.1);
        cfg.residual.seed = cfg.seed;
        cfg.residual.workers = cfg.workers;
        cfg.residual_grid = get_grid(res, rp, "n_grid", cfg.n_grid);
        cfg.residual_enforce = get_bool(res, rp, "enforce", false);
    }

    // norms
    auto const& nrm = section(doc, "norms");
    cfg.norm_functionals = get_strings(nrm, "norms", "functionals", {"X"});
    for (auto const& f : cfg.norm_functionals)
    {
        try
        {
            Functional::parse(f);
        }
        catch (std::exception const& e)
        {
            throw ConfigError("norms.functionals", e.what());
        }
    }
    cfg.norm_p = get_positive(nrm, "norms", "p", 1);
    cfg.norm_mplus = get_bool(nrm, "norms", "mplus", true);

    // criteria
    auto const& cr = section(doc, "criteria");
    cfg.criteria = CriteriaOptions::defaults();
    cfg.criteria_ids = get_strings(cr, "criteria", "ids", {});
    for (auto const& id : cfg.criteria_ids)
    {
        auto const& all = criterion_ids();
        if (std::find(all.begin(), all.end(), id) == all.end())
            throw ConfigError("criteria.ids", "unknown criterion '" + id + "'");
    }
    cfg.criteria.n_grid = get_grid(cr, "criteria", "n_grid", cfg.criteria.n_grid);
    cfg.criteria.mc_n_grid = get_grid(cr, "criteria", "mc_n_grid", cfg.criteria.mc_n_grid);
    cfg.criteria.m_grid = get_grid(cr, "criteria", "m_grid", cfg.criteria.m_grid);
    cfg.criteria.npaths = get_uint(cr, "criteria", "npaths", cfg.paths, 2);
    cfg.criteria.horizon = get_uint(cr, "criteria", "horizon", cfg.criteria.horizon, 2);
    cfg.criteria.seed = cfg.seed;
    cfg.criteria.workers = cfg.workers;
    cfg.criteria.tol = cfg.tol;
    cfg.criteria.cauchy_tol = cfg.cauchy_tol;

    // expectations
    auto const& ex = section(doc, "expect");
    if (auto const* ec = find(ex, "criteria"))
    {
        if (!ec->is_object())
            throw ConfigError("expect.criteria", "must map criterion ids to verdicts");
        for (auto const& [id, v] : ec->items())
        {
            auto const& all = criterion_ids();
            if (std::find(all.begin(), all.end(), id) == all.end())
                throw ConfigError("expect.criteria." + id, "unknown criterion");
            if (!v.is_string())
                throw ConfigError("expect.criteria." + id, "verdict must be a string");
            try
            {
                cfg.expect[id] = verdict_from_string(v.get<std::string>());
            }
            catch (std::exception const& e)
            {
                throw ConfigError("expect.criteria." + id, e.what());
            }
        }
    }
    for (auto const& [k, v] : ex.items())
    {
        if (k != "criteria")
            throw ConfigError("expect." + k, "unknown key");
    }

    // clt
    auto const& clt = section(doc, "clt");
    cfg.clt.n = get_uint(clt, "clt", "n", cfg.n_grid.back(), 1);
    cfg.clt.k = get_uint(clt, "clt", "k", 0);
    if (cfg.clt.k > cfg.clt.n)
        throw ConfigError("clt.k", "must not exceed clt.n");
    cfg.clt.npaths_outer = get_uint(clt, "clt", "outer", 2, 1);
    cfg.clt.npaths_inner = get_uint(clt, "clt", "inner", cfg.paths, 2);
    cfg.clt.family = get_string(clt, "clt", "family", "bounded", probe_family_ids());
    cfg.clt.tol = get_positive(clt, "clt", "tol", cfg.tol);
    cfg.clt.seed = cfg.seed;
    cfg.clt.workers = cfg.workers;
    if (auto const* e = find(clt, "eta"))
    {
        if (!e->is_number() || !(e->get<double>() > 0))
            throw ConfigError("clt.eta", "must be a positive number");
        cfg.clt.eta = e->get<double>();
    }
    cfg.eta_grid = get_grid(clt, "clt", "eta_grid", cfg.n_grid);
    cfg.eta_paths = get_uint(clt, "clt", "eta_paths", cfg.paths, 2);

    // fclt
    auto const& fc = section(doc, "fclt");
    cfg.fclt_n = get_uint(fc, "fclt", "n", cfg.n_grid.back(), 1);
    cfg.fclt_paths = get_uint(fc, "fclt", "paths", cfg.paths, 2);
    cfg.fclt_functionals = get_strings(fc, "fclt", "functionals", functional_ids());
    for (auto const& id : cfg.fclt_functionals)
    {
        auto const& all = functional_ids();
        if (std::find(all.begin(), all.end(), id) == all.end())
            throw ConfigError("fclt.functionals", "unknown functional '" + id + "'");
    }
    cfg.fclt.tol = get_positive(fc, "fclt", "tol", cfg.tol);
    cfg.fclt.seed = cfg.seed;
    cfg.fclt.workers = cfg.workers;
    if (auto const* s = find(fc, "condition_state"))
    {
        if (!is_nonneg_int(*s))
            throw ConfigError("fclt.condition_state", "must be a nonnegative integer");
        if (!cfg.model.is_markov())
            throw ConfigError("fclt.condition_state", "needs a finite Markov model");
        cfg.fclt.condition_state = s->get<int>();
    }
    cfg.cdf_points = get_uint(fc, "fclt", "cdf_points", 101, 2);

    // Canonical form: everything that determines results.
    json canon = {{"model", cfg.model.to_json()},
                  {"task", cfg.task},
                  {"seed", cfg.seed},
                  {"grids", {{"n", grid_json(cfg.n_grid)}, {"m", grid_json(cfg.m_grid)},
                             {"paths", cfg.paths}}},
                  {"tolerances", {{"tol", cfg.tol}, {"cauchy_tol", cfg.cauchy_tol}}}};
    canon["decompose"] = {{"n", cfg.decompose_n},
                          {"residual", {{"p", cfg.residual.p}, {"m_rule", cfg.residual.m_rule},
                                        {"m", cfg.residual.m}, {"max", cfg.residual.max_statistic},
                                        {"tol", cfg.residual.tol},
                                        {"n_grid", grid_json(cfg.residual_grid)},
                                        {"enforce", cfg.residual_enforce}}}};
    canon["norms"] = {{"functionals", cfg.norm_functionals}, {"p", cfg.norm_p},
                      {"mplus", cfg.norm_mplus}};
    canon["criteria"] = {{"ids", cfg.criteria_ids},
                         {"n_grid", grid_json(cfg.criteria.n_grid)},
                         {"mc_n_grid", grid_json(cfg.criteria.mc_n_grid)},
                         {"m_grid", grid_json(cfg.criteria.m_grid)},
                         {"npaths", cfg.criteria.npaths},
                         {"horizon", cfg.criteria.horizon}};
    json expect = json::object();
    for (auto const& [id, v] : cfg.expect)
        expect[id] = to_string(v);
    canon["expect"] = {{"criteria", expect}};
    canon["clt"] = {{"n", cfg.clt.n}, {"k", cfg.clt.k}, {"outer", cfg.clt.npaths_outer},
                    {"inner", cfg.clt.npaths_inner}, {"family", cfg.clt.family},
                    {"tol", cfg.clt.tol}, {"eta_grid", grid_json(cfg.eta_grid)},
                    {"eta_paths", cfg.eta_paths}};
    if (cfg.clt.eta)
        canon["clt"]["eta"] = *cfg.clt.eta;
    canon["fclt"] = {{"n", cfg.fclt_n}, {"paths", cfg.fclt_paths},
                     {"functionals", cfg.fclt_functionals}, {"tol", cfg.fclt.tol},
                     {"cdf_points", cfg.cdf_points}};
    if (cfg.fclt.condition_state)
        canon["fclt"]["condition_state"] = *cfg.fclt.condition_state;
    cfg.canonical = canon;
    cfg.hash = sha256_hex(canon.dump());
    return cfg;
}

ExperimentConfig load_config(std::string const& path, RunOverrides const& ov)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("--config", "cannot read '" + path + "'");
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (json::parse_error const& e)
    {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc, fs::path(path).parent_path().string(), ov);
}

//---------------------------------------------------------------------------//
json RunManifest::to_json() const
{
    json files = json::array();
    for (auto const& [name, hash] : file_hashes)
        files.push_back({{"path", name}, {"sha256", hash}});
    json cs = json::array();
    for (auto const& c : checks)
        cs.push_back({{"task", c.task}, {"name", c.name}, {"passed", c.passed},
                      {"detail", c.detail}});
    return {{"config_hash", config_hash},
            {"artifact_version", version},
            {"wall_clock_seconds", wall_clock},
            {"outputs", outputs},
            {"files", files},
            {"checks", cs},
            {"passed", passed}};
}

RunManifest run_experiment(ExperimentConfig const& cfg)
{
    auto const t0 = std::chrono::steady_clock::now();
    OutputWriter out(cfg.out_dir, cfg.format);
    out.always("config", "config.json", dump_json(cfg.canonical));

    auto want = [&](char const* t) { return cfg.task == t || cfg.task == "full-suite"; };
    if (want("decompose"))
        run_decompose(cfg, out);
    if (want("norms"))
        run_norms(cfg, out);
    if (want("criteria"))
        run_criteria(cfg, out);
    if (want("clt"))
        run_clt(cfg, out);
    if (want("fclt"))
        run_fclt(cfg, out);

    auto& man = out.manifest();
    man.config_hash = cfg.hash;
    man.version = version_string();
    man.passed = std::all_of(man.checks.begin(), man.checks.end(),
                             [](CheckResult const& c) { return c.passed; });
    man.wall_clock
        = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_text((fs::path(out.dir()) / "manifest.json").string(), dump_json(man.to_json()));
    return man;
}

json list_models(std::string const& catalogue_path)
{
    auto const cat = load_catalogue(catalogue_path);
    json models = json::array();
    for (auto const& e : cat)
    {
        auto const m = model_from_json(e.spec);
        models.push_back({{"id", e.id}, {"kind", m.kind()}, {"description", e.description},
                          {"spec", e.spec}});
    }
    return {{"models", models}, {"kinds", kind_schemas()}};
}

//---------------------------------------------------------------------------//
}  // namespace mgale
