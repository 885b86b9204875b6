#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "output.hpp"
#include "wgof/efficiency.hpp"
#include "wgof/normal.hpp"
#include "wgof/probe.hpp"
#include "wgof/sample.hpp"
#include "wgof/shape.hpp"
#include "wgof/statistics.hpp"

namespace wgof::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::vector<std::string> kAllSpecs{"ks",     "bs:kappa=0.05", "ej:rule=o",     "ej:rule=star",
                                         "ad_sup", "ad_log",        "wtau:tau=0.25", "ad_int"};
const std::vector<std::string> kPowerSpecs{"ej:rule=o", "ej:rule=star", "ad_int", "ad_log", "ks"};

std::vector<StatisticSpec> parse_specs(const std::vector<std::string>& tokens,
                                       const std::vector<std::string>& fallback)
{
    std::vector<StatisticSpec> out;
    for (const auto& t : tokens.empty() ? fallback : tokens) {
        out.push_back(StatisticSpec::parse(t));
    }
    return out;
}

std::string params_text(const AlternativeModel& m)
{
    std::string s;
    for (const auto& [k, v] : m.params()) {
        s += (s.empty() ? "" : " ") + k + "=" + num(v);
    }
    return s;
}

class CacheSession
{
  public:
    explicit CacheSession(const std::string& path) : path_(path)
    {
        if (!path_.empty() && fs::exists(path_)) {
            table_ = CriticalValueTable::load(path_);
        }
    }
    CriticalValueTable& table() noexcept { return table_; }
    void save() const
    {
        if (path_.empty()) {
            return;
        }
        const fs::path p(path_);
        if (p.has_parent_path()) {
            fs::create_directories(p.parent_path());
        }
        table_.save(path_);
    }

  private:
    std::string path_;
    CriticalValueTable table_;
};

RunManifest start(const GlobalOptions& g, const std::string& command)
{
    RunManifest m(command, g.argv, g.out_dir);
    m.config() = {{"seed", g.seed},   {"reps_critical", g.reps_critical}, {"reps_power", g.reps_power},
                  {"alpha", g.alpha}, {"workers", g.workers},             {"cache", g.cache}};
    return m;
}

std::vector<double> linspace(double a, double b, std::size_t k)
{
    std::vector<double> v(k);
    for (std::size_t i = 0; i < k; ++i) {
        v[i] = k == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(k - 1);
    }
    return v;
}

std::string opt_num(const std::optional<double>& v)
{
    return v ? num(*v) : std::string();
}

std::string range_text(const std::optional<ParamRange>& r)
{
    return r ? r->to_string() : std::string("none");
}

}  // namespace

McConfig GlobalOptions::config() const
{
    McConfig c;
    c.seed = seed;
    c.reps_critical = reps_critical;
    c.reps_power = reps_power;
    c.alpha = alpha;
    if (workers == "auto") {
        c.workers = 0;
    } else {
        std::size_t pos = 0;
        const unsigned long w = std::stoul(workers, &pos);
        if (pos != workers.size() || w == 0) {
            throw std::invalid_argument("--workers must be a positive count or 'auto'");
        }
        c.workers = static_cast<unsigned>(w);
    }
    c.validate();
    return c;
}

std::vector<double> read_values(const std::string& path, std::vector<std::size_t>* lines)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::vector<double> out;
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            continue;
        }
        const auto e = line.find_last_not_of(" \t\r");
        const std::string field = line.substr(b, e - b + 1);
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(field, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != field.size() || !std::isfinite(v)) {
            throw std::runtime_error(path + ":" + std::to_string(no) + ": not a finite number: '" + field + "'");
        }
        out.push_back(v);
        if (lines) {
            lines->push_back(no);
        }
    }
    if (out.empty()) {
        throw std::runtime_error("empty sample");
    }
    return out;
}

void cmd_stat(const GlobalOptions& g, const StatArgs& a)
{
    std::vector<std::size_t> lines;
    std::vector<double> v = read_values(a.file, &lines);
    if (a.null == "gaussian") {
        if (!(a.sigma0 > 0.0)) {
            throw std::invalid_argument("--sigma0 must be positive");
        }
        for (auto& x : v) {
            x = normal_cdf((x - a.mu0) / a.sigma0);
        }
    } else if (a.null != "uniform") {
        throw std::invalid_argument("--null must be 'uniform' or 'gaussian'");
    }
    std::optional<NullSample> sample;
    try {
        sample = NullSample::from_unsorted(std::move(v));
    } catch (const InvalidSample& e) {
        throw std::runtime_error(std::string(e.what()) + " (input line " + std::to_string(lines[e.index()]) + ")");
    }
    const auto specs = parse_specs(a.specs, kAllSpecs);
    CacheSession cache(g.cache);
    auto man = start(g, "stat");
    man.config()["input"] = a.file;
    man.config()["null"] = a.null;
    if (a.null == "gaussian") {
        man.config()["mu0"] = a.mu0;
        man.config()["sigma0"] = a.sigma0;
    }

    CsvTable t("stat", 1, {"statistic", "token", "n", "value", "alpha", "critical", "decision"});
    for (const auto& s : specs) {
        const auto r = evaluate(s, *sample);
        std::string crit, decision;
        if (const auto* cv = cache.table().find(s, sample->size(), g.alpha)) {
            crit = num(cv->value);
            decision = r.value >= cv->value ? "reject" : "accept";
        }
        t.row({s.label(), s.token(), std::to_string(sample->size()), num(r.value), num(g.alpha), crit, decision});
    }
    const std::string csv = t.str();
    std::fputs(csv.c_str(), stdout);
    man.write("stat.csv", csv);
    man.finish();
}

void cmd_critvals(const GlobalOptions& g, const CritvalsArgs& a)
{
    const McConfig cfg = g.config();
    const auto specs = parse_specs(a.specs, kAllSpecs);
    CacheSession cache(g.cache);
    auto man = start(g, "critvals");
    CriticalValueTable out;
    for (std::size_t n : a.n) {
        const auto cv = cache.table().get_or_compute(specs, n, cfg);
        for (std::size_t i = 0; i < specs.size(); ++i) {
            out.insert(specs[i], n, cfg.alpha, cv[i]);
        }
    }
    cache.save();
    man.write("critvals.csv", out.to_csv());
    man.finish();
}

void cmd_power(const GlobalOptions& g, const PowerArgs& a)
{
    const McConfig cfg = g.config();
    const auto specs = parse_specs(a.specs, kPowerSpecs);
    CacheSession cache(g.cache);
    auto man = start(g, "power");
    CsvTable t("power", 1, {"family", "params", "statistic", "n", "alpha", "power", "stderr", "seed"});
    for (const auto& text : a.models) {
        const auto m = AlternativeModel::parse(text);
        for (std::size_t n : a.n) {
            const auto crit = cache.table().get_or_compute(specs, n, cfg);
            const auto pw = power(specs, m, n, cfg, crit);
            for (std::size_t i = 0; i < specs.size(); ++i) {
                t.row({m.family_name(), params_text(m), specs[i].token(), std::to_string(n), num(cfg.alpha),
                       num(pw[i].p), num(pw[i].stderr_), std::to_string(cfg.seed)});
            }
        }
    }
    cache.save();
    man.write("power.csv", t.str());
    man.finish();
}

namespace {

constexpr std::size_t kCurvePoints = 2001;

void light_tail_figure(const GlobalOptions& g, const FiguresArgs& a, const std::vector<AlternativeModel>& models,
                       CacheSession& cache, RunManifest& man)
{
    const McConfig cfg = g.config();
    const auto specs = parse_specs({}, kPowerSpecs);
    CsvTable lg(a.which + "-series", 1, {"panel", "series", "x", "y", "stderr", "n_eval"});
    CsvTable sm(a.which + "-summary", 1, {"panel", "t0", "m0", "e_EK", "e_IK", "n_min", "n_max", "zoom_n"});

    for (const auto& m : models) {
        const std::string panel = m.to_string();
        const ShapeFunction s = shape(m);
        const auto rep = efficiency_report(s, {});
        for (std::size_t k = 0; k < kCurvePoints; ++k) {
            const double t = (static_cast<double>(k) + 0.5) / kCurvePoints;
            const double tc = (static_cast<double>(kCurvePoints - k) - 0.5) / kCurvePoints;
            lg.row({panel, "a", num(t), num(s.a(t, tc)), "", ""});
        }
        for (std::size_t k = 0; k < kCurvePoints; ++k) {
            const double t = (static_cast<double>(k) + 0.5) / kCurvePoints;
            const double tc = (static_cast<double>(kCurvePoints - k) - 0.5) / kCurvePoints;
            lg.row({panel, "A*", num(t), num(s.A_star(t, tc)), "", ""});
        }

        const std::size_t n_max = a.max_n ? *a.max_n : saturation_n(specs[0], m, cfg, cache.table(), 0.99, a.min_n);
        const auto grid = log_grid(a.min_n, std::max(a.min_n, n_max), a.steps);
        const auto curves = power_curve_vs_n(specs, m, grid, cfg, cache.table());
        for (const auto& c : curves) {
            for (const auto& p : c.points) {
                lg.row({panel, "power:" + c.spec.label(), std::to_string(p.n), num(p.power.p),
                        num(p.power.stderr_), std::to_string(p.n)});
            }
        }
        std::string zoom;
        for (const auto& p : curves[0].points) {
            if (p.power.p >= 0.99) {
                zoom = std::to_string(p.n);
                break;
            }
        }

        const bool vanishes = s.conditions() ? s.conditions()->astar_vanishes : false;
        if (!vanishes) {
            man.note(panel + ": corrected-K series omitted, A* does not vanish at the ends so e_EK is undefined");
        }
        auto corrected = [&](const std::string& name, const std::optional<double>& e) {
            if (!e) {
                man.note(panel + ": " + name + " series omitted, efficiency undefined");
                return;
            }
            for (std::size_t n : grid) {
                const auto pk = corrected_sample_size_power(m, n, *e, cfg, cache.table(), Rounding::Ceiling);
                lg.row({panel, name, std::to_string(n), num(pk.power.p), num(pk.power.stderr_), std::to_string(pk.n)});
            }
        };
        if (vanishes) {
            corrected("power:K[n*e_EK]", rep.e_EK);
            corrected("power:K[n*e_IK]", rep.e_IK);
        }
        sm.row({panel, num(rep.sup_astar.t0), num(rep.sup_astar.m0), opt_num(rep.e_EK), opt_num(rep.e_IK),
                std::to_string(grid.front()), std::to_string(grid.back()), zoom});
    }
    man.write(a.which + "_series.csv", lg.str());
    man.write(a.which + "_summary.csv", sm.str());
}

struct Sweep {
    std::string panel;
    std::string param;
    std::vector<double> values;
    std::function<AlternativeModel(double)> make;
};

void heavy_tail_figure(const GlobalOptions& g, const FiguresArgs& a, CacheSession& cache, RunManifest& man)
{
    const McConfig cfg = g.config();
    const auto specs = parse_specs({}, kPowerSpecs);
    const double p = a.fig3_p;
    const std::size_t k = a.points;
    const std::vector<Sweep> sweeps{
        {"m4 beta=3", "pi", linspace(0.0, 0.1, k), [](double x) { return AlternativeModel::m4(3.0, x); }},
        {"m4 pi=0.05", "beta", linspace(0.5, 5.0, k), [](double x) { return AlternativeModel::m4(x, 0.05); }},
        {"m5 p=" + num(p), "delta", linspace(0.05, 0.95, k), [p](double x) { return AlternativeModel::m5(x, p); }},
        {"m6 p=" + num(p), "gamma", linspace(0.2, 2.0, k), [p](double x) { return AlternativeModel::m6(x, p); }},
        {"m7 p=" + num(p), "zeta", linspace(0.25, 5.0, k), [p](double x) { return AlternativeModel::m7(x, p); }},
    };
    CsvTable lg("fig3-series", 1, {"panel", "series", "x", "y", "stderr", "n_eval"});
    CsvTable sm("fig3-summary", 1, {"panel", "param", "from", "to", "points", "n"});
    for (const auto& sw : sweeps) {
        std::vector<AlternativeModel> models;
        for (double x : sw.values) {
            models.push_back(sw.make(x));
        }
        const auto curves = power_curve_vs_param(specs, models, sw.param, a.fig3_n, cfg, cache.table());
        for (const auto& c : curves) {
            for (const auto& pt : c.points) {
                lg.row({sw.panel, "power:" + c.spec.label(), num(pt.x), num(pt.power.p), num(pt.power.stderr_),
                        std::to_string(pt.n)});
            }
        }
        sm.row({sw.panel, sw.param, num(sw.values.front()), num(sw.values.back()), std::to_string(k),
                std::to_string(a.fig3_n)});
    }
    man.note("corrected-K series are not produced for fig3: the heavy-tail models violate the condition that A* "
             "vanishes at the ends, so e_EK is undefined");
    man.write("fig3_series.csv", lg.str());
    man.write("fig3_summary.csv", sm.str());
}

}  // namespace

void cmd_figures(const GlobalOptions& g, const FiguresArgs& a)
{
    if (a.steps < 2 || a.min_n < 1 || a.points < 2) {
        throw std::invalid_argument("figures: need --steps >= 2, --min-n >= 1 and --points >= 2");
    }
    CacheSession cache(g.cache);
    auto man = start(g, "figures-" + a.which);
    man.config()["steps"] = a.steps;
    man.config()["min_n"] = a.min_n;
    if (a.max_n) {
        man.config()["max_n"] = *a.max_n;
    }
    if (a.which == "fig1") {
        light_tail_figure(g, a, {AlternativeModel::m1(0.15), AlternativeModel::m2(0.75)}, cache, man);
    } else if (a.which == "fig2") {
        light_tail_figure(g, a, {AlternativeModel::m2(1.25), AlternativeModel::m3(0.05, 2.0)}, cache, man);
    } else if (a.which == "fig3") {
        man.config()["n"] = a.fig3_n;
        man.config()["p"] = a.fig3_p;
        man.config()["points"] = a.points;
        heavy_tail_figure(g, a, cache, man);
    } else {
        throw std::invalid_argument("figures: expected fig1, fig2 or fig3, got '" + a.which + "'");
    }
    cache.save();
    man.finish();
}

void cmd_efficiency(const GlobalOptions& g, const EfficiencyArgs& a)
{
    auto man = start(g, "efficiency");
    man.config()["kappas"] = a.kappas;
    CsvTable t("efficiency", 1,
               {"model", "theta", "t0", "m0", "diverges", "edge_limit", "sup_A", "l2_Astar", "l2_converged", "rho_A",
                "rho_converged", "e_EK", "e_IK", "e_MK", "astar_vanishes", "power_decay", "integrable", "level_K",
                "level_E", "level_I", "notes"});
    CsvTable gk("efficiency-gk", 1, {"model", "kappa", "e_GK", "level_G"});
    json all = json::array();
    for (const auto& text : a.models) {
        const ShapeFunction s =
            text == "parabola"
                ? ShapeFunction::synthetic("parabola", [](double u, double uc) { return u * uc; },
                                           ShapeFunction::Fn([](double u, double uc) { return uc - u; }))
                : shape(AlternativeModel::parse(text));
        const auto r = efficiency_report(s, a.kappas);
        const auto& c = r.conditions;
        const std::string vanish = c ? (c->astar_vanishes ? "true" : "false") : "";
        t.row({r.name, num(r.theta), num(r.sup_astar.t0), num(r.sup_astar.m0), r.sup_astar.diverges ? "true" : "false",
               r.sup_astar.edge_limit ? "true" : "false", num(r.sup_A_inf), num(r.l2_Astar),
               r.l2_sq.converged ? "true" : "false", num(r.rho_A), r.rho_sq.converged ? "true" : "false",
               opt_num(r.e_EK), opt_num(r.e_IK), opt_num(r.e_MK), vanish, c ? range_text(c->power_decay) : "",
               c ? range_text(c->integrable) : "", num(r.level_K), num(r.level_E), num(r.level_I), r.notes});
        json e_gk = json::array();
        for (std::size_t i = 0; i < r.e_GK.size(); ++i) {
            const double lvl = i < r.level_G.size() ? r.level_G[i].second : NAN;
            gk.row({r.name, num(r.e_GK[i].first), num(r.e_GK[i].second), num(lvl)});
            e_gk.push_back({{"kappa", r.e_GK[i].first}, {"e_GK", r.e_GK[i].second}, {"level_G", lvl}});
        }
        auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
        all.push_back({{"model", r.name},
                       {"theta", r.theta},
                       {"t0", r.sup_astar.t0},
                       {"m0", r.sup_astar.m0},
                       {"diverges", r.sup_astar.diverges},
                       {"edge_limit", r.sup_astar.edge_limit},
                       {"sup_A", r.sup_A_inf},
                       {"l2_Astar", r.l2_Astar},
                       {"rho_A", r.rho_A},
                       {"e_EK", opt(r.e_EK)},
                       {"e_IK", opt(r.e_IK)},
                       {"e_MK", opt(r.e_MK)},
                       {"e_GK", e_gk},
                       {"conditions",
                        c ? json{{"astar_vanishes", c->astar_vanishes},
                                 {"power_decay", range_text(c->power_decay)},
                                 {"integrable", range_text(c->integrable)},
                                 {"numeric_astar_vanishes", c->numeric_astar_vanishes},
                                 {"warning", c->warning}}
                          : json(nullptr)},
                       {"levels", {{"K", r.level_K}, {"E", r.level_E}, {"I", r.level_I}}},
                       {"notes", r.notes}});
    }
    man.write("efficiency.csv", t.str());
    man.write("efficiency_gk.csv", gk.str());
    man.write("efficiency.json", all.dump(2) + "\n");
    man.finish();
}

void cmd_probe(const GlobalOptions& g, const ProbeArgs& a)
{
    const McConfig cfg = g.config();
    const RateRule w = RateRule::parse(a.w);
    std::vector<ProbeSpec> probes;
    for (const auto& s : parse_specs(a.specs, {"ks"})) {
        ProbeSpec p{s, w, a.n, a.reps, g.seed};
        p.validate();
        probes.push_back(p);
    }
    auto man = start(g, "probe");
    man.config()["w"] = w.to_string();
    man.config()["reps"] = a.reps;
    const auto res = index_estimate_batch(probes, cfg.resolved_workers());
    CsvTable t("probe", 1,
               {"statistic", "n", "w_n", "threshold", "p_hat", "stderr", "index_estimate", "target_index", "regime",
                "hits", "reliable"});
    for (std::size_t i = 0; i < probes.size(); ++i) {
        for (const auto& pt : res[i]) {
            t.row({probes[i].spec.token(), std::to_string(pt.n), num(pt.w), num(pt.threshold), num(pt.tail.p_hat),
                   num(pt.tail.stderr_), num(pt.index), num(pt.target), pt.regime, std::to_string(pt.tail.hits),
                   pt.tail.reliable ? "true" : "false"});
            if (!pt.tail.warning.empty()) {
                man.note(probes[i].spec.token() + " n=" + std::to_string(pt.n) + ": " + pt.tail.warning);
            }
        }
    }
    man.write("probe.csv", t.str());
    man.finish();
}

}  // namespace wgof::cli
