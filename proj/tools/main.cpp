#include "cli_support.hpp"

#include "fas/fas.h"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

using nlohmann::json;
using namespace fascli;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitMismatch = 4;

struct Globals {
    std::string out;
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    bool quiet = false;
};

// Point flags shared by outage, sweep and simulate.
struct PointFlags {
    std::string family;
    double param = 0, alpha = 0, beta = 0, theta = 0;
    double ports = 0, m = 0, mu = 0, snr_db = 0, threshold_db = 0;
    std::vector<CLI::Option*> opts;

    void add(CLI::App* app, bool with_family)
    {
        if (with_family) {
            opts.push_back(app->add_option("--family", family, "independence, frank, clayton or gumbel"));
            opts.push_back(app->add_option("--param", param, "dependence parameter of --family"));
        }
        opts.push_back(app->add_option("--alpha", alpha, "Frank parameter (> 0)"));
        opts.push_back(app->add_option("--beta", beta, "Clayton parameter (> 0)"));
        opts.push_back(app->add_option("--theta", theta, "Gumbel parameter (>= 1)"));
        opts.push_back(app->add_option("--ports", ports, "number of ports K"));
        opts.push_back(app->add_option("--m", m, "Nakagami shape m (>= 0.5)"));
        opts.push_back(app->add_option("--mu", mu, "Nakagami spread mu (> 0)"));
        opts.push_back(app->add_option("--snr-db", snr_db, "average SNR in dB"));
        opts.push_back(app->add_option("--threshold-db", threshold_db, "SNR threshold in dB"));
    }

    // Overlays every flag given on the command line onto `j`.
    void merge_into(json& j) const
    {
        for (const CLI::Option* o : opts) {
            if (o->count() == 0)
                continue;
            std::string key = o->get_name().substr(2);
            for (auto& c : key)
                c = c == '-' ? '_' : c;
            if (key == "family")
                j[key] = family;
            else
                j[key] = std::stod(o->as<std::string>());
        }
    }
};

json base_config(const Globals& g)
{
    return g.config.empty() ? json::object() : load_json_file(g.config);
}

int cmd_outage(const Globals& g, const PointFlags& flags)
{
    json j = base_config(g);
    flags.merge_into(j);
    write_output(g.out, run_outage(outage_query_from_json(j)));
    return 0;
}

struct SweepFlags {
    std::string var, series_var;
    double start = 0, stop = 0, step = 1;
    std::vector<double> values, series_values;
    std::vector<std::string> families;
    CLI::Option *var_o, *start_o, *stop_o, *step_o, *values_o, *series_var_o, *series_values_o, *families_o;

    void add(CLI::App* app)
    {
        var_o = app->add_option("--var", var, "swept variable: avg_snr_db, ports, dependence_param, fading_m");
        start_o = app->add_option("--start", start, "first sweep value");
        stop_o = app->add_option("--stop", stop, "last sweep value (inclusive)");
        step_o = app->add_option("--step", step, "sweep increment");
        values_o = app->add_option("--values", values, "explicit sweep values")->delimiter(',');
        series_var_o = app->add_option("--series-var", series_var, "optional second variable, one curve per value");
        series_values_o = app->add_option("--series-values", series_values, "values of --series-var")->delimiter(',');
        families_o = app->add_option("--families", families, "copula families (default frank,clayton,gumbel)")
                         ->delimiter(',');
    }

    void merge_into(json& j) const
    {
        json& sweep = j["sweep"];
        if (sweep.is_null())
            sweep = json::object();
        if (var_o->count())
            sweep["variable"] = var;
        if (values_o->count()) {
            sweep.erase("start");
            sweep.erase("stop");
            sweep.erase("step");
            sweep["values"] = values;
        }
        if (start_o->count() || stop_o->count() || step_o->count())
            sweep.erase("values");
        if (start_o->count())
            sweep["start"] = start;
        if (stop_o->count())
            sweep["stop"] = stop;
        if (step_o->count())
            sweep["step"] = step;
        if (series_var_o->count() || series_values_o->count()) {
            json& series = j["series"];
            if (series.is_null())
                series = json::object();
            if (series_var_o->count())
                series["variable"] = series_var;
            if (series_values_o->count())
                series["values"] = series_values;
        }
        if (families_o->count())
            j["families"] = families;
    }
};

int cmd_sweep(const Globals& g, const PointFlags& point, const SweepFlags& sweep)
{
    json j = base_config(g);
    point.merge_into(j);
    sweep.merge_into(j);
    if (g.trials)
        j["trials"] = *g.trials;
    if (g.seed)
        j["seed"] = *g.seed;
    const auto spec = sweep_spec_from_json(j);
    write_output(g.out, to_csv(run_sweep(spec)));
    return 0;
}

int cmd_simulate(const Globals& g, const PointFlags& flags, bool grid, unsigned workers)
{
    json j = base_config(g);
    std::int64_t trials = 1000000;
    std::uint64_t seed = 1;
    if (j.contains("trials")) {
        trials = j.at("trials").get<std::int64_t>();
        j.erase("trials");
    }
    if (j.contains("seed")) {
        seed = j.at("seed").get<std::uint64_t>();
        j.erase("seed");
    }
    if (g.trials)
        trials = *g.trials;
    if (g.seed)
        seed = *g.seed;

    std::vector<OutageQuery> configs;
    if (grid) {
        j.erase("family");
        j.erase("param");
        j.erase("alpha");
        j.erase("beta");
        j.erase("theta");
        json point = j;
        flags.merge_into(point);
        OutageQuery q = outage_query_from_json(point);
        configs = simulation_grid(q.point);
    } else {
        flags.merge_into(j);
        configs = simulation_configs_from_json(j);
    }

    const auto report = run_simulation(configs, trials, seed, workers);
    write_output(g.out, report.csv);
    if (!g.quiet) {
        std::cerr << configs.size() - static_cast<std::size_t>(report.failures) << "/" << configs.size()
                  << " configurations within 4 sigma\n";
    }
    return report.failures == 0 ? 0 : kExitMismatch;
}

int cmd_figures(const Globals& g)
{
    if (!g.config.empty())
        throw UsageError("figures does not take --config");
    const std::filesystem::path dir = g.out.empty() ? std::filesystem::path("figures") : std::filesystem::path(g.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    for (auto fig : builtin_figures()) {
        if (g.trials)
            fig.sweep.mc_trials = *g.trials;
        if (g.seed)
            fig.sweep.seed = *g.seed;
        const auto path = dir / (fig.name + ".csv");
        write_output(path.string(), to_csv(run_sweep(fig.sweep)));
        if (!g.quiet)
            std::cerr << "wrote " << path.string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outage probability of fluid antenna systems with copula-coupled Nakagami-m ports.\n"
                 "SNR flags are in dB and converted with 10^(x/10)."};
    app.set_version_flag("--version", fas_version());
    app.require_subcommand(1);

    Globals g;
    app.add_option("--out", g.out, "output file (directory for figures); default stdout");
    app.add_option("--config", g.config, "JSON file with the same keys as the flags; flags take precedence");
    app.add_option("--seed", g.seed, "random seed for simulations");
    app.add_option("--trials", g.trials, "Monte Carlo trials (sweep: 0 = analytic only)");
    app.add_flag("--quiet", g.quiet, "suppress progress messages on stderr");

    PointFlags outage_flags, sweep_point, sim_flags;
    SweepFlags sweep_flags;
    bool grid = false;
    unsigned workers = 0;

    auto* outage = app.add_subcommand("outage", "closed-form outage probability at one operating point");
    outage_flags.add(outage, true);

    auto* sweep = app.add_subcommand("sweep", "outage curves over one variable, as CSV");
    sweep_point.add(sweep, false);
    sweep_flags.add(sweep);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo vs closed form; exit 4 on a 4-sigma mismatch");
    sim_flags.add(simulate, true);
    simulate->add_flag("--grid", grid, "run the 27-configuration family x parameter x K grid");
    simulate->add_option("--workers", workers, "worker threads (0 = all cores); results do not depend on it");

    auto* figures = app.add_subcommand("figures", "write fig1.csv .. fig5.csv into the --out directory");

    for (auto* sub : {outage, sweep, simulate, figures})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*outage)
            return cmd_outage(g, outage_flags);
        if (*sweep)
            return cmd_sweep(g, sweep_point, sweep_flags);
        if (*simulate)
            return cmd_simulate(g, sim_flags, grid, workers);
        return cmd_figures(g);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const json::exception& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
