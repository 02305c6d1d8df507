#include "cli_support.hpp"

#include "fas/fas.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace fascli {

using nlohmann::json;

namespace {

void check(int status)
{
    if (status == FAS_OK)
        return;
    const std::string message = fas_last_error();
    switch (status) {
    case FAS_ERR_DOMAIN:
    case FAS_ERR_INVALID_PARAMETER:
    case FAS_ERR_UNSUPPORTED:
        throw UsageError(message);
    default:
        throw std::runtime_error(message);
    }
}

struct ConfigHandle {
    fas_config* ptr = nullptr;
    ConfigHandle() = default;
    ConfigHandle(const ConfigHandle&) = delete;
    ConfigHandle& operator=(const ConfigHandle&) = delete;
    ~ConfigHandle() { fas_config_destroy(ptr); }
};

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

int family_code(const std::string& name)
{
    int code = 0;
    if (fas_parse_family(name.c_str(), &code) != FAS_OK)
        throw UsageError("unknown copula family '" + name + "'");
    return code;
}

void make_config(const std::string& family, double param, const PointConfig& p, ConfigHandle& out)
{
    check(fas_config_create(p.ports, p.m, p.mu, family_code(family), param, db_to_linear(p.snr_db),
                            db_to_linear(p.threshold_db), &out.ptr));
}

std::string format_g(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::int64_t as_port_count(double v)
{
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e12)
        throw UsageError("port count must be a positive integer, got " + format_g(v));
    return static_cast<std::int64_t>(v);
}

template <typename T>
T get(const json& j, const char* key)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed, const char* where)
{
    if (!j.is_object())
        throw UsageError(std::string(where) + ": expected a JSON object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
        if (!ok.count(key))
            throw UsageError(std::string(where) + ": unknown key '" + key + "'");
    }
}

std::vector<const char*> keys_for(SweepVariable v)
{
    switch (v) {
    case SweepVariable::AvgSnrDb: return {"snr_db"};
    case SweepVariable::Ports: return {"ports"};
    case SweepVariable::FadingM: return {"m"};
    case SweepVariable::DependenceParam: return {"alpha", "beta", "theta"};
    }
    return {};
}

void read_point(const json& j, PointConfig& p)
{
    if (j.contains("ports"))
        p.ports = as_port_count(get<double>(j, "ports"));
    if (j.contains("m"))
        p.m = get<double>(j, "m");
    if (j.contains("mu"))
        p.mu = get<double>(j, "mu");
    if (j.contains("snr_db"))
        p.snr_db = get<double>(j, "snr_db");
    if (j.contains("threshold_db"))
        p.threshold_db = get<double>(j, "threshold_db");
    if (j.contains("alpha"))
        p.alpha = get<double>(j, "alpha");
    if (j.contains("beta"))
        p.beta = get<double>(j, "beta");
    if (j.contains("theta"))
        p.theta = get<double>(j, "theta");
}

std::vector<double> read_values(const json& j, const char* where)
{
    if (j.contains("values")) {
        if (j.contains("start") || j.contains("stop") || j.contains("step"))
            throw UsageError(std::string(where) + ": give either values or start/stop/step");
        return get<std::vector<double>>(j, "values");
    }
    if (!j.contains("start") || !j.contains("stop"))
        throw UsageError(std::string(where) + ": needs values or start and stop");
    const double step = j.contains("step") ? get<double>(j, "step") : 1.0;
    return expand_range(get<double>(j, "start"), get<double>(j, "stop"), step);
}

// Runs fn(i) for i in [0, n) on a small thread pool; rethrows the first failure.
template <typename Fn>
void parallel_for(std::size_t n, Fn fn)
{
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mutex;
    auto body = [&] {
        try {
            for (std::size_t i = next++; i < n; i = next++)
                fn(i);
        } catch (...) {
            std::lock_guard lock(mutex);
            if (!failure)
                failure = std::current_exception();
            next = n;
        }
    };
    if (workers == 1) {
        body();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(body);
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace

std::string to_string(SweepVariable v)
{
    switch (v) {
    case SweepVariable::AvgSnrDb: return "avg_snr_db";
    case SweepVariable::Ports: return "ports";
    case SweepVariable::DependenceParam: return "dependence_param";
    case SweepVariable::FadingM: return "fading_m";
    }
    return "?";
}

SweepVariable parse_sweep_variable(const std::string& name)
{
    for (auto v : {SweepVariable::AvgSnrDb, SweepVariable::Ports, SweepVariable::DependenceParam,
                   SweepVariable::FadingM}) {
        if (to_string(v) == name)
            return v;
    }
    throw UsageError("unknown sweep variable '" + name +
                     "' (expected avg_snr_db, ports, dependence_param or fading_m)");
}

void PointConfig::set(SweepVariable v, double value)
{
    switch (v) {
    case SweepVariable::AvgSnrDb: snr_db = value; break;
    case SweepVariable::Ports: ports = as_port_count(value); break;
    case SweepVariable::FadingM: m = value; break;
    case SweepVariable::DependenceParam: alpha = beta = theta = value; break;
    }
}

double PointConfig::param_for(const std::string& family) const
{
    switch (family_code(family)) {
    case FAS_COPULA_FRANK: return alpha;
    case FAS_COPULA_CLAYTON: return beta;
    case FAS_COPULA_GUMBEL: return theta;
    default: return 0.0;
    }
}

void SweepSpec::validate() const
{
    if (values.empty())
        throw UsageError("sweep range is empty");
    for (double v : values) {
        if (!std::isfinite(v))
            throw UsageError("sweep values must be finite");
    }
    if (series_variable) {
        if (*series_variable == variable)
            throw UsageError("series variable must differ from the swept variable");
        if (series_values.empty())
            throw UsageError("series values are empty");
    }
    if (families.empty())
        throw UsageError("no copula families requested");
    std::set<std::string> seen;
    for (const auto& f : families) {
        family_code(f);
        if (!seen.insert(f).second)
            throw UsageError("family '" + f + "' listed twice");
    }
    if (mc_trials < 0)
        throw UsageError("trials must be non-negative");
    if (variable == SweepVariable::Ports)
        std::for_each(values.begin(), values.end(), as_port_count);
    if (series_variable == SweepVariable::Ports)
        std::for_each(series_values.begin(), series_values.end(), as_port_count);
}

std::vector<double> expand_range(double start, double stop, double step)
{
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || step <= 0.0)
        throw UsageError("range needs finite start/stop and a positive step");
    if (stop < start)
        throw UsageError("range stop is below start");
    std::vector<double> out;
    const double slack = 1e-9 * step;
    for (std::int64_t i = 0;; ++i) {
        const double v = start + static_cast<double>(i) * step;
        if (v > stop + slack)
            break;
        out.push_back(v);
        if (out.size() > 10000000)
            throw UsageError("range has too many points");
    }
    return out;
}

SweepSpec sweep_spec_from_json(const json& j)
{
    reject_unknown_keys(j,
                        {"sweep", "series", "families", "ports", "m", "mu", "snr_db", "threshold_db", "alpha",
                         "beta", "theta", "trials", "seed"},
                        "sweep config");
    SweepSpec spec;
    if (!j.contains("sweep"))
        throw UsageError("sweep config: missing 'sweep' section (or --var)");
    const json& sweep = j.at("sweep");
    reject_unknown_keys(sweep, {"variable", "start", "stop", "step", "values"}, "sweep");
    spec.variable = parse_sweep_variable(get<std::string>(sweep, "variable"));
    spec.values = read_values(sweep, "sweep");

    if (j.contains("series")) {
        const json& series = j.at("series");
        reject_unknown_keys(series, {"variable", "start", "stop", "step", "values"}, "series");
        spec.series_variable = parse_sweep_variable(get<std::string>(series, "variable"));
        spec.series_values = read_values(series, "series");
    }
    for (auto v : {std::optional<SweepVariable>(spec.variable), spec.series_variable}) {
        if (!v)
            continue;
        for (const char* key : keys_for(*v)) {
            if (j.contains(key))
                throw UsageError(std::string("'") + key + "' is fixed but also swept as " + to_string(*v));
        }
    }
    if (j.contains("families"))
        spec.families = get<std::vector<std::string>>(j, "families");
    for (auto& f : spec.families)
        std::transform(f.begin(), f.end(), f.begin(), [](unsigned char c) { return std::tolower(c); });
    read_point(j, spec.fixed);
    if (j.contains("trials"))
        spec.mc_trials = get<std::int64_t>(j, "trials");
    if (j.contains("seed"))
        spec.seed = get<std::uint64_t>(j, "seed");
    spec.validate();
    return spec;
}

json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
}

OutageCurve run_sweep(const SweepSpec& spec)
{
    spec.validate();
    const std::vector<double> series = spec.series_variable ? spec.series_values : std::vector<double>{0.0};

    OutageCurve curve;
    curve.header.push_back(to_string(spec.variable));
    auto label = [&](const std::string& family, double s) {
        return spec.series_variable ? family + "@" + to_string(*spec.series_variable) + "=" + format_g(s) : family;
    };
    for (double s : series)
        for (const auto& f : spec.families)
            curve.header.push_back(label(f, s));
    if (spec.mc_trials > 0) {
        for (double s : series) {
            for (const auto& f : spec.families) {
                curve.header.push_back("mc_" + label(f, s));
                curve.header.push_back("ci_" + label(f, s));
            }
        }
    }

    const std::size_t curves = series.size() * spec.families.size();
    curve.rows.assign(spec.values.size(), {});
    parallel_for(spec.values.size(), [&](std::size_t i) {
        std::vector<double> row(1 + curves * (spec.mc_trials > 0 ? 3 : 1));
        row[0] = spec.values[i];
        std::size_t c = 0;
        for (double s : series) {
            PointConfig p = spec.fixed;
            if (spec.series_variable)
                p.set(*spec.series_variable, s);
            p.set(spec.variable, spec.values[i]);
            for (const auto& f : spec.families) {
                ConfigHandle cfg;
                make_config(f, p.param_for(f), p, cfg);
                fas_outage_result res{};
                check(fas_outage_closed_form(cfg.ptr, &res));
                row[1 + c] = res.p_out;
                if (spec.mc_trials > 0) {
                    fas_sim_result sim{};
                    check(fas_simulate_outage(cfg.ptr, spec.mc_trials, spec.seed, 1, &sim));
                    row[1 + curves + 2 * c] = sim.p_hat;
                    row[2 + curves + 2 * c] = sim.ci_half_width;
                }
                ++c;
            }
        }
        curve.rows[i] = std::move(row);
    });
    return curve;
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9e", v);
    return buf;
}

std::string to_csv(const OutageCurve& curve)
{
    std::string out;
    for (std::size_t i = 0; i < curve.header.size(); ++i) {
        if (i)
            out += ',';
        out += curve.header[i];
    }
    out += '\n';
    for (const auto& row : curve.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

OutageCurve parse_csv(const std::string& text)
{
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream in(line);
        while (std::getline(in, cell, ','))
            cells.push_back(cell);
        if (!line.empty() && line.back() == ',')
            cells.emplace_back();
        return cells;
    };

    OutageCurve curve;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.empty())
        throw UsageError("CSV: missing header row");
    curve.header = split(line);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const auto cells = split(line);
        if (cells.size() != curve.header.size())
            throw UsageError("CSV line " + std::to_string(lineno) + ": expected " +
                             std::to_string(curve.header.size()) + " fields");
        std::vector<double> row;
        for (const auto& cell : cells) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || *end != '\0')
                throw UsageError("CSV line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            row.push_back(v);
        }
        curve.rows.push_back(std::move(row));
    }
    return curve;
}

void write_output(const std::string& path, const std::string& content)
{
    if (path.empty()) {
        std::cout << content << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

OutageQuery outage_query_from_json(const json& j)
{
    reject_unknown_keys(j,
                        {"family", "param", "alpha", "beta", "theta", "ports", "m", "mu", "snr_db", "threshold_db"},
                        "outage config");
    OutageQuery q;
    if (j.contains("family"))
        q.family = get<std::string>(j, "family");
    std::transform(q.family.begin(), q.family.end(), q.family.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    const int code = family_code(q.family);

    const char* own = code == FAS_COPULA_FRANK     ? "alpha"
                      : code == FAS_COPULA_CLAYTON ? "beta"
                      : code == FAS_COPULA_GUMBEL  ? "theta"
                                                   : nullptr;
    for (const char* key : {"alpha", "beta", "theta"}) {
        if (j.contains(key) && (own == nullptr || std::string(key) != own))
            throw UsageError(std::string("'") + key + "' does not apply to the " + q.family + " copula");
    }
    if (j.contains("param") && own && j.contains(own))
        throw UsageError(std::string("give either param or ") + own + ", not both");
    if (j.contains("param"))
        q.param = get<double>(j, "param");
    else if (own && j.contains(own))
        q.param = get<double>(j, own);
    else if (own)
        throw UsageError(std::string("the ") + q.family + " copula needs its dependence parameter (" + own + ")");

    PointConfig p;
    const json point = [&] {
        json copy = j;
        copy.erase("alpha");
        copy.erase("beta");
        copy.erase("theta");
        return copy;
    }();
    read_point(point, p);
    q.point = p;
    return q;
}

std::string run_outage(const OutageQuery& q)
{
    ConfigHandle cfg;
    make_config(q.family, q.param, q.point, cfg);
    fas_outage_result res{};
    check(fas_outage_closed_form(cfg.ptr, &res));

    std::string out;
    auto line = [&](const char* key, const std::string& value) { out += std::string(key) + "=" + value + "\n"; };
    line("family", q.family);
    line("param", format_g(q.param));
    line("ports", std::to_string(q.point.ports));
    line("m", format_g(q.point.m));
    line("mu", format_g(q.point.mu));
    line("snr_db", format_g(q.point.snr_db));
    line("threshold_db", format_g(q.point.threshold_db));
    line("avg_snr", format_g(db_to_linear(q.point.snr_db)));
    line("snr_threshold", format_g(db_to_linear(q.point.threshold_db)));
    line("gamma_hat", format_number(res.gamma_hat));
    line("p_out", format_number(res.p_out));
    return out;
}

std::vector<OutageQuery> simulation_grid(const PointConfig& base)
{
    const std::pair<const char*, std::vector<double>> families[] = {
        {"frank", {5.0, 15.0, 30.0}}, {"clayton", {5.0, 15.0, 30.0}}, {"gumbel", {2.0, 5.0, 30.0}}};
    std::vector<OutageQuery> out;
    for (const auto& [family, params] : families) {
        for (double param : params) {
            for (std::int64_t k : {2, 6, 12}) {
                OutageQuery q;
                q.family = family;
                q.param = param;
                q.point = base;
                q.point.ports = k;
                out.push_back(q);
            }
        }
    }
    return out;
}

std::vector<OutageQuery> simulation_configs_from_json(const json& j)
{
    if (!j.contains("configs"))
        return {outage_query_from_json(j)};
    reject_unknown_keys(j, {"configs"}, "simulate config");
    const json& list = j.at("configs");
    if (!list.is_array() || list.empty())
        throw UsageError("simulate config: 'configs' must be a non-empty array");
    std::vector<OutageQuery> out;
    for (const auto& item : list)
        out.push_back(outage_query_from_json(item));
    return out;
}

SimulationReport run_simulation(const std::vector<OutageQuery>& configs, std::int64_t trials, std::uint64_t seed,
                                unsigned workers)
{
    if (trials < 1)
        throw UsageError("trials must be at least 1");
    // Below this the normal approximation behind the 4-sigma check is meaningless.
    constexpr std::int64_t kMinAssertedTrials = 1000;

    SimulationReport report;
    report.csv = "family,param,ports,m,mu,snr_db,threshold_db,trials,seed,p_out,p_hat,ci_half_width,abs_diff,"
                 "tolerance,status\n";
    for (const auto& q : configs) {
        ConfigHandle cfg;
        make_config(q.family, q.param, q.point, cfg);
        fas_outage_result exact{};
        check(fas_outage_closed_form(cfg.ptr, &exact));
        fas_sim_result sim{};
        check(fas_simulate_outage(cfg.ptr, trials, seed, workers, &sim));

        const double diff = std::fabs(sim.p_hat - exact.p_out);
        const double tol = 4.0 * std::sqrt(exact.p_out * (1.0 - exact.p_out) / static_cast<double>(trials));
        std::string status = "n/a";
        if (trials >= kMinAssertedTrials) {
            status = diff <= tol ? "pass" : "fail";
            report.failures += diff > tol;
        }
        std::ostringstream row;
        row << q.family << ',' << format_g(q.param) << ',' << q.point.ports << ',' << format_g(q.point.m) << ','
            << format_g(q.point.mu) << ',' << format_g(q.point.snr_db) << ',' << format_g(q.point.threshold_db)
            << ',' << sim.trials << ',' << sim.seed << ',' << format_number(exact.p_out) << ','
            << format_number(sim.p_hat) << ',' << format_number(sim.ci_half_width) << ',' << format_number(diff)
            << ',' << format_number(tol) << ',' << status << '\n';
        report.csv += row.str();
    }
    return report;
}

std::vector<FigureSpec> builtin_figures()
{
    SweepSpec snr;
    snr.variable = SweepVariable::AvgSnrDb;
    snr.values = expand_range(0.0, 40.0, 1.0);
    snr.fixed = PointConfig{};

    std::vector<FigureSpec> figs;

    FigureSpec f1{"fig1", snr};
    f1.sweep.series_variable = SweepVariable::Ports;
    f1.sweep.series_values = {1, 3, 6, 9};
    figs.push_back(f1);

    FigureSpec f2{"fig2", snr};
    f2.sweep.series_variable = SweepVariable::DependenceParam;
    f2.sweep.series_values = {2, 10, 30};
    figs.push_back(f2);

    FigureSpec f3{"fig3", snr};
    f3.sweep.series_variable = SweepVariable::FadingM;
    f3.sweep.series_values = {0.5, 1, 2, 4};
    figs.push_back(f3);

    FigureSpec f4{"fig4", {}};
    f4.sweep.variable = SweepVariable::Ports;
    f4.sweep.values = expand_range(1.0, 100.0, 1.0);
    f4.sweep.series_variable = SweepVariable::AvgSnrDb;
    f4.sweep.series_values = {10, 20, 30};
    figs.push_back(f4);

    FigureSpec f5{"fig5", {}};
    f5.sweep.variable = SweepVariable::DependenceParam;
    f5.sweep.values = expand_range(1.0, 50.0, 1.0);
    f5.sweep.series_variable = SweepVariable::AvgSnrDb;
    f5.sweep.series_values = {10, 20, 30};
    figs.push_back(f5);

    return figs;
}

} // namespace fascli
