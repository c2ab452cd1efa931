// Command-line front end: analytic sweeps, mobility-simulation campaigns,
// hexagonal-layout evaluation, and QoS-driven density planning. All output
// is CSV; '#' lines are metadata.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mmblock/analytic_los.hpp"
#include "mmblock/analytic_nlos.hpp"
#include "mmblock/config.hpp"
#include "mmblock/hex_grid.hpp"
#include "mmblock/mobility_sim.hpp"
#include "mmblock/planner.hpp"
#include "mmblock/quadrature.hpp"

namespace {

constexpr const char* kSchemaVersion = "1";

using mmblock::SystemParams;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt(*v) : "undefined";
}

struct SweepSpec {
    std::string key;
    double min = 0, max = 0;
    int count = 1;
    bool log_scale = false;
};

SweepSpec parse_sweep(const std::string& text) {
    SweepSpec s;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("sweep: expected key=min:max:count[:log]");
    s.key = text.substr(0, eq);
    if (!mmblock::is_param_key(s.key))
        throw std::invalid_argument("sweep: unknown parameter '" + s.key + "'");
    std::string rest = text.substr(eq + 1);
    std::replace(rest.begin(), rest.end(), ':', ' ');
    std::istringstream in(rest);
    std::string scale = "lin";
    if (!(in >> s.min >> s.max >> s.count))
        throw std::invalid_argument("sweep: expected key=min:max:count[:log]");
    in >> scale;
    if (s.count < 1) throw std::invalid_argument("sweep: count must be >= 1");
    if (scale == "log")
        s.log_scale = true;
    else if (scale != "lin")
        throw std::invalid_argument("sweep: scale must be lin or log");
    if (s.log_scale && (s.min <= 0 || s.max <= 0))
        throw std::invalid_argument("sweep: log scale requires positive bounds");
    return s;
}

double sweep_value(const SweepSpec& s, int i) {
    if (s.count == 1) return s.min;
    const double f = static_cast<double>(i) / (s.count - 1);
    if (s.log_scale)
        return s.min * std::pow(s.max / s.min, f);
    return s.min + f * (s.max - s.min);
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "flat key=value config file");
    cmd->add_option("--out", o.out_path, "output CSV path (default stdout)");
    cmd->add_option("--set", o.overrides, "parameter override key=value (CLI units)");
    cmd->add_option("--seed", o.seed, "RNG seed (randomized commands)");
    cmd->add_option("--threads", o.threads, "worker threads");
}

/// Params from config file plus --set overrides; leftover config keys
/// returned for subcommand use (sweep, model, ...).
SystemParams resolve_params(const CommonOpts& o, mmblock::ConfigMap& leftover) {
    mmblock::ConfigMap cfg;
    if (!o.config_path.empty()) cfg = mmblock::load_config_file(o.config_path);
    SystemParams p = mmblock::params_from_config(cfg);
    leftover = cfg;
    for (const auto& ov : o.overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value");
        mmblock::set_param_cli(p, ov.substr(0, eq),
                               std::stod(ov.substr(eq + 1)));
    }
    p.validate();
    return p;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open output file: " + path);
    return file;
}

std::string param_echo(const SystemParams& p) {
    std::ostringstream os;
    os << fmt(mmblock::get_param_cli(p, "bs_density_lambda_T")) << ','
       << fmt(p.blocker_density_lambda_B) << ','
       << fmt(mmblock::get_param_cli(p, "self_block_angle_omega")) << ','
       << fmt(mmblock::get_param_cli(p, "static_density_lambda_S")) << ','
       << fmt(p.los_range_R);
    return os.str();
}

constexpr const char* kParamCols =
    "lambda_T_per_km2,lambda_B_per_m2,omega_deg,lambda_S_per_km2,R_m";

int cmd_analyze(const CommonOpts& o, const std::string& model_opt,
                const std::string& sweep_opt) {
    mmblock::ConfigMap leftover;
    SystemParams base = resolve_params(o, leftover);
    std::string model = model_opt;
    if (model.empty() && leftover.count("model")) model = leftover["model"];
    if (model.empty()) model = "los";
    std::string sweep_text = sweep_opt;
    if (sweep_text.empty() && leftover.count("sweep"))
        sweep_text = leftover["sweep"];
    if (model != "los" && model != "nlos" && model != "open-park")
        throw std::invalid_argument("model must be los, nlos, or open-park");
    if (model == "open-park") base.static_density_lambda_S = 0.0;
    const bool nlos = model == "nlos";

    SweepSpec sweep;
    if (!sweep_text.empty()) {
        sweep = parse_sweep(sweep_text);
    } else {
        sweep.key = "bs_density_lambda_T";
        sweep.min = sweep.max = mmblock::get_param_cli(base, sweep.key);
        sweep.count = 1;
    }

    std::vector<std::string> rows(static_cast<size_t>(sweep.count));
    auto eval_point = [&](int i) {
        SystemParams p = base;
        mmblock::set_param_cli(p, sweep.key, sweep_value(sweep, i));
        if (model == "open-park") p.static_density_lambda_S = 0.0;
        const mmblock::DerivedConstants c = mmblock::derive(p);
        std::ostringstream os;
        os << kSchemaVersion << ',' << model << ',' << param_echo(p) << ',';
        if (nlos) {
            const mmblock::NlosReport r = mmblock::nlos_report(c);
            os << fmt(r.coverage_prob) << ',' << fmt(r.block_prob_uncond) << ','
               << fmt_opt(r.block_prob_cond) << ',' << fmt_opt(r.exp_duration_s)
               << ',' << fmt(r.a_tilde) << ',' << fmt(r.q_tilde) << ','
               << fmt(c.R_tilde);
        } else {
            const mmblock::LosReport r = mmblock::los_report(c);
            os << fmt(r.coverage_prob) << ',' << fmt(r.block_prob_uncond) << ','
               << fmt_opt(r.block_prob_cond) << ',' << fmt_opt(r.exp_duration_s)
               << ',' << fmt_opt(r.exp_frequency_hz) << ','
               << fmt(r.a_integral) << ',' << fmt(r.a_prime);
        }
        rows[static_cast<size_t>(i)] = os.str();
    };
    const int threads = std::max(1, o.threads);
    if (threads == 1 || sweep.count == 1) {
        for (int i = 0; i < sweep.count; ++i) eval_point(i);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (int i = t; i < sweep.count; i += threads) eval_point(i);
            });
        for (auto& th : pool) th.join();
    }

    std::ofstream file;
    std::ostream& out = open_out(o.out_path, file);
    out << "schema_version,model," << kParamCols
        << ",coverage_prob,block_prob_uncond,block_prob_cond,exp_duration_s,";
    if (nlos)
        out << "a_tilde,q_tilde,R_tilde_m\n";
    else
        out << "exp_frequency_hz,a_integral,a_prime\n";
    for (const auto& row : rows) out << row << '\n';
    return 0;
}

int cmd_simulate(const CommonOpts& o, mmblock::SimConfig sim, bool trace,
                 const std::string& mode) {
    mmblock::ConfigMap leftover;
    SystemParams p = resolve_params(o, leftover);
    p.static_density_lambda_S = 0.0;  // open-park simulation only
    if (mode == "geometric-disc")
        sim.blockage_mode = mmblock::BlockageMode::kGeometricDisc;
    else if (mode != "exponential-mark")
        throw std::invalid_argument(
            "mode must be exponential-mark or geometric-disc");
    std::uint64_t seed;
    bool auto_seed = !o.seed.has_value();
    if (auto_seed)
        seed = std::random_device{}();
    else
        seed = *o.seed;
    sim.rng_seed = seed;
    sim.threads = o.threads;

    const mmblock::SimResult res = mmblock::run_open_park_sim(p, sim, trace);
    const mmblock::DerivedConstants c = mmblock::derive(p);
    const mmblock::LosReport ref = mmblock::los_report(c);

    std::ofstream file;
    std::ostream& out = open_out(o.out_path, file);
    out << "# seed=" << seed << (auto_seed ? " (auto)" : "") << '\n';
    out << "schema_version,row_type,run_id,run_seed,num_bs_in_coverage,"
           "blocked_fraction,event_rate_hz,mean_event_duration_s,num_events,"
           "crossing_rate_hz\n";
    for (const auto& r : res.runs)
        out << kSchemaVersion << ",run," << r.run_id << ',' << r.seed << ','
            << r.num_bs_in_coverage << ',' << fmt(r.blocked_fraction) << ','
            << fmt(r.event_rate) << ',' << fmt(r.mean_event_duration) << ','
            << r.num_events << ',' << fmt(r.crossing_rate) << '\n';
    auto summary = [&](const mmblock::SimEstimate& e,
                       const std::optional<double>& analytic) {
        out << kSchemaVersion << ",summary," << e.statistic << ','
            << fmt(e.point_estimate) << ',' << fmt(e.std_dev) << ','
            << fmt(e.std_error) << ',' << e.num_runs << ','
            << fmt_opt(analytic) << '\n';
    };
    out << "# summary columns: schema_version,row_type,statistic,"
           "point_estimate,std_dev,std_error,num_runs,analytic_reference\n";
    summary(res.block_prob, ref.block_prob_cond);
    summary(res.frequency, ref.exp_frequency_hz);
    summary(res.duration, ref.exp_duration_s);
    if (trace) {
        out << "# trace: time_s,link_id,blocked (link_id -1 = all links)\n";
        for (const auto& ev : res.trace)
            out << "# trace," << fmt(ev.time) << ',' << ev.link_id << ','
                << (ev.blocked ? 1 : 0) << '\n';
    }
    return 0;
}

int cmd_hex(const CommonOpts& o, double d_opt, double density_opt,
            const std::string& density_sweep, const std::string& mode,
            int grid_n) {
    mmblock::ConfigMap leftover;
    SystemParams p = resolve_params(o, leftover);
    mmblock::SelfBlockMode m;
    if (mode == "no-self")
        m = mmblock::SelfBlockMode::kNone;
    else if (mode == "worst-case-self")
        m = mmblock::SelfBlockMode::kWorstCase;
    else
        throw std::invalid_argument("mode must be no-self or worst-case-self");

    std::vector<double> d_values;
    if (!density_sweep.empty()) {
        if (d_opt > 0 || density_opt > 0)
            throw std::invalid_argument(
                "hex: --density-sweep excludes --d and --density");
        SweepSpec s = parse_sweep("bs_density_lambda_T=" + density_sweep);
        for (int i = 0; i < s.count; ++i)
            d_values.push_back(mmblock::d_for_density(sweep_value(s, i) * 1e-6));
    } else {
        if ((d_opt <= 0) == (density_opt <= 0))
            throw std::invalid_argument(
                "hex: give exactly one of --d, --density, --density-sweep");
        d_values.push_back(d_opt > 0 ? d_opt
                                     : mmblock::d_for_density(density_opt * 1e-6));
    }
    const mmblock::DerivedConstants c = mmblock::derive(p);
    std::ofstream file;
    std::ostream& out = open_out(o.out_path, file);
    out << "# matched density = 1/cell_area, cell_area = (3*sqrt(3)/2)*d^2\n";
    out << "schema_version,d_m,matched_density_per_km2,mode,omega_deg,"
           "lambda_B_per_m2,R_m,block_prob,max_self_blocked_bs\n";
    for (double d : d_values) {
        const mmblock::HexLayout layout = mmblock::build_layout(d);
        const mmblock::HexBlockageResult r = mmblock::hex_blockage_prob(
            layout, c, p.self_block_angle_omega, m, grid_n);
        out << kSchemaVersion << ',' << fmt(d) << ','
            << fmt(1e6 / mmblock::cell_area(d)) << ',' << mode << ','
            << fmt(mmblock::get_param_cli(p, "self_block_angle_omega")) << ','
            << fmt(p.blocker_density_lambda_B) << ',' << fmt(p.los_range_R)
            << ',' << fmt(r.block_prob) << ',' << r.max_excluded << '\n';
    }
    return 0;
}

int cmd_plan_heights(const CommonOpts& o, const std::string& sweep_text,
                     double target) {
    mmblock::ConfigMap leftover;
    SystemParams p = resolve_params(o, leftover);
    SweepSpec s = parse_sweep("height_bs_hT=" + sweep_text);
    std::vector<double> heights;
    for (int i = 0; i < s.count; ++i) heights.push_back(sweep_value(s, i));
    const auto curve = mmblock::height_density_tradeoff(p, target, heights);
    std::ofstream file;
    std::ostream& out = open_out(o.out_path, file);
    out << "schema_version,height_bs_m,lambda_B_per_m2,target_block_prob,"
           "required_density_per_km2\n";
    for (const auto& pt : curve)
        out << kSchemaVersion << ',' << fmt(pt.height_bs_m) << ','
            << fmt(p.blocker_density_lambda_B) << ',' << fmt(target) << ','
            << fmt(pt.required_density * 1e6) << '\n';
    return 0;
}

int cmd_plan(const CommonOpts& o, const std::string& qos_path,
             const std::string& model_name) {
    mmblock::ConfigMap leftover;
    SystemParams p = resolve_params(o, leftover);
    mmblock::PlanModel model;
    if (model_name == "open-park")
        model = mmblock::PlanModel::kOpenPark;
    else if (model_name == "urban-los")
        model = mmblock::PlanModel::kUrbanLos;
    else if (model_name == "urban-nlos")
        model = mmblock::PlanModel::kUrbanNlos;
    else
        throw std::invalid_argument(
            "model must be open-park, urban-los, or urban-nlos");

    std::ifstream qos(qos_path);
    if (!qos) throw std::invalid_argument("cannot open QoS table: " + qos_path);
    std::ofstream file;
    std::ostream& out = open_out(o.out_path, file);
    out << "schema_version,application,reliability_pct,latency_ms,caching,"
           "required_density_per_km2,feasible,binding_constraint,"
           "achieved_block_prob,achieved_duration_s\n";
    std::string line;
    bool first = true;
    while (std::getline(qos, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (first && line.find("application") != std::string::npos) {
            first = false;
            continue;  // header row
        }
        first = false;
        std::istringstream in(line);
        std::string app, rel_s, lat_s, cache_s;
        if (!std::getline(in, app, ',') || !std::getline(in, rel_s, ',') ||
            !std::getline(in, lat_s, ',') || !std::getline(in, cache_s))
            throw std::invalid_argument("QoS row: expected "
                                        "application,reliability_pct,latency_ms,caching");
        mmblock::QosTarget t;
        t.application = app;
        t.reliability = std::stod(rel_s) / 100.0;
        t.max_latency_s = std::stod(lat_s) / 1000.0;
        t.caching_allowed = cache_s == "yes" || cache_s == "true" ||
                            cache_s == "1";
        const mmblock::PlanResult r = mmblock::plan_density(p, t, model);
        out << kSchemaVersion << ',' << app << ',' << fmt(t.reliability * 100)
            << ',' << fmt(t.max_latency_s * 1000) << ','
            << (t.caching_allowed ? "yes" : "no") << ','
            << fmt(r.required_density * 1e6) << ','
            << (r.feasible ? "yes" : "no") << ','
            << (r.binding == mmblock::BindingConstraint::kReliability
                    ? "reliability"
                    : "duration")
            << ',' << fmt(r.achieved_block_prob) << ','
            << fmt(r.achieved_duration_s) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mmWave multi-BS blockage model: analytics, simulation, "
                 "hexagonal layout, and density planning"};
    app.require_subcommand(1);

    CommonOpts an_opts, sim_opts_c, hex_opts, plan_opts;
    std::string an_model, an_sweep;
    auto* analyze = app.add_subcommand("analyze", "closed-form parameter sweep");
    add_common(analyze, an_opts);
    analyze->add_option("--model", an_model, "los | nlos | open-park");
    analyze->add_option("--sweep", an_sweep, "key=min:max:count[:log|lin]");

    mmblock::SimConfig sim;
    sim.num_runs = 1000;
    sim.run_duration = 600.0;
    bool trace = false;
    std::string sim_mode = "exponential-mark";
    double single_r = 0.0;
    auto* simulate = app.add_subcommand("simulate", "random-waypoint mobility campaign");
    add_common(simulate, sim_opts_c);
    simulate->add_option("--runs", sim.num_runs, "replication count");
    simulate->add_option("--duration", sim.run_duration, "seconds per run");
    simulate->add_option("--arena", sim.arena_side, "square side [m]");
    simulate->add_option("--warmup", sim.warmup, "discarded seconds");
    simulate->add_option("--mode", sim_mode, "exponential-mark | geometric-disc");
    simulate->add_option("--wB", sim.blocker_diameter_wB, "blocker diameter [m]");
    simulate->add_option("--time-step", sim.time_step, "geometric-disc step [s]");
    simulate->add_option("--single-link-r", single_r,
                         "single fixed BS at this distance [m]");
    simulate->add_flag("--trace", trace, "dump per-event log");

    double hex_d = 0.0, hex_density = 0.0;
    std::string hex_mode = "no-self", hex_sweep;
    int hex_grid_n = 128;
    auto* hex = app.add_subcommand("hex", "hexagonal layout blockage");
    add_common(hex, hex_opts);
    hex->add_option("--d", hex_d, "layout parameter d [m]");
    hex->add_option("--density", hex_density, "target BS density [BS/km^2]");
    hex->add_option("--density-sweep", hex_sweep,
                    "density sweep min:max:count[:log|lin] [BS/km^2]");
    hex->add_option("--mode", hex_mode, "no-self | worst-case-self");
    hex->add_option("--grid-n", hex_grid_n, "UE-position grid resolution");

    std::string qos_path, plan_model = "open-park", height_sweep;
    double plan_target = 1e-5;
    auto* plan = app.add_subcommand("plan", "QoS-table density planning");
    add_common(plan, plan_opts);
    plan->add_option("--qos", qos_path, "QoS table CSV");
    plan->add_option("--model", plan_model, "open-park | urban-los | urban-nlos");
    plan->add_option("--height-sweep", height_sweep,
                     "BS height sweep min:max:count[:log|lin] [m]");
    plan->add_option("--target-block-prob", plan_target,
                     "blockage-probability target for the height sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(an_opts, an_model, an_sweep);
        if (simulate->parsed()) {
            if (single_r > 0) sim.fixed_single_link_r = single_r;
            return cmd_simulate(sim_opts_c, sim, trace, sim_mode);
        }
        if (hex->parsed())
            return cmd_hex(hex_opts, hex_d, hex_density, hex_sweep, hex_mode,
                           hex_grid_n);
        if (plan->parsed()) {
            if (!height_sweep.empty())
                return cmd_plan_heights(plan_opts, height_sweep, plan_target);
            if (qos_path.empty())
                throw std::invalid_argument(
                    "plan: give --qos or --height-sweep");
            return cmd_plan(plan_opts, qos_path, plan_model);
        }
    } catch (const mmblock::QuadratureError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
