// chainfp: energy and carbon footprint models for PoW / PoS blockchain
// networks, plus adoption-curve and logistic emission projections.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chainfp/errors.hpp"
#include "chainfp/ingest.hpp"
#include "chainfp/pos_footprint.hpp"
#include "chainfp/pow_footprint.hpp"
#include "chainfp/projection.hpp"
#include "chainfp/scenario.hpp"
#include "chainfp/staker_equilibrium.hpp"
#include "chainfp/weighting.hpp"

namespace {

using namespace chainfp;

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// Report convention: energies and carbon with 4 decimals, USD amounts with
// 4 decimals, counts to the nearest integer.
std::string fmt4(double v) { return fmt("%.4f", v); }
std::string fmt_count(double v) { return fmt("%.0f", v); }
std::string fmt_full(double v) { return fmt("%.10g", v); }

/// Writes to --out path, or stdout for "-".
void write_output(const std::string& out_path, const std::string& content) {
    if (out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::trunc | std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open output file: " + out_path);
    }
    out << content;
}

/// Human-readable summary goes to stdout unless the CSV already owns it.
void write_summary(const std::string& out_path, const std::string& line) {
    if (out_path == "-") {
        std::cerr << line << '\n';
    } else {
        std::cout << line << '\n';
    }
}

struct CommonOpts {
    std::string scenario_path;
    std::string out_path = "-";
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool scenario_required = true) {
    auto* s = cmd->add_option("--scenario", opts.scenario_path, "Scenario JSON file");
    if (scenario_required) s->required();
    cmd->add_option("--out", opts.out_path, "Output path ('-' for stdout)");
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

// --- pow ---

int cmd_pow_footprint(const CommonOpts& opts, int jobs) {
    const auto scenario = Scenario::load(opts.scenario_path);
    const auto& inputs = scenario.pow_inputs();
    if (!scenario.datasets().network_series || !scenario.datasets().hardware) {
        throw ConfigError("pow needs datasets.network_series and datasets.hardware");
    }
    const auto series = load_network_series(*scenario.datasets().network_series);
    const auto catalog = load_hardware_catalog(*scenario.datasets().hardware);
    std::vector<std::string> warnings;
    const auto annual = annual_series_parallel(series, catalog, inputs, jobs, &warnings);
    for (const auto& w : warnings) {
        std::cerr << "warning: " << w << '\n';
    }

    if (opts.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& fp : annual) {
            rows.push_back({{"year", fp.year},
                            {"bound", to_string(fp.bound)},
                            {"energy_twh", fp.energy.value_in(EnergyUnit::TWh)},
                            {"carbon_mtco2", fp.carbon.value_in(CarbonUnit::MtCO2)}});
        }
        write_output(opts.out_path, rows.dump(2) + "\n");
        return 0;
    }
    std::ostringstream csv;
    csv << "year,bound,energy_twh,carbon_mtco2\n";
    for (const auto& fp : annual) {
        csv << fp.year << ',' << to_string(fp.bound) << ','
            << fmt4(fp.energy.value_in(EnergyUnit::TWh)) << ','
            << fmt4(fp.carbon.value_in(CarbonUnit::MtCO2)) << '\n';
    }
    write_output(opts.out_path, csv.str());
    return 0;
}

// --- pos ---

int cmd_pos_footprint(const CommonOpts& opts, std::optional<double> stake,
                      std::optional<double> price) {
    const auto scenario = Scenario::load(opts.scenario_path);
    PosScenarioConfig cfg = scenario.pos();
    if (stake) cfg.base.total_stake = *stake;
    if (price) cfg.base.token_price_usd = *price;
    const auto bounds = pos_bounds(cfg.lower_hardware, cfg.upper_hardware, cfg.base);

    const auto row = [](const char* bound, const PosResult& r) {
        return std::vector<std::string>{
            bound,
            fmt_count(r.validator_count),
            fmt4(r.annual_return_per_validator_usd),
            fmt4(r.staker_annual_cost_usd),
            fmt4(r.validators_per_node),
            fmt_count(r.node_count),
            fmt4(r.annual_energy.value_in(EnergyUnit::TWh)),
            fmt4(r.annual_carbon.value_in(CarbonUnit::MtCO2))};
    };

    if (opts.format == "json") {
        const auto obj = [](const PosResult& r) {
            return nlohmann::json{
                {"validator_count", r.validator_count},
                {"annual_return_per_validator_usd", r.annual_return_per_validator_usd},
                {"staker_annual_cost_usd", r.staker_annual_cost_usd},
                {"validators_per_node", r.validators_per_node},
                {"node_count", r.node_count},
                {"annual_energy_twh", r.annual_energy.value_in(EnergyUnit::TWh)},
                {"annual_carbon_mtco2", r.annual_carbon.value_in(CarbonUnit::MtCO2)}};
        };
        nlohmann::json out{{"lower", obj(bounds.lower)}, {"upper", obj(bounds.upper)}};
        write_output(opts.out_path, out.dump(2) + "\n");
        return 0;
    }
    std::ostringstream csv;
    csv << "bound,validator_count,annual_return_per_validator_usd,staker_annual_cost_usd,"
           "validators_per_node,node_count,annual_energy_twh,annual_carbon_mtco2\n";
    for (const auto& cells : {row("lower", bounds.lower), row("upper", bounds.upper)}) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) csv << ',';
            csv << cells[i];
        }
        csv << '\n';
    }
    write_output(opts.out_path, csv.str());
    return 0;
}

// --- project ---

int cmd_project(const CommonOpts& opts, const std::string& model) {
    const auto scenario = Scenario::load(opts.scenario_path);
    const auto& proj = scenario.projection();

    std::optional<EmissionTrajectory> trajectory;
    if (model == "adoption") {
        if (!proj.adoption) {
            throw ConfigError("scenario has no projection.adoption section");
        }
        if (!scenario.datasets().adoption) {
            throw ConfigError("adoption projection needs datasets.adoption");
        }
        const auto curves = load_adoption_curves(*scenario.datasets().adoption);
        const auto path = adoption_quantiles(curves, proj.adoption->quantile);
        trajectory = project_adoption_emissions(proj.adoption->baseline_annual_mtco2,
                                                proj.adoption->current_fraction, path,
                                                proj.horizon_years, proj.start_year);
    } else {
        if (!proj.logistic) {
            throw ConfigError("scenario has no projection.logistic section");
        }
        const auto params = reanchored(proj.logistic->params, proj.start_year);
        const double baseline_tx =
            proj.logistic->baseline_transactions.value_or(params.initial_value);
        trajectory = project_logistic_emissions(proj.logistic->baseline_annual_mtco2, baseline_tx,
                                                params, proj.horizon_years, proj.start_year);
    }

    const auto bands = temperature_rise(*trajectory, scenario.climate());
    const int start = trajectory->start_year();

    if (opts.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < trajectory->size(); ++i) {
            rows.push_back({{"year", start + static_cast<int>(i)},
                            {"annual_mtco2", trajectory->annual_mtco2()[i]},
                            {"cumulative_gtco2", trajectory->cumulative_gtco2()[i]},
                            {"dT_low_c", bands.low_c[i]},
                            {"dT_mean_c", bands.mean_c[i]},
                            {"dT_high_c", bands.high_c[i]}});
        }
        write_output(opts.out_path, rows.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "year,annual_mtco2,cumulative_gtco2,dT_low_c,dT_mean_c,dT_high_c\n";
        for (std::size_t i = 0; i < trajectory->size(); ++i) {
            csv << (start + static_cast<int>(i)) << ',' << fmt("%.6f", trajectory->annual_mtco2()[i])
                << ',' << fmt("%.6f", trajectory->cumulative_gtco2()[i]) << ','
                << fmt("%.6f", bands.low_c[i]) << ',' << fmt("%.6f", bands.mean_c[i]) << ','
                << fmt("%.6f", bands.high_c[i]) << '\n';
        }
        write_output(opts.out_path, csv.str());
    }

    const double threshold = scenario.threshold_c();
    const auto describe = [&](const std::vector<double>& series) {
        const auto crossing = crossing_year(series, start, threshold);
        return crossing ? fmt("%.1f", crossing->fractional_year) : std::string("never");
    };
    write_summary(opts.out_path, "threshold " + fmt("%.2f", threshold) +
                                     " C crossing: low=" + describe(bands.low_c) +
                                     " mean=" + describe(bands.mean_c) +
                                     " high=" + describe(bands.high_c));
    return 0;
}

// --- equilibrium ---

int cmd_equilibrium(const CommonOpts& opts, std::uint64_t seed, int batch, int max_steps,
                    const std::string& bound) {
    const auto scenario = Scenario::load(opts.scenario_path);
    PosScenarioConfig cfg = scenario.pos();
    SimConfig sim;
    sim.scenario = cfg.base;
    sim.scenario.hardware = bound == "upper" ? cfg.upper_hardware : cfg.lower_hardware;
    sim.entry_batch = batch;
    sim.max_steps = max_steps;
    sim.seed = seed;

    const auto outcome = simulate_equilibrium(sim);
    const double closed_form = closed_form_node_count(sim.scenario);
    const double rel_error =
        std::abs(static_cast<double>(outcome.node_count) - closed_form) / closed_form;

    if (opts.format == "json") {
        nlohmann::json out{{"node_count", outcome.node_count},
                           {"validators_assigned", outcome.validators_assigned},
                           {"total_energy_twh", outcome.total_energy.value_in(EnergyUnit::TWh)},
                           {"converged", outcome.converged},
                           {"steps_used", outcome.steps_used},
                           {"closed_form_node_count", closed_form},
                           {"relative_error", rel_error}};
        write_output(opts.out_path, out.dump(2) + "\n");
        return 0;
    }
    std::ostringstream csv;
    csv << "node_count,validators_assigned,total_energy_twh,converged,steps_used,"
           "closed_form_node_count,relative_error\n";
    csv << outcome.node_count << ',' << fmt4(outcome.validators_assigned) << ','
        << fmt("%.6f", outcome.total_energy.value_in(EnergyUnit::TWh)) << ','
        << (outcome.converged ? "true" : "false") << ',' << outcome.steps_used << ','
        << fmt4(closed_form) << ',' << fmt("%.3e", rel_error) << '\n';
    write_output(opts.out_path, csv.str());
    return 0;
}

// --- fit-logistic ---

int cmd_fit_logistic(const std::string& transactions_path, double carrying_capacity,
                     const std::string& out_path, const std::string& format) {
    const auto series = load_transaction_series(transactions_path);
    double max_obs = 0.0;
    for (const auto& row : series.rows()) max_obs = std::max(max_obs, row.transactions);
    if (!(carrying_capacity > max_obs)) {
        throw ConfigError("carrying capacity " + fmt_full(carrying_capacity) +
                          " must exceed the largest observation " + fmt_full(max_obs));
    }
    const auto fit = fit_logistic(series, carrying_capacity);

    if (format == "json") {
        nlohmann::json out{{"carrying_capacity", fit.params.carrying_capacity},
                           {"initial_value", fit.params.initial_value},
                           {"growth_rate", fit.params.growth_rate},
                           {"origin_year", fit.params.origin_year},
                           {"residual", fit.residual},
                           {"iterations", fit.iterations}};
        write_output(out_path, out.dump(2) + "\n");
        return 0;
    }
    std::ostringstream csv;
    csv << "initial_value,growth_rate,origin_year,residual,iterations\n";
    csv << fmt_full(fit.params.initial_value) << ',' << fmt_full(fit.params.growth_rate) << ','
        << fit.params.origin_year << ',' << fmt_full(fit.residual) << ',' << fit.iterations
        << '\n';
    write_output(out_path, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blockchain network energy, carbon and climate projection models"};
    app.require_subcommand(1);

    CommonOpts pow_opts;
    int pow_jobs = 1;
    auto* pow_cmd = app.add_subcommand("pow", "Annual PoW energy/carbon bounds from a day series");
    add_common(pow_cmd, pow_opts);
    pow_cmd->add_option("--jobs", pow_jobs, "Worker threads across years")
        ->check(CLI::PositiveNumber);

    CommonOpts pos_opts;
    std::optional<double> pos_stake, pos_price;
    auto* pos_cmd = app.add_subcommand("pos", "Staking-economics energy/carbon bounds");
    add_common(pos_cmd, pos_opts);
    pos_cmd->add_option("--stake", pos_stake, "Override total staked tokens");
    pos_cmd->add_option("--price", pos_price, "Override token price (USD)");

    CommonOpts project_opts;
    std::string project_model;
    auto* project_cmd =
        app.add_subcommand("project", "Emission trajectory and temperature-rise projection");
    add_common(project_cmd, project_opts);
    project_cmd->add_option("--model", project_model, "Growth model")
        ->required()
        ->check(CLI::IsMember({"adoption", "logistic"}));

    CommonOpts eq_opts;
    std::uint64_t eq_seed = 0;
    int eq_batch = 100;
    int eq_max_steps = 20000;
    std::string eq_bound = "lower";
    auto* eq_cmd =
        app.add_subcommand("equilibrium", "Staker entry simulation vs the closed-form node count");
    add_common(eq_cmd, eq_opts);
    eq_cmd->add_option("--seed", eq_seed, "Entry-order seed");
    eq_cmd->add_option("--batch", eq_batch, "Nodes entering per step")->check(CLI::PositiveNumber);
    eq_cmd->add_option("--max-steps", eq_max_steps, "Step budget")->check(CLI::PositiveNumber);
    eq_cmd->add_option("--bound", eq_bound, "Hardware scenario")
        ->check(CLI::IsMember({"lower", "upper"}));

    std::string fit_transactions;
    double fit_capacity = 0.0;
    std::string fit_out = "-";
    std::string fit_format = "csv";
    auto* fit_cmd = app.add_subcommand("fit-logistic", "Fit a logistic curve to transaction counts");
    fit_cmd->add_option("--transactions", fit_transactions, "Transaction CSV (year,transactions)")
        ->required();
    fit_cmd->add_option("--carrying-capacity", fit_capacity, "Fixed carrying capacity")
        ->required();
    fit_cmd->add_option("--out", fit_out, "Output path ('-' for stdout)");
    fit_cmd->add_option("--format", fit_format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (pow_cmd->parsed()) return cmd_pow_footprint(pow_opts, pow_jobs);
        if (pos_cmd->parsed()) return cmd_pos_footprint(pos_opts, pos_stake, pos_price);
        if (project_cmd->parsed()) return cmd_project(project_opts, project_model);
        if (eq_cmd->parsed()) {
            return cmd_equilibrium(eq_opts, eq_seed, eq_batch, eq_max_steps, eq_bound);
        }
        if (fit_cmd->parsed()) {
            return cmd_fit_logistic(fit_transactions, fit_capacity, fit_out, fit_format);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
