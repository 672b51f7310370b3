#include "chainfp/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <string>

#include <json.hpp>

#include "chainfp/errors.hpp"
#include "chainfp/weighting.hpp"

namespace chainfp {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
        if (!ok.count(key)) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
}

double get_double(const json& obj, const std::string& where, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
        throw ConfigError(where + ": '" + std::string(key) + "' must be a number");
    }
    return it->get<double>();
}

double get_double_or(const json& obj, const std::string& where, const char* key,
                     double fallback) {
    return obj.contains(key) ? get_double(obj, where, key) : fallback;
}

int get_int(const json& obj, const std::string& where, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(where + ": '" + std::string(key) + "' must be an integer");
    }
    return v.get<int>();
}

std::map<int, double> get_year_map(const json& obj, const std::string& where, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) return {};
    if (!it->is_object()) {
        throw ConfigError(where + ": '" + std::string(key) + "' must map years to numbers");
    }
    std::map<int, double> result;
    for (const auto& [year_str, value] : it->items()) {
        int year = 0;
        try {
            std::size_t pos = 0;
            year = std::stoi(year_str, &pos);
            if (pos != year_str.size()) throw std::invalid_argument(year_str);
        } catch (const std::exception&) {
            throw ConfigError(where + "." + key + ": '" + year_str + "' is not a year");
        }
        if (!value.is_number()) {
            throw ConfigError(where + "." + key + "['" + year_str + "'] must be a number");
        }
        result[year] = value.get<double>();
    }
    return result;
}

HardwareSpec parse_hardware(const json& obj, const std::string& where) {
    require_keys(obj, where, {"name", "power_w", "price_usd", "efficiency_j_per_mh",
                              "release_year"});
    HardwareSpec hw;
    if (!obj.contains("name") || !obj.at("name").is_string()) {
        throw ConfigError(where + ": 'name' must be a string");
    }
    hw.name = obj.at("name").get<std::string>();
    hw.power_w = get_double(obj, where, "power_w");
    hw.price_usd = get_double(obj, where, "price_usd");
    if (obj.contains("efficiency_j_per_mh")) {
        hw.efficiency_j_per_mh = get_double(obj, where, "efficiency_j_per_mh");
    }
    hw.release_year = get_int(obj, where, "release_year", 0);
    try {
        validate(hw);
    } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return hw;
}

HardwareSpec default_lower_hardware() {
    return {"jetson_tx2", 5.0, 490.64, std::nullopt, 2017};
}

HardwareSpec default_upper_hardware() {
    return {"xeon_e2246g_server", 81.0, 2181.72, std::nullopt, 2019};
}

WeightedFactors default_weighted() {
    return {MoneyRate(0.1783, MoneyUnit::UsdPerKwh), MoneyRate(39.5777, MoneyUnit::UsdPerMonth),
            EmissionFactor(0.4323)};
}

std::filesystem::path resolve_dataset(const json& obj, const char* key,
                                      const std::filesystem::path& base_dir) {
    if (!obj.at(key).is_string()) {
        throw ConfigError(std::string("datasets.") + key + " must be a path string");
    }
    std::filesystem::path path = obj.at(key).get<std::string>();
    if (path.is_relative()) {
        path = base_dir / path;
    }
    path = path.lexically_normal();
    if (!std::filesystem::exists(path)) {
        throw ConfigError(std::string("datasets.") + key + ": file does not exist: " +
                          path.string());
    }
    return path;
}

}  // namespace

const AnnualSeriesInputs& Scenario::pow_inputs() const {
    if (!pow_) {
        throw ConfigError("scenario has no 'pow' section");
    }
    return *pow_;
}

const PosScenarioConfig& Scenario::pos() const {
    if (!pos_) {
        throw ConfigError("scenario has no 'pos' section");
    }
    return *pos_;
}

Scenario Scenario::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw ConfigError("cannot open scenario file: " + file.string());
    }
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(file.string() + ": " + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError(file.string() + ": scenario must be a JSON object");
    }
    require_keys(root, "scenario", {"datasets", "pow", "pos", "projection", "climate"});

    Scenario scenario;
    const auto base_dir = file.has_parent_path() ? file.parent_path() : std::filesystem::path(".");

    if (root.contains("datasets")) {
        const auto& ds = root.at("datasets");
        require_keys(ds, "datasets",
                     {"country_profiles", "network_series", "hardware", "adoption",
                      "transactions"});
        if (ds.contains("country_profiles"))
            scenario.datasets_.country_profiles = resolve_dataset(ds, "country_profiles", base_dir);
        if (ds.contains("network_series"))
            scenario.datasets_.network_series = resolve_dataset(ds, "network_series", base_dir);
        if (ds.contains("hardware"))
            scenario.datasets_.hardware = resolve_dataset(ds, "hardware", base_dir);
        if (ds.contains("adoption"))
            scenario.datasets_.adoption = resolve_dataset(ds, "adoption", base_dir);
        if (ds.contains("transactions"))
            scenario.datasets_.transactions = resolve_dataset(ds, "transactions", base_dir);
    }

    if (root.contains("pow")) {
        const auto& pow = root.at("pow");
        require_keys(pow, "pow",
                     {"electricity_price_by_year", "emission_factor_by_year",
                      "emission_factor_lower_by_year", "emission_factor_upper_by_year"});
        const auto prices = get_year_map(pow, "pow", "electricity_price_by_year");
        if (prices.empty()) {
            throw ConfigError("pow.electricity_price_by_year must list at least one year");
        }
        const auto shared = get_year_map(pow, "pow", "emission_factor_by_year");
        const auto lower = get_year_map(pow, "pow", "emission_factor_lower_by_year");
        const auto upper = get_year_map(pow, "pow", "emission_factor_upper_by_year");
        if (!shared.empty() && (!lower.empty() || !upper.empty())) {
            throw ConfigError(
                "pow: give either emission_factor_by_year or the lower/upper pair, not both");
        }
        if (shared.empty() && (lower.empty() || upper.empty())) {
            throw ConfigError(
                "pow: emission factors missing; give emission_factor_by_year or both "
                "emission_factor_lower_by_year and emission_factor_upper_by_year");
        }
        AnnualSeriesInputs inputs;
        for (const auto& [year, price] : prices) {
            inputs.electricity_price_by_year.emplace(year, MoneyRate(price, MoneyUnit::UsdPerKwh));
        }
        try {
            const auto& lo = shared.empty() ? lower : shared;
            const auto& up = shared.empty() ? upper : shared;
            for (const auto& [year, f] : lo) {
                inputs.emission_factor_lower_by_year.emplace(year, EmissionFactor(f));
            }
            for (const auto& [year, f] : up) {
                inputs.emission_factor_upper_by_year.emplace(year, EmissionFactor(f));
            }
        } catch (const DomainError& e) {
            throw ConfigError(std::string("pow emission factors: ") + e.what());
        }
        scenario.pow_ = std::move(inputs);
    }

    if (root.contains("pos")) {
        const auto& pos = root.at("pos");
        require_keys(pos, "pos",
                     {"total_stake", "stake_per_validator", "token_price_usd", "reward_constant",
                      "depreciation_years", "electricity_price_usd_per_kwh",
                      "internet_price_usd_per_month", "emission_factor_kgco2_per_kwh",
                      "lower_hardware", "upper_hardware"});
        PosScenarioConfig cfg;
        cfg.base.total_stake = get_double_or(pos, "pos", "total_stake", cfg.base.total_stake);
        cfg.base.stake_per_validator =
            get_double_or(pos, "pos", "stake_per_validator", cfg.base.stake_per_validator);
        cfg.base.token_price_usd =
            get_double_or(pos, "pos", "token_price_usd", cfg.base.token_price_usd);
        cfg.base.reward_constant =
            get_double_or(pos, "pos", "reward_constant", cfg.base.reward_constant);
        cfg.base.depreciation_years =
            get_double_or(pos, "pos", "depreciation_years", cfg.base.depreciation_years);

        const bool has_explicit = pos.contains("electricity_price_usd_per_kwh") ||
                                  pos.contains("internet_price_usd_per_month") ||
                                  pos.contains("emission_factor_kgco2_per_kwh");
        if (has_explicit) {
            if (!pos.contains("electricity_price_usd_per_kwh") ||
                !pos.contains("internet_price_usd_per_month") ||
                !pos.contains("emission_factor_kgco2_per_kwh")) {
                throw ConfigError(
                    "pos: explicit weighted factors need all three of electricity/internet/"
                    "emission values");
            }
            try {
                cfg.base.weighted = {
                    MoneyRate(get_double(pos, "pos", "electricity_price_usd_per_kwh"),
                              MoneyUnit::UsdPerKwh),
                    MoneyRate(get_double(pos, "pos", "internet_price_usd_per_month"),
                              MoneyUnit::UsdPerMonth),
                    EmissionFactor(get_double(pos, "pos", "emission_factor_kgco2_per_kwh"))};
            } catch (const DomainError& e) {
                throw ConfigError(std::string("pos weighted factors: ") + e.what());
            }
        } else if (scenario.datasets_.country_profiles) {
            cfg.base.weighted =
                weighted_factors(load_country_profiles(*scenario.datasets_.country_profiles));
        } else {
            cfg.base.weighted = default_weighted();
        }

        cfg.lower_hardware = pos.contains("lower_hardware")
                                 ? parse_hardware(pos.at("lower_hardware"), "pos.lower_hardware")
                                 : default_lower_hardware();
        cfg.upper_hardware = pos.contains("upper_hardware")
                                 ? parse_hardware(pos.at("upper_hardware"), "pos.upper_hardware")
                                 : default_upper_hardware();
        cfg.base.hardware = cfg.lower_hardware;
        scenario.pos_ = std::move(cfg);
    }

    if (root.contains("projection")) {
        const auto& proj = root.at("projection");
        require_keys(proj, "projection",
                     {"start_year", "horizon_years", "adoption", "logistic"});
        scenario.projection_.start_year =
            get_int(proj, "projection", "start_year", scenario.projection_.start_year);
        scenario.projection_.horizon_years =
            get_int(proj, "projection", "horizon_years", scenario.projection_.horizon_years);
        if (scenario.projection_.horizon_years < 1) {
            throw ConfigError("projection.horizon_years must be >= 1");
        }
        if (proj.contains("adoption")) {
            const auto& ad = proj.at("adoption");
            require_keys(ad, "projection.adoption",
                         {"quantile", "baseline_annual_mtco2", "current_fraction"});
            AdoptionProjectionConfig cfg;
            cfg.quantile = get_double_or(ad, "projection.adoption", "quantile", 0.5);
            cfg.baseline_annual_mtco2 =
                get_double(ad, "projection.adoption", "baseline_annual_mtco2");
            cfg.current_fraction = get_double(ad, "projection.adoption", "current_fraction");
            scenario.projection_.adoption = cfg;
        }
        if (proj.contains("logistic")) {
            const auto& lg = proj.at("logistic");
            require_keys(lg, "projection.logistic",
                         {"carrying_capacity", "initial_value", "growth_rate", "origin_year",
                          "baseline_annual_mtco2", "baseline_transactions"});
            LogisticProjectionConfig cfg;
            cfg.params.carrying_capacity = get_double_or(lg, "projection.logistic",
                                                         "carrying_capacity",
                                                         cfg.params.carrying_capacity);
            cfg.params.initial_value =
                get_double_or(lg, "projection.logistic", "initial_value", cfg.params.initial_value);
            cfg.params.growth_rate =
                get_double_or(lg, "projection.logistic", "growth_rate", cfg.params.growth_rate);
            cfg.params.origin_year =
                get_int(lg, "projection.logistic", "origin_year", cfg.params.origin_year);
            cfg.baseline_annual_mtco2 =
                get_double(lg, "projection.logistic", "baseline_annual_mtco2");
            if (lg.contains("baseline_transactions")) {
                cfg.baseline_transactions =
                    get_double(lg, "projection.logistic", "baseline_transactions");
            }
            try {
                validate(cfg.params);
            } catch (const DomainError& e) {
                throw ConfigError(std::string("projection.logistic: ") + e.what());
            }
            scenario.projection_.logistic = cfg;
        }
    }

    if (root.contains("climate")) {
        const auto& cl = root.at("climate");
        require_keys(cl, "climate",
                     {"lambda_low_c_per_gtco2", "lambda_mean_c_per_gtco2",
                      "lambda_high_c_per_gtco2", "threshold_c"});
        scenario.climate_.lambda_low_c_per_gtco2 = get_double_or(
            cl, "climate", "lambda_low_c_per_gtco2", scenario.climate_.lambda_low_c_per_gtco2);
        scenario.climate_.lambda_mean_c_per_gtco2 = get_double_or(
            cl, "climate", "lambda_mean_c_per_gtco2", scenario.climate_.lambda_mean_c_per_gtco2);
        scenario.climate_.lambda_high_c_per_gtco2 = get_double_or(
            cl, "climate", "lambda_high_c_per_gtco2", scenario.climate_.lambda_high_c_per_gtco2);
        scenario.threshold_c_ = get_double_or(cl, "climate", "threshold_c", scenario.threshold_c_);
        try {
            validate(scenario.climate_);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("climate: ") + e.what());
        }
    }

    return scenario;
}

}  // namespace chainfp
