#include "chainfp/pos_footprint.hpp"

#include <cmath>

#include "chainfp/errors.hpp"
#include "chainfp/pow_footprint.hpp"

namespace chainfp {

namespace {

constexpr double kHoursPerYear = 365.0 * 24.0;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be > 0");
    }
}

}  // namespace

void validate(const PosScenario& scenario) {
    require_positive(scenario.total_stake, "total_stake");
    require_positive(scenario.stake_per_validator, "stake_per_validator");
    require_positive(scenario.depreciation_years, "depreciation_years");
    require_positive(scenario.reward_constant, "reward_constant");
    if (scenario.token_price_usd < 0.0 || !std::isfinite(scenario.token_price_usd)) {
        throw DomainError("token_price_usd must be non-negative");
    }
    validate(scenario.hardware);
}

double validator_count(double total_stake, double stake_per_validator) {
    require_positive(stake_per_validator, "stake_per_validator");
    require_positive(total_stake, "total_stake");
    return total_stake / stake_per_validator;
}

double validator_annual_return(double total_stake, double token_price_usd,
                               double reward_constant) {
    require_positive(total_stake, "total_stake");
    return reward_constant * token_price_usd / std::sqrt(total_stake);
}

double staker_annual_cost(const HardwareSpec& hardware, const WeightedFactors& weighted,
                          double depreciation_years) {
    validate(hardware);
    require_positive(depreciation_years, "depreciation_years");
    const double electricity_usd = kHoursPerYear * hardware.power_w *
                                   weighted.electricity_price.value_as(MoneyUnit::UsdPerKwh) /
                                   1000.0;
    const double internet_usd = 12.0 * weighted.internet_price.value_as(MoneyUnit::UsdPerMonth);
    return hardware.price_usd / depreciation_years + electricity_usd + internet_usd;
}

PosResult pos_model(const PosScenario& scenario) {
    validate(scenario);
    PosResult r;
    r.validator_count = validator_count(scenario.total_stake, scenario.stake_per_validator);
    r.annual_return_per_validator_usd = validator_annual_return(
        scenario.total_stake, scenario.token_price_usd, scenario.reward_constant);
    r.staker_annual_cost_usd =
        staker_annual_cost(scenario.hardware, scenario.weighted, scenario.depreciation_years);
    if (r.annual_return_per_validator_usd <= 0.0) {
        throw ZeroReturnError("per-validator return is zero; break-even ratio undefined");
    }
    r.validators_per_node = r.staker_annual_cost_usd / r.annual_return_per_validator_usd;
    r.node_count = r.validator_count / r.validators_per_node;
    const double kwh = kHoursPerYear * scenario.hardware.power_w * r.node_count / 1000.0;
    r.annual_energy = EnergyQuantity(kwh, EnergyUnit::kWh).to(EnergyUnit::TWh);
    r.annual_carbon = carbon_from_energy(r.annual_energy, scenario.weighted.emission_factor);
    return r;
}

double closed_form_node_count(const PosScenario& scenario) {
    validate(scenario);
    const double cost =
        staker_annual_cost(scenario.hardware, scenario.weighted, scenario.depreciation_years);
    return std::sqrt(scenario.total_stake) * scenario.reward_constant * scenario.token_price_usd /
           (scenario.stake_per_validator * cost);
}

EnergyQuantity closed_form_annual_energy(const PosScenario& scenario) {
    return {kHoursPerYear * scenario.hardware.power_w * closed_form_node_count(scenario) / 1e12,
            EnergyUnit::TWh};
}

CarbonQuantity closed_form_annual_carbon(const PosScenario& scenario) {
    return {closed_form_annual_energy(scenario).value() *
                scenario.weighted.emission_factor.kg_per_kwh(),
            CarbonUnit::MtCO2};
}

PosBounds pos_bounds(const HardwareSpec& lower_hardware, const HardwareSpec& upper_hardware,
                     const PosScenario& base) {
    PosScenario lower = base;
    lower.hardware = lower_hardware;
    PosScenario upper = base;
    upper.hardware = upper_hardware;
    return {pos_model(lower), pos_model(upper)};
}

}  // namespace chainfp
