#pragma once

#include "chainfp/units.hpp"
#include "chainfp/weighting.hpp"

namespace chainfp {

/// Inputs for the closed-form staking-economics model. Defaults are the
/// Ethereum 2.0 beacon-chain values; total_stake assumes the full token
/// supply is staked.
struct PosScenario {
    double total_stake = 110030966.0;      // tokens
    double stake_per_validator = 32.0;     // tokens per validator client
    double token_price_usd = 307.5429;     // yearly average, USD/token
    HardwareSpec hardware;
    WeightedFactors weighted;
    double depreciation_years = 3.0;
    double reward_constant = 5792.6176;    // scales annual validator return
};

void validate(const PosScenario& scenario);

/// Everything the model derives: both counts are real-valued (the closed
/// form is continuous); round for display only.
struct PosResult {
    double validator_count = 0.0;
    double annual_return_per_validator_usd = 0.0;
    double staker_annual_cost_usd = 0.0;
    double validators_per_node = 0.0;
    double node_count = 0.0;
    EnergyQuantity annual_energy{0.0, EnergyUnit::TWh};
    CarbonQuantity annual_carbon{0.0, CarbonUnit::MtCO2};
};

/// total_stake / stake_per_validator.
double validator_count(double total_stake, double stake_per_validator);

/// reward_constant x token_price / sqrt(total_stake), USD per year.
double validator_annual_return(double total_stake, double token_price_usd,
                               double reward_constant);

/// Hardware depreciation + electricity + internet, USD per year. Validator
/// client programs themselves draw negligible power; only the node hardware
/// counts.
double staker_annual_cost(const HardwareSpec& hardware, const WeightedFactors& weighted,
                          double depreciation_years);

/// Full stepwise chain: validators, per-validator return, staker cost,
/// break-even validators-per-node ratio, node count, annual energy (TWh)
/// and carbon (MtCO2). Throws ZeroReturnError when token_price_usd == 0
/// (the break-even ratio is undefined).
PosResult pos_model(const PosScenario& scenario);

// Single-expression equivalents of the stepwise chain; they agree with
// pos_model to floating-point noise and exist as an algebraic cross-check.
double closed_form_node_count(const PosScenario& scenario);
EnergyQuantity closed_form_annual_energy(const PosScenario& scenario);
CarbonQuantity closed_form_annual_carbon(const PosScenario& scenario);

struct PosBounds {
    PosResult lower;
    PosResult upper;
};

/// Evaluates the model under two hardware scenarios sharing all market
/// parameters (`base.hardware` is ignored).
PosBounds pos_bounds(const HardwareSpec& lower_hardware, const HardwareSpec& upper_hardware,
                     const PosScenario& base);

}  // namespace chainfp
