#include "chainfp/staker_equilibrium.hpp"

#include "chainfp/errors.hpp"

namespace chainfp {

SimOutcome simulate_equilibrium(const SimConfig& config) {
    validate(config.scenario);
    if (config.entry_batch < 1) {
        throw DomainError("entry_batch must be >= 1");
    }
    if (config.max_steps < 1) {
        throw DomainError("max_steps must be >= 1");
    }

    const auto& s = config.scenario;
    const double validators = validator_count(s.total_stake, s.stake_per_validator);
    const double return_per_validator =
        validator_annual_return(s.total_stake, s.token_price_usd, s.reward_constant);
    if (return_per_validator <= 0.0) {
        throw ZeroReturnError("per-validator return is zero; no entry decision possible");
    }
    const double cost = staker_annual_cost(s.hardware, s.weighted, s.depreciation_years);

    // With validators split evenly, a population of n nodes breaks even when
    // (validators / n) * return >= cost.
    const auto breaks_even = [&](long long n) {
        return n >= 1 && (validators / static_cast<double>(n)) * return_per_validator >= cost;
    };

    long long nodes = 0;
    int steps = 0;
    while (breaks_even(nodes + config.entry_batch)) {
        nodes += config.entry_batch;
        ++steps;
        if (steps >= config.max_steps && breaks_even(nodes + config.entry_batch)) {
            throw NonConvergenceError("entry still profitable after " +
                                      std::to_string(config.max_steps) + " steps");
        }
    }
    // Last partial cohort: entrants join one at a time until the marginal
    // node would run at a loss. Arrival order (seeded) is irrelevant here
    // because every candidate faces the same break-even test.
    while (breaks_even(nodes + 1)) {
        ++nodes;
        ++steps;
    }

    SimOutcome out;
    out.node_count = nodes;
    out.validators_assigned = nodes > 0 ? validators : 0.0;
    const double kwh = 365.0 * 24.0 * s.hardware.power_w * static_cast<double>(nodes) / 1000.0;
    out.total_energy = EnergyQuantity(kwh, EnergyUnit::kWh).to(EnergyUnit::TWh);
    out.converged = !breaks_even(nodes + 1);
    out.steps_used = steps;
    return out;
}

}  // namespace chainfp
