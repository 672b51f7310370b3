#pragma once

#include <cstdint>

#include "chainfp/pos_footprint.hpp"

namespace chainfp {

/// Entry-dynamics harness. Candidate stakers add nodes in batches while
/// every active node still breaks even. The seed fixes the entry order of
/// the candidate pool; entrants are homogeneous, so it cannot move the
/// equilibrium itself.
struct SimConfig {
    PosScenario scenario;
    int entry_batch = 100;   // nodes entering per step
    int max_steps = 20000;
    std::uint64_t seed = 0;
};

struct SimOutcome {
    long long node_count = 0;
    double validators_assigned = 0.0;  // network-wide validator total
    EnergyQuantity total_energy{0.0, EnergyUnit::TWh};
    bool converged = false;
    int steps_used = 0;
};

/// Grows the node population until one more node would push every node
/// below break-even, then backs off to the largest population where all
/// nodes still cover their cost. Validators are divided evenly across
/// active nodes. Throws NonConvergenceError if max_steps batches enter
/// while entry is still profitable.
SimOutcome simulate_equilibrium(const SimConfig& config);

}  // namespace chainfp
