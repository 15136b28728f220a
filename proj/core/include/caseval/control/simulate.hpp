#pragma once

#include "caseval/control/types.hpp"

namespace caseval::control {

/// Seeded Monte Carlo over the same stage-independence model the analytic
/// composition uses. Each trial owns a counter-based RNG stream derived
/// from (seed, trial index), so results are bit-identical for a fixed seed
/// under any execution schedule. Score-model stages sample actual Gaussian
/// scores against their calibrated thresholds rather than reusing the
/// closed-form miss probabilities.
SimOutcome simulate(const Pipeline& pipeline, const AttackPolicy& policy,
                    const SimConfig& config);

/// Tests an untrusted monitor on fake attacks that carry collusion signals
/// (§-style honeypotting of the monitor itself): a colluding monitor that
/// recognizes the planted signal declines to flag. Passes iff the flagged
/// fraction reaches required_flag_fraction. Throws unless the stage is an
/// untrusted_monitor.
HoneypotCheckResult honeypot_monitor_check(const MonitorStage& monitor,
                                           std::uint64_t fake_attacks,
                                           double required_flag_fraction,
                                           std::uint64_t seed);

}  // namespace caseval::control
