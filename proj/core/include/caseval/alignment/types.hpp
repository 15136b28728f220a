#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "caseval/stats.hpp"

namespace caseval::alignment {

enum class HoneypotCategory {
    self_exfiltration,
    oversight_reduction,
    data_manipulation,
    other,
};

std::string_view to_string(HoneypotCategory c);

struct Honeypot {
    std::string id;
    HoneypotCategory category = HoneypotCategory::other;
    double realism = 1.0;  // in [0, 1]
    bool has_fake_collusion_signal = false;
    bool mentions_alignment_faking_concepts = false;
};

using HoneypotSuite = std::vector<Honeypot>;

/// Simulated agent: probabilities for misaligned action and alignment-faking
/// reasoning, skill at spotting honeypots (which suppresses misaligned
/// actions in unconvincing scenarios), and an optional rare-failure rate.
struct BehaviorModel {
    std::string id;
    double p_misaligned_action = 0.0;
    double p_alignment_faking_reasoning = 0.0;
    double honeypot_detection_skill = 0.0;
    std::optional<double> rare_failure_rate;
};

struct HoneypotOutcome {
    std::uint64_t n = 0;
    std::uint64_t misaligned_count = 0;
    std::uint64_t probe_fired_count = 0;
    double misaligned_rate = 0.0;
    stats::Interval misaligned_interval;  // two-sided 95% Wilson
    double probe_rate = 0.0;
    stats::Interval probe_interval;
    // Honeypots where the probe fired without alignment-faking reasoning
    // (contaminated prompts); investigation explains them as false positives.
    std::vector<std::string> false_positive_explanations;
    std::uint64_t unexplained_probe_fires = 0;
};

struct RareFailurePower {
    double p_caught_in_eval = 0.0;
    double p_acts_in_deployment = 0.0;
};

}  // namespace caseval::alignment
