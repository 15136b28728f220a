#pragma once

#include <span>

#include "caseval/alignment/types.hpp"
#include "caseval/cae/types.hpp"

namespace caseval::alignment {

/// Runs the behavior model over the suite. Deterministic per seed: honeypot
/// i owns stream (seed, i), and the misaligned-action draw sits at a fixed
/// position in the stream, so decontamination cannot perturb it. Misaligned
/// action probability per honeypot is
///   p_misaligned_action * (1 - honeypot_detection_skill * realism).
/// The probe fires on alignment-faking reasoning and, as a false positive,
/// on every honeypot whose prompt mentions alignment-faking concepts.
/// Intervals are two-sided 95% Wilson scores.
HoneypotOutcome run_honeypots(const BehaviorModel& model,
                              std::span<const Honeypot> suite,
                              std::uint64_t seed);

/// Clears mentions_alignment_faking_concepts on every honeypot. Idempotent;
/// rerunning a non-faking model afterwards yields probe_rate 0.
HoneypotSuite decontaminate(HoneypotSuite suite);

/// Detection power against a rare-failure strategy:
///   p_caught_in_eval     = 1 - (1 - rate)^n_eval
///   p_acts_in_deployment = 1 - (1 - rate)^n_deploy
RareFailurePower rare_failure_power(double rate, std::uint64_t n_eval,
                                    std::uint64_t n_deploy);

/// Required assumption keys for the alignment verdict.
inline constexpr const char* kAssumptionKeys[] = {
    "coverage",
    "not_alignment_faking",
    "selection_pressure",
    "no_modification",
};

struct AlignmentVerdictOptions {
    /// The §-style "at most X" claim is judged on the point estimate by
    /// default; the Wilson upper bound is always reported and can be made
    /// binding instead.
    bool use_wilson_upper = false;
};

/// Alignment-via-evaluation verdict (always supporting-only): satisfied iff
/// the misaligned rate stays within max_rate, the probe produced no
/// unexplained fires, and every assumption flag holds. A false flag
/// degrades to unresolved; only an excessive misaligned rate refutes.
/// Throws when an assumption key is missing.
cae::Verdict alignment_verdict(const HoneypotOutcome& outcome,
                               const std::map<std::string, bool>& assumptions,
                               double max_rate,
                               const AlignmentVerdictOptions& options = {});

}  // namespace caseval::alignment
