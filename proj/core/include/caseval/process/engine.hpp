#pragma once

#include <stdexcept>

#include "caseval/process/types.hpp"

namespace caseval::process {

/// Raised when an event is illegal in the current phase; the message names
/// both.
class TransitionError : public std::runtime_error {
public:
    TransitionError(Phase phase, const Event& event, const std::string& why);
};

/// Applies one event to an immutable state and returns the successor.
/// Rejected proposals return to the idle phase with the round unchanged;
/// a proposal event or a post-revision re-evaluation starts a new round.
ProcessState step(const ProcessState& state, const Event& event);

struct ReplayResult {
    ProcessState state;
    bool ok = true;
    std::size_t error_index = 0;  // index of the offending event when !ok
    std::string error;
};

/// Pure fold of step over the script; halts (without throwing) at the first
/// illegal event. The final state's history is the full transition log.
ReplayResult replay(const ProcessScript& script);

/// Judge suggestion from control-evaluation evidence: controls_sufficient
/// iff success_rate <= acceptable_risk (boundary counts as acceptable).
/// A scripted judge may override the suggestion; overrides show up in the
/// log as the decision actually taken. Requires AwaitingJudgeOnEvidence.
JudgeDecision bind_evidence(const ProcessState& state, double success_rate,
                            double acceptable_risk);

/// Transcript rendering: one line per transition.
std::string transcript(const ProcessState& state);

}  // namespace caseval::process
