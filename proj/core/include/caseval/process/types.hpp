#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace caseval::process {

enum class Phase {
    AwaitingRedProposal,
    AwaitingJudgeOnProposal,
    RunningEvals,
    AwaitingJudgeOnEvidence,
    BlueRevising,
    Deployable,
    Deployed,
    Paused,
};

std::string_view to_string(Phase p);

enum class Severity { invalidates_case, minor };

struct Proposal {
    std::string id;
    std::string property_violated;
    // Control evaluations the red team wants run: (protocol, policy) pairs.
    std::vector<std::pair<std::string, std::string>> eval_set;
    std::string attack_strategy;
    Severity severity_claim = Severity::invalidates_case;
};

enum class JudgeVerdict {
    accept_proposal,
    reject_proposal,
    controls_sufficient,
    controls_insufficient,
    pause_deployment,
    allow_deployment,
};

std::string_view to_string(JudgeVerdict v);
std::optional<JudgeVerdict> judge_verdict_from(std::string_view word);

struct JudgeDecision {
    bool severity_serious = true;
    bool evals_adequate = true;
    bool attack_fair = true;
    JudgeVerdict verdict = JudgeVerdict::reject_proposal;
    // Time-boxed verdicts carry a deadline annotation; the engine does not
    // track wall-clock time.
    std::string deadline;
};

struct Event {
    enum class Type { propose, rest, critique, decide, eval_result, revise, deploy };

    Type type = Type::propose;
    Proposal proposal;        // propose
    JudgeDecision decision;   // decide
    double success_rate = 0.0;  // eval_result
    std::string text;         // critique / revise commentary

    std::string summary() const;
};

struct LogEntry {
    std::size_t index = 0;
    std::uint64_t round = 0;  // round after the transition
    Phase from = Phase::AwaitingRedProposal;
    Phase to = Phase::AwaitingRedProposal;
    Event event;

    /// "round N | from | event | to"
    std::string line() const;
};

struct ProcessState {
    Phase phase = Phase::AwaitingRedProposal;
    // Every red proposal starts a new round; re-tests of revised controls
    // are themselves proposals, so the counter equals the proposal count.
    std::uint64_t round = 0;
    bool deployed = false;
    bool paused = false;
    // Pending judge input: a proposal, or the red team resting.
    std::optional<Proposal> pending_proposal;
    bool pending_rest = false;
    double latest_eval_success_rate = 0.0;
    std::vector<LogEntry> history;  // append-only
};

struct ProcessScript {
    std::string id;
    std::vector<Event> events;
};

}  // namespace caseval::process
