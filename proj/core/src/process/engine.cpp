#include "caseval/process/engine.hpp"

#include "caseval/scdl/serialize.hpp"

namespace caseval::process {

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::AwaitingRedProposal: return "AwaitingRedProposal";
        case Phase::AwaitingJudgeOnProposal: return "AwaitingJudgeOnProposal";
        case Phase::RunningEvals: return "RunningEvals";
        case Phase::AwaitingJudgeOnEvidence: return "AwaitingJudgeOnEvidence";
        case Phase::BlueRevising: return "BlueRevising";
        case Phase::Deployable: return "Deployable";
        case Phase::Deployed: return "Deployed";
        case Phase::Paused: return "Paused";
    }
    return "?";
}

std::string_view to_string(JudgeVerdict v) {
    switch (v) {
        case JudgeVerdict::accept_proposal: return "accept_proposal";
        case JudgeVerdict::reject_proposal: return "reject_proposal";
        case JudgeVerdict::controls_sufficient: return "controls_sufficient";
        case JudgeVerdict::controls_insufficient: return "controls_insufficient";
        case JudgeVerdict::pause_deployment: return "pause_deployment";
        case JudgeVerdict::allow_deployment: return "allow_deployment";
    }
    return "?";
}

std::optional<JudgeVerdict> judge_verdict_from(std::string_view word) {
    for (JudgeVerdict v :
         {JudgeVerdict::accept_proposal, JudgeVerdict::reject_proposal,
          JudgeVerdict::controls_sufficient, JudgeVerdict::controls_insufficient,
          JudgeVerdict::pause_deployment, JudgeVerdict::allow_deployment}) {
        if (to_string(v) == word) return v;
    }
    return std::nullopt;
}

std::string Event::summary() const {
    switch (type) {
        case Type::propose: return "propose " + proposal.id;
        case Type::rest: return "rest";
        case Type::critique: return "critique";
        case Type::decide: {
            std::string out = "decide " + std::string(to_string(decision.verdict));
            if (!decision.deadline.empty()) {
                out += " deadline \"" + decision.deadline + "\"";
            }
            return out;
        }
        case Type::eval_result:
            return "evals success_rate=" + scdl::format_number(success_rate);
        case Type::revise: return "revise";
        case Type::deploy: return "deploy";
    }
    return "?";
}

std::string LogEntry::line() const {
    return "round " + std::to_string(round) + " | " + std::string(to_string(from)) +
           " | " + event.summary() + " | " + std::string(to_string(to));
}

TransitionError::TransitionError(Phase phase, const Event& event,
                                 const std::string& why)
    : std::runtime_error("illegal event '" + event.summary() + "' in phase " +
                         std::string(to_string(phase)) + ": " + why) {}

namespace {

Phase idle_phase(const ProcessState& s) {
    if (s.deployed) return Phase::Deployed;
    if (s.paused) return Phase::Paused;
    return Phase::AwaitingRedProposal;
}

ProcessState with_log(ProcessState next, const ProcessState& prev, const Event& event) {
    LogEntry entry;
    entry.index = prev.history.size();
    entry.round = next.round;
    entry.from = prev.phase;
    entry.to = next.phase;
    entry.event = event;
    next.history.push_back(std::move(entry));
    return next;
}

}  // namespace

ProcessState step(const ProcessState& state, const Event& event) {
    ProcessState next = state;

    switch (event.type) {
        case Event::Type::propose: {
            if (state.phase != Phase::AwaitingRedProposal &&
                state.phase != Phase::Deployed && state.phase != Phase::Paused) {
                throw TransitionError(state.phase, event,
                                      "the red team is not on turn");
            }
            if (event.proposal.eval_set.empty()) {
                throw TransitionError(state.phase, event,
                                      "proposal eval_set must be non-empty");
            }
            next.round += 1;  // every proposal starts a round
            next.pending_proposal = event.proposal;
            next.pending_rest = false;
            next.phase = Phase::AwaitingJudgeOnProposal;
            return with_log(std::move(next), state, event);
        }

        case Event::Type::rest: {
            if (state.phase != Phase::AwaitingRedProposal &&
                state.phase != Phase::Paused) {
                throw TransitionError(state.phase, event,
                                      "resting is only possible while awaiting "
                                      "red proposals");
            }
            next.pending_proposal.reset();
            next.pending_rest = true;
            next.phase = Phase::AwaitingJudgeOnProposal;
            return with_log(std::move(next), state, event);
        }

        case Event::Type::critique: {
            if (state.phase != Phase::AwaitingJudgeOnProposal) {
                throw TransitionError(state.phase, event,
                                      "critiques address a pending proposal");
            }
            return with_log(std::move(next), state, event);
        }

        case Event::Type::decide: {
            const JudgeDecision& d = event.decision;
            if (state.phase == Phase::AwaitingJudgeOnProposal) {
                switch (d.verdict) {
                    case JudgeVerdict::accept_proposal:
                        if (!state.pending_proposal) {
                            throw TransitionError(state.phase, event,
                                                  "no proposal to accept");
                        }
                        if (!d.severity_serious || !d.evals_adequate ||
                            !d.attack_fair) {
                            throw TransitionError(
                                state.phase, event,
                                "acceptance requires severity, evaluation and "
                                "fairness checks to hold");
                        }
                        next.phase = Phase::RunningEvals;
                        return with_log(std::move(next), state, event);
                    case JudgeVerdict::reject_proposal:
                        if (!state.pending_proposal) {
                            throw TransitionError(state.phase, event,
                                                  "no proposal to reject");
                        }
                        next.pending_proposal.reset();
                        next.phase = idle_phase(next);  // round unchanged
                        return with_log(std::move(next), state, event);
                    case JudgeVerdict::pause_deployment:
                        if (!state.deployed) {
                            throw TransitionError(state.phase, event,
                                                  "nothing is deployed");
                        }
                        next.deployed = false;
                        next.paused = true;
                        next.pending_proposal.reset();
                        next.phase = Phase::Paused;
                        return with_log(std::move(next), state, event);
                    case JudgeVerdict::allow_deployment:
                        if (!state.pending_rest) {
                            throw TransitionError(
                                state.phase, event,
                                "deployment is allowed only once the red team "
                                "rests");
                        }
                        next.pending_rest = false;
                        next.paused = false;
                        next.phase = Phase::Deployable;
                        return with_log(std::move(next), state, event);
                    default:
                        throw TransitionError(state.phase, event,
                                              "verdict does not address a proposal");
                }
            }
            if (state.phase == Phase::AwaitingJudgeOnEvidence) {
                switch (d.verdict) {
                    case JudgeVerdict::controls_sufficient:
                        next.pending_proposal.reset();
                        next.phase = idle_phase(next);
                        return with_log(std::move(next), state, event);
                    case JudgeVerdict::controls_insufficient:
                        if (next.deployed) {
                            // Confirmed threat while deployed: deployment
                            // pauses while the blue team revises.
                            next.deployed = false;
                            next.paused = true;
                        }
                        next.pending_proposal.reset();
                        next.phase = Phase::BlueRevising;
                        return with_log(std::move(next), state, event);
                    default:
                        throw TransitionError(state.phase, event,
                                              "verdict does not address evidence");
                }
            }
            throw TransitionError(state.phase, event, "no judge decision is due");
        }

        case Event::Type::eval_result: {
            if (state.phase != Phase::RunningEvals) {
                throw TransitionError(state.phase, event, "no evaluations running");
            }
            next.latest_eval_success_rate = event.success_rate;
            next.phase = Phase::AwaitingJudgeOnEvidence;
            return with_log(std::move(next), state, event);
        }

        case Event::Type::revise: {
            if (state.phase != Phase::BlueRevising) {
                throw TransitionError(state.phase, event,
                                      "no revision was requested");
            }
            // The revision starts the next round: the red team re-tests the
            // revised controls with a fresh proposal.
            next.phase = idle_phase(next);
            return with_log(std::move(next), state, event);
        }

        case Event::Type::deploy: {
            if (state.phase != Phase::Deployable) {
                throw TransitionError(state.phase, event,
                                      "deployment has not been allowed");
            }
            next.deployed = true;
            next.paused = false;
            next.phase = Phase::Deployed;
            return with_log(std::move(next), state, event);
        }
    }
    throw TransitionError(state.phase, event, "unknown event");
}

ReplayResult replay(const ProcessScript& script) {
    ReplayResult result;
    for (std::size_t i = 0; i < script.events.size(); ++i) {
        try {
            result.state = step(result.state, script.events[i]);
        } catch (const TransitionError& e) {
            result.ok = false;
            result.error_index = i;
            result.error = e.what();
            return result;
        }
    }
    return result;
}

JudgeDecision bind_evidence(const ProcessState& state, double success_rate,
                            double acceptable_risk) {
    if (state.phase != Phase::AwaitingJudgeOnEvidence) {
        throw std::logic_error(
            "bind_evidence: state is not awaiting a judgment on evidence");
    }
    JudgeDecision decision;
    decision.verdict = success_rate <= acceptable_risk
                           ? JudgeVerdict::controls_sufficient
                           : JudgeVerdict::controls_insufficient;
    return decision;
}

std::string transcript(const ProcessState& state) {
    std::string out;
    for (const LogEntry& entry : state.history) {
        out += entry.line();
        out += '\n';
    }
    return out;
}

}  // namespace caseval::process
