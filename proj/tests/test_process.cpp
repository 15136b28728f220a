#include <doctest.h>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "caseval/process/engine.hpp"
#include "caseval/process/load.hpp"
#include "caseval/scdl/parser.hpp"

using namespace caseval::process;

namespace {

Event propose(const std::string& id) {
    Event e;
    e.type = Event::Type::propose;
    e.proposal.id = id;
    e.proposal.eval_set = {{"protocol", "policy"}};
    return e;
}

Event decide(JudgeVerdict verdict, bool serious = true, bool adequate = true,
             bool fair = true) {
    Event e;
    e.type = Event::Type::decide;
    e.decision.verdict = verdict;
    e.decision.severity_serious = serious;
    e.decision.evals_adequate = adequate;
    e.decision.attack_fair = fair;
    return e;
}

Event evals(double rate) {
    Event e;
    e.type = Event::Type::eval_result;
    e.success_rate = rate;
    return e;
}

Event simple(Event::Type type) {
    Event e;
    e.type = type;
    return e;
}

}  // namespace

TEST_CASE("empty script: initial state, round 0") {
    const ReplayResult result = replay({});
    CHECK(result.ok);
    CHECK(result.state.phase == Phase::AwaitingRedProposal);
    CHECK(result.state.round == 0);
    CHECK(result.state.history.empty());
}

TEST_CASE("rejected proposal returns to AwaitingRedProposal, round unchanged") {
    ProcessState state;
    state = step(state, propose("p1"));
    CHECK(state.phase == Phase::AwaitingJudgeOnProposal);
    CHECK(state.round == 1);
    state = step(state, decide(JudgeVerdict::reject_proposal, true, true, false));
    CHECK(state.phase == Phase::AwaitingRedProposal);
    CHECK(state.round == 1);
}

TEST_CASE("red rests and the judge allows deployment") {
    ProcessState state;
    state = step(state, simple(Event::Type::rest));
    CHECK(state.phase == Phase::AwaitingJudgeOnProposal);
    state = step(state, decide(JudgeVerdict::allow_deployment));
    CHECK(state.phase == Phase::Deployable);
    CHECK(state.round == 0);
}

TEST_CASE("deployed + severe proposal + judge pause -> Paused") {
    ProcessState state;
    state = step(state, simple(Event::Type::rest));
    state = step(state, decide(JudgeVerdict::allow_deployment));
    state = step(state, simple(Event::Type::deploy));
    CHECK(state.phase == Phase::Deployed);
    CHECK(state.deployed);

    state = step(state, propose("post_deploy_threat"));
    CHECK(state.phase == Phase::AwaitingJudgeOnProposal);
    state = step(state, decide(JudgeVerdict::pause_deployment));
    CHECK(state.phase == Phase::Paused);
    CHECK_FALSE(state.deployed);
}

TEST_CASE("acceptance requires all three judge checks") {
    ProcessState state;
    state = step(state, propose("p1"));
    CHECK_THROWS_AS(
        (void)step(state, decide(JudgeVerdict::accept_proposal, true, false, true)),
        TransitionError);
    // With the checks in place the acceptance goes through.
    state = step(state, decide(JudgeVerdict::accept_proposal));
    CHECK(state.phase == Phase::RunningEvals);
}

TEST_CASE("insufficient controls lead to a revision and a fresh red proposal") {
    ProcessState state;
    state = step(state, propose("p1"));  // round 1
    state = step(state, decide(JudgeVerdict::accept_proposal));
    state = step(state, evals(0.5));
    CHECK(state.phase == Phase::AwaitingJudgeOnEvidence);
    state = step(state, decide(JudgeVerdict::controls_insufficient));
    CHECK(state.phase == Phase::BlueRevising);
    CHECK(state.round == 1);
    state = step(state, simple(Event::Type::revise));
    CHECK(state.phase == Phase::AwaitingRedProposal);
    state = step(state, propose("p1_retest"));  // round 2
    CHECK(state.round == 2);
    state = step(state, decide(JudgeVerdict::accept_proposal));
    state = step(state, evals(0.004));
    state = step(state, decide(JudgeVerdict::controls_sufficient));
    CHECK(state.phase == Phase::AwaitingRedProposal);
    CHECK(state.round == 2);
}

TEST_CASE("illegal events name the phase and the event") {
    ProcessState state;
    try {
        (void)step(state, simple(Event::Type::deploy));
        CHECK(false);
    } catch (const TransitionError& e) {
        const std::string what = e.what();
        CHECK(what.find("AwaitingRedProposal") != std::string::npos);
        CHECK(what.find("deploy") != std::string::npos);
    }
}

TEST_CASE("bind_evidence suggests the boundary-inclusive verdict") {
    ProcessState state;
    state = step(state, propose("p1"));
    state = step(state, decide(JudgeVerdict::accept_proposal));
    state = step(state, evals(0.007475));

    CHECK(bind_evidence(state, 0.007475, 0.01).verdict ==
          JudgeVerdict::controls_sufficient);
    CHECK(bind_evidence(state, 0.5, 0.01).verdict ==
          JudgeVerdict::controls_insufficient);
    CHECK(bind_evidence(state, 0.01, 0.01).verdict ==
          JudgeVerdict::controls_sufficient);

    ProcessState idle;
    CHECK_THROWS_AS((void)bind_evidence(idle, 0.1, 0.2), std::logic_error);
}

TEST_CASE("replay equals the fold of step and prefixes reconstruct states") {
    ProcessScript script;
    script.id = "s";
    script.events = {propose("p1"),
                     decide(JudgeVerdict::accept_proposal),
                     evals(0.3),
                     decide(JudgeVerdict::controls_insufficient),
                     simple(Event::Type::revise),
                     propose("p1_retest"),
                     decide(JudgeVerdict::accept_proposal),
                     evals(0.002),
                     decide(JudgeVerdict::controls_sufficient),
                     simple(Event::Type::rest),
                     decide(JudgeVerdict::allow_deployment),
                     simple(Event::Type::deploy)};

    const ReplayResult result = replay(script);
    REQUIRE(result.ok);
    CHECK(result.state.phase == Phase::Deployed);
    CHECK(result.state.round == 2);

    // Fold of step over the script.
    ProcessState folded;
    for (const Event& e : script.events) folded = step(folded, e);
    CHECK(folded.phase == result.state.phase);
    CHECK(folded.round == result.state.round);
    CHECK(folded.history.size() == result.state.history.size());

    // Replaying the logged events reproduces every intermediate state.
    ProcessState rebuilt;
    for (std::size_t i = 0; i < result.state.history.size(); ++i) {
        rebuilt = step(rebuilt, result.state.history[i].event);
        CHECK(rebuilt.phase == result.state.history[i].to);
        CHECK(rebuilt.round == result.state.history[i].round);
    }
}

TEST_CASE("replay halts with the offending event index") {
    ProcessScript script;
    script.id = "bad";
    script.events = {propose("p1"), simple(Event::Type::deploy)};
    const ReplayResult result = replay(script);
    CHECK_FALSE(result.ok);
    CHECK(result.error_index == 1);
    CHECK_FALSE(result.error.empty());
}

TEST_CASE("time-boxed verdict carries its deadline into the log") {
    ProcessState state;
    state = step(state, propose("p1"));
    state = step(state, decide(JudgeVerdict::accept_proposal));
    state = step(state, evals(0.4));
    Event timeboxed = decide(JudgeVerdict::controls_insufficient);
    timeboxed.decision.deadline = "1 month";
    state = step(state, timeboxed);
    CHECK(state.phase == Phase::BlueRevising);
    CHECK(state.history.back().line().find("deadline \"1 month\"") !=
          std::string::npos);
}

TEST_CASE("scdl script loading decodes every event form") {
    const auto parsed = caseval::scdl::parse(
        "process_script s {\n"
        "  events: [\n"
        "    [propose, p1, invalidates_case, \"prop\", \"attack\", [[prot, "
        "pol]]],\n"
        "    [critique, \"unfair\"],\n"
        "    [decide, reject_proposal, true, true, false],\n"
        "    [propose, p2, minor, \"prop2\", \"attack2\", [[prot, pol]]],\n"
        "    [decide, accept_proposal],\n"
        "    [evals, 0.25],\n"
        "    [decide, controls_insufficient, \"1 month\"],\n"
        "    [revise, \"new defenses\"],\n"
        "    [propose, p3, minor, \"prop3\", \"attack3\", [[prot, pol]]],\n"
        "    [decide, accept_proposal],\n"
        "    [evals, 0.001],\n"
        "    [decide, controls_sufficient],\n"
        "    [rest],\n"
        "    [decide, allow_deployment],\n"
        "    [deploy]\n"
        "  ]\n"
        "}\n");
    REQUIRE(parsed.ok());
    const auto scripts = load(*parsed.document);
    REQUIRE(scripts.size() == 1);
    const ReplayResult result = replay(scripts[0]);
    REQUIRE(result.ok);
    CHECK(result.state.phase == Phase::Deployed);
    CHECK(result.state.round == 3);  // three proposals, three rounds
}
