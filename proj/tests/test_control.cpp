#include <doctest.h>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include <cmath>

#include "caseval/control/analytic.hpp"
#include "caseval/control/load.hpp"
#include "caseval/control/simulate.hpp"
#include "caseval/rng.hpp"
#include "caseval/scdl/parser.hpp"
#include "caseval/stats.hpp"

using namespace caseval;
using namespace caseval::control;

namespace {

MonitorStage direct_monitor(const std::string& id, StageKind kind, double fnr) {
    MonitorStage stage;
    stage.id = id;
    stage.kind = kind;
    stage.rates = DirectRates{fnr, 0.0};
    return stage;
}

Pipeline two_layer(double fnr_auto, double fnr_human) {
    Pipeline p;
    p.id = "p";
    p.stages.push_back(
        direct_monitor("auto", StageKind::trusted_monitor, fnr_auto));
    p.stages.push_back(direct_monitor("human", StageKind::human_review, fnr_human));
    return p;
}

AttackPolicy plain_policy(double execution_success = 0.5) {
    AttackPolicy policy;
    policy.id = "attack";
    policy.execution_success = execution_success;
    return policy;
}

}  // namespace

TEST_CASE("collusion blend: q=1 passes everything, q=0 is the base rate") {
    MonitorStage um = direct_monitor("um", StageKind::untrusted_monitor, 0.02);
    um.susceptible = true;
    um.signal_survival = 1.0;
    AttackPolicy colluding = plain_policy();
    colluding.uses_collusion_signal = true;

    CHECK(effective_fnr(um, colluding, 1.0) == doctest::Approx(1.0));

    um.signal_survival = 0.0;
    CHECK(effective_fnr(um, colluding, 1.0) == doctest::Approx(0.02));

    // Non-colluding policy: base rate regardless of susceptibility.
    um.signal_survival = 1.0;
    CHECK(effective_fnr(um, plain_policy(), 1.0) == doctest::Approx(0.02));
}

TEST_CASE("score-model fnr against a Monte Carlo oracle") {
    // benign N(0,1), malicious N(3,1), top 0.5% reviewed.
    MonitorStage stage;
    stage.id = "scored";
    stage.kind = StageKind::trusted_monitor;
    stage.score = ScoreModel{0.0, 3.0, 1.0, 0.005};

    const double fnr = effective_fnr(stage, plain_policy(), 1.0);
    CHECK(fnr == doctest::Approx(0.336).epsilon(0.01));

    // Oracle: sample both Gaussians, calibrate the threshold on the benign
    // quantile, count malicious misses.
    const double threshold = stats::normal_quantile(1.0 - 0.005);
    CounterRng rng(99);
    const int n = 1000000;
    int missed = 0;
    for (int i = 0; i < n; ++i) {
        if (rng.normal(3.0, 1.0) < threshold) ++missed;
    }
    const double mc = static_cast<double>(missed) / n;
    const double se = stats::proportion_se(mc, n);
    CHECK(std::abs(fnr - mc) < 3.0 * se + 1e-12);
}

TEST_CASE("obfuscation shift raises the score-model miss rate") {
    MonitorStage stage;
    stage.id = "scored";
    stage.kind = StageKind::trusted_monitor;
    stage.score = ScoreModel{0.0, 3.0, 1.0, 0.005};
    AttackPolicy subtle = plain_policy();
    subtle.obfuscation_shift = 1.0;
    CHECK(effective_fnr(stage, subtle, 1.0) >
          effective_fnr(stage, plain_policy(), 1.0));
    // Shift 0 equals the base parameterization.
    AttackPolicy zero = plain_policy();
    zero.obfuscation_shift = 0.0;
    CHECK(effective_fnr(stage, zero, 1.0) ==
          doctest::Approx(effective_fnr(stage, plain_policy(), 1.0)));
}

TEST_CASE("effective_fnr rejects non-monitor stages") {
    MonitorStage paraphraser;
    paraphraser.id = "pp";
    paraphraser.kind = StageKind::paraphraser;
    paraphraser.signal_survival = 0.5;
    CHECK_THROWS_AS((void)effective_fnr(paraphraser, plain_policy(), 1.0),
                    std::invalid_argument);
}

TEST_CASE("worked two-layer pipeline: 1% auto, 0.5% human") {
    const Pipeline pipeline = two_layer(0.01, 0.005);
    const AttackPolicy policy = plain_policy(0.5);
    CHECK(analytic_undetected_rate(pipeline, policy) == doctest::Approx(0.01495));
    CHECK(analytic_success_rate(pipeline, policy) == doctest::Approx(0.007475));
}

TEST_CASE("two-layer edge cases") {
    CHECK(analytic_undetected_rate(two_layer(0.0, 0.0), plain_policy()) == 0.0);
    // Nothing ever flagged: human review never sees the attack.
    CHECK(analytic_undetected_rate(two_layer(1.0, 0.0), plain_policy()) == 1.0);
    CHECK(analytic_undetected_rate(two_layer(1.0, 0.9), plain_policy()) == 1.0);
}

TEST_CASE("empty pipeline leaves attacks undetected, with a warning") {
    Pipeline empty;
    empty.id = "none";
    const PipelineAnalysis analysis = analyze(empty, plain_policy(0.5));
    CHECK(analysis.undetected_rate == 1.0);
    CHECK(analysis.success_rate == doctest::Approx(0.5));
    REQUIRE_FALSE(analysis.warnings.empty());
}

TEST_CASE("execution success scales the rate, not detection") {
    AttackPolicy sure = plain_policy(1.0);
    CHECK(analytic_success_rate(two_layer(0.0, 0.0), sure) == 0.0);
}

TEST_CASE("paraphraser survival feeds downstream collusion") {
    Pipeline pipeline;
    pipeline.id = "p";
    MonitorStage pp;
    pp.id = "pp";
    pp.kind = StageKind::paraphraser;
    pp.signal_survival = 0.25;
    pipeline.stages.push_back(pp);
    MonitorStage um = direct_monitor("um", StageKind::untrusted_monitor, 0.1);
    um.susceptible = true;
    um.signal_survival = 0.8;
    pipeline.stages.push_back(um);

    AttackPolicy colluding = plain_policy();
    colluding.uses_collusion_signal = true;
    // q = 0.25 * 0.8; undetected = q + (1-q) * 0.1
    const double q = 0.25 * 0.8;
    CHECK(analytic_undetected_rate(pipeline, colluding) ==
          doctest::Approx(q + (1 - q) * 0.1));
}

TEST_CASE("derived ensemble combines input score models") {
    MonitorStage a;
    a.id = "a";
    a.kind = StageKind::probe_monitor;
    a.score = ScoreModel{0.0, 2.0, 1.0, 0.0};
    MonitorStage b = a;
    b.id = "b";

    MonitorStage ensemble;
    ensemble.id = "ens";
    ensemble.kind = StageKind::ensemble;
    ensemble.inputs = {"a", "b"};
    ensemble.weights = {1.0, 1.0};
    ensemble.score = ScoreModel{0.0, 0.0, 1.0, 0.01};  // review_fraction only

    const std::vector<MonitorStage> inputs{a, b};
    const double fnr = ensemble_effective_fnr(ensemble, inputs, plain_policy(), 1.0);
    // Combined malicious mean 4, sd sqrt(2), threshold z_{0.99} * sqrt(2).
    const double threshold = stats::normal_quantile(0.99) * std::sqrt(2.0);
    const double expected = stats::normal_cdf((threshold - 4.0) / std::sqrt(2.0));
    CHECK(fnr == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("simulate agrees with the analytic rate within 3 standard errors") {
    const Pipeline pipeline = two_layer(0.01, 0.005);
    const AttackPolicy policy = plain_policy(0.5);
    SimConfig config;
    config.n_trials = 200000;
    config.seed = 7;
    const SimOutcome outcome = simulate(pipeline, policy, config);

    const double analytic = analytic_success_rate(pipeline, policy);
    CHECK(std::abs(outcome.success_rate - analytic) <=
          3.0 * outcome.success_se + 1e-12);

    // Count identities hold exactly.
    std::uint64_t caught = 0;
    for (const auto& [stage, count] : outcome.caught_by_stage) caught += count;
    CHECK(outcome.attempts == outcome.undetected + caught);
    CHECK(outcome.succeeded <= outcome.undetected);
    CHECK(outcome.attempts <= outcome.n_trials);
}

TEST_CASE("simulate is deterministic for a fixed seed") {
    const Pipeline pipeline = two_layer(0.05, 0.01);
    const AttackPolicy policy = plain_policy(0.7);
    SimConfig config;
    config.n_trials = 50000;
    config.seed = 123;
    const SimOutcome a = simulate(pipeline, policy, config);
    const SimOutcome b = simulate(pipeline, policy, config);
    CHECK(a.undetected == b.undetected);
    CHECK(a.succeeded == b.succeeded);
    CHECK(a.caught_by_stage == b.caught_by_stage);
}

TEST_CASE("simulate: zero attempt probability yields zero rates") {
    AttackPolicy never = plain_policy();
    never.attempt_probability = 0.0;
    SimConfig config;
    config.n_trials = 1000;
    config.seed = 5;
    const SimOutcome outcome = simulate(two_layer(0.1, 0.1), never, config);
    CHECK(outcome.attempts == 0);
    CHECK(outcome.undetected_rate == 0.0);
    CHECK(outcome.success_rate == 0.0);
}

TEST_CASE("simulate: zero FNRs catch everything") {
    SimConfig config;
    config.n_trials = 20000;
    config.seed = 11;
    const SimOutcome outcome =
        simulate(two_layer(0.0, 0.0), plain_policy(1.0), config);
    CHECK(outcome.succeeded == 0);
    CHECK(outcome.undetected == 0);
}

TEST_CASE("episode mode stops attempting after the first catch") {
    SimConfig config;
    config.n_trials = 10000;
    config.seed = 3;
    config.episode_mode = true;
    const SimOutcome outcome =
        simulate(two_layer(0.0, 0.0), plain_policy(1.0), config);
    std::uint64_t caught = 0;
    for (const auto& [stage, count] : outcome.caught_by_stage) caught += count;
    CHECK(caught == 1);
    CHECK(outcome.attempts == 1);
}

TEST_CASE("honeypot check: diligent monitor passes, colluding monitor fails") {
    MonitorStage diligent = direct_monitor("um", StageKind::untrusted_monitor, 0.01);
    const HoneypotCheckResult pass = honeypot_monitor_check(diligent, 1000, 0.95, 21);
    // Oracle: binomial expectation 0.99 with se ~ 0.003.
    CHECK(pass.observed_fraction == doctest::Approx(0.99).epsilon(0.02));
    CHECK(pass.passed);

    MonitorStage colluding = diligent;
    colluding.susceptible = true;
    colluding.signal_survival = 1.0;
    const HoneypotCheckResult fail =
        honeypot_monitor_check(colluding, 1000, 0.95, 21);
    CHECK(fail.observed_fraction == doctest::Approx(0.0));
    CHECK_FALSE(fail.passed);

    // Requirement 0 always passes.
    CHECK(honeypot_monitor_check(colluding, 1000, 0.0, 21).passed);

    MonitorStage trusted = direct_monitor("tm", StageKind::trusted_monitor, 0.01);
    CHECK_THROWS_AS((void)honeypot_monitor_check(trusted, 10, 0.5, 1),
                    std::invalid_argument);
}

TEST_CASE("scdl load: round-style protocol with ensemble inputs") {
    const auto parsed = scdl::parse(
        "monitor um { kind: untrusted_monitor benign_mean: 0 malicious_mean: 3 "
        "noise_sd: 1 review_fraction: 1% susceptible: true signal_survival: 1 }\n"
        "monitor probes { kind: probe_monitor benign_mean: 0 malicious_mean: 2 "
        "noise_sd: 1 review_fraction: 1% }\n"
        "monitor auto { kind: ensemble fnr: 1% fpr: 2% inputs: [um, probes] "
        "weights: [0.5, 0.5] }\n"
        "monitor human { kind: human_review fnr: 0.5% }\n"
        "protocol round3 { stages: [auto, human] }\n"
        "policy attack { execution_success: 50% uses_collusion_signal: true }\n");
    REQUIRE(parsed.ok());
    const Inputs inputs = load(*parsed.document);
    REQUIRE(inputs.pipelines.size() == 1);
    REQUIRE(inputs.policies.size() == 1);
    // um and probes get appended for resolution but never flag on their own.
    CHECK(inputs.pipelines[0].stages.size() == 4);
    CHECK(analytic_undetected_rate(inputs.pipelines[0], inputs.policies[0]) ==
          doctest::Approx(0.01495));
    CHECK(analytic_success_rate(inputs.pipelines[0], inputs.policies[0]) ==
          doctest::Approx(0.007475));
}
