#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace caseval::control {

enum class StageKind {
    trusted_monitor,
    untrusted_monitor,
    probe_monitor,
    paraphraser,
    ensemble,
    human_review,
    shutdown,
};

std::string_view to_string(StageKind k);
std::optional<StageKind> stage_kind_from(std::string_view word);

/// Direct (fnr, fpr) rates. FPR is carried for reporting only; it never
/// affects verdicts.
struct DirectRates {
    double fnr = 0.0;
    double fpr = 0.0;
};

/// Gaussian suspiciousness-score model. The flagging threshold is the
/// benign-score quantile at (1 - review_fraction), so exactly the most
/// suspicious review_fraction of benign traffic is flagged.
struct ScoreModel {
    double benign_mean = 0.0;
    double malicious_mean = 0.0;
    double noise_sd = 1.0;
    double review_fraction = 0.0;
};

struct MonitorStage {
    std::string id;
    StageKind kind = StageKind::trusted_monitor;
    std::optional<DirectRates> rates;
    std::optional<ScoreModel> score;
    // Collusion (untrusted_monitor): a susceptible monitor that recognizes a
    // surviving collusion signal never flags the attack.
    bool susceptible = false;
    double signal_survival = 1.0;  // also the paraphraser survival multiplier
    std::vector<std::string> inputs;  // ensemble only
    std::vector<double> weights;      // ensemble only

    bool reviewing() const {
        return kind == StageKind::trusted_monitor ||
               kind == StageKind::untrusted_monitor ||
               kind == StageKind::probe_monitor || kind == StageKind::ensemble ||
               kind == StageKind::human_review;
    }
};

struct AttackPolicy {
    std::string id;
    double attempt_probability = 1.0;
    double execution_success = 1.0;  // success given undetected
    bool uses_collusion_signal = false;
    double obfuscation_shift = 0.0;  // subtracted from the malicious score mean
};

/// An ordered control pipeline. Stages referenced as ensemble inputs feed
/// their scores into the ensemble instead of flagging on their own.
struct Pipeline {
    std::string id;
    std::vector<MonitorStage> stages;
};

struct SimConfig {
    std::uint64_t n_trials = 1;
    std::uint64_t seed = 0;
    // Episode mode: the deployment shuts down at the first caught attack and
    // later trials produce no attempts.
    bool episode_mode = false;
};

struct SimOutcome {
    std::uint64_t n_trials = 0;
    std::uint64_t attempts = 0;
    std::map<std::string, std::uint64_t> caught_by_stage;
    std::uint64_t undetected = 0;
    std::uint64_t succeeded = 0;
    // Per-attempt rates; 0 with 0 standard error when nothing was attempted.
    double undetected_rate = 0.0;
    double undetected_se = 0.0;
    double success_rate = 0.0;
    double success_se = 0.0;
};

struct HoneypotCheckResult {
    bool passed = false;
    double observed_fraction = 0.0;
    std::uint64_t flagged = 0;
    std::uint64_t total = 0;
};

}  // namespace caseval::control
