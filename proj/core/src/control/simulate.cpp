#include "caseval/control/simulate.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "caseval/rng.hpp"
#include "caseval/stats.hpp"

namespace caseval::control {

namespace {

struct PreparedStage {
    const MonitorStage* stage = nullptr;
    bool human = false;
    double upstream_survival = 1.0;       // paraphraser product ahead of it
    double threshold = 0.0;               // score-model stages
    std::vector<const MonitorStage*> inputs;  // derived ensembles
    std::vector<double> weights;
    double ensemble_sd = 0.0;
};

double stage_threshold(double benign_mean, double noise_sd, double review_fraction) {
    if (review_fraction <= 0.0) return std::numeric_limits<double>::infinity();
    if (review_fraction >= 1.0) return -std::numeric_limits<double>::infinity();
    return benign_mean + noise_sd * stats::normal_quantile(1.0 - review_fraction);
}

// Reviewing stages in pipeline order with their calibrated thresholds and
// upstream paraphraser survival products. Ensemble inputs are resolved here
// and excluded from independent flagging.
std::vector<PreparedStage> prepare(const Pipeline& pipeline) {
    std::map<std::string, const MonitorStage*> by_id;
    std::map<std::string, bool> consumed;
    for (const MonitorStage& s : pipeline.stages) by_id[s.id] = &s;
    for (const MonitorStage& s : pipeline.stages) {
        for (const std::string& input : s.inputs) consumed[input] = true;
    }

    std::vector<PreparedStage> out;
    double survival = 1.0;
    for (const MonitorStage& stage : pipeline.stages) {
        if (stage.kind == StageKind::paraphraser) {
            survival *= stage.signal_survival;
            continue;
        }
        if (!stage.reviewing() || consumed.count(stage.id)) continue;

        PreparedStage prep;
        prep.stage = &stage;
        prep.human = stage.kind == StageKind::human_review;
        prep.upstream_survival = survival;

        if (stage.kind == StageKind::ensemble && !stage.rates) {
            double benign_mean = 0.0;
            double variance = 0.0;
            prep.weights = stage.weights;
            if (prep.weights.empty()) prep.weights.assign(stage.inputs.size(), 1.0);
            for (std::size_t i = 0; i < stage.inputs.size(); ++i) {
                const auto it = by_id.find(stage.inputs[i]);
                if (it == by_id.end() || !it->second->score) {
                    throw std::invalid_argument(
                        "simulate: ensemble input '" + stage.inputs[i] +
                        "' missing or without score model");
                }
                prep.inputs.push_back(it->second);
                benign_mean += prep.weights[i] * it->second->score->benign_mean;
                variance += prep.weights[i] * prep.weights[i] *
                            it->second->score->noise_sd * it->second->score->noise_sd;
            }
            if (!stage.score) {
                throw std::invalid_argument("simulate: derived ensemble '" + stage.id +
                                            "' needs a review_fraction");
            }
            prep.ensemble_sd = std::sqrt(variance);
            prep.threshold = stage_threshold(benign_mean, prep.ensemble_sd,
                                             stage.score->review_fraction);
        } else if (!stage.rates && stage.score) {
            prep.threshold = stage_threshold(stage.score->benign_mean,
                                             stage.score->noise_sd,
                                             stage.score->review_fraction);
        } else if (!stage.rates) {
            throw std::invalid_argument("simulate: stage '" + stage.id +
                                        "' has no rates and no score model");
        }
        out.push_back(std::move(prep));
    }
    return out;
}

// One monitor's recognition of a surviving collusion signal. Recognition is
// drawn independently per stage so the simulated model matches the
// stage-wise analytic composition exactly.
bool recognizes_signal(const MonitorStage& stage, const AttackPolicy& policy,
                       double upstream_survival, CounterRng& rng) {
    if (stage.kind != StageKind::untrusted_monitor || !stage.susceptible ||
        !policy.uses_collusion_signal) {
        return false;
    }
    return rng.bernoulli(stage.signal_survival * upstream_survival);
}

// Does the stage flag this attack?
bool stage_flags(const PreparedStage& prep, const AttackPolicy& policy,
                 CounterRng& rng) {
    const MonitorStage& stage = *prep.stage;
    if (recognizes_signal(stage, policy, prep.upstream_survival, rng)) return false;

    if (stage.rates) return !rng.bernoulli(stage.rates->fnr);

    if (!prep.inputs.empty()) {
        double score = 0.0;
        for (std::size_t i = 0; i < prep.inputs.size(); ++i) {
            const MonitorStage& input = *prep.inputs[i];
            const ScoreModel& m = *input.score;
            const bool benign_looking =
                recognizes_signal(input, policy, prep.upstream_survival, rng);
            const double mean = benign_looking
                                    ? m.benign_mean
                                    : m.malicious_mean - policy.obfuscation_shift;
            score += prep.weights[i] * rng.normal(mean, m.noise_sd);
        }
        return score > prep.threshold;
    }

    const ScoreModel& m = *stage.score;
    const double score =
        rng.normal(m.malicious_mean - policy.obfuscation_shift, m.noise_sd);
    return score > prep.threshold;
}

}  // namespace

SimOutcome simulate(const Pipeline& pipeline, const AttackPolicy& policy,
                    const SimConfig& config) {
    if (config.n_trials == 0) {
        throw std::invalid_argument("simulate: n_trials must be >= 1");
    }
    const std::vector<PreparedStage> stages = prepare(pipeline);
    bool any_auto = false;
    bool any_human = false;
    for (const PreparedStage& p : stages) (p.human ? any_human : any_auto) = true;

    SimOutcome out;
    out.n_trials = config.n_trials;
    for (const PreparedStage& p : stages) out.caught_by_stage[p.stage->id] = 0;

    bool shut_down = false;
    for (std::uint64_t trial = 0; trial < config.n_trials; ++trial) {
        CounterRng rng(config.seed, trial);
        const bool attempted = rng.bernoulli(policy.attempt_probability);
        if (shut_down || !attempted) continue;
        ++out.attempts;

        // First flagging automated stage, or first catching human when there
        // is no automated layer.
        const MonitorStage* flagged_by = nullptr;
        for (const PreparedStage& p : stages) {
            if (p.human) continue;
            if (stage_flags(p, policy, rng) && !flagged_by) flagged_by = p.stage;
        }

        bool caught = false;
        const MonitorStage* credited = flagged_by;
        const bool reaches_humans = any_auto ? flagged_by != nullptr : true;
        if (any_human) {
            if (reaches_humans) {
                for (const PreparedStage& p : stages) {
                    if (!p.human) continue;
                    if (stage_flags(p, policy, rng)) {
                        caught = true;
                        if (!credited) credited = p.stage;
                        break;
                    }
                }
            }
        } else {
            caught = flagged_by != nullptr;
        }

        if (caught) {
            ++out.caught_by_stage[credited->id];
            if (config.episode_mode) shut_down = true;
        } else {
            ++out.undetected;
            if (rng.bernoulli(policy.execution_success)) ++out.succeeded;
        }
    }

    if (out.attempts > 0) {
        const double n = static_cast<double>(out.attempts);
        out.undetected_rate = static_cast<double>(out.undetected) / n;
        out.success_rate = static_cast<double>(out.succeeded) / n;
        out.undetected_se = stats::proportion_se(out.undetected_rate, out.attempts);
        out.success_se = stats::proportion_se(out.success_rate, out.attempts);
    }
    return out;
}

HoneypotCheckResult honeypot_monitor_check(const MonitorStage& monitor,
                                           std::uint64_t fake_attacks,
                                           double required_flag_fraction,
                                           std::uint64_t seed) {
    if (monitor.kind != StageKind::untrusted_monitor) {
        throw std::invalid_argument(
            "honeypot_monitor_check: stage '" + monitor.id +
            "' is not an untrusted_monitor");
    }
    double threshold = 0.0;
    if (!monitor.rates) {
        if (!monitor.score) {
            throw std::invalid_argument("honeypot_monitor_check: monitor '" +
                                        monitor.id +
                                        "' has no rates and no score model");
        }
        threshold = stage_threshold(monitor.score->benign_mean,
                                    monitor.score->noise_sd,
                                    monitor.score->review_fraction);
    }

    HoneypotCheckResult result;
    result.total = fake_attacks;
    for (std::uint64_t i = 0; i < fake_attacks; ++i) {
        CounterRng rng(seed, i);
        // Every fake attack plants a collusion signal; a colluding monitor
        // that recognizes it stays silent, which is what the check exposes.
        if (monitor.susceptible && rng.bernoulli(monitor.signal_survival)) continue;
        bool flags = false;
        if (monitor.rates) {
            flags = !rng.bernoulli(monitor.rates->fnr);
        } else {
            flags = rng.normal(monitor.score->malicious_mean,
                               monitor.score->noise_sd) > threshold;
        }
        if (flags) ++result.flagged;
    }
    result.observed_fraction =
        fake_attacks == 0
            ? 0.0
            : static_cast<double>(result.flagged) / static_cast<double>(fake_attacks);
    result.passed = result.observed_fraction >= required_flag_fraction;
    return result;
}

}  // namespace caseval::control
