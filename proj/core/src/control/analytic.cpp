#include "caseval/control/analytic.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "caseval/stats.hpp"

namespace caseval::control {

std::string_view to_string(StageKind k) {
    switch (k) {
        case StageKind::trusted_monitor: return "trusted_monitor";
        case StageKind::untrusted_monitor: return "untrusted_monitor";
        case StageKind::probe_monitor: return "probe_monitor";
        case StageKind::paraphraser: return "paraphraser";
        case StageKind::ensemble: return "ensemble";
        case StageKind::human_review: return "human_review";
        case StageKind::shutdown: return "shutdown";
    }
    return "?";
}

std::optional<StageKind> stage_kind_from(std::string_view word) {
    if (word == "trusted_monitor") return StageKind::trusted_monitor;
    if (word == "untrusted_monitor") return StageKind::untrusted_monitor;
    if (word == "probe_monitor") return StageKind::probe_monitor;
    if (word == "paraphraser") return StageKind::paraphraser;
    if (word == "ensemble") return StageKind::ensemble;
    if (word == "human_review") return StageKind::human_review;
    if (word == "shutdown") return StageKind::shutdown;
    return std::nullopt;
}

namespace {

double score_threshold(double benign_mean, double noise_sd, double review_fraction) {
    if (review_fraction <= 0.0) return std::numeric_limits<double>::infinity();
    if (review_fraction >= 1.0) return -std::numeric_limits<double>::infinity();
    return benign_mean + noise_sd * stats::normal_quantile(1.0 - review_fraction);
}

double score_miss_probability(double threshold, double malicious_mean,
                              double noise_sd) {
    if (std::isinf(threshold)) return threshold > 0 ? 1.0 : 0.0;
    return stats::normal_cdf((threshold - malicious_mean) / noise_sd);
}

double collusion_blend(const MonitorStage& stage, const AttackPolicy& policy,
                       double upstream_signal_survival, double fnr_base) {
    if (stage.kind == StageKind::untrusted_monitor && stage.susceptible &&
        policy.uses_collusion_signal) {
        const double q = stage.signal_survival * upstream_signal_survival;
        return q + (1.0 - q) * fnr_base;
    }
    return fnr_base;
}

}  // namespace

double base_fnr(const MonitorStage& stage, const AttackPolicy& policy) {
    if (!stage.reviewing()) {
        throw std::invalid_argument("base_fnr: stage '" + stage.id +
                                    "' is not a monitor");
    }
    if (stage.rates) return stage.rates->fnr;
    if (stage.score) {
        const ScoreModel& m = *stage.score;
        const double threshold =
            score_threshold(m.benign_mean, m.noise_sd, m.review_fraction);
        return score_miss_probability(
            threshold, m.malicious_mean - policy.obfuscation_shift, m.noise_sd);
    }
    throw std::invalid_argument("base_fnr: stage '" + stage.id +
                                "' has no rates and no score model");
}

double effective_fnr(const MonitorStage& stage, const AttackPolicy& policy,
                     double upstream_signal_survival) {
    if (stage.kind == StageKind::ensemble && !stage.rates && !stage.score &&
        !stage.inputs.empty()) {
        throw std::invalid_argument(
            "effective_fnr: derived ensemble '" + stage.id +
            "' needs its input stages; use ensemble_effective_fnr");
    }
    return collusion_blend(stage, policy, upstream_signal_survival,
                           base_fnr(stage, policy));
}

double ensemble_effective_fnr(const MonitorStage& ensemble,
                              std::span<const MonitorStage> inputs,
                              const AttackPolicy& policy,
                              double upstream_signal_survival) {
    if (ensemble.kind != StageKind::ensemble) {
        throw std::invalid_argument("ensemble_effective_fnr: '" + ensemble.id +
                                    "' is not an ensemble");
    }
    if (ensemble.rates) {
        // Direct rates given; the inputs only shape the score, which the
        // direct parameterization already summarizes.
        return collusion_blend(ensemble, policy, upstream_signal_survival,
                               ensemble.rates->fnr);
    }
    if (inputs.empty()) {
        throw std::invalid_argument("ensemble_effective_fnr: ensemble '" +
                                    ensemble.id + "' has no inputs");
    }
    if (inputs.size() > 20) {
        throw std::invalid_argument(
            "ensemble_effective_fnr: too many inputs to enumerate");
    }
    double review_fraction = 0.0;
    if (ensemble.score) {
        review_fraction = ensemble.score->review_fraction;
    } else {
        throw std::invalid_argument("ensemble_effective_fnr: ensemble '" +
                                    ensemble.id + "' needs a review_fraction");
    }

    std::vector<double> weights = ensemble.weights;
    if (weights.empty()) weights.assign(inputs.size(), 1.0);
    if (weights.size() != inputs.size()) {
        throw std::invalid_argument("ensemble_effective_fnr: weights count");
    }

    double benign_mean = 0.0;
    double variance = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (!inputs[i].score) {
            throw std::invalid_argument("ensemble_effective_fnr: input '" +
                                        inputs[i].id + "' has no score model");
        }
        benign_mean += weights[i] * inputs[i].score->benign_mean;
        variance += weights[i] * weights[i] * inputs[i].score->noise_sd *
                    inputs[i].score->noise_sd;
    }
    const double sd = std::sqrt(variance);
    const double threshold = score_threshold(benign_mean, sd, review_fraction);

    // Enumerate which susceptible inputs recognize a surviving collusion
    // signal. A recognizing input reports a benign-looking score.
    std::vector<double> recognize_p(inputs.size(), 0.0);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (inputs[i].kind == StageKind::untrusted_monitor && inputs[i].susceptible &&
            policy.uses_collusion_signal) {
            recognize_p[i] = inputs[i].signal_survival * upstream_signal_survival;
        }
    }

    double miss = 0.0;
    const std::size_t states = std::size_t{1} << inputs.size();
    for (std::size_t mask = 0; mask < states; ++mask) {
        double weight = 1.0;
        double malicious_mean = 0.0;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const bool recognized = (mask >> i) & 1u;
            weight *= recognized ? recognize_p[i] : 1.0 - recognize_p[i];
            const ScoreModel& m = *inputs[i].score;
            const double mean = recognized
                                    ? m.benign_mean
                                    : m.malicious_mean - policy.obfuscation_shift;
            malicious_mean += weights[i] * mean;
        }
        if (weight == 0.0) continue;
        miss += weight * score_miss_probability(threshold, malicious_mean, sd);
    }
    return miss;
}

PipelineAnalysis analyze(const Pipeline& pipeline, const AttackPolicy& policy) {
    PipelineAnalysis out;

    std::map<std::string, const MonitorStage*> by_id;
    std::map<std::string, bool> consumed;  // ensemble inputs do not flag alone
    for (const MonitorStage& s : pipeline.stages) by_id[s.id] = &s;
    for (const MonitorStage& s : pipeline.stages) {
        for (const std::string& input : s.inputs) consumed[input] = true;
    }

    double survival = 1.0;  // paraphraser survival product so far
    double miss_auto = 1.0;
    double survive_humans = 1.0;
    bool any_auto = false;
    bool any_human = false;

    for (const MonitorStage& stage : pipeline.stages) {
        if (stage.kind == StageKind::paraphraser) {
            survival *= stage.signal_survival;
            continue;
        }
        if (!stage.reviewing() || consumed.count(stage.id)) continue;

        double fnr = 0.0;
        if (stage.kind == StageKind::ensemble && !stage.rates) {
            std::vector<MonitorStage> inputs;
            for (const std::string& id : stage.inputs) {
                const auto it = by_id.find(id);
                if (it == by_id.end()) {
                    throw std::invalid_argument("analyze: ensemble input '" + id +
                                                "' not in pipeline");
                }
                inputs.push_back(*it->second);
            }
            fnr = ensemble_effective_fnr(stage, inputs, policy, survival);
        } else {
            fnr = effective_fnr(stage, policy, survival);
        }

        const bool human = stage.kind == StageKind::human_review;
        out.stage_rates.push_back({stage.id, fnr, human});
        if (human) {
            any_human = true;
            survive_humans *= fnr;
        } else {
            any_auto = true;
            miss_auto *= fnr;
        }
    }

    if (!any_auto && !any_human) {
        out.warnings.push_back(
            "no reviewing stages: attacks proceed undetected (no controls)");
        out.undetected_rate = 1.0;
    } else {
        // With no automated layer every action reaches human review; with no
        // human layer an automated flag is itself the catch. Undetected iff
        // the automated layer misses or the review layer clears a flag:
        // a + h - a*h.
        const double p_miss_auto = any_auto ? miss_auto : 0.0;
        const double p_survive_review = any_human ? survive_humans : 0.0;
        if (p_miss_auto == 1.0) {
            out.undetected_rate = 1.0;  // nothing is ever flagged for review
        } else {
            out.undetected_rate = p_miss_auto + p_survive_review -
                                  p_miss_auto * p_survive_review;
        }
    }
    out.success_rate = out.undetected_rate * policy.execution_success;
    return out;
}

double analytic_undetected_rate(const Pipeline& pipeline,
                                const AttackPolicy& policy) {
    return analyze(pipeline, policy).undetected_rate;
}

double analytic_success_rate(const Pipeline& pipeline, const AttackPolicy& policy) {
    return analyze(pipeline, policy).success_rate;
}

}  // namespace caseval::control
