#include "caseval/control/load.hpp"

#include "../load_util.hpp"

namespace caseval::control {

using detail::get_bool;
using detail::get_ident_list;
using detail::get_number;
using detail::get_number_list;
using detail::get_text;
using detail::load_error;

MonitorStage load_monitor(const scdl::Block& block) {
    MonitorStage stage;
    stage.id = block.id;
    const auto kind = stage_kind_from(get_text(block, "kind"));
    if (!kind) throw load_error(block, "unknown monitor kind");
    stage.kind = *kind;

    if (block.find("fnr") || block.find("fpr")) {
        DirectRates rates;
        rates.fnr = get_number(block, "fnr", 0.0);
        rates.fpr = get_number(block, "fpr", 0.0);
        stage.rates = rates;
    }
    const bool has_score_param = block.find("benign_mean") ||
                                 block.find("malicious_mean") ||
                                 block.find("noise_sd") ||
                                 block.find("review_fraction");
    if (has_score_param) {
        ScoreModel score;
        score.benign_mean = get_number(block, "benign_mean", 0.0);
        score.malicious_mean = get_number(block, "malicious_mean", 0.0);
        score.noise_sd = get_number(block, "noise_sd", 1.0);
        score.review_fraction = get_number(block, "review_fraction", 0.0);
        stage.score = score;
    }
    stage.susceptible = get_bool(block, "susceptible", false);
    stage.signal_survival = get_number(block, "signal_survival", 1.0);
    stage.inputs = get_ident_list(block, "inputs");
    stage.weights = get_number_list(block, "weights");
    return stage;
}

AttackPolicy load_policy(const scdl::Block& block) {
    AttackPolicy policy;
    policy.id = block.id;
    policy.attempt_probability = get_number(block, "attempt_probability", 1.0);
    policy.execution_success = get_number(block, "execution_success", 1.0);
    policy.uses_collusion_signal = get_bool(block, "uses_collusion_signal", false);
    policy.obfuscation_shift = get_number(block, "obfuscation_shift", 0.0);
    return policy;
}

Inputs load(const scdl::Document& doc) {
    Inputs out;
    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::monitor)) {
        out.monitors.push_back(load_monitor(*b));
    }
    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::protocol)) {
        Pipeline pipeline;
        pipeline.id = b->id;
        for (const std::string& id : get_ident_list(*b, "stages")) {
            bool found = false;
            for (const MonitorStage& m : out.monitors) {
                if (m.id == id) {
                    pipeline.stages.push_back(m);
                    found = true;
                    break;
                }
            }
            if (!found) throw load_error(*b, "protocol references unknown monitor '" + id + "'");
        }
        // Ensemble inputs may live outside the declared stage list; append
        // them so score derivation can resolve them. Appended inputs never
        // flag on their own (the consumed-inputs rule covers them).
        std::vector<std::string> missing;
        for (const MonitorStage& stage : pipeline.stages) {
            for (const std::string& id : stage.inputs) {
                bool present = false;
                for (const MonitorStage& m : pipeline.stages) {
                    if (m.id == id) present = true;
                }
                if (!present) missing.push_back(id);
            }
        }
        for (const std::string& id : missing) {
            bool found = false;
            for (const MonitorStage& m : out.monitors) {
                if (m.id == id) {
                    pipeline.stages.push_back(m);
                    found = true;
                    break;
                }
            }
            if (!found) throw load_error(*b, "ensemble input '" + id + "' not found");
        }
        out.pipelines.push_back(std::move(pipeline));
    }
    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::policy)) {
        out.policies.push_back(load_policy(*b));
    }
    return out;
}

}  // namespace caseval::control
