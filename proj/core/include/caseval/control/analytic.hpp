#pragma once

#include <span>
#include <string>
#include <vector>

#include "caseval/control/types.hpp"

namespace caseval::control {

/// False negative rate of one reviewing stage against a policy, before any
/// collusion blending: the direct fnr, or under the score model the
/// probability that the malicious score (minus the policy's obfuscation
/// shift) stays below the benign quantile at (1 - review_fraction).
double base_fnr(const MonitorStage& stage, const AttackPolicy& policy);

/// Marginal effective FNR of a stage. For a collusion-susceptible untrusted
/// monitor facing a colluding policy this blends toward 1:
///   fnr_eff = q + (1 - q) * fnr_base,  q = signal_survival * upstream survival
/// where the upstream survival is the product of paraphraser survival rates
/// ahead of the stage. Stages are treated as independent detectors; the
/// pipeline composition below multiplies these marginals.
/// Throws for non-reviewing stages and for ensembles that need pipeline
/// context (derived ensembles; see ensemble_effective_fnr).
double effective_fnr(const MonitorStage& stage, const AttackPolicy& policy,
                     double upstream_signal_survival = 1.0);

/// Effective FNR of an ensemble whose score is the weighted sum of its
/// input monitors' scores (inputs must carry score models; weights default
/// to 1). Enumerates collusion-recognition states of susceptible inputs;
/// input noise is independent, so each state is Gaussian. The threshold is
/// the benign-score quantile of the ensemble at (1 - review_fraction).
double ensemble_effective_fnr(const MonitorStage& ensemble,
                              std::span<const MonitorStage> inputs,
                              const AttackPolicy& policy,
                              double upstream_signal_survival = 1.0);

struct StageRate {
    std::string stage_id;
    double fnr = 0.0;
    bool human = false;
};

/// Full analytic picture of a pipeline against a policy.
struct PipelineAnalysis {
    std::vector<StageRate> stage_rates;  // reviewing stages, pipeline order
    double undetected_rate = 1.0;
    double success_rate = 1.0;
    std::vector<std::string> warnings;
};

/// Composes stage FNRs. An attack is caught iff some automated reviewing
/// stage flags it and, when human review stages exist, some human reviewer
/// confirms it. Stages consumed as ensemble inputs do not flag on their
/// own. An empty pipeline (or one with no reviewing stage) leaves attacks
/// undetected at rate 1 and carries a "no controls" warning.
PipelineAnalysis analyze(const Pipeline& pipeline, const AttackPolicy& policy);

/// Probability an attack passes every control layer. §-style two-layer
/// pipelines reduce to fnr_auto + (1 - fnr_auto) * fnr_human.
double analytic_undetected_rate(const Pipeline& pipeline, const AttackPolicy& policy);

/// undetected_rate * execution_success.
double analytic_success_rate(const Pipeline& pipeline, const AttackPolicy& policy);

}  // namespace caseval::control
