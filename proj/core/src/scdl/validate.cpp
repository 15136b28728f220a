#include "caseval/scdl/validate.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace caseval::scdl {

namespace {

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

class Validator {
public:
    explicit Validator(const Document& doc) : doc_(doc) {
        for (const Block& b : doc_.blocks) index_[b.kind][b.id] = &b;
    }

    std::vector<ParseError> run() {
        for (const Block& b : doc_.blocks) {
            switch (b.kind) {
                case BlockKind::capability: validate_capability(b); break;
                case BlockKind::task: validate_task(b); break;
                case BlockKind::scaling_series: validate_scaling_series(b); break;
                case BlockKind::monitor: validate_monitor(b); break;
                case BlockKind::protocol: validate_protocol(b); break;
                case BlockKind::policy: validate_policy(b); break;
                case BlockKind::honeypot_set: validate_honeypot_set(b); break;
                case BlockKind::behavior_model: validate_behavior_model(b); break;
                case BlockKind::probe_spec: validate_probe_spec(b); break;
                case BlockKind::process_script: validate_process_script(b); break;
                case BlockKind::claim: validate_claim(b); break;
                case BlockKind::argument: validate_argument(b); break;
                case BlockKind::evidence: validate_evidence(b); break;
                case BlockKind::case_: validate_case(b); break;
            }
        }
        check_capability_cycles();
        check_ensemble_cycles();
        check_cae_graph();
        return std::move(errors_);
    }

private:
    using KeyHandler = std::function<void(const Entry&)>;

    void err(SourceSpan span, std::string message) {
        errors_.push_back({span, std::move(message), ParseError::Category::semantic});
    }

    bool exists(BlockKind kind, const std::string& id) const {
        const auto it = index_.find(kind);
        return it != index_.end() && it->second.count(id) > 0;
    }

    const Block* lookup(BlockKind kind, const std::string& id) const {
        const auto it = index_.find(kind);
        if (it == index_.end()) return nullptr;
        const auto jt = it->second.find(id);
        return jt == it->second.end() ? nullptr : jt->second;
    }

    // Dispatches every entry to its key handler; unknown keys are errors.
    // `prefix` optionally admits a family of keys (e.g. assume_*).
    void apply_schema(const Block& block, const std::map<std::string, KeyHandler>& keys,
                      const std::string& prefix = {},
                      const KeyHandler& prefix_handler = {}) {
        for (const Entry& e : block.entries) {
            const auto it = keys.find(e.key);
            if (it != keys.end()) {
                it->second(e);
                continue;
            }
            if (!prefix.empty() && e.key.rfind(prefix, 0) == 0 &&
                e.key.size() > prefix.size()) {
                prefix_handler(e);
                continue;
            }
            err(e.span, "unknown key '" + e.key + "' in " +
                            std::string(to_string(block.kind)) + " block '" +
                            block.id + "'");
        }
    }

    void require(const Block& block, std::initializer_list<const char*> keys) {
        for (const char* key : keys) {
            if (!block.find(key)) {
                err(block.span, std::string(to_string(block.kind)) + " block '" +
                                    block.id + "' is missing required key '" + key +
                                    "'");
            }
        }
    }

    // --- typed entry checks -------------------------------------------------

    void want_number(const Entry& e) {
        if (!e.value.is_number() || !std::isfinite(e.value.number)) {
            err(e.span, "key '" + e.key + "' must be a finite number");
        }
    }

    void want_probability(const Entry& e) {
        if (!e.value.is_number() || !(e.value.number >= 0.0 && e.value.number <= 1.0)) {
            err(e.span, "key '" + e.key + "' must be a probability in [0, 1]");
        }
    }

    void want_positive_number(const Entry& e) {
        if (!e.value.is_number() || !(e.value.number > 0.0) ||
            !std::isfinite(e.value.number)) {
            err(e.span, "key '" + e.key + "' must be a positive number");
        }
    }

    void want_nonneg_number(const Entry& e) {
        if (!e.value.is_number() || !(e.value.number >= 0.0) ||
            !std::isfinite(e.value.number)) {
            err(e.span, "key '" + e.key + "' must be a non-negative number");
        }
    }

    void want_positive_integer(const Entry& e) {
        if (!e.value.is_number() || !is_integer(e.value.number) || e.value.number < 1) {
            err(e.span, "key '" + e.key + "' must be a positive integer");
        }
    }

    void want_nonneg_integer(const Entry& e) {
        if (!e.value.is_number() || !is_integer(e.value.number) || e.value.number < 0) {
            err(e.span, "key '" + e.key + "' must be a non-negative integer");
        }
    }

    void want_bool(const Entry& e) {
        if (!e.value.as_bool()) {
            err(e.span, "key '" + e.key + "' must be true or false");
        }
    }

    void want_string(const Entry& e) {
        if (!e.value.is_string()) {
            err(e.span, "key '" + e.key + "' must be a quoted string");
        }
    }

    void want_enum(const Entry& e, std::initializer_list<const char*> allowed) {
        if (e.value.is_ident()) {
            for (const char* a : allowed) {
                if (e.value.text == a) return;
            }
        }
        std::string opts;
        for (const char* a : allowed) {
            if (!opts.empty()) opts += ", ";
            opts += a;
        }
        err(e.span, "key '" + e.key + "' must be one of {" + opts + "}");
    }

    void want_ref(const Entry& e, BlockKind target) {
        if (!e.value.is_ident()) {
            err(e.span, "key '" + e.key + "' must name a " +
                            std::string(to_string(target)) + " block");
            return;
        }
        if (!exists(target, e.value.text)) {
            err(e.value.span, "unknown reference " + e.value.text);
        }
    }

    void want_ref_list(const Entry& e, BlockKind target) {
        if (!e.value.is_list()) {
            err(e.span, "key '" + e.key + "' must be a list of " +
                            std::string(to_string(target)) + " identifiers");
            return;
        }
        for (const Value& item : e.value.items) {
            if (!item.is_ident()) {
                err(item.span, "entries of '" + e.key + "' must be identifiers");
                continue;
            }
            if (!exists(target, item.text)) {
                err(item.span, "unknown reference " + item.text);
            }
        }
    }

    void want_number_list(const Entry& e) {
        if (!e.value.is_list()) {
            err(e.span, "key '" + e.key + "' must be a list of numbers");
            return;
        }
        for (const Value& item : e.value.items) {
            if (!item.is_number() || !std::isfinite(item.number)) {
                err(item.span, "entries of '" + e.key + "' must be finite numbers");
            }
        }
    }

    void want_probability_list(const Entry& e) {
        if (!e.value.is_list()) {
            err(e.span, "key '" + e.key + "' must be a list of probabilities");
            return;
        }
        for (const Value& item : e.value.items) {
            if (!item.is_number() || !(item.number >= 0.0 && item.number <= 1.0)) {
                err(item.span, "entries of '" + e.key + "' must lie in [0, 1]");
            }
        }
    }

    // --- per-kind schemas ---------------------------------------------------

    void validate_capability(const Block& b) {
        apply_schema(
            b,
            {
                {"description", [&](const Entry& e) { want_string(e); }},
                {"depends_on",
                 [&](const Entry& e) { want_ref_list(e, BlockKind::capability); }},
                {"pass_threshold", [&](const Entry& e) { want_probability(e); }},
                {"tier",
                 [&](const Entry& e) {
                     want_enum(e, {"visible", "obfuscated", "hidden"});
                 }},
                {"category",
                 [&](const Entry& e) {
                     want_enum(e, {"scheming_reasoning", "harm", "oversight_evasion",
                                   "other"});
                 }},
            });
        require(b, {"pass_threshold", "category"});
    }

    void validate_task(const Block& b) {
        apply_schema(
            b,
            {
                {"measures",
                 [&](const Entry& e) {
                     want_ref_list(e, BlockKind::capability);
                     if (e.value.is_list() && e.value.items.empty()) {
                         err(e.span, "task '" + b.id +
                                         "' must measure at least one capability");
                     }
                 }},
                {"trials", [&](const Entry& e) { want_positive_integer(e); }},
                {"successes", [&](const Entry& e) { want_nonneg_integer(e); }},
                {"pass_bar", [&](const Entry& e) { want_probability(e); }},
                {"elicitation",
                 [&](const Entry& e) { want_enum(e, {"prompted", "finetuned_iid"}); }},
                {"sandbagging_arguments",
                 [&](const Entry& e) {
                     if (!e.value.is_list()) {
                         err(e.span, "key 'sandbagging_arguments' must be a list");
                         return;
                     }
                     for (const Value& item : e.value.items) {
                         if (!item.is_ident() ||
                             (item.text != "inability" && item.text != "monitoring" &&
                              item.text != "prevention")) {
                             err(item.span,
                                 "sandbagging arguments are inability, monitoring or "
                                 "prevention");
                         }
                     }
                 }},
            },
            "assume_", [&](const Entry& e) { want_bool(e); });
        require(b, {"measures", "trials", "successes", "pass_bar", "elicitation"});

        const Value* trials = b.find("trials");
        const Value* successes = b.find("successes");
        if (trials && successes && trials->is_number() && successes->is_number() &&
            successes->number > trials->number) {
            err(b.span, "task '" + b.id + "' has successes > trials");
        }
        const Value* elicitation = b.find("elicitation");
        if (elicitation && elicitation->is_ident() &&
            elicitation->text == "finetuned_iid") {
            for (const char* flag :
                 {"assume_no_gradient_hacking", "assume_iid_training_data",
                  "assume_optimal_policy_data"}) {
                if (!b.find(flag)) {
                    err(b.span, "task '" + b.id +
                                    "' uses finetuned_iid elicitation but lacks '" +
                                    flag + "'");
                }
            }
        }
    }

    void validate_scaling_series(const Block& b) {
        apply_schema(
            b,
            {
                {"compute",
                 [&](const Entry& e) {
                     want_number_list(e);
                     if (!e.value.is_list()) return;
                     double prev = 0.0;
                     bool first = true;
                     for (const Value& item : e.value.items) {
                         if (!item.is_number()) continue;
                         if (item.number <= 0.0) {
                             err(item.span, "effective compute must be positive");
                         }
                         if (!first && item.number <= prev) {
                             err(item.span,
                                 "effective compute must be strictly increasing");
                         }
                         prev = item.number;
                         first = false;
                     }
                 }},
                {"score", [&](const Entry& e) { want_probability_list(e); }},
                {"tolerance", [&](const Entry& e) { want_nonneg_number(e); }},
            });
        require(b, {"compute", "score"});
        const Value* compute = b.find("compute");
        const Value* score = b.find("score");
        if (compute && score && compute->is_list() && score->is_list() &&
            compute->items.size() != score->items.size()) {
            err(b.span, "scaling_series '" + b.id +
                            "' compute and score lists differ in length");
        }
    }

    void validate_monitor(const Block& b) {
        apply_schema(
            b,
            {
                {"kind",
                 [&](const Entry& e) {
                     want_enum(e, {"trusted_monitor", "untrusted_monitor",
                                   "probe_monitor", "paraphraser", "ensemble",
                                   "human_review", "shutdown"});
                 }},
                {"fnr", [&](const Entry& e) { want_probability(e); }},
                {"fpr", [&](const Entry& e) { want_probability(e); }},
                {"benign_mean", [&](const Entry& e) { want_number(e); }},
                {"malicious_mean", [&](const Entry& e) { want_number(e); }},
                {"noise_sd", [&](const Entry& e) { want_positive_number(e); }},
                {"review_fraction", [&](const Entry& e) { want_probability(e); }},
                {"susceptible", [&](const Entry& e) { want_bool(e); }},
                {"signal_survival", [&](const Entry& e) { want_probability(e); }},
                {"inputs",
                 [&](const Entry& e) { want_ref_list(e, BlockKind::monitor); }},
                {"weights", [&](const Entry& e) { want_number_list(e); }},
            });
        require(b, {"kind"});

        const Value* kind = b.find("kind");
        if (!kind || !kind->is_ident()) return;
        const std::string& k = kind->text;

        if (k != "untrusted_monitor") {
            for (const char* key : {"susceptible"}) {
                if (b.find(key)) {
                    err(b.span, "monitor '" + b.id + "': '" + key +
                                    "' applies to untrusted_monitor only");
                }
            }
        }
        if (k != "untrusted_monitor" && k != "paraphraser" && b.find("signal_survival")) {
            err(b.span, "monitor '" + b.id +
                            "': 'signal_survival' applies to untrusted_monitor or "
                            "paraphraser only");
        }
        if (k != "ensemble" && (b.find("inputs") || b.find("weights"))) {
            err(b.span,
                "monitor '" + b.id + "': 'inputs'/'weights' apply to ensemble only");
        }
        if (k == "ensemble") {
            const Value* inputs = b.find("inputs");
            const Value* weights = b.find("weights");
            if (inputs && weights && inputs->is_list() && weights->is_list() &&
                inputs->items.size() != weights->items.size()) {
                err(b.span, "monitor '" + b.id +
                                "': weights count must equal inputs count");
            }
            if (weights && !inputs) {
                err(b.span, "monitor '" + b.id + "': weights given without inputs");
            }
        }
        if (k == "paraphraser" && !b.find("signal_survival")) {
            err(b.span, "paraphraser '" + b.id + "' requires 'signal_survival'");
        }

        const bool reviewing = k == "trusted_monitor" || k == "untrusted_monitor" ||
                               k == "probe_monitor" || k == "human_review" ||
                               k == "ensemble";
        if (reviewing) {
            const bool direct = b.find("fnr") != nullptr;
            const bool score = b.find("benign_mean") && b.find("malicious_mean") &&
                               b.find("noise_sd") && b.find("review_fraction");
            const bool partial_score = b.find("benign_mean") || b.find("malicious_mean") ||
                                       b.find("noise_sd") || b.find("review_fraction");
            if (!direct && partial_score && !score) {
                err(b.span, "monitor '" + b.id +
                                "': score model needs benign_mean, malicious_mean, "
                                "noise_sd and review_fraction");
            }
            const bool derived_ensemble = k == "ensemble" && b.find("inputs");
            if (!direct && !score && !derived_ensemble) {
                err(b.span, "monitor '" + b.id +
                                "' needs direct rates (fnr) or a full score model");
            }
        }
    }

    void validate_protocol(const Block& b) {
        apply_schema(b, {
                            {"stages",
                             [&](const Entry& e) {
                                 want_ref_list(e, BlockKind::monitor);
                             }},
                        });
        require(b, {"stages"});
    }

    void validate_policy(const Block& b) {
        apply_schema(
            b,
            {
                {"attempt_probability", [&](const Entry& e) { want_probability(e); }},
                {"execution_success", [&](const Entry& e) { want_probability(e); }},
                {"uses_collusion_signal", [&](const Entry& e) { want_bool(e); }},
                {"obfuscation_shift", [&](const Entry& e) { want_number(e); }},
            });
    }

    void validate_honeypot_set(const Block& b) {
        apply_schema(
            b,
            {
                {"count", [&](const Entry& e) { want_positive_integer(e); }},
                {"categories",
                 [&](const Entry& e) {
                     if (!e.value.is_list()) {
                         err(e.span, "key 'categories' must be a list");
                         return;
                     }
                     for (const Value& item : e.value.items) {
                         if (!item.is_ident() ||
                             (item.text != "self_exfiltration" &&
                              item.text != "oversight_reduction" &&
                              item.text != "data_manipulation" && item.text != "other")) {
                             err(item.span,
                                 "honeypot categories are self_exfiltration, "
                                 "oversight_reduction, data_manipulation or other");
                         }
                     }
                 }},
                {"realism", [&](const Entry& e) { want_probability(e); }},
                {"contaminated_fraction",
                 [&](const Entry& e) { want_probability(e); }},
                {"collusion_signal_fraction",
                 [&](const Entry& e) { want_probability(e); }},
                {"decontaminate", [&](const Entry& e) { want_bool(e); }},
                {"max_misaligned_rate",
                 [&](const Entry& e) { want_probability(e); }},
            });
        require(b, {"count"});
    }

    void validate_behavior_model(const Block& b) {
        apply_schema(
            b,
            {
                {"p_misaligned_action", [&](const Entry& e) { want_probability(e); }},
                {"p_alignment_faking_reasoning",
                 [&](const Entry& e) { want_probability(e); }},
                {"honeypot_detection_skill",
                 [&](const Entry& e) { want_probability(e); }},
                {"rare_failure_rate", [&](const Entry& e) { want_probability(e); }},
            });
    }

    void validate_probe_spec(const Block& b) {
        apply_schema(
            b,
            {
                {"dimension",
                 [&](const Entry& e) {
                     want_positive_integer(e);
                     if (e.value.is_number() && e.value.number < 2) {
                         err(e.span, "probe dimension must be at least 2");
                     }
                 }},
                {"scheming_mean", [&](const Entry& e) { want_number_list(e); }},
                {"honest_mean", [&](const Entry& e) { want_number_list(e); }},
                {"noise_sd", [&](const Entry& e) { want_positive_number(e); }},
                {"n_per_class", [&](const Entry& e) { want_positive_integer(e); }},
                {"seed", [&](const Entry& e) { want_nonneg_integer(e); }},
                {"threshold_policy",
                 [&](const Entry& e) {
                     want_enum(e, {"midpoint", "fixed", "target_fpr"});
                 }},
                {"threshold_value", [&](const Entry& e) { want_number(e); }},
                {"target_fpr", [&](const Entry& e) { want_probability(e); }},
                {"categories",
                 [&](const Entry& e) {
                     if (!e.value.is_list()) {
                         err(e.span, "key 'categories' must be a list of identifiers");
                         return;
                     }
                     for (const Value& item : e.value.items) {
                         if (!item.is_ident()) {
                             err(item.span, "categories must be identifiers");
                         }
                     }
                 }},
            },
            "offset_", [&](const Entry& e) { want_number_list(e); });
        require(b, {"dimension", "scheming_mean", "honest_mean", "noise_sd",
                    "n_per_class"});

        const Value* dim = b.find("dimension");
        if (!dim || !dim->is_number()) return;
        const std::size_t d = static_cast<std::size_t>(dim->number);
        for (const Entry& e : b.entries) {
            const bool is_mean = e.key == "scheming_mean" || e.key == "honest_mean" ||
                                 e.key.rfind("offset_", 0) == 0;
            if (is_mean && e.value.is_list() && e.value.items.size() != d) {
                err(e.span, "key '" + e.key + "' must have 'dimension' entries");
            }
        }
        const Value* policy = b.find("threshold_policy");
        if (policy && policy->is_ident()) {
            if (policy->text == "fixed" && !b.find("threshold_value")) {
                err(b.span, "threshold_policy fixed requires 'threshold_value'");
            }
            if (policy->text == "target_fpr" && !b.find("target_fpr")) {
                err(b.span, "threshold_policy target_fpr requires 'target_fpr'");
            }
        }
    }

    void validate_process_script(const Block& b) {
        apply_schema(b, {
                            {"events",
                             [&](const Entry& e) {
                                 if (!e.value.is_list()) {
                                     err(e.span, "key 'events' must be a list");
                                     return;
                                 }
                                 for (const Value& item : e.value.items) {
                                     if (!item.is_list() || item.items.empty() ||
                                         !item.items.front().is_ident()) {
                                         err(item.span,
                                             "each event must be a list starting with "
                                             "an event name");
                                     }
                                 }
                             }},
                        });
        require(b, {"events"});
    }

    void validate_claim(const Block& b) {
        apply_schema(b,
                     {
                         {"text", [&](const Entry& e) { want_string(e); }},
                         {"children",
                          [&](const Entry& e) { check_cae_children(b, e); }},
                         {"combinator",
                          [&](const Entry& e) { want_enum(e, {"all", "any"}); }},
                     });
    }

    void validate_argument(const Block& b) {
        apply_schema(
            b,
            {
                {"text", [&](const Entry& e) { want_string(e); }},
                {"type",
                 [&](const Entry& e) {
                     want_enum(e, {"scheming_inability", "harm_inability",
                                   "harm_control", "alignment_eval",
                                   "alignment_training", "decomposition", "plumbing"});
                 }},
                {"children", [&](const Entry& e) { check_cae_children(b, e); }},
                {"combinator",
                 [&](const Entry& e) { want_enum(e, {"all", "any"}); }},
                {"scope", [&](const Entry& e) { want_string(e); }},
            });
        require(b, {"type"});
    }

    void validate_evidence(const Block& b) {
        apply_schema(b,
                     {
                         {"text", [&](const Entry& e) { want_string(e); }},
                         {"binding",
                          [&](const Entry& e) {
                              if (!e.value.is_string() && !e.value.is_ident()) {
                                  err(e.span, "key 'binding' must name a result");
                              }
                          }},
                         {"predicate", [&](const Entry& e) { want_string(e); }},
                         {"assumption",
                          [&](const Entry& e) {
                              if (!e.value.is_ident()) {
                                  err(e.span,
                                      "key 'assumption' must be an identifier");
                              }
                          }},
                         {"attested", [&](const Entry& e) { want_bool(e); }},
                     });
        const bool bound = b.find("binding") || b.find("predicate");
        const bool attested = b.find("assumption") || b.find("attested");
        if (bound && (!b.find("binding") || !b.find("predicate"))) {
            err(b.span,
                "evidence '" + b.id + "' needs both 'binding' and 'predicate'");
        }
        if (attested && (!b.find("assumption") || !b.find("attested"))) {
            err(b.span,
                "evidence '" + b.id + "' needs both 'assumption' and 'attested'");
        }
        if (!bound && !attested) {
            err(b.span, "evidence '" + b.id +
                            "' must carry a binding/predicate or an "
                            "assumption/attested pair");
        }
    }

    void validate_case(const Block& b) {
        apply_schema(
            b,
            {
                {"root", [&](const Entry& e) { want_ref(e, BlockKind::claim); }},
                {"acceptable_risk", [&](const Entry& e) { want_probability(e); }},
                {"seed", [&](const Entry& e) { want_nonneg_integer(e); }},
                {"trials", [&](const Entry& e) { want_positive_integer(e); }},
                {"p_can_scheme", [&](const Entry& e) { want_probability(e); }},
                {"p_will_given_can", [&](const Entry& e) { want_probability(e); }},
                {"p_harm_given_will", [&](const Entry& e) { want_probability(e); }},
            });
        require(b, {"root"});
    }

    // CAE child-kind rule: claims are supported by arguments; arguments by
    // claims or evidence.
    void check_cae_children(const Block& parent, const Entry& e) {
        if (!e.value.is_list()) {
            err(e.span, "key 'children' must be a list of identifiers");
            return;
        }
        for (const Value& item : e.value.items) {
            if (!item.is_ident()) {
                err(item.span, "entries of 'children' must be identifiers");
                continue;
            }
            const bool as_claim = exists(BlockKind::claim, item.text);
            const bool as_argument = exists(BlockKind::argument, item.text);
            const bool as_evidence = exists(BlockKind::evidence, item.text);
            if (!as_claim && !as_argument && !as_evidence) {
                err(item.span, "unknown reference " + item.text);
                continue;
            }
            if ((as_claim ? 1 : 0) + (as_argument ? 1 : 0) + (as_evidence ? 1 : 0) > 1) {
                err(item.span, "ambiguous reference '" + item.text +
                                   "' (exists as several CAE kinds)");
                continue;
            }
            if (parent.kind == BlockKind::claim && !as_argument) {
                err(item.span, "claim '" + parent.id +
                                   "' may only be supported by arguments");
            }
            if (parent.kind == BlockKind::argument && as_argument) {
                err(item.span, "argument '" + parent.id +
                                   "' may only be supported by claims or evidence");
            }
        }
    }

    void check_capability_cycles() {
        check_cycles(BlockKind::capability, "depends_on", "capability cycle");
    }

    void check_ensemble_cycles() {
        check_cycles(BlockKind::monitor, "inputs", "ensemble input cycle");
    }

    void check_cycles(BlockKind kind, const char* edge_key,
                      const std::string& label) {
        const auto it = index_.find(kind);
        if (it == index_.end()) return;
        // 0 = unvisited, 1 = on stack, 2 = done; one error per back edge.
        std::map<std::string, int> state;
        std::function<void(const Block&)> visit = [&](const Block& b) {
            int& s = state[b.id];
            if (s != 0) return;
            s = 1;
            if (const Value* edges = b.find(edge_key); edges && edges->is_list()) {
                for (const Value& item : edges->items) {
                    if (!item.is_ident()) continue;
                    const Block* next = lookup(kind, item.text);
                    if (!next) continue;
                    if (state[next->id] == 1) {
                        err(item.span, label + " involving '" + item.text + "'");
                        continue;
                    }
                    visit(*next);
                }
            }
            state[b.id] = 2;
        };
        for (const auto& [id, block] : it->second) visit(*block);
    }

    // The CAE graph must be a forest: every claim/argument/evidence node has
    // at most one parent, and no node is its own ancestor.
    void check_cae_graph() {
        std::map<std::string, const Block*> parent_of;
        for (const Block& b : doc_.blocks) {
            if (b.kind != BlockKind::claim && b.kind != BlockKind::argument) continue;
            const Value* children = b.find("children");
            if (!children || !children->is_list()) continue;
            for (const Value& item : children->items) {
                if (!item.is_ident()) continue;
                const auto [it, inserted] = parent_of.emplace(item.text, &b);
                if (!inserted && it->second != &b) {
                    err(item.span, "node '" + item.text +
                                       "' has multiple parents in the CAE graph");
                }
            }
        }
        // Cycle detection over claim/argument children edges.
        std::map<const Block*, int> state;
        std::function<void(const Block&)> visit = [&](const Block& b) {
            int& s = state[&b];
            if (s != 0) return;
            s = 1;
            const Value* children = b.find("children");
            if (children && children->is_list()) {
                for (const Value& item : children->items) {
                    if (!item.is_ident()) continue;
                    const Block* next = lookup(BlockKind::claim, item.text);
                    if (!next) next = lookup(BlockKind::argument, item.text);
                    if (!next) continue;
                    if (state[next] == 1) {
                        err(item.span,
                            "CAE cycle involving '" + item.text + "'");
                        continue;
                    }
                    visit(*next);
                }
            }
            s = 2;
        };
        for (const Block& b : doc_.blocks) {
            if (b.kind == BlockKind::claim || b.kind == BlockKind::argument) visit(b);
        }
    }

    const Document& doc_;
    std::vector<ParseError> errors_;
    std::map<BlockKind, std::map<std::string, const Block*>> index_;
};

}  // namespace

std::vector<ParseError> validate(const Document& doc) {
    return Validator(doc).run();
}

}  // namespace caseval::scdl
