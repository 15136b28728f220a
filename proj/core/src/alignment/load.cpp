#include "caseval/alignment/load.hpp"

#include <cmath>
#include <cstdio>

#include "../load_util.hpp"

namespace caseval::alignment {

using detail::get_bool;
using detail::get_count;
using detail::get_ident_list;
using detail::get_number;
using detail::load_error;

namespace {

HoneypotCategory category_from(const std::string& word) {
    if (word == "self_exfiltration") return HoneypotCategory::self_exfiltration;
    if (word == "oversight_reduction") return HoneypotCategory::oversight_reduction;
    if (word == "data_manipulation") return HoneypotCategory::data_manipulation;
    return HoneypotCategory::other;
}

}  // namespace

SuiteSpec load_suite(const scdl::Block& block) {
    SuiteSpec spec;
    spec.id = block.id;
    spec.decontaminate_and_rerun = get_bool(block, "decontaminate", true);
    if (block.find("max_misaligned_rate")) {
        spec.max_misaligned_rate = get_number(block, "max_misaligned_rate", 0.0);
    }

    const std::uint64_t count = get_count(block, "count", 0);
    if (count == 0) throw load_error(block, "count must be positive");
    const double realism = get_number(block, "realism", 1.0);
    const double contaminated_fraction =
        get_number(block, "contaminated_fraction", 0.0);
    const double signal_fraction =
        get_number(block, "collusion_signal_fraction", 0.0);
    std::vector<std::string> categories = get_ident_list(block, "categories");
    if (categories.empty()) categories.push_back("other");

    const auto planned = [count](double fraction) {
        return static_cast<std::uint64_t>(
            std::llround(fraction * static_cast<double>(count)));
    };
    const std::uint64_t n_contaminated = planned(contaminated_fraction);
    const std::uint64_t n_signals = planned(signal_fraction);
    const std::uint64_t contamination_step =
        n_contaminated > 0 ? count / n_contaminated : 0;
    const std::uint64_t signal_step = n_signals > 0 ? count / n_signals : 0;

    spec.honeypots.reserve(count);
    char id_buf[32];
    for (std::uint64_t i = 0; i < count; ++i) {
        Honeypot hp;
        std::snprintf(id_buf, sizeof(id_buf), "hp_%04llu",
                      static_cast<unsigned long long>(i));
        hp.id = block.id + "_" + id_buf;
        hp.category = category_from(categories[i % categories.size()]);
        hp.realism = realism;
        hp.mentions_alignment_faking_concepts =
            contamination_step > 0 && i % contamination_step == 0 &&
            i / contamination_step < n_contaminated;
        hp.has_fake_collusion_signal =
            signal_step > 0 && i % signal_step == 0 && i / signal_step < n_signals;
        spec.honeypots.push_back(std::move(hp));
    }
    return spec;
}

BehaviorModel load_behavior_model(const scdl::Block& block) {
    BehaviorModel model;
    model.id = block.id;
    model.p_misaligned_action = get_number(block, "p_misaligned_action", 0.0);
    model.p_alignment_faking_reasoning =
        get_number(block, "p_alignment_faking_reasoning", 0.0);
    model.honeypot_detection_skill =
        get_number(block, "honeypot_detection_skill", 0.0);
    if (block.find("rare_failure_rate")) {
        model.rare_failure_rate = get_number(block, "rare_failure_rate", 0.0);
    }
    return model;
}

Inputs load(const scdl::Document& doc) {
    Inputs out;
    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::honeypot_set)) {
        out.suites.push_back(load_suite(*b));
    }
    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::behavior_model)) {
        out.models.push_back(load_behavior_model(*b));
    }
    return out;
}

}  // namespace caseval::alignment
