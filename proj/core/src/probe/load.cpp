#include "caseval/probe/load.hpp"

#include "../load_util.hpp"

namespace caseval::probe {

using detail::get_count;
using detail::get_ident_list;
using detail::get_number;
using detail::get_number_list;
using detail::get_text;
using detail::load_error;

ProbeSpec load_spec(const scdl::Block& block) {
    ProbeSpec spec;
    spec.id = block.id;
    spec.generator.dimension =
        static_cast<std::size_t>(detail::require_number(block, "dimension"));
    spec.generator.scheming_mean = get_number_list(block, "scheming_mean");
    spec.generator.honest_mean = get_number_list(block, "honest_mean");
    spec.generator.noise_sd = get_number(block, "noise_sd", 1.0);
    spec.generator.n_per_class = get_count(block, "n_per_class", 1000);
    spec.generator.seed = get_count(block, "seed", 0);
    spec.generator.categories = get_ident_list(block, "categories");
    for (const scdl::Entry& e : block.entries) {
        constexpr std::string_view prefix = "offset_";
        if (e.key.rfind(prefix, 0) == 0 && e.key.size() > prefix.size()) {
            spec.generator.category_offsets[e.key.substr(prefix.size())] =
                get_number_list(block, e.key);
        }
    }

    const std::string policy = get_text(block, "threshold_policy", "midpoint");
    if (policy == "midpoint") {
        spec.threshold.kind = ThresholdPolicy::Kind::midpoint;
    } else if (policy == "fixed") {
        spec.threshold.kind = ThresholdPolicy::Kind::fixed;
        spec.threshold.fixed_value = detail::require_number(block, "threshold_value");
    } else if (policy == "target_fpr") {
        spec.threshold.kind = ThresholdPolicy::Kind::target_fpr;
        spec.threshold.target_fpr = detail::require_number(block, "target_fpr");
    } else {
        throw load_error(block, "unknown threshold_policy '" + policy + "'");
    }
    return spec;
}

std::vector<ProbeSpec> load(const scdl::Document& doc) {
    std::vector<ProbeSpec> out;
    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::probe_spec)) {
        out.push_back(load_spec(*b));
    }
    return out;
}

}  // namespace caseval::probe
