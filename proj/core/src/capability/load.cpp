#include "caseval/capability/load.hpp"

#include "../load_util.hpp"

namespace caseval::capability {

using detail::get_bool;
using detail::get_count;
using detail::get_ident_list;
using detail::get_number;
using detail::get_number_list;
using detail::get_text;
using detail::load_error;

Inputs load(const scdl::Document& doc) {
    Inputs out;

    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::capability)) {
        CapabilityNode node;
        node.id = b->id;
        node.description = get_text(*b, "description");
        node.depends_on = get_ident_list(*b, "depends_on");
        node.pass_threshold = get_number(*b, "pass_threshold", 0.5);
        const std::string tier = get_text(*b, "tier");
        if (tier == "visible") node.tier = Tier::visible;
        else if (tier == "obfuscated") node.tier = Tier::obfuscated;
        else if (tier == "hidden") node.tier = Tier::hidden;
        const auto category = category_from(get_text(*b, "category", "other"));
        if (!category) throw load_error(*b, "unknown category");
        node.category = *category;
        out.capabilities.push_back(std::move(node));
    }

    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::task)) {
        TaskResult task;
        task.id = b->id;
        task.measures = get_ident_list(*b, "measures");
        task.trials = get_count(*b, "trials", 0);
        task.successes = get_count(*b, "successes", 0);
        task.pass_bar = get_number(*b, "pass_bar", 0.5);
        const std::string method = get_text(*b, "elicitation", "prompted");
        task.elicitation.method = method == "finetuned_iid"
                                      ? ElicitationMethod::finetuned_iid
                                      : ElicitationMethod::prompted;
        for (const std::string& arg : get_ident_list(*b, "sandbagging_arguments")) {
            if (arg == "inability") {
                task.elicitation.sandbagging_arguments.push_back(
                    SandbaggingArgument::inability);
            } else if (arg == "monitoring") {
                task.elicitation.sandbagging_arguments.push_back(
                    SandbaggingArgument::monitoring);
            } else if (arg == "prevention") {
                task.elicitation.sandbagging_arguments.push_back(
                    SandbaggingArgument::prevention);
            }
        }
        for (const scdl::Entry& e : b->entries) {
            constexpr std::string_view prefix = "assume_";
            if (e.key.rfind(prefix, 0) == 0 && e.key.size() > prefix.size()) {
                task.elicitation.assumption_flags[e.key.substr(prefix.size())] =
                    get_bool(*b, e.key, false);
            }
        }
        out.tasks.push_back(std::move(task));
    }

    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::scaling_series)) {
        ScalingSeries series;
        const std::vector<double> compute = get_number_list(*b, "compute");
        const std::vector<double> score = get_number_list(*b, "score");
        if (compute.size() != score.size()) {
            throw load_error(*b, "compute and score lists differ in length");
        }
        for (std::size_t i = 0; i < compute.size(); ++i) {
            series.points.push_back({compute[i], score[i]});
        }
        series.tolerance = get_number(*b, "tolerance", 0.05);
        out.scaling_series.emplace_back(b->id, std::move(series));
    }

    return out;
}

}  // namespace caseval::capability
