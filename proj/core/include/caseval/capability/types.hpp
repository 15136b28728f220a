#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace caseval::capability {

enum class Tier { visible, obfuscated, hidden };
enum class Category { scheming_reasoning, harm, oversight_evasion, other };

std::string_view to_string(Tier t);
std::string_view to_string(Category c);
std::optional<Category> category_from(std::string_view word);

/// Node of the capability DAG. depends_on edges point at prerequisite
/// capabilities; pass_threshold is the minimum fraction of passed tasks for
/// the capability to count as present.
struct CapabilityNode {
    std::string id;
    std::string description;
    std::vector<std::string> depends_on;
    double pass_threshold = 0.5;
    std::optional<Tier> tier;
    Category category = Category::other;
};

enum class ElicitationMethod { prompted, finetuned_iid };

enum class SandbaggingArgument { inability, monitoring, prevention };

struct ElicitationRecord {
    ElicitationMethod method = ElicitationMethod::prompted;
    std::vector<SandbaggingArgument> sandbagging_arguments;
    std::map<std::string, bool> assumption_flags;
};

struct TaskResult {
    std::string id;
    std::vector<std::string> measures;  // capability ids
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double pass_bar = 0.5;
    ElicitationRecord elicitation;
};

struct ScalingSeries {
    struct Point {
        double effective_compute = 0.0;
        double score = 0.0;
    };
    std::vector<Point> points;  // ordered by effective_compute
    double tolerance = 0.05;
};

struct CapabilityReport {
    std::map<std::string, double> per_task;    // task id -> probability
    std::map<std::string, double> direct;      // capability id -> probability
    std::map<std::string, double> propagated;  // capability id -> probability
    std::map<std::string, bool> present;       // capability id -> presence
    // (task id, assumption id) pairs from the sandbagging checks
    std::vector<std::pair<std::string, std::string>> unmet_assumptions;
};

}  // namespace caseval::capability
