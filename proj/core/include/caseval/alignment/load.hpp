#pragma once

#include <optional>
#include <vector>

#include "caseval/alignment/types.hpp"
#include "caseval/scdl/ast.hpp"

namespace caseval::alignment {

struct SuiteSpec {
    std::string id;
    HoneypotSuite honeypots;
    bool decontaminate_and_rerun = true;
    // The "at most" claim the suite is meant to support, when declared.
    std::optional<double> max_misaligned_rate;
};

/// Expands a honeypot_set block into a concrete suite. Contaminated entries
/// are spread evenly (every floor(count / contaminated) -th honeypot), so a
/// 0.5% fraction over 1000 honeypots contaminates exactly 5 of them.
SuiteSpec load_suite(const scdl::Block& block);

BehaviorModel load_behavior_model(const scdl::Block& block);

struct Inputs {
    std::vector<SuiteSpec> suites;
    std::vector<BehaviorModel> models;
};

Inputs load(const scdl::Document& doc);

}  // namespace caseval::alignment
