#pragma once

// Randomized property suites shared by the property-test binary and the
// acceptance suite. Each suite runs a requested number of generated cases
// and reports the first failure it sees.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "caseval/capability/eval.hpp"
#include "caseval/cae/verify.hpp"
#include "caseval/control/analytic.hpp"
#include "caseval/alignment/honeypots.hpp"
#include "caseval/rng.hpp"
#include "caseval/scdl/parser.hpp"
#include "caseval/scdl/serialize.hpp"

namespace propsuite {

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0; }
    void fail(const std::string& detail) {
        if (failures == 0) first_failure = detail;
        ++failures;
    }
};

// --- random SCDL documents --------------------------------------------------

inline std::string random_ident(caseval::CounterRng& rng) {
    static const char* stems[] = {"alpha", "beta", "gamma", "delta", "probe",
                                  "monitor", "task_x", "cap", "rate", "k"};
    return std::string(stems[rng.next_u64() % 10]) + "_" +
           std::to_string(rng.next_u64() % 1000);
}

inline double random_number(caseval::CounterRng& rng) {
    switch (rng.next_u64() % 4) {
        case 0: return static_cast<double>(rng.next_u64() % 1000);
        case 1: return rng.next_double();
        case 2: return -rng.next_double() * 100.0;
        default: return rng.normal(0.0, 1e6);
    }
}

inline caseval::scdl::Value random_value(caseval::CounterRng& rng, int depth) {
    using caseval::scdl::Value;
    const std::uint64_t pick = rng.next_u64() % (depth > 0 ? 4 : 3);
    switch (pick) {
        case 0: return Value::make_number(random_number(rng));
        case 1: {
            std::string s;
            const std::size_t len = rng.next_u64() % 12;
            for (std::size_t i = 0; i < len; ++i) {
                // Printable ASCII; quotes and backslashes exercise escaping.
                s.push_back(static_cast<char>(32 + rng.next_u64() % 95));
            }
            return Value::make_string(s);
        }
        case 2: return Value::make_ident(random_ident(rng));
        default: {
            std::vector<Value> items;
            const std::size_t len = rng.next_u64() % 4;
            for (std::size_t i = 0; i < len; ++i) {
                items.push_back(random_value(rng, depth - 1));
            }
            return Value::make_list(std::move(items));
        }
    }
}

inline caseval::scdl::Document random_document(caseval::CounterRng& rng) {
    using namespace caseval::scdl;
    Document doc;
    const std::size_t blocks = rng.next_u64() % 6;
    std::map<BlockKind, std::vector<std::string>> used;
    for (std::size_t b = 0; b < blocks; ++b) {
        Block block;
        block.kind = static_cast<BlockKind>(rng.next_u64() % 14);
        std::string id;
        do {
            id = random_ident(rng);
        } while (std::find(used[block.kind].begin(), used[block.kind].end(), id) !=
                 used[block.kind].end());
        used[block.kind].push_back(id);
        block.id = id;

        const std::size_t entries = rng.next_u64() % 5;
        std::vector<std::string> keys;
        for (std::size_t e = 0; e < entries; ++e) {
            std::string key;
            do {
                key = random_ident(rng);
            } while (std::find(keys.begin(), keys.end(), key) != keys.end());
            keys.push_back(key);
            Entry entry;
            entry.key = key;
            entry.value = random_value(rng, 2);
            block.entries.push_back(std::move(entry));
        }
        doc.blocks.push_back(std::move(block));
    }
    return doc;
}

// Round-trip: parse(serialize(d)) is structurally equal to d and a second
// serialize is byte-identical.
inline SuiteResult prop_parser_roundtrip(std::uint64_t seed, std::size_t cases) {
    SuiteResult result;
    result.name = "parser round-trip idempotence";
    for (std::size_t i = 0; i < cases; ++i) {
        ++result.cases;
        caseval::CounterRng rng(seed, i);
        const caseval::scdl::Document doc = random_document(rng);
        const std::string text = caseval::scdl::serialize(doc);
        const caseval::scdl::ParseResult back = caseval::scdl::parse(text);
        if (!back.ok()) {
            result.fail("case " + std::to_string(i) + ": reparse failed: " +
                        caseval::scdl::format_error(back.errors.front()));
            continue;
        }
        if (!doc.structurally_equal(*back.document)) {
            result.fail("case " + std::to_string(i) + ": structural mismatch");
            continue;
        }
        if (caseval::scdl::serialize(*back.document) != text) {
            result.fail("case " + std::to_string(i) + ": serialize not idempotent");
        }
    }
    return result;
}

// Arbitrary bytes never crash the parser and always terminate.
inline SuiteResult prop_parser_fuzz(std::uint64_t seed, std::size_t cases) {
    SuiteResult result;
    result.name = "parser fuzz: arbitrary bytes terminate";
    for (std::size_t i = 0; i < cases; ++i) {
        ++result.cases;
        caseval::CounterRng rng(seed, i);
        std::string bytes;
        const std::size_t len = rng.next_u64() % 300;
        for (std::size_t b = 0; b < len; ++b) {
            bytes.push_back(static_cast<char>(rng.next_u64() % 256));
        }
        const caseval::scdl::ParseResult parsed = caseval::scdl::parse(bytes);
        if (parsed.ok() && !parsed.document) {
            result.fail("case " + std::to_string(i) + ": ok without document");
        }
    }
    return result;
}

// --- control: monotonicity in stage FNRs ------------------------------------

inline caseval::control::Pipeline random_pipeline(caseval::CounterRng& rng) {
    using namespace caseval::control;
    Pipeline pipeline;
    pipeline.id = "p";
    const std::size_t autos = 1 + rng.next_u64() % 3;
    for (std::size_t i = 0; i < autos; ++i) {
        MonitorStage stage;
        stage.id = "auto" + std::to_string(i);
        stage.kind = rng.bernoulli(0.5) ? StageKind::trusted_monitor
                                        : StageKind::probe_monitor;
        stage.rates = DirectRates{rng.next_double(), rng.next_double() * 0.1};
        pipeline.stages.push_back(std::move(stage));
    }
    const std::size_t humans = rng.next_u64() % 3;
    for (std::size_t i = 0; i < humans; ++i) {
        MonitorStage stage;
        stage.id = "human" + std::to_string(i);
        stage.kind = StageKind::human_review;
        stage.rates = DirectRates{rng.next_double(), 0.0};
        pipeline.stages.push_back(std::move(stage));
    }
    return pipeline;
}

inline SuiteResult prop_undetected_monotone(std::uint64_t seed, std::size_t cases) {
    SuiteResult result;
    result.name = "analytic_undetected_rate monotone in stage FNRs";
    using namespace caseval::control;
    for (std::size_t i = 0; i < cases; ++i) {
        ++result.cases;
        caseval::CounterRng rng(seed, i);
        Pipeline pipeline = random_pipeline(rng);
        AttackPolicy policy;
        policy.id = "a";
        policy.execution_success = rng.next_double();

        const double before = analytic_undetected_rate(pipeline, policy);
        // Raise one stage's FNR; the undetected rate may not drop.
        const std::size_t which = rng.next_u64() % pipeline.stages.size();
        DirectRates& rates = *pipeline.stages[which].rates;
        rates.fnr = rates.fnr + (1.0 - rates.fnr) * rng.next_double();
        const double after = analytic_undetected_rate(pipeline, policy);
        if (after + 1e-12 < before) {
            result.fail("case " + std::to_string(i) + ": " +
                        std::to_string(before) + " -> " + std::to_string(after));
        }

        // Adding an automated monitor with FNR < 1 never increases the rate.
        Pipeline larger = pipeline;
        MonitorStage extra;
        extra.id = "extra";
        extra.kind = StageKind::trusted_monitor;
        extra.rates = DirectRates{rng.next_double() * 0.99, 0.0};
        larger.stages.insert(larger.stages.begin(), extra);
        const double with_extra = analytic_undetected_rate(larger, policy);
        if (with_extra > after + 1e-12) {
            result.fail("case " + std::to_string(i) + ": extra monitor raised " +
                        std::to_string(after) + " to " + std::to_string(with_extra));
        }
    }
    return result;
}

// --- capability DAG propagation ----------------------------------------------

inline SuiteResult prop_propagate_dag(std::uint64_t seed, std::size_t cases) {
    SuiteResult result;
    result.name = "propagate_dag bounded by direct and order invariant";
    using namespace caseval::capability;
    for (std::size_t i = 0; i < cases; ++i) {
        ++result.cases;
        caseval::CounterRng rng(seed, i);
        const std::size_t n = 2 + rng.next_u64() % 7;
        std::vector<CapabilityNode> caps(n);
        std::map<std::string, double> direct;
        for (std::size_t k = 0; k < n; ++k) {
            caps[k].id = "c" + std::to_string(k);
            caps[k].pass_threshold = 0.5;
            // Edges only toward lower indices keep the graph acyclic.
            for (std::size_t j = 0; j < k; ++j) {
                if (rng.bernoulli(0.3)) {
                    caps[k].depends_on.push_back("c" + std::to_string(j));
                }
            }
            direct[caps[k].id] = rng.next_double();
        }

        const auto propagated = propagate_dag(caps, direct);
        for (const auto& [id, value] : propagated) {
            if (value > direct.at(id) + 1e-15) {
                result.fail("case " + std::to_string(i) + ": " + id +
                            " exceeds its direct value");
            }
        }

        // Shuffle declaration order; the result may not change.
        std::vector<CapabilityNode> shuffled = caps;
        for (std::size_t k = shuffled.size(); k > 1; --k) {
            std::swap(shuffled[k - 1], shuffled[rng.next_u64() % k]);
        }
        if (propagate_dag(shuffled, direct) != propagated) {
            result.fail("case " + std::to_string(i) + ": order dependence");
        }
    }
    return result;
}

// --- case-tree verification ---------------------------------------------------

struct RandomTree {
    caseval::cae::Case tree;
    caseval::cae::EvidenceStore store;
    std::vector<std::string> leaves;
    std::map<std::string, std::string> parent;
};

inline RandomTree random_tree(caseval::CounterRng& rng, bool all_satisfied) {
    using namespace caseval::cae;
    RandomTree out;
    out.tree.id = "t";
    out.tree.root = "claim0";
    int counter = 0;

    // Recursive claim -> arguments -> (claims | evidence).
    const std::function<std::string(int)> make_claim = [&](int depth) {
        CaseNode claim;
        claim.id = "claim" + std::to_string(counter++);
        claim.kind = NodeKind::claim;
        claim.combinator = all_satisfied || rng.bernoulli(0.7) ? Combinator::all
                                                               : Combinator::any;
        const std::size_t args = 1 + rng.next_u64() % 2;
        for (std::size_t a = 0; a < args; ++a) {
            CaseNode argument;
            argument.id = "arg" + std::to_string(counter++);
            argument.kind = NodeKind::argument;
            argument.argument_type = ArgumentType::plumbing;
            argument.combinator = all_satisfied || rng.bernoulli(0.7)
                                      ? Combinator::all
                                      : Combinator::any;
            const std::size_t kids = 1 + rng.next_u64() % 3;
            for (std::size_t k = 0; k < kids; ++k) {
                if (depth > 0 && rng.bernoulli(0.35)) {
                    const std::string child = make_claim(depth - 1);
                    argument.children.push_back(child);
                    out.parent[child] = argument.id;
                } else {
                    CaseNode leaf;
                    leaf.id = "ev" + std::to_string(counter++);
                    leaf.kind = NodeKind::evidence;
                    leaf.binding = "r." + leaf.id;
                    leaf.predicate_text = "m <= 0.5";
                    EvidenceResult result;
                    const std::uint64_t mode =
                        all_satisfied ? 0 : rng.next_u64() % 3;
                    if (mode != 2) {
                        result.metrics["m"] = mode == 0 ? 0.2 : 0.8;
                        out.store[leaf.binding] = result;
                    }
                    out.leaves.push_back(leaf.id);
                    argument.children.push_back(leaf.id);
                    out.parent[leaf.id] = argument.id;
                    out.tree.nodes[leaf.id] = std::move(leaf);
                }
            }
            claim.children.push_back(argument.id);
            out.parent[argument.id] = claim.id;
            out.tree.nodes[argument.id] = std::move(argument);
        }
        const std::string id = claim.id;
        out.tree.nodes[id] = std::move(claim);
        return id;
    };
    out.tree.root = make_claim(2);
    return out;
}

inline SuiteResult prop_verify_tree(std::uint64_t seed, std::size_t cases) {
    SuiteResult result;
    result.name = "verify order-independence and single-leaf-flip propagation";
    using namespace caseval::cae;
    for (std::size_t i = 0; i < cases; ++i) {
        ++result.cases;
        caseval::CounterRng rng(seed, i);

        // Order independence on a mixed-status tree.
        RandomTree random = random_tree(rng, false);
        const auto verdicts = verify(random.tree, random.store);
        Case shuffled = random.tree;
        for (auto& [id, node] : shuffled.nodes) {
            for (std::size_t k = node.children.size(); k > 1; --k) {
                std::swap(node.children[k - 1],
                          node.children[rng.next_u64() % k]);
            }
        }
        const auto shuffled_verdicts = verify(shuffled, random.store);
        bool same = verdicts.size() == shuffled_verdicts.size();
        if (same) {
            for (const auto& [id, verdict] : verdicts) {
                const auto it = shuffled_verdicts.find(id);
                if (it == shuffled_verdicts.end() ||
                    it->second.status != verdict.status) {
                    same = false;
                    break;
                }
            }
        }
        if (!same) {
            result.fail("case " + std::to_string(i) + ": order dependence");
            continue;
        }

        // All-satisfied tree: root satisfied; flipping one leaf refutes the
        // whole path up to the root.
        RandomTree sat = random_tree(rng, true);
        const auto before = verify(sat.tree, sat.store);
        if (before.at(sat.tree.root).status != Status::satisfied) {
            result.fail("case " + std::to_string(i) + ": all-satisfied root not "
                        "satisfied");
            continue;
        }
        const std::string& leaf =
            sat.leaves[rng.next_u64() % sat.leaves.size()];
        sat.store["r." + leaf].metrics["m"] = 0.8;  // predicate now fails
        const auto after = verify(sat.tree, sat.store);
        std::string walk = leaf;
        bool path_ok = true;
        while (true) {
            if (after.at(walk).status != Status::refuted) path_ok = false;
            const auto p = sat.parent.find(walk);
            if (p == sat.parent.end()) break;
            walk = p->second;
        }
        if (!path_ok || walk != sat.tree.root) {
            result.fail("case " + std::to_string(i) + ": flip did not refute the "
                        "path to the root");
        }
    }
    return result;
}

// --- rare-failure closed form --------------------------------------------------

inline SuiteResult prop_rare_failure(std::uint64_t seed, std::size_t cases) {
    SuiteResult result;
    result.name = "rare_failure_power closed form vs brute-force product";
    for (std::size_t i = 0; i < cases; ++i) {
        ++result.cases;
        caseval::CounterRng rng(seed, i);
        const double rate = rng.bernoulli(0.2) ? rng.next_double() * 1e-3
                                               : rng.next_double();
        const std::uint64_t n = rng.next_u64() % 1001;
        const auto power = caseval::alignment::rare_failure_power(rate, n, n);
        double survive = 1.0;
        for (std::uint64_t k = 0; k < n; ++k) survive *= 1.0 - rate;
        const double brute = 1.0 - survive;
        if (std::abs(power.p_caught_in_eval - brute) > 1e-10) {
            result.fail("case " + std::to_string(i) + ": rate " +
                        std::to_string(rate) + ", n " + std::to_string(n));
        }
        if (power.p_caught_in_eval < -1e-15 || power.p_caught_in_eval > 1.0 + 1e-15) {
            result.fail("case " + std::to_string(i) + ": out of range");
        }
    }
    return result;
}

}  // namespace propsuite
