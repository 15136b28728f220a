#include "caseval/process/load.hpp"

#include "../load_util.hpp"

namespace caseval::process {

namespace {

using scdl::Value;

[[noreturn]] void bad_event(const scdl::Block& block, std::size_t index,
                            const std::string& what) {
    throw detail::load_error(block,
                             "event " + std::to_string(index) + ": " + what);
}

Event decode_event(const scdl::Block& block, std::size_t index, const Value& raw) {
    if (!raw.is_list() || raw.items.empty() || !raw.items.front().is_ident()) {
        bad_event(block, index, "must be a list starting with an event name");
    }
    const std::vector<Value>& item = raw.items;
    const std::string& name = item.front().text;
    Event event;

    if (name == "propose") {
        event.type = Event::Type::propose;
        if (item.size() != 6 || !item[1].is_ident() || !item[2].is_ident() ||
            !item[3].is_string() || !item[4].is_string() || !item[5].is_list()) {
            bad_event(block, index,
                      "propose takes [propose, id, severity, \"property\", "
                      "\"attack\", [[protocol, policy], ...]]");
        }
        event.proposal.id = item[1].text;
        if (item[2].text == "invalidates_case") {
            event.proposal.severity_claim = Severity::invalidates_case;
        } else if (item[2].text == "minor") {
            event.proposal.severity_claim = Severity::minor;
        } else {
            bad_event(block, index, "severity must be invalidates_case or minor");
        }
        event.proposal.property_violated = item[3].text;
        event.proposal.attack_strategy = item[4].text;
        for (const Value& pair : item[5].items) {
            if (!pair.is_list() || pair.items.size() != 2 ||
                !pair.items[0].is_ident() || !pair.items[1].is_ident()) {
                bad_event(block, index,
                          "eval_set entries must be [protocol, policy] pairs");
            }
            event.proposal.eval_set.emplace_back(pair.items[0].text,
                                                 pair.items[1].text);
        }
        if (event.proposal.eval_set.empty()) {
            bad_event(block, index, "eval_set must be non-empty");
        }
        return event;
    }

    if (name == "rest") {
        event.type = Event::Type::rest;
        return event;
    }

    if (name == "critique") {
        event.type = Event::Type::critique;
        if (item.size() > 1) {
            if (!item[1].is_string()) bad_event(block, index, "critique text");
            event.text = item[1].text;
        }
        return event;
    }

    if (name == "decide") {
        event.type = Event::Type::decide;
        if (item.size() < 2 || !item[1].is_ident()) {
            bad_event(block, index, "decide needs a verdict");
        }
        const auto verdict = judge_verdict_from(item[1].text);
        if (!verdict) bad_event(block, index, "unknown verdict '" + item[1].text + "'");
        event.decision.verdict = *verdict;
        if (item.size() == 2) return event;
        if (item.size() == 3 && item[2].is_string()) {
            event.decision.deadline = item[2].text;
            return event;
        }
        if (item.size() == 5) {
            const auto s = item[2].as_bool();
            const auto e = item[3].as_bool();
            const auto f = item[4].as_bool();
            if (!s || !e || !f) {
                bad_event(block, index, "judge checks must be true or false");
            }
            event.decision.severity_serious = *s;
            event.decision.evals_adequate = *e;
            event.decision.attack_fair = *f;
            return event;
        }
        bad_event(block, index, "decide takes a verdict, optional checks or deadline");
    }

    if (name == "evals") {
        event.type = Event::Type::eval_result;
        if (item.size() != 2 || !item[1].is_number()) {
            bad_event(block, index, "evals takes an observed success rate");
        }
        event.success_rate = item[1].number;
        return event;
    }

    if (name == "revise") {
        event.type = Event::Type::revise;
        if (item.size() > 1) {
            if (!item[1].is_string()) bad_event(block, index, "revise text");
            event.text = item[1].text;
        }
        return event;
    }

    if (name == "deploy") {
        event.type = Event::Type::deploy;
        return event;
    }

    bad_event(block, index, "unknown event '" + name + "'");
}

}  // namespace

ProcessScript load_script(const scdl::Block& block) {
    ProcessScript script;
    script.id = block.id;
    const Value* events = block.find("events");
    if (!events || !events->is_list()) {
        throw detail::load_error(block, "missing 'events' list");
    }
    for (std::size_t i = 0; i < events->items.size(); ++i) {
        script.events.push_back(decode_event(block, i, events->items[i]));
    }
    return script;
}

std::vector<ProcessScript> load(const scdl::Document& doc) {
    std::vector<ProcessScript> out;
    for (const scdl::Block* b : doc.of_kind(scdl::BlockKind::process_script)) {
        out.push_back(load_script(*b));
    }
    return out;
}

}  // namespace caseval::process
