#include "caseval/scdl/serialize.hpp"

#include <algorithm>
#include <charconv>

namespace caseval::scdl {

std::string format_number(double v) {
    char buf[64];
    const auto rc = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, rc.ptr);
}

namespace {

void write_value(std::string& out, const Value& value) {
    switch (value.kind) {
        case Value::Kind::number:
            out += format_number(value.number);
            break;
        case Value::Kind::ident:
            out += value.text;
            break;
        case Value::Kind::string:
            out += '"';
            for (char c : value.text) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            out += '"';
            break;
        case Value::Kind::list: {
            out += '[';
            bool first = true;
            for (const Value& item : value.items) {
                if (!first) out += ", ";
                first = false;
                write_value(out, item);
            }
            out += ']';
            break;
        }
    }
}

}  // namespace

std::string serialize(const Document& doc) {
    std::string out;
    bool first_block = true;
    for (const Block& block : doc.blocks) {
        if (!first_block) out += '\n';
        first_block = false;

        out += to_string(block.kind);
        out += ' ';
        out += block.id;
        if (block.entries.empty()) {
            out += " {}\n";
            continue;
        }
        out += " {\n";

        std::vector<const Entry*> sorted;
        sorted.reserve(block.entries.size());
        for (const Entry& e : block.entries) sorted.push_back(&e);
        std::sort(sorted.begin(), sorted.end(),
                  [](const Entry* a, const Entry* b) { return a->key < b->key; });

        for (const Entry* e : sorted) {
            out += "  ";
            out += e->key;
            out += ": ";
            write_value(out, e->value);
            out += '\n';
        }
        out += "}\n";
    }
    return out;
}

}  // namespace caseval::scdl
