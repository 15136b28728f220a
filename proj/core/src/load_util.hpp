#pragma once

// Internal helpers for turning validated SCDL blocks into typed structs.
// Loaders run after scdl::validate, so lookups throw std::runtime_error on
// shape mismatches rather than reporting spans.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "caseval/scdl/ast.hpp"

namespace caseval::detail {

inline std::runtime_error load_error(const scdl::Block& block, const std::string& what) {
    return std::runtime_error(std::string(scdl::to_string(block.kind)) + " '" +
                              block.id + "': " + what);
}

inline double get_number(const scdl::Block& b, std::string_view key, double fallback) {
    const scdl::Value* v = b.find(key);
    if (!v) return fallback;
    if (!v->is_number()) throw load_error(b, "'" + std::string(key) + "' is not a number");
    return v->number;
}

inline double require_number(const scdl::Block& b, std::string_view key) {
    const scdl::Value* v = b.find(key);
    if (!v || !v->is_number()) {
        throw load_error(b, "missing numeric key '" + std::string(key) + "'");
    }
    return v->number;
}

inline std::uint64_t get_count(const scdl::Block& b, std::string_view key,
                               std::uint64_t fallback) {
    const scdl::Value* v = b.find(key);
    if (!v) return fallback;
    if (!v->is_number() || v->number < 0) {
        throw load_error(b, "'" + std::string(key) + "' is not a count");
    }
    return static_cast<std::uint64_t>(v->number);
}

inline bool get_bool(const scdl::Block& b, std::string_view key, bool fallback) {
    const scdl::Value* v = b.find(key);
    if (!v) return fallback;
    const auto parsed = v->as_bool();
    if (!parsed) throw load_error(b, "'" + std::string(key) + "' is not a boolean");
    return *parsed;
}

inline std::string get_text(const scdl::Block& b, std::string_view key,
                            std::string fallback = {}) {
    const scdl::Value* v = b.find(key);
    if (!v) return fallback;
    if (!v->is_string() && !v->is_ident()) {
        throw load_error(b, "'" + std::string(key) + "' is not text");
    }
    return v->text;
}

inline std::vector<std::string> get_ident_list(const scdl::Block& b,
                                               std::string_view key) {
    std::vector<std::string> out;
    const scdl::Value* v = b.find(key);
    if (!v) return out;
    if (!v->is_list()) throw load_error(b, "'" + std::string(key) + "' is not a list");
    for (const scdl::Value& item : v->items) {
        if (!item.is_ident()) {
            throw load_error(b, "'" + std::string(key) + "' entries must be identifiers");
        }
        out.push_back(item.text);
    }
    return out;
}

inline std::vector<double> get_number_list(const scdl::Block& b, std::string_view key) {
    std::vector<double> out;
    const scdl::Value* v = b.find(key);
    if (!v) return out;
    if (!v->is_list()) throw load_error(b, "'" + std::string(key) + "' is not a list");
    for (const scdl::Value& item : v->items) {
        if (!item.is_number()) {
            throw load_error(b, "'" + std::string(key) + "' entries must be numbers");
        }
        out.push_back(item.number);
    }
    return out;
}

}  // namespace caseval::detail
