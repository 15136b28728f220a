#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace caseval::report {

enum class Format { json, text, both };

struct RunOptions {
    std::vector<std::string> inputs;  // .scdl file paths
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<double> risk;  // overrides the case's acceptable_risk
    Format format = Format::both;
    std::string out_path;  // empty: standard output
    bool stamp = false;    // add a wall-clock stamp (off for determinism)
};

/// Exit codes shared by every command:
///   0 top claim satisfied (or command completed)
///   1 top claim refuted
///   2 top claim unresolved
///   3 parse/validation/replay failure
///   4 usage error
struct RunResult {
    int exit_code = 0;
    std::string json;  // machine-readable report
    std::string text;  // human-readable outline / transcript / tables
    /// Exactly what belongs on standard output (empty when --out consumed it).
    std::string output;
    std::vector<std::string> diagnostics;  // for the error stream
};

/// Full pipeline: parse -> evaluate -> simulate -> verify. Runs every
/// evidence-producing module the inputs describe, verifies each case block,
/// and derives the exit code from the worst top-claim verdict.
RunResult run_verify(const RunOptions& options);

/// Analytic and Monte Carlo rates side by side for every protocol/policy
/// pair in the inputs.
RunResult run_simulate(const RunOptions& options);

/// Builds and evaluates the probes of every probe_spec block.
RunResult run_probes(const RunOptions& options);

/// Replays every process_script block and renders transcripts.
RunResult run_process(const RunOptions& options);

/// Rewrites the input files in canonical form (in place).
RunResult run_fmt(const RunOptions& options);

}  // namespace caseval::report
