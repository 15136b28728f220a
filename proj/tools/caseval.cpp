// caseval — verification engine and simulator for evaluations-based safety
// cases. Subcommands: verify, simulate, probes, process, fmt.

#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "caseval/report/run.hpp"

namespace {

void add_common(CLI::App* cmd, caseval::report::RunOptions& options,
                std::string& format) {
    cmd->add_option("inputs", options.inputs, ".scdl input files")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", options.seed, "master seed override");
    cmd->add_option("--trials", options.trials,
                    "Monte Carlo trial count override")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "text", "both"}));
    cmd->add_option("--out", options.out_path, "write the report to PATH");
    cmd->add_flag("--stamp", options.stamp, "include a wall-clock stamp");
}

int emit(const caseval::report::RunResult& result) {
    if (!result.output.empty()) std::fputs(result.output.c_str(), stdout);
    for (const std::string& d : result.diagnostics) {
        std::fprintf(stderr, "%s\n", d.c_str());
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"safety-case verification engine"};
    app.require_subcommand(1);

    caseval::report::RunOptions options;
    std::string format = "both";

    CLI::App* verify = app.add_subcommand(
        "verify", "parse, evaluate, simulate and verify safety cases");
    add_common(verify, options, format);
    verify->add_option("--risk", options.risk,
                       "override the case's acceptable risk")
        ->check(CLI::Range(0.0, 1.0));

    CLI::App* simulate = app.add_subcommand(
        "simulate", "analytic and Monte Carlo control-protocol rates");
    add_common(simulate, options, format);

    CLI::App* probes =
        app.add_subcommand("probes", "build and evaluate whitebox probes");
    add_common(probes, options, format);

    CLI::App* process =
        app.add_subcommand("process", "replay control-evaluation process scripts");
    add_common(process, options, format);

    CLI::App* fmt = app.add_subcommand("fmt", "rewrite files in canonical form");
    fmt->add_option("inputs", options.inputs, ".scdl input files")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 4;  // usage errors exit 4
    }

    options.format = format == "json"   ? caseval::report::Format::json
                     : format == "text" ? caseval::report::Format::text
                                        : caseval::report::Format::both;

    if (verify->parsed()) return emit(caseval::report::run_verify(options));
    if (simulate->parsed()) return emit(caseval::report::run_simulate(options));
    if (probes->parsed()) return emit(caseval::report::run_probes(options));
    if (process->parsed()) return emit(caseval::report::run_process(options));
    if (fmt->parsed()) return emit(caseval::report::run_fmt(options));
    return 4;
}
