// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/parser.hpp>
#include <pocval/pipeline.hpp>
#include <pocval/trace_io.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{
// Exit codes: the verdict itself for the happy paths, then input trouble
// and internal faults.
constexpr int kExitExploitable = 0;
constexpr int kExitNonExploitable = 1;
constexpr int kExitManuallyCheck = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitInternal = 4;

int verdict_exit(pocval::VerdictClass cls)
{
    switch (cls)
    {
    case pocval::VerdictClass::Exploitable:
        return kExitExploitable;
    case pocval::VerdictClass::NonExploitable:
        return kExitNonExploitable;
    case pocval::VerdictClass::ManuallyCheck:
        return kExitManuallyCheck;
    }
    return kExitInternal;
}

std::string slurp(const std::string& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        throw pocval::InputError{"cannot open file: " + path};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

nlohmann::json parse_json_file(const std::string& path)
{
    const auto j = nlohmann::json::parse(slurp(path), nullptr, false);
    if (j.is_discarded())
        throw pocval::InputError{"file is not valid JSON: " + path};
    return j;
}

void emit(const nlohmann::ordered_json& j, const std::string& out_path)
{
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream out{out_path, std::ios::binary};
    if (!out)
        throw pocval::InputError{"cannot write file: " + out_path};
    out << text;
}

int run_validate(const std::string& source_path, const std::string& report_path,
                 const std::string& config_path, const std::string& backend,
                 const std::string& out_path, double budget_secs, int max_generation)
{
    pocval::RunConfig config;
    if (!config_path.empty())
        config = pocval::RunConfig::from_file(config_path);
    if (!backend.empty())
        config.backend = backend;
    if (budget_secs > 0)
        config.budget.wall_clock_secs = budget_secs;
    if (max_generation >= 0)
        config.budget.max_generation = max_generation;

    const pocval::ContractUnit unit = pocval::parse(slurp(source_path), source_path);
    const pocval::VulnReport report = pocval::VulnReport::from_json(parse_json_file(report_path));

    const pocval::ValidationRun run = pocval::validate_report(unit, report, config);
    emit(run.to_json(), out_path);
    std::cerr << "verdict: " << pocval::verdict_class_name(run.verdict.cls);
    if (run.winning_poc)
        std::cerr << " (witness " << run.winning_poc->id.substr(0, 12) << ")";
    std::cerr << "\n";
    return verdict_exit(run.verdict.cls);
}

int run_analyze(const std::string& trace_path, const std::string& vuln_name,
                const std::string& deltas_path, const std::string& out_path)
{
    std::ifstream in{trace_path, std::ios::binary};
    if (!in)
        throw pocval::InputError{"cannot open file: " + trace_path};
    const auto trace = pocval::read_trace_jsonl(in);

    std::map<std::string, pocval::bigint> deltas;
    if (!deltas_path.empty())
        deltas = pocval::deltas_from_json(parse_json_file(deltas_path));

    const pocval::TraceAnalysis analysis =
        pocval::analyze_trace(trace, pocval::vuln_class_from_name(vuln_name), deltas);
    emit(analysis.to_json(), out_path);
    std::cerr << "verdict: " << pocval::verdict_class_name(analysis.verdict.cls) << "\n";
    return verdict_exit(analysis.verdict.cls);
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"pocval: decides whether a reported MiniSol vulnerability is exploitable "
                 "by generating, executing, and refining proof-of-concept scripts"};
    app.require_subcommand(1);

    std::string source_path, report_path, config_path, backend, out_path;
    double budget_secs = -1;
    int max_generation = -1;
    auto* validate = app.add_subcommand("validate", "validate one vulnerability report");
    validate->add_option("source", source_path, "MiniSol contract file")->required();
    validate->add_option("report", report_path, "vulnerability report JSON")->required();
    validate->add_option("--config", config_path, "run configuration JSON");
    validate->add_option("--backend", backend, "synthesis backend: template or remote")
        ->check(CLI::IsMember({"template", "remote"}));
    validate->add_option("--out", out_path, "write the report JSON here instead of stdout");
    validate->add_option("--budget-secs", budget_secs, "wall clock budget in seconds");
    validate->add_option("--max-generation", max_generation, "refinement generation cap");

    std::string trace_path, vuln_name, deltas_path, analyze_out;
    auto* analyze = app.add_subcommand("analyze-trace", "classify an execution trace offline");
    analyze->add_option("trace", trace_path, "trace JSONL file")->required();
    analyze->add_option("--vuln", vuln_name, "vulnerability class (UEW, US, RE, TOD, RCA)")
        ->required();
    analyze->add_option("--deltas", deltas_path, "attacker balance deltas JSON");
    analyze->add_option("--out", analyze_out, "write the analysis JSON here instead of stdout");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadInput;
    }

    try
    {
        if (validate->parsed())
            return run_validate(source_path, report_path, config_path, backend, out_path,
                                budget_secs, max_generation);
        return run_analyze(trace_path, vuln_name, deltas_path, analyze_out);
    }
    catch (const pocval::ParseError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    catch (const pocval::ResolveError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    catch (const pocval::SchemaError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    catch (const pocval::ConfigError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    catch (const pocval::InputError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    catch (const std::exception& e)
    {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
