// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/corpus.hpp>
#include <pocval/refine.hpp>

namespace pocval
{
struct RunConfig
{
    Budget budget;
    std::string backend = "template";   // "template" or "remote"
    RemoteConfig remote;
    bool remote_judge = false;          // ask the endpoint to second-guess profit
    ExecLimits limits;
    Valuation valuation;                // empty: every asset priced 1:1

    // Strict parse: unknown keys are a ConfigError, as is a structural
    // mismatch. All keys optional; defaults as above.
    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);
};

struct StageTimings
{
    long total_ms = 0;
    long execute_ms = 0;
    long synthesize_ms = 0;
    long refine_ms = 0;
    int executions = 0;
    std::string terminated_by;   // "exploit-found" | "exhausted" | "budget"
};

// Everything one validation run produced, convertible to the report JSON.
struct ValidationRun
{
    VulnReport report;
    std::vector<VulnPath> paths;
    std::vector<PoCResult> results;
    Verdict verdict;
    std::optional<PoC> winning_poc;
    StageTimings timing;

    nlohmann::ordered_json to_json() const;
};

// Validates one vulnerability report end to end: derives paths, seeds a PoC
// per path, executes candidates in FIFO order, refines failures, and stops
// at the first candidate that both triggers the vulnerability and profits.
// A found witness is re-executed before the verdict is emitted; a witness
// that does not reproduce downgrades the verdict to ManuallyCheck.
//
// `backend_override` and `judge` substitute the configured backend and
// remote judge (used by tests and by callers embedding their own); `clock`
// overrides the wall-clock budget source.
ValidationRun validate_report(const ContractUnit& unit, const VulnReport& report,
                              const RunConfig& config, SynthesisBackend* backend_override = nullptr,
                              ProfitJudge* judge = nullptr, const Clock* clock = nullptr);

// Offline classification of one externally produced trace: trigger check on
// the exploit-phase events, profit from the supplied deltas. An empty trace
// or one ending in a revert counts as an execution failure.
struct TraceAnalysis
{
    PoCResult result;
    Verdict verdict;

    nlohmann::ordered_json to_json() const;
};

TraceAnalysis analyze_trace(const std::vector<TraceEvent>& trace, VulnClass vuln,
                            const std::map<std::string, bigint>& attacker_deltas,
                            const Valuation& valuation = {});

}  // namespace pocval
