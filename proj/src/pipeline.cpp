// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/pipeline.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

namespace pocval
{
namespace
{
using std::chrono::duration_cast;
using std::chrono::milliseconds;
using std::chrono::steady_clock;

std::string iso_utc_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

rational parse_price(const std::string& key, const nlohmann::json& v)
{
    try
    {
        if (v.is_number_unsigned())
            return rational{v.get<std::uint64_t>()};
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
            return rational{v.get<std::int64_t>()};
        if (v.is_string())
        {
            const rational r{v.get<std::string>()};
            if (r >= 0)
                return r;
        }
    }
    catch (const std::exception&)
    {
    }
    throw ConfigError{"valuation for '" + key + "' must be a non-negative number or fraction"};
}

template <typename T>
T expect_number(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key))
        throw ConfigError{std::string{"missing numeric key '"} + key + "'"};
    const auto& v = j[key];
    if (!v.is_number())
        throw ConfigError{std::string{"'"} + key + "' must be a number"};
    return v.get<T>();
}

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> known,
                         const char* where)
{
    for (const auto& item : j.items())
    {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k)
                ok = true;
        if (!ok)
            throw ConfigError{std::string{"unknown key '"} + item.key() + "' in " + where};
    }
}

std::string profit_context(const ContractUnit& unit, const VulnReport& report)
{
    std::ostringstream os;
    os << "The script attacked contract '" << unit.name << "', function '" << report.function
       << "', reported as " << vuln_class_name(report.vuln_class)
       << ". Deltas are net attacker balance changes after the exploit phase; "
          "the native asset is named 'native', every other name is a contract token.";
    return os.str();
}

PoCResult evaluate_outcome(const ExecutionOutcome& outcome, const std::string& poc_id,
                           VulnClass vuln, const Valuation& valuation, ProfitJudge* judge,
                           const std::string& judge_context)
{
    PoCResult r;
    r.poc_id = poc_id;
    r.executed_ok = outcome.executed_ok;
    if (!r.executed_ok)
    {
        r.failure_stage = FailureStage::Execution;
        return r;
    }

    const auto events = semantic_events(outcome.trace);
    const TriggerResult trig = check_trigger(events, vuln);
    r.triggered = trig.triggered;
    r.trigger_evidence = trig.evidence;

    if (auto it = outcome.balance_deltas.find(kAttacker); it != outcome.balance_deltas.end())
        r.profit_detail = it->second;

    if (judge)
    {
        const ExternalProfit ext =
            judge_profit_external(r.profit_detail, judge_context, *judge, valuation);
        r.profited = ext.profited;
        r.judge_fallback = ext.fallback;
        r.judge_explanation = ext.explanation;
    }
    else
    {
        r.profited = assess_profit(r.profit_detail, valuation).profited;
    }

    if (r.triggered && r.profited)
        r.failure_stage = FailureStage::None;
    else
        r.failure_stage = r.triggered ? FailureStage::Profit : FailureStage::Trigger;
    return r;
}
}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw ConfigError{"config must be a JSON object"};
    reject_unknown_keys(
        j, {"budget", "backend", "remote", "remote_judge", "limits", "valuation"}, "config");

    RunConfig cfg;
    if (j.contains("budget"))
    {
        const auto& b = j["budget"];
        if (!b.is_object())
            throw ConfigError{"'budget' must be an object"};
        reject_unknown_keys(b, {"wall_clock_secs", "max_generation"}, "budget");
        if (b.contains("wall_clock_secs"))
            cfg.budget.wall_clock_secs = expect_number<double>(b, "wall_clock_secs");
        if (b.contains("max_generation"))
            cfg.budget.max_generation = expect_number<int>(b, "max_generation");
    }
    if (j.contains("backend"))
    {
        if (!j["backend"].is_string())
            throw ConfigError{"'backend' must be a string"};
        cfg.backend = j["backend"].get<std::string>();
        if (cfg.backend != "template" && cfg.backend != "remote")
            throw ConfigError{"backend must be 'template' or 'remote', got '" + cfg.backend + "'"};
    }
    if (j.contains("remote"))
    {
        const auto& r = j["remote"];
        if (!r.is_object())
            throw ConfigError{"'remote' must be an object"};
        reject_unknown_keys(r, {"url", "model", "api_key_env", "timeout_secs", "max_retries"},
                            "remote");
        if (r.contains("url"))
            cfg.remote.url = r["url"].get<std::string>();
        if (r.contains("model"))
            cfg.remote.model = r["model"].get<std::string>();
        if (r.contains("api_key_env"))
            cfg.remote.api_key_env = r["api_key_env"].get<std::string>();
        if (r.contains("timeout_secs"))
            cfg.remote.timeout_secs = expect_number<double>(r, "timeout_secs");
        if (r.contains("max_retries"))
            cfg.remote.max_retries = expect_number<int>(r, "max_retries");
    }
    if (j.contains("remote_judge"))
    {
        if (!j["remote_judge"].is_boolean())
            throw ConfigError{"'remote_judge' must be a boolean"};
        cfg.remote_judge = j["remote_judge"].get<bool>();
    }
    if (j.contains("limits"))
    {
        const auto& l = j["limits"];
        if (!l.is_object())
            throw ConfigError{"'limits' must be an object"};
        reject_unknown_keys(l, {"max_call_depth", "max_steps", "reentry_depth"}, "limits");
        if (l.contains("max_call_depth"))
            cfg.limits.max_call_depth = expect_number<int>(l, "max_call_depth");
        if (l.contains("max_steps"))
            cfg.limits.max_steps = expect_number<long>(l, "max_steps");
        if (l.contains("reentry_depth"))
            cfg.limits.reentry_depth = expect_number<int>(l, "reentry_depth");
    }
    if (j.contains("valuation"))
    {
        const auto& v = j["valuation"];
        if (!v.is_object())
            throw ConfigError{"'valuation' must be an object mapping asset to price"};
        for (const auto& item : v.items())
            cfg.valuation[item.key()] = parse_price(item.key(), item.value());
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path)
{
    std::ifstream in{path};
    if (!in)
        throw ConfigError{"cannot open config file: " + path};
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw ConfigError{"config file is not valid JSON: " + path};
    return from_json(j);
}

nlohmann::ordered_json ValidationRun::to_json() const
{
    nlohmann::ordered_json j;
    j["tool"] = "pocval";
    j["generated_at"] = iso_utc_now();
    j["input"] = report.to_json();
    j["paths"] = nlohmann::ordered_json::array();
    for (const VulnPath& p : paths)
        j["paths"].push_back(p.to_json());
    j["verdict"] = verdict.to_json();
    j["results"] = nlohmann::ordered_json::array();
    for (const PoCResult& r : results)
        j["results"].push_back(r.to_json());
    j["timing"] = {{"total_ms", timing.total_ms},
                   {"execute_ms", timing.execute_ms},
                   {"synthesize_ms", timing.synthesize_ms},
                   {"refine_ms", timing.refine_ms},
                   {"executions", timing.executions},
                   {"terminated_by", timing.terminated_by}};
    j["winning_poc"] = winning_poc ? winning_poc->to_json() : nlohmann::ordered_json{};
    return j;
}

ValidationRun validate_report(const ContractUnit& unit, const VulnReport& report,
                              const RunConfig& config, SynthesisBackend* backend_override,
                              ProfitJudge* judge, const Clock* clock)
{
    const auto t_total = steady_clock::now();
    if (report.contract != unit.name)
        throw InputError{"report names contract '" + report.contract + "' but the source defines '" +
                         unit.name + "'"};
    if (!unit.find_function(report.function))
        throw InputError{"contract has no function '" + report.function + "'"};

    ValidationRun run;
    run.report = report;
    run.paths = build_paths(unit, report);

    TemplateBackend template_backend;
    std::unique_ptr<SynthesisBackend> remote_backend;
    SynthesisBackend* backend = backend_override;
    if (!backend)
    {
        if (config.backend == "remote")
        {
            remote_backend = make_remote_backend(config.remote);
            backend = remote_backend.get();
        }
        else
        {
            backend = &template_backend;
        }
    }
    std::unique_ptr<ProfitJudge> owned_judge;
    if (!judge && config.remote_judge)
    {
        owned_judge = make_remote_judge(config.remote);
        judge = owned_judge.get();
    }

    SteadyClock fallback_clock;
    const Clock& clk = clock ? *clock : fallback_clock;
    const std::string context = profit_context(unit, report);

    Corpus corpus{config.budget};
    for (const VulnPath& path : run.paths)
    {
        const auto t0 = steady_clock::now();
        try
        {
            PoC seed = synthesize(unit, path, report.extra, *backend);
            run.timing.synthesize_ms += duration_cast<milliseconds>(steady_clock::now() - t0).count();
            corpus.enqueue(std::move(seed));
        }
        catch (const SynthesisFailed&)
        {
            run.timing.synthesize_ms += duration_cast<milliseconds>(steady_clock::now() - t0).count();
        }
    }

    std::optional<PoC> winner;
    while (true)
    {
        auto nxt = corpus.next(clk);
        if (std::holds_alternative<Exhausted>(nxt))
        {
            run.timing.terminated_by = "exhausted";
            break;
        }
        if (std::holds_alternative<BudgetExpired>(nxt))
        {
            run.timing.terminated_by = "budget";
            break;
        }
        PoC poc = std::move(std::get<PoC>(nxt));

        const auto t_exec = steady_clock::now();
        const ExecutionOutcome outcome = execute_poc(unit, poc, config.limits);
        run.timing.execute_ms += duration_cast<milliseconds>(steady_clock::now() - t_exec).count();
        ++run.timing.executions;

        PoCResult r = evaluate_outcome(outcome, poc.id, report.vuln_class, config.valuation,
                                       judge, context);
        corpus.record_result(r);
        run.results.push_back(r);

        if (r.failure_stage == FailureStage::None)
        {
            winner = std::move(poc);
            run.timing.terminated_by = "exploit-found";
            break;
        }

        const auto t_ref = steady_clock::now();
        if (r.failure_stage == FailureStage::Execution)
        {
            std::optional<FailureContext> ctx;
            try
            {
                ctx = localize_failure(outcome, unit);
            }
            catch (const NoLocalizableCause&)
            {
            }
            try
            {
                corpus.enqueue(refine_failed(unit, poc, ctx, *backend));
            }
            catch (const SynthesisFailed&)
            {
            }
        }
        else
        {
            for (const PrimitiveOp& op : select_primitive_ops(report.vuln_class, r.failure_stage))
            {
                try
                {
                    for (PoC& child : refine_primitive(unit, poc, op, *backend))
                        corpus.enqueue(std::move(child));
                }
                catch (const SynthesisFailed&)
                {
                }
            }
        }
        run.timing.refine_ms += duration_cast<milliseconds>(steady_clock::now() - t_ref).count();
    }

    run.verdict = classify(run.results);
    if (run.verdict.cls == VerdictClass::Exploitable && winner)
    {
        // The verdict leaves this process; make sure the witness reproduces.
        const auto t_exec = steady_clock::now();
        const ExecutionOutcome check = execute_poc(unit, *winner, config.limits);
        run.timing.execute_ms += duration_cast<milliseconds>(steady_clock::now() - t_exec).count();
        ++run.timing.executions;
        const PoCResult rr = evaluate_outcome(check, winner->id, report.vuln_class,
                                              config.valuation, judge, context);
        if (rr.failure_stage == FailureStage::None)
        {
            run.winning_poc = std::move(winner);
        }
        else
        {
            run.verdict = Verdict{};
            run.verdict.cls = VerdictClass::ManuallyCheck;
            run.verdict.witness_poc = rr.poc_id;
            run.verdict.rationale = "witness did not reproduce on re-execution";
        }
    }

    run.timing.total_ms = duration_cast<milliseconds>(steady_clock::now() - t_total).count();
    return run;
}

nlohmann::ordered_json TraceAnalysis::to_json() const
{
    nlohmann::ordered_json j;
    j["tool"] = "pocval";
    j["generated_at"] = iso_utc_now();
    j["verdict"] = verdict.to_json();
    j["result"] = result.to_json();
    return j;
}

TraceAnalysis analyze_trace(const std::vector<TraceEvent>& trace, VulnClass vuln,
                            const std::map<std::string, bigint>& attacker_deltas,
                            const Valuation& valuation)
{
    PoCResult r;
    r.poc_id = "external-trace";
    r.executed_ok = !trace.empty() && trace.back().kind != TraceKind::Revert;
    if (!r.executed_ok)
    {
        r.failure_stage = FailureStage::Execution;
    }
    else
    {
        const auto events = semantic_events(trace);
        const TriggerResult trig = check_trigger(events, vuln);
        r.triggered = trig.triggered;
        r.trigger_evidence = trig.evidence;
        r.profit_detail = attacker_deltas;
        r.profited = assess_profit(attacker_deltas, valuation).profited;
        if (r.triggered && r.profited)
            r.failure_stage = FailureStage::None;
        else
            r.failure_stage = r.triggered ? FailureStage::Profit : FailureStage::Trigger;
    }

    TraceAnalysis out;
    out.result = r;
    out.verdict = classify({r});
    return out;
}

}  // namespace pocval
