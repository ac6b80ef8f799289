// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/errors.hpp>
#include <pocval/oracle.hpp>
#include <pocval/trace_io.hpp>

namespace pocval
{
std::string failure_stage_name(FailureStage s)
{
    switch (s)
    {
    case FailureStage::None:
        return "None";
    case FailureStage::Execution:
        return "Execution";
    case FailureStage::Trigger:
        return "Trigger";
    case FailureStage::Profit:
        return "Profit";
    }
    return "?";
}

namespace
{
// Transaction bookkeeping while scanning a flat event list. Depth-1
// CallEnters open a new top-level transaction and fix its origin.
struct TxScan
{
    int tx = -1;
    Address origin;

    void update(const TraceEvent& ev)
    {
        if (ev.kind == TraceKind::CallEnter && ev.depth == 1)
        {
            tx = ev.tx_index;
            origin = ev.tx_origin;
        }
    }
};

TriggerResult check_uew(const std::vector<TraceEvent>& events)
{
    TxScan scan;
    for (const auto& ev : events)
    {
        scan.update(ev);
        if (ev.kind == TraceKind::ValueTransfer && scan.tx >= 0 && !scan.origin.empty() &&
            ev.to == scan.origin)
            return {true, {ev.seq}};
    }
    return {};
}

TriggerResult check_us(const std::vector<TraceEvent>& events)
{
    for (const auto& ev : events)
        if (ev.kind == TraceKind::Selfdestruct)
            return {true, {ev.seq}};
    return {};
}

TriggerResult check_re(const std::vector<TraceEvent>& events)
{
    // Active call frames of the current transaction; nesting means an
    // ancestor frame with the same target and function is still open.
    std::vector<const TraceEvent*> stack;
    int cur_tx = -1;
    for (const auto& ev : events)
    {
        if (ev.kind == TraceKind::CallEnter)
        {
            if (ev.depth == 1)
            {
                stack.clear();
                cur_tx = ev.tx_index;
            }
            if (ev.tx_index == cur_tx)
            {
                for (const auto* open : stack)
                    if (open->target == ev.target && open->function == ev.function &&
                        open->depth < ev.depth)
                        return {true, {open->seq, ev.seq}};
                stack.push_back(&ev);
            }
        }
        else if (ev.kind == TraceKind::CallExit || ev.kind == TraceKind::Revert)
        {
            if (!stack.empty())
                stack.pop_back();
        }
    }
    return {};
}

TriggerResult check_tod(const std::vector<TraceEvent>& events)
{
    struct Write
    {
        long seq;
        int tx;
    };
    std::map<std::string, Write> first_write;
    TxScan scan;
    for (const auto& ev : events)
    {
        scan.update(ev);
        if (ev.kind == TraceKind::StorageWrite)
        {
            if (!first_write.count(ev.slot))
                first_write[ev.slot] = {ev.seq, scan.tx};
        }
        else if (ev.kind == TraceKind::StorageRead)
        {
            const auto it = first_write.find(ev.slot);
            if (it != first_write.end() && scan.tx > it->second.tx)
                return {true, {it->second.seq, ev.seq}};
        }
    }
    return {};
}

TriggerResult check_rca(const std::vector<TraceEvent>& events)
{
    for (const auto& ev : events)
        if (ev.kind == TraceKind::BlockAttrRead)
            return {true, {ev.seq}};
    return {};
}
}  // namespace

TriggerResult check_trigger(const std::vector<TraceEvent>& events, VulnClass vuln)
{
    switch (vuln)
    {
    case VulnClass::UEW:
        return check_uew(events);
    case VulnClass::US:
        return check_us(events);
    case VulnClass::RE:
        return check_re(events);
    case VulnClass::TOD:
        return check_tod(events);
    case VulnClass::RCA:
        return check_rca(events);
    }
    return {};
}

ProfitResult assess_profit(const std::map<std::string, bigint>& attacker_deltas,
                           const Valuation& valuation)
{
    ProfitResult out;
    for (const auto& [asset, delta] : attacker_deltas)
    {
        rational rate{1};
        if (!valuation.empty())
        {
            const auto it = valuation.find(asset);
            if (it == valuation.end())
                throw UnknownAssetError{"no valuation for asset '" + asset + "'"};
            rate = it->second;
        }
        out.total += rate * rational{delta};
    }
    out.profited = out.total > 0;
    return out;
}

ExternalProfit judge_profit_external(const std::map<std::string, bigint>& attacker_deltas,
                                     const std::string& context, ProfitJudge& judge,
                                     const Valuation& valuation)
{
    ExternalProfit out;
    try
    {
        const auto j = judge.judge(attacker_deltas, context);
        out.profited = j.profit;
        out.explanation = j.reason;
        return out;
    }
    catch (const std::exception& e)
    {
        const auto rule = assess_profit(attacker_deltas, valuation);
        out.profited = rule.profited;
        out.explanation = std::string{"judge unavailable ("} + e.what() + "); rule-based assessment used";
        out.fallback = true;
        return out;
    }
}

nlohmann::ordered_json PoCResult::to_json() const
{
    nlohmann::ordered_json j;
    j["poc_id"] = poc_id;
    j["executed_ok"] = executed_ok;
    j["triggered"] = triggered;
    j["profited"] = profited;
    j["trigger_evidence"] = trigger_evidence;
    j["profit_detail"] = deltas_to_json(profit_detail);
    j["failure_stage"] = failure_stage_name(failure_stage);
    if (judge_fallback)
        j["judge_fallback"] = true;
    if (!judge_explanation.empty())
        j["judge_explanation"] = judge_explanation;
    return j;
}

std::string verdict_class_name(VerdictClass c)
{
    switch (c)
    {
    case VerdictClass::Exploitable:
        return "Exploitable";
    case VerdictClass::NonExploitable:
        return "NonExploitable";
    case VerdictClass::ManuallyCheck:
        return "ManuallyCheck";
    }
    return "?";
}

nlohmann::ordered_json Verdict::to_json() const
{
    nlohmann::ordered_json j;
    j["class"] = verdict_class_name(cls);
    j["witness_poc"] = witness_poc ? nlohmann::ordered_json(*witness_poc) : nlohmann::ordered_json(nullptr);
    j["rationale"] = rationale;
    j["evidence"] = evidence;
    j["profit"] = deltas_to_json(profit);
    return j;
}

Verdict classify(const std::vector<PoCResult>& results)
{
    Verdict v;
    for (const auto& r : results)
        if (r.executed_ok && r.triggered && r.profited)
        {
            v.cls = VerdictClass::Exploitable;
            v.witness_poc = r.poc_id;
            v.rationale = "a PoC both triggered the vulnerability and made a profit";
            v.evidence = r.trigger_evidence;
            v.profit = r.profit_detail;
            return v;
        }
    for (const auto& r : results)
    {
        if (!r.executed_ok)
            continue;
        if (r.triggered && !r.profited)
        {
            v.cls = VerdictClass::NonExploitable;
            v.witness_poc = r.poc_id;
            v.rationale = "the vulnerability can be triggered but yields no profit";
            v.evidence = r.trigger_evidence;
            v.profit = r.profit_detail;
            return v;
        }
        if (!r.triggered && r.profited)
        {
            v.cls = VerdictClass::NonExploitable;
            v.witness_poc = r.poc_id;
            v.rationale =
                "profit occurred without the reported vulnerability firing; "
                "flagged for human review";
            v.evidence = r.trigger_evidence;
            v.profit = r.profit_detail;
            return v;
        }
    }
    v.cls = VerdictClass::ManuallyCheck;
    v.rationale = results.empty()
                      ? "no PoC could be generated"
                      : "no PoC triggered the vulnerability or made a profit";
    return v;
}

}  // namespace pocval
