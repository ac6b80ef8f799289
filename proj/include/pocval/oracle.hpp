// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/analysis.hpp>
#include <pocval/vm.hpp>

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pocval
{
// Where a candidate PoC fell short. Execution beats Trigger beats Profit:
// only the first failed check is recorded.
enum class FailureStage
{
    None,
    Execution,
    Trigger,
    Profit,
};

std::string failure_stage_name(FailureStage s);

struct TriggerResult
{
    bool triggered = false;
    // seq values of the witnessing events: the nested call pair for
    // reentrancy, the write/read pair for ordering, the single event
    // otherwise.
    std::vector<long> evidence;
};

// Decides whether the semantic events exhibit the vulnerability class:
//   UEW  a ValueTransfer whose recipient is the transaction's tx.origin
//   US   a Selfdestruct
//   RE   two CallEnters in one transaction, same target and function,
//        at different depths
//   TOD  a StorageWrite in one transaction and a StorageRead of the same
//        slot in a later transaction
//   RCA  a BlockAttrRead (number, timestamp, or blockhash)
// `events` must already be filtered (exploit phase, no cheatcodes); the rule
// itself looks at nothing else.
TriggerResult check_trigger(const std::vector<TraceEvent>& events, VulnClass vuln);

// Rates are exact rationals per asset unit. An empty valuation means every
// asset (native included) counts 1:1.
using Valuation = std::map<std::string, rational>;

struct ProfitResult
{
    bool profited = false;
    rational total;   // valued sum of the deltas
};

// Values the attacker's per-asset deltas and reports whether the sum is
// strictly positive. Throws UnknownAssetError if a delta names an asset the
// explicitly supplied valuation does not cover.
ProfitResult assess_profit(const std::map<std::string, bigint>& attacker_deltas,
                           const Valuation& valuation = {});

// External profit judgment, for cases the flat valuation misreads (a
// worthless minted token, say). Implementations answer {profit, reason};
// transport or format failure throws.
class ProfitJudge
{
public:
    virtual ~ProfitJudge() = default;

    struct Judgment
    {
        bool profit = false;
        std::string reason;
    };
    virtual Judgment judge(const std::map<std::string, bigint>& attacker_deltas,
                           const std::string& context) = 0;
};

struct ExternalProfit
{
    bool profited = false;
    std::string explanation;
    // True when the judge was unreachable and the rule-based assessment
    // answered instead.
    bool fallback = false;
};

ExternalProfit judge_profit_external(const std::map<std::string, bigint>& attacker_deltas,
                                     const std::string& context, ProfitJudge& judge,
                                     const Valuation& valuation = {});

// Everything the classifier needs to know about one executed PoC.
struct PoCResult
{
    std::string poc_id;
    bool executed_ok = false;
    bool triggered = false;
    bool profited = false;
    std::vector<long> trigger_evidence;
    std::map<std::string, bigint> profit_detail;
    FailureStage failure_stage = FailureStage::None;
    bool judge_fallback = false;
    std::string judge_explanation;

    nlohmann::ordered_json to_json() const;
};

enum class VerdictClass
{
    Exploitable,
    NonExploitable,
    ManuallyCheck,
};

std::string verdict_class_name(VerdictClass c);

struct Verdict
{
    VerdictClass cls = VerdictClass::ManuallyCheck;
    std::optional<std::string> witness_poc;
    std::string rationale;
    std::vector<long> evidence;
    std::map<std::string, bigint> profit;

    nlohmann::ordered_json to_json() const;
};

// Fixed-precedence verdict calculus over all executed candidates:
//   1. some PoC triggered and profited            -> Exploitable
//   2. some PoC has triggered XOR profited        -> NonExploitable
//   3. otherwise (all failed or inert)            -> ManuallyCheck
// An empty result list and an all-execution-failed list both land in
// ManuallyCheck. A profited-but-untriggered witness is flagged in the
// rationale since it deserves human eyes.
Verdict classify(const std::vector<PoCResult>& results);

}  // namespace pocval
