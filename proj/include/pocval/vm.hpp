// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/poc.hpp>
#include <pocval/value.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pocval
{
// Genesis block environment. Fixed constants keep every run reproducible;
// Warp/Roll move them explicitly.
inline const u256 kInitialBlockNumber = 1;
inline const u256 kInitialTimestamp = 1000000;

enum class Phase
{
    SetUp,
    Exploit,
};

enum class TraceKind
{
    CallEnter,
    CallExit,
    StorageRead,
    StorageWrite,
    ValueTransfer,
    BlockAttrRead,
    Selfdestruct,
    Revert,
    CheatcodeApplied,
};

enum class CallStatus
{
    Ok,
    Reverted,
};

enum class BlockAttr
{
    Number,
    Timestamp,
    Blockhash,
};

std::string trace_kind_name(TraceKind k);
std::string phase_name(Phase p);
std::string block_attr_name(BlockAttr a);

// One observation from an execution. Flat record with `kind` selecting which
// fields are meaningful:
//   CallEnter      tx_index, caller, tx_origin, target, function, value, depth
//   CallExit       status
//   StorageRead    slot
//   StorageWrite   slot, old_value, new_value
//   ValueTransfer  from, to, amount, asset ("" as from = injection/mint,
//                  "" as to = burn)
//   BlockAttrRead  attr
//   Selfdestruct   beneficiary
//   Revert         message
//   CheatcodeApplied  cheatcode
// node_id points at the source statement that produced the event, when there
// is one. Slots are "Contract.var" or "Contract.map[key]".
struct TraceEvent
{
    long seq = 0;
    Phase phase = Phase::SetUp;
    bool from_cheatcode = false;
    TraceKind kind = TraceKind::CallEnter;
    NodeId node_id = kInvalidNode;

    int tx_index = 0;
    Address caller;
    Address tx_origin;
    Address target;
    std::string function;
    u256 value;
    int depth = 0;

    CallStatus status = CallStatus::Ok;

    std::string slot;
    std::string old_value;
    std::string new_value;

    Address from;
    Address to;
    u256 amount;
    std::string asset;

    BlockAttr attr = BlockAttr::Number;
    Address beneficiary;
    std::string message;
    std::string cheatcode;
};

struct ExecLimits
{
    int max_call_depth = 16;
    long max_steps = 200000;
    // Deepest frame at which the attacker fallback still re-enters; deeper
    // callbacks are skipped, mirroring an attacker contract that guards its
    // own recursion.
    int reentry_depth = 4;
    // Test hook: the named statement reverts just before executing.
    std::optional<NodeId> inject_revert_at;
};

struct RevertInfo
{
    std::string message;
    NodeId node = kInvalidNode;
    Phase phase = Phase::Exploit;
};

struct ExecutionOutcome
{
    // True iff both phases ran every action to completion. Any revert aborts
    // its transaction (state rolls back) and terminates the phase.
    bool executed_ok = false;
    std::vector<TraceEvent> trace;
    std::optional<RevertInfo> revert_info;

    // Net per-account, per-asset movement over the exploit phase, with
    // exploit-phase cheatcode injections subtracted. Zero entries omitted.
    std::map<Address, std::map<std::string, bigint>> balance_deltas;

    // Hash of the canonical final world state. Equal digests mean equal
    // worlds; used by rollback and determinism checks.
    std::string world_digest;
};

// Runs the script against a fresh world containing only the attacker and
// deployer accounts. Deterministic: no randomness, no host clock, no
// environment reads.
ExecutionOutcome execute_poc(const ContractUnit& unit, const PoC& poc, const ExecLimits& limits = {});

struct EventFilter
{
    bool exploit_only = true;
    bool exclude_cheatcodes = true;
};

// Events the verdict rules are allowed to see, in original seq order.
std::vector<TraceEvent> semantic_events(const std::vector<TraceEvent>& trace,
                                        const EventFilter& filter = {});

}  // namespace pocval
