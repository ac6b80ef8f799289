// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/analysis.hpp>
#include <pocval/value.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pocval
{
enum class ActionKind
{
    Deploy,                 // deploy the target contract (setup only)
    Call,                   // top-level transaction from an account
    Deal,                   // mint native balance to an account or contract
    DealAsset,              // mint token balance
    Prank,                  // next Call runs as this account
    Warp,                   // set block timestamp
    Roll,                   // set block number
    ExpectProfitSnapshot,   // harness marker, no semantic effect
};

std::string action_kind_name(ActionKind k);

struct Action
{
    ActionKind kind = ActionKind::Call;
    std::string contract;        // Deploy
    Address caller;              // Call
    Address target;              // Call: deployed contract name
    std::string function;        // Call
    std::vector<Value> args;     // Deploy / Call
    u256 value;                  // Deploy/Call msg.value, Deal/DealAsset amount, Warp/Roll value
    Address addr;                // Deal / DealAsset / Prank
    std::string asset;           // DealAsset

    bool operator==(const Action&) const = default;

    nlohmann::ordered_json to_json() const;
    static Action from_json(const nlohmann::json& j);
};

enum class PoCOrigin
{
    Synthesized,
    FailureRefined,
    PrimitiveOp,
};

struct PoCMeta
{
    PoCOrigin origin = PoCOrigin::Synthesized;
    std::string primitive;       // op name when origin == PrimitiveOp
    std::string parent_id;       // empty for seeds
    int generation = 0;
    VulnPath path;

    nlohmann::ordered_json to_json() const;
    static PoCMeta from_json(const nlohmann::json& j);
};

// A candidate exploit script. `id` is the hex SHA-256 of the canonical action
// serialization (setup, exploit, attacker_fallback); metadata does not
// contribute, so reparenting or annotating a PoC never changes its identity.
struct PoC
{
    std::string id;
    std::vector<Action> setup;
    std::vector<Action> exploit;
    std::optional<std::vector<Action>> attacker_fallback;
    PoCMeta meta;

    // Recomputes id from the current actions. Call after any mutation.
    void seal();

    nlohmann::ordered_json to_json() const;
    static PoC from_json(const nlohmann::json& j);
};

std::string content_hash(const PoC& poc);

// Static well-formedness check against the target contract. Returns a list
// of human-readable violations; empty means valid. Never throws.
//
// Checked: exactly one Deploy, in setup, of this contract, with
// constructor-compatible args; every Call names a declared function with
// matching arity and argument types; callers and prank targets are accounts
// known from the script (attacker, deployer, or an account funded by a Deal);
// the contract itself never originates a transaction; exploit is nonempty;
// every Prank precedes a Call.
std::vector<std::string> validate(const PoC& poc, const ContractUnit& unit);

}  // namespace pocval
