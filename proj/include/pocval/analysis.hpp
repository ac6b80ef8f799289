// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/ast.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pocval
{
enum class VulnClass
{
    UEW,   // unprotected ether withdrawal
    US,    // unprotected selfdestruct
    RE,    // reentrancy
    TOD,   // transaction order dependence
    RCA,   // reliance on chain attributes
};

std::string vuln_class_name(VulnClass c);
VulnClass vuln_class_from_name(const std::string& s);

enum class KeyKind
{
    None,     // scalar variable
    AnyKey,   // mapping element, key abstracted
};

// One storage location, key-insensitive for mappings. Token ledger writes use
// variable "asset:<name>"; those never appear in read sets because no
// expression reads token balances.
struct StateRef
{
    std::string contract;
    std::string variable;
    KeyKind key_kind = KeyKind::None;

    auto operator<=>(const StateRef&) const = default;
    std::string str() const;
};

// Candidate call sequence: optional state-preparing entry call, then the
// reported function. entry == nullopt is the direct path.
struct VulnPath
{
    std::optional<std::string> entry;
    std::string target;
    VulnClass vuln_class = VulnClass::RE;
    std::vector<StateRef> shared_state;

    nlohmann::ordered_json to_json() const;
    static VulnPath from_json(const nlohmann::json& j);
};

// Parsed vulnerability report. `contract` is a path to a MiniSol file; extra
// carries per-report hints (argument values, block numbers) handed through to
// the synthesizer.
struct VulnReport
{
    std::string contract;
    std::string function;
    VulnClass vuln_class = VulnClass::RE;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();

    static VulnReport from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;
};

// State the function may read: scalar and mapping loads anywhere in its body
// and in the bodies of its applied modifiers, including loads feeding
// assignment keys. Over-approximate: control flow is ignored.
std::set<StateRef> read_set(const ContractUnit& unit, const std::string& function);

// State the function may write: assignment targets and token-op ledgers, same
// scope rules as read_set.
std::set<StateRef> write_set(const ContractUnit& unit, const std::string& function);

// Functions that can prepare state the reported function depends on: their
// writes intersect its reads, they carry no modifier (an applied modifier
// counts as an access guard), and the reported function itself and the
// constructor are excluded. Declaration order.
std::vector<std::string> entry_functions(const ContractUnit& unit, const std::string& f_test);

// All candidate paths for the report, ordered by |shared_state| descending
// (ties in declaration order), with the direct path appended last.
std::vector<VulnPath> build_paths(const ContractUnit& unit, const VulnReport& report);

}  // namespace pocval
