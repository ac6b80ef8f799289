// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/ast.hpp>
#include <pocval/u256.hpp>

#include <string>
#include <variant>

namespace pocval
{
// Account and contract addresses are symbolic names ("attacker", "deployer",
// "user1", or a deployed contract's name). Readable in traces and slots, and
// exactly as unforgeable as a hex address inside a closed world.
using Address = std::string;

inline const Address kAttacker = "attacker";
inline const Address kDeployer = "deployer";

// Dynamically typed runtime value: word, address, or boolean.
struct Value
{
    std::variant<u256, Address, bool> v;

    Value() : v{u256{0}} {}
    explicit Value(u256 n) : v{std::move(n)} {}
    explicit Value(Address a) : v{std::move(a)} {}
    explicit Value(bool b) : v{b} {}

    bool is_num() const
    {
        return std::holds_alternative<u256>(v);
    }
    bool is_addr() const
    {
        return std::holds_alternative<Address>(v);
    }
    bool is_bool() const
    {
        return std::holds_alternative<bool>(v);
    }

    const u256& num() const
    {
        return std::get<u256>(v);
    }
    const Address& addr() const
    {
        return std::get<Address>(v);
    }
    bool flag() const
    {
        return std::get<bool>(v);
    }

    bool operator==(const Value& o) const = default;

    VarType type() const
    {
        if (is_num())
            return VarType::U256;
        if (is_addr())
            return VarType::Address;
        return VarType::Bool;
    }

    // Canonical text: decimal for words, raw name for addresses,
    // true/false for booleans. Used in slots, traces, and hashes.
    std::string str() const
    {
        if (is_num())
            return to_dec(num());
        if (is_addr())
            return addr();
        return flag() ? "true" : "false";
    }

    static Value default_of(VarType t)
    {
        switch (t)
        {
        case VarType::U256:
            return Value{u256{0}};
        case VarType::Address:
            return Value{Address{}};
        case VarType::Bool:
            return Value{false};
        case VarType::MappingAddrU256:
            break;
        }
        return Value{u256{0}};
    }
};

}  // namespace pocval
