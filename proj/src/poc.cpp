// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/errors.hpp>
#include <pocval/hash.hpp>
#include <pocval/poc.hpp>

#include <set>

namespace pocval
{
std::string action_kind_name(ActionKind k)
{
    switch (k)
    {
    case ActionKind::Deploy:
        return "Deploy";
    case ActionKind::Call:
        return "Call";
    case ActionKind::Deal:
        return "Deal";
    case ActionKind::DealAsset:
        return "DealAsset";
    case ActionKind::Prank:
        return "Prank";
    case ActionKind::Warp:
        return "Warp";
    case ActionKind::Roll:
        return "Roll";
    case ActionKind::ExpectProfitSnapshot:
        return "ExpectProfitSnapshot";
    }
    return "?";
}

namespace
{
ActionKind action_kind_from_name(const std::string& s)
{
    static const std::pair<const char*, ActionKind> table[] = {
        {"Deploy", ActionKind::Deploy},
        {"Call", ActionKind::Call},
        {"Deal", ActionKind::Deal},
        {"DealAsset", ActionKind::DealAsset},
        {"Prank", ActionKind::Prank},
        {"Warp", ActionKind::Warp},
        {"Roll", ActionKind::Roll},
        {"ExpectProfitSnapshot", ActionKind::ExpectProfitSnapshot},
    };
    for (const auto& [name, kind] : table)
        if (s == name)
            return kind;
    throw SchemaError{"unknown action kind '" + s + "'"};
}

nlohmann::ordered_json value_to_json(const Value& v)
{
    nlohmann::ordered_json j;
    j["type"] = var_type_name(v.type());
    if (v.is_bool())
        j["value"] = v.flag();
    else
        j["value"] = v.str();
    return j;
}

Value value_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("type") || !j.contains("value"))
        throw SchemaError{"argument must be {\"type\", \"value\"}"};
    const std::string type = j["type"].get<std::string>();
    if (type == "uint256")
    {
        try
        {
            return Value{u256_from_dec(j["value"].get<std::string>())};
        }
        catch (const std::invalid_argument& e)
        {
            throw SchemaError{e.what()};
        }
    }
    if (type == "address")
        return Value{Address{j["value"].get<std::string>()}};
    if (type == "bool")
        return Value{j["value"].get<bool>()};
    throw SchemaError{"unknown argument type '" + type + "'"};
}

u256 u256_field(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_string())
        throw SchemaError{std::string{"action needs string field '"} + key + "'"};
    try
    {
        return u256_from_dec(j[key].get<std::string>());
    }
    catch (const std::invalid_argument& e)
    {
        throw SchemaError{e.what()};
    }
}

std::string str_field(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_string())
        throw SchemaError{std::string{"action needs string field '"} + key + "'"};
    return j[key].get<std::string>();
}
}  // namespace

nlohmann::ordered_json Action::to_json() const
{
    nlohmann::ordered_json j;
    j["kind"] = action_kind_name(kind);
    switch (kind)
    {
    case ActionKind::Deploy:
    {
        j["contract"] = contract;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& a : args)
            arr.push_back(value_to_json(a));
        j["args"] = arr;
        j["value"] = to_dec(value);
        break;
    }
    case ActionKind::Call:
    {
        j["caller"] = caller;
        j["target"] = target;
        j["function"] = function;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& a : args)
            arr.push_back(value_to_json(a));
        j["args"] = arr;
        j["value"] = to_dec(value);
        break;
    }
    case ActionKind::Deal:
        j["addr"] = addr;
        j["amount"] = to_dec(value);
        break;
    case ActionKind::DealAsset:
        j["addr"] = addr;
        j["asset"] = asset;
        j["amount"] = to_dec(value);
        break;
    case ActionKind::Prank:
        j["addr"] = addr;
        break;
    case ActionKind::Warp:
        j["timestamp"] = to_dec(value);
        break;
    case ActionKind::Roll:
        j["block_number"] = to_dec(value);
        break;
    case ActionKind::ExpectProfitSnapshot:
        break;
    }
    return j;
}

Action Action::from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("kind"))
        throw SchemaError{"action must be an object with 'kind'"};
    Action a;
    a.kind = action_kind_from_name(j["kind"].get<std::string>());
    switch (a.kind)
    {
    case ActionKind::Deploy:
        a.contract = str_field(j, "contract");
        if (j.contains("args"))
            for (const auto& arg : j["args"])
                a.args.push_back(value_from_json(arg));
        if (j.contains("value"))
            a.value = u256_field(j, "value");
        break;
    case ActionKind::Call:
        a.caller = str_field(j, "caller");
        a.target = str_field(j, "target");
        a.function = str_field(j, "function");
        if (j.contains("args"))
            for (const auto& arg : j["args"])
                a.args.push_back(value_from_json(arg));
        if (j.contains("value"))
            a.value = u256_field(j, "value");
        break;
    case ActionKind::Deal:
        a.addr = str_field(j, "addr");
        a.value = u256_field(j, "amount");
        break;
    case ActionKind::DealAsset:
        a.addr = str_field(j, "addr");
        a.asset = str_field(j, "asset");
        a.value = u256_field(j, "amount");
        break;
    case ActionKind::Prank:
        a.addr = str_field(j, "addr");
        break;
    case ActionKind::Warp:
        a.value = u256_field(j, "timestamp");
        break;
    case ActionKind::Roll:
        a.value = u256_field(j, "block_number");
        break;
    case ActionKind::ExpectProfitSnapshot:
        break;
    }
    return a;
}

namespace
{
const char* origin_name(PoCOrigin o)
{
    switch (o)
    {
    case PoCOrigin::Synthesized:
        return "Synthesized";
    case PoCOrigin::FailureRefined:
        return "FailureRefined";
    case PoCOrigin::PrimitiveOp:
        return "PrimitiveOp";
    }
    return "?";
}
}  // namespace

nlohmann::ordered_json PoCMeta::to_json() const
{
    nlohmann::ordered_json j;
    if (origin == PoCOrigin::PrimitiveOp)
        j["origin"] = std::string{"PrimitiveOp("} + primitive + ")";
    else
        j["origin"] = origin_name(origin);
    j["parent_id"] = parent_id;
    j["generation"] = generation;
    j["path"] = path.to_json();
    return j;
}

PoCMeta PoCMeta::from_json(const nlohmann::json& j)
{
    PoCMeta m;
    if (j.contains("origin"))
    {
        const std::string o = j["origin"].get<std::string>();
        if (o == "Synthesized")
            m.origin = PoCOrigin::Synthesized;
        else if (o == "FailureRefined")
            m.origin = PoCOrigin::FailureRefined;
        else if (o.rfind("PrimitiveOp(", 0) == 0 && o.back() == ')')
        {
            m.origin = PoCOrigin::PrimitiveOp;
            m.primitive = o.substr(12, o.size() - 13);
        }
        else
            throw SchemaError{"unknown origin '" + o + "'"};
    }
    if (j.contains("parent_id"))
        m.parent_id = j["parent_id"].get<std::string>();
    if (j.contains("generation"))
        m.generation = j["generation"].get<int>();
    if (j.contains("path"))
        m.path = VulnPath::from_json(j["path"]);
    return m;
}

std::string content_hash(const PoC& poc)
{
    nlohmann::ordered_json j;
    auto setup = nlohmann::ordered_json::array();
    for (const auto& a : poc.setup)
        setup.push_back(a.to_json());
    auto exploit = nlohmann::ordered_json::array();
    for (const auto& a : poc.exploit)
        exploit.push_back(a.to_json());
    j["setup"] = setup;
    j["exploit"] = exploit;
    if (poc.attacker_fallback)
    {
        auto fb = nlohmann::ordered_json::array();
        for (const auto& a : *poc.attacker_fallback)
            fb.push_back(a.to_json());
        j["attacker_fallback"] = fb;
    }
    else
        j["attacker_fallback"] = nullptr;
    return sha256_hex(j.dump());
}

void PoC::seal()
{
    id = content_hash(*this);
}

nlohmann::ordered_json PoC::to_json() const
{
    nlohmann::ordered_json j;
    auto setup_arr = nlohmann::ordered_json::array();
    for (const auto& a : setup)
        setup_arr.push_back(a.to_json());
    auto exploit_arr = nlohmann::ordered_json::array();
    for (const auto& a : exploit)
        exploit_arr.push_back(a.to_json());
    j["setup"] = setup_arr;
    j["exploit"] = exploit_arr;
    if (attacker_fallback)
    {
        auto fb = nlohmann::ordered_json::array();
        for (const auto& a : *attacker_fallback)
            fb.push_back(a.to_json());
        j["attacker_fallback"] = fb;
    }
    else
        j["attacker_fallback"] = nullptr;
    j["meta"] = meta.to_json();
    return j;
}

PoC PoC::from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw SchemaError{"PoC must be a JSON object"};
    PoC p;
    if (j.contains("setup"))
        for (const auto& a : j["setup"])
            p.setup.push_back(Action::from_json(a));
    if (!j.contains("exploit"))
        throw SchemaError{"PoC needs an 'exploit' array"};
    for (const auto& a : j["exploit"])
        p.exploit.push_back(Action::from_json(a));
    if (j.contains("attacker_fallback") && !j["attacker_fallback"].is_null())
    {
        std::vector<Action> fb;
        for (const auto& a : j["attacker_fallback"])
            fb.push_back(Action::from_json(a));
        p.attacker_fallback = std::move(fb);
    }
    if (j.contains("meta"))
        p.meta = PoCMeta::from_json(j["meta"]);
    p.seal();
    return p;
}

namespace
{
// Accounts a script can legally act from: the two fixed roles plus anything
// it funds via Deal/DealAsset.
std::set<Address> script_accounts(const PoC& poc)
{
    std::set<Address> accounts{kAttacker, kDeployer};
    const auto scan = [&](const std::vector<Action>& actions) {
        for (const auto& a : actions)
            if (a.kind == ActionKind::Deal || a.kind == ActionKind::DealAsset)
                accounts.insert(a.addr);
    };
    scan(poc.setup);
    scan(poc.exploit);
    return accounts;
}

void check_call_shape(const Action& a, const ContractUnit& unit, const std::string& where,
                      std::vector<std::string>& out)
{
    if (a.target != unit.name)
    {
        out.push_back(where + ": call target '" + a.target + "' is not the deployed contract");
        return;
    }
    const auto* fn = unit.find_function(a.function);
    if (!fn)
    {
        out.push_back(where + ": function '" + a.function + "' is not declared");
        return;
    }
    if (a.args.size() != fn->params.size())
    {
        out.push_back(where + ": function '" + a.function + "' takes " +
                      std::to_string(fn->params.size()) + " argument(s), got " +
                      std::to_string(a.args.size()));
        return;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (a.args[i].type() != fn->params[i].type)
            out.push_back(where + ": argument " + std::to_string(i) + " of '" + a.function +
                          "' should be " + var_type_name(fn->params[i].type) + ", got " +
                          var_type_name(a.args[i].type()));
}
}  // namespace

std::vector<std::string> validate(const PoC& poc, const ContractUnit& unit)
{
    std::vector<std::string> out;
    const auto accounts = script_accounts(poc);

    int deploys = 0;
    for (const auto& a : poc.setup)
        if (a.kind == ActionKind::Deploy)
        {
            ++deploys;
            if (a.contract != unit.name)
                out.push_back("setup: deploy of '" + a.contract + "' does not match contract '" +
                              unit.name + "'");
            const std::size_t want = unit.ctor ? unit.ctor->params.size() : 0;
            if (a.args.size() != want)
                out.push_back("setup: constructor takes " + std::to_string(want) +
                              " argument(s), got " + std::to_string(a.args.size()));
            else if (unit.ctor)
                for (std::size_t i = 0; i < a.args.size(); ++i)
                    if (a.args[i].type() != unit.ctor->params[i].type)
                        out.push_back("setup: constructor argument " + std::to_string(i) +
                                      " should be " + var_type_name(unit.ctor->params[i].type) +
                                      ", got " + var_type_name(a.args[i].type()));
        }
    if (deploys == 0)
        out.push_back("setup: missing Deploy of '" + unit.name + "'");
    else if (deploys > 1)
        out.push_back("setup: more than one Deploy");
    for (const auto& a : poc.exploit)
        if (a.kind == ActionKind::Deploy)
            out.push_back("exploit: Deploy is only allowed in setup");

    if (poc.exploit.empty())
        out.push_back("exploit: must contain at least one action");

    const auto check_phase = [&](const std::vector<Action>& actions, const std::string& phase,
                                 bool allow_fallback_shape) {
        bool pending_prank = false;
        for (std::size_t i = 0; i < actions.size(); ++i)
        {
            const auto& a = actions[i];
            const std::string where = phase + " action " + std::to_string(i + 1);
            switch (a.kind)
            {
            case ActionKind::Call:
                if (!accounts.count(a.caller))
                    out.push_back(where + ": caller '" + a.caller + "' is not a known account");
                if (a.caller == unit.name)
                    out.push_back(where + ": the contract cannot originate a transaction");
                if (allow_fallback_shape && a.caller != kAttacker)
                    out.push_back(where + ": fallback calls run as '" + kAttacker + "'");
                check_call_shape(a, unit, where, out);
                pending_prank = false;
                break;
            case ActionKind::Prank:
                if (!accounts.count(a.addr))
                    out.push_back(where + ": prank target '" + a.addr + "' is not a known account");
                if (a.addr == unit.name)
                    out.push_back(where + ": the contract cannot originate a transaction");
                pending_prank = true;
                break;
            case ActionKind::Deploy:
                break;   // reported above
            case ActionKind::Deal:
            case ActionKind::DealAsset:
            case ActionKind::Warp:
            case ActionKind::Roll:
            case ActionKind::ExpectProfitSnapshot:
                break;
            }
            if (allow_fallback_shape && a.kind != ActionKind::Call)
                out.push_back(where + ": fallback scripts may only contain Call actions");
        }
        if (pending_prank)
            out.push_back(phase + ": trailing Prank with no Call to apply to");
    };
    check_phase(poc.setup, "setup", false);
    check_phase(poc.exploit, "exploit", false);
    if (poc.attacker_fallback)
        check_phase(*poc.attacker_fallback, "attacker_fallback", true);

    return out;
}

}  // namespace pocval
