// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/analysis.hpp>
#include <pocval/errors.hpp>

#include <algorithm>

namespace pocval
{
std::string vuln_class_name(VulnClass c)
{
    switch (c)
    {
    case VulnClass::UEW:
        return "UEW";
    case VulnClass::US:
        return "US";
    case VulnClass::RE:
        return "RE";
    case VulnClass::TOD:
        return "TOD";
    case VulnClass::RCA:
        return "RCA";
    }
    return "?";
}

VulnClass vuln_class_from_name(const std::string& s)
{
    if (s == "UEW")
        return VulnClass::UEW;
    if (s == "US")
        return VulnClass::US;
    if (s == "RE")
        return VulnClass::RE;
    if (s == "TOD")
        return VulnClass::TOD;
    if (s == "RCA")
        return VulnClass::RCA;
    throw SchemaError{"unknown vulnerability class '" + s + "'"};
}

std::string StateRef::str() const
{
    return contract + "." + variable + (key_kind == KeyKind::AnyKey ? "[*]" : "");
}

nlohmann::ordered_json VulnPath::to_json() const
{
    nlohmann::ordered_json j;
    j["entry"] = entry ? nlohmann::ordered_json(*entry) : nlohmann::ordered_json(nullptr);
    j["target"] = target;
    j["vuln_class"] = vuln_class_name(vuln_class);
    auto shared = nlohmann::ordered_json::array();
    for (const auto& s : shared_state)
        shared.push_back(s.str());
    j["shared_state"] = shared;
    return j;
}

VulnPath VulnPath::from_json(const nlohmann::json& j)
{
    VulnPath p;
    if (!j.is_object() || !j.contains("target") || !j.contains("vuln_class"))
        throw SchemaError{"path object needs 'target' and 'vuln_class'"};
    if (j.contains("entry") && !j["entry"].is_null())
        p.entry = j["entry"].get<std::string>();
    p.target = j["target"].get<std::string>();
    p.vuln_class = vuln_class_from_name(j["vuln_class"].get<std::string>());
    if (j.contains("shared_state"))
        for (const auto& s : j["shared_state"])
        {
            const std::string text = s.get<std::string>();
            StateRef ref;
            const auto dot = text.find('.');
            if (dot == std::string::npos)
                throw SchemaError{"malformed state ref '" + text + "'"};
            ref.contract = text.substr(0, dot);
            std::string rest = text.substr(dot + 1);
            if (rest.size() > 3 && rest.substr(rest.size() - 3) == "[*]")
            {
                ref.key_kind = KeyKind::AnyKey;
                rest = rest.substr(0, rest.size() - 3);
            }
            ref.variable = rest;
            p.shared_state.push_back(std::move(ref));
        }
    return p;
}

VulnReport VulnReport::from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw SchemaError{"report must be a JSON object"};
    for (const auto* key : {"contract", "function", "vulnerability"})
        if (!j.contains(key) || !j[key].is_string())
            throw SchemaError{std::string{"report needs string field '"} + key + "'"};
    VulnReport r;
    r.contract = j["contract"].get<std::string>();
    r.function = j["function"].get<std::string>();
    r.vuln_class = vuln_class_from_name(j["vulnerability"].get<std::string>());
    if (j.contains("extra"))
    {
        if (!j["extra"].is_object())
            throw SchemaError{"report field 'extra' must be an object"};
        r.extra = j["extra"];
    }
    return r;
}

nlohmann::ordered_json VulnReport::to_json() const
{
    nlohmann::ordered_json j;
    j["contract"] = contract;
    j["function"] = function;
    j["vulnerability"] = vuln_class_name(vuln_class);
    j["extra"] = extra;
    return j;
}

namespace
{
void collect_expr_reads(const ContractUnit& unit, const Expr& e, std::set<StateRef>& out)
{
    if (e.kind == ExprKind::StateVar)
        out.insert({unit.name, e.name, KeyKind::None});
    else if (e.kind == ExprKind::MappingAccess)
        out.insert({unit.name, e.name, KeyKind::AnyKey});
    for (const auto& a : e.args)
        collect_expr_reads(unit, a, out);
}

void collect_stmt(const ContractUnit& unit, const Statement& st, std::set<StateRef>& reads,
                  std::set<StateRef>& writes)
{
    if (st.lvalue)
    {
        const auto kk = st.lvalue->key ? KeyKind::AnyKey : KeyKind::None;
        writes.insert({unit.name, st.lvalue->var, kk});
        if (st.lvalue->key)
            collect_expr_reads(unit, *st.lvalue->key, reads);
    }
    if (st.kind == StmtKind::TokenOp)
        writes.insert({unit.name, "asset:" + st.asset, KeyKind::AnyKey});
    for (const auto& e : st.exprs)
        collect_expr_reads(unit, e, reads);
    for (const auto& s : st.then_body)
        collect_stmt(unit, s, reads, writes);
    for (const auto& s : st.else_body)
        collect_stmt(unit, s, reads, writes);
}

void collect_function(const ContractUnit& unit, const FunctionDecl& fn, std::set<StateRef>& reads,
                      std::set<StateRef>& writes)
{
    for (const auto& mod_name : fn.modifiers_applied)
        if (const auto* mod = unit.find_modifier(mod_name))
            for (const auto& st : mod->body)
                collect_stmt(unit, st, reads, writes);
    for (const auto& st : fn.body)
        collect_stmt(unit, st, reads, writes);
}

const FunctionDecl& require_function(const ContractUnit& unit, const std::string& name)
{
    const auto* fn = unit.find_function(name);
    if (!fn)
        throw UnknownFunctionError{"no function '" + name + "' in contract " + unit.name};
    return *fn;
}

// Key kinds track variable shape, so (contract, variable) equality is the
// whole intersection test.
bool overlaps(const std::set<StateRef>& writes, const std::set<StateRef>& reads)
{
    for (const auto& w : writes)
        for (const auto& r : reads)
            if (w.contract == r.contract && w.variable == r.variable)
                return true;
    return false;
}
}  // namespace

std::set<StateRef> read_set(const ContractUnit& unit, const std::string& function)
{
    std::set<StateRef> reads;
    std::set<StateRef> writes;
    collect_function(unit, require_function(unit, function), reads, writes);
    return reads;
}

std::set<StateRef> write_set(const ContractUnit& unit, const std::string& function)
{
    std::set<StateRef> reads;
    std::set<StateRef> writes;
    collect_function(unit, require_function(unit, function), reads, writes);
    return writes;
}

std::vector<std::string> entry_functions(const ContractUnit& unit, const std::string& f_test)
{
    const auto reads = read_set(unit, f_test);
    std::vector<std::string> out;
    for (const auto& f : unit.functions)
    {
        if (f.name == f_test || !f.modifiers_applied.empty())
            continue;
        if (overlaps(write_set(unit, f.name), reads))
            out.push_back(f.name);
    }
    return out;
}

std::vector<VulnPath> build_paths(const ContractUnit& unit, const VulnReport& report)
{
    const auto reads = read_set(unit, report.function);
    struct Candidate
    {
        VulnPath path;
        std::size_t decl_index;
    };
    std::vector<Candidate> candidates;
    const auto entries = entry_functions(unit, report.function);
    for (const auto& entry : entries)
    {
        VulnPath p;
        p.entry = entry;
        p.target = report.function;
        p.vuln_class = report.vuln_class;
        const auto writes = write_set(unit, entry);
        for (const auto& w : writes)
            for (const auto& r : reads)
                if (w.contract == r.contract && w.variable == r.variable)
                    p.shared_state.push_back(r);
        std::sort(p.shared_state.begin(), p.shared_state.end());
        p.shared_state.erase(std::unique(p.shared_state.begin(), p.shared_state.end()),
                             p.shared_state.end());
        std::size_t idx = 0;
        for (std::size_t i = 0; i < unit.functions.size(); ++i)
            if (unit.functions[i].name == entry)
                idx = i;
        candidates.push_back({std::move(p), idx});
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.path.shared_state.size() != b.path.shared_state.size())
            return a.path.shared_state.size() > b.path.shared_state.size();
        return a.decl_index < b.decl_index;
    });
    std::vector<VulnPath> out;
    for (auto& c : candidates)
        out.push_back(std::move(c.path));
    VulnPath direct;
    direct.entry = std::nullopt;
    direct.target = report.function;
    direct.vuln_class = report.vuln_class;
    out.push_back(std::move(direct));
    return out;
}

}  // namespace pocval
