// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/errors.hpp>
#include <pocval/trace_io.hpp>

#include <istream>
#include <ostream>
#include <sstream>

namespace pocval
{
nlohmann::ordered_json trace_event_to_json(const TraceEvent& ev)
{
    nlohmann::ordered_json j;
    j["seq"] = ev.seq;
    j["phase"] = phase_name(ev.phase);
    j["from_cheatcode"] = ev.from_cheatcode;
    j["kind"] = trace_kind_name(ev.kind);
    if (ev.node_id == kInvalidNode)
        j["node_id"] = nullptr;
    else
        j["node_id"] = ev.node_id;
    // The transaction index matters beyond CallEnter: ordering rules compare
    // it across storage events, so every line carries it.
    j["tx_index"] = ev.tx_index;
    switch (ev.kind)
    {
    case TraceKind::CallEnter:
        j["caller"] = ev.caller;
        j["tx_origin"] = ev.tx_origin;
        j["target"] = ev.target;
        j["function"] = ev.function;
        j["value"] = to_dec(ev.value);
        j["depth"] = ev.depth;
        break;
    case TraceKind::CallExit:
        j["status"] = ev.status == CallStatus::Ok ? "Ok" : "Reverted";
        break;
    case TraceKind::StorageRead:
        j["slot"] = ev.slot;
        break;
    case TraceKind::StorageWrite:
        j["slot"] = ev.slot;
        j["old"] = ev.old_value;
        j["new"] = ev.new_value;
        break;
    case TraceKind::ValueTransfer:
        j["from"] = ev.from;
        j["to"] = ev.to;
        j["amount"] = to_dec(ev.amount);
        j["asset"] = ev.asset;
        break;
    case TraceKind::BlockAttrRead:
        j["attr"] = block_attr_name(ev.attr);
        break;
    case TraceKind::Selfdestruct:
        j["beneficiary"] = ev.beneficiary;
        break;
    case TraceKind::Revert:
        j["message"] = ev.message;
        break;
    case TraceKind::CheatcodeApplied:
        j["cheatcode"] = ev.cheatcode;
        break;
    }
    return j;
}

namespace
{
TraceKind trace_kind_from_name(const std::string& s)
{
    static const std::pair<const char*, TraceKind> table[] = {
        {"CallEnter", TraceKind::CallEnter},
        {"CallExit", TraceKind::CallExit},
        {"StorageRead", TraceKind::StorageRead},
        {"StorageWrite", TraceKind::StorageWrite},
        {"ValueTransfer", TraceKind::ValueTransfer},
        {"BlockAttrRead", TraceKind::BlockAttrRead},
        {"Selfdestruct", TraceKind::Selfdestruct},
        {"Revert", TraceKind::Revert},
        {"CheatcodeApplied", TraceKind::CheatcodeApplied},
    };
    for (const auto& [name, kind] : table)
        if (s == name)
            return kind;
    throw SchemaError{"unknown event kind '" + s + "'"};
}

std::string want_string(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_string())
        throw SchemaError{std::string{"event needs string field '"} + key + "'"};
    return j[key].get<std::string>();
}

u256 want_u256(const nlohmann::json& j, const char* key)
{
    try
    {
        return u256_from_dec(want_string(j, key));
    }
    catch (const std::invalid_argument& e)
    {
        throw SchemaError{e.what()};
    }
}
}  // namespace

TraceEvent trace_event_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw SchemaError{"event must be a JSON object"};
    TraceEvent ev;
    if (!j.contains("seq") || !j["seq"].is_number_integer())
        throw SchemaError{"event needs integer field 'seq'"};
    ev.seq = j["seq"].get<long>();
    const std::string phase = want_string(j, "phase");
    if (phase == "SetUp")
        ev.phase = Phase::SetUp;
    else if (phase == "Exploit")
        ev.phase = Phase::Exploit;
    else
        throw SchemaError{"unknown phase '" + phase + "'"};
    if (j.contains("from_cheatcode"))
    {
        if (!j["from_cheatcode"].is_boolean())
            throw SchemaError{"'from_cheatcode' must be a boolean"};
        ev.from_cheatcode = j["from_cheatcode"].get<bool>();
    }
    ev.kind = trace_kind_from_name(want_string(j, "kind"));
    if (j.contains("node_id") && !j["node_id"].is_null())
    {
        if (!j["node_id"].is_number_unsigned())
            throw SchemaError{"'node_id' must be an unsigned integer or null"};
        ev.node_id = j["node_id"].get<NodeId>();
    }
    if (j.contains("tx_index"))
    {
        if (!j["tx_index"].is_number_integer())
            throw SchemaError{"'tx_index' must be an integer"};
        ev.tx_index = j["tx_index"].get<int>();
    }
    switch (ev.kind)
    {
    case TraceKind::CallEnter:
        if (!j.contains("tx_index"))
            throw SchemaError{"CallEnter needs integer 'tx_index'"};
        ev.caller = want_string(j, "caller");
        ev.tx_origin = want_string(j, "tx_origin");
        ev.target = want_string(j, "target");
        ev.function = want_string(j, "function");
        ev.value = want_u256(j, "value");
        if (!j.contains("depth") || !j["depth"].is_number_integer())
            throw SchemaError{"CallEnter needs integer 'depth'"};
        ev.depth = j["depth"].get<int>();
        break;
    case TraceKind::CallExit:
    {
        const std::string st = want_string(j, "status");
        if (st == "Ok")
            ev.status = CallStatus::Ok;
        else if (st == "Reverted")
            ev.status = CallStatus::Reverted;
        else
            throw SchemaError{"unknown call status '" + st + "'"};
        break;
    }
    case TraceKind::StorageRead:
        ev.slot = want_string(j, "slot");
        break;
    case TraceKind::StorageWrite:
        ev.slot = want_string(j, "slot");
        ev.old_value = want_string(j, "old");
        ev.new_value = want_string(j, "new");
        break;
    case TraceKind::ValueTransfer:
        ev.from = want_string(j, "from");
        ev.to = want_string(j, "to");
        ev.amount = want_u256(j, "amount");
        ev.asset = want_string(j, "asset");
        break;
    case TraceKind::BlockAttrRead:
    {
        const std::string attr = want_string(j, "attr");
        if (attr == "Number")
            ev.attr = BlockAttr::Number;
        else if (attr == "Timestamp")
            ev.attr = BlockAttr::Timestamp;
        else if (attr == "Blockhash")
            ev.attr = BlockAttr::Blockhash;
        else
            throw SchemaError{"unknown block attribute '" + attr + "'"};
        break;
    }
    case TraceKind::Selfdestruct:
        ev.beneficiary = want_string(j, "beneficiary");
        break;
    case TraceKind::Revert:
        ev.message = want_string(j, "message");
        break;
    case TraceKind::CheatcodeApplied:
        ev.cheatcode = want_string(j, "cheatcode");
        break;
    }
    return ev;
}

std::string trace_to_jsonl(const std::vector<TraceEvent>& trace)
{
    std::ostringstream os;
    write_trace_jsonl(os, trace);
    return os.str();
}

void write_trace_jsonl(std::ostream& os, const std::vector<TraceEvent>& trace)
{
    for (const auto& ev : trace)
        os << trace_event_to_json(ev).dump() << '\n';
}

std::vector<TraceEvent> read_trace_jsonl(std::istream& is)
{
    std::vector<TraceEvent> out;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line))
    {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        nlohmann::json j;
        try
        {
            j = nlohmann::json::parse(line);
        }
        catch (const nlohmann::json::parse_error& e)
        {
            throw SchemaError{std::string{"invalid JSON: "} + e.what(), line_no};
        }
        try
        {
            out.push_back(trace_event_from_json(j));
        }
        catch (const SchemaError& e)
        {
            throw SchemaError{e.what(), line_no};
        }
    }
    return out;
}

std::vector<TraceEvent> trace_from_jsonl(const std::string& text)
{
    std::istringstream is{text};
    return read_trace_jsonl(is);
}

std::map<std::string, bigint> deltas_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw SchemaError{"deltas must be a JSON object of asset -> signed decimal string"};
    std::map<std::string, bigint> out;
    for (const auto& [asset, v] : j.items())
    {
        if (v.is_number_integer())
        {
            out[asset] = bigint{v.get<long long>()};
            continue;
        }
        if (!v.is_string())
            throw SchemaError{"delta for '" + asset + "' must be a signed decimal string"};
        try
        {
            out[asset] = bigint_from_dec(v.get<std::string>());
        }
        catch (const std::invalid_argument& e)
        {
            throw SchemaError{e.what()};
        }
    }
    return out;
}

nlohmann::ordered_json deltas_to_json(const std::map<std::string, bigint>& deltas)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [asset, v] : deltas)
        j[asset] = to_dec(v);
    return j;
}

}  // namespace pocval
