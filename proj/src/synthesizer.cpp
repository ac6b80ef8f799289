// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/synthesizer.hpp>
#include <pocval/errors.hpp>
#include <pocval/printer.hpp>
#include <pocval/trace_io.hpp>

#include <algorithm>
#include <sstream>

namespace pocval
{
namespace
{
Value default_arg(VarType type, const Address& caller)
{
    switch (type)
    {
    case VarType::U256:
        return Value{u256{1}};
    case VarType::Bool:
        return Value{false};
    case VarType::Address:
        return Value{caller};
    default:
        return Value{u256{0}};
    }
}

std::optional<Value> coerce_hint(const nlohmann::ordered_json& j, VarType type)
{
    try
    {
        switch (type)
        {
        case VarType::U256:
            if (j.is_number_unsigned())
                return Value{u256{j.get<std::uint64_t>()}};
            if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
                return Value{u256{static_cast<std::uint64_t>(j.get<std::int64_t>())}};
            if (j.is_string())
                return Value{u256_from_dec(j.get<std::string>())};
            break;
        case VarType::Address:
            if (j.is_string())
                return Value{Address{j.get<std::string>()}};
            break;
        case VarType::Bool:
            if (j.is_boolean())
                return Value{j.get<bool>()};
            break;
        default:
            break;
        }
    }
    catch (const std::invalid_argument&)
    {
    }
    return std::nullopt;
}

std::optional<u256> coerce_number(const nlohmann::ordered_json& j)
{
    if (j.is_number_unsigned())
        return u256{j.get<std::uint64_t>()};
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
        return u256{static_cast<std::uint64_t>(j.get<std::int64_t>())};
    if (j.is_string())
    {
        try
        {
            return u256_from_dec(j.get<std::string>());
        }
        catch (const std::invalid_argument&)
        {
        }
    }
    return std::nullopt;
}

std::vector<Value> call_args(const FunctionDecl& fn, const Address& caller,
                             const nlohmann::ordered_json* hints)
{
    std::vector<Value> args;
    for (std::size_t i = 0; i < fn.params.size(); ++i)
    {
        std::optional<Value> v;
        if (hints && hints->is_array() && i < hints->size())
            v = coerce_hint((*hints)[i], fn.params[i].type);
        args.push_back(v ? *v : default_arg(fn.params[i].type, caller));
    }
    return args;
}

u256 call_value(const FunctionDecl& fn, const nlohmann::ordered_json& extra, const char* key)
{
    if (!fn.payable)
        return 0;
    if (extra.contains(key))
        if (auto v = coerce_number(extra[key]))
            return *v;
    return 1;
}

Action make_deal(const Address& who, const u256& amount)
{
    Action a;
    a.kind = ActionKind::Deal;
    a.addr = who;
    a.value = amount;
    return a;
}

Action make_call(const Address& caller, const std::string& target, const std::string& fn,
                 std::vector<Value> args, const u256& value)
{
    Action a;
    a.kind = ActionKind::Call;
    a.caller = caller;
    a.target = target;
    a.function = fn;
    a.args = std::move(args);
    a.value = value;
    return a;
}

// Accounts the script references, used to pick a fresh user name.
std::vector<Address> script_accounts(const PoC& poc)
{
    std::vector<Address> out{kAttacker, kDeployer};
    auto note = [&out](const Address& a) {
        if (!a.empty() && std::find(out.begin(), out.end(), a) == out.end())
            out.push_back(a);
    };
    for (const auto* actions : {&poc.setup, &poc.exploit})
        for (const Action& a : *actions)
        {
            note(a.caller);
            note(a.addr);
        }
    return out;
}

Address fresh_user(const PoC& poc)
{
    const auto used = script_accounts(poc);
    for (int n = 1;; ++n)
    {
        Address candidate = "user" + std::to_string(n);
        if (std::find(used.begin(), used.end(), candidate) == used.end())
            return candidate;
    }
}

const Statement* find_statement(const std::vector<Statement>& body, NodeId id)
{
    for (const Statement& st : body)
    {
        if (st.node == id)
            return &st;
        if (const Statement* hit = find_statement(st.then_body, id))
            return hit;
        if (const Statement* hit = find_statement(st.else_body, id))
            return hit;
    }
    return nullptr;
}

const Statement* find_statement(const ContractUnit& unit, NodeId id)
{
    if (id == kInvalidNode)
        return nullptr;
    if (unit.ctor)
        if (const Statement* hit = find_statement(unit.ctor->body, id))
            return hit;
    for (const FunctionDecl& fn : unit.functions)
        if (const Statement* hit = find_statement(fn.body, id))
            return hit;
    for (const ModifierDecl& mod : unit.modifiers)
        if (const Statement* hit = find_statement(mod.body, id))
            return hit;
    return nullptr;
}

bool contains_builtin(const Expr& e, Builtin b)
{
    if (e.kind == ExprKind::Builtin && e.builtin == b)
        return true;
    for (const Expr& child : e.args)
        if (contains_builtin(child, b))
            return true;
    return false;
}

// require(msg.sender == owner)-shaped conditions: an equality pinning the
// caller identity, as opposed to a balance check that merely reads it.
bool has_identity_guard(const Expr& e)
{
    if (e.kind == ExprKind::Binary && (e.bin_op == BinOp::Eq || e.bin_op == BinOp::Ne))
        for (const Expr& side : e.args)
            if (side.kind == ExprKind::Builtin &&
                (side.builtin == Builtin::MsgSender || side.builtin == Builtin::TxOrigin))
                return true;
    for (const Expr& child : e.args)
        if (has_identity_guard(child))
            return true;
    return false;
}

int first_u256_param(const FunctionDecl& fn)
{
    for (std::size_t i = 0; i < fn.params.size(); ++i)
        if (fn.params[i].type == VarType::U256)
            return static_cast<int>(i);
    return -1;
}

// The exploit call the repair should touch: prefer the attacker's last call
// into the function the failure was localized to, then anyone's, then the
// tested function, then whatever ran last.
int repair_call_index(const PoC& poc, const std::string& failed_fn, const VulnPath& path)
{
    int loose = -1, by_fn = -1, by_target = -1, any = -1;
    for (int i = 0; i < static_cast<int>(poc.exploit.size()); ++i)
    {
        const Action& a = poc.exploit[i];
        if (a.kind != ActionKind::Call)
            continue;
        any = i;
        if (a.function == path.target)
            by_target = i;
        if (!failed_fn.empty() && a.function == failed_fn)
        {
            by_fn = i;
            if (a.caller == kAttacker)
                loose = i;
        }
    }
    if (loose >= 0)
        return loose;
    if (by_fn >= 0)
        return by_fn;
    if (by_target >= 0)
        return by_target;
    return any;
}

// Last call before `idx` by the same account into a different function; the
// usual stake-then-claim shape makes this the funding step.
int entry_call_index(const PoC& poc, int idx)
{
    const Action& target = poc.exploit[idx];
    for (int i = idx - 1; i >= 0; --i)
    {
        const Action& a = poc.exploit[i];
        if (a.kind == ActionKind::Call && a.caller == target.caller &&
            a.function != target.function)
            return i;
    }
    return -1;
}

void scale_funding(PoC& poc)
{
    bool any = false;
    for (Action& a : poc.setup)
        if (a.kind == ActionKind::Deal || a.kind == ActionKind::DealAsset)
        {
            a.value *= 10;
            any = true;
        }
    if (!any)
        poc.setup.push_back(make_deal(kAttacker, 10));
}

bool double_stake(PoC& poc, int entry_idx)
{
    Action& entry = poc.exploit[entry_idx];
    bool doubled = false;
    if (entry.value != 0)
    {
        entry.value *= 2;
        doubled = true;
    }
    for (Value& v : entry.args)
        if (v.is_num() && v.num() != 0)
        {
            v = Value{v.num() * 2};
            doubled = true;
            break;
        }
    return doubled;
}

PoC build_seed(const SynthesisRequest& req)
{
    const ContractUnit& unit = *req.unit;
    const VulnPath& path = req.path;
    PoC poc;

    Action deploy;
    deploy.kind = ActionKind::Deploy;
    deploy.contract = unit.name;
    if (unit.ctor)
        for (const Param& p : unit.ctor->params)
            deploy.args.push_back(default_arg(p.type, kDeployer));
    poc.setup.push_back(deploy);
    poc.setup.push_back(make_deal(kAttacker, 10));
    poc.setup.push_back(make_deal(unit.name, 100));

    // Order-dependence needs a victim transaction to race against.
    const bool two_party = path.vuln_class == VulnClass::TOD;
    if (two_party)
        poc.setup.push_back(make_deal("user1", 10));

    if (req.extra.contains("block_number"))
        if (auto n = coerce_number(req.extra["block_number"]))
        {
            Action roll;
            roll.kind = ActionKind::Roll;
            roll.value = *n;
            poc.setup.push_back(roll);
        }
    if (req.extra.contains("timestamp"))
        if (auto n = coerce_number(req.extra["timestamp"]))
        {
            Action warp;
            warp.kind = ActionKind::Warp;
            warp.value = *n;
            poc.setup.push_back(warp);
        }

    const FunctionDecl* target_fn = unit.find_function(path.target);
    const FunctionDecl* entry_fn = path.entry ? unit.find_function(*path.entry) : nullptr;
    const nlohmann::ordered_json* target_hints =
        req.extra.contains("args") ? &req.extra["args"] : nullptr;
    const nlohmann::ordered_json* entry_hints =
        req.extra.contains("entry_args") ? &req.extra["entry_args"] : nullptr;

    auto block_for = [&](const Address& caller) {
        if (entry_fn)
            poc.exploit.push_back(make_call(caller, unit.name, entry_fn->name,
                                            call_args(*entry_fn, caller, entry_hints),
                                            call_value(*entry_fn, req.extra, "entry_value")));
        if (target_fn)
            poc.exploit.push_back(make_call(caller, unit.name, target_fn->name,
                                            call_args(*target_fn, caller, target_hints),
                                            call_value(*target_fn, req.extra, "value")));
    };
    if (two_party)
        block_for("user1");
    block_for(kAttacker);

    if (path.vuln_class == VulnClass::RE && target_fn)
        poc.attacker_fallback = std::vector<Action>{
            make_call(kAttacker, unit.name, target_fn->name,
                      call_args(*target_fn, kAttacker, target_hints), 0)};
    return poc;
}

PoC repair_failure(const SynthesisRequest& req)
{
    PoC child = *req.parent;
    if (!req.failure)
    {
        scale_funding(child);
        return child;
    }
    const FailureContext& ctx = *req.failure;

    const int idx = repair_call_index(child, ctx.enclosing_function, req.path);
    Action* call = idx >= 0 ? &child.exploit[idx] : nullptr;

    if (ctx.revert_message.find("not payable") != std::string::npos && call &&
        call->value != 0)
    {
        call->value = 0;
        return child;
    }
    if (!call)
    {
        scale_funding(child);
        return child;
    }

    if (ctx.statement_class == StmtClass::Check)
    {
        const Statement* st = find_statement(*req.unit, ctx.statement_node);
        if (st && !st->exprs.empty())
        {
            const Expr& cond = st->exprs[0];
            if (contains_builtin(cond, Builtin::MsgValue))
            {
                call->value = call->value == 0 ? u256{1} : call->value * 2;
                return child;
            }
            if (has_identity_guard(cond) && call->caller != kDeployer)
            {
                call->caller = kDeployer;
                return child;
            }
        }
    }

    // Balance-shaped failure: ask for less or stake more.
    const int entry_idx = entry_call_index(child, idx);
    const FunctionDecl* fn = req.unit->find_function(call->function);
    const int argpos = fn ? first_u256_param(*fn) : -1;
    if (argpos >= 0 && argpos < static_cast<int>(call->args.size()))
    {
        const u256 cur = call->args[argpos].num();
        if (entry_idx >= 0)
        {
            const Action& entry = child.exploit[entry_idx];
            u256 stake = entry.value;
            if (stake == 0)
                for (const Value& v : entry.args)
                    if (v.is_num())
                    {
                        stake = v.num();
                        break;
                    }
            if (stake == 0)
                stake = 1;
            if (cur > stake)
            {
                call->args[argpos] = Value{stake};
                return child;
            }
            if (double_stake(child, entry_idx))
                return child;
        }
        else if (cur > 0)
        {
            call->args[argpos] = Value{cur / 2};
            return child;
        }
        scale_funding(child);
        return child;
    }
    if (entry_idx >= 0 && double_stake(child, entry_idx))
        return child;
    scale_funding(child);
    return child;
}

// Splits the exploit into maximal runs of same-caller calls; cheatcodes glue
// to the run in progress.
struct Run
{
    Address caller;
    std::vector<Action> actions;
};

std::vector<Run> split_runs(const std::vector<Action>& exploit)
{
    std::vector<Run> runs;
    for (const Action& a : exploit)
    {
        const bool is_call = a.kind == ActionKind::Call;
        if (runs.empty() || (is_call && !runs.back().caller.empty() &&
                             runs.back().caller != a.caller))
            runs.push_back(Run{});
        if (is_call && runs.back().caller.empty())
            runs.back().caller = a.caller;
        runs.back().actions.push_back(a);
    }
    return runs;
}

std::vector<PoC> apply_primitive(const SynthesisRequest& req)
{
    const PoC& parent = *req.parent;
    const ContractUnit& unit = *req.unit;
    const VulnPath& path = req.path;
    const std::string& op = req.op->name;
    std::vector<PoC> children;

    if (op == "add_user")
    {
        const std::string invoked = path.entry ? *path.entry : path.target;
        const Action* model = nullptr;
        for (const Action& a : parent.exploit)
            if (a.kind == ActionKind::Call && a.caller == kAttacker && a.function == invoked)
                model = &a;
        const FunctionDecl* fn = unit.find_function(invoked);
        if (!fn)
            return children;
        const Address user = fresh_user(parent);
        PoC child = parent;
        child.setup.push_back(make_deal(user, 10));
        Action call = model ? *model
                            : make_call(user, unit.name, invoked, call_args(*fn, user, nullptr),
                                        fn->payable ? u256{1} : u256{0});
        call.caller = user;
        for (Value& v : call.args)
            if (v.is_addr() && v.addr() == kAttacker)
                v = Value{user};
        child.exploit.insert(child.exploit.begin(), call);
        children.push_back(std::move(child));
    }
    else if (op == "change_invoker")
    {
        for (const Address& candidate : {Address{kDeployer}, fresh_user(parent)})
        {
            PoC child = parent;
            bool changed = false;
            for (Action& a : child.exploit)
                if (a.kind == ActionKind::Call && a.caller == kAttacker)
                {
                    a.caller = candidate;
                    changed = true;
                }
            if (!changed)
                break;
            if (candidate != kDeployer)
                child.setup.push_back(make_deal(candidate, 10));
            children.push_back(std::move(child));
        }
    }
    else if (op == "change_order")
    {
        auto runs = split_runs(parent.exploit);
        int atk = -1, other = -1;
        for (int i = 0; i < static_cast<int>(runs.size()); ++i)
        {
            if (runs[i].caller == kAttacker && atk < 0)
                atk = i;
            if (!runs[i].caller.empty() && runs[i].caller != kAttacker && other < 0)
                other = i;
        }
        if (atk >= 0 && other >= 0)
        {
            std::swap(runs[atk], runs[other]);
            PoC child = parent;
            child.exploit.clear();
            for (const Run& r : runs)
                child.exploit.insert(child.exploit.end(), r.actions.begin(), r.actions.end());
            children.push_back(std::move(child));
        }
    }
    else if (op == "modify_block")
    {
        u256 base_ts = kInitialTimestamp;
        u256 base_bn = kInitialBlockNumber;
        for (const auto* actions : {&parent.setup, &parent.exploit})
            for (const Action& a : *actions)
            {
                if (a.kind == ActionKind::Warp)
                    base_ts = a.value;
                if (a.kind == ActionKind::Roll)
                    base_bn = a.value;
            }
        auto schedule_child = [&](ActionKind kind, const u256& v) {
            PoC child = parent;
            Action a;
            a.kind = kind;
            a.value = v;
            child.exploit.insert(child.exploit.begin(), a);
            children.push_back(std::move(child));
        };
        schedule_child(ActionKind::Warp, base_ts + 1);
        schedule_child(ActionKind::Warp, base_ts + 100);
        schedule_child(ActionKind::Warp, base_ts + 86400);
        schedule_child(ActionKind::Roll, base_bn + 1);
        schedule_child(ActionKind::Roll, base_bn + 256);
    }
    else if (op == "change_argument")
    {
        for (std::size_t i = 0; i < parent.exploit.size(); ++i)
        {
            const Action& a = parent.exploit[i];
            if (a.kind != ActionKind::Call || a.caller != kAttacker)
                continue;
            const FunctionDecl* fn = unit.find_function(a.function);
            if (!fn)
                continue;
            auto boundary_children = [&](const u256& cur, auto&& assign) {
                for (const u256& v : {u256{0}, u256{1}, cur * 2, u256_max()})
                {
                    if (v == cur)
                        continue;
                    PoC child = parent;
                    assign(child.exploit[i], v);
                    bool dup = false;
                    for (const PoC& sib : children)
                        if (sib.exploit == child.exploit && sib.setup == child.setup)
                            dup = true;
                    if (!dup)
                        children.push_back(std::move(child));
                }
            };
            for (std::size_t p = 0; p < fn->params.size(); ++p)
                if (fn->params[p].type == VarType::U256 && p < a.args.size())
                    boundary_children(a.args[p].num(), [p](Action& act, const u256& v) {
                        act.args[p] = Value{v};
                    });
            if (fn->payable)
                boundary_children(a.value,
                                  [](Action& act, const u256& v) { act.value = v; });
        }
    }
    return children;
}
}  // namespace

std::string vulnerability_feature_text(VulnClass vuln)
{
    switch (vuln)
    {
    case VulnClass::UEW:
        return "The contract sends Ether to an address derived from the transaction "
               "origin without restricting who may trigger the send. Calling the "
               "function from an attacker account makes the transfer pay the attacker "
               "directly, so profit shows up as a positive native balance delta.";
    case VulnClass::US:
        return "The contract exposes a reachable selfdestruct. Any caller who gets "
               "past the guards can destroy the contract; the destruction event is "
               "the exploit signal, and the swept balance is the payout.";
    case VulnClass::RE:
        return "An external call hands control back to the caller before the "
               "contract finishes updating its bookkeeping. A fallback routine on "
               "the attacker account can re-enter the vulnerable function while the "
               "state is stale and repeat the withdrawal.";
    case VulnClass::TOD:
        return "The outcome depends on transaction order: a storage write in one "
               "transaction changes what a later transaction reads. The attacker "
               "profits by placing their transaction before or after another user's "
               "call to the same state.";
    case VulnClass::RCA:
        return "A control decision reads a block attribute such as the number or "
               "timestamp. These values are predictable and steerable, so the "
               "guarded branch can be forced by choosing when the call happens.";
    }
    return {};
}

std::string bind_instruction(const PrimitiveOp& op, const VulnPath& path,
                             const std::string& contract_name)
{
    std::string out = op.instruction;
    auto replace = [&out](const std::string& key, const std::string& value) {
        for (std::size_t pos; (pos = out.find(key)) != std::string::npos;)
            out.replace(pos, key.size(), value);
    };
    replace("{function}", op.name == "add_user" && path.entry ? *path.entry : path.target);
    replace("{contract}", contract_name);
    replace("{block_attribute}", "block number or timestamp");
    return out;
}

PromptSections assemble_prompt(const SynthesisRequest& req)
{
    const ContractUnit& unit = *req.unit;
    const VulnPath& path = req.path;
    std::ostringstream user;

    user << "## Contract Initialization\n";
    user << "Contract '" << unit.name << "' (arithmetic "
         << (unit.mode == ArithmeticMode::Checked ? "checked" : "unchecked") << ").\n";
    if (unit.ctor)
        user << to_source(*unit.ctor, true) << "\n";
    else
        user << "The contract has no constructor.\n";
    for (const StateVarDecl& sv : unit.state_vars)
        user << var_type_name(sv.type) << " " << sv.name << ";\n";

    user << "\n## Vulnerability Path\n";
    user << "Class: " << vuln_class_name(path.vuln_class) << "\n";
    if (path.entry)
        user << "Entry function: " << *path.entry << "\n";
    user << "Tested function: " << path.target << "\n";
    if (!path.shared_state.empty())
    {
        user << "Shared state:";
        for (const StateRef& ref : path.shared_state)
            user << " " << ref.str();
        user << "\n";
    }

    user << "\n## Vulnerability Features\n" << vulnerability_feature_text(path.vuln_class) << "\n";

    user << "\n## PoC Requirements\n"
         << "Respond with one JSON object: {\"setup\": [...], \"exploit\": [...], "
            "\"attacker_fallback\": [...] (optional)}.\n"
         << "Actions: {\"kind\": \"deploy\", \"contract\", \"args\", \"value\"}, "
            "{\"kind\": \"call\", \"caller\", \"target\", \"function\", \"args\", \"value\"}, "
            "{\"kind\": \"deal\", \"addr\", \"amount\"}, "
            "{\"kind\": \"deal_asset\", \"addr\", \"asset\", \"amount\"}, "
            "{\"kind\": \"prank\", \"addr\"}, {\"kind\": \"warp\", \"timestamp\"}, "
            "{\"kind\": \"roll\", \"block_number\"}.\n"
         << "Arguments are typed: {\"type\": \"uint256\"|\"address\"|\"bool\", \"value\": ...}.\n"
         << "Accounts 'attacker' and 'deployer' exist; fund any other account with a "
            "deal before using it. The attacker must end with more value than they "
            "started with.\n";

    user << "\n## Additional Information\n";
    if (!req.extra.empty())
        user << "Report hints: " << req.extra.dump() << "\n";
    if (req.mode == SynthesisMode::RefineFailure && req.failure)
    {
        const FailureContext& ctx = *req.failure;
        user << "The previous script failed during the "
             << (ctx.phase == Phase::SetUp ? "setup" : "exploit") << " phase with \""
             << ctx.revert_message << "\".\n";
        if (!ctx.statement_text.empty())
            user << "Failing statement (" << stmt_class_name(ctx.statement_class) << ") in "
                 << (ctx.enclosing_function.empty() ? "<unknown>" : ctx.enclosing_function)
                 << ": " << ctx.statement_text << "\n";
        if (!ctx.trace_suffix.empty())
        {
            user << "Final trace events:\n";
            for (const TraceEvent& ev : ctx.trace_suffix)
                user << trace_event_to_json(ev).dump() << "\n";
        }
        if (req.parent)
            user << "Previous script:\n" << req.parent->to_json().dump(2) << "\n";
    }
    else if (req.mode == SynthesisMode::RefinePrimitive && req.op)
    {
        user << bind_instruction(*req.op, path, unit.name) << "\n";
        if (req.parent)
            user << "Previous script:\n" << req.parent->to_json().dump(2) << "\n";
    }
    else if (req.extra.empty())
    {
        user << "None.\n";
    }

    const FunctionDecl* target_fn = unit.find_function(path.target);
    if (target_fn)
        user << "\n## Function Under Test\n" << to_source(*target_fn);
    if (path.entry)
        if (const FunctionDecl* entry_fn = unit.find_function(*path.entry))
            user << "\n## Entry Function\n" << to_source(*entry_fn);

    PromptSections out;
    out.system =
        "You are an expert in smart contract security analysis. Given a contract, a "
        "vulnerability path, and script requirements, produce a proof-of-concept "
        "exploit script for the MiniSol runtime. Reply with exactly one JSON object "
        "and no surrounding prose.";
    out.user = user.str();
    return out;
}

std::vector<PoC> TemplateBackend::propose(const SynthesisRequest& req)
{
    if (!req.unit)
        throw SynthesisFailed{"synthesis request has no contract"};
    switch (req.mode)
    {
    case SynthesisMode::Seed:
        return {build_seed(req)};
    case SynthesisMode::RefineFailure:
        if (!req.parent)
            throw SynthesisFailed{"failure refinement needs a parent script"};
        return {repair_failure(req)};
    case SynthesisMode::RefinePrimitive:
        if (!req.parent || !req.op)
            throw SynthesisFailed{"primitive refinement needs a parent script and an operation"};
        return apply_primitive(req);
    }
    return {};
}

}  // namespace pocval
