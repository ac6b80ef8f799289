// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/errors.hpp>
#include <pocval/hash.hpp>
#include <pocval/vm.hpp>

#include <nlohmann/json.hpp>

#include <set>

namespace pocval
{
std::string trace_kind_name(TraceKind k)
{
    switch (k)
    {
    case TraceKind::CallEnter:
        return "CallEnter";
    case TraceKind::CallExit:
        return "CallExit";
    case TraceKind::StorageRead:
        return "StorageRead";
    case TraceKind::StorageWrite:
        return "StorageWrite";
    case TraceKind::ValueTransfer:
        return "ValueTransfer";
    case TraceKind::BlockAttrRead:
        return "BlockAttrRead";
    case TraceKind::Selfdestruct:
        return "Selfdestruct";
    case TraceKind::Revert:
        return "Revert";
    case TraceKind::CheatcodeApplied:
        return "CheatcodeApplied";
    }
    return "?";
}

std::string phase_name(Phase p)
{
    return p == Phase::SetUp ? "SetUp" : "Exploit";
}

std::string block_attr_name(BlockAttr a)
{
    switch (a)
    {
    case BlockAttr::Number:
        return "Number";
    case BlockAttr::Timestamp:
        return "Timestamp";
    case BlockAttr::Blockhash:
        return "Blockhash";
    }
    return "?";
}

namespace
{
struct ContractInstance
{
    std::map<std::string, Value> scalars;
    std::map<std::string, std::map<Address, u256>> maps;
    bool destroyed = false;
};

struct World
{
    std::map<Address, u256> native;
    std::map<Address, std::map<std::string, u256>> assets;
    u256 block_number = kInitialBlockNumber;
    u256 block_timestamp = kInitialTimestamp;
    std::map<Address, ContractInstance> contracts;
    std::set<Address> accounts;
};

// Thrown at the point of failure after the Revert event is emitted. `unwound`
// flips once the originating frame has been passed, so enclosing frames know
// to record CallExit(Reverted) while the origin frame records none.
struct RevertEx
{
    std::string message;
    NodeId node;
    bool unwound = false;
};

struct HaltFrame
{
};

struct ReturnSignal
{
};

struct Frame
{
    Address self;
    Address msg_sender;
    u256 msg_value;
    const FunctionDecl* fn = nullptr;
    std::map<std::string, Value> params;
    int depth = 1;
};

class Executor
{
public:
    Executor(const ContractUnit& unit, const PoC& poc, const ExecLimits& limits)
      : unit_{unit}, poc_{poc}, limits_{limits}
    {}

    ExecutionOutcome run()
    {
        world_.accounts.insert(kAttacker);
        world_.accounts.insert(kDeployer);

        phase_ = Phase::SetUp;
        const bool setup_ok = run_phase(poc_.setup);
        bool ok = setup_ok;
        std::map<Address, u256> base_native;
        std::map<Address, std::map<std::string, u256>> base_assets;
        if (setup_ok)
        {
            base_native = world_.native;
            base_assets = world_.assets;
            phase_ = Phase::Exploit;
            ok = run_phase(poc_.exploit);
        }

        ExecutionOutcome out;
        out.executed_ok = ok;
        out.revert_info = revert_info_;
        if (setup_ok)
            compute_deltas(out, base_native, base_assets);
        out.world_digest = world_digest();
        out.trace = std::move(trace_);
        return out;
    }

private:
    const ContractUnit& unit_;
    const PoC& poc_;
    const ExecLimits& limits_;

    World world_;
    std::vector<TraceEvent> trace_;
    long seq_ = 0;
    Phase phase_ = Phase::SetUp;
    int tx_index_ = -1;
    long steps_ = 0;
    NodeId cur_stmt_ = kInvalidNode;
    Address tx_origin_;
    std::optional<Address> pending_prank_;
    std::optional<RevertInfo> revert_info_;
    // Exploit-phase cheatcode injections, subtracted from deltas.
    std::map<Address, bigint> cheat_native_;
    std::map<Address, std::map<std::string, bigint>> cheat_assets_;

    TraceEvent& emit(TraceKind kind)
    {
        TraceEvent ev;
        ev.seq = seq_++;
        ev.phase = phase_;
        ev.kind = kind;
        ev.node_id = cur_stmt_;
        ev.tx_index = tx_index_;
        trace_.push_back(std::move(ev));
        return trace_.back();
    }

    [[noreturn]] void revert(const std::string& message)
    {
        auto& ev = emit(TraceKind::Revert);
        ev.message = message;
        throw RevertEx{message, cur_stmt_};
    }

    [[noreturn]] void revert_at(NodeId node, const std::string& message)
    {
        cur_stmt_ = node;
        revert(message);
    }

    bool run_phase(const std::vector<Action>& actions)
    {
        for (const auto& action : actions)
        {
            if (action.kind == ActionKind::Call || action.kind == ActionKind::Deploy)
            {
                const World snapshot = world_;
                try
                {
                    run_transaction(action);
                }
                catch (RevertEx& ex)
                {
                    world_ = snapshot;
                    revert_info_ = RevertInfo{ex.message, ex.node, phase_};
                    return false;
                }
            }
            else
                run_cheatcode(action);
        }
        return true;
    }

    void run_cheatcode(const Action& action)
    {
        cur_stmt_ = kInvalidNode;
        auto& mark = emit(TraceKind::CheatcodeApplied);
        mark.from_cheatcode = true;
        mark.cheatcode = action_kind_name(action.kind);
        switch (action.kind)
        {
        case ActionKind::Deal:
        {
            world_.accounts.insert(action.addr);
            world_.native[action.addr] += action.value;
            auto& ev = emit(TraceKind::ValueTransfer);
            ev.from_cheatcode = true;
            ev.from = "";
            ev.to = action.addr;
            ev.amount = action.value;
            ev.asset = "native";
            if (phase_ == Phase::Exploit)
                cheat_native_[action.addr] += bigint{action.value};
            break;
        }
        case ActionKind::DealAsset:
        {
            world_.accounts.insert(action.addr);
            world_.assets[action.addr][action.asset] += action.value;
            auto& ev = emit(TraceKind::ValueTransfer);
            ev.from_cheatcode = true;
            ev.from = "";
            ev.to = action.addr;
            ev.amount = action.value;
            ev.asset = action.asset;
            if (phase_ == Phase::Exploit)
                cheat_assets_[action.addr][action.asset] += bigint{action.value};
            break;
        }
        case ActionKind::Prank:
            pending_prank_ = action.addr;
            break;
        case ActionKind::Warp:
            world_.block_timestamp = action.value;
            break;
        case ActionKind::Roll:
            world_.block_number = action.value;
            break;
        case ActionKind::ExpectProfitSnapshot:
            break;
        default:
            break;
        }
    }

    void run_transaction(const Action& action)
    {
        ++tx_index_;
        cur_stmt_ = kInvalidNode;
        if (action.kind == ActionKind::Deploy)
        {
            run_deploy(action);
            return;
        }
        Address caller = action.caller;
        if (pending_prank_)
        {
            caller = *pending_prank_;
            pending_prank_.reset();
        }
        world_.accounts.insert(caller);
        tx_origin_ = caller;

        auto it = world_.contracts.find(action.target);
        if (it == world_.contracts.end() || it->second.destroyed)
            revert("no code at target '" + action.target + "'");

        const auto* fn = unit_.find_function(action.function);
        if (!fn)
            revert("unknown function '" + action.function + "'");

        run_call(caller, action.target, *fn, action.args, action.value, 1);
    }

    void run_deploy(const Action& action)
    {
        tx_origin_ = kDeployer;
        if (action.contract != unit_.name)
            revert("unknown contract '" + action.contract + "'");
        if (world_.contracts.count(action.contract))
            revert("contract already deployed");
        if (world_.accounts.count(action.contract))
            revert("contract address collides with an account");

        ContractInstance inst;
        for (const auto& v : unit_.state_vars)
            if (v.type != VarType::MappingAddrU256)
                inst.scalars[v.name] = Value::default_of(v.type);
        world_.contracts[action.contract] = std::move(inst);

        // State variable initializers run before the constructor body, in a
        // deployer context with no callvalue.
        Frame init_frame;
        init_frame.self = action.contract;
        init_frame.msg_sender = kDeployer;
        init_frame.msg_value = 0;
        init_frame.depth = 1;
        for (const auto& v : unit_.state_vars)
            if (v.init)
            {
                const Value val = eval(*v.init, init_frame);
                store_scalar(action.contract, v, val);
            }

        auto& enter = emit(TraceKind::CallEnter);
        enter.caller = kDeployer;
        enter.tx_origin = kDeployer;
        enter.target = action.contract;
        enter.function = "constructor";
        enter.value = action.value;
        enter.depth = 1;

        const bool payable = unit_.ctor && unit_.ctor->payable;
        if (action.value > 0)
        {
            if (!payable)
                revert("constructor not payable");
            move_native(kDeployer, action.contract, action.value, "insufficient balance for deploy value");
        }
        if (unit_.ctor)
        {
            Frame frame;
            frame.self = action.contract;
            frame.msg_sender = kDeployer;
            frame.msg_value = action.value;
            frame.fn = &*unit_.ctor;
            frame.depth = 1;
            bind_params(frame, unit_.ctor->params, action.args);
            exec_frame(frame, unit_.ctor->body, {});
        }
        else if (!action.args.empty())
            revert("constructor takes no arguments");

        cur_stmt_ = kInvalidNode;
        auto& exit = emit(TraceKind::CallExit);
        exit.status = CallStatus::Ok;
    }

    void run_call(const Address& caller, const Address& target, const FunctionDecl& fn,
                  const std::vector<Value>& args, const u256& value, int depth)
    {
        if (depth > limits_.max_call_depth)
            revert("call depth exceeded");

        cur_stmt_ = kInvalidNode;
        auto& enter = emit(TraceKind::CallEnter);
        enter.caller = caller;
        enter.tx_origin = tx_origin_;
        enter.target = target;
        enter.function = fn.name;
        enter.value = value;
        enter.depth = depth;

        try
        {
            if (value > 0)
            {
                if (!fn.payable)
                    revert("function '" + fn.name + "' not payable");
                move_native(caller, target, value, "insufficient balance for call value");
            }
            Frame frame;
            frame.self = target;
            frame.msg_sender = caller;
            frame.msg_value = value;
            frame.fn = &fn;
            frame.depth = depth;
            bind_params(frame, fn.params, args);
            exec_frame(frame, fn.body, fn.modifiers_applied);
        }
        catch (RevertEx& ex)
        {
            if (ex.unwound)
            {
                cur_stmt_ = kInvalidNode;
                auto& exit = emit(TraceKind::CallExit);
                exit.status = CallStatus::Reverted;
            }
            else
                ex.unwound = true;
            throw;
        }

        cur_stmt_ = kInvalidNode;
        auto& exit = emit(TraceKind::CallExit);
        exit.status = CallStatus::Ok;
    }

    void bind_params(Frame& frame, const std::vector<Param>& params, const std::vector<Value>& args)
    {
        if (params.size() != args.size())
            revert("argument count mismatch");
        for (std::size_t i = 0; i < params.size(); ++i)
        {
            if (args[i].type() != params[i].type)
                revert("argument type mismatch for '" + params[i].name + "'");
            frame.params[params[i].name] = args[i];
        }
    }

    // Applied modifier bodies run before the function body, in order.
    void exec_frame(Frame& frame, const std::vector<Statement>& body,
                    const std::vector<std::string>& modifiers)
    {
        try
        {
            for (const auto& mod_name : modifiers)
                if (const auto* mod = unit_.find_modifier(mod_name))
                    for (const auto& st : mod->body)
                        exec_stmt(st, frame);
            for (const auto& st : body)
                exec_stmt(st, frame);
        }
        catch (const HaltFrame&)
        {
        }
        catch (const ReturnSignal&)
        {
        }
    }

    void exec_stmt(const Statement& st, Frame& frame)
    {
        cur_stmt_ = st.node;
        if (limits_.inject_revert_at && *limits_.inject_revert_at == st.node)
            revert("injected revert");
        if (++steps_ > limits_.max_steps)
            revert("step limit exceeded");

        switch (st.kind)
        {
        case StmtKind::Require:
        {
            const Value cond = eval(st.exprs[0], frame);
            cur_stmt_ = st.node;
            if (!cond.is_bool())
                revert("type error: require needs a boolean");
            if (!cond.flag())
                revert(st.message.empty() ? "requirement failed" : st.message);
            break;
        }
        case StmtKind::Assign:
        {
            const Value rhs = eval(st.exprs[0], frame);
            cur_stmt_ = st.node;
            write_lvalue(*st.lvalue, rhs, frame);
            break;
        }
        case StmtKind::Transfer:
        case StmtKind::Send:
        case StmtKind::ExternalCall:
        {
            const Value to = eval(st.exprs[0], frame);
            const Value amt = eval(st.exprs[1], frame);
            cur_stmt_ = st.node;
            if (!to.is_addr() || !amt.is_num())
                revert("type error: value move needs (address, uint256)");
            move_native(frame.self, to.addr(), amt.num(), "insufficient balance");
            if (st.kind == StmtKind::ExternalCall)
                maybe_reenter(to.addr(), frame, st.node);
            break;
        }
        case StmtKind::Selfdestruct:
        {
            const Value benef = eval(st.exprs[0], frame);
            cur_stmt_ = st.node;
            if (!benef.is_addr())
                revert("type error: selfdestruct needs an address");
            auto& inst = world_.contracts.at(frame.self);
            const u256 bal = world_.native[frame.self];
            if (benef.addr() != frame.self)
            {
                if (bal > 0)
                {
                    world_.native[frame.self] = 0;
                    world_.native[benef.addr()] += bal;
                    auto& ev = emit(TraceKind::ValueTransfer);
                    ev.from = frame.self;
                    ev.to = benef.addr();
                    ev.amount = bal;
                    ev.asset = "native";
                }
            }
            else if (bal > 0)
            {
                // Destroying into yourself burns the balance.
                world_.native[frame.self] = 0;
                auto& ev = emit(TraceKind::ValueTransfer);
                ev.from = frame.self;
                ev.to = "";
                ev.amount = bal;
                ev.asset = "native";
            }
            auto& ev = emit(TraceKind::Selfdestruct);
            ev.beneficiary = benef.addr();
            inst.destroyed = true;
            throw HaltFrame{};
        }
        case StmtKind::TokenOp:
        {
            const Value to = eval(st.exprs[0], frame);
            const Value amt = eval(st.exprs[1], frame);
            cur_stmt_ = st.node;
            if (!to.is_addr() || !amt.is_num())
                revert("type error: token op needs (address, uint256)");
            if (st.token_op == TokenOpKind::Mint)
            {
                world_.assets[to.addr()][st.asset] += amt.num();
                auto& ev = emit(TraceKind::ValueTransfer);
                ev.from = "";
                ev.to = to.addr();
                ev.amount = amt.num();
                ev.asset = st.asset;
            }
            else
            {
                auto& from_bal = world_.assets[frame.self][st.asset];
                if (from_bal < amt.num())
                    revert("insufficient token balance");
                from_bal -= amt.num();
                world_.assets[to.addr()][st.asset] += amt.num();
                auto& ev = emit(TraceKind::ValueTransfer);
                ev.from = frame.self;
                ev.to = to.addr();
                ev.amount = amt.num();
                ev.asset = st.asset;
            }
            break;
        }
        case StmtKind::Emit:
            for (const auto& e : st.exprs)
                eval(e, frame);
            break;
        case StmtKind::If:
        {
            const Value cond = eval(st.exprs[0], frame);
            cur_stmt_ = st.node;
            if (!cond.is_bool())
                revert("type error: if needs a boolean");
            const auto& branch = cond.flag() ? st.then_body : st.else_body;
            for (const auto& s : branch)
                exec_stmt(s, frame);
            break;
        }
        case StmtKind::Return:
            if (st.has_value)
                eval(st.exprs[0], frame);
            throw ReturnSignal{};
        }
    }

    // An external call to the attacker hands control to the attacker
    // fallback script, one nesting level deeper. Zero-value calls re-enter
    // too; only the depth guard stops the recursion.
    void maybe_reenter(const Address& to, Frame& frame, NodeId call_node)
    {
        if (to != kAttacker || !poc_.attacker_fallback)
            return;
        const int new_depth = frame.depth + 1;
        if (new_depth > limits_.reentry_depth)
            return;
        for (const auto& action : *poc_.attacker_fallback)
        {
            if (action.kind != ActionKind::Call)
                continue;
            auto it = world_.contracts.find(action.target);
            if (it == world_.contracts.end() || it->second.destroyed)
                revert_at(call_node, "no code at target '" + action.target + "'");
            const auto* fn = unit_.find_function(action.function);
            if (!fn)
                revert_at(call_node, "unknown function '" + action.function + "'");
            run_call(kAttacker, action.target, *fn, action.args, action.value, new_depth);
            cur_stmt_ = call_node;
        }
    }

    void move_native(const Address& from, const Address& to, const u256& amount,
                     const std::string& underfunded_msg)
    {
        if (world_.native[from] < amount)
            revert(underfunded_msg);
        if (amount == 0)
            return;
        world_.native[from] -= amount;
        world_.native[to] += amount;
        auto& ev = emit(TraceKind::ValueTransfer);
        ev.from = from;
        ev.to = to;
        ev.amount = amount;
        ev.asset = "native";
    }

    void write_lvalue(const LValue& lv, const Value& rhs, Frame& frame)
    {
        auto& inst = world_.contracts.at(frame.self);
        const auto* decl = unit_.find_state_var(lv.var);
        if (lv.key)
        {
            const Value key = eval(*lv.key, frame);
            if (!key.is_addr())
                revert("type error: mapping key must be an address");
            if (!rhs.is_num())
                revert("type error: mapping value must be uint256");
            auto& slot = inst.maps[lv.var][key.addr()];
            auto& ev = emit(TraceKind::StorageWrite);
            ev.slot = map_slot(frame.self, lv.var, key.addr());
            ev.old_value = to_dec(slot);
            ev.new_value = to_dec(rhs.num());
            slot = rhs.num();
            return;
        }
        if (rhs.type() != decl->type)
            revert("type error: cannot assign " + var_type_name(rhs.type()) + " to " +
                   var_type_name(decl->type));
        auto& ev = emit(TraceKind::StorageWrite);
        ev.slot = scalar_slot(frame.self, lv.var);
        ev.old_value = inst.scalars[lv.var].str();
        ev.new_value = rhs.str();
        inst.scalars[lv.var] = rhs;
    }

    void store_scalar(const Address& self, const StateVarDecl& decl, const Value& val)
    {
        auto& inst = world_.contracts.at(self);
        if (val.type() != decl.type)
            revert("type error in initializer of '" + decl.name + "'");
        inst.scalars[decl.name] = val;
    }

    static std::string scalar_slot(const Address& self, const std::string& var)
    {
        return self + "." + var;
    }

    static std::string map_slot(const Address& self, const std::string& var, const Address& key)
    {
        return self + "." + var + "[" + key + "]";
    }

    Value eval(const Expr& e, Frame& frame)
    {
        switch (e.kind)
        {
        case ExprKind::Number:
            return Value{e.number};
        case ExprKind::BoolLit:
            return Value{e.bool_value};
        case ExprKind::Param:
            return frame.params.at(e.name);
        case ExprKind::StateVar:
        {
            auto& inst = world_.contracts.at(frame.self);
            auto& ev = emit(TraceKind::StorageRead);
            ev.slot = scalar_slot(frame.self, e.name);
            return inst.scalars.at(e.name);
        }
        case ExprKind::MappingAccess:
        {
            const Value key = eval(e.args[0], frame);
            if (!key.is_addr())
                revert("type error: mapping key must be an address");
            auto& inst = world_.contracts.at(frame.self);
            auto& ev = emit(TraceKind::StorageRead);
            ev.slot = map_slot(frame.self, e.name, key.addr());
            const auto mit = inst.maps.find(e.name);
            if (mit == inst.maps.end())
                return Value{u256{0}};
            const auto kit = mit->second.find(key.addr());
            return kit == mit->second.end() ? Value{u256{0}} : Value{kit->second};
        }
        case ExprKind::Builtin:
            switch (e.builtin)
            {
            case Builtin::MsgSender:
                return Value{frame.msg_sender};
            case Builtin::MsgValue:
                return Value{frame.msg_value};
            case Builtin::TxOrigin:
                return Value{tx_origin_};
            case Builtin::BlockNumber:
            {
                auto& ev = emit(TraceKind::BlockAttrRead);
                ev.attr = BlockAttr::Number;
                return Value{world_.block_number};
            }
            case Builtin::BlockTimestamp:
            {
                auto& ev = emit(TraceKind::BlockAttrRead);
                ev.attr = BlockAttr::Timestamp;
                return Value{world_.block_timestamp};
            }
            }
            revert("unknown builtin");
        case ExprKind::Unary:
        {
            const Value v = eval(e.args[0], frame);
            if (!v.is_bool())
                revert("type error: ! needs a boolean");
            return Value{!v.flag()};
        }
        case ExprKind::Binary:
            return eval_binary(e, frame);
        case ExprKind::Hash:
        {
            std::string data = "keccak";
            for (const auto& a : e.args)
            {
                const Value v = eval(a, frame);
                data += '|' + v.str();
            }
            return Value{sha256_word(data)};
        }
        case ExprKind::BalanceOf:
        {
            const Value a = eval(e.args[0], frame);
            if (!a.is_addr())
                revert("type error: balance needs an address");
            const auto it = world_.native.find(a.addr());
            return Value{it == world_.native.end() ? u256{0} : it->second};
        }
        case ExprKind::BlockhashOf:
        {
            const Value n = eval(e.args[0], frame);
            if (!n.is_num())
                revert("type error: blockhash needs a number");
            auto& ev = emit(TraceKind::BlockAttrRead);
            ev.attr = BlockAttr::Blockhash;
            return Value{sha256_word("blockhash|" + n.str())};
        }
        case ExprKind::Unresolved:
            break;
        }
        revert("internal: unresolved expression");
    }

    Value eval_binary(const Expr& e, Frame& frame)
    {
        // && and || short-circuit, so their storage reads mirror control flow.
        if (e.bin_op == BinOp::And || e.bin_op == BinOp::Or)
        {
            const Value lhs = eval(e.args[0], frame);
            if (!lhs.is_bool())
                revert("type error: logical operator needs booleans");
            if (e.bin_op == BinOp::And && !lhs.flag())
                return Value{false};
            if (e.bin_op == BinOp::Or && lhs.flag())
                return Value{true};
            const Value rhs = eval(e.args[1], frame);
            if (!rhs.is_bool())
                revert("type error: logical operator needs booleans");
            return rhs;
        }

        const Value lhs = eval(e.args[0], frame);
        const Value rhs = eval(e.args[1], frame);
        if (e.bin_op == BinOp::Eq || e.bin_op == BinOp::Ne)
        {
            if (lhs.type() != rhs.type())
                revert("type error: comparing different types");
            const bool eq = lhs == rhs;
            return Value{e.bin_op == BinOp::Eq ? eq : !eq};
        }
        if (!lhs.is_num() || !rhs.is_num())
            revert("type error: arithmetic needs numbers");
        const u256& a = lhs.num();
        const u256& b = rhs.num();
        const bool checked = unit_.mode == ArithmeticMode::Checked;
        switch (e.bin_op)
        {
        case BinOp::Add:
        {
            const u256 c = a + b;
            if (checked && c < a)
                revert("arithmetic overflow");
            return Value{c};
        }
        case BinOp::Sub:
            if (checked && a < b)
                revert("arithmetic underflow");
            return Value{u256{a - b}};
        case BinOp::Mul:
        {
            const u256 c = a * b;
            if (checked && b != 0 && c / b != a)
                revert("arithmetic overflow");
            return Value{c};
        }
        case BinOp::Div:
            if (b == 0)
                revert("division by zero");
            return Value{u256{a / b}};
        case BinOp::Mod:
            if (b == 0)
                revert("division by zero");
            return Value{u256{a % b}};
        case BinOp::Lt:
            return Value{a < b};
        case BinOp::Le:
            return Value{a <= b};
        case BinOp::Gt:
            return Value{a > b};
        case BinOp::Ge:
            return Value{a >= b};
        default:
            revert("internal: unhandled operator");
        }
    }

    void compute_deltas(ExecutionOutcome& out, const std::map<Address, u256>& base_native,
                        const std::map<Address, std::map<std::string, u256>>& base_assets)
    {
        std::set<Address> addrs;
        for (const auto& [a, _] : base_native)
            addrs.insert(a);
        for (const auto& [a, _] : world_.native)
            addrs.insert(a);
        for (const auto& [a, _] : cheat_native_)
            addrs.insert(a);
        for (const Address& a : addrs)
        {
            bigint delta = bigint{world_.native.count(a) ? world_.native.at(a) : u256{0}} -
                           bigint{base_native.count(a) ? base_native.at(a) : u256{0}};
            if (cheat_native_.count(a))
                delta -= cheat_native_.at(a);
            if (delta != 0)
                out.balance_deltas[a]["native"] = delta;
        }

        std::set<std::pair<Address, std::string>> asset_keys;
        const auto collect_assets = [&](const auto& table) {
            for (const auto& [addr, per_asset] : table)
                for (const auto& [asset, _] : per_asset)
                    asset_keys.insert({addr, asset});
        };
        collect_assets(base_assets);
        collect_assets(world_.assets);
        collect_assets(cheat_assets_);
        for (const auto& [addr, asset] : asset_keys)
        {
            const auto lookup = [&](const auto& table) -> bigint {
                const auto it = table.find(addr);
                if (it == table.end())
                    return 0;
                const auto jt = it->second.find(asset);
                return jt == it->second.end() ? bigint{0} : bigint{jt->second};
            };
            bigint delta = lookup(world_.assets) - lookup(base_assets);
            if (cheat_assets_.count(addr) && cheat_assets_.at(addr).count(asset))
                delta -= cheat_assets_.at(addr).at(asset);
            if (delta != 0)
                out.balance_deltas[addr][asset] = delta;
        }
    }

    std::string world_digest() const
    {
        nlohmann::ordered_json j;
        auto native = nlohmann::ordered_json::object();
        for (const auto& [a, v] : world_.native)
            if (v != 0)
                native[a] = to_dec(v);
        j["native"] = native;
        auto assets = nlohmann::ordered_json::object();
        for (const auto& [a, per_asset] : world_.assets)
        {
            auto inner = nlohmann::ordered_json::object();
            for (const auto& [asset, v] : per_asset)
                if (v != 0)
                    inner[asset] = to_dec(v);
            if (!inner.empty())
                assets[a] = inner;
        }
        j["assets"] = assets;
        j["block_number"] = to_dec(world_.block_number);
        j["block_timestamp"] = to_dec(world_.block_timestamp);
        auto contracts = nlohmann::ordered_json::object();
        for (const auto& [name, inst] : world_.contracts)
        {
            auto cj = nlohmann::ordered_json::object();
            auto scalars = nlohmann::ordered_json::object();
            for (const auto& [var, val] : inst.scalars)
                scalars[var] = val.str();
            cj["scalars"] = scalars;
            auto maps = nlohmann::ordered_json::object();
            for (const auto& [var, entries] : inst.maps)
            {
                auto ej = nlohmann::ordered_json::object();
                for (const auto& [key, val] : entries)
                    if (val != 0)
                        ej[key] = to_dec(val);
                maps[var] = ej;
            }
            cj["maps"] = maps;
            cj["destroyed"] = inst.destroyed;
            contracts[name] = cj;
        }
        j["contracts"] = contracts;
        auto accounts = nlohmann::ordered_json::array();
        for (const auto& a : world_.accounts)
            accounts.push_back(a);
        j["accounts"] = accounts;
        return sha256_hex(j.dump());
    }
};

}  // namespace

ExecutionOutcome execute_poc(const ContractUnit& unit, const PoC& poc, const ExecLimits& limits)
{
    return Executor{unit, poc, limits}.run();
}

std::vector<TraceEvent> semantic_events(const std::vector<TraceEvent>& trace, const EventFilter& filter)
{
    std::vector<TraceEvent> out;
    for (const auto& ev : trace)
    {
        if (filter.exploit_only && ev.phase != Phase::Exploit)
            continue;
        if (filter.exclude_cheatcodes && ev.from_cheatcode)
            continue;
        out.push_back(ev);
    }
    return out;
}

}  // namespace pocval
