// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include "support/fixtures.hpp"

#include <pocval/ast.hpp>
#include <pocval/vm.hpp>

#include <doctest.h>

#include <algorithm>

using namespace pocval;
namespace fx = pocval::fixtures;

namespace
{
PoC reentry_poc()
{
    PoC poc = fx::sealed({fx::deploy("Vault"), fx::deal(kAttacker, 10), fx::deal("Vault", 100)},
                         {fx::call(kAttacker, "Vault", "deposit", {}, 1),
                          fx::call(kAttacker, "Vault", "withdraw", {Value{u256{1}}})});
    poc.attacker_fallback =
        std::vector<Action>{fx::call(kAttacker, "Vault", "withdraw", {Value{u256{1}}})};
    poc.seal();
    return poc;
}

long count_kind(const std::vector<TraceEvent>& trace, TraceKind kind)
{
    return std::count_if(trace.begin(), trace.end(),
                         [&](const TraceEvent& e) { return e.kind == kind; });
}
}  // namespace

TEST_CASE("unchecked vault drains through the reentrant fallback")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    const ExecutionOutcome out = execute_poc(unit, reentry_poc());

    REQUIRE(out.executed_ok);
    CHECK(!out.revert_info.has_value());

    // Four nested withdrawals each push 1 wei at the attacker; the deposit
    // moved 1 the other way, so the attacker nets +3.
    REQUIRE(out.balance_deltas.count(kAttacker));
    CHECK(out.balance_deltas.at(kAttacker).at("native") == bigint{3});
    CHECK(out.balance_deltas.at(unit.name).at("native") == bigint{-3});

    // Call depths actually nest: the reentrant frames sit above the entry.
    int max_depth = 0;
    int withdraw_enters = 0;
    for (const auto& e : out.trace)
        if (e.kind == TraceKind::CallEnter && e.function == "withdraw")
        {
            ++withdraw_enters;
            max_depth = std::max(max_depth, e.depth);
        }
    CHECK(withdraw_enters == 4);
    CHECK(max_depth == 4);

    // The balance bookkeeping wrapped under unchecked math instead of
    // reverting.
    CHECK(count_kind(out.trace, TraceKind::Revert) == 0);
    bool wrapped = false;
    for (const auto& e : out.trace)
        if (e.kind == TraceKind::StorageWrite && e.new_value.size() > 60)
            wrapped = true;
    CHECK(wrapped);
}

TEST_CASE("checked vault reverts in the balance update instead")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultChecked, "vault");
    const ExecutionOutcome out = execute_poc(unit, reentry_poc());

    CHECK(!out.executed_ok);
    REQUIRE(out.revert_info.has_value());
    CHECK(out.revert_info->message == "arithmetic underflow");
    CHECK(out.revert_info->phase == Phase::Exploit);
    CHECK(unit.stmt_class_of(out.revert_info->node) == StmtClass::StateUpdate);
    const NodeId stmt = unit.enclosing_statement(out.revert_info->node);
    CHECK(unit.text_of(stmt) == "balances[msg.sender] -= amount;");
}

TEST_CASE("reentry depth limits the fallback, not the caller")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    ExecLimits limits;
    limits.reentry_depth = 2;
    const ExecutionOutcome out = execute_poc(unit, reentry_poc(), limits);
    REQUIRE(out.executed_ok);
    CHECK(out.balance_deltas.at(kAttacker).at("native") == bigint{1});
}

TEST_CASE("prank rewrites the next call's sender and origin")
{
    const ContractUnit unit = fx::parse_fixture(fx::kWallet, "wallet");
    const PoC poc = fx::sealed(
        {fx::deploy("Wallet"), fx::deal("user1", 5), fx::deal("Wallet", 50)},
        {fx::prank("user1"), fx::call(kAttacker, "Wallet", "sweep", {})});
    const ExecutionOutcome out = execute_poc(unit, poc);
    REQUIRE(out.executed_ok);

    const TraceEvent* enter = nullptr;
    for (const auto& e : out.trace)
        if (e.phase == Phase::Exploit && e.kind == TraceKind::CallEnter)
            enter = &e;
    REQUIRE(enter != nullptr);
    CHECK(enter->caller == "user1");
    CHECK(enter->tx_origin == "user1");

    // sweep pays tx.origin, which the prank redirected.
    CHECK(out.balance_deltas.at("user1").at("native") == bigint{5});
    CHECK(out.balance_deltas.count(kAttacker) == 0);
}

TEST_CASE("selfdestruct sweeps the balance and deletes the code")
{
    const ContractUnit unit = fx::parse_fixture(fx::kKillable, "killable");
    const PoC poc = fx::sealed(
        {fx::deploy("Killable"), fx::deal(kAttacker, 1), fx::deal("Killable", 40)},
        {fx::call(kAttacker, "Killable", "kill", {}),
         fx::call(kAttacker, "Killable", "kill", {})});
    const ExecutionOutcome out = execute_poc(unit, poc);

    // The second call lands on an address with no code anymore.
    CHECK(!out.executed_ok);
    REQUIRE(out.revert_info.has_value());
    CHECK(out.revert_info->message == "no code at target 'Killable'");

    // The first kill still counts: the sweep survives because reverts only
    // unwind their own transaction.
    CHECK(out.balance_deltas.at(kAttacker).at("native") == bigint{40});
    CHECK(count_kind(out.trace, TraceKind::Selfdestruct) == 1);
}

TEST_CASE("selfdestruct to the contract itself burns the balance")
{
    const std::string src = R"(mode checked;

contract Doom {
    function die(address who) {
        selfdestruct(who);
    }
}
)";
    const ContractUnit unit = parse(src, "doom.msol");
    const PoC poc = fx::sealed({fx::deploy("Doom"), fx::deal("Doom", 25)},
                               {fx::call(kAttacker, "Doom", "die", {Value{Address{"Doom"}}})});
    const ExecutionOutcome out = execute_poc(unit, poc);
    REQUIRE(out.executed_ok);

    bool burned = false;
    for (const auto& e : out.trace)
        if (e.kind == TraceKind::ValueTransfer && e.to.empty() && e.amount == u256{25})
            burned = true;
    CHECK(burned);
    CHECK(out.balance_deltas.at("Doom").at("native") == bigint{-25});
    CHECK(out.balance_deltas.count(kAttacker) == 0);
}

TEST_CASE("exploit phase cheat funding never shows up as profit")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    const PoC poc = fx::sealed({fx::deploy("Vault")},
                               {fx::deal(kAttacker, 10),
                                fx::call(kAttacker, "Vault", "deposit", {}, 1)});
    const ExecutionOutcome out = execute_poc(unit, poc);
    REQUIRE(out.executed_ok);
    CHECK(out.balance_deltas.at(kAttacker).at("native") == bigint{-1});
    CHECK(out.balance_deltas.at("Vault").at("native") == bigint{1});
}

TEST_CASE("token mints and asset deals feed separate ledgers")
{
    const ContractUnit unit = fx::parse_fixture(fx::kToken, "token");
    const PoC poc = fx::sealed({fx::deploy("Token")},
                               {fx::deal_asset(kAttacker, "TOK", 7),
                                fx::call(kAttacker, "Token", "grab", {Value{u256{5}}})});
    const ExecutionOutcome out = execute_poc(unit, poc);
    REQUIRE(out.executed_ok);
    // The cheat injection of 7 is subtracted; the contract mint of 5 stays.
    CHECK(out.balance_deltas.at(kAttacker).at("TOK") == bigint{5});
}

TEST_CASE("requires revert with their message and roll back storage")
{
    const ContractUnit unit = fx::parse_fixture(fx::kLottery, "lottery");
    const PoC stakeless = fx::sealed({fx::deploy("Lottery"), fx::deal(kAttacker, 10)},
                                     {fx::call(kAttacker, "Lottery", "play", {}, 0)});
    const ExecutionOutcome out = execute_poc(unit, stakeless);
    CHECK(!out.executed_ok);
    REQUIRE(out.revert_info.has_value());
    CHECK(out.revert_info->message == "stake required");
    CHECK(unit.stmt_class_of(out.revert_info->node) == StmtClass::Check);
    CHECK(out.balance_deltas.empty());
}

TEST_CASE("roll moves the block number the contract reads")
{
    const ContractUnit unit = fx::parse_fixture(fx::kLottery, "lottery");
    const PoC poc = fx::sealed(
        {fx::deploy("Lottery"), fx::deal(kAttacker, 10), fx::deal("Lottery", 100),
         fx::roll(123456789)},
        {fx::call(kAttacker, "Lottery", "play", {}, 1)});
    const ExecutionOutcome out = execute_poc(unit, poc);
    REQUIRE(out.executed_ok);
    CHECK(out.balance_deltas.at(kAttacker).at("native") == bigint{49});

    bool saw_block_read = false;
    for (const auto& e : out.trace)
        if (e.kind == TraceKind::BlockAttrRead && e.attr == BlockAttr::Number)
            saw_block_read = true;
    CHECK(saw_block_read);
}

TEST_CASE("value on a non payable function reverts")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    const PoC poc = fx::sealed({fx::deploy("Vault"), fx::deal(kAttacker, 10)},
                               {fx::call(kAttacker, "Vault", "withdraw", {Value{u256{1}}}, 1)});
    const ExecutionOutcome out = execute_poc(unit, poc);
    CHECK(!out.executed_ok);
    REQUIRE(out.revert_info.has_value());
    CHECK(out.revert_info->message == "function 'withdraw' not payable");
}

TEST_CASE("call value above the sender balance reverts")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    const PoC poc = fx::sealed({fx::deploy("Vault"), fx::deal(kAttacker, 2)},
                               {fx::call(kAttacker, "Vault", "deposit", {}, 5)});
    const ExecutionOutcome out = execute_poc(unit, poc);
    CHECK(!out.executed_ok);
    REQUIRE(out.revert_info.has_value());
    CHECK(out.revert_info->message == "insufficient balance for call value");
}

TEST_CASE("step limit cuts off runaway execution")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    ExecLimits limits;
    limits.max_steps = 3;
    const ExecutionOutcome out = execute_poc(unit, reentry_poc(), limits);
    CHECK(!out.executed_ok);
    REQUIRE(out.revert_info.has_value());
    CHECK(out.revert_info->message == "step limit exceeded");
}

TEST_CASE("call depth limit stops unbounded nesting")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    ExecLimits limits;
    limits.max_call_depth = 3;
    limits.reentry_depth = 100;
    const ExecutionOutcome out = execute_poc(unit, reentry_poc(), limits);
    CHECK(!out.executed_ok);
    REQUIRE(out.revert_info.has_value());
    CHECK(out.revert_info->message == "call depth exceeded");
}

TEST_CASE("injected reverts fire at the chosen statement")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    const FunctionDecl* withdraw = unit.find_function("withdraw");
    REQUIRE(withdraw != nullptr);
    const NodeId target = withdraw->body[1].node;   // the external call

    ExecLimits limits;
    limits.inject_revert_at = target;
    const PoC poc = fx::sealed({fx::deploy("Vault"), fx::deal(kAttacker, 10),
                                fx::deal("Vault", 100)},
                               {fx::call(kAttacker, "Vault", "deposit", {}, 1),
                                fx::call(kAttacker, "Vault", "withdraw", {Value{u256{1}}})});
    const ExecutionOutcome out = execute_poc(unit, poc, limits);
    CHECK(!out.executed_ok);
    REQUIRE(out.revert_info.has_value());
    CHECK(out.revert_info->message == "injected revert");
    CHECK(out.revert_info->node == target);
}

TEST_CASE("a reverted transaction leaves the world exactly as before")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultChecked, "vault");

    // Withdrawing more than deposited trips the checked subtraction after
    // the nested call already moved native value around.
    PoC failing = fx::sealed({fx::deploy("Vault"), fx::deal(kAttacker, 10),
                              fx::deal("Vault", 100)},
                             {fx::call(kAttacker, "Vault", "deposit", {}, 1),
                              fx::call(kAttacker, "Vault", "withdraw", {Value{u256{1}}})});
    failing.attacker_fallback =
        std::vector<Action>{fx::call(kAttacker, "Vault", "withdraw", {Value{u256{1}}})};
    failing.seal();

    PoC truncated = failing;
    truncated.exploit.pop_back();
    truncated.attacker_fallback.reset();
    truncated.seal();

    const ExecutionOutcome a = execute_poc(unit, failing);
    const ExecutionOutcome b = execute_poc(unit, truncated);
    CHECK(!a.executed_ok);
    CHECK(b.executed_ok);
    CHECK(a.world_digest == b.world_digest);
}

TEST_CASE("execution is deterministic event for event")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    const ExecutionOutcome a = execute_poc(unit, reentry_poc());
    const ExecutionOutcome b = execute_poc(unit, reentry_poc());
    CHECK(a.world_digest == b.world_digest);
    CHECK(a.balance_deltas == b.balance_deltas);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i)
    {
        CHECK(a.trace[i].kind == b.trace[i].kind);
        CHECK(a.trace[i].seq == b.trace[i].seq);
        CHECK(a.trace[i].slot == b.trace[i].slot);
    }
}

TEST_CASE("semantic events hide setup noise and cheatcodes")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    const ExecutionOutcome out = execute_poc(unit, reentry_poc());
    const auto sem = semantic_events(out.trace);
    CHECK(!sem.empty());
    for (const auto& e : sem)
    {
        CHECK(e.phase == Phase::Exploit);
        CHECK(!e.from_cheatcode);
        CHECK(e.kind != TraceKind::CheatcodeApplied);
    }
    // Seq order is preserved.
    for (std::size_t i = 1; i < sem.size(); ++i)
        CHECK(sem[i - 1].seq < sem[i].seq);
}

TEST_CASE("transfers inside setup count for no deltas")
{
    const ContractUnit unit = fx::parse_fixture(fx::kWallet, "wallet");
    // sweep in setup pays the deployer; the exploit phase does nothing that
    // moves value.
    const PoC poc = fx::sealed({fx::deploy("Wallet"), fx::deal("Wallet", 50),
                                fx::deal(kAttacker, 1),
                                fx::call(kDeployer, "Wallet", "sweep", {})},
                               {fx::call(kAttacker, "Wallet", "sweepOwner", {})});
    const ExecutionOutcome out = execute_poc(unit, poc);
    // sweepOwner requires the deployer identity, so the exploit reverts.
    CHECK(!out.executed_ok);
    CHECK(out.balance_deltas.empty());
}
