// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/parser.hpp>
#include <pocval/poc.hpp>

#include <string>

namespace pocval::fixtures
{
// Vault with the classic withdraw-then-update ordering. In unchecked mode
// the reentrant balance underflow wraps and the drain succeeds; in checked
// mode the same script dies on the underflow.
inline const std::string kVaultUnchecked = R"(mode unchecked;

contract Vault {
    mapping(address => uint256) balances;

    function deposit() payable {
        balances[msg.sender] += msg.value;
    }

    function withdraw(uint256 amount) {
        require(balances[msg.sender] >= amount, "insufficient balance");
        call(msg.sender, amount);
        balances[msg.sender] -= amount;
    }
}
)";

inline const std::string kVaultChecked = R"(mode checked;

contract Vault {
    mapping(address => uint256) balances;

    function deposit() payable {
        balances[msg.sender] += msg.value;
    }

    function withdraw(uint256 amount) {
        require(balances[msg.sender] >= amount, "insufficient balance");
        call(msg.sender, amount);
        balances[msg.sender] -= amount;
    }
}
)";

// First correct answer wins the reward; a second solve is a silent no-op.
// Whoever's transaction lands first collects, which is the order dependence.
inline const std::string kPuzzle = R"(mode checked;

contract Puzzle {
    uint256 secret;
    uint256 reward;
    bool solved;

    constructor(uint256 s) {
        secret = s;
        reward = 10;
    }

    function solve(uint256 answer) {
        if (answer == secret) {
            if (!solved) {
                solved = true;
                transfer(msg.sender, reward);
            }
        }
    }
}
)";

// Pays out on a block-number coincidence nobody can reach by nudging the
// chain forward; the block read itself is the vulnerability signal.
inline const std::string kLottery = R"(mode checked;

contract Lottery {
    function play() payable {
        require(msg.value >= 1, "stake required");
        if (block.number == 123456789) {
            transfer(msg.sender, 50);
        }
    }
}
)";

inline const std::string kKillable = R"(mode checked;

contract Killable {
    function kill() {
        selfdestruct(msg.sender);
    }
}
)";

// sweep pays the transaction origin with no guard at all; sweepOwner gates
// the same transfer behind the deployer identity.
inline const std::string kWallet = R"(mode checked;

contract Wallet {
    address owner;

    constructor() {
        owner = msg.sender;
    }

    function sweep() {
        transfer(tx.origin, 5);
    }

    function sweepOwner() {
        require(msg.sender == owner, "not owner");
        transfer(tx.origin, 5);
    }
}
)";

// Modifier-guarded bookkeeping; exercises localization of statements that
// live in a modifier body rather than the called function.
inline const std::string kLedger = R"(mode checked;

contract Ledger {
    address owner;
    mapping(address => uint256) balances;
    uint256 total;

    modifier onlyOwner {
        require(msg.sender == owner, "not owner");
    }

    constructor() {
        owner = msg.sender;
    }

    function donate() payable {
        balances[msg.sender] += msg.value;
        total += msg.value;
    }

    function credit(address who, uint256 amount) onlyOwner {
        balances[who] = balances[who] + amount;
        total = total + amount;
    }

    function debit(address who, uint256 amount) onlyOwner {
        require(balances[who] >= amount, "insufficient");
        balances[who] = balances[who] - amount;
        total = total - amount;
        send(who, amount);
    }
}
)";

// Mints a token nobody prices; profitable under the flat valuation,
// worthless to any judge that knows better.
inline const std::string kToken = R"(mode checked;

contract Token {
    function grab(uint256 amount) {
        mint("TOK", msg.sender, amount);
    }
}
)";

inline ContractUnit parse_fixture(const std::string& source, const std::string& name)
{
    return parse(source, name + ".msol");
}

inline Action deploy(const std::string& contract, std::vector<Value> args = {},
                     const u256& value = 0)
{
    Action a;
    a.kind = ActionKind::Deploy;
    a.contract = contract;
    a.args = std::move(args);
    a.value = value;
    return a;
}

inline Action call(const Address& caller, const std::string& target, const std::string& fn,
                   std::vector<Value> args = {}, const u256& value = 0)
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

inline Action deal(const Address& who, const u256& amount)
{
    Action a;
    a.kind = ActionKind::Deal;
    a.addr = who;
    a.value = amount;
    return a;
}

inline Action deal_asset(const Address& who, const std::string& asset, const u256& amount)
{
    Action a;
    a.kind = ActionKind::DealAsset;
    a.addr = who;
    a.asset = asset;
    a.value = amount;
    return a;
}

inline Action prank(const Address& who)
{
    Action a;
    a.kind = ActionKind::Prank;
    a.addr = who;
    return a;
}

inline Action warp(const u256& ts)
{
    Action a;
    a.kind = ActionKind::Warp;
    a.value = ts;
    return a;
}

inline Action roll(const u256& bn)
{
    Action a;
    a.kind = ActionKind::Roll;
    a.value = bn;
    return a;
}

inline PoC sealed(std::vector<Action> setup, std::vector<Action> exploit,
                  std::optional<std::vector<Action>> fallback = std::nullopt)
{
    PoC p;
    p.setup = std::move(setup);
    p.exploit = std::move(exploit);
    p.attacker_fallback = std::move(fallback);
    p.seal();
    return p;
}

}  // namespace pocval::fixtures
