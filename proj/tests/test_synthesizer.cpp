// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include "support/fixtures.hpp"

#include <pocval/errors.hpp>
#include <pocval/synthesizer.hpp>

#include <doctest.h>

using namespace pocval;
namespace fx = pocval::fixtures;

namespace
{
SynthesisRequest seed_request(const ContractUnit& unit, VulnClass vuln,
                              const std::string& target,
                              std::optional<std::string> entry = std::nullopt)
{
    SynthesisRequest req;
    req.mode = SynthesisMode::Seed;
    req.unit = &unit;
    req.path.vuln_class = vuln;
    req.path.target = target;
    req.path.entry = std::move(entry);
    return req;
}
}  // namespace

TEST_CASE("direct seed funds both sides and calls the reported function")
{
    const ContractUnit unit = fx::parse_fixture(fx::kWallet, "wallet");
    TemplateBackend backend;
    const auto proposals = backend.propose(seed_request(unit, VulnClass::UEW, "sweep"));
    REQUIRE(proposals.size() == 1);
    const PoC& poc = proposals[0];

    REQUIRE(poc.setup.size() == 3);
    CHECK(poc.setup[0].kind == ActionKind::Deploy);
    CHECK(poc.setup[0].contract == "Wallet");
    CHECK(poc.setup[0].args.empty());
    CHECK(poc.setup[1].kind == ActionKind::Deal);
    CHECK(poc.setup[1].addr == kAttacker);
    CHECK(poc.setup[2].kind == ActionKind::Deal);
    CHECK(poc.setup[2].addr == "Wallet");

    REQUIRE(poc.exploit.size() == 1);
    CHECK(poc.exploit[0].caller == kAttacker);
    CHECK(poc.exploit[0].function == "sweep");
    CHECK(poc.exploit[0].value == u256{0});
    CHECK(!poc.attacker_fallback.has_value());
    CHECK(validate(poc, unit).empty());
}

TEST_CASE("reentrancy seed stakes through the entry and arms the fallback")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    TemplateBackend backend;
    const auto proposals =
        backend.propose(seed_request(unit, VulnClass::RE, "withdraw", "deposit"));
    REQUIRE(proposals.size() == 1);
    const PoC& poc = proposals[0];

    REQUIRE(poc.exploit.size() == 2);
    CHECK(poc.exploit[0].function == "deposit");
    CHECK(poc.exploit[0].value == u256{1});   // payable entry gets a stake
    CHECK(poc.exploit[1].function == "withdraw");
    CHECK(poc.exploit[1].value == u256{0});
    REQUIRE(poc.exploit[1].args.size() == 1);
    CHECK(poc.exploit[1].args[0].num() == u256{1});

    REQUIRE(poc.attacker_fallback.has_value());
    REQUIRE(poc.attacker_fallback->size() == 1);
    CHECK((*poc.attacker_fallback)[0].function == "withdraw");
    CHECK((*poc.attacker_fallback)[0].caller == kAttacker);
    CHECK(validate(poc, unit).empty());
}

TEST_CASE("order dependence seed races a funded second party")
{
    const ContractUnit unit = fx::parse_fixture(fx::kPuzzle, "puzzle");
    TemplateBackend backend;
    const auto proposals = backend.propose(seed_request(unit, VulnClass::TOD, "solve"));
    REQUIRE(proposals.size() == 1);
    const PoC& poc = proposals[0];

    bool user_funded = false;
    for (const auto& a : poc.setup)
        if (a.kind == ActionKind::Deal && a.addr == "user1")
            user_funded = true;
    CHECK(user_funded);

    REQUIRE(poc.exploit.size() == 2);
    CHECK(poc.exploit[0].caller == "user1");
    CHECK(poc.exploit[0].function == "solve");
    CHECK(poc.exploit[1].caller == kAttacker);
    CHECK(poc.exploit[1].function == "solve");

    // Constructor defaults feed the deploy: one uint256 parameter.
    REQUIRE(poc.setup[0].args.size() == 1);
    CHECK(poc.setup[0].args[0].num() == u256{1});
    CHECK(validate(poc, unit).empty());
}

TEST_CASE("report hints steer arguments, value, and the chain position")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    TemplateBackend backend;
    SynthesisRequest req = seed_request(unit, VulnClass::UEW, "withdraw");
    req.extra["args"] = {42};
    req.extra["block_number"] = 123456789;
    req.extra["timestamp"] = "1700000000";

    const auto proposals = backend.propose(req);
    REQUIRE(proposals.size() == 1);
    const PoC& poc = proposals[0];

    REQUIRE(poc.exploit.size() == 1);
    REQUIRE(poc.exploit[0].args.size() == 1);
    CHECK(poc.exploit[0].args[0].num() == u256{42});

    bool rolled = false;
    bool warped = false;
    for (const auto& a : poc.setup)
    {
        if (a.kind == ActionKind::Roll && a.value == u256{123456789})
            rolled = true;
        if (a.kind == ActionKind::Warp && a.value == u256{1700000000})
            warped = true;
    }
    CHECK(rolled);
    CHECK(warped);
}

TEST_CASE("template proposals are deterministic")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    TemplateBackend backend;
    const SynthesisRequest req = seed_request(unit, VulnClass::RE, "withdraw", "deposit");

    auto a = backend.propose(req);
    auto b = backend.propose(req);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        a[i].seal();
        b[i].seal();
        CHECK(a[i].id == b[i].id);
    }
    CHECK(backend.name() == "template");
}

TEST_CASE("missing request pieces are refused")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    TemplateBackend backend;

    SynthesisRequest no_parent = seed_request(unit, VulnClass::RE, "withdraw");
    no_parent.mode = SynthesisMode::RefineFailure;
    CHECK_THROWS_AS(backend.propose(no_parent), SynthesisFailed);

    SynthesisRequest no_op = seed_request(unit, VulnClass::RE, "withdraw");
    no_op.mode = SynthesisMode::RefinePrimitive;
    no_op.parent = backend.propose(seed_request(unit, VulnClass::RE, "withdraw"))[0];
    CHECK_THROWS_AS(backend.propose(no_op), SynthesisFailed);
}

TEST_CASE("not payable failures zero the offending value")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    TemplateBackend backend;

    SynthesisRequest req = seed_request(unit, VulnClass::UEW, "withdraw");
    req.mode = SynthesisMode::RefineFailure;
    PoC parent = fx::sealed({fx::deploy("Vault"), fx::deal(kAttacker, 10)},
                            {fx::call(kAttacker, "Vault", "withdraw", {Value{u256{1}}}, 3)});
    req.parent = parent;
    FailureContext ctx;
    ctx.revert_message = "function 'withdraw' not payable";
    ctx.enclosing_function = "withdraw";
    req.failure = ctx;

    const auto out = backend.propose(req);
    REQUIRE(out.size() == 1);
    REQUIRE(out[0].exploit.size() == 1);
    CHECK(out[0].exploit[0].value == u256{0});
    CHECK(out[0].exploit[0].args == parent.exploit[0].args);
}

TEST_CASE("value guard failures raise the stake")
{
    const ContractUnit unit = fx::parse_fixture(fx::kLottery, "lottery");
    const FunctionDecl* play = unit.find_function("play");
    REQUIRE(play != nullptr);

    TemplateBackend backend;
    SynthesisRequest req = seed_request(unit, VulnClass::RCA, "play");
    req.mode = SynthesisMode::RefineFailure;
    req.parent = fx::sealed({fx::deploy("Lottery"), fx::deal(kAttacker, 10)},
                            {fx::call(kAttacker, "Lottery", "play", {}, 0)});
    FailureContext ctx;
    ctx.statement_node = play->body[0].node;
    ctx.statement_class = StmtClass::Check;
    ctx.revert_message = "stake required";
    ctx.enclosing_function = "play";
    req.failure = ctx;

    const auto once = backend.propose(req);
    REQUIRE(once.size() == 1);
    CHECK(once[0].exploit[0].value == u256{1});

    // A second round doubles instead.
    req.parent = once[0];
    const auto twice = backend.propose(req);
    CHECK(twice[0].exploit[0].value == u256{2});
}

TEST_CASE("identity guard failures hand the call to the deployer")
{
    const ContractUnit unit = fx::parse_fixture(fx::kWallet, "wallet");
    const FunctionDecl* gated = unit.find_function("sweepOwner");
    REQUIRE(gated != nullptr);

    TemplateBackend backend;
    SynthesisRequest req = seed_request(unit, VulnClass::UEW, "sweepOwner");
    req.mode = SynthesisMode::RefineFailure;
    req.parent = fx::sealed({fx::deploy("Wallet"), fx::deal(kAttacker, 10),
                             fx::deal("Wallet", 100)},
                            {fx::call(kAttacker, "Wallet", "sweepOwner", {})});
    FailureContext ctx;
    ctx.statement_node = gated->body[0].node;
    ctx.statement_class = StmtClass::Check;
    ctx.revert_message = "not owner";
    ctx.enclosing_function = "sweepOwner";
    req.failure = ctx;

    const auto out = backend.propose(req);
    REQUIRE(out.size() == 1);
    CHECK(out[0].exploit[0].caller == kDeployer);
}

TEST_CASE("balance check failures shrink the ask or grow the stake")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultChecked, "vault");
    const FunctionDecl* withdraw = unit.find_function("withdraw");
    REQUIRE(withdraw != nullptr);

    TemplateBackend backend;
    SynthesisRequest req = seed_request(unit, VulnClass::RE, "withdraw", "deposit");
    req.mode = SynthesisMode::RefineFailure;
    FailureContext ctx;
    ctx.statement_node = withdraw->body[0].node;
    ctx.statement_class = StmtClass::Check;
    ctx.revert_message = "insufficient balance";
    ctx.enclosing_function = "withdraw";
    req.failure = ctx;

    // Asking for more than the stake: the ask comes down to the stake.
    req.parent = fx::sealed({fx::deploy("Vault"), fx::deal(kAttacker, 10)},
                            {fx::call(kAttacker, "Vault", "deposit", {}, 1),
                             fx::call(kAttacker, "Vault", "withdraw", {Value{u256{4}}})});
    auto out = backend.propose(req);
    REQUIRE(out.size() == 1);
    CHECK(out[0].exploit[1].args[0].num() == u256{1});

    // Ask already at the stake: the stake doubles instead. This is what
    // walks a reentrant script past a checked balance update.
    req.parent = fx::sealed({fx::deploy("Vault"), fx::deal(kAttacker, 10)},
                            {fx::call(kAttacker, "Vault", "deposit", {}, 1),
                             fx::call(kAttacker, "Vault", "withdraw", {Value{u256{1}}})});
    out = backend.propose(req);
    REQUIRE(out.size() == 1);
    CHECK(out[0].exploit[0].value == u256{2});
    CHECK(out[0].exploit[1].args[0].num() == u256{1});
}

TEST_CASE("unlocalized failures scale the funding")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    TemplateBackend backend;
    SynthesisRequest req = seed_request(unit, VulnClass::UEW, "withdraw");
    req.mode = SynthesisMode::RefineFailure;
    req.parent = fx::sealed({fx::deploy("Vault"), fx::deal(kAttacker, 10),
                             fx::deal("Vault", 100)},
                            {fx::call(kAttacker, "Vault", "withdraw", {Value{u256{1}}})});
    req.failure.reset();

    const auto out = backend.propose(req);
    REQUIRE(out.size() == 1);
    CHECK(out[0].setup[1].value == u256{100});
    CHECK(out[0].setup[2].value == u256{1000});
}

TEST_CASE("prompts carry every section a reviewer would need")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultChecked, "vault");
    SynthesisRequest req;
    req.mode = SynthesisMode::Seed;
    req.unit = &unit;
    req.path.vuln_class = VulnClass::RE;
    req.path.target = "withdraw";
    req.path.entry = "deposit";
    req.path.shared_state.push_back(StateRef{"Vault", "balances", KeyKind::AnyKey});

    const PromptSections p = assemble_prompt(req);
    CHECK(p.system.find("JSON") != std::string::npos);
    for (const char* header :
         {"## Contract Initialization", "## Vulnerability Path", "## Vulnerability Features",
          "## PoC Requirements", "## Additional Information", "## Function Under Test",
          "## Entry Function"})
        CHECK(p.user.find(header) != std::string::npos);
    CHECK(p.user.find("Class: RE") != std::string::npos);
    CHECK(p.user.find("withdraw") != std::string::npos);
    CHECK(p.user.find("None.") != std::string::npos);
}

TEST_CASE("refinement prompts embed the failure and the bound instruction")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultChecked, "vault");
    TemplateBackend backend;
    SynthesisRequest req;
    req.mode = SynthesisMode::RefineFailure;
    req.unit = &unit;
    req.path.vuln_class = VulnClass::RE;
    req.path.target = "withdraw";
    req.parent = fx::sealed({fx::deploy("Vault"), fx::deal(kAttacker, 10)},
                            {fx::call(kAttacker, "Vault", "withdraw", {Value{u256{1}}})});
    FailureContext ctx;
    ctx.revert_message = "arithmetic underflow";
    ctx.statement_text = "balances[msg.sender] -= amount;";
    ctx.statement_class = StmtClass::StateUpdate;
    ctx.enclosing_function = "withdraw";
    req.failure = ctx;

    const PromptSections p = assemble_prompt(req);
    CHECK(p.user.find("arithmetic underflow") != std::string::npos);
    CHECK(p.user.find("balances[msg.sender] -= amount;") != std::string::npos);
    CHECK(p.user.find("Previous script:") != std::string::npos);

    SynthesisRequest prim = req;
    prim.mode = SynthesisMode::RefinePrimitive;
    prim.failure.reset();
    prim.op = PrimitiveOp{"change_invoker", "Change the invoker of {contract}."};
    const PromptSections pp = assemble_prompt(prim);
    CHECK(pp.user.find("Change the invoker of Vault.") != std::string::npos);
}

TEST_CASE("instruction templates bind their placeholders")
{
    VulnPath path;
    path.target = "withdraw";
    path.entry = "deposit";

    CHECK(bind_instruction(
              PrimitiveOp{"add_user", "Add additional users and let them invoke {function}."},
              path, "Vault") == "Add additional users and let them invoke deposit.");
    CHECK(bind_instruction(PrimitiveOp{"change_argument",
                                       "Change the argument or value of {function}."},
                           path, "Vault") == "Change the argument or value of withdraw.");
    CHECK(bind_instruction(PrimitiveOp{"modify_block", "Modify the {block_attribute}."}, path,
                           "Vault") == "Modify the block number or timestamp.");

    VulnPath direct;
    direct.target = "withdraw";
    CHECK(bind_instruction(
              PrimitiveOp{"add_user", "Add additional users and let them invoke {function}."},
              direct, "Vault") == "Add additional users and let them invoke withdraw.");
}

TEST_CASE("every class has a distinct feature paragraph")
{
    std::set<std::string> seen;
    for (const auto c : {VulnClass::UEW, VulnClass::US, VulnClass::RE, VulnClass::TOD,
                         VulnClass::RCA})
    {
        const std::string text = vulnerability_feature_text(c);
        CHECK(text.size() > 40);
        seen.insert(text);
    }
    CHECK(seen.size() == 5);
}
