// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include <pocval/analysis.hpp>
#include <pocval/errors.hpp>

#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

using namespace pocval;
namespace fx = pocval::fixtures;

namespace
{
std::set<std::string> names(const std::set<StateRef>& refs)
{
    std::set<std::string> out;
    for (const auto& r : refs)
        out.insert(r.variable);
    return out;
}
}  // namespace

TEST_CASE("read and write sets of the vault")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");

    // deposit desugars += into a self-read, so balances shows up both ways.
    CHECK(names(read_set(unit, "deposit")) == std::set<std::string>{"balances"});
    CHECK(names(write_set(unit, "deposit")) == std::set<std::string>{"balances"});
    CHECK(names(read_set(unit, "withdraw")) == std::set<std::string>{"balances"});
    CHECK(names(write_set(unit, "withdraw")) == std::set<std::string>{"balances"});

    for (const auto& r : read_set(unit, "withdraw"))
    {
        CHECK(r.contract == "Vault");
        CHECK(r.key_kind == KeyKind::AnyKey);
    }
}

TEST_CASE("modifier bodies contribute to the applying function's sets")
{
    const ContractUnit unit = fx::parse_fixture(fx::kLedger, "ledger");

    CHECK(names(read_set(unit, "debit")) ==
          std::set<std::string>{"owner", "balances", "total"});
    CHECK(names(write_set(unit, "debit")) == std::set<std::string>{"balances", "total"});
    // credit never reads total outside the plain assignment RHS.
    CHECK(names(read_set(unit, "credit")) ==
          std::set<std::string>{"owner", "balances", "total"});
    CHECK(names(read_set(unit, "donate")) == std::set<std::string>{"balances", "total"});
}

TEST_CASE("token ops write a ledger location that nothing reads")
{
    const ContractUnit unit = fx::parse_fixture(fx::kToken, "token");
    const auto writes = write_set(unit, "grab");
    REQUIRE(writes.size() == 1);
    CHECK(writes.begin()->variable == "asset:TOK");
    CHECK(writes.begin()->contract == "Token");
    CHECK(read_set(unit, "grab").empty());
}

TEST_CASE("entry functions require shared state and an unguarded door")
{
    const ContractUnit vault = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    CHECK(entry_functions(vault, "withdraw") == std::vector<std::string>{"deposit"});
    CHECK(entry_functions(vault, "deposit") == std::vector<std::string>{"withdraw"});

    // Every ledger mutator except donate is modifier-guarded.
    const ContractUnit ledger = fx::parse_fixture(fx::kLedger, "ledger");
    CHECK(entry_functions(ledger, "debit") == std::vector<std::string>{"donate"});
    CHECK(entry_functions(ledger, "donate") == std::vector<std::string>{});

    const ContractUnit wallet = fx::parse_fixture(fx::kWallet, "wallet");
    CHECK(entry_functions(wallet, "sweep") == std::vector<std::string>{});
    CHECK(entry_functions(wallet, "sweepOwner") == std::vector<std::string>{});
}

TEST_CASE("unknown function names are rejected")
{
    const ContractUnit unit = fx::parse_fixture(fx::kVaultUnchecked, "vault");
    CHECK_THROWS_AS(static_cast<void>(read_set(unit, "nope")), UnknownFunctionError);
    CHECK_THROWS_AS(static_cast<void>(entry_functions(unit, "nope")), UnknownFunctionError);
}

TEST_CASE("entry functions match generation-time bookkeeping")
{
    std::mt19937 rng{20260821};
    for (int trial = 0; trial < 200; ++trial)
    {
        const gen::GenContract gc = gen::random_contract(rng);
        const ContractUnit unit = parse(gc.source, "gen.msol");

        const gen::GenFunction* tested = nullptr;
        for (const auto& fn : gc.functions)
            if (fn.name == gc.f_test)
                tested = &fn;
        REQUIRE(tested != nullptr);

        std::vector<std::string> expected;
        for (const auto& fn : gc.functions)
        {
            if (fn.name == gc.f_test || fn.guarded)
                continue;
            bool shares = false;
            for (const auto& w : fn.writes)
                if (tested->reads.count(w))
                    shares = true;
            if (shares)
                expected.push_back(fn.name);
        }

        const auto got = entry_functions(unit, gc.f_test);
        INFO("seed trial ", trial, " source:\n", gc.source);
        CHECK(got == expected);
    }
}

TEST_CASE("path ordering favors more shared state, direct path last")
{
    const std::string src = R"(mode checked;

contract Paths {
    uint256 a;
    uint256 b;
    uint256 c;

    function prep1() {
        a = 1;
    }

    function prep2() {
        a = 2;
        b = 2;
    }

    function prep1b() {
        a = 5;
    }

    function noise() {
        c = 3;
    }

    function target() {
        require(a >= 1, "a");
        require(b >= 1, "b");
        transfer(msg.sender, a);
    }
}
)";
    const ContractUnit unit = parse(src, "paths.msol");
    VulnReport report;
    report.contract = "Paths";
    report.function = "target";
    report.vuln_class = VulnClass::UEW;

    const auto paths = build_paths(unit, report);
    REQUIRE(paths.size() == 4);
    CHECK(paths[0].entry == std::optional<std::string>{"prep2"});
    CHECK(paths[0].shared_state.size() == 2);
    CHECK(paths[1].entry == std::optional<std::string>{"prep1"});
    CHECK(paths[1].shared_state.size() == 1);
    CHECK(paths[2].entry == std::optional<std::string>{"prep1b"});
    CHECK(paths[2].shared_state.size() == 1);
    CHECK(!paths[3].entry.has_value());
    CHECK(paths[3].shared_state.empty());
    for (const auto& p : paths)
    {
        CHECK(p.target == "target");
        CHECK(p.vuln_class == VulnClass::UEW);
    }
}

TEST_CASE("vulnerability report json round trip")
{
    VulnReport report;
    report.contract = "vault.msol";
    report.function = "withdraw";
    report.vuln_class = VulnClass::RE;
    report.extra = {{"args", {1}}, {"note", "from scanner"}};

    const auto j = report.to_json();
    const VulnReport back = VulnReport::from_json(j);
    CHECK(back.contract == report.contract);
    CHECK(back.function == report.function);
    CHECK(back.vuln_class == report.vuln_class);
    CHECK(back.extra == report.extra);

    CHECK_THROWS_AS(VulnReport::from_json(nlohmann::json{{"contract", "x"}}), SchemaError);
    CHECK_THROWS_AS(VulnReport::from_json(nlohmann::json{
                        {"contract", "x"}, {"function", "f"}, {"vuln_class", "bogus"}}),
                    SchemaError);
}

TEST_CASE("vulnerability path json round trip")
{
    VulnPath path;
    path.entry = "deposit";
    path.target = "withdraw";
    path.vuln_class = VulnClass::RE;
    path.shared_state.push_back(StateRef{"Vault", "balances", KeyKind::AnyKey});

    const VulnPath back = VulnPath::from_json(path.to_json());
    CHECK(back.entry == path.entry);
    CHECK(back.target == path.target);
    CHECK(back.vuln_class == path.vuln_class);
    CHECK(back.shared_state == path.shared_state);

    VulnPath direct;
    direct.target = "withdraw";
    direct.vuln_class = VulnClass::TOD;
    const VulnPath dback = VulnPath::from_json(direct.to_json());
    CHECK(!dback.entry.has_value());
}

TEST_CASE("vulnerability class names round trip")
{
    for (const auto c : {VulnClass::UEW, VulnClass::US, VulnClass::RE, VulnClass::TOD,
                         VulnClass::RCA})
        CHECK(vuln_class_from_name(vuln_class_name(c)) == c);
    CHECK_THROWS_AS(vuln_class_from_name("XYZ"), SchemaError);
}
