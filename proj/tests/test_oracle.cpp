// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include <pocval/errors.hpp>
#include <pocval/oracle.hpp>

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace pocval;

namespace
{
// Tiny trace builder: seq numbers are handed out in call order, phase and
// cheatcode flags default to what the verdict rules expect to see.
struct TraceBuilder
{
    std::vector<TraceEvent> events;
    long seq = 0;

    TraceEvent& push(TraceKind kind)
    {
        TraceEvent e;
        e.seq = seq++;
        e.phase = Phase::Exploit;
        e.kind = kind;
        events.push_back(e);
        return events.back();
    }

    TraceEvent& enter(int tx, int depth, const Address& origin, const std::string& target,
                      const std::string& fn)
    {
        TraceEvent& e = push(TraceKind::CallEnter);
        e.tx_index = tx;
        e.depth = depth;
        e.caller = origin;
        e.tx_origin = origin;
        e.target = target;
        e.function = fn;
        return e;
    }

    TraceEvent& exit()
    {
        return push(TraceKind::CallExit);
    }

    TraceEvent& transfer(const Address& from, const Address& to, unsigned amount)
    {
        TraceEvent& e = push(TraceKind::ValueTransfer);
        e.from = from;
        e.to = to;
        e.amount = amount;
        e.asset = "native";
        return e;
    }

    TraceEvent& write(const std::string& slot)
    {
        TraceEvent& e = push(TraceKind::StorageWrite);
        e.slot = slot;
        return e;
    }

    TraceEvent& read(const std::string& slot)
    {
        TraceEvent& e = push(TraceKind::StorageRead);
        e.slot = slot;
        return e;
    }
};

PoCResult atom(bool executed, bool triggered, bool profited, const std::string& id)
{
    PoCResult r;
    r.poc_id = id;
    r.executed_ok = executed;
    r.triggered = triggered;
    r.profited = profited;
    if (triggered)
        r.trigger_evidence = {1, 2};
    return r;
}
}  // namespace

TEST_CASE("verdict precedence over every combination of result atoms")
{
    // Atom i encodes (executed, triggered, profited) in its bits; a result
    // set is any subset of the eight atom shapes. The expectation below is
    // computed straight from the stated precedence, independent of the
    // implementation.
    for (unsigned mask = 0; mask < 256; ++mask)
    {
        std::vector<PoCResult> results;
        for (unsigned bit = 0; bit < 8; ++bit)
            if (mask & (1u << bit))
                results.push_back(atom(bit & 4, bit & 2, bit & 1,
                                       "atom" + std::to_string(bit)));

        bool any_full = false;
        bool any_half = false;
        for (const auto& r : results)
        {
            if (r.executed_ok && r.triggered && r.profited)
                any_full = true;
            if (r.executed_ok && (r.triggered != r.profited))
                any_half = true;
        }
        const VerdictClass expected = any_full    ? VerdictClass::Exploitable
                                      : any_half ? VerdictClass::NonExploitable
                                                 : VerdictClass::ManuallyCheck;

        const Verdict got = classify(results);
        INFO("mask ", mask);
        CHECK(got.cls == expected);

        // The witness must actually satisfy the clause that fired.
        if (expected == VerdictClass::Exploitable)
        {
            REQUIRE(got.witness_poc.has_value());
            CHECK(*got.witness_poc == "atom7");
        }
        if (expected == VerdictClass::NonExploitable)
        {
            REQUIRE(got.witness_poc.has_value());
            const std::string& w = *got.witness_poc;
            CHECK((w == "atom5" || w == "atom6"));
        }
        if (expected == VerdictClass::ManuallyCheck)
            CHECK(!got.witness_poc.has_value());
    }
}

TEST_CASE("profit without trigger lands in the rationale for review")
{
    const Verdict v = classify({atom(true, false, true, "odd")});
    CHECK(v.cls == VerdictClass::NonExploitable);
    CHECK(v.rationale.find("review") != std::string::npos);

    const Verdict empty = classify({});
    CHECK(empty.cls == VerdictClass::ManuallyCheck);
    CHECK(!empty.rationale.empty());
}

TEST_CASE("withdrawal trigger fires only for transfers to the origin")
{
    TraceBuilder pos;
    pos.enter(0, 1, kAttacker, "Wallet", "sweep");
    pos.transfer("Wallet", kAttacker, 5);
    const auto hit = check_trigger(pos.events, VulnClass::UEW);
    CHECK(hit.triggered);
    CHECK(hit.evidence == std::vector<long>{1});

    TraceBuilder neg;
    neg.enter(0, 1, kAttacker, "Wallet", "pay");
    neg.transfer("Wallet", "user1", 5);
    CHECK(!check_trigger(neg.events, VulnClass::UEW).triggered);

    // A transfer to some past transaction's origin does not count either.
    TraceBuilder cross;
    cross.enter(0, 1, "user1", "Wallet", "pay");
    cross.exit();
    cross.enter(1, 1, kAttacker, "Wallet", "pay");
    cross.transfer("Wallet", "user1", 5);
    CHECK(!check_trigger(cross.events, VulnClass::UEW).triggered);
}

TEST_CASE("selfdestruct trigger needs the event itself")
{
    TraceBuilder pos;
    pos.enter(0, 1, kAttacker, "Killable", "kill");
    TraceEvent& sd = pos.push(TraceKind::Selfdestruct);
    sd.beneficiary = kAttacker;
    const auto hit = check_trigger(pos.events, VulnClass::US);
    CHECK(hit.triggered);
    CHECK(hit.evidence == std::vector<long>{sd.seq});

    TraceBuilder neg;
    neg.enter(0, 1, kAttacker, "Killable", "kill");
    neg.transfer("Killable", kAttacker, 40);
    CHECK(!check_trigger(neg.events, VulnClass::US).triggered);
}

TEST_CASE("reentrancy trigger wants a live nested frame of the same function")
{
    TraceBuilder pos;
    pos.enter(0, 1, kAttacker, "Vault", "withdraw");
    pos.enter(0, 2, kAttacker, "Vault", "withdraw");
    const auto hit = check_trigger(pos.events, VulnClass::RE);
    CHECK(hit.triggered);
    CHECK(hit.evidence == std::vector<long>{0, 1});

    // Two sequential top-level calls of the same function are not nesting.
    TraceBuilder neg;
    neg.enter(0, 1, kAttacker, "Vault", "withdraw");
    neg.exit();
    neg.enter(1, 1, kAttacker, "Vault", "withdraw");
    neg.exit();
    CHECK(!check_trigger(neg.events, VulnClass::RE).triggered);

    // A nested call into a different function is not reentrancy.
    TraceBuilder other;
    other.enter(0, 1, kAttacker, "Vault", "withdraw");
    other.enter(0, 2, kAttacker, "Vault", "deposit");
    CHECK(!check_trigger(other.events, VulnClass::RE).triggered);

    // Once the outer frame exits, returning to the same function in the
    // same transaction is not nesting either.
    TraceBuilder closed;
    closed.enter(0, 1, kAttacker, "Helper", "go");
    closed.enter(0, 2, kAttacker, "Vault", "withdraw");
    closed.exit();
    closed.enter(0, 2, kAttacker, "Vault", "withdraw");
    CHECK(!check_trigger(closed.events, VulnClass::RE).triggered);

    // A revert pops the frame the same way an exit does.
    TraceBuilder reverted;
    reverted.enter(0, 1, kAttacker, "Helper", "go");
    reverted.enter(0, 2, kAttacker, "Vault", "withdraw");
    reverted.push(TraceKind::Revert);
    reverted.enter(0, 2, kAttacker, "Vault", "withdraw");
    CHECK(!check_trigger(reverted.events, VulnClass::RE).triggered);
}

TEST_CASE("ordering trigger needs a write in an earlier transaction")
{
    TraceBuilder pos;
    pos.enter(0, 1, "user1", "Puzzle", "solve");
    pos.write("Puzzle.solved");
    pos.exit();
    pos.enter(1, 1, kAttacker, "Puzzle", "solve");
    pos.read("Puzzle.solved");
    const auto hit = check_trigger(pos.events, VulnClass::TOD);
    CHECK(hit.triggered);
    CHECK(hit.evidence == std::vector<long>{1, 4});

    // Same transaction: no ordering dependence.
    TraceBuilder same;
    same.enter(0, 1, kAttacker, "Puzzle", "solve");
    same.write("Puzzle.solved");
    same.read("Puzzle.solved");
    CHECK(!check_trigger(same.events, VulnClass::TOD).triggered);

    // Read before any write, or of an unrelated slot, does not count.
    TraceBuilder before;
    before.enter(0, 1, kAttacker, "Puzzle", "solve");
    before.read("Puzzle.solved");
    before.exit();
    before.enter(1, 1, "user1", "Puzzle", "solve");
    before.write("Puzzle.solved");
    CHECK(!check_trigger(before.events, VulnClass::TOD).triggered);

    TraceBuilder unrelated;
    unrelated.enter(0, 1, "user1", "Puzzle", "solve");
    unrelated.write("Puzzle.secret");
    unrelated.exit();
    unrelated.enter(1, 1, kAttacker, "Puzzle", "solve");
    unrelated.read("Puzzle.solved");
    CHECK(!check_trigger(unrelated.events, VulnClass::TOD).triggered);
}

TEST_CASE("chain attribute trigger fires on any block read")
{
    TraceBuilder pos;
    pos.enter(0, 1, kAttacker, "Lottery", "play");
    TraceEvent& br = pos.push(TraceKind::BlockAttrRead);
    br.attr = BlockAttr::Timestamp;
    const auto hit = check_trigger(pos.events, VulnClass::RCA);
    CHECK(hit.triggered);
    CHECK(hit.evidence == std::vector<long>{br.seq});

    TraceBuilder neg;
    neg.enter(0, 1, kAttacker, "Lottery", "play");
    neg.write("Lottery.pot");
    CHECK(!check_trigger(neg.events, VulnClass::RCA).triggered);
}

TEST_CASE("setup and cheatcode noise never flips a trigger rule")
{
    std::mt19937 rng{420001};
    const std::vector<VulnClass> classes{VulnClass::UEW, VulnClass::US, VulnClass::RE,
                                         VulnClass::TOD, VulnClass::RCA};

    for (int trial = 0; trial < 1000; ++trial)
    {
        // A small random semantic trace, occasionally exhibiting each class.
        TraceBuilder base;
        const int txs = gen::rand_int(rng, 1, 3);
        for (int tx = 0; tx < txs; ++tx)
        {
            const Address origin = gen::chance(rng, 0.5) ? kAttacker : "user1";
            base.enter(tx, 1, origin, "G", gen::chance(rng, 0.5) ? "f0" : "f1");
            const int inner = gen::rand_int(rng, 0, 3);
            for (int i = 0; i < inner; ++i)
            {
                switch (gen::rand_int(rng, 0, 5))
                {
                case 0:
                    base.enter(tx, 2, origin, "G", gen::chance(rng, 0.5) ? "f0" : "f1");
                    break;
                case 1:
                    base.transfer("G", gen::chance(rng, 0.5) ? origin : "user2", 3);
                    break;
                case 2:
                    base.write("G.solved");
                    break;
                case 3:
                    base.read("G.solved");
                    break;
                case 4:
                    base.push(TraceKind::BlockAttrRead);
                    break;
                case 5:
                    base.push(TraceKind::Selfdestruct).beneficiary = origin;
                    break;
                }
            }
            base.exit();
        }

        // Splice noise at random positions, then run the events through the
        // standard filter the pipeline applies.
        std::vector<TraceEvent> noisy = base.events;
        const int n_noise = gen::rand_int(rng, 1, 6);
        for (int i = 0; i < n_noise; ++i)
        {
            const auto pos = static_cast<std::size_t>(
                gen::rand_int(rng, 0, static_cast<int>(noisy.size())));
            noisy.insert(noisy.begin() + static_cast<long>(pos),
                         gen::noise_event(rng, kAttacker));
        }

        const auto filtered = semantic_events(noisy);
        for (const auto vuln : classes)
        {
            const auto want = check_trigger(base.events, vuln);
            const auto got = check_trigger(filtered, vuln);
            INFO("trial ", trial, " class ", vuln_class_name(vuln));
            CHECK(got.triggered == want.triggered);
            CHECK(got.evidence == want.evidence);
        }
    }
}

TEST_CASE("trigger evidence always points at real events")
{
    std::mt19937 rng{99};
    for (int trial = 0; trial < 200; ++trial)
    {
        TraceBuilder base;
        base.enter(0, 1, kAttacker, "G", "f0");
        if (gen::chance(rng, 0.5))
            base.write("G.a");
        base.transfer("G", kAttacker, 1);
        base.exit();
        base.enter(1, 1, kAttacker, "G", "f0");
        if (gen::chance(rng, 0.5))
            base.read("G.a");
        base.exit();
        for (const auto vuln : {VulnClass::UEW, VulnClass::TOD})
        {
            const auto res = check_trigger(base.events, vuln);
            for (const long s : res.evidence)
            {
                const bool found = std::any_of(base.events.begin(), base.events.end(),
                                               [&](const TraceEvent& e) { return e.seq == s; });
                CHECK(found);
            }
            if (res.triggered)
                CHECK(!res.evidence.empty());
        }
    }
}

TEST_CASE("flat profit assessment sums valued deltas")
{
    CHECK(!assess_profit({}).profited);
    CHECK(assess_profit({{"native", bigint{3}}}).profited);
    CHECK(!assess_profit({{"native", bigint{0}}}).profited);
    CHECK(!assess_profit({{"native", bigint{-2}}}).profited);

    // Default valuation treats every asset 1:1, so a token gain can offset
    // a native loss.
    CHECK(assess_profit({{"native", bigint{-2}}, {"TOK", bigint{3}}}).profited);
    CHECK(!assess_profit({{"native", bigint{-3}}, {"TOK", bigint{3}}}).profited);

    // Explicit rates change the break-even point.
    Valuation cheap{{"native", rational{1}}, {"TOK", rational{"1/10"}}};
    CHECK(!assess_profit({{"native", bigint{-2}}, {"TOK", bigint{3}}}, cheap).profited);
    Valuation rich{{"native", rational{1}}, {"TOK", rational{"3/2"}}};
    const auto r = assess_profit({{"native", bigint{-2}}, {"TOK", bigint{2}}}, rich);
    CHECK(r.profited);
    CHECK(r.total == rational{1});

    // An explicit valuation must cover every asset it is asked about.
    CHECK_THROWS_AS(assess_profit({{"mystery", bigint{5}}}, rich), UnknownAssetError);
}

namespace
{
class ScriptedJudge final : public ProfitJudge
{
public:
    ScriptedJudge(bool profit, std::string reason, bool fail = false)
        : profit_{profit}, reason_{std::move(reason)}, fail_{fail}
    {
    }

    Judgment judge(const std::map<std::string, bigint>&, const std::string&) override
    {
        if (fail_)
            throw Error{"judge offline"};
        return {profit_, reason_};
    }

private:
    bool profit_;
    std::string reason_;
    bool fail_;
};
}  // namespace

TEST_CASE("external judgment overrides the flat sum and falls back on failure")
{
    const std::map<std::string, bigint> deltas{{"TOK", bigint{1000}}, {"native", bigint{-1}}};

    ScriptedJudge worthless{false, "minted token has no market"};
    const auto no = judge_profit_external(deltas, "minted 1000 TOK", worthless);
    CHECK(!no.profited);
    CHECK(!no.fallback);
    CHECK(no.explanation == "minted token has no market");

    ScriptedJudge offline{true, "", true};
    const auto fb = judge_profit_external(deltas, "minted 1000 TOK", offline);
    CHECK(fb.fallback);
    // Rule-based answer: 1000 - 1 > 0.
    CHECK(fb.profited);
    CHECK(fb.explanation.find("judge unavailable") != std::string::npos);
}

TEST_CASE("poc results serialize their verdict inputs")
{
    PoCResult r = atom(true, true, false, "abc");
    r.failure_stage = FailureStage::Profit;
    r.profit_detail = {{"native", bigint{-3}}};
    const auto j = r.to_json();
    CHECK(j["poc_id"] == "abc");
    CHECK(j["executed_ok"] == true);
    CHECK(j["triggered"] == true);
    CHECK(j["profited"] == false);
    CHECK(j["failure_stage"] == "Profit");
    CHECK(j["profit_detail"]["native"] == "-3");

    Verdict v = classify({r});
    const auto vj = v.to_json();
    CHECK(vj["class"] == "NonExploitable");
    CHECK(vj["witness_poc"] == "abc");
}
