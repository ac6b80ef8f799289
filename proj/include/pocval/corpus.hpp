// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/oracle.hpp>
#include <pocval/poc.hpp>

#include <chrono>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>

namespace pocval
{
// Elapsed-time source. Injectable so schedulers can be tested without
// sleeping.
class Clock
{
public:
    virtual ~Clock() = default;
    virtual double elapsed_seconds() const = 0;
};

class SteadyClock final : public Clock
{
public:
    SteadyClock() : start_{std::chrono::steady_clock::now()} {}

    double elapsed_seconds() const override
    {
        const auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

class ManualClock final : public Clock
{
public:
    double elapsed_seconds() const override
    {
        return now_;
    }
    void advance(double seconds)
    {
        now_ += seconds;
    }

private:
    double now_ = 0;
};

struct Budget
{
    double wall_clock_secs = 1800;
    int max_generation = 8;
};

struct Exhausted
{
};

struct BudgetExpired
{
};

// FIFO queue of candidate PoCs, deduplicated by content hash for the life of
// the corpus: an id that was ever admitted (even if long dequeued) is never
// admitted again. Results are recorded per id as candidates get executed.
class Corpus
{
public:
    explicit Corpus(Budget budget = {}) : budget_{budget} {}

    // False if the id was seen before or the PoC's generation exceeds the
    // budget's cap.
    bool enqueue(PoC poc);

    using Next = std::variant<PoC, Exhausted, BudgetExpired>;

    // Budget is checked first: once the clock runs out nothing more is
    // handed out, queued or not.
    Next next(const Clock& clock);

    void record_result(PoCResult result);

    bool contains(const std::string& id) const
    {
        return store_.count(id) != 0;
    }
    const PoC* find(const std::string& id) const;
    const PoCResult* result_of(const std::string& id) const;

    std::size_t queued() const
    {
        return queue_.size();
    }
    std::size_t admitted() const
    {
        return store_.size();
    }
    const std::vector<std::string>& admission_order() const
    {
        return admission_order_;
    }
    const Budget& budget() const
    {
        return budget_;
    }

private:
    Budget budget_;
    std::deque<std::string> queue_;
    std::map<std::string, PoC> store_;
    std::map<std::string, PoCResult> results_;
    std::set<std::string> seen_;
    std::vector<std::string> admission_order_;
};

}  // namespace pocval
