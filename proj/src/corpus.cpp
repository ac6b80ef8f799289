// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/corpus.hpp>

namespace pocval
{
bool Corpus::enqueue(PoC poc)
{
    if (poc.id.empty())
        poc.seal();
    if (poc.meta.generation > budget_.max_generation)
        return false;
    if (!seen_.insert(poc.id).second)
        return false;
    queue_.push_back(poc.id);
    admission_order_.push_back(poc.id);
    store_.emplace(poc.id, std::move(poc));
    return true;
}

Corpus::Next Corpus::next(const Clock& clock)
{
    if (clock.elapsed_seconds() >= budget_.wall_clock_secs)
        return BudgetExpired{};
    if (queue_.empty())
        return Exhausted{};
    const std::string id = queue_.front();
    queue_.pop_front();
    return store_.at(id);
}

void Corpus::record_result(PoCResult result)
{
    results_[result.poc_id] = std::move(result);
}

const PoC* Corpus::find(const std::string& id) const
{
    const auto it = store_.find(id);
    return it == store_.end() ? nullptr : &it->second;
}

const PoCResult* Corpus::result_of(const std::string& id) const
{
    const auto it = results_.find(id);
    return it == results_.end() ? nullptr : &it->second;
}

}  // namespace pocval
