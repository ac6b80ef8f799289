// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/errors.hpp>
#include <pocval/oracle.hpp>
#include <pocval/synthesizer.hpp>

namespace pocval
{
// No executed event mapped back to a Check or StateUpdate statement, so
// there is nothing to anchor a repair to.
struct NoLocalizableCause : Error
{
    using Error::Error;
};

// Walks the trace of a failed execution backwards to the last event whose
// AST node lies inside a Check or StateUpdate statement, and packages that
// statement with the revert message and the trace tail. The enclosing
// function for a statement inside a modifier body is taken from the
// innermost call frame still open at that event.
FailureContext localize_failure(const ExecutionOutcome& outcome, const ContractUnit& unit);

// The repair vocabulary: which primitive operations make sense for a given
// vulnerability class once execution succeeds but the trigger (stage
// Trigger) or the profit condition (stage Profit) fails. Returned in fixed
// table order; change_argument applies everywhere and comes last.
std::vector<PrimitiveOp> select_primitive_ops(VulnClass vuln, FailureStage stage);

// Seed synthesis for one vulnerability path.
PoC synthesize(const ContractUnit& unit, const VulnPath& path,
               const nlohmann::ordered_json& extra, SynthesisBackend& backend);

// One repaired child for an execution failure. `ctx` is absent when
// localization found no cause; the backend then falls back to coarse
// repairs. Throws SynthesisFailed when the backend cannot produce a valid
// child distinct from its parent.
PoC refine_failed(const ContractUnit& unit, const PoC& parent,
                  const std::optional<FailureContext>& ctx, SynthesisBackend& backend);

// Children for one primitive operation. Invalid proposals and exact
// duplicates of the parent are dropped; the result may be empty.
std::vector<PoC> refine_primitive(const ContractUnit& unit, const PoC& parent,
                                  const PrimitiveOp& op, SynthesisBackend& backend);

}  // namespace pocval
