// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/refine.hpp>

#include <algorithm>

namespace pocval
{
namespace
{
// Function the innermost still-open call frame at trace position `at` runs
// in. CallExit events are balanced except for the frames unwinding at the
// failure point, which is exactly why the top of this stack is the frame the
// failing statement executed in.
std::string frame_function_at(const std::vector<TraceEvent>& trace, std::size_t at)
{
    std::vector<const TraceEvent*> stack;
    for (std::size_t i = 0; i <= at && i < trace.size(); ++i)
    {
        const TraceEvent& ev = trace[i];
        if (ev.kind == TraceKind::CallEnter)
            stack.push_back(&ev);
        else if (ev.kind == TraceKind::CallExit && !stack.empty())
            stack.pop_back();
    }
    return stack.empty() ? std::string{} : stack.back()->function;
}

PoC adopt(PoC poc, const ContractUnit& unit, PoCMeta meta)
{
    poc.meta = std::move(meta);
    poc.seal();
    if (auto violations = validate(poc, unit); !violations.empty())
        throw SynthesisFailed{"backend proposed an invalid script: " + violations.front()};
    return poc;
}
}  // namespace

FailureContext localize_failure(const ExecutionOutcome& outcome, const ContractUnit& unit)
{
    const auto& trace = outcome.trace;
    for (std::size_t i = trace.size(); i-- > 0;)
    {
        const TraceEvent& ev = trace[i];
        if (ev.node_id == kInvalidNode || node_unit_tag(ev.node_id) != unit.unit_tag)
            continue;
        const NodeId stmt = unit.enclosing_statement(ev.node_id);
        if (stmt == kInvalidNode)
            continue;
        const StmtClass cls = unit.stmt_class_of(stmt);
        if (cls == StmtClass::Other)
            continue;

        FailureContext ctx;
        ctx.statement_node = stmt;
        ctx.statement_span = unit.span_of(stmt);
        ctx.statement_class = cls;
        ctx.statement_text = unit.text_of(stmt);
        try
        {
            const auto enc = unit.enclosing_function(stmt);
            ctx.enclosing_function = enc.is_constructor ? "constructor" : enc.decl->name;
        }
        catch (const NotInFunctionError&)
        {
            // Modifier bodies are spliced into whichever function applied
            // them, so the AST has no answer; the call frame does.
            ctx.enclosing_function = frame_function_at(trace, i);
        }
        if (outcome.revert_info)
        {
            ctx.revert_message = outcome.revert_info->message;
            ctx.phase = outcome.revert_info->phase;
        }
        const std::size_t keep = std::min(trace.size(), kFailureTraceSuffix);
        ctx.trace_suffix.assign(trace.end() - static_cast<std::ptrdiff_t>(keep), trace.end());
        return ctx;
    }
    throw NoLocalizableCause{"no executed event maps to a check or state-update statement"};
}

std::vector<PrimitiveOp> select_primitive_ops(VulnClass vuln, FailureStage stage)
{
    struct Row
    {
        PrimitiveOp op;
        std::vector<VulnClass> classes;
        FailureStage stage;
    };
    static const std::vector<Row> rows = {
        {{"add_user", "Add additional users and let them invoke {function}."},
         {VulnClass::RCA, VulnClass::TOD, VulnClass::UEW},
         FailureStage::Profit},
        {{"change_invoker", "Change the invoker of {contract}."},
         {VulnClass::RE, VulnClass::UEW, VulnClass::US},
         FailureStage::Trigger},
        {{"change_order", "Swap the order of attackers and other users."},
         {VulnClass::TOD, VulnClass::UEW},
         FailureStage::Profit},
        {{"modify_block", "Modify the {block_attribute}."},
         {VulnClass::RCA},
         FailureStage::Trigger},
    };

    std::vector<PrimitiveOp> out;
    if (stage != FailureStage::Trigger && stage != FailureStage::Profit)
        return out;
    for (const Row& row : rows)
        if (row.stage == stage &&
            std::find(row.classes.begin(), row.classes.end(), vuln) != row.classes.end())
            out.push_back(row.op);
    out.push_back({"change_argument", "Change the argument or value of {function}."});
    return out;
}

PoC synthesize(const ContractUnit& unit, const VulnPath& path,
               const nlohmann::ordered_json& extra, SynthesisBackend& backend)
{
    SynthesisRequest req;
    req.mode = SynthesisMode::Seed;
    req.unit = &unit;
    req.path = path;
    req.extra = extra;
    auto proposals = backend.propose(req);
    if (proposals.empty())
        throw SynthesisFailed{"backend proposed no seed script"};

    PoCMeta meta;
    meta.origin = PoCOrigin::Synthesized;
    meta.generation = 0;
    meta.path = path;
    return adopt(std::move(proposals.front()), unit, std::move(meta));
}

PoC refine_failed(const ContractUnit& unit, const PoC& parent,
                  const std::optional<FailureContext>& ctx, SynthesisBackend& backend)
{
    SynthesisRequest req;
    req.mode = SynthesisMode::RefineFailure;
    req.unit = &unit;
    req.path = parent.meta.path;
    req.parent = parent;
    req.failure = ctx;
    auto proposals = backend.propose(req);
    if (proposals.empty())
        throw SynthesisFailed{"backend proposed no repair"};

    PoCMeta meta;
    meta.origin = PoCOrigin::FailureRefined;
    meta.parent_id = parent.id;
    meta.generation = parent.meta.generation + 1;
    meta.path = parent.meta.path;
    PoC child = adopt(std::move(proposals.front()), unit, std::move(meta));
    if (child.id == parent.id)
        throw SynthesisFailed{"repair produced an identical script"};
    return child;
}

std::vector<PoC> refine_primitive(const ContractUnit& unit, const PoC& parent,
                                  const PrimitiveOp& op, SynthesisBackend& backend)
{
    static const std::vector<std::string> known = {"add_user", "change_invoker", "change_order",
                                                   "modify_block", "change_argument"};
    if (std::find(known.begin(), known.end(), op.name) == known.end())
        throw InapplicableOp{"unknown primitive operation '" + op.name + "'"};

    SynthesisRequest req;
    req.mode = SynthesisMode::RefinePrimitive;
    req.unit = &unit;
    req.path = parent.meta.path;
    req.parent = parent;
    req.op = op;

    std::vector<PoC> out;
    for (PoC& proposal : backend.propose(req))
    {
        PoCMeta meta;
        meta.origin = PoCOrigin::PrimitiveOp;
        meta.primitive = op.name;
        meta.parent_id = parent.id;
        meta.generation = parent.meta.generation + 1;
        meta.path = parent.meta.path;
        PoC child;
        try
        {
            child = adopt(std::move(proposal), unit, std::move(meta));
        }
        catch (const SynthesisFailed&)
        {
            continue;
        }
        if (child.id == parent.id)
            continue;
        if (std::any_of(out.begin(), out.end(),
                        [&child](const PoC& sib) { return sib.id == child.id; }))
            continue;
        out.push_back(std::move(child));
    }
    return out;
}

}  // namespace pocval
