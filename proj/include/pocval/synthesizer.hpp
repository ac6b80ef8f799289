// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/analysis.hpp>
#include <pocval/oracle.hpp>
#include <pocval/poc.hpp>
#include <pocval/vm.hpp>

#include <nlohmann/json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pocval
{
// Events kept from the tail of a failing trace when building refinement
// context.
inline constexpr std::size_t kFailureTraceSuffix = 20;

enum class SynthesisMode
{
    Seed,              // first PoC for a path
    RefineFailure,     // repair an execution failure
    RefinePrimitive,   // apply one primitive operation
};

// Why and where a PoC's execution died. Produced by localize_failure.
struct FailureContext
{
    NodeId statement_node = kInvalidNode;
    SourceSpan statement_span;
    StmtClass statement_class = StmtClass::Other;
    std::string statement_text;
    std::string enclosing_function;
    std::string revert_message;
    Phase phase = Phase::Exploit;
    std::vector<TraceEvent> trace_suffix;
};

// One row of the repair vocabulary. `instruction` is a template; {function},
// {contract}, and {block_attribute} get bound per request.
struct PrimitiveOp
{
    std::string name;
    std::string instruction;

    bool operator==(const PrimitiveOp&) const = default;
};

struct SynthesisRequest
{
    SynthesisMode mode = SynthesisMode::Seed;
    const ContractUnit* unit = nullptr;
    VulnPath path;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    std::optional<PoC> parent;
    std::optional<FailureContext> failure;     // RefineFailure
    std::optional<PrimitiveOp> op;             // RefinePrimitive
};

// Produces candidate scripts for a request. Implementations return raw
// action lists; the refinement layer owns metadata, sealing, and validation.
class SynthesisBackend
{
public:
    virtual ~SynthesisBackend() = default;
    virtual std::vector<PoC> propose(const SynthesisRequest& request) = 0;
    virtual std::string name() const = 0;
};

// One descriptive paragraph per vulnerability class, embedded into prompts.
std::string vulnerability_feature_text(VulnClass vuln);

// Fills the op's placeholders from the path: {function} is the invoked
// function, {contract} the target contract, {block_attribute} a readable
// attribute name.
std::string bind_instruction(const PrimitiveOp& op, const VulnPath& path,
                             const std::string& contract_name);

struct PromptSections
{
    std::string system;
    std::string user;
};

// Structured prompt for LLM-backed synthesis: contract initialization, the
// vulnerability path, class features, script requirements, extra hints, and
// the relevant source. Every request is self-contained; no conversation
// state carries over.
PromptSections assemble_prompt(const SynthesisRequest& request);

// Deterministic rule-based backend. No I/O, no randomness: identical
// requests yield identical proposals. This is the default backend and the
// one the test suite pins down.
class TemplateBackend final : public SynthesisBackend
{
public:
    std::vector<PoC> propose(const SynthesisRequest& request) override;
    std::string name() const override
    {
        return "template";
    }
};

struct RemoteConfig
{
    std::string url;                            // e.g. http://host:port/v1/chat/completions
    std::string model = "default";
    std::string api_key_env = "POCVAL_API_KEY"; // credential read from env, never from files
    double timeout_secs = 60;
    int max_retries = 1;
};

std::unique_ptr<SynthesisBackend> make_remote_backend(const RemoteConfig& config);

// Profit judge speaking the same chat-completion protocol. Expects the reply
// to be exactly {"profit": bool, "reason": string}; anything else throws so
// the caller can fall back to the rule-based assessment.
std::unique_ptr<ProfitJudge> make_remote_judge(const RemoteConfig& config);

}  // namespace pocval
