// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace pocval
{
// Half-open byte range plus 1-based line/column endpoints into one source
// buffer. end_line/end_column point at the last byte of the range.
struct SourceSpan
{
    std::string file;
    int start_line = 1;
    int start_column = 1;
    int end_line = 1;
    int end_column = 1;
    std::size_t offset = 0;
    std::size_t length = 0;
};

// Stable node handle: high 32 bits tag the owning unit (derived from the
// unit's file id and source text), low 32 bits index the unit's node table.
// The tag makes ids from a different unit detectable instead of silently
// resolving to an unrelated node.
using NodeId = std::uint64_t;

constexpr NodeId kInvalidNode = ~NodeId{0};

constexpr std::uint32_t node_unit_tag(NodeId id) noexcept
{
    return static_cast<std::uint32_t>(id >> 32);
}

constexpr std::uint32_t node_index(NodeId id) noexcept
{
    return static_cast<std::uint32_t>(id & 0xffffffffu);
}

constexpr NodeId make_node_id(std::uint32_t unit_tag, std::uint32_t index) noexcept
{
    return (NodeId{unit_tag} << 32) | index;
}

}  // namespace pocval
