// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/ast.hpp>

#include <string>

namespace pocval
{
// Parses one MiniSol contract. `file` is an identifier recorded in spans and
// loses no meaning if it is not a real path. Deterministic: identical inputs
// produce identical ASTs, spans, and node ids.
//
// Throws ParseError (position + expected/found) on lexical or syntactic
// failure, ResolveError on undeclared identifiers, duplicate declarations,
// unknown modifiers, or a missing/duplicated mode directive.
ContractUnit parse(const std::string& source, const std::string& file);

}  // namespace pocval
