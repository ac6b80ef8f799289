// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/ast.hpp>

#include <string>

namespace pocval
{
// Canonical source form. Guaranteed to reparse into a structurally equal
// unit. Compound assignments parse desugared, so they print desugared.
std::string to_source(const ContractUnit& unit);
std::string to_source(const Statement& stmt, int indent = 0);
std::string to_source(const Expr& expr);
std::string to_source(const FunctionDecl& fn, bool is_ctor = false);

}  // namespace pocval
