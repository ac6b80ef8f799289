// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pocval
{
struct Error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Lexical or syntactic failure. line/column are 1-based positions of the
// offending token.
struct ParseError : Error
{
    ParseError(int line_, int column_, const std::string& what_)
      : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + what_),
        line{line_},
        column{column_}
    {}
    int line;
    int column;
};

// Name resolution failure: undeclared identifier, duplicate declaration,
// unknown modifier, and friends.
struct ResolveError : Error
{
    using Error::Error;
};

// A node id that does not belong to the queried unit.
struct UnknownNodeError : Error
{
    using Error::Error;
};

// The node exists but sits outside any function or constructor body.
struct NotInFunctionError : Error
{
    using Error::Error;
};

struct UnknownFunctionError : Error
{
    using Error::Error;
};

// Malformed external input (trace line, report JSON, deltas file). For line
// oriented files `line` is 1-based; 0 means not line-addressable.
struct SchemaError : Error
{
    explicit SchemaError(const std::string& what_, int line_ = 0)
      : Error(line_ > 0 ? "line " + std::to_string(line_) + ": " + what_ : what_), line{line_}
    {}
    int line;
};

struct ConfigError : Error
{
    using Error::Error;
};

struct InputError : Error
{
    using Error::Error;
};

// A delta names an asset missing from an explicitly supplied valuation.
struct UnknownAssetError : Error
{
    using Error::Error;
};

// The backend could not produce a usable PoC.
struct SynthesisFailed : Error
{
    using Error::Error;
};

// Primitive op requested for a vulnerability class the applicability matrix
// forbids.
struct InapplicableOp : Error
{
    using Error::Error;
};

}  // namespace pocval
