// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/source.hpp>
#include <pocval/u256.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pocval
{
enum class ArithmeticMode
{
    Checked,
    Unchecked,
};

enum class VarType
{
    U256,
    Address,
    Bool,
    MappingAddrU256,
};

std::string var_type_name(VarType t);

enum class ExprKind
{
    Number,
    BoolLit,
    StateVar,        // scalar state variable read
    MappingAccess,   // state mapping read: name + key expression in args[0]
    Param,           // function parameter read
    Builtin,         // msg.sender / msg.value / tx.origin / block.*
    Binary,          // args[0] op args[1]
    Unary,           // !args[0]
    Hash,            // keccak(args...)
    BalanceOf,       // balance(args[0]): native balance of an address
    BlockhashOf,     // blockhash(args[0])
    Unresolved,      // bare identifier before name resolution
};

enum class Builtin
{
    MsgSender,
    MsgValue,
    TxOrigin,
    BlockNumber,
    BlockTimestamp,
};

enum class BinOp
{
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
};

enum class UnOp
{
    Not,
};

struct Expr
{
    ExprKind kind = ExprKind::Number;
    NodeId node = kInvalidNode;
    u256 number;                 // Number
    bool bool_value = false;     // BoolLit
    std::string name;            // StateVar / MappingAccess / Param / Unresolved
    Builtin builtin = Builtin::MsgSender;
    BinOp bin_op = BinOp::Add;
    UnOp un_op = UnOp::Not;
    std::vector<Expr> args;
};

enum class StmtKind
{
    Require,
    Assign,
    Transfer,       // transfer(to, amount): value move, no callback
    ExternalCall,   // call(to, value): value move, recipient fallback may run
    Send,           // send(to, value): value move, no callback
    Selfdestruct,
    TokenOp,
    Emit,
    If,
    Return,
};

// Coarse statement classification used by failure localization.
enum class StmtClass
{
    Check,
    StateUpdate,
    Other,
};

StmtClass stmt_class(StmtKind kind);
std::string stmt_class_name(StmtClass c);

enum class TokenOpKind
{
    Mint,
    Transfer,
};

struct LValue
{
    std::string var;
    std::optional<Expr> key;   // present for mapping element targets
    NodeId node = kInvalidNode;
};

// Operand layout by kind:
//   Require       exprs[0] condition; message = revert text
//   Assign        lvalue target; exprs[0] rhs
//   Transfer      exprs[0] recipient; exprs[1] amount
//   ExternalCall  exprs[0] recipient; exprs[1] value
//   Send          exprs[0] recipient; exprs[1] value
//   Selfdestruct  exprs[0] beneficiary
//   TokenOp       exprs[0] recipient; exprs[1] amount; asset + token_op set
//   Emit          message = event name; exprs = arguments
//   If            exprs[0] condition; then_body / else_body
//   Return        exprs[0] optional value (has_value)
struct Statement
{
    StmtKind kind = StmtKind::Require;
    NodeId node = kInvalidNode;
    std::string message;
    std::optional<LValue> lvalue;
    std::vector<Expr> exprs;
    TokenOpKind token_op = TokenOpKind::Mint;
    std::string asset;
    std::vector<Statement> then_body;
    std::vector<Statement> else_body;
    bool has_value = false;
};

struct Param
{
    std::string name;
    VarType type = VarType::U256;
    NodeId node = kInvalidNode;
};

struct FunctionDecl
{
    std::string name;
    std::vector<Param> params;
    bool payable = false;
    std::vector<std::string> modifiers_applied;
    std::vector<Statement> body;
    NodeId node = kInvalidNode;
};

struct ModifierDecl
{
    std::string name;
    std::vector<Statement> body;
    NodeId node = kInvalidNode;
};

struct StateVarDecl
{
    std::string name;
    VarType type = VarType::U256;
    std::optional<Expr> init;
    NodeId node = kInvalidNode;
};

enum class NodeTag : std::uint8_t
{
    Contract,
    StateVar,
    Constructor,
    Function,
    Modifier,
    Param,
    Stmt,
    Expr,
    LValue,
};

struct NodeInfo
{
    NodeTag tag = NodeTag::Expr;
    NodeId parent = kInvalidNode;
    SourceSpan span;
    StmtClass stmt_cls = StmtClass::Other;   // meaningful for Stmt nodes only
};

// Parsed contract. Immutable after parse(); all queries are const and the
// node table never changes, so units can be shared freely.
struct ContractUnit
{
    std::string name;
    ArithmeticMode mode = ArithmeticMode::Checked;
    std::vector<StateVarDecl> state_vars;
    std::optional<FunctionDecl> ctor;
    std::vector<FunctionDecl> functions;
    std::vector<ModifierDecl> modifiers;

    std::string file;
    std::string source;
    std::uint32_t unit_tag = 0;
    NodeId root = kInvalidNode;
    std::vector<NodeInfo> nodes;

    const SourceSpan& span_of(NodeId id) const;
    std::string text_of(NodeId id) const;

    // Innermost function or constructor containing `id`. is_constructor
    // distinguishes the two. Throws NotInFunctionError for contract-level and
    // modifier-body nodes.
    struct EnclosingFunction
    {
        const FunctionDecl* decl;
        bool is_constructor;
    };
    EnclosingFunction enclosing_function(NodeId id) const;

    // Nearest enclosing statement node (the node itself if it is one).
    NodeId enclosing_statement(NodeId id) const;
    StmtClass stmt_class_of(NodeId id) const;

    const FunctionDecl* find_function(const std::string& fn_name) const;
    const ModifierDecl* find_modifier(const std::string& mod_name) const;
    const StateVarDecl* find_state_var(const std::string& var_name) const;

    // Name of the function, constructor, or modifier owning `id`, if any.
    std::optional<std::string> owner_name(NodeId id) const;

private:
    const NodeInfo& info(NodeId id) const;
};

// Structural equality, ignoring spans and node ids. Used by the
// print/reparse round-trip check and PoC-independent AST comparisons.
bool structurally_equal(const ContractUnit& a, const ContractUnit& b);
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Statement& a, const Statement& b);

}  // namespace pocval
