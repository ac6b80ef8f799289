// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/ast.hpp>
#include <pocval/errors.hpp>

#include <sstream>

namespace pocval
{
std::string var_type_name(VarType t)
{
    switch (t)
    {
    case VarType::U256:
        return "uint256";
    case VarType::Address:
        return "address";
    case VarType::Bool:
        return "bool";
    case VarType::MappingAddrU256:
        return "mapping(address => uint256)";
    }
    return "?";
}

StmtClass stmt_class(StmtKind kind)
{
    switch (kind)
    {
    case StmtKind::Require:
        return StmtClass::Check;
    case StmtKind::Assign:
    case StmtKind::Transfer:
    case StmtKind::ExternalCall:
    case StmtKind::Send:
    case StmtKind::TokenOp:
    case StmtKind::Selfdestruct:
        return StmtClass::StateUpdate;
    case StmtKind::Emit:
    case StmtKind::If:
    case StmtKind::Return:
        return StmtClass::Other;
    }
    return StmtClass::Other;
}

std::string stmt_class_name(StmtClass c)
{
    switch (c)
    {
    case StmtClass::Check:
        return "Check";
    case StmtClass::StateUpdate:
        return "StateUpdate";
    case StmtClass::Other:
        return "Other";
    }
    return "?";
}

const NodeInfo& ContractUnit::info(NodeId id) const
{
    if (node_unit_tag(id) != unit_tag || node_index(id) >= nodes.size())
        throw UnknownNodeError{"node id does not belong to this unit"};
    return nodes[node_index(id)];
}

const SourceSpan& ContractUnit::span_of(NodeId id) const
{
    return info(id).span;
}

std::string ContractUnit::text_of(NodeId id) const
{
    const auto& sp = info(id).span;
    return source.substr(sp.offset, sp.length);
}

ContractUnit::EnclosingFunction ContractUnit::enclosing_function(NodeId id) const
{
    for (NodeId cur = id; cur != kInvalidNode; cur = info(cur).parent)
    {
        const auto& n = info(cur);
        if (n.tag == NodeTag::Constructor)
            return {&*ctor, true};
        if (n.tag == NodeTag::Function)
        {
            for (const auto& f : functions)
                if (f.node == cur)
                    return {&f, false};
            throw UnknownNodeError{"function node missing from declaration list"};
        }
        if (n.tag == NodeTag::Modifier)
            throw NotInFunctionError{"node sits inside a modifier body"};
    }
    throw NotInFunctionError{"node is not inside a function or constructor"};
}

NodeId ContractUnit::enclosing_statement(NodeId id) const
{
    for (NodeId cur = id; cur != kInvalidNode; cur = info(cur).parent)
        if (info(cur).tag == NodeTag::Stmt)
            return cur;
    return kInvalidNode;
}

StmtClass ContractUnit::stmt_class_of(NodeId id) const
{
    const auto& n = info(id);
    if (n.tag != NodeTag::Stmt)
        throw UnknownNodeError{"node is not a statement"};
    return n.stmt_cls;
}

const FunctionDecl* ContractUnit::find_function(const std::string& fn_name) const
{
    for (const auto& f : functions)
        if (f.name == fn_name)
            return &f;
    return nullptr;
}

const ModifierDecl* ContractUnit::find_modifier(const std::string& mod_name) const
{
    for (const auto& m : modifiers)
        if (m.name == mod_name)
            return &m;
    return nullptr;
}

const StateVarDecl* ContractUnit::find_state_var(const std::string& var_name) const
{
    for (const auto& v : state_vars)
        if (v.name == var_name)
            return &v;
    return nullptr;
}

std::optional<std::string> ContractUnit::owner_name(NodeId id) const
{
    for (NodeId cur = id; cur != kInvalidNode; cur = info(cur).parent)
    {
        const auto& n = info(cur);
        if (n.tag == NodeTag::Constructor)
            return std::string{"constructor"};
        if (n.tag == NodeTag::Function)
        {
            for (const auto& f : functions)
                if (f.node == cur)
                    return f.name;
        }
        if (n.tag == NodeTag::Modifier)
        {
            for (const auto& m : modifiers)
                if (m.node == cur)
                    return m.name;
        }
    }
    return std::nullopt;
}

bool structurally_equal(const Expr& a, const Expr& b)
{
    if (a.kind != b.kind || a.args.size() != b.args.size())
        return false;
    switch (a.kind)
    {
    case ExprKind::Number:
        if (a.number != b.number)
            return false;
        break;
    case ExprKind::BoolLit:
        if (a.bool_value != b.bool_value)
            return false;
        break;
    case ExprKind::StateVar:
    case ExprKind::MappingAccess:
    case ExprKind::Param:
    case ExprKind::Unresolved:
        if (a.name != b.name)
            return false;
        break;
    case ExprKind::Builtin:
        if (a.builtin != b.builtin)
            return false;
        break;
    case ExprKind::Binary:
        if (a.bin_op != b.bin_op)
            return false;
        break;
    case ExprKind::Unary:
        if (a.un_op != b.un_op)
            return false;
        break;
    case ExprKind::Hash:
    case ExprKind::BalanceOf:
    case ExprKind::BlockhashOf:
        break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!structurally_equal(a.args[i], b.args[i]))
            return false;
    return true;
}

namespace
{
bool stmts_equal(const std::vector<Statement>& a, const std::vector<Statement>& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!structurally_equal(a[i], b[i]))
            return false;
    return true;
}
}  // namespace

bool structurally_equal(const Statement& a, const Statement& b)
{
    if (a.kind != b.kind || a.message != b.message || a.asset != b.asset || a.has_value != b.has_value)
        return false;
    if (a.kind == StmtKind::TokenOp && a.token_op != b.token_op)
        return false;
    if (a.lvalue.has_value() != b.lvalue.has_value())
        return false;
    if (a.lvalue)
    {
        if (a.lvalue->var != b.lvalue->var || a.lvalue->key.has_value() != b.lvalue->key.has_value())
            return false;
        if (a.lvalue->key && !structurally_equal(*a.lvalue->key, *b.lvalue->key))
            return false;
    }
    if (a.exprs.size() != b.exprs.size())
        return false;
    for (std::size_t i = 0; i < a.exprs.size(); ++i)
        if (!structurally_equal(a.exprs[i], b.exprs[i]))
            return false;
    return stmts_equal(a.then_body, b.then_body) && stmts_equal(a.else_body, b.else_body);
}

namespace
{
bool functions_equal(const FunctionDecl& a, const FunctionDecl& b)
{
    if (a.name != b.name || a.payable != b.payable || a.modifiers_applied != b.modifiers_applied)
        return false;
    if (a.params.size() != b.params.size())
        return false;
    for (std::size_t i = 0; i < a.params.size(); ++i)
        if (a.params[i].name != b.params[i].name || a.params[i].type != b.params[i].type)
            return false;
    return stmts_equal(a.body, b.body);
}
}  // namespace

bool structurally_equal(const ContractUnit& a, const ContractUnit& b)
{
    if (a.name != b.name || a.mode != b.mode)
        return false;
    if (a.state_vars.size() != b.state_vars.size() || a.functions.size() != b.functions.size() ||
        a.modifiers.size() != b.modifiers.size() || a.ctor.has_value() != b.ctor.has_value())
        return false;
    for (std::size_t i = 0; i < a.state_vars.size(); ++i)
    {
        const auto& va = a.state_vars[i];
        const auto& vb = b.state_vars[i];
        if (va.name != vb.name || va.type != vb.type || va.init.has_value() != vb.init.has_value())
            return false;
        if (va.init && !structurally_equal(*va.init, *vb.init))
            return false;
    }
    if (a.ctor && !functions_equal(*a.ctor, *b.ctor))
        return false;
    for (std::size_t i = 0; i < a.functions.size(); ++i)
        if (!functions_equal(a.functions[i], b.functions[i]))
            return false;
    for (std::size_t i = 0; i < a.modifiers.size(); ++i)
    {
        if (a.modifiers[i].name != b.modifiers[i].name)
            return false;
        if (!stmts_equal(a.modifiers[i].body, b.modifiers[i].body))
            return false;
    }
    return true;
}

}  // namespace pocval
