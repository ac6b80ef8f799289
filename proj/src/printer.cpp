// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/printer.hpp>

#include <sstream>

namespace pocval
{
namespace
{
int precedence(const Expr& e)
{
    if (e.kind != ExprKind::Binary)
        return 100;
    switch (e.bin_op)
    {
    case BinOp::Or:
        return 1;
    case BinOp::And:
        return 2;
    case BinOp::Eq:
    case BinOp::Ne:
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
        return 3;
    case BinOp::Add:
    case BinOp::Sub:
        return 4;
    case BinOp::Mul:
    case BinOp::Div:
    case BinOp::Mod:
        return 5;
    }
    return 100;
}

const char* bin_op_text(BinOp op)
{
    switch (op)
    {
    case BinOp::Add:
        return "+";
    case BinOp::Sub:
        return "-";
    case BinOp::Mul:
        return "*";
    case BinOp::Div:
        return "/";
    case BinOp::Mod:
        return "%";
    case BinOp::Eq:
        return "==";
    case BinOp::Ne:
        return "!=";
    case BinOp::Lt:
        return "<";
    case BinOp::Le:
        return "<=";
    case BinOp::Gt:
        return ">";
    case BinOp::Ge:
        return ">=";
    case BinOp::And:
        return "&&";
    case BinOp::Or:
        return "||";
    }
    return "?";
}

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"' || c == '\\')
        {
            out.push_back('\\');
            out.push_back(c);
        }
        else if (c == '\n')
            out += "\\n";
        else
            out.push_back(c);
    }
    out.push_back('"');
    return out;
}

// Children at lower precedence need parentheses; equal precedence on the
// right does too, because all binary operators associate left.
std::string print_child(const Expr& child, int parent_prec, bool right)
{
    const int p = precedence(child);
    const std::string inner = to_source(child);
    if (p < parent_prec || (right && p == parent_prec && child.kind == ExprKind::Binary))
        return "(" + inner + ")";
    return inner;
}

std::string indent_str(int n)
{
    return std::string(static_cast<std::size_t>(n) * 4, ' ');
}

void print_block(std::ostringstream& os, const std::vector<Statement>& body, int indent)
{
    os << "{\n";
    for (const auto& st : body)
        os << to_source(st, indent + 1);
    os << indent_str(indent) << "}";
}
}  // namespace

std::string to_source(const Expr& expr)
{
    switch (expr.kind)
    {
    case ExprKind::Number:
        return to_dec(expr.number);
    case ExprKind::BoolLit:
        return expr.bool_value ? "true" : "false";
    case ExprKind::StateVar:
    case ExprKind::Param:
    case ExprKind::Unresolved:
        return expr.name;
    case ExprKind::MappingAccess:
        return expr.name + "[" + to_source(expr.args[0]) + "]";
    case ExprKind::Builtin:
        switch (expr.builtin)
        {
        case Builtin::MsgSender:
            return "msg.sender";
        case Builtin::MsgValue:
            return "msg.value";
        case Builtin::TxOrigin:
            return "tx.origin";
        case Builtin::BlockNumber:
            return "block.number";
        case Builtin::BlockTimestamp:
            return "block.timestamp";
        }
        return "?";
    case ExprKind::Binary:
    {
        const int p = precedence(expr);
        return print_child(expr.args[0], p, false) + " " + bin_op_text(expr.bin_op) + " " +
               print_child(expr.args[1], p, true);
    }
    case ExprKind::Unary:
    {
        const std::string inner = to_source(expr.args[0]);
        if (expr.args[0].kind == ExprKind::Binary)
            return "!(" + inner + ")";
        return "!" + inner;
    }
    case ExprKind::Hash:
    {
        std::string out = "keccak(";
        for (std::size_t i = 0; i < expr.args.size(); ++i)
        {
            if (i)
                out += ", ";
            out += to_source(expr.args[i]);
        }
        return out + ")";
    }
    case ExprKind::BalanceOf:
        return "balance(" + to_source(expr.args[0]) + ")";
    case ExprKind::BlockhashOf:
        return "blockhash(" + to_source(expr.args[0]) + ")";
    }
    return "?";
}

std::string to_source(const Statement& stmt, int indent)
{
    std::ostringstream os;
    os << indent_str(indent);
    switch (stmt.kind)
    {
    case StmtKind::Require:
        os << "require(" << to_source(stmt.exprs[0]);
        if (!stmt.message.empty())
            os << ", " << quote(stmt.message);
        os << ");";
        break;
    case StmtKind::Assign:
        os << stmt.lvalue->var;
        if (stmt.lvalue->key)
            os << "[" << to_source(*stmt.lvalue->key) << "]";
        os << " = " << to_source(stmt.exprs[0]) << ";";
        break;
    case StmtKind::Transfer:
        os << "transfer(" << to_source(stmt.exprs[0]) << ", " << to_source(stmt.exprs[1]) << ");";
        break;
    case StmtKind::ExternalCall:
        os << "call(" << to_source(stmt.exprs[0]) << ", " << to_source(stmt.exprs[1]) << ");";
        break;
    case StmtKind::Send:
        os << "send(" << to_source(stmt.exprs[0]) << ", " << to_source(stmt.exprs[1]) << ");";
        break;
    case StmtKind::Selfdestruct:
        os << "selfdestruct(" << to_source(stmt.exprs[0]) << ");";
        break;
    case StmtKind::TokenOp:
        os << (stmt.token_op == TokenOpKind::Mint ? "mint(" : "transferToken(") << quote(stmt.asset)
           << ", " << to_source(stmt.exprs[0]) << ", " << to_source(stmt.exprs[1]) << ");";
        break;
    case StmtKind::Emit:
        os << "emit " << stmt.message << "(";
        for (std::size_t i = 0; i < stmt.exprs.size(); ++i)
        {
            if (i)
                os << ", ";
            os << to_source(stmt.exprs[i]);
        }
        os << ");";
        break;
    case StmtKind::If:
        os << "if (" << to_source(stmt.exprs[0]) << ") ";
        print_block(os, stmt.then_body, indent);
        if (!stmt.else_body.empty())
        {
            os << " else ";
            print_block(os, stmt.else_body, indent);
        }
        break;
    case StmtKind::Return:
        os << "return";
        if (stmt.has_value)
            os << " " << to_source(stmt.exprs[0]);
        os << ";";
        break;
    }
    os << "\n";
    return os.str();
}

std::string to_source(const FunctionDecl& fn, bool is_ctor)
{
    std::ostringstream os;
    os << indent_str(1);
    if (is_ctor)
        os << "constructor(";
    else
        os << "function " << fn.name << "(";
    for (std::size_t i = 0; i < fn.params.size(); ++i)
    {
        if (i)
            os << ", ";
        os << var_type_name(fn.params[i].type) << " " << fn.params[i].name;
    }
    os << ")";
    if (fn.payable)
        os << " payable";
    for (const auto& m : fn.modifiers_applied)
        os << " " << m;
    os << " ";
    print_block(os, fn.body, 1);
    os << "\n";
    return os.str();
}

std::string to_source(const ContractUnit& unit)
{
    std::ostringstream os;
    os << "mode " << (unit.mode == ArithmeticMode::Checked ? "checked" : "unchecked") << ";\n\n";
    os << "contract " << unit.name << " {\n";
    for (const auto& v : unit.state_vars)
    {
        os << indent_str(1) << var_type_name(v.type) << " " << v.name;
        if (v.init)
            os << " = " << to_source(*v.init);
        os << ";\n";
    }
    if (!unit.state_vars.empty())
        os << "\n";
    for (const auto& m : unit.modifiers)
    {
        os << indent_str(1) << "modifier " << m.name << " ";
        print_block(os, m.body, 1);
        os << "\n\n";
    }
    if (unit.ctor)
        os << to_source(*unit.ctor, true) << "\n";
    for (std::size_t i = 0; i < unit.functions.size(); ++i)
    {
        os << to_source(unit.functions[i], false);
        if (i + 1 < unit.functions.size())
            os << "\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace pocval
