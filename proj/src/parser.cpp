// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/errors.hpp>
#include <pocval/hash.hpp>
#include <pocval/parser.hpp>

#include <functional>
#include <set>
#include <utility>

namespace pocval
{
namespace
{
enum class TokKind
{
    Ident,
    Number,
    String,
    Sym,
    Eof,
};

struct Token
{
    TokKind kind = TokKind::Eof;
    std::string text;
    int line = 1;
    int column = 1;
    std::size_t offset = 0;
    std::size_t length = 0;
};

bool is_ident_start(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c)
{
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

std::vector<Token> lex(const std::string& src)
{
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;
    int col = 1;
    const auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k)
        {
            if (src[i + k] == '\n')
            {
                ++line;
                col = 1;
            }
            else
                ++col;
        }
        i += n;
    };
    while (i < src.size())
    {
        const char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
        {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/')
        {
            while (i < src.size() && src[i] != '\n')
                advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        t.offset = i;
        if (is_ident_start(c))
        {
            std::size_t j = i;
            while (j < src.size() && is_ident_char(src[j]))
                ++j;
            t.kind = TokKind::Ident;
            t.text = src.substr(i, j - i);
            t.length = j - i;
            advance(j - i);
        }
        else if (c >= '0' && c <= '9')
        {
            std::size_t j = i;
            while (j < src.size() && src[j] >= '0' && src[j] <= '9')
                ++j;
            t.kind = TokKind::Number;
            t.text = src.substr(i, j - i);
            t.length = j - i;
            advance(j - i);
        }
        else if (c == '"')
        {
            std::string value;
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '"')
            {
                if (src[j] == '\\' && j + 1 < src.size())
                {
                    const char esc = src[j + 1];
                    value.push_back(esc == 'n' ? '\n' : esc);
                    j += 2;
                }
                else
                {
                    if (src[j] == '\n')
                        throw ParseError{line, col, "unterminated string literal"};
                    value.push_back(src[j]);
                    ++j;
                }
            }
            if (j >= src.size())
                throw ParseError{line, col, "unterminated string literal"};
            t.kind = TokKind::String;
            t.text = value;
            t.length = j + 1 - i;
            advance(j + 1 - i);
        }
        else
        {
            static const char* two_char[] = {"==", "!=", "<=", ">=", "&&", "||", "+=", "-=", "*=", "=>"};
            std::string sym(1, c);
            if (i + 1 < src.size())
            {
                const std::string pair = src.substr(i, 2);
                for (const auto* s : two_char)
                    if (pair == s)
                    {
                        sym = pair;
                        break;
                    }
            }
            static const std::string singles = "(){}[],;.=<>!+-*/%";
            if (sym.size() == 1 && singles.find(c) == std::string::npos)
                throw ParseError{line, col, std::string{"unexpected character '"} + c + "'"};
            t.kind = TokKind::Sym;
            t.text = sym;
            t.length = sym.size();
            advance(sym.size());
        }
        out.push_back(std::move(t));
    }
    Token eof;
    eof.kind = TokKind::Eof;
    eof.text = "<eof>";
    eof.line = line;
    eof.column = col;
    eof.offset = src.size();
    out.push_back(eof);
    return out;
}

const std::set<std::string>& reserved_names()
{
    static const std::set<std::string> names = {
        "mode", "checked", "unchecked", "contract", "function", "constructor", "modifier", "payable",
        "uint256", "address", "bool", "mapping", "require", "if", "else", "return", "emit", "true",
        "false", "msg", "tx", "block", "keccak", "balance", "blockhash", "transfer", "call", "send",
        "selfdestruct", "mint", "transferToken",
    };
    return names;
}

class Parser
{
public:
    Parser(const std::string& source, const std::string& file)
      : toks_{lex(source)}
    {
        unit_.source = source;
        unit_.file = file;
        unit_.unit_tag = static_cast<std::uint32_t>(sha256_word(file + '\0' + source) & 0xffffffffu);
    }

    ContractUnit run()
    {
        parse_mode_directive();
        parse_contract();
        expect_eof();
        resolve();
        link_parents();
        return std::move(unit_);
    }

private:
    std::vector<Token> toks_;
    std::size_t ti_ = 0;
    ContractUnit unit_;

    const Token& peek(std::size_t ahead = 0) const
    {
        const std::size_t k = ti_ + ahead;
        return k < toks_.size() ? toks_[k] : toks_.back();
    }

    const Token& next()
    {
        const Token& t = peek();
        if (t.kind != TokKind::Eof)
            ++ti_;
        return t;
    }

    [[noreturn]] void fail(const Token& at, const std::string& msg) const
    {
        throw ParseError{at.line, at.column, msg + ", found '" + at.text + "'"};
    }

    const Token& expect_sym(const std::string& sym)
    {
        const Token& t = peek();
        if (t.kind != TokKind::Sym || t.text != sym)
            fail(t, "expected '" + sym + "'");
        return next();
    }

    const Token& expect_ident()
    {
        const Token& t = peek();
        if (t.kind != TokKind::Ident)
            fail(t, "expected identifier");
        return next();
    }

    const Token& expect_keyword(const std::string& kw)
    {
        const Token& t = peek();
        if (t.kind != TokKind::Ident || t.text != kw)
            fail(t, "expected '" + kw + "'");
        return next();
    }

    bool at_ident(const std::string& kw, std::size_t ahead = 0) const
    {
        const Token& t = peek(ahead);
        return t.kind == TokKind::Ident && t.text == kw;
    }

    bool at_sym(const std::string& sym, std::size_t ahead = 0) const
    {
        const Token& t = peek(ahead);
        return t.kind == TokKind::Sym && t.text == sym;
    }

    void expect_eof() const
    {
        if (peek().kind != TokKind::Eof)
            fail(peek(), "expected end of input");
    }

    NodeId alloc(NodeTag tag, const Token& first, const Token& last, StmtClass cls = StmtClass::Other)
    {
        NodeInfo n;
        n.tag = tag;
        n.stmt_cls = cls;
        n.span.file = unit_.file;
        n.span.start_line = first.line;
        n.span.start_column = first.column;
        n.span.end_line = last.line;
        n.span.end_column = last.column + static_cast<int>(last.length ? last.length - 1 : 0);
        n.span.offset = first.offset;
        n.span.length = last.offset + last.length - first.offset;
        unit_.nodes.push_back(n);
        return make_node_id(unit_.unit_tag, static_cast<std::uint32_t>(unit_.nodes.size() - 1));
    }

    NodeId alloc_copy_span(NodeTag tag, NodeId from)
    {
        NodeInfo n;
        n.tag = tag;
        n.span = unit_.nodes[node_index(from)].span;
        unit_.nodes.push_back(n);
        return make_node_id(unit_.unit_tag, static_cast<std::uint32_t>(unit_.nodes.size() - 1));
    }

    NodeId alloc_merged_span(NodeTag tag, NodeId from, NodeId to)
    {
        NodeInfo n;
        n.tag = tag;
        const auto& a = unit_.nodes[node_index(from)].span;
        const auto& b = unit_.nodes[node_index(to)].span;
        n.span = a;
        n.span.end_line = b.end_line;
        n.span.end_column = b.end_column;
        n.span.length = b.offset + b.length - a.offset;
        unit_.nodes.push_back(n);
        return make_node_id(unit_.unit_tag, static_cast<std::uint32_t>(unit_.nodes.size() - 1));
    }

    void check_declarable(const Token& name_tok)
    {
        if (reserved_names().count(name_tok.text))
            fail(name_tok, "reserved name '" + name_tok.text + "' cannot be declared");
    }

    void parse_mode_directive()
    {
        expect_keyword("mode");
        const Token& m = expect_ident();
        if (m.text == "checked")
            unit_.mode = ArithmeticMode::Checked;
        else if (m.text == "unchecked")
            unit_.mode = ArithmeticMode::Unchecked;
        else
            fail(m, "expected 'checked' or 'unchecked'");
        expect_sym(";");
        if (at_ident("mode"))
            fail(peek(), "duplicate mode directive");
    }

    void parse_contract()
    {
        const Token& kw = expect_keyword("contract");
        const Token& name = expect_ident();
        check_declarable(name);
        unit_.name = name.text;
        expect_sym("{");
        while (!at_sym("}"))
        {
            if (at_ident("constructor"))
                parse_constructor();
            else if (at_ident("function"))
                parse_function();
            else if (at_ident("modifier"))
                parse_modifier();
            else if (at_ident("uint256") || at_ident("address") || at_ident("bool") || at_ident("mapping"))
                parse_state_var();
            else
                fail(peek(), "expected contract member");
        }
        const Token& close = expect_sym("}");
        unit_.root = alloc(NodeTag::Contract, kw, close);
    }

    VarType parse_type()
    {
        const Token& t = expect_ident();
        if (t.text == "uint256")
            return VarType::U256;
        if (t.text == "address")
            return VarType::Address;
        if (t.text == "bool")
            return VarType::Bool;
        if (t.text == "mapping")
        {
            expect_sym("(");
            expect_keyword("address");
            expect_sym("=>");
            expect_keyword("uint256");
            expect_sym(")");
            return VarType::MappingAddrU256;
        }
        fail(t, "expected type");
    }

    void parse_state_var()
    {
        const Token& first = peek();
        StateVarDecl decl;
        decl.type = parse_type();
        const Token& name = expect_ident();
        check_declarable(name);
        decl.name = name.text;
        if (at_sym("="))
        {
            next();
            decl.init = parse_expr();
        }
        const Token& semi = expect_sym(";");
        decl.node = alloc(NodeTag::StateVar, first, semi);
        unit_.state_vars.push_back(std::move(decl));
    }

    void parse_constructor()
    {
        const Token& first = expect_keyword("constructor");
        if (unit_.ctor)
            fail(first, "duplicate constructor");
        FunctionDecl fn;
        fn.name = "constructor";
        parse_params(fn);
        if (at_ident("payable"))
        {
            next();
            fn.payable = true;
        }
        const Token& close = parse_block(fn.body);
        fn.node = alloc(NodeTag::Constructor, first, close);
        unit_.ctor = std::move(fn);
    }

    void parse_function()
    {
        const Token& first = expect_keyword("function");
        FunctionDecl fn;
        const Token& name = expect_ident();
        check_declarable(name);
        fn.name = name.text;
        parse_params(fn);
        if (at_ident("payable"))
        {
            next();
            fn.payable = true;
        }
        while (peek().kind == TokKind::Ident)
            fn.modifiers_applied.push_back(next().text);
        const Token& close = parse_block(fn.body);
        fn.node = alloc(NodeTag::Function, first, close);
        unit_.functions.push_back(std::move(fn));
    }

    void parse_modifier()
    {
        const Token& first = expect_keyword("modifier");
        ModifierDecl m;
        const Token& name = expect_ident();
        check_declarable(name);
        m.name = name.text;
        const Token& close = parse_block(m.body);
        m.node = alloc(NodeTag::Modifier, first, close);
        unit_.modifiers.push_back(std::move(m));
    }

    void parse_params(FunctionDecl& fn)
    {
        expect_sym("(");
        if (!at_sym(")"))
        {
            while (true)
            {
                const Token& first = peek();
                Param p;
                p.type = parse_type();
                if (p.type == VarType::MappingAddrU256)
                    fail(first, "mapping is not a valid parameter type");
                const Token& name = expect_ident();
                check_declarable(name);
                p.name = name.text;
                p.node = alloc(NodeTag::Param, first, name);
                fn.params.push_back(std::move(p));
                if (at_sym(","))
                    next();
                else
                    break;
            }
        }
        expect_sym(")");
    }

    // Returns the closing brace token so callers can span the whole block.
    const Token& parse_block(std::vector<Statement>& out)
    {
        expect_sym("{");
        while (!at_sym("}"))
            out.push_back(parse_statement());
        const Token& close = expect_sym("}");
        return close;
    }

    Statement parse_statement()
    {
        const Token& first = peek();
        if (at_ident("require"))
            return parse_require();
        if (at_ident("transfer"))
            return parse_value_move(StmtKind::Transfer);
        if (at_ident("call"))
            return parse_value_move(StmtKind::ExternalCall);
        if (at_ident("send"))
            return parse_value_move(StmtKind::Send);
        if (at_ident("selfdestruct"))
            return parse_selfdestruct();
        if (at_ident("mint") || at_ident("transferToken"))
            return parse_token_op();
        if (at_ident("emit"))
            return parse_emit();
        if (at_ident("if"))
            return parse_if();
        if (at_ident("return"))
            return parse_return();
        if (first.kind == TokKind::Ident)
            return parse_assign();
        fail(first, "expected statement");
    }

    Statement parse_require()
    {
        const Token& first = expect_keyword("require");
        Statement st;
        st.kind = StmtKind::Require;
        expect_sym("(");
        st.exprs.push_back(parse_expr());
        if (at_sym(","))
        {
            next();
            const Token& msg = peek();
            if (msg.kind != TokKind::String)
                fail(msg, "expected string literal");
            st.message = next().text;
        }
        expect_sym(")");
        const Token& semi = expect_sym(";");
        st.node = alloc(NodeTag::Stmt, first, semi, stmt_class(st.kind));
        return st;
    }

    Statement parse_value_move(StmtKind kind)
    {
        const Token& first = next();
        Statement st;
        st.kind = kind;
        expect_sym("(");
        st.exprs.push_back(parse_expr());
        expect_sym(",");
        st.exprs.push_back(parse_expr());
        expect_sym(")");
        const Token& semi = expect_sym(";");
        st.node = alloc(NodeTag::Stmt, first, semi, stmt_class(st.kind));
        return st;
    }

    Statement parse_selfdestruct()
    {
        const Token& first = expect_keyword("selfdestruct");
        Statement st;
        st.kind = StmtKind::Selfdestruct;
        expect_sym("(");
        st.exprs.push_back(parse_expr());
        expect_sym(")");
        const Token& semi = expect_sym(";");
        st.node = alloc(NodeTag::Stmt, first, semi, stmt_class(st.kind));
        return st;
    }

    Statement parse_token_op()
    {
        const Token& first = next();
        Statement st;
        st.kind = StmtKind::TokenOp;
        st.token_op = first.text == "mint" ? TokenOpKind::Mint : TokenOpKind::Transfer;
        expect_sym("(");
        const Token& asset = peek();
        if (asset.kind != TokKind::String)
            fail(asset, "expected asset name string");
        st.asset = next().text;
        expect_sym(",");
        st.exprs.push_back(parse_expr());
        expect_sym(",");
        st.exprs.push_back(parse_expr());
        expect_sym(")");
        const Token& semi = expect_sym(";");
        st.node = alloc(NodeTag::Stmt, first, semi, stmt_class(st.kind));
        return st;
    }

    Statement parse_emit()
    {
        const Token& first = expect_keyword("emit");
        Statement st;
        st.kind = StmtKind::Emit;
        st.message = expect_ident().text;
        expect_sym("(");
        if (!at_sym(")"))
        {
            while (true)
            {
                st.exprs.push_back(parse_expr());
                if (at_sym(","))
                    next();
                else
                    break;
            }
        }
        expect_sym(")");
        const Token& semi = expect_sym(";");
        st.node = alloc(NodeTag::Stmt, first, semi, stmt_class(st.kind));
        return st;
    }

    Statement parse_if()
    {
        const Token& first = expect_keyword("if");
        Statement st;
        st.kind = StmtKind::If;
        expect_sym("(");
        st.exprs.push_back(parse_expr());
        expect_sym(")");
        const Token* close = &parse_block(st.then_body);
        if (at_ident("else"))
        {
            next();
            close = &parse_block(st.else_body);
        }
        st.node = alloc(NodeTag::Stmt, first, *close, stmt_class(st.kind));
        return st;
    }

    Statement parse_return()
    {
        const Token& first = expect_keyword("return");
        Statement st;
        st.kind = StmtKind::Return;
        if (!at_sym(";"))
        {
            st.exprs.push_back(parse_expr());
            st.has_value = true;
        }
        const Token& semi = expect_sym(";");
        st.node = alloc(NodeTag::Stmt, first, semi, stmt_class(st.kind));
        return st;
    }

    Statement parse_assign()
    {
        const Token& first = peek();
        Statement st;
        st.kind = StmtKind::Assign;
        LValue lv;
        const Token& name = expect_ident();
        lv.var = name.text;
        const Token* lv_end = &name;
        if (at_sym("["))
        {
            next();
            lv.key = parse_expr();
            lv_end = &expect_sym("]");
        }
        lv.node = alloc(NodeTag::LValue, first, *lv_end);
        const Token& op = peek();
        if (op.kind != TokKind::Sym ||
            (op.text != "=" && op.text != "+=" && op.text != "-=" && op.text != "*="))
            fail(op, "expected assignment operator");
        next();
        Expr rhs = parse_expr();
        if (op.text != "=")
        {
            // Desugar compound assignment into an explicit self-read. The
            // synthesized read gets fresh nodes spanning the left-hand side.
            Expr self;
            self.name = lv.var;
            if (lv.key)
            {
                self.kind = ExprKind::MappingAccess;
                self.args.push_back(clone_fresh(*lv.key));
            }
            else
                self.kind = ExprKind::Unresolved;
            self.node = alloc_copy_span(NodeTag::Expr, lv.node);
            Expr combined;
            combined.kind = ExprKind::Binary;
            combined.bin_op = op.text == "+=" ? BinOp::Add : op.text == "-=" ? BinOp::Sub : BinOp::Mul;
            const NodeId rhs_node = rhs.node;
            combined.args.push_back(std::move(self));
            combined.args.push_back(std::move(rhs));
            combined.node = alloc_merged_span(NodeTag::Expr, lv.node, rhs_node);
            rhs = std::move(combined);
        }
        st.lvalue = std::move(lv);
        st.exprs.push_back(std::move(rhs));
        const Token& semi = expect_sym(";");
        st.node = alloc(NodeTag::Stmt, first, semi, stmt_class(st.kind));
        return st;
    }

    Expr clone_fresh(const Expr& e)
    {
        Expr out = e;
        out.args.clear();
        for (const auto& a : e.args)
            out.args.push_back(clone_fresh(a));
        out.node = alloc_copy_span(NodeTag::Expr, e.node);
        return out;
    }

    Expr parse_expr()
    {
        return parse_or();
    }

    Expr binary(BinOp op, Expr lhs, Expr rhs)
    {
        Expr e;
        e.kind = ExprKind::Binary;
        e.bin_op = op;
        const NodeId l = lhs.node;
        const NodeId r = rhs.node;
        e.args.push_back(std::move(lhs));
        e.args.push_back(std::move(rhs));
        NodeInfo n;
        n.tag = NodeTag::Expr;
        const auto& ls = unit_.nodes[node_index(l)].span;
        const auto& rs = unit_.nodes[node_index(r)].span;
        n.span = ls;
        n.span.end_line = rs.end_line;
        n.span.end_column = rs.end_column;
        n.span.length = rs.offset + rs.length - ls.offset;
        unit_.nodes.push_back(n);
        e.node = make_node_id(unit_.unit_tag, static_cast<std::uint32_t>(unit_.nodes.size() - 1));
        return e;
    }

    Expr parse_or()
    {
        Expr lhs = parse_and();
        while (at_sym("||"))
        {
            next();
            lhs = binary(BinOp::Or, std::move(lhs), parse_and());
        }
        return lhs;
    }

    Expr parse_and()
    {
        Expr lhs = parse_cmp();
        while (at_sym("&&"))
        {
            next();
            lhs = binary(BinOp::And, std::move(lhs), parse_cmp());
        }
        return lhs;
    }

    Expr parse_cmp()
    {
        Expr lhs = parse_add();
        static const std::pair<const char*, BinOp> ops[] = {
            {"==", BinOp::Eq}, {"!=", BinOp::Ne}, {"<=", BinOp::Le},
            {">=", BinOp::Ge}, {"<", BinOp::Lt},  {">", BinOp::Gt},
        };
        for (const auto& [sym, op] : ops)
            if (at_sym(sym))
            {
                next();
                return binary(op, std::move(lhs), parse_add());
            }
        return lhs;
    }

    Expr parse_add()
    {
        Expr lhs = parse_mul();
        while (at_sym("+") || at_sym("-"))
        {
            const BinOp op = peek().text == "+" ? BinOp::Add : BinOp::Sub;
            next();
            lhs = binary(op, std::move(lhs), parse_mul());
        }
        return lhs;
    }

    Expr parse_mul()
    {
        Expr lhs = parse_unary();
        while (at_sym("*") || at_sym("/") || at_sym("%"))
        {
            const BinOp op =
                peek().text == "*" ? BinOp::Mul : peek().text == "/" ? BinOp::Div : BinOp::Mod;
            next();
            lhs = binary(op, std::move(lhs), parse_unary());
        }
        return lhs;
    }

    Expr parse_unary()
    {
        if (at_sym("!"))
        {
            const Token& first = next();
            Expr e;
            e.kind = ExprKind::Unary;
            e.un_op = UnOp::Not;
            e.args.push_back(parse_unary());
            const auto& inner = unit_.nodes[node_index(e.args[0].node)].span;
            Token last;
            last.line = inner.end_line;
            last.column = inner.end_column;
            last.offset = inner.offset + (inner.length ? inner.length - 1 : 0);
            last.length = 1;
            e.node = alloc(NodeTag::Expr, first, last);
            return e;
        }
        return parse_primary();
    }

    Expr parse_call_like(ExprKind kind, const Token& first, std::size_t min_args, std::size_t max_args)
    {
        Expr e;
        e.kind = kind;
        expect_sym("(");
        if (!at_sym(")"))
        {
            while (true)
            {
                e.args.push_back(parse_expr());
                if (at_sym(","))
                    next();
                else
                    break;
            }
        }
        const Token& close = expect_sym(")");
        if (e.args.size() < min_args || e.args.size() > max_args)
            fail(close, "wrong argument count for '" + first.text + "'");
        e.node = alloc(NodeTag::Expr, first, close);
        return e;
    }

    Expr parse_primary()
    {
        const Token& t = peek();
        if (t.kind == TokKind::Number)
        {
            next();
            Expr e;
            e.kind = ExprKind::Number;
            try
            {
                e.number = u256_from_dec(t.text);
            }
            catch (const std::invalid_argument&)
            {
                fail(t, "number literal out of range");
            }
            e.node = alloc(NodeTag::Expr, t, t);
            return e;
        }
        if (at_sym("("))
        {
            next();
            Expr e = parse_expr();
            expect_sym(")");
            return e;
        }
        if (t.kind != TokKind::Ident)
            fail(t, "expected expression");
        if (t.text == "true" || t.text == "false")
        {
            next();
            Expr e;
            e.kind = ExprKind::BoolLit;
            e.bool_value = t.text == "true";
            e.node = alloc(NodeTag::Expr, t, t);
            return e;
        }
        if (t.text == "msg" || t.text == "tx" || t.text == "block")
        {
            next();
            expect_sym(".");
            const Token& field = expect_ident();
            Expr e;
            e.kind = ExprKind::Builtin;
            if (t.text == "msg" && field.text == "sender")
                e.builtin = Builtin::MsgSender;
            else if (t.text == "msg" && field.text == "value")
                e.builtin = Builtin::MsgValue;
            else if (t.text == "tx" && field.text == "origin")
                e.builtin = Builtin::TxOrigin;
            else if (t.text == "block" && field.text == "number")
                e.builtin = Builtin::BlockNumber;
            else if (t.text == "block" && field.text == "timestamp")
                e.builtin = Builtin::BlockTimestamp;
            else
                fail(field, "unknown builtin '" + t.text + "." + field.text + "'");
            e.node = alloc(NodeTag::Expr, t, field);
            return e;
        }
        if (t.text == "keccak")
        {
            next();
            return parse_call_like(ExprKind::Hash, t, 1, 8);
        }
        if (t.text == "balance")
        {
            next();
            return parse_call_like(ExprKind::BalanceOf, t, 1, 1);
        }
        if (t.text == "blockhash")
        {
            next();
            return parse_call_like(ExprKind::BlockhashOf, t, 1, 1);
        }
        next();
        if (at_sym("["))
        {
            next();
            Expr e;
            e.kind = ExprKind::MappingAccess;
            e.name = t.text;
            e.args.push_back(parse_expr());
            const Token& close = expect_sym("]");
            e.node = alloc(NodeTag::Expr, t, close);
            return e;
        }
        Expr e;
        e.kind = ExprKind::Unresolved;
        e.name = t.text;
        e.node = alloc(NodeTag::Expr, t, t);
        return e;
    }

    // Name resolution: classify bare identifiers as state vars or parameters,
    // check mapping accesses, lvalues, and applied modifier names.
    void resolve()
    {
        std::set<std::string> seen;
        for (const auto& v : unit_.state_vars)
            if (!seen.insert(v.name).second)
                throw ResolveError{"duplicate state variable '" + v.name + "'"};
        seen.clear();
        for (const auto& f : unit_.functions)
            if (!seen.insert(f.name).second)
                throw ResolveError{"duplicate function '" + f.name + "'"};
        seen.clear();
        for (const auto& m : unit_.modifiers)
            if (!seen.insert(m.name).second)
                throw ResolveError{"duplicate modifier '" + m.name + "'"};

        for (auto& v : unit_.state_vars)
            if (v.init)
                resolve_expr(*v.init, nullptr);
        if (unit_.ctor)
            resolve_function(*unit_.ctor);
        for (auto& f : unit_.functions)
            resolve_function(f);
        for (auto& m : unit_.modifiers)
            for (auto& st : m.body)
                resolve_stmt(st, nullptr);
    }

    void resolve_function(FunctionDecl& fn)
    {
        std::set<std::string> seen;
        for (const auto& p : fn.params)
        {
            if (!seen.insert(p.name).second)
                throw ResolveError{"duplicate parameter '" + p.name + "' in " + fn.name};
            if (unit_.find_state_var(p.name))
                throw ResolveError{"parameter '" + p.name + "' shadows a state variable"};
        }
        for (const auto& mod : fn.modifiers_applied)
            if (!unit_.find_modifier(mod))
                throw ResolveError{"unknown modifier '" + mod + "' on " + fn.name};
        for (auto& st : fn.body)
            resolve_stmt(st, &fn);
    }

    void resolve_stmt(Statement& st, const FunctionDecl* fn)
    {
        if (st.lvalue)
        {
            const auto* v = unit_.find_state_var(st.lvalue->var);
            if (!v)
                throw ResolveError{"assignment to undeclared state variable '" + st.lvalue->var + "'"};
            if (st.lvalue->key && v->type != VarType::MappingAddrU256)
                throw ResolveError{"'" + st.lvalue->var + "' is not a mapping"};
            if (!st.lvalue->key && v->type == VarType::MappingAddrU256)
                throw ResolveError{"mapping '" + st.lvalue->var + "' needs a key"};
            if (st.lvalue->key)
                resolve_expr(*st.lvalue->key, fn);
        }
        for (auto& e : st.exprs)
            resolve_expr(e, fn);
        for (auto& s : st.then_body)
            resolve_stmt(s, fn);
        for (auto& s : st.else_body)
            resolve_stmt(s, fn);
    }

    void resolve_expr(Expr& e, const FunctionDecl* fn)
    {
        if (e.kind == ExprKind::Unresolved)
        {
            if (fn)
                for (const auto& p : fn->params)
                    if (p.name == e.name)
                    {
                        e.kind = ExprKind::Param;
                        return;
                    }
            const auto* v = unit_.find_state_var(e.name);
            if (!v)
                throw ResolveError{"undeclared identifier '" + e.name + "'"};
            if (v->type == VarType::MappingAddrU256)
                throw ResolveError{"mapping '" + e.name + "' needs a key"};
            e.kind = ExprKind::StateVar;
            return;
        }
        if (e.kind == ExprKind::MappingAccess)
        {
            const auto* v = unit_.find_state_var(e.name);
            if (!v || v->type != VarType::MappingAddrU256)
                throw ResolveError{"'" + e.name + "' is not a declared mapping"};
        }
        for (auto& a : e.args)
            resolve_expr(a, fn);
    }

    // Fill in parent links. Children were allocated before parents during
    // descent, so this runs once the whole tree exists.
    void link_parents()
    {
        const auto set_parent = [this](NodeId child, NodeId parent) {
            unit_.nodes[node_index(child)].parent = parent;
        };
        const std::function<void(Expr&, NodeId)> link_expr = [&](Expr& e, NodeId parent) {
            set_parent(e.node, parent);
            for (auto& a : e.args)
                link_expr(a, e.node);
        };
        const std::function<void(Statement&, NodeId)> link_stmt = [&](Statement& st, NodeId parent) {
            set_parent(st.node, parent);
            if (st.lvalue)
            {
                set_parent(st.lvalue->node, st.node);
                if (st.lvalue->key)
                    link_expr(*st.lvalue->key, st.lvalue->node);
            }
            for (auto& e : st.exprs)
                link_expr(e, st.node);
            for (auto& s : st.then_body)
                link_stmt(s, st.node);
            for (auto& s : st.else_body)
                link_stmt(s, st.node);
        };
        for (auto& v : unit_.state_vars)
        {
            set_parent(v.node, unit_.root);
            if (v.init)
                link_expr(*v.init, v.node);
        }
        const auto link_fn = [&](FunctionDecl& fn) {
            set_parent(fn.node, unit_.root);
            for (auto& p : fn.params)
                set_parent(p.node, fn.node);
            for (auto& st : fn.body)
                link_stmt(st, fn.node);
        };
        if (unit_.ctor)
            link_fn(*unit_.ctor);
        for (auto& f : unit_.functions)
            link_fn(f);
        for (auto& m : unit_.modifiers)
        {
            set_parent(m.node, unit_.root);
            for (auto& st : m.body)
                link_stmt(st, m.node);
        }
    }
};

}  // namespace

ContractUnit parse(const std::string& source, const std::string& file)
{
    return Parser{source, file}.run();
}

}  // namespace pocval
