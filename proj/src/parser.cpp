#include <cctype>
#include <optional>

#include "idsolver/errors.hpp"
#include "idsolver/lang.hpp"

namespace idsolver {

namespace {

enum class Tok {
    End, Int, Ident,
    KwTrue, KwFalse, KwNot, KwExists, KwForall, KwIn, KwOr, KwMod,
    LParen, RParen, Comma, DotDot, Amp,
    Iff, Implies,
    Eq, Ne, Lt, Gt, Le, Ge,
    Plus, Minus, Star, Slash,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

const char* describe(Tok t) {
    switch (t) {
        case Tok::End: return "end of input";
        case Tok::Int: return "integer";
        case Tok::Ident: return "identifier";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::DotDot: return "'..'";
        default: return "token";
    }
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1;
    int column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
            ++i;
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {  // comment to end of line
            while (i < text.size() && text[i] != '\n') {
                advance(1);
            }
            continue;
        }
        Token tok;
        tok.line = line;
        tok.column = column;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                ++j;
            }
            tok.kind = Tok::Int;
            tok.text = std::string(text.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(tok));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
                ++j;
            }
            tok.text = std::string(text.substr(i, j - i));
            if (tok.text == "true") tok.kind = Tok::KwTrue;
            else if (tok.text == "false") tok.kind = Tok::KwFalse;
            else if (tok.text == "not") tok.kind = Tok::KwNot;
            else if (tok.text == "exists") tok.kind = Tok::KwExists;
            else if (tok.text == "forall") tok.kind = Tok::KwForall;
            else if (tok.text == "in") tok.kind = Tok::KwIn;
            else if (tok.text == "or") tok.kind = Tok::KwOr;
            else if (tok.text == "mod") tok.kind = Tok::KwMod;
            else tok.kind = Tok::Ident;
            advance(j - i);
            out.push_back(std::move(tok));
            continue;
        }
        static constexpr std::pair<std::string_view, Tok> kSymbols[] = {
            {"<=>", Tok::Iff}, {"=>", Tok::Implies}, {"<=", Tok::Le}, {">=", Tok::Ge},
            {"/=", Tok::Ne},   {"..", Tok::DotDot},  {"=", Tok::Eq},  {"<", Tok::Lt},
            {">", Tok::Gt},    {"+", Tok::Plus},     {"-", Tok::Minus}, {"*", Tok::Star},
            {"/", Tok::Slash}, {"(", Tok::LParen},   {")", Tok::RParen}, {",", Tok::Comma},
            {"&", Tok::Amp},
        };
        bool matched = false;
        for (const auto& [sym, kind] : kSymbols) {
            if (text.substr(i, sym.size()) == sym) {
                tok.kind = kind;
                tok.text = std::string(sym);
                advance(sym.size());
                out.push_back(std::move(tok));
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw SyntaxError(std::string("unexpected character '") + c + "'", line, column);
        }
    }
    Token end;
    end.kind = Tok::End;
    end.line = line;
    end.column = column;
    out.push_back(end);
    return out;
}

std::optional<CmpOp> relop(Tok t) {
    switch (t) {
        case Tok::Eq: return CmpOp::Eq;
        case Tok::Ne: return CmpOp::Ne;
        case Tok::Lt: return CmpOp::Lt;
        case Tok::Gt: return CmpOp::Gt;
        case Tok::Le: return CmpOp::Le;
        case Tok::Ge: return CmpOp::Ge;
        default: return std::nullopt;
    }
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    PredPtr parse_all() {
        PredPtr p = pred();
        if (peek().kind != Tok::End) {
            fail("unexpected '" + peek().text + "'");
        }
        return p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }

    bool accept(Tok t) {
        if (peek().kind == t) {
            ++pos_;
            return true;
        }
        return false;
    }

    const Token& expect(Tok t, const char* what) {
        if (peek().kind != t) {
            fail(std::string("expected ") + what);
        }
        return toks_[pos_++];
    }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::End ? describe(Tok::End) : "'" + t.text + "'";
        throw SyntaxError(msg + ", found " + found, t.line, t.column);
    }

    PredPtr pred() { return iff(); }

    PredPtr iff() {
        PredPtr p = impl();
        while (accept(Tok::Iff)) {
            p = Pred::iff(p, impl());
        }
        return p;
    }

    PredPtr impl() {
        PredPtr p = disj();
        if (accept(Tok::Implies)) {
            return Pred::implies(p, impl());
        }
        return p;
    }

    PredPtr disj() {
        PredPtr p = conj();
        while (accept(Tok::KwOr)) {
            p = Pred::disj(p, conj());
        }
        return p;
    }

    PredPtr conj() {
        PredPtr p = atom();
        while (accept(Tok::Amp)) {
            p = Pred::conj(p, atom());
        }
        return p;
    }

    PredPtr atom() {
        switch (peek().kind) {
            case Tok::KwTrue: ++pos_; return Pred::truth(true);
            case Tok::KwFalse: ++pos_; return Pred::truth(false);
            case Tok::KwNot: {
                ++pos_;
                expect(Tok::LParen, "'(' after not");
                PredPtr p = pred();
                expect(Tok::RParen, "')'");
                return Pred::negation(p);
            }
            case Tok::KwExists:
            case Tok::KwForall: {
                bool is_exists = peek().kind == Tok::KwExists;
                ++pos_;
                expect(Tok::LParen, "'(' after quantifier");
                std::string var = expect(Tok::Ident, "quantified variable").text;
                expect(Tok::Comma, "',' after quantified variable");
                PredPtr body = pred();
                expect(Tok::RParen, "')'");
                return is_exists ? Pred::exists(var, body) : Pred::forall(var, body);
            }
            case Tok::Ident:
                if (toks_[pos_ + 1].kind == Tok::KwIn) {
                    std::string var = peek().text;
                    pos_ += 2;
                    ExprPtr lo = expr();
                    expect(Tok::DotDot, "'..' in interval");
                    ExprPtr hi = expr();
                    return Pred::in(var, lo, hi);
                }
                return comparison();
            case Tok::LParen: {
                // Either "(" pred ")" or a comparison whose left side starts
                // with a parenthesized expression.
                std::size_t start = pos_;
                try {
                    return comparison();
                } catch (const SyntaxError& as_expr) {
                    std::size_t expr_reach = pos_;
                    pos_ = start;
                    try {
                        ++pos_;
                        PredPtr p = pred();
                        expect(Tok::RParen, "')'");
                        return p;
                    } catch (const SyntaxError&) {
                        if (expr_reach > pos_) {
                            throw as_expr;
                        }
                        throw;
                    }
                }
            }
            default:
                return comparison();
        }
    }

    PredPtr comparison() {
        ExprPtr lhs = expr();
        auto op = relop(peek().kind);
        if (!op) {
            fail("expected comparison operator");
        }
        ++pos_;
        ExprPtr rhs = expr();
        return Pred::compare(*op, lhs, rhs);
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (accept(Tok::Plus)) {
                e = Expr::bin(ArithOp::Add, e, term());
            } else if (accept(Tok::Minus)) {
                e = Expr::bin(ArithOp::Sub, e, term());
            } else {
                return e;
            }
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (accept(Tok::Star)) {
                e = Expr::bin(ArithOp::Mul, e, factor());
            } else if (accept(Tok::Slash)) {
                e = Expr::bin(ArithOp::Div, e, factor());
            } else if (accept(Tok::KwMod)) {
                e = Expr::bin(ArithOp::Mod, e, factor());
            } else {
                return e;
            }
        }
    }

    ExprPtr factor() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int: {
                // Reject literals beyond the supported magnitude.
                if (t.text.size() > 19) {
                    throw OverflowError("integer literal out of range: " + t.text);
                }
                unsigned long long v = std::stoull(t.text);
                if (v > static_cast<unsigned long long>(kIntLimit)) {
                    throw OverflowError("integer literal out of range: " + t.text);
                }
                ++pos_;
                return Expr::lit(static_cast<Int>(v));
            }
            case Tok::Ident:
                ++pos_;
                return Expr::var(t.text);
            case Tok::Minus:
                ++pos_;
                return Expr::neg(factor());
            case Tok::LParen: {
                ++pos_;
                ExprPtr e = expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            default:
                fail("expected expression");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

PredPtr parse(std::string_view text) {
    Parser parser(tokenize(text));
    return parser.parse_all();
}

}  // namespace idsolver
