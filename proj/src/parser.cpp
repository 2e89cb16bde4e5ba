#include <cctype>
#include <string>
#include <vector>

#include "inqnl/formula.hpp"

namespace inqnl {

namespace {

enum class Tok {
    AtomName, Bot, Top, Odot,
    Tilde, Question, Window, Kite, KiteOdot,
    And, Or, IDisj,
    Arrow, Iff, Yields, CFact,
    LParen, RParen,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

struct Lexer {
    std::string_view src;
    std::size_t i = 0;
    std::vector<Token> tokens;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) { throw ParseError(msg, at); }

    bool starts_with(std::string_view s) const { return src.substr(i, s.size()) == s; }

    void run() {
        while (i < src.size()) {
            char c = src[i];
            if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
            std::size_t at = i;
            if (starts_with("(.)")) { emit(Tok::Odot, 3, at); continue; }
            if (starts_with("<+.>")) { emit(Tok::KiteOdot, 4, at); continue; }
            if (starts_with("<+>")) { emit(Tok::Kite, 3, at); continue; }
            if (starts_with("<->")) { emit(Tok::Iff, 3, at); continue; }
            if (starts_with("[+]")) { emit(Tok::Window, 3, at); continue; }
            if (starts_with("~>")) { emit(Tok::CFact, 2, at); continue; }
            if (starts_with("->")) { emit(Tok::Arrow, 2, at); continue; }
            if (starts_with("=>")) { emit(Tok::Yields, 2, at); continue; }
            if (starts_with("//")) { emit(Tok::IDisj, 2, at); continue; }
            if (starts_with("\\/")) { emit(Tok::Or, 2, at); continue; }
            switch (c) {
                case '~': emit(Tok::Tilde, 1, at); continue;
                case '?': emit(Tok::Question, 1, at); continue;
                case '&': emit(Tok::And, 1, at); continue;
                case '(': emit(Tok::LParen, 1, at); continue;
                case ')': emit(Tok::RParen, 1, at); continue;
                default: break;
            }
            if (c >= 'a' && c <= 'z') {
                std::size_t j = i + 1;
                while (j < src.size() &&
                       (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                    ++j;
                std::string name(src.substr(i, j - i));
                i = j;
                if (name == "bot") tokens.push_back({Tok::Bot, name, at});
                else if (name == "top") tokens.push_back({Tok::Top, name, at});
                else tokens.push_back({Tok::AtomName, name, at});
                continue;
            }
            fail(std::string("unknown token '") + c + "'", at);
        }
        tokens.push_back({Tok::End, "", src.size()});
    }

    void emit(Tok k, std::size_t len, std::size_t at) {
        tokens.push_back({k, std::string(src.substr(at, len)), at});
        i = at + len;
    }
};

struct Parser {
    const std::vector<Token>& toks;
    std::size_t i = 0;

    const Token& peek() const { return toks[i]; }
    Token take() { return toks[i++]; }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, peek().pos); }

    Formula parse() {
        Formula f = arrows();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

    // Lowest level. All four arrows share one precedence, associate to the
    // right, and may not be mixed in one chain without parentheses.
    Formula arrows() {
        std::vector<Formula> operands{idisj()};
        std::vector<Token> ops;
        while (true) {
            Tok k = peek().kind;
            if (k != Tok::Arrow && k != Tok::Iff && k != Tok::Yields && k != Tok::CFact) break;
            ops.push_back(take());
            operands.push_back(idisj());
        }
        if (ops.empty()) return operands[0];
        for (const Token& t : ops)
            if (t.kind != ops[0].kind)
                throw ParseError("mixing '" + ops[0].text + "' and '" + t.text +
                                     "' requires parentheses",
                                 t.pos);
        Formula acc = operands.back();
        for (std::size_t k = ops.size(); k-- > 0;) {
            Formula lhs = operands[k];
            switch (ops[k].kind) {
                case Tok::Arrow: acc = Formula::impl(lhs, acc); break;
                case Tok::Iff: acc = Formula::iff(lhs, acc); break;
                case Tok::Yields: acc = Formula::yields(lhs, acc); break;
                case Tok::CFact:
                    if (!lhs.is_declarative() || !acc.is_declarative())
                        throw ParseError("'~>' requires declarative arguments", ops[k].pos);
                    acc = Formula::counterfactual(lhs, acc);
                    break;
                default: fail("unreachable");
            }
        }
        return acc;
    }

    Formula idisj() {
        Formula f = disj();
        while (peek().kind == Tok::IDisj) {
            take();
            f = Formula::inq_disj(f, disj());
        }
        return f;
    }

    Formula disj() {
        Formula f = conj();
        while (peek().kind == Tok::Or) {
            take();
            f = Formula::decl_or(f, conj());
        }
        return f;
    }

    Formula conj() {
        Formula f = prefix();
        while (peek().kind == Tok::And) {
            take();
            f = Formula::conj(f, prefix());
        }
        return f;
    }

    Formula prefix() {
        switch (peek().kind) {
            case Tok::Tilde: take(); return Formula::neg(prefix());
            case Tok::Question: take(); return Formula::question(prefix());
            case Tok::Window: take(); return Formula::window(prefix());
            case Tok::Kite: take(); return Formula::kite(prefix());
            case Tok::KiteOdot: take(); return Formula::kite_odot(prefix());
            default: return primary();
        }
    }

    Formula primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::AtomName: return Formula::atom(take().text);
            case Tok::Bot: take(); return Formula::bottom();
            case Tok::Top: take(); return Formula::top();
            case Tok::Odot: take(); return Formula::odot();
            case Tok::LParen: {
                take();
                Formula f = arrows();
                if (peek().kind != Tok::RParen) fail("expected ')'");
                take();
                return f;
            }
            case Tok::End: fail("unexpected end of input");
            default: fail("unexpected '" + t.text + "'");
        }
    }
};

}  // namespace

Formula parse_formula(std::string_view text) {
    Lexer lex{text, 0, {}};
    lex.run();
    Parser p{lex.tokens};
    return p.parse();
}

}  // namespace inqnl
