#include "starprod/parse.hpp"

#include <cctype>
#include <vector>

namespace starprod {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    size_t pos;
    std::string text;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Number, i, s.substr(i, j - i)});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, i, s.substr(i, j - i)});
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            default:
                throw ParseError(i, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, i, s.substr(i, 1)});
        ++i;
    }
    out.push_back({Tok::End, s.size(), ""});
    return out;
}

class Parser {
public:
    Parser(const std::string& text, VarSpacePtr space)
        : m_tokens(lex(text)), m_space(std::move(space)) {}

    RationalFunction run() {
        RationalFunction value = expr();
        if (peek().kind != Tok::End)
            throw ParseError(peek().pos, "unexpected '" + peek().text + "'");
        return value;
    }

private:
    const Token& peek() const { return m_tokens[m_cursor]; }
    Token take() { return m_tokens[m_cursor++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++m_cursor;
        return true;
    }

    RationalFunction expr() {
        RationalFunction value = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token op = take();
            RationalFunction rhs = term();
            if (op.kind == Tok::Plus)
                value += rhs;
            else
                value -= rhs;
        }
        return value;
    }

    RationalFunction term() {
        RationalFunction value = factor();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Token op = take();
            RationalFunction rhs = factor();
            if (op.kind == Tok::Star) {
                value *= rhs;
            } else {
                if (rhs.is_zero()) throw ParseError(op.pos, "division by zero");
                value /= rhs;
            }
        }
        return value;
    }

    RationalFunction factor() {
        RationalFunction value = base();
        if (accept(Tok::Caret)) {
            const Token e = peek();
            if (e.kind != Tok::Number)
                throw ParseError(e.pos, "exponent must be a natural number");
            take();
            value = value.pow(std::stoi(e.text));
        }
        return value;
    }

    RationalFunction base() {
        const Token t = peek();
        switch (t.kind) {
            case Tok::Number:
                take();
                return RationalFunction::constant(m_space, Rat(BigInt(t.text)));
            case Tok::Ident: {
                take();
                const auto idx = m_space->index(t.text);
                if (!idx)
                    throw ParseError(t.pos, "unknown variable '" + t.text + "'");
                return RationalFunction(Polynomial::variable(m_space, *idx));
            }
            case Tok::LParen: {
                take();
                RationalFunction value = expr();
                if (!accept(Tok::RParen))
                    throw ParseError(peek().pos, "expected ')'");
                return value;
            }
            case Tok::Minus:
                take();
                return -factor();
            default:
                throw ParseError(t.pos, t.kind == Tok::End
                                            ? std::string("unexpected end of input")
                                            : "unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> m_tokens;
    VarSpacePtr m_space;
    size_t m_cursor = 0;
};

} // namespace

RationalFunction parse_expression(const std::string& text, const VarSpacePtr& space) {
    return Parser(text, space).run();
}

Polynomial parse_polynomial(const std::string& text, const VarSpacePtr& space) {
    RationalFunction value = parse_expression(text, space);
    if (!value.is_polynomial())
        throw ParseError(0, "expression is not a polynomial: " + value.str());
    return value.as_polynomial();
}

} // namespace starprod
