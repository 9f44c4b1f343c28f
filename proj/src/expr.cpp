#include "qp/expr.hpp"

#include <cctype>
#include <sstream>

namespace qp {

namespace {

enum class Tok { End, Plus, Minus, Star, At, LParen, RParen, Number, Ident, EFunc, InvFunc, DFunc, DiffFunc };

struct Lexer {
    std::string_view s;
    size_t pos = 0;
    int line = 1, col = 1;

    Tok tok = Tok::End;
    std::string text;
    int tok_line = 1, tok_col = 1;

    explicit Lexer(std::string_view str) : s(str) { next(); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_line, tok_col); }

    char peek(size_t off = 0) const { return pos + off < s.size() ? s[pos + off] : '\0'; }

    void advance() {
        if (pos < s.size()) {
            if (s[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }

    static bool namechar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    void next() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) advance();
        tok_line = line;
        tok_col = col;
        text.clear();
        if (pos >= s.size()) {
            tok = Tok::End;
            return;
        }
        char c = s[pos];
        // UTF-8 tensor sign
        if (static_cast<unsigned char>(c) == 0xE2 && pos + 2 < s.size() &&
            static_cast<unsigned char>(s[pos + 1]) == 0x8A && static_cast<unsigned char>(s[pos + 2]) == 0x97) {
            advance();
            advance();
            advance();
            tok = Tok::At;
            return;
        }
        switch (c) {
            case '+': advance(); tok = Tok::Plus; return;
            case '-': advance(); tok = Tok::Minus; return;
            case '*': advance(); tok = Tok::Star; return;
            case '@': advance(); tok = Tok::At; return;
            case '(': advance(); tok = Tok::LParen; return;
            case ')': advance(); tok = Tok::RParen; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                text += peek();
                advance();
            }
            if (peek() == '/' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
                text += '/';
                advance();
                while (std::isdigit(static_cast<unsigned char>(peek()))) {
                    text += peek();
                    advance();
                }
            }
            tok = Tok::Number;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (namechar(peek())) {
                text += peek();
                advance();
            }
            // trailing stars belong to the name when not followed by a name
            // character (so "t*t" is a product, "t**t" starts with "t*")
            while (peek() == '*' && !namechar(peek(1)) && peek(1) != '(') {
                text += '*';
                advance();
            }
            if ((text == "e" || text == "inv" || text == "D" || text == "d") && peek() == '(') {
                std::string head = text;
                advance(); // (
                text.clear();
                while (peek() != ')' && peek() != '\0') {
                    if (!std::isspace(static_cast<unsigned char>(peek()))) text += peek();
                    advance();
                }
                if (peek() != ')') fail("missing ')' after " + head + "(");
                advance();
                // allow a trailing star on the inner name as well
                while (peek() == '*' && !namechar(peek(1))) {
                    text += '*';
                    advance();
                }
                if (head == "e") tok = Tok::EFunc;
                else if (head == "inv") tok = Tok::InvFunc;
                else if (head == "D") tok = Tok::DFunc;
                else tok = Tok::DiffFunc;
                return;
            }
            tok = Tok::Ident;
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

struct Parser {
    Lexer lex;
    QuiverPtr q;

    Parser(QuiverPtr quiver, std::string_view text) : lex(text), q(std::move(quiver)) {}

    int arrow(const std::string& id) {
        int i = q->arrow_index(id);
        if (i < 0) lex.fail("unknown arrow id '" + id + "'");
        return i;
    }

    Rat number(const std::string& text) {
        Rat r(text);
        r.canonicalize();
        return r;
    }

    // factor ::= e(i) | inv(a) | D(a) | d(a) | ident | number | ( sum )
    Element factor() {
        switch (lex.tok) {
            case Tok::EFunc: {
                int v = 0;
                try {
                    v = std::stoi(lex.text);
                } catch (...) {
                    lex.fail("bad vertex id '" + lex.text + "'");
                }
                if (!q->has_vertex(v)) lex.fail("unknown vertex " + lex.text);
                lex.next();
                return Element::idempotent(q, v);
            }
            case Tok::InvFunc: {
                int a = arrow(lex.text);
                if (!q->inverted(a)) lex.fail("arrow '" + q->arrow(a).id + "' is not inverted");
                lex.next();
                return Element::inverse(q, a);
            }
            case Tok::DFunc: {
                int a = arrow(lex.text);
                lex.next();
                return Element::deriv(q, a);
            }
            case Tok::DiffFunc: {
                int a = arrow(lex.text);
                lex.next();
                return Element::diff(q, a);
            }
            case Tok::Ident: {
                int a = arrow(lex.text);
                lex.next();
                return Element::arrow(q, a);
            }
            case Tok::Number: {
                Rat r = number(lex.text);
                lex.next();
                return r * Element::unit(q);
            }
            case Tok::LParen: {
                lex.next();
                Element e = sum_leg();
                if (lex.tok != Tok::RParen) lex.fail("missing ')'");
                lex.next();
                return e;
            }
            default: lex.fail("expected a word factor");
        }
    }

    static bool factor_start(Tok t) {
        return t == Tok::EFunc || t == Tok::InvFunc || t == Tok::DFunc || t == Tok::DiffFunc ||
               t == Tok::Ident || t == Tok::Number || t == Tok::LParen;
    }

    // ['-'] [rational] factor ('*' factor)*  -- the rational prefix needs no '*'
    Element term_leg() {
        Rat coeff(1);
        if (lex.tok == Tok::Minus) {
            coeff = -coeff;
            lex.next();
        }
        if (lex.tok == Tok::Number) {
            coeff = number(lex.text);
            lex.next();
            if (lex.tok == Tok::Star) lex.next();
            if (!factor_start(lex.tok)) return coeff * Element::unit(q);
        }
        Element e = factor();
        while (lex.tok == Tok::Star) {
            lex.next();
            e = multiply(e, factor());
        }
        return coeff * e;
    }

    Element sum_leg() {
        bool neg = false;
        if (lex.tok == Tok::Minus) {
            neg = true;
            lex.next();
        }
        Element e = term_leg();
        if (neg) e = -e;
        while (lex.tok == Tok::Plus || lex.tok == Tok::Minus) {
            bool minus = lex.tok == Tok::Minus;
            lex.next();
            Element t = term_leg();
            e += minus ? -t : t;
        }
        return e;
    }

    // term ::= leg ('@' leg)*  -> tensor of the outer product
    Tensor tensor_term() {
        bool neg = false;
        if (lex.tok == Tok::Minus) {
            neg = true;
            lex.next();
        }
        std::vector<Element> legs{term_leg()};
        while (lex.tok == Tok::At) {
            lex.next();
            legs.push_back(term_leg());
        }
        Tensor t = Tensor::outer(legs);
        return neg ? -t : t;
    }

    Tensor tensor_sum() {
        Tensor t = tensor_term();
        while (lex.tok == Tok::Plus || lex.tok == Tok::Minus) {
            bool minus = lex.tok == Tok::Minus;
            lex.next();
            Tensor u = tensor_term();
            t += minus ? -u : u;
        }
        if (lex.tok != Tok::End) lex.fail("unexpected trailing input");
        return t;
    }
};

} // namespace

Element parse_element(const QuiverPtr& q, const std::string& text) {
    Parser p(q, text);
    Element e = p.sum_leg();
    if (p.lex.tok != Tok::End) p.lex.fail("unexpected trailing input");
    return e;
}

Tensor parse_tensor(const QuiverPtr& q, const std::string& text) {
    Parser p(q, text);
    return p.tensor_sum();
}

namespace {

std::string word_text(const Quiver& q, const Word& w) {
    if (w.is_idempotent()) return "e(" + std::to_string(w.vertex) + ")";
    std::string s;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) s += "*";
        const Letter& l = w.letters[i];
        const std::string& id = q.arrow(l.arrow).id;
        switch (l.kind) {
            case LetterKind::Arrow: s += id; break;
            case LetterKind::Inverse: s += "inv(" + id + ")"; break;
            case LetterKind::Deriv: s += "D(" + id + ")"; break;
            case LetterKind::Diff: s += "d(" + id + ")"; break;
        }
    }
    return s;
}

std::string coeff_prefix(const Rat& c, bool first) {
    std::string s;
    Rat a = c;
    bool neg = c < 0;
    if (neg) a = -c;
    if (first) s = neg ? "-" : "";
    else s = neg ? " - " : " + ";
    if (a != 1) s += to_string(a) + " ";
    return s;
}

} // namespace

std::string serialize(const Element& x) {
    if (x.is_zero()) return "0 e(" + (x.quiver() && !x.quiver()->vertices().empty()
                                          ? std::to_string(x.quiver()->vertices().front())
                                          : std::string("0")) +
                            ")";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : x.terms()) {
        s += coeff_prefix(c, first);
        s += word_text(*x.quiver(), w);
        first = false;
    }
    return s;
}

std::string serialize(const Tensor& t) {
    if (t.is_zero()) return "0 e(" + (t.quiver() && !t.quiver()->vertices().empty()
                                          ? std::to_string(t.quiver()->vertices().front())
                                          : std::string("0")) +
                            ")";
    std::string s;
    bool first = true;
    for (const auto& [legs, c] : t.terms()) {
        s += coeff_prefix(c, first);
        for (size_t k = 0; k < legs.size(); ++k) {
            if (k) s += " @ ";
            s += word_text(*t.quiver(), legs[k]);
        }
        first = false;
    }
    return s;
}

} // namespace qp
