#include "qp/element.hpp"

#include <sstream>

namespace qp {

int letter_source(const Quiver& q, const Letter& l) {
    const Arrow& a = q.arrow(l.arrow);
    switch (l.kind) {
        case LetterKind::Arrow: return a.tail;
        case LetterKind::Inverse: return a.tail;
        case LetterKind::Deriv: return a.head;
        case LetterKind::Diff: return a.tail;
    }
    throw AlgebraError("bad letter kind");
}

int letter_target(const Quiver& q, const Letter& l) {
    const Arrow& a = q.arrow(l.arrow);
    switch (l.kind) {
        case LetterKind::Arrow: return a.head;
        case LetterKind::Inverse: return a.tail;
        case LetterKind::Deriv: return a.tail;
        case LetterKind::Diff: return a.head;
    }
    throw AlgebraError("bad letter kind");
}

Word idem_word(int vertex) {
    Word w;
    w.vertex = vertex;
    return w;
}

Word letter_word(std::span<const Letter> letters) {
    Word w;
    w.letters.assign(letters.begin(), letters.end());
    return w;
}

int word_source(const Quiver& q, const Word& w) {
    return w.is_idempotent() ? w.vertex : letter_source(q, w.letters.front());
}

int word_target(const Quiver& q, const Word& w) {
    return w.is_idempotent() ? w.vertex : letter_target(q, w.letters.back());
}

bool word_closed(const Quiver& q, const Word& w) {
    return word_source(q, w) == word_target(q, w);
}

int word_degree(const Word& w) {
    int d = 0;
    for (const Letter& l : w.letters) d += letter_degree(l);
    return d;
}

int word_grade(const Word& w, LetterKind kind) {
    int g = 0;
    for (const Letter& l : w.letters) g += (l.kind == kind) ? 1 : 0;
    return g;
}

bool word_composable(const Quiver& q, const Word& w) {
    for (size_t i = 0; i + 1 < w.letters.size(); ++i)
        if (letter_target(q, w.letters[i]) != letter_source(q, w.letters[i + 1])) return false;
    return true;
}

Element Element::idempotent(QuiverPtr q, int vertex) {
    if (!q->has_vertex(vertex)) throw AlgebraError("unknown vertex " + std::to_string(vertex));
    Element x(std::move(q));
    x.add_term(idem_word(vertex), Rat(1));
    return x;
}

Element Element::unit(QuiverPtr q) {
    Element x(q);
    for (int v : q->vertices()) x.add_term(idem_word(v), Rat(1));
    return x;
}

Element Element::single(QuiverPtr q, Word w, Rat coeff) {
    Element x(std::move(q));
    x.add_term(w, coeff);
    return x;
}

Element Element::arrow(QuiverPtr q, const std::string& id) {
    int i = q->arrow_index(id);
    if (i < 0) throw AlgebraError("unknown arrow " + id);
    return arrow(std::move(q), i);
}

static Element one_letter(QuiverPtr q, LetterKind kind, int idx) {
    if (idx < 0 || idx >= q->arrow_count()) throw AlgebraError("bad arrow index");
    Word w;
    w.letters.push_back(Letter{kind, idx});
    return Element::single(std::move(q), w);
}

Element Element::arrow(QuiverPtr q, int idx) { return one_letter(std::move(q), LetterKind::Arrow, idx); }

Element Element::inverse(QuiverPtr q, int idx) {
    if (!q->inverted(idx))
        throw AlgebraError("arrow " + q->arrow(idx).id + " is not inverted in this quiver");
    return one_letter(std::move(q), LetterKind::Inverse, idx);
}

Element Element::deriv(QuiverPtr q, int idx) { return one_letter(std::move(q), LetterKind::Deriv, idx); }
Element Element::diff(QuiverPtr q, int idx) { return one_letter(std::move(q), LetterKind::Diff, idx); }

void Element::add_term(const Word& w, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Element& Element::operator+=(const Element& o) {
    if (quiver_ == nullptr) quiver_ = o.quiver_;
    else if (!o.is_zero()) require_same_quiver(*this, o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    if (quiver_ == nullptr) quiver_ = o.quiver_;
    else if (!o.is_zero()) require_same_quiver(*this, o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

Element& Element::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms_) coeff *= c;
    return *this;
}

bool Element::homogeneous_degree(int* deg) const {
    int d = -1;
    for (const auto& [w, c] : terms_) {
        int wd = word_degree(w);
        if (d < 0) d = wd;
        else if (d != wd) return false;
    }
    if (deg) *deg = (d < 0 ? 0 : d);
    return true;
}

bool Element::homogeneous_grade(LetterKind kind, int* grade) const {
    int g = -1;
    for (const auto& [w, c] : terms_) {
        int wg = word_grade(w, kind);
        if (g < 0) g = wg;
        else if (g != wg) return false;
    }
    if (grade) *grade = (g < 0 ? 0 : g);
    return true;
}

int Element::max_grade(LetterKind kind) const {
    int g = 0;
    for (const auto& [w, c] : terms_) g = std::max(g, word_grade(w, kind));
    return g;
}

Element Element::grade_part(LetterKind kind, int grade) const {
    Element out(quiver_);
    for (const auto& [w, c] : terms_)
        if (word_grade(w, kind) == grade) out.add_term(w, c);
    return out;
}

Element word_product(const QuiverPtr& q, const Word& x, const Word& y) {
    Element out(q);
    if (x.is_idempotent()) {
        if (x.vertex == word_source(*q, y)) out.add_term(y, Rat(1));
        return out;
    }
    if (y.is_idempotent()) {
        if (y.vertex == word_target(*q, x)) out.add_term(x, Rat(1));
        return out;
    }
    if (word_target(*q, x) != word_source(*q, y)) return out;
    Word w;
    w.letters = x.letters;
    w.letters.insert(w.letters.end(), y.letters.begin(), y.letters.end());
    out.add_term(w, Rat(1));
    return out;
}

Element multiply(const Element& x, const Element& y) {
    if (x.is_zero()) return x;
    if (y.is_zero()) return y;
    require_same_quiver(x, y);
    Element out(x.quiver());
    for (const auto& [wx, cx] : x.terms()) {
        for (const auto& [wy, cy] : y.terms()) {
            Element p = word_product(x.quiver(), wx, wy);
            for (const auto& [w, c] : p.terms()) out.add_term(w, cx * cy * c);
        }
    }
    return out;
}

Element left_idem(const Element& x, int vertex) {
    Element out(x.quiver());
    for (const auto& [w, c] : x.terms())
        if (word_source(*x.quiver(), w) == vertex) out.add_term(w, c);
    return out;
}

Element right_idem(const Element& x, int vertex) {
    Element out(x.quiver());
    for (const auto& [w, c] : x.terms())
        if (word_target(*x.quiver(), w) == vertex) out.add_term(w, c);
    return out;
}

Element graded_commutator(const Element& x, const Element& y) {
    int dx = 0, dy = 0;
    if (!x.homogeneous_degree(&dx) || !y.homogeneous_degree(&dy))
        throw AlgebraError("graded commutator needs homogeneous inputs");
    Element out = multiply(x, y);
    Element yx = multiply(y, x);
    if ((dx * dy) % 2 == 0) out -= yx;
    else out += yx;
    return out;
}

void require_same_quiver(const Element& a, const Element& b) {
    if (a.quiver() == b.quiver()) return;
    if (a.quiver() && b.quiver() && a.quiver()->same_as(*b.quiver())) return;
    throw AlgebraError("operands live over different quivers");
}

std::string to_display(const Quiver& q, const Word& w) {
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

std::string to_display(const Element& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : x.terms()) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << to_string(c) << " ";
        os << to_display(*x.quiver(), w);
    }
    return os.str();
}

} // namespace qp
