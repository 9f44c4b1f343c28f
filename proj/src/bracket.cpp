#include "qp/bracket.hpp"

namespace qp {

Tensor BracketEngine::bracket(const Element& x, const Element& y) {
    Tensor out(quiver_, 2);
    if (x.is_zero() || y.is_zero()) return out;
    require_same_quiver(x, Element(quiver_));
    require_same_quiver(y, Element(quiver_));
    for (const auto& [wx, cx] : x.terms())
        for (const auto& [wy, cy] : y.terms()) out += (cx * cy) * bracket_words(wx, wy);
    return out;
}

Tensor BracketEngine::bracket_words(const Word& x, const Word& y) {
    auto key = std::make_pair(x, y);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Tensor out(quiver_, 2);
    const int dx = word_degree(x);
    const int dy = word_degree(y);

    auto flip_of_reverse = [&]() {
        // {{x,y}} = -(-1)^{(|x|-s)(|y|-s)} sigma_(12) {{y,x}}
        Tensor rev = bracket_words(y, x);
        Tensor flipped = apply_permutation(Permutation::cycle(2, {1, 2}), rev, true);
        long e = static_cast<long>(dx - shift_) * (dy - shift_);
        return (e % 2 == 0) ? -flipped : flipped;
    };

    if (x.is_idempotent() || y.is_idempotent()) {
        // B-linear in the last argument; first argument by antisymmetry.
    } else if (y.letters.size() >= 2) {
        // {{x, h.rest}} = (-1)^{(|x|-s)|h|} h {{x, rest}} + {{x, h}} rest
        Word h;
        h.letters.push_back(y.letters.front());
        Word rest;
        rest.letters.assign(y.letters.begin() + 1, y.letters.end());
        Tensor t1 = bracket_words(x, rest).mul_leg_left(0, Element::single(quiver_, h));
        long e = static_cast<long>(dx - shift_) * letter_degree(y.letters.front());
        if (e % 2 != 0) t1 = -t1;
        Tensor t2 = bracket_words(x, h).mul_leg_right(1, Element::single(quiver_, rest));
        out = t1 + t2;
        memo_.emplace(key, out);
        return out;
    } else if (x.letters.size() >= 2) {
        out = flip_of_reverse();
        memo_.emplace(key, out);
        return out;
    } else {
        const Letter& lx = x.letters.front();
        const Letter& ly = y.letters.front();
        if (ly.kind == LetterKind::Inverse) {
            // {{x, s}} = -s {{x, b b*}} s  (outer structure)
            int b = ly.arrow;
            Word bb;
            bb.letters.push_back(Letter{LetterKind::Arrow, b});
            bb.letters.push_back(Letter{LetterKind::Arrow, quiver_->partner(b)});
            Element s = Element::single(quiver_, y);
            Tensor t = bracket_words(x, bb);
            out = -(t.mul_leg_left(0, s).mul_leg_right(1, s));
        } else if (lx.kind == LetterKind::Inverse) {
            out = flip_of_reverse();
        } else {
            out = base(lx, ly);
        }
        memo_.emplace(key, out);
        return out;
    }
    memo_.emplace(key, out);
    return out;
}

Tensor BracketEngine::nested_left(const Element& x, const Tensor& t) {
    Tensor out(quiver_, t.arity() + 1);
    for (const auto& [legs, c] : t.terms()) {
        Tensor b = bracket(x, Element::single(quiver_, legs[0]));
        for (const auto& [blegs, bc] : b.terms()) {
            std::vector<Word> nl;
            nl.reserve(legs.size() + 1);
            nl.push_back(blegs[0]);
            nl.push_back(blegs[1]);
            for (size_t k = 1; k < legs.size(); ++k) nl.push_back(legs[k]);
            out.add_term(nl, c * bc);
        }
    }
    return out;
}

Element BracketEngine::single(const Element& x, const Element& y) { return bracket(x, y).collapse(); }

void DoubleBracketTable::set_value(const std::string& a, const std::string& b, const Tensor& value) {
    int ia = quiver_->arrow_index(a);
    int ib = quiver_->arrow_index(b);
    if (ia < 0 || ib < 0) throw AlgebraError("bracket table references unknown arrow");
    set_value(ia, ib, value);
}

void DoubleBracketTable::set_value(int a, int b, const Tensor& value) {
    if (value.arity() != 2 && !value.is_zero()) throw AlgebraError("bracket value must have arity 2");
    const Arrow& aa = quiver_->arrow(a);
    const Arrow& ab = quiver_->arrow(b);
    for (const auto& [legs, c] : value.terms()) {
        if (word_degree(legs[0]) != 0 || word_degree(legs[1]) != 0)
            throw AlgebraError("bracket values must be degree-0 words");
        if (word_source(*quiver_, legs[0]) != ab.tail || word_target(*quiver_, legs[0]) != aa.head ||
            word_source(*quiver_, legs[1]) != aa.tail || word_target(*quiver_, legs[1]) != ab.head)
            throw AlgebraError("bracket value for (" + aa.id + "," + ab.id + ") has incompatible endpoints");
    }
    if (a == b) {
        Tensor flipped = apply_permutation(Permutation::cycle(2, {1, 2}), value, false);
        if (!(value + flipped).is_zero())
            throw AlgebraError("diagonal bracket value for " + aa.id + " violates antisymmetry");
        values_[{a, b}] = value;
        return;
    }
    if (a < b) values_[{a, b}] = value;
    else values_[{b, a}] = -apply_permutation(Permutation::cycle(2, {1, 2}), value, false);
}

Tensor DoubleBracketTable::generator_value(int a, int b) const {
    if (a <= b) {
        auto it = values_.find({a, b});
        return it == values_.end() ? Tensor::zero(quiver_, 2) : it->second;
    }
    auto it = values_.find({b, a});
    if (it == values_.end()) return Tensor::zero(quiver_, 2);
    return -apply_permutation(Permutation::cycle(2, {1, 2}), it->second, false);
}

Tensor TableBracket::base(const Letter& x, const Letter& y) {
    if (x.kind != LetterKind::Arrow || y.kind != LetterKind::Arrow)
        throw AlgebraError("double bracket on A is only defined on degree-0 letters");
    return table_->generator_value(x.arrow, y.arrow);
}

Tensor evaluate_double_bracket(const DoubleBracketTable& T, const Element& x, const Element& y) {
    TableBracket engine(T);
    return engine.bracket(x, y);
}

Element single_bracket(const DoubleBracketTable& T, const Element& x, const Element& y) {
    return evaluate_double_bracket(T, x, y).collapse();
}

Tensor triple_bracket(const DoubleBracketTable& T, const Element& a, const Element& b, const Element& c) {
    TableBracket engine(T);
    Tensor t1 = engine.nested_left(a, engine.bracket(b, c));
    Tensor t2 = apply_permutation(Permutation::cycle(3, {1, 2, 3}), engine.nested_left(b, engine.bracket(c, a)), false);
    Tensor t3 = apply_permutation(Permutation::cycle(3, {1, 3, 2}), engine.nested_left(c, engine.bracket(a, b)), false);
    return t1 + t2 + t3;
}

std::vector<Element> algebra_generators(const QuiverPtr& q) {
    std::vector<Element> gens;
    for (int i = 0; i < q->arrow_count(); ++i) gens.push_back(Element::arrow(q, i));
    for (int i = 0; i < q->arrow_count(); ++i)
        if (q->inverted(i)) gens.push_back(Element::inverse(q, i));
    return gens;
}

} // namespace qp
