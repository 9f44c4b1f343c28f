#include "qp/polyvector.hpp"

#include <functional>

namespace qp {

Tensor SchoutenBracket::base(const Letter& x, const Letter& y) {
    const QuiverPtr& q = quiver();
    if (x.kind == LetterKind::Diff || y.kind == LetterKind::Diff)
        throw AlgebraError("differential letters do not enter the Schouten bracket");
    if (x.kind == LetterKind::Deriv && y.kind == LetterKind::Arrow) {
        if (x.arrow != y.arrow) return Tensor::zero(q, 2);
        const Arrow& a = q->arrow(x.arrow);
        return Tensor::from_words(q, {idem_word(a.tail), idem_word(a.head)});
    }
    if (x.kind == LetterKind::Arrow && y.kind == LetterKind::Deriv) {
        if (x.arrow != y.arrow) return Tensor::zero(q, 2);
        const Arrow& a = q->arrow(y.arrow);
        return -Tensor::from_words(q, {idem_word(a.head), idem_word(a.tail)});
    }
    // arrow/arrow and deriv/deriv pairs vanish
    return Tensor::zero(q, 2);
}

Tensor schouten_double_bracket(const Element& p, const Element& q) {
    require_same_quiver(p, q);
    SchoutenBracket engine(p.quiver() ? p.quiver() : q.quiver());
    return engine.bracket(p, q);
}

Element schouten_single(const Element& p, const Element& q) {
    return schouten_double_bracket(p, q).collapse();
}

Element gauge_element(const QuiverPtr& q, int vertex) {
    if (!q->has_vertex(vertex)) throw QuiverError("unknown vertex " + std::to_string(vertex));
    Element e(q);
    for (int i = 0; i < q->arrow_count(); ++i) {
        const Arrow& a = q->arrow(i);
        if (a.head == vertex) {
            Word w;
            w.letters = {Letter{LetterKind::Deriv, i}, Letter{LetterKind::Arrow, i}};
            e.add_term(w, Rat(1));
        }
        if (a.tail == vertex) {
            Word w;
            w.letters = {Letter{LetterKind::Arrow, i}, Letter{LetterKind::Deriv, i}};
            e.add_term(w, Rat(-1));
        }
    }
    return e;
}

Element gauge_sum(const QuiverPtr& q) {
    Element e(q);
    for (int v : q->vertices()) e += gauge_element(q, v);
    return e;
}

namespace {

// Occurrence expansion of the plain letter derivation d/db over a degree-0
// word, with the -s(...)s rule on inverse letters.
Tensor apply_partial(const QuiverPtr& q, int b, const Word& x) {
    Tensor out(q, 2);
    if (x.is_idempotent()) return out;
    const Arrow& ab = q->arrow(b);
    for (size_t k = 0; k < x.letters.size(); ++k) {
        const Letter& l = x.letters[k];
        Word prefix, suffix;
        prefix.letters.assign(x.letters.begin(), x.letters.begin() + static_cast<long>(k));
        if (prefix.letters.empty()) prefix = idem_word(letter_source(*q, l));
        suffix.letters.assign(x.letters.begin() + static_cast<long>(k) + 1, x.letters.end());
        if (suffix.letters.empty()) suffix = idem_word(letter_target(*q, l));
        if (l.kind == LetterKind::Arrow) {
            if (l.arrow != b) continue;
            // value e_t ox e_h spliced into the word
            Tensor val = Tensor::from_words(q, {idem_word(ab.tail), idem_word(ab.head)});
            out += val.mul_leg_left(0, Element::single(q, prefix)).mul_leg_right(1, Element::single(q, suffix));
        } else if (l.kind == LetterKind::Inverse) {
            int c = l.arrow;
            Word cc;
            cc.letters = {Letter{LetterKind::Arrow, c}, Letter{LetterKind::Arrow, q->partner(c)}};
            Tensor inner = apply_partial(q, b, cc);
            if (inner.is_zero()) continue;
            Element s = Element::single(q, letter_word(std::span<const Letter>(&l, 1)));
            Tensor val = -(inner.mul_leg_left(0, s).mul_leg_right(1, s));
            out += val.mul_leg_left(0, Element::single(q, prefix)).mul_leg_right(1, Element::single(q, suffix));
        } else {
            throw AlgebraError("double derivations act on degree-0 elements only");
        }
    }
    return out;
}

// (u d/db v)(x) = (d/db x)' v ox u (d/db x)''   (inner decoration).
Tensor apply_factor(const QuiverPtr& q, const GradeOneFactor& f, const Element& x) {
    Tensor out(q, 2);
    Element lu = Element::single(q, f.left);
    Element rv = Element::single(q, f.right);
    for (const auto& [w, c] : x.terms()) {
        Tensor t = apply_partial(q, f.arrow, w);
        out += c * t.mul_leg_right(0, rv).mul_leg_left(1, lu);
    }
    return out;
}

} // namespace

Element GradeOneFactor::as_element(const QuiverPtr& q) const {
    Element out = Element::single(q, left);
    out = multiply(out, Element::deriv(q, arrow));
    return multiply(out, Element::single(q, right));
}

std::vector<GradeOneFactor> grade_one_factors(const QuiverPtr& q, const Word& w) {
    std::vector<GradeOneFactor> fs;
    std::vector<Letter> pending;
    for (const Letter& l : w.letters) {
        if (l.kind == LetterKind::Deriv) {
            GradeOneFactor f;
            if (fs.empty()) {
                f.left = pending.empty() ? idem_word(letter_source(*q, l)) : letter_word(pending);
            } else {
                if (!pending.empty()) fs.back().right = letter_word(pending);
                f.left = idem_word(letter_source(*q, l));
            }
            pending.clear();
            f.arrow = l.arrow;
            f.right = idem_word(letter_target(*q, l));
            fs.push_back(f);
        } else {
            pending.push_back(l);
        }
    }
    if (!pending.empty()) {
        if (fs.empty()) throw AlgebraError("grade-0 word has no derivation factors");
        fs.back().right = letter_word(pending);
    }
    return fs;
}

Tensor apply_double_derivation(const Element& delta, const Element& x) {
    const QuiverPtr& q = delta.quiver() ? delta.quiver() : x.quiver();
    Tensor out(q, 2);
    if (delta.is_zero() || x.is_zero()) return out;
    require_same_quiver(delta, x);
    int g = 0;
    if (!delta.homogeneous_grade(LetterKind::Deriv, &g) || g != 1)
        throw AlgebraError("apply_double_derivation needs a grade-1 poly-vector");
    for (const auto& [w, c] : delta.terms()) {
        auto fs = grade_one_factors(q, w);
        out += c * apply_factor(q, fs.front(), x);
    }
    return out;
}

Element derivation_to_polyvector(const QuiverPtr& q, const std::map<int, Tensor>& values) {
    Element out(q);
    for (const auto& [arrow, val] : values) {
        if (val.is_zero()) continue;
        if (val.arity() != 2) throw AlgebraError("derivation values must have arity 2");
        const Arrow& a = q->arrow(arrow);
        for (const auto& [legs, c] : val.terms()) {
            if (word_degree(legs[0]) != 0 || word_degree(legs[1]) != 0)
                throw AlgebraError("derivation values must be degree-0");
            if (word_source(*q, legs[0]) != a.tail || word_target(*q, legs[1]) != a.head)
                throw AlgebraError("derivation value for " + a.id + " has incompatible endpoints");
            // delta(a)'' . d/da . delta(a)'
            Element w = Element::single(q, legs[1]);
            w = multiply(w, Element::deriv(q, arrow));
            w = multiply(w, Element::single(q, legs[0]));
            out += c * w;
        }
    }
    return out;
}

Element hamiltonian_field(const DoubleBracketTable& T, const Element& x) {
    int deg = 0;
    if (!x.homogeneous_degree(&deg) || deg != 0)
        throw AlgebraError("hamiltonian_field needs a degree-0 element");
    const QuiverPtr& q = T.quiver();
    TableBracket engine(T);
    std::map<int, Tensor> values;
    for (int i = 0; i < q->arrow_count(); ++i)
        values[i] = engine.bracket(x, Element::arrow(q, i));
    return derivation_to_polyvector(q, values);
}

Tensor bracket_from_polyvector(const Element& Qv, const std::vector<Element>& args) {
    const QuiverPtr& q = Qv.quiver();
    int n = 0;
    if (!Qv.homogeneous_grade(LetterKind::Deriv, &n))
        throw AlgebraError("bracket_from_polyvector needs a grade-homogeneous poly-vector");
    if (n < 1 || static_cast<int>(args.size()) != n)
        throw AlgebraError("bracket arity does not match poly-vector grade");
    for (const Element& a : args) {
        int d = 0;
        if (!a.homogeneous_degree(&d) || d != 0)
            throw AlgebraError("n-bracket arguments must be degree-0");
    }

    Tensor out(q, n);
    for (const auto& [w, cw] : Qv.terms()) {
        auto fs = grade_one_factors(q, w);
        // delta_k(a_k) for every factor/argument pair
        std::vector<std::vector<Tensor>> vals(static_cast<size_t>(n), std::vector<Tensor>(static_cast<size_t>(n)));
        for (int f = 0; f < n; ++f)
            for (int k = 0; k < n; ++k)
                vals[static_cast<size_t>(f)][static_cast<size_t>(k)] =
                    apply_factor(q, fs[static_cast<size_t>(f)], args[static_cast<size_t>(k)]);
        for (int rot = 0; rot < n; ++rot) {
            // factor tuple (delta_{n-rot+1},...,delta_n,delta_1,...) applied per Eq-style slots
            auto factor_at = [&](int k) { return (k - rot % n + n) % n; }; // delta index used at slot position k
            // slot_j = delta_{j-1}(a_{j-1})' . delta_j(a_j)''  (indices mod n)
            Rat sign = ((static_cast<long>(n - 1) * rot) % 2 == 0) ? Rat(1) : Rat(-1);
            // expand the product over tensor terms of each value
            std::vector<const Tensor*> dv(static_cast<size_t>(n));
            for (int k = 0; k < n; ++k)
                dv[static_cast<size_t>(k)] = &vals[static_cast<size_t>(factor_at(k))][static_cast<size_t>(k)];
            std::vector<std::map<std::vector<Word>, Rat>::const_iterator> its(static_cast<size_t>(n));
            std::function<void(int, const Rat&)> rec = [&](int k, const Rat& acc) {
                if (k == n) {
                    std::vector<Word> slots;
                    slots.reserve(static_cast<size_t>(n));
                    Rat coeff = acc;
                    for (int j = 0; j < n; ++j) {
                        int prev = (j - 1 + n) % n;
                        const auto& prev_legs = its[static_cast<size_t>(prev)]->first;
                        const auto& cur_legs = its[static_cast<size_t>(j)]->first;
                        Element prod = word_product(q, prev_legs[0], cur_legs[1]);
                        if (prod.is_zero()) return;
                        slots.push_back(prod.terms().begin()->first);
                        coeff *= prod.terms().begin()->second;
                    }
                    out.add_term(slots, coeff);
                    return;
                }
                for (auto it = dv[static_cast<size_t>(k)]->terms().begin(); it != dv[static_cast<size_t>(k)]->terms().end(); ++it) {
                    its[static_cast<size_t>(k)] = it;
                    rec(k + 1, acc * it->second);
                }
            };
            if (n >= 1) rec(0, cw * sign);
        }
    }
    return out;
}

DoubleBracketTable table_from_polyvector(const Element& P) {
    const QuiverPtr& q = P.quiver();
    int g = 0;
    if (!P.homogeneous_grade(LetterKind::Deriv, &g) || g != 2)
        throw AlgebraError("table_from_polyvector needs a grade-2 poly-vector");
    DoubleBracketTable T(q);
    for (int a = 0; a < q->arrow_count(); ++a) {
        for (int b = a; b < q->arrow_count(); ++b) {
            Tensor v = bracket_from_polyvector(P, {Element::arrow(q, a), Element::arrow(q, b)});
            v = localize_normal_form(v);
            if (!v.is_zero()) T.set_value(a, b, v);
        }
    }
    return T;
}

Element moment_residual(const Element& P, const Element& m_i, int vertex, MomentKind kind) {
    const QuiverPtr& q = P.quiver();
    Element mi = right_idem(left_idem(m_i, vertex), vertex);
    if (!(mi == m_i)) throw AlgebraError("moment component is not closed at its vertex");
    Element lhs = schouten_single(P, m_i);
    Element Ei = gauge_element(q, vertex);
    if (kind == MomentKind::Additive) return lhs + Ei;
    Element half = Rat(1, 2) * (multiply(Ei, m_i) + multiply(m_i, Ei));
    return lhs + half;
}

} // namespace qp
