#include "qp/forms.hpp"

#include <sstream>

namespace qp {

namespace {

// d of a single letter, as an element (splice-ready).
Element d_letter(const QuiverPtr& q, const Letter& l) {
    switch (l.kind) {
        case LetterKind::Arrow: {
            Word w;
            w.letters.push_back(Letter{LetterKind::Diff, l.arrow});
            return Element::single(q, w);
        }
        case LetterKind::Diff: return Element::zero(q);
        case LetterKind::Inverse: {
            // d(s) = -s d(a a*) s
            int a = l.arrow;
            int as = q->partner(a);
            Element s = Element::inverse(q, a);
            Element daas = multiply(Element::diff(q, a), Element::arrow(q, as)) +
                           multiply(Element::arrow(q, a), Element::diff(q, as));
            return -multiply(s, multiply(daas, s));
        }
        case LetterKind::Deriv: throw AlgebraError("d is not defined on derivation letters");
    }
    throw AlgebraError("bad letter");
}

} // namespace

Element differential(const Element& x) {
    const QuiverPtr& q = x.quiver();
    Element out(q);
    for (const auto& [w, c] : x.terms()) {
        if (w.is_idempotent()) continue;
        int prefix_deg = 0;
        for (size_t k = 0; k < w.letters.size(); ++k) {
            Element dk = d_letter(q, w.letters[k]);
            if (!dk.is_zero()) {
                Word prefix, suffix;
                prefix.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<long>(k));
                if (prefix.letters.empty()) prefix = idem_word(letter_source(*q, w.letters[k]));
                suffix.letters.assign(w.letters.begin() + static_cast<long>(k) + 1, w.letters.end());
                if (suffix.letters.empty()) suffix = idem_word(letter_target(*q, w.letters[k]));
                Element term = multiply(Element::single(q, prefix), multiply(dk, Element::single(q, suffix)));
                out += (prefix_deg % 2 == 0 ? c : -c) * term;
            }
            prefix_deg += letter_degree(w.letters[k]);
        }
    }
    return out;
}

namespace {

// Generic occurrence expansion of a degree -1 or 0 operator phi on diff
// letters (i_delta / L_delta). `on_diff` gives the A ox A (resp. Omega ox
// Omega) value at a differential letter; `on_zero` the value on degree-0
// letters (empty for i_delta). `op_degree` drives the Koszul prefix sign.
Tensor expand_double_derivation(const QuiverPtr& q, const Word& w, int op_degree,
                                const std::function<Tensor(const Letter&)>& on_letter) {
    Tensor out(q, 2);
    for (size_t k = 0; k < w.letters.size(); ++k) {
        Tensor val = on_letter(w.letters[k]);
        if (val.is_zero()) continue;
        int prefix_deg = 0;
        for (size_t m = 0; m < k; ++m) prefix_deg += letter_degree(w.letters[m]);
        Word prefix, suffix;
        prefix.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<long>(k));
        if (prefix.letters.empty()) prefix = idem_word(letter_source(*q, w.letters[k]));
        suffix.letters.assign(w.letters.begin() + static_cast<long>(k) + 1, w.letters.end());
        if (suffix.letters.empty()) suffix = idem_word(letter_target(*q, w.letters[k]));
        Tensor spliced = val.mul_leg_left(0, Element::single(q, prefix))
                             .mul_leg_right(1, Element::single(q, suffix));
        if ((op_degree * prefix_deg) % 2 != 0) spliced = -spliced;
        out += spliced;
    }
    return out;
}

Element circ(const Tensor& t) {
    // circ(p ox q) = (-1)^{|p||q|} q p
    Element out(t.quiver());
    for (const auto& [legs, c] : t.terms()) {
        Element prod = multiply(Element::single(t.quiver(), legs[1]), Element::single(t.quiver(), legs[0]));
        int sgn = (word_degree(legs[0]) * word_degree(legs[1])) % 2 == 0 ? 1 : -1;
        out += (c * sgn) * prod;
    }
    return out;
}

int require_grade_one(const Element& delta) {
    int g = 0;
    if (!delta.homogeneous_grade(LetterKind::Deriv, &g) || g != 1)
        throw AlgebraError("contraction needs a grade-1 poly-vector");
    return g;
}

} // namespace

Tensor contract_i(const Element& delta, const Element& x) {
    require_grade_one(delta);
    const QuiverPtr& q = x.quiver() ? x.quiver() : delta.quiver();
    Tensor out(q, 2);
    for (const auto& [w, c] : x.terms()) {
        Tensor t = expand_double_derivation(q, w, 1, [&](const Letter& l) {
            if (l.kind != LetterKind::Diff) return Tensor::zero(q, 2);
            return apply_double_derivation(delta, Element::arrow(q, l.arrow));
        });
        out += c * t;
    }
    return out;
}

Element contract_imath(const Element& delta, const Element& x) { return circ(contract_i(delta, x)); }

Tensor lie_derivative_L(const Element& delta, const Element& x) {
    require_grade_one(delta);
    const QuiverPtr& q = x.quiver() ? x.quiver() : delta.quiver();
    Tensor out(q, 2);
    for (const auto& [w, c] : x.terms()) {
        Tensor t = expand_double_derivation(q, w, 0, [&](const Letter& l) {
            if (l.kind == LetterKind::Diff) {
                // L(da) = d(delta(a)), Leibniz across the legs
                Tensor v = apply_double_derivation(delta, Element::arrow(q, l.arrow));
                Tensor dv(q, 2);
                for (const auto& [legs, cv] : v.terms()) {
                    Element p = Element::single(q, legs[0]);
                    Element r = Element::single(q, legs[1]);
                    dv += cv * Tensor::outer({differential(p), r});
                    dv += cv * Tensor::outer({p, differential(r)});
                }
                return dv;
            }
            // degree-0 letter: delta applied to the single-letter element
            Word lw;
            lw.letters.push_back(l);
            return apply_double_derivation(delta, Element::single(q, lw));
        });
        out += c * t;
    }
    return out;
}

Element lie_derivative_script(const Element& delta, const Element& x) {
    return circ(lie_derivative_L(delta, x));
}

Element standard_bisymplectic(const QuiverPtr& qbar) {
    if (!qbar->doubled()) throw QuiverError("the standard 2-form needs a doubled quiver");
    Element out(qbar);
    for (int i = 0; i < qbar->arrow_count(); ++i) {
        if (qbar->epsilon(i) != 1) continue;
        out += multiply(Element::diff(qbar, i), Element::diff(qbar, qbar->partner(i)));
    }
    return out;
}

Tensor KoszulBracket::base(const Letter& x, const Letter& y) {
    const QuiverPtr& q = quiver();
    if (x.kind == LetterKind::Deriv || y.kind == LetterKind::Deriv)
        throw AlgebraError("derivation letters do not enter the Koszul bracket");
    bool dx = x.kind == LetterKind::Diff;
    bool dy = y.kind == LetterKind::Diff;
    if (!dx && !dy) return Tensor::zero(q, 2);
    Tensor v = table_->generator_value(x.arrow, y.arrow);
    if (!dx || !dy) return v;
    // {{da, db}} = d {{a,b}} with Leibniz across the legs
    Tensor out(q, 2);
    for (const auto& [legs, c] : v.terms()) {
        Element p = Element::single(q, legs[0]);
        Element r = Element::single(q, legs[1]);
        out += c * Tensor::outer({differential(p), r});
        out += c * Tensor::outer({p, differential(r)});
    }
    return out;
}

Tensor koszul_bracket(const DoubleBracketTable& T, const Element& x, const Element& y) {
    KoszulBracket engine(T);
    return engine.bracket(x, y);
}

Element sigma_map(const DoubleBracketTable& T, const Element& x) {
    const QuiverPtr& q = T.quiver();
    std::map<int, Element> hfields;
    Element out(q);
    for (const auto& [w, c] : x.terms()) {
        if (w.is_idempotent()) {
            out.add_term(w, c);
            continue;
        }
        Element prod = Element::unit(q);
        for (const Letter& l : w.letters) {
            Element factor(q);
            switch (l.kind) {
                case LetterKind::Arrow: factor = Element::arrow(q, l.arrow); break;
                case LetterKind::Inverse: factor = Element::inverse(q, l.arrow); break;
                case LetterKind::Diff: {
                    auto it = hfields.find(l.arrow);
                    if (it == hfields.end())
                        it = hfields.emplace(l.arrow, hamiltonian_field(T, Element::arrow(q, l.arrow))).first;
                    factor = it->second;
                    break;
                }
                case LetterKind::Deriv:
                    throw AlgebraError("sigma map is defined on forms, not poly-vectors");
            }
            prod = multiply(prod, factor);
        }
        out += c * prod;
    }
    return out;
}

Element poisson_from_symplectic(const Element& omega) {
    const QuiverPtr& q = omega.quiver();
    if (omega.is_zero()) throw AlgebraError("zero form is not bi-non-degenerate");
    // each omega word must be exactly two differential letters
    for (const auto& [w, c] : omega.terms()) {
        if (w.letters.size() != 2 || w.letters[0].kind != LetterKind::Diff ||
            w.letters[1].kind != LetterKind::Diff)
            throw AlgebraError("unsupported 2-form shape (need constant coefficients)");
    }
    // invert imath(omega) on the generators
    std::map<int, std::pair<int, Rat>> image; // d/da -> (c, diff letter index): imath = c d(x)
    for (int i = 0; i < q->arrow_count(); ++i) {
        Element im = contract_imath(Element::deriv(q, i), omega);
        if (im.is_zero()) throw AlgebraError("imath(omega) is not injective on generators");
        if (im.term_count() != 1) throw AlgebraError("imath(omega) image is not a single letter");
        const auto& [w, c] = *im.terms().begin();
        if (w.letters.size() != 1 || w.letters[0].kind != LetterKind::Diff)
            throw AlgebraError("imath(omega) image is not a single differential letter");
        image[i] = {w.letters[0].arrow, c};
    }
    std::map<int, std::pair<int, Rat>> preimage; // diff letter -> (deriv letter, 1/c)
    for (const auto& [i, img] : image) {
        if (preimage.count(img.first)) throw AlgebraError("imath(omega) is not injective on generators");
        preimage[img.first] = {i, Rat(1) / img.second};
    }
    if (static_cast<int>(preimage.size()) != q->arrow_count())
        throw AlgebraError("imath(omega) is not surjective on generators");

    Element P(q);
    for (const auto& [w, c] : omega.terms()) {
        auto [g1, c1] = preimage.at(w.letters[0].arrow);
        auto [g2, c2] = preimage.at(w.letters[1].arrow);
        P += (-c * c1 * c2) * multiply(Element::deriv(q, g1), Element::deriv(q, g2));
    }
    return P;
}

BisymplecticReport check_bisymplectic_equivalence(const Element& omega, const OracleParams& params) {
    BisymplecticReport out;
    Report& rep = out.report;
    rep.command = "check bisymplectic";
    const QuiverPtr& q = omega.quiver();

    try {
        out.P = poisson_from_symplectic(omega);
    } catch (const AlgebraError& e) {
        rep.add("pattern", Status::Error, e.what());
        return out;
    }
    rep.add("pattern", Status::Proved);

    std::string sub;
    Status s_dw = necklace_zero(differential(omega), params, &sub);
    rep.add("domega-zero", s_dw, s_dw == Status::Proved ? "" : sub);
    Status s_pp = necklace_zero(schouten_single(out.P, out.P), params, &sub);
    rep.add("pp-zero", s_pp, s_pp == Status::Proved ? "" : sub);
    bool both = (s_dw == Status::Fail) == (s_pp == Status::Fail);
    rep.add("equivalence", both ? worse(s_dw, s_pp) == Status::Fail ? Status::Proved : worse(s_dw, s_pp)
                                : Status::Fail,
            both ? "conditions agree" : "domega and {P,P} disagree");

    DoubleBracketTable T = table_from_polyvector(out.P);

    // commuting square Sigma d = -{P,-} Sigma on degree-0 and degree-1 generators
    Status square = Status::Proved;
    for (int i = 0; i < q->arrow_count(); ++i) {
        Element a = Element::arrow(q, i);
        Element lhs = sigma_map(T, differential(a));
        Element rhs = -schouten_single(out.P, sigma_map(T, a));
        square = worse(square, element_zero(lhs - rhs, params));
        Element da = Element::diff(q, i);
        Element lhs1 = sigma_map(T, differential(da));
        Element rhs1 = -schouten_single(out.P, sigma_map(T, da));
        square = worse(square, element_zero(lhs1 - rhs1, params));
    }
    rep.add("sigma-square", square);

    // Sigma(omega) = -P (element level)
    Status s_sigma = element_zero(sigma_map(T, omega) + out.P, params, &sub);
    rep.add("sigma-omega-is-minus-p", s_sigma, s_sigma == Status::Proved ? "" : sub);

    // sign relating the derived table to the standard Hamiltonian one
    out.table_sign = Rat(0);
    if (q->doubled()) {
        DoubleBracketTable std_table = standard_hamiltonian(q).induced_table();
        bool plus = true, minus = true;
        for (int a = 0; a < q->arrow_count(); ++a)
            for (int b = a; b < q->arrow_count(); ++b) {
                Tensor va = T.generator_value(a, b);
                Tensor vs = std_table.generator_value(a, b);
                if (!(va - vs).is_zero()) plus = false;
                if (!(va + vs).is_zero()) minus = false;
            }
        if (plus) out.table_sign = Rat(1);
        if (minus) out.table_sign = Rat(-1);
        rep.add("table-sign", out.table_sign == 0 ? Status::Fail : Status::Proved,
                out.table_sign == 0 ? "derived table is not proportional to the standard one"
                                    : "sign " + to_string(out.table_sign));
    }

    // recover mu: solve d mu_i = imath_{E_i} omega over closed words of length <= 2
    std::vector<Word> basis;
    for (int i = 0; i < q->arrow_count(); ++i) {
        Word w;
        w.letters = {Letter{LetterKind::Arrow, i}};
        if (word_closed(*q, w)) basis.push_back(w);
        for (int j = 0; j < q->arrow_count(); ++j) {
            Word w2;
            w2.letters = {Letter{LetterKind::Arrow, i}, Letter{LetterKind::Arrow, j}};
            if (word_composable(*q, w2) && word_closed(*q, w2)) basis.push_back(w2);
        }
    }
    Element mu_total(q);
    Status s_mu = Status::Proved;
    for (int v : q->vertices()) {
        Element rhs = contract_imath(gauge_element(q, v), omega);
        // collect the word support of d(basis) and rhs
        std::map<Word, int> col_of;
        auto col = [&](const Word& w) {
            auto it = col_of.find(w);
            if (it != col_of.end()) return it->second;
            int c = static_cast<int>(col_of.size());
            col_of[w] = c;
            return c;
        };
        std::vector<Element> dbasis;
        for (const Word& w : basis) dbasis.push_back(differential(Element::single(q, w)));
        for (const Element& db : dbasis)
            for (const auto& [w, c] : db.terms()) col(w);
        for (const auto& [w, c] : rhs.terms()) col(w);
        Mat M(static_cast<int>(col_of.size()), static_cast<int>(basis.size()));
        std::vector<Rat> b(col_of.size(), Rat(0));
        for (size_t k = 0; k < basis.size(); ++k)
            for (const auto& [w, c] : dbasis[k].terms()) M.at(col(w), static_cast<int>(k)) = c;
        for (const auto& [w, c] : rhs.terms()) b[static_cast<size_t>(col(w))] = c;
        auto sol = solve_linear(M, b);
        if (!sol) {
            s_mu = Status::Fail;
            break;
        }
        Element mu_v(q);
        for (size_t k = 0; k < basis.size(); ++k) mu_v += (*sol)[k] * Element::single(q, basis[k]);
        mu_total += mu_v;
    }
    out.recovered_mu = mu_total;
    if (s_mu == Status::Fail) {
        rep.add("moment-recovery", Status::Fail, "d mu = imath_E omega has no solution on short words");
    } else {
        // H_{mu_i} = E_i for the derived bracket
        Status ok = Status::Proved;
        for (int v : q->vertices()) {
            Element mu_v = right_idem(left_idem(mu_total, v), v);
            Element diff = hamiltonian_field(T, mu_v) - gauge_element(q, v);
            ok = worse(ok, element_zero(diff, params));
        }
        rep.add("moment-recovery", ok);
    }
    return out;
}

} // namespace qp
