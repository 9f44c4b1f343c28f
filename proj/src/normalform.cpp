#include "qp/normalform.hpp"

namespace qp {

namespace {

// Returns true and fills `out` if some rule applies to w; out receives the
// rewritten element (which may need further rewriting).
bool rewrite_once(const QuiverPtr& q, const Word& w, Element& out) {
    const auto& ls = w.letters;
    for (size_t i = 0; i < ls.size(); ++i) {
        // inv(a) a a* -> e - inv(a)
        if (ls[i].kind == LetterKind::Inverse && i + 2 < ls.size()) {
            int a = ls[i].arrow;
            if (ls[i + 1].kind == LetterKind::Arrow && ls[i + 1].arrow == a &&
                ls[i + 2].kind == LetterKind::Arrow && ls[i + 2].arrow == q->partner(a)) {
                Word keep_e, keep_inv;
                keep_e.letters.assign(ls.begin(), ls.begin() + static_cast<long>(i));
                keep_e.letters.insert(keep_e.letters.end(), ls.begin() + static_cast<long>(i) + 3, ls.end());
                if (keep_e.letters.empty()) keep_e = idem_word(q->arrow(a).tail);
                keep_inv.letters.assign(ls.begin(), ls.begin() + static_cast<long>(i) + 1);
                keep_inv.letters.insert(keep_inv.letters.end(), ls.begin() + static_cast<long>(i) + 3, ls.end());
                out = Element::zero(q);
                out.add_term(keep_e, Rat(1));
                out.add_term(keep_inv, Rat(-1));
                return true;
            }
        }
        // a a* inv(a) -> e - inv(a)
        if (ls[i].kind == LetterKind::Arrow && i + 2 < ls.size()) {
            int a = ls[i].arrow;
            if (ls[i + 1].kind == LetterKind::Arrow && ls[i + 1].arrow == q->partner(a) &&
                ls[i + 2].kind == LetterKind::Inverse && ls[i + 2].arrow == a) {
                Word keep_e, keep_inv;
                keep_e.letters.assign(ls.begin(), ls.begin() + static_cast<long>(i));
                keep_e.letters.insert(keep_e.letters.end(), ls.begin() + static_cast<long>(i) + 3, ls.end());
                if (keep_e.letters.empty()) keep_e = idem_word(q->arrow(a).tail);
                keep_inv.letters.assign(ls.begin(), ls.begin() + static_cast<long>(i));
                keep_inv.letters.push_back(Letter{LetterKind::Inverse, a});
                keep_inv.letters.insert(keep_inv.letters.end(), ls.begin() + static_cast<long>(i) + 3, ls.end());
                out = Element::zero(q);
                out.add_term(keep_e, Rat(1));
                out.add_term(keep_inv, Rat(-1));
                return true;
            }
        }
        // unit pairs: f g -> e_{t(f)}
        if (ls[i].kind == LetterKind::Arrow && i + 1 < ls.size() && ls[i + 1].kind == LetterKind::Arrow) {
            int up = q->unit_partner(ls[i].arrow);
            if (up >= 0 && ls[i + 1].arrow == up) {
                Word keep;
                keep.letters.assign(ls.begin(), ls.begin() + static_cast<long>(i));
                keep.letters.insert(keep.letters.end(), ls.begin() + static_cast<long>(i) + 2, ls.end());
                if (keep.letters.empty()) keep = idem_word(q->arrow(ls[i].arrow).tail);
                out = Element::zero(q);
                out.add_term(keep, Rat(1));
                return true;
            }
        }
    }
    return false;
}

Element normal_form_word(const QuiverPtr& q, const Word& w) {
    Element probe;
    if (!rewrite_once(q, w, probe)) return Element::single(q, w);
    Element out(q);
    for (const auto& [w2, c2] : probe.terms()) out += c2 * normal_form_word(q, w2);
    return out;
}

bool word_reducible(const QuiverPtr& q, const Word& w) {
    Element probe;
    return rewrite_once(q, w, probe);
}

// One cyclic step l_1...l_n -> l_2...l_n l_1, Koszul sign for moving the
// first letter past the rest.
std::pair<Word, int> rotate_once(const Word& w) {
    Word r;
    r.letters.assign(w.letters.begin() + 1, w.letters.end());
    r.letters.push_back(w.letters.front());
    int rest_deg = 0;
    for (size_t k = 1; k < w.letters.size(); ++k) rest_deg += letter_degree(w.letters[k]);
    int sign = (letter_degree(w.letters.front()) * rest_deg) % 2 == 0 ? 1 : -1;
    return {r, sign};
}

Element necklace_word(const QuiverPtr& q, const Word& w);

Element necklace_element(const Element& x) {
    Element out(x.quiver());
    for (const auto& [w, c] : x.terms()) out += c * necklace_word(x.quiver(), w);
    return out;
}

Element necklace_word(const QuiverPtr& q, const Word& w) {
    if (w.is_idempotent()) return Element::single(q, w);
    if (!word_closed(*q, w)) return Element::zero(q);
    if (word_reducible(q, w)) return necklace_element(normal_form_word(q, w));

    Word cur = w;
    int sign = 1;
    Word best = w;
    int best_sign = 1;
    size_t n = w.letters.size();
    for (size_t step = 0; step + 1 < n; ++step) {
        auto [next, s] = rotate_once(cur);
        cur = next;
        sign *= s;
        if (word_reducible(q, cur)) {
            Element red = normal_form_word(q, cur);
            return Rat(sign) * necklace_element(red);
        }
        if (cur == w && sign == -1) return Element::zero(q); // w = -w over Q
        if (cur < best) {
            best = cur;
            best_sign = sign;
        } else if (cur == best && sign != best_sign) {
            return Element::zero(q);
        }
    }
    return Element::single(q, best, Rat(best_sign));
}

} // namespace

Element localize_normal_form(const Element& x) {
    if (x.is_zero()) return x;
    Element out(x.quiver());
    for (const auto& [w, c] : x.terms()) out += c * normal_form_word(x.quiver(), w);
    return out;
}

Tensor localize_normal_form(const Tensor& t) {
    if (t.is_zero()) return t;
    Tensor out(t.quiver(), t.arity());
    for (const auto& [legs, c] : t.terms()) {
        std::vector<Element> nfs;
        nfs.reserve(legs.size());
        for (const Word& w : legs) nfs.push_back(normal_form_word(t.quiver(), w));
        Tensor prod = Tensor::outer(nfs);
        out += c * prod;
    }
    return out;
}

Element necklace_normal_form(const Element& x) {
    if (x.is_zero()) return x;
    return necklace_element(localize_normal_form(x));
}

} // namespace qp
