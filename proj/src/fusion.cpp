#include "qp/fusion.hpp"

namespace qp {

FusionMap fuse_quiver(const QuiverPtr& q, int v, int w) {
    if (v == w) throw QuiverError("fusion needs two distinct vertices");
    q->vertex_index(v);
    q->vertex_index(w);
    std::vector<int> vertices;
    for (int u : q->vertices())
        if (u != w) vertices.push_back(u);
    std::vector<Arrow> arrows;
    for (const Arrow& a : q->arrows()) {
        Arrow b = a;
        if (b.tail == w) b.tail = v;
        if (b.head == w) b.head = v;
        arrows.push_back(b);
    }
    auto target = std::make_shared<Quiver>(std::move(vertices), std::move(arrows));
    if (q->doubled()) {
        std::vector<int> partner, epsilon;
        for (int i = 0; i < q->arrow_count(); ++i) {
            partner.push_back(q->partner(i));
            epsilon.push_back(q->epsilon(i));
        }
        target->set_doubling(std::move(partner), std::move(epsilon));
    }
    std::vector<int> inv;
    for (int i = 0; i < q->arrow_count(); ++i)
        if (q->inverted(i)) inv.push_back(i);
    if (!inv.empty()) target->set_inverted(inv);

    FusionMap f;
    f.source = q;
    f.kept = v;
    f.removed = w;
    f.target = target;
    return f;
}

Element transport(const FusionMap& f, const Element& x) {
    Element out(f.target);
    for (const auto& [w, c] : x.terms()) {
        if (w.is_idempotent()) {
            out.add_term(idem_word(w.vertex == f.removed ? f.kept : w.vertex), c);
            continue;
        }
        Word nw;
        for (const Letter& l : w.letters) {
            const std::string& id = f.source->arrow(l.arrow).id;
            int idx = f.target->arrow_index(id);
            if (idx < 0) continue; // connector letters of an ambient vanish under the dictionary
            nw.letters.push_back(Letter{l.kind, idx});
        }
        if (nw.letters.empty()) {
            int s = word_source(*f.source, w);
            out.add_term(idem_word(s == f.removed ? f.kept : s), c);
        } else {
            out.add_term(nw, c);
        }
    }
    return out;
}

Tensor transport(const FusionMap& f, const Tensor& t) {
    Tensor out(f.target, t.arity());
    for (const auto& [legs, c] : t.terms()) {
        std::vector<Element> nl;
        nl.reserve(legs.size());
        for (const Word& w : legs) nl.push_back(transport(f, Element::single(t.quiver(), w)));
        out += c * Tensor::outer(nl);
    }
    return out;
}

Element fuse_polyvector(const Element& P, const FusionMap& f, bool quasi_bivector) {
    int g = 0;
    if (!P.homogeneous_grade(LetterKind::Deriv, &g))
        throw AlgebraError("fuse_polyvector needs a grade-homogeneous poly-vector");
    Element out = transport(f, P);
    if (quasi_bivector) {
        if (g != 2 && !P.is_zero()) throw AlgebraError("quasi fusion applies to grade-2 bivectors");
        Element Ev = transport(f, gauge_element(f.source, f.kept));
        Element Ew = transport(f, gauge_element(f.source, f.removed));
        out -= Rat(1, 2) * multiply(Ev, Ew);
    }
    return out;
}

Element fuse_moment(const Element& m, const FusionMap& f, MomentKind kind) {
    if (kind == MomentKind::Additive) return transport(f, m);
    Element out(f.target);
    for (int u : f.source->vertices()) {
        Element mu = right_idem(left_idem(m, u), u);
        if (u == f.kept) {
            Element mw = right_idem(left_idem(m, f.removed), f.removed);
            out += multiply(transport(f, mu), transport(f, mw));
        } else if (u != f.removed) {
            out += transport(f, mu);
        }
    }
    return out;
}

HamiltonianStructure fuse_structure(const HamiltonianStructure& s, int v, int w) {
    FusionMap f = fuse_quiver(s.quiver, v, w);
    HamiltonianStructure out;
    out.quiver = f.target;
    out.P = fuse_polyvector(s.P, f, true);
    out.moment = fuse_moment(s.moment, f, s.kind);
    out.kind = s.kind;
    out.ordering = s.ordering;
    return out;
}

FusionAmbient fusion_ambient(const QuiverPtr& q, int v, int w) {
    if (v == w) throw QuiverError("fusion needs two distinct vertices");
    std::vector<Arrow> arrows = q->arrows();
    std::string cvw = "c" + std::to_string(v) + "_" + std::to_string(w);
    std::string cwv = "c" + std::to_string(w) + "_" + std::to_string(v);
    if (q->arrow_index(cvw) >= 0 || q->arrow_index(cwv) >= 0)
        throw QuiverError("connector arrow ids already taken");
    arrows.push_back(Arrow{cvw, v, w});
    arrows.push_back(Arrow{cwv, w, v});
    auto abar = std::make_shared<Quiver>(q->vertices(), std::move(arrows));
    for (int i = 0; i < q->arrow_count(); ++i) {
        if (!q->doubled()) break;
        int p = q->partner(i);
        if (p > i) abar->set_partner_pair(i, p);
    }
    std::vector<int> inv;
    for (int i = 0; i < q->arrow_count(); ++i)
        if (q->inverted(i)) inv.push_back(i);
    if (!inv.empty()) abar->set_inverted(inv);
    int icvw = abar->arrow_index(cvw);
    int icwv = abar->arrow_index(cwv);
    abar->set_partner_pair(icvw, icwv);
    abar->add_unit_pair(icvw, icwv);

    FusionAmbient amb;
    amb.abar = abar;
    amb.c_vw = icvw;
    amb.c_wv = icwv;
    return amb;
}

Element embed_in_ambient(const QuiverPtr& abar, const Element& x) {
    Element out(abar);
    for (const auto& [w, c] : x.terms()) {
        if (w.is_idempotent()) {
            out.add_term(w, c);
            continue;
        }
        Word nw;
        for (const Letter& l : w.letters) {
            int idx = abar->arrow_index(x.quiver()->arrow(l.arrow).id);
            if (idx < 0) throw AlgebraError("element does not embed into the ambient quiver");
            nw.letters.push_back(Letter{l.kind, idx});
        }
        out.add_term(nw, c);
    }
    return out;
}

Element trace_map(const Element& x, const Element& e,
                  const std::vector<std::pair<Element, Element>>& decomposition) {
    const QuiverPtr& q = x.quiver();
    Element ee = localize_normal_form(multiply(e, e));
    if (!(ee == localize_normal_form(e))) throw AlgebraError("trace map needs an idempotent");
    Element unit_check(q);
    for (const auto& [p, qq] : decomposition) unit_check += multiply(p, multiply(e, qq));
    if (!(localize_normal_form(unit_check) == Element::unit(q)))
        throw AlgebraError("trace map: decomposition does not multiply to 1");
    Element out(q);
    for (const auto& [p, qq] : decomposition)
        out += multiply(e, multiply(qq, multiply(x, multiply(p, e))));
    return localize_normal_form(out);
}

} // namespace qp
