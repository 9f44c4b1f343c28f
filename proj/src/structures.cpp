#include "qp/structures.hpp"

#include <algorithm>

namespace qp {

Element HamiltonianStructure::moment_component(int vertex) const {
    return right_idem(left_idem(moment, vertex), vertex);
}

HamiltonianStructure standard_hamiltonian(const QuiverPtr& qbar) {
    if (!qbar->doubled()) throw QuiverError("standard Hamiltonian structure needs a doubled quiver");
    HamiltonianStructure s;
    s.quiver = qbar;
    s.kind = MomentKind::Additive;
    Element P(qbar), mu(qbar);
    for (int i = 0; i < qbar->arrow_count(); ++i) {
        if (qbar->epsilon(i) != 1) continue;
        int j = qbar->partner(i);
        P += multiply(Element::deriv(qbar, i), Element::deriv(qbar, j));
        Element a = Element::arrow(qbar, i), as = Element::arrow(qbar, j);
        mu += multiply(a, as) - multiply(as, a);
    }
    s.P = P;
    s.moment = mu;
    return s;
}

Element one_plus_aastar(const QuiverPtr& q, int arrow) {
    int j = q->partner(arrow);
    return Element::idempotent(q, q->arrow(arrow).tail) +
           multiply(Element::arrow(q, arrow), Element::arrow(q, j));
}

HamiltonianStructure one_pair_quasi() {
    auto base = make_quiver({1, 2}, {Arrow{"a", 1, 2}});
    auto qb = build_doubled_quiver(*base);
    auto q = with_all_inverted(*qb);
    int ia = q->arrow_index("a");
    int is = q->arrow_index("a*");
    Element da = Element::deriv(q, ia), ds = Element::deriv(q, is);
    Element a = Element::arrow(q, ia), as = Element::arrow(q, is);

    Element P = multiply(da, ds);
    P += Rat(1, 2) * (multiply(multiply(a, da), multiply(ds, as)) -
                      multiply(multiply(as, ds), multiply(da, a)));

    // Phi = (e1 + a a*) + (e2 + a* a)^{-1}, per vertex
    Element Phi = Element::idempotent(q, 1) + multiply(a, as);
    Phi += Element::inverse(q, is);

    HamiltonianStructure s;
    s.quiver = q;
    s.P = P;
    s.moment = Phi;
    s.kind = MomentKind::Multiplicative;
    s.ordering = {ia, is};
    return s;
}

HamiltonianStructure general_quasi(const QuiverPtr& qbar, const std::vector<int>& ordering) {
    if (!qbar->doubled()) throw QuiverError("general quasi structure needs a doubled quiver");
    for (int i = 0; i < qbar->arrow_count(); ++i)
        if (!qbar->inverted(i))
            throw QuiverError("general quasi structure needs every (1 + a a*) inverted");
    // ordering must be a permutation of all arrows
    std::vector<int> sorted = ordering;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < qbar->arrow_count(); ++i)
        if (i >= static_cast<int>(sorted.size()) || sorted[static_cast<size_t>(i)] != i)
            throw QuiverError("ordering is not a total order on the arrows");

    auto rank = [&](int arrow) {
        return static_cast<int>(std::find(ordering.begin(), ordering.end(), arrow) - ordering.begin());
    };

    Element P(qbar);
    for (int i = 0; i < qbar->arrow_count(); ++i) {
        int j = qbar->partner(i);
        // epsilon(a) (1 + a* a) d/da d/da*; a* a is closed at h(a)
        Element one_sa = Element::idempotent(qbar, qbar->arrow(i).head) +
                         multiply(Element::arrow(qbar, j), Element::arrow(qbar, i));
        Element term = multiply(one_sa, multiply(Element::deriv(qbar, i), Element::deriv(qbar, j)));
        P += Rat(qbar->epsilon(i)) * term;
    }
    auto F = [&](int arrow) {
        int j = qbar->partner(arrow);
        return multiply(Element::deriv(qbar, j), Element::arrow(qbar, j)) -
               multiply(Element::arrow(qbar, arrow), Element::deriv(qbar, arrow));
    };
    for (int i = 0; i < qbar->arrow_count(); ++i)
        for (int j = 0; j < qbar->arrow_count(); ++j)
            if (rank(i) < rank(j)) P -= multiply(F(i), F(j));
    P *= Rat(1, 2);

    Element Phi(qbar);
    for (int v : qbar->vertices()) {
        Element f = Element::idempotent(qbar, v);
        for (int r = 0; r < static_cast<int>(ordering.size()); ++r) {
            int arrow = ordering[static_cast<size_t>(r)];
            if (qbar->arrow(arrow).tail != v) continue;
            Element factor = qbar->epsilon(arrow) == 1 ? one_plus_aastar(qbar, arrow)
                                                       : Element::inverse(qbar, arrow);
            f = multiply(f, factor);
        }
        Phi += f;
    }

    HamiltonianStructure s;
    s.quiver = qbar;
    s.P = P;
    s.moment = Phi;
    s.kind = MomentKind::Multiplicative;
    s.ordering = ordering;
    return s;
}

Element necklace_bracket(const Element& x, const Element& y) {
    require_same_quiver(x, y);
    const QuiverPtr& q = x.quiver() ? x.quiver() : y.quiver();
    if (!q) return x;
    HamiltonianStructure s = standard_hamiltonian(q);
    DoubleBracketTable T = s.induced_table();
    return necklace_normal_form(single_bracket(T, x, y));
}

Element preprojective_relation(const QuiverPtr& qbar, const std::map<int, Rat>& lambda) {
    Element rel = standard_hamiltonian(qbar).moment;
    for (const auto& [v, lv] : lambda) rel -= lv * Element::idempotent(qbar, v);
    return rel;
}

Element multiplicative_relation(const QuiverPtr& qbar, const std::map<int, Rat>& qvals,
                                const std::vector<int>& ordering) {
    for (const auto& [v, qv] : qvals)
        if (qv == 0) throw AlgebraError("multiplicative relation needs nonzero q values");
    Element rel = general_quasi(qbar, ordering).moment;
    for (const auto& [v, qv] : qvals) rel -= qv * Element::idempotent(qbar, v);
    return rel;
}

} // namespace qp
