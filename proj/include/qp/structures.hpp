#pragma once

#include "qp/polyvector.hpp"

namespace qp {

struct HamiltonianStructure {
    QuiverPtr quiver;
    Element P;        // grade-2 poly-vector
    Element moment;   // sum over vertices of e_i m e_i
    MomentKind kind = MomentKind::Additive;
    std::vector<int> ordering; // arrow order used (multiplicative case)

    Element moment_component(int vertex) const;
    DoubleBracketTable induced_table() const { return table_from_polyvector(P); }
};

// P = sum_{a in Q} d/da d/da*, mu = sum_{a in Q} [a, a*] on a doubled quiver.
HamiltonianStructure standard_hamiltonian(const QuiverPtr& qbar);

// The one-pair quasi-Hamiltonian structure on 1 <=> 2 with e1 + a a* and
// e2 + a* a inverted:
//   P   = d/da d/da* + 1/2 (a d/da d/da* a* - a* d/da* d/da a)
//   Phi = (1 + a a*)(1 + a* a)^{-1}
HamiltonianStructure one_pair_quasi();

// The general quasi-Hamiltonian structure on a fully localized doubled
// quiver, for a chosen total arrow ordering (indices into qbar's arrows).
HamiltonianStructure general_quasi(const QuiverPtr& qbar, const std::vector<int>& ordering);

// e_i + a a* as an element, and its inverse letter.
Element one_plus_aastar(const QuiverPtr& q, int arrow);

// Necklace class of the single bracket of the standard Hamiltonian table.
Element necklace_bracket(const Element& x, const Element& y);

// mu - sum_i lambda_i e_i  /  Phi - sum_i q_i e_i.
Element preprojective_relation(const QuiverPtr& qbar, const std::map<int, Rat>& lambda);
Element multiplicative_relation(const QuiverPtr& qbar, const std::map<int, Rat>& qvals,
                                const std::vector<int>& ordering);

} // namespace qp
