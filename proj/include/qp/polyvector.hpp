#pragma once

#include "qp/bracket.hpp"

namespace qp {

// Degree -1 double Schouten-Nijenhuis bracket on D_B A, extended from the
// letter table {{d/da, b}} = [a=b] e_{t(a)} ox e_{h(a)}, {{d/da, d/db}} = 0,
// {{a, b}} = 0 by the graded rules.
class SchoutenBracket final : public BracketEngine {
public:
    explicit SchoutenBracket(QuiverPtr q) : BracketEngine(std::move(q), 1) {}

protected:
    Tensor base(const Letter& x, const Letter& y) override;
};

Tensor schouten_double_bracket(const Element& p, const Element& q);
Element schouten_single(const Element& p, const Element& q);

// E_i = sum_{h(a)=i} d/da . a - sum_{t(a)=i} a . d/da
Element gauge_element(const QuiverPtr& q, int vertex);
Element gauge_sum(const QuiverPtr& q); // E = sum_i E_i

// Apply a grade-1 poly-vector as a double derivation A -> A ox A. Inverse
// letters are handled by delta(s) = -s delta(b b*) s.
Tensor apply_double_derivation(const Element& delta, const Element& x);

// Factorization of a grade-n word into grade-1 pieces u d/da v (the
// degree-0 stretches attach to the derivation letter on their right; the
// trailing stretch joins the last factor).
struct GradeOneFactor {
    Word left;
    int arrow = -1;
    Word right;
    Element as_element(const QuiverPtr& q) const;
};
std::vector<GradeOneFactor> grade_one_factors(const QuiverPtr& q, const Word& w);

// delta = sum_a delta(a)'' d/da delta(a)'  (values keyed by arrow index).
Element derivation_to_polyvector(const QuiverPtr& q, const std::map<int, Tensor>& values);

// H_x = the grade-1 poly-vector with H_x(a) = {{x, a}}_T.
Element hamiltonian_field(const DoubleBracketTable& T, const Element& x);

// The n-bracket {{-,...,-}}_Qv of a homogeneous grade-n poly-vector: the
// cyclic sum with signs (-1)^{(n-1)i} over rotations of the grade-1 factors
// of each word of Qv.
Tensor bracket_from_polyvector(const Element& Qv, const std::vector<Element>& args);

// Table of the induced double bracket of a grade-2 poly-vector on the
// quiver's generators.
DoubleBracketTable table_from_polyvector(const Element& P);

// Residual of the moment identity at one vertex:
//   additive:        {P, m_i} + E_i
//   multiplicative:  {P, m_i} + 1/2 (E_i m_i + m_i E_i)
// Zero (element-level in D_{A/B}) iff the identity holds.
enum class MomentKind { Additive, Multiplicative };
Element moment_residual(const Element& P, const Element& m_i, int vertex, MomentKind kind);

} // namespace qp
