#pragma once

#include "qp/verify.hpp"

namespace qp {

// d: degree +1 graded derivation with d(a) = da, d(da) = 0, d(e_i) = 0 and
// d(inv(a)) = -inv(a) d(a a*) inv(a).
Element differential(const Element& x);

// Contractions along a grade-1 poly-vector: the degree -1 double derivation
// i_delta with i_delta(a) = 0, i_delta(da) = delta(a), and the reduced
// contraction imath_delta = circ(i_delta).
Tensor contract_i(const Element& delta, const Element& x);
Element contract_imath(const Element& delta, const Element& x);

// Lie derivatives: L_delta(a) = delta(a), L_delta(da) = d(delta(a)), and
// the reduced version curly-L = circ(L).
Tensor lie_derivative_L(const Element& delta, const Element& x);
Element lie_derivative_script(const Element& delta, const Element& x);

// omega = sum_{epsilon(a)=1} da da* on a doubled quiver.
Element standard_bisymplectic(const QuiverPtr& qbar);

// Degree -1 bracket on forms extending a double bracket on A:
//   {{da, b}} = {{a, db}} = {{a,b}},  {{da, db}} = d {{a,b}},  {{a,b}} = 0.
class KoszulBracket final : public BracketEngine {
public:
    explicit KoszulBracket(const DoubleBracketTable& T)
        : BracketEngine(T.quiver(), 1), table_(&T) {}

protected:
    Tensor base(const Letter& x, const Letter& y) override;

private:
    const DoubleBracketTable* table_;
};

Tensor koszul_bracket(const DoubleBracketTable& T, const Element& x, const Element& y);

// The algebra map Sigma: Omega_B A -> D_B A, da -> H_a.
Element sigma_map(const DoubleBracketTable& T, const Element& x);

// Inverts imath(omega) on the generators (each d/da must map to a rational
// multiple of a single differential letter, bijectively) and assembles
// P = -(imath(omega)^{-1} ox imath(omega)^{-1})(omega).
Element poisson_from_symplectic(const Element& omega);

struct BisymplecticReport {
    Report report;
    Element P;             // derived bivector
    Element recovered_mu;  // solution of d mu_i = imath_{E_i}(omega)
    Rat table_sign;        // sign relating the derived table to the standard one (0 if n/a)
};

// d omega = 0 in DR vs {P,P} = 0 mod commutators, the commuting square
// Sigma d = -{P,-} Sigma on generators, and the moment map recovered by
// solving d mu_i = imath_{E_i}(omega) on closed words of length <= 2.
BisymplecticReport check_bisymplectic_equivalence(const Element& omega, const OracleParams& params = {});

} // namespace qp
