#include <doctest.h>

#include "qp/forms.hpp"
#include "test_util.hpp"

using namespace qp;
using namespace qptest;

TEST_CASE("the differential") {
    auto q = fixture_dP2();
    Element a = Element::arrow(q, "a"), as = Element::arrow(q, "a*");
    Element da = Element::diff(q, 0), das = Element::diff(q, 1);

    SUBCASE("Leibniz on a product") {
        CHECK(differential(multiply(a, as)) == multiply(da, as) + multiply(a, das));
    }
    SUBCASE("d^2 = 0 termwise") {
        CHECK(differential(multiply(da, das)).is_zero());
        CHECK(differential(Element::idempotent(q, 1)).is_zero());
    }
    SUBCASE("d^2 = 0 on random mixed forms") {
        auto qi = with_all_inverted(*q);
        std::mt19937_64 rng(11);
        for (int iter = 0; iter < 30; ++iter) {
            Element x = random_graded_word(qi, rng, 1 + static_cast<int>(rng() % 4), 0, 2, true);
            CHECK(localize_normal_form(differential(differential(x))).is_zero());
        }
    }
    SUBCASE("d commutes with the necklace quotient") {
        std::mt19937_64 rng(13);
        for (int iter = 0; iter < 20; ++iter) {
            Element x = random_graded_word(q, rng, 2 + static_cast<int>(rng() % 3), 0, 2);
            CHECK(necklace_normal_form(differential(x) - differential(necklace_normal_form(x))).is_zero());
        }
    }
    SUBCASE("d of an inverse letter satisfies the derived relation") {
        auto qi = with_all_inverted(*q);
        // d(s (e+aa*)) = 0
        Element s = Element::inverse(qi, 0);
        Element defn = one_plus_aastar(qi, 0);
        CHECK(localize_normal_form(differential(multiply(s, defn))).is_zero());
    }
}

TEST_CASE("contractions") {
    auto q = fixture_dP2();
    Element e1 = Element::idempotent(q, 1), e2 = Element::idempotent(q, 2);

    SUBCASE("i_{d/da}(da) is the unit tensor") {
        CHECK(contract_i(Element::deriv(q, 0), Element::diff(q, 0)) == Tensor::outer({e1, e2}));
        CHECK(contract_i(Element::deriv(q, 0), Element::diff(q, 1)).is_zero());
        CHECK(contract_i(Element::deriv(q, 0), Element::arrow(q, 0)).is_zero());
    }
    SUBCASE("imath on the standard 2-form picks signed single letters") {
        Element omega = standard_bisymplectic(q);
        CHECK(contract_imath(Element::deriv(q, 0), omega) == Element::diff(q, 1));
        CHECK(contract_imath(Element::deriv(q, 1), omega) == -Element::diff(q, 0));
    }
    SUBCASE("Eq A.5: i_d imath_D + sigma_12 i_D imath_d = 0") {
        auto dl = fixture_dL();
        std::mt19937_64 rng(17);
        for (int iter = 0; iter < 20; ++iter) {
            Element d = random_grade1(dl, rng, 1 + static_cast<int>(rng() % 2));
            Element D = random_grade1(dl, rng, 1 + static_cast<int>(rng() % 2));
            Element x = random_graded_word(dl, rng, 2 + static_cast<int>(rng() % 3), 0, 2);
            Tensor lhs = contract_i(d, contract_imath(D, x)) +
                         apply_permutation(Permutation::cycle(2, {1, 2}), contract_i(D, contract_imath(d, x)), true);
            CHECK(lhs.is_zero());
        }
    }
    SUBCASE("wrong grade rejected") {
        CHECK_THROWS_AS(contract_i(Element::arrow(q, 0), Element::diff(q, 0)), AlgebraError);
    }
}

TEST_CASE("lie derivatives") {
    auto q = fixture_dP2();
    SUBCASE("L_d(a) = d(a)") {
        std::mt19937_64 rng(19);
        for (int iter = 0; iter < 15; ++iter) {
            Element d = random_grade1(q, rng, 1 + static_cast<int>(rng() % 3));
            Element a = random_word(q, rng, 1 + static_cast<int>(rng() % 2));
            CHECK(lie_derivative_L(d, a) == apply_double_derivation(d, a));
        }
    }
    SUBCASE("Cartan formula") {
        auto dl = fixture_dL();
        std::mt19937_64 rng(23);
        for (int iter = 0; iter < 25; ++iter) {
            Element d = random_grade1(dl, rng, 1 + static_cast<int>(rng() % 3));
            Element x = random_graded_word(dl, rng, 1 + static_cast<int>(rng() % 4), 0, 2);
            Element resid = lie_derivative_script(d, x) - differential(contract_imath(d, x)) -
                            contract_imath(d, differential(x));
            CHECK(resid.is_zero());
        }
    }
    SUBCASE("script L of gauge elements kills the standard form") {
        for (auto q2 : {fixture_dL(), fixture_dP2()}) {
            Element omega = standard_bisymplectic(q2);
            for (int v : q2->vertices())
                CHECK(lie_derivative_script(gauge_element(q2, v), omega).is_zero());
        }
    }
    SUBCASE("Eq A.6 on random inputs") {
        auto dl = fixture_dL();
        SchoutenBracket S(dl);
        std::mt19937_64 rng(29);
        for (int iter = 0; iter < 20; ++iter) {
            Element d = random_grade1(dl, rng, 1 + static_cast<int>(rng() % 2));
            Element D = random_grade1(dl, rng, 1 + static_cast<int>(rng() % 2));
            Element x = random_graded_word(dl, rng, 2 + static_cast<int>(rng() % 2), 0, 2);
            Tensor lhs = contract_i(d, lie_derivative_script(D, x)) -
                         apply_permutation(Permutation::cycle(2, {1, 2}),
                                           lie_derivative_L(D, contract_imath(d, x)), true);
            // rhs: imath_{l'} ox l'' + r' ox imath_{r''} applied to x
            Tensor br = S.bracket(d, D);
            Tensor rhs(dl, 2);
            for (const auto& [legs, c] : br.terms()) {
                if (word_grade(legs[0], LetterKind::Deriv) == 1) {
                    Element im = contract_imath(Element::single(dl, legs[0]), x);
                    rhs += c * Tensor::outer({im, Element::single(dl, legs[1])});
                } else {
                    Element im = contract_imath(Element::single(dl, legs[1]), x);
                    rhs += c * Tensor::outer({Element::single(dl, legs[0]), im});
                }
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("standard bi-symplectic form") {
    SUBCASE("doubled loop") {
        auto q = fixture_dL();
        Element omega = standard_bisymplectic(q);
        CHECK(omega == multiply(Element::diff(q, 0), Element::diff(q, 1)));
        CHECK(necklace_normal_form(differential(omega)).is_zero());
    }
    SUBCASE("not defined on undoubled quivers") {
        CHECK_THROWS_AS(standard_bisymplectic(fixture_L()), QuiverError);
    }
}

TEST_CASE("deriving the bivector from the form") {
    auto q = fixture_dL();
    Element omega = standard_bisymplectic(q);
    SUBCASE("the derived bivector and its table") {
        Element P = poisson_from_symplectic(omega);
        CHECK(P == multiply(Element::deriv(q, 1), Element::deriv(q, 0)));
        // its induced table is the negative of the standard corner table
        DoubleBracketTable T = table_from_polyvector(P);
        DoubleBracketTable Ts = standard_hamiltonian(q).induced_table();
        for (int a = 0; a < q->arrow_count(); ++a)
            for (int b = a; b < q->arrow_count(); ++b)
                CHECK((T.generator_value(a, b) + Ts.generator_value(a, b)).is_zero());
    }
    SUBCASE("scaling the form inverts the scale of the bivector") {
        Element P1 = poisson_from_symplectic(omega);
        Element P3 = poisson_from_symplectic(Rat(3) * omega);
        CHECK(P3 == rat(1, 3) * P1);
    }
    SUBCASE("degenerate forms rejected") {
        Element bad = multiply(Element::diff(q, 0), Element::diff(q, 0));
        CHECK_THROWS_AS(poisson_from_symplectic(bad), AlgebraError);
        CHECK_THROWS_AS(poisson_from_symplectic(Element(q)), AlgebraError);
    }
}

TEST_CASE("koszul bracket") {
    auto T = table_2_10();
    auto L = T.quiver();
    Element t = Element::arrow(L, "t");
    Element e = Element::idempotent(L, 1);
    Element dt = Element::diff(L, 0);

    SUBCASE("base values") {
        CHECK(koszul_bracket(T, dt, t) == Tensor::outer({t, e}) - Tensor::outer({e, t}));
        CHECK(koszul_bracket(T, t, dt) == Tensor::outer({t, e}) - Tensor::outer({e, t}));
        CHECK(koszul_bracket(T, dt, dt) == Tensor::outer({dt, e}) - Tensor::outer({e, dt}));
        CHECK(koszul_bracket(T, t, t).is_zero());
    }
    SUBCASE("commutes with d in the graded sense") {
        // d{{x,y}} = {{dx,y}} + (-1)^{|x|-1}{{x,dy}} on generators and samples
        std::mt19937_64 rng(31);
        KoszulBracket K(T);
        for (int iter = 0; iter < 20; ++iter) {
            Element x = random_graded_word(L, rng, 1 + static_cast<int>(rng() % 3), 0, 1);
            Element y = random_graded_word(L, rng, 1 + static_cast<int>(rng() % 3), 0, 1);
            int dx = 0;
            x.homogeneous_degree(&dx);
            Tensor br = K.bracket(x, y);
            Tensor dbr(L, 2);
            for (const auto& [legs, c] : br.terms()) {
                Element p = Element::single(L, legs[0]);
                Element r = Element::single(L, legs[1]);
                dbr += c * Tensor::outer({differential(p), r});
                int dp = word_degree(legs[0]);
                Tensor second = Tensor::outer({p, differential(r)});
                dbr += (dp % 2 == 0 ? c : -c) * second;
            }
            Tensor rhs = K.bracket(differential(x), y);
            Tensor second = K.bracket(x, differential(y));
            rhs += ((dx - 1) % 2 == 0 ? Rat(1) : Rat(-1)) * second;
            CHECK(dbr == rhs);
        }
    }
}

TEST_CASE("sigma map") {
    auto T = table_2_10();
    auto L = T.quiver();
    Element t = Element::arrow(L, "t");

    SUBCASE("degree-0 identity") {
        std::mt19937_64 rng(37);
        for (int iter = 0; iter < 10; ++iter) {
            Element x = random_element(L, rng, 2, 3);
            CHECK(sigma_map(T, x) == x);
        }
    }
    SUBCASE("da goes to the hamiltonian field") {
        CHECK(sigma_map(T, Element::diff(L, 0)) == hamiltonian_field(T, t));
        CHECK(sigma_map(T, Element::diff(L, 0)) ==
              multiply(Element::deriv(L, 0), t) - multiply(t, Element::deriv(L, 0)));
    }
    SUBCASE("intertwines the Koszul and Schouten brackets") {
        KoszulBracket K(T);
        std::mt19937_64 rng(41);
        for (int iter = 0; iter < 15; ++iter) {
            Element x = random_graded_word(L, rng, 1 + static_cast<int>(rng() % 2), 0, 1);
            Element y = random_graded_word(L, rng, 1 + static_cast<int>(rng() % 2), 0, 1);
            Tensor kb = K.bracket(x, y);
            Tensor lhs(L, 2);
            for (const auto& [legs, c] : kb.terms())
                lhs += c * Tensor::outer({sigma_map(T, Element::single(L, legs[0])),
                                          sigma_map(T, Element::single(L, legs[1]))});
            Tensor rhs = schouten_double_bracket(sigma_map(T, x), sigma_map(T, y));
            CHECK(lhs == rhs);
        }
    }
    SUBCASE("sigma of the standard form is minus the derived bivector") {
        auto q = fixture_dL();
        Element omega = standard_bisymplectic(q);
        Element P = poisson_from_symplectic(omega);
        DoubleBracketTable Tw = table_from_polyvector(P);
        CHECK(sigma_map(Tw, omega) == -P);
    }
}

TEST_CASE("bisymplectic equivalence") {
    OracleParams params;
    params.points = 2;
    params.max_dim = 2;

    SUBCASE("standard form on the doubled loop and pair") {
        for (auto q : {fixture_dL(), fixture_dP2()}) {
            Element omega = standard_bisymplectic(q);
            auto out = check_bisymplectic_equivalence(omega, params);
            CHECK(out.report.overall() == Status::Proved);
            CHECK(out.table_sign == Rat(-1));
            // recovered mu matches the sign times sum [a, a*] (B-constant aside)
            Element expect(q);
            for (int i = 0; i < q->arrow_count(); ++i)
                if (q->epsilon(i) == 1) {
                    Element a = Element::arrow(q, i), as = Element::arrow(q, q->partner(i));
                    expect += multiply(a, as) - multiply(as, a);
                }
            Element diff = out.recovered_mu - out.table_sign * expect;
            for (const auto& [w, c] : diff.terms()) CHECK(w.is_idempotent());
        }
    }
    SUBCASE("a non-closed perturbation cannot pass") {
        auto q = fixture_dL();
        Element omega = standard_bisymplectic(q) +
                        multiply(Element::diff(q, 0), multiply(Element::arrow(q, 0), Element::diff(q, 1)));
        auto out = check_bisymplectic_equivalence(omega, params);
        CHECK_FALSE(out.report.overall() == Status::Proved);
    }
    SUBCASE("the zero form hits the precondition") {
        auto q = fixture_dL();
        auto out = check_bisymplectic_equivalence(Element(q), params);
        CHECK(out.report.overall() == Status::Error);
    }
}
