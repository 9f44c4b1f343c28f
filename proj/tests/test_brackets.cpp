#include <doctest.h>

#include "qp/verify.hpp"
#include "test_util.hpp"

using namespace qp;
using namespace qptest;

namespace {

// Independent oracle for the k[t] bracket {{t,t}} = t ox 1 - 1 ox t:
// {{u(t), v(t)}} = (u(t1)-u(t2))(v(t1)-v(t2)) / (t1 - t2) in k[t1,t2],
// read back as a tensor via t1^i t2^j -> t^i ox t^j. Polynomials in two
// commuting variables are dense coefficient grids.
struct Poly2 {
    std::map<std::pair<int, int>, Rat> c;

    static Poly2 from_single(const std::vector<Rat>& u, int var) {
        Poly2 p;
        for (size_t k = 0; k < u.size(); ++k) {
            if (u[k] == 0) continue;
            if (var == 1) p.c[{static_cast<int>(k), 0}] = u[k];
            else p.c[{0, static_cast<int>(k)}] = u[k];
        }
        return p;
    }
    Poly2 operator-(const Poly2& o) const {
        Poly2 r = *this;
        for (const auto& [k, v] : o.c) {
            r.c[k] -= v;
            if (r.c[k] == 0) r.c.erase(k);
        }
        return r;
    }
    Poly2 operator*(const Poly2& o) const {
        Poly2 r;
        for (const auto& [k1, v1] : c)
            for (const auto& [k2, v2] : o.c) {
                auto key = std::make_pair(k1.first + k2.first, k1.second + k2.second);
                r.c[key] += v1 * v2;
                if (r.c[key] == 0) r.c.erase(key);
            }
        return r;
    }
    // divide exactly by (t1 - t2)
    Poly2 div_t1_minus_t2() const {
        Poly2 rem = *this;
        Poly2 quo;
        while (!rem.c.empty()) {
            auto it = rem.c.end();
            --it; // largest key: highest t1 degree
            auto [i, j] = it->first;
            REQUIRE(i >= 1);
            Rat lead = it->second;
            quo.c[{i - 1, j}] += lead;
            // rem -= lead * t1^{i-1} t2^j (t1 - t2)
            rem.c[{i, j}] -= lead;
            if (rem.c[{i, j}] == 0) rem.c.erase({i, j});
            rem.c[{i - 1, j + 1}] += lead;
            if (rem.c[{i - 1, j + 1}] == 0) rem.c.erase({i - 1, j + 1});
        }
        return quo;
    }
};

Tensor difference_quotient_oracle(const QuiverPtr& L, const std::vector<Rat>& u, const std::vector<Rat>& v) {
    Poly2 u1 = Poly2::from_single(u, 1), u2 = Poly2::from_single(u, 2);
    Poly2 v1 = Poly2::from_single(v, 1), v2 = Poly2::from_single(v, 2);
    Poly2 prod = (u1 - u2) * (v1 - v2);
    Poly2 q = prod.div_t1_minus_t2();
    Element t = Element::arrow(L, "t");
    Tensor out(L, 2);
    for (const auto& [key, c] : q.c) {
        Element p1 = Element::idempotent(L, 1);
        for (int k = 0; k < key.first; ++k) p1 = multiply(p1, t);
        Element p2 = Element::idempotent(L, 1);
        for (int k = 0; k < key.second; ++k) p2 = multiply(p2, t);
        out += c * Tensor::outer({p1, p2});
    }
    return out;
}

Element power(const Element& t, int n, const Element& e) {
    Element out = e;
    for (int k = 0; k < n; ++k) out = multiply(out, t);
    return out;
}

} // namespace

TEST_CASE("k[t] bracket matches the difference-quotient oracle") {
    auto T = table_2_10();
    auto L = T.quiver();
    Element t = Element::arrow(L, "t");
    Element e = Element::idempotent(L, 1);

    // frozen from the oracle: {{t^2, t}} = t^2 ox 1 - 1 ox t^2
    Tensor expect = difference_quotient_oracle(L, {Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(1)});
    CHECK(expect == Tensor::outer({power(t, 2, e), e}) - Tensor::outer({e, power(t, 2, e)}));
    CHECK(evaluate_double_bracket(T, power(t, 2, e), t) == expect);

    // {{t, t^2}} via the Leibniz expansion equals the oracle too
    CHECK(evaluate_double_bracket(T, t, power(t, 2, e)) ==
          difference_quotient_oracle(L, {Rat(0), Rat(1)}, {Rat(0), Rat(0), Rat(1)}));

    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 12; ++iter) {
        std::vector<Rat> u(1 + rng() % 4), v(1 + rng() % 4);
        for (Rat& x : u) x = rat(static_cast<long>(rng() % 7) - 3);
        for (Rat& x : v) x = rat(static_cast<long>(rng() % 7) - 3);
        Element ue(L), ve(L);
        for (size_t k = 0; k < u.size(); ++k) ue += u[k] * power(t, static_cast<int>(k), e);
        for (size_t k = 0; k < v.size(); ++k) ve += v[k] * power(t, static_cast<int>(k), e);
        CHECK(evaluate_double_bracket(T, ue, ve) == difference_quotient_oracle(L, u, v));
    }
}

TEST_CASE("B-linearity") {
    auto T = table_2_10();
    auto L = T.quiver();
    Element t = Element::arrow(L, "t");
    Element e = Element::idempotent(L, 1);
    CHECK(evaluate_double_bracket(T, e, t).is_zero());
    CHECK(evaluate_double_bracket(T, t, e).is_zero());
}

TEST_CASE("full antisymmetry of the evaluated bracket") {
    std::mt19937_64 rng(87);
    auto q = fixture_dP2();
    DoubleBracketTable T = random_table(q, rng);
    for (int iter = 0; iter < 25; ++iter) {
        Element x = random_element(q, rng, 2, 3);
        Element y = random_element(q, rng, 2, 3);
        Tensor lhs = evaluate_double_bracket(T, x, y);
        Tensor rhs = -apply_permutation(Permutation::cycle(2, {1, 2}), evaluate_double_bracket(T, y, x), false);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("inverse letters extend by the -s(...)s rule") {
    auto op = one_pair_quasi();
    auto q = op.quiver;
    DoubleBracketTable T = op.induced_table();
    Element a = Element::arrow(q, "a");
    Element ias = Element::inverse(q, q->arrow_index("a*"));
    Element as = Element::arrow(q, "a*");
    Element e2 = Element::idempotent(q, 2);
    Tensor direct = evaluate_double_bracket(T, a, ias);
    Tensor inner = evaluate_double_bracket(T, a, e2 + multiply(as, a));
    Tensor expect = -(inner.mul_leg_left(0, ias).mul_leg_right(1, ias));
    CHECK(localize_normal_form(direct - expect).is_zero());
}

TEST_CASE("triple bracket") {
    auto T = table_2_10();
    auto L = T.quiver();
    Element t = Element::arrow(L, "t");
    Element e = Element::idempotent(L, 1);

    SUBCASE("the three summands cancel termwise for 2.10") {
        TableBracket engine(T);
        Tensor s1 = engine.nested_left(t, engine.bracket(t, t));
        Tensor s2 = apply_permutation(Permutation::cycle(3, {1, 2, 3}), engine.nested_left(t, engine.bracket(t, t)), false);
        Tensor s3 = apply_permutation(Permutation::cycle(3, {1, 3, 2}), engine.nested_left(t, engine.bracket(t, t)), false);
        CHECK((s1 + s2 + s3).is_zero());
        CHECK(triple_bracket(T, t, t, t).is_zero());
    }
    SUBCASE("B-linearity in each slot") {
        CHECK(triple_bracket(T, t, t, e).is_zero());
        CHECK(triple_bracket(T, t, e, t).is_zero());
        CHECK(triple_bracket(T, e, t, t).is_zero());
    }
    SUBCASE("the 2.11 bracket is double Poisson") {
        auto T2 = table_2_11();
        Element t2 = Element::arrow(T2.quiver(), "t");
        CHECK(triple_bracket(T2, t2, t2, t2).is_zero());
        CHECK(triple_bracket(T2, multiply(t2, t2), t2, t2).is_zero());
    }
    SUBCASE("cyclic invariance") {
        std::mt19937_64 rng(12);
        auto q = fixture_dP2();
        DoubleBracketTable TR = random_table(q, rng);
        for (int iter = 0; iter < 10; ++iter) {
            Element a = random_word(q, rng, 2), b = random_word(q, rng, 1), c = random_word(q, rng, 2);
            Tensor lhs = triple_bracket(TR, a, b, c);
            Tensor rhs = apply_permutation(Permutation::cycle(3, {1, 2, 3}), triple_bracket(TR, b, c, a), false);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("single bracket") {
    auto T = table_2_10();
    auto L = T.quiver();
    Element t = Element::arrow(L, "t");
    Element e = Element::idempotent(L, 1);
    CHECK(single_bracket(T, t, t).is_zero());
    CHECK(single_bracket(T, t, multiply(t, t)).is_zero());

    SUBCASE("Eq 2.13: {x,y} + {y,x} = 0 mod commutators") {
        std::mt19937_64 rng(9);
        auto q = fixture_dP2();
        DoubleBracketTable TR = random_table(q, rng);
        for (int iter = 0; iter < 20; ++iter) {
            Element x = random_element(q, rng, 2, 3);
            Element y = random_element(q, rng, 2, 3);
            CHECK(necklace_normal_form(single_bracket(TR, x, y) + single_bracket(TR, y, x)).is_zero());
        }
    }
    SUBCASE("Eq 2.14: {bc,a} = {cb,a}") {
        std::mt19937_64 rng(13);
        auto q = fixture_dP2();
        DoubleBracketTable TR = random_table(q, rng);
        for (int iter = 0; iter < 20; ++iter) {
            Element b = random_word(q, rng, 2), c = random_word(q, rng, 2), a = random_word(q, rng, 2);
            CHECK(single_bracket(TR, multiply(b, c), a) == single_bracket(TR, multiply(c, b), a));
        }
    }
}

TEST_CASE("Eq 2.17 relates nested brackets to the triple bracket") {
    std::mt19937_64 rng(301);
    auto q = fixture_dP2();
    DoubleBracketTable T = random_table(q, rng);
    TableBracket engine(T);
    auto act_single = [&](const Element& a, const Tensor& t) {
        // {a, u ox v} = {a,u} ox v + u ox {a,v}
        Tensor out(q, 2);
        for (const auto& [legs, c] : t.terms()) {
            Element u = Element::single(q, legs[0]);
            Element v = Element::single(q, legs[1]);
            out += c * Tensor::outer({engine.single(a, u), v});
            out += c * Tensor::outer({u, engine.single(a, v)});
        }
        return out;
    };
    for (int iter = 0; iter < 12; ++iter) {
        Element a = random_word(q, rng, 2), b = random_word(q, rng, 2), c = random_word(q, rng, 2);
        Tensor lhs = act_single(a, engine.bracket(b, c)) - engine.bracket(engine.single(a, b), c) -
                     engine.bracket(b, engine.single(a, c));
        Tensor rhs = triple_bracket(T, a, b, c).collapse_legs(0) -
                     [&] {
                         Tensor t = triple_bracket(T, b, a, c);
                         // (1 ox m): multiply legs 2,3
                         return t.collapse_legs(1);
                     }();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("restriction to e_i A e_i stays closed at i") {
    std::mt19937_64 rng(41);
    auto q = fixture_dP2();
    DoubleBracketTable T = random_table(q, rng);
    for (int iter = 0; iter < 20; ++iter) {
        Element x = random_word(q, rng, 2);
        Element y = random_word(q, rng, 2);
        x = right_idem(left_idem(x, 1), 1);
        y = right_idem(left_idem(y, 1), 1);
        if (x.is_zero() || y.is_zero()) continue;
        Tensor t = evaluate_double_bracket(T, x, y);
        for (const auto& [legs, c] : t.terms()) {
            CHECK(word_source(*q, legs[0]) == 1);
            CHECK(word_target(*q, legs[1]) == 1);
            CHECK(word_target(*q, legs[0]) == 1);
            CHECK(word_source(*q, legs[1]) == 1);
        }
    }
}

TEST_CASE("the single bracket descends to necklace classes") {
    std::mt19937_64 rng(43);
    auto q = fixture_dP2();
    DoubleBracketTable T = random_table(q, rng);
    for (int iter = 0; iter < 15; ++iter) {
        Element x = random_word(q, rng, 2);
        Element y = random_element(q, rng, 2, 2);
        const Word& w = x.terms().begin()->first;
        if (!word_closed(*q, w) || w.letters.size() < 2) continue;
        Word r;
        r.letters.assign(w.letters.begin() + 1, w.letters.end());
        r.letters.push_back(w.letters.front());
        Element xr = Element::single(q, r);
        CHECK(necklace_normal_form(single_bracket(T, x, y) - single_bracket(T, xr, y)).is_zero());
        // commutators in the argument also die
        Element u = random_word(q, rng, 1), v = random_word(q, rng, 1);
        Element comm = multiply(u, v) - multiply(v, u);
        CHECK(necklace_normal_form(single_bracket(T, comm, y)).is_zero());
    }
}

TEST_CASE("check_double_poisson") {
    OracleParams params;
    params.points = 4;
    params.max_dim = 2;

    SUBCASE("2.10 passes") {
        Report r = check_double_poisson(table_2_10(), params);
        CHECK(r.overall() == Status::Proved);
    }
    SUBCASE("2.11 passes") {
        Report r = check_double_poisson(table_2_11(), params);
        CHECK(r.overall() == Status::Proved);
    }
    SUBCASE("a deliberately broken table fails") {
        auto L = fixture_L();
        Element t = Element::arrow(L, "t");
        Element e = Element::idempotent(L, 1);
        DoubleBracketTable broken(L);
        // 1 ox t is not antisymmetric; the direct expansion of the triple
        // bracket on (t,t,t) is blind to that (B-linearity kills the inner
        // term), so the axiom check is what flags it
        broken.set_value_unchecked(0, 0, Tensor::outer({e, t}));
        CHECK(triple_bracket(broken, t, t, t).is_zero());
        Report r = check_double_poisson(broken, params);
        CHECK(r.overall() == Status::Fail);
        // an antisymmetric non-Poisson value fails through the residual
        DoubleBracketTable odd(L);
        Element t2 = multiply(t, t);
        odd.set_value(0, 0, Tensor::outer({t2, e}) - Tensor::outer({e, t2}));
        CHECK_FALSE(triple_bracket(odd, t, t, t).is_zero());
        Report r2 = check_double_poisson(odd, params);
        CHECK(r2.overall() == Status::Fail);
    }
    SUBCASE("empty quiver passes vacuously") {
        auto q = make_quiver({1}, {});
        DoubleBracketTable T(q);
        Report r = check_double_poisson(T, params);
        CHECK(r.overall() == Status::Proved);
    }
}

TEST_CASE("check_quasi_poisson") {
    OracleParams params;
    params.points = 3;
    params.max_dim = 2;

    SUBCASE("the one-pair structure passes") {
        auto op = one_pair_quasi();
        Report r = check_quasi_poisson(op.induced_table(), params);
        CHECK(r.overall() == Status::Proved);
    }
    SUBCASE("a double Poisson table fails where the gauge cubes act") {
        auto s = standard_hamiltonian(fixture_dL());
        Report r = check_quasi_poisson(s.induced_table(), params);
        CHECK(r.overall() == Status::Fail);
    }
    SUBCASE("the zero bracket fails") {
        DoubleBracketTable T(fixture_dL());
        Report r = check_quasi_poisson(T, params);
        CHECK(r.overall() == Status::Fail);
    }
}

TEST_CASE("check_loday") {
    OracleParams params;
    params.points = 3;
    auto T = table_2_10();
    auto L = T.quiver();
    Element t = Element::arrow(L, "t");
    Element e = Element::idempotent(L, 1);
    Element t2 = multiply(t, t), t3 = multiply(t2, t);

    SUBCASE("explicit samples") {
        std::vector<std::array<Element, 3>> samples = {{t, t2, t3}, {t, t2, e}};
        Report r = check_loday(T, samples, params);
        CHECK(r.overall() == Status::Proved);
    }
    SUBCASE("doubled quiver with the standard structure") {
        auto s = standard_hamiltonian(fixture_dL());
        auto q = s.quiver;
        DoubleBracketTable T2 = s.induced_table();
        Element a = Element::arrow(q, "t"), as = Element::arrow(q, "t*");
        std::vector<std::array<Element, 3>> samples = {{a, as, multiply(a, as)}};
        std::mt19937_64 rng(77);
        for (int k = 0; k < 10; ++k)
            samples.push_back({random_word(q, rng, 2), random_word(q, rng, 2), random_word(q, rng, 3)});
        Report r = check_loday(T2, samples, params);
        CHECK(r.overall() == Status::Proved);
    }
}
