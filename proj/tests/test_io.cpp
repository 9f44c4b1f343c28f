#include <doctest.h>

#include <sstream>

#include "qp/cli.hpp"
#include "qp/io.hpp"
#include "test_util.hpp"

using namespace qp;
using namespace qptest;

TEST_CASE("quiver files round-trip") {
    SUBCASE("plain") {
        std::string text = R"({"vertices": [1, 2], "arrows": [{"id": "a", "tail": 1, "head": 2}]})";
        QuiverPtr q = parse_quiver_json(text);
        CHECK(q->arrow_count() == 1);
        std::string s1 = serialize_quiver_json(*q);
        QuiverPtr q2 = parse_quiver_json(s1);
        CHECK(q->same_as(*q2));
        CHECK(serialize_quiver_json(*q2) == s1);
    }
    SUBCASE("doubling sugar and inverses") {
        std::string text =
            R"({"vertices": [1, 2], "arrows": [{"id": "a", "tail": 1, "head": 2}], "double": true, "invert": ["a", "a*"]})";
        QuiverPtr q = parse_quiver_json(text);
        CHECK(q->arrow_count() == 2);
        CHECK(q->doubled());
        CHECK(q->inverted(0));
        CHECK(q->inverted(1));
        QuiverPtr q2 = parse_quiver_json(serialize_quiver_json(*q));
        CHECK(q->same_as(*q2));
    }
    SUBCASE("explicit order") {
        std::string text =
            R"({"vertices": [1], "arrows": [{"id": "x", "tail": 1, "head": 1}, {"id": "y", "tail": 1, "head": 1}], "order": ["y", "x"]})";
        QuiverPtr q = parse_quiver_json(text);
        CHECK(q->arrow(0).id == "y");
        CHECK(q->arrow(1).id == "x");
    }
    SUBCASE("bad references rejected") {
        CHECK_THROWS(parse_quiver_json(R"({"vertices": [1], "arrows": [{"id": "a", "tail": 1, "head": 3}]})"));
        CHECK_THROWS(parse_quiver_json(
            R"({"vertices": [1], "arrows": [{"id": "a", "tail": 1, "head": 1}], "invert": ["zz"]})"));
    }
}

TEST_CASE("expression grammar") {
    auto q = with_all_inverted(*fixture_dP2());
    Element a = Element::arrow(q, "a");
    Element as = Element::arrow(q, "a*");

    SUBCASE("stars bind to names unless a name follows") {
        CHECK(parse_element(q, "a*a") == multiply(a, a)); // = 0 here
        CHECK(parse_element(q, "a**a") == multiply(as, a));
        CHECK(parse_element(q, "a*a*") == multiply(a, as));
        CHECK(parse_element(q, "a* * a*") == Element(q)); // a* a* does not compose
    }
    SUBCASE("tokens") {
        CHECK(parse_element(q, "e(1)") == Element::idempotent(q, 1));
        CHECK(parse_element(q, "D(a)") == Element::deriv(q, 0));
        CHECK(parse_element(q, "d(a*)") == Element::diff(q, 1));
        CHECK(parse_element(q, "inv(a)") == Element::inverse(q, 0));
        CHECK(parse_element(q, "1/2 a*a* + -1/2 a*a*").is_zero());
        CHECK(parse_element(q, "3 e(1)") == Rat(3) * Element::idempotent(q, 1));
    }
    SUBCASE("tensors") {
        Tensor t = parse_tensor(q, "a @ a* + 2 e(1) @ e(1)");
        Tensor expect = Tensor::outer({a, as}) + Rat(2) * Tensor::outer({Element::idempotent(q, 1),
                                                                         Element::idempotent(q, 1)});
        CHECK(t == expect);
        // the UTF-8 tensor sign works too
        CHECK(parse_tensor(q, "a \xE2\x8A\x97 a*") == Tensor::outer({a, as}));
    }
    SUBCASE("errors carry line and column") {
        try {
            parse_element(q, "a *\n  ?");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
            CHECK(e.column == 3);
        }
        CHECK_THROWS_AS(parse_element(q, "zz"), ParseError);
        CHECK_THROWS_AS(parse_element(q, "e(9)"), ParseError);
        CHECK_THROWS_AS(parse_element(q, "a a"), ParseError);
    }
}

TEST_CASE("serialization round-trips") {
    auto q = with_all_inverted(*fixture_dP2());
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 30; ++iter) {
        Element x(q);
        for (int k = 0; k < 3; ++k)
            x += rat(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3)) *
                 random_graded_word(q, rng, 1 + static_cast<int>(rng() % 4), 1, 1, true);
        CHECK(parse_element(q, serialize(x)) == x);
    }
    for (int iter = 0; iter < 20; ++iter) {
        Tensor t(q, 2);
        for (int k = 0; k < 3; ++k) {
            Element l1 = random_graded_word(q, rng, 1 + static_cast<int>(rng() % 3), 1, 0, true);
            Element l2 = random_graded_word(q, rng, 1 + static_cast<int>(rng() % 3), 0, 1, true);
            t += rat(static_cast<long>(rng() % 9) - 4) * Tensor::outer({l1, l2});
        }
        CHECK(parse_tensor(q, serialize(t)) == t);
    }
}

TEST_CASE("bracket table files") {
    auto T = table_2_10();
    std::string text = serialize_bracket_json(T);
    DoubleBracketTable T2 = parse_bracket_json(text);
    CHECK(T2.quiver()->same_as(*T.quiver()));
    CHECK(T2.generator_value(0, 0) == T.generator_value(0, 0));
    CHECK(serialize_bracket_json(T2) == text);
}

TEST_CASE("structure files") {
    for (bool multiplicative : {false, true}) {
        HamiltonianStructure s =
            multiplicative ? one_pair_quasi() : standard_hamiltonian(fixture_dL());
        std::string text = serialize_structure_json(s);
        HamiltonianStructure s2 = parse_structure_json(text);
        CHECK(s2.quiver->same_as(*s.quiver));
        CHECK(s2.P == s.P);
        CHECK(s2.moment == s.moment);
        CHECK(s2.kind == s.kind);
        CHECK(serialize_structure_json(s2) == text);
    }
}

TEST_CASE("cli runs are deterministic and report exact statuses") {
    auto run = [](const std::vector<std::string>& args) {
        std::vector<const char*> argv;
        argv.push_back("qpcalc");
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return std::make_pair(code, out.str());
    };
    auto [c1, o1] = run({"verify", "quasi-poisson", "--builtin", "one-pair"});
    CHECK(c1 == 0);
    CHECK(o1.find("RESULT PROVED") != std::string::npos);
    auto [c2, o2] = run({"verify", "quasi-poisson", "--builtin", "one-pair"});
    CHECK(o1 == o2);

    auto [c3, o3] = run({"verify", "moment", "--builtin", "one-pair"});
    CHECK(c3 == 0);
    CHECK(o3.find("RESULT PROVED") != std::string::npos);

    auto [c4, o4] = run({"necklace", "--help"});
    (void)o4;
}
