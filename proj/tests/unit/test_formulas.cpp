#include "euclid/errors.hpp"
#include "euclid/formulas.hpp"
#include "euclid/semantics.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace euclid;

TEST_CASE("modal parser expands derived connectives") {
    CHECK(parse_modal("p -> q") == ModalFormula::disj(ModalFormula::neg(ModalFormula::var("p")), ModalFormula::var("q")));
    CHECK(parse_modal("dia p") == ModalFormula::neg(ModalFormula::box(ModalFormula::neg(ModalFormula::var("p")))));
    CHECK(parse_modal("[U] p") == ModalFormula::conj(ModalFormula::var("p"), ModalFormula::box(ModalFormula::box(ModalFormula::var("p")))));
    CHECK(parse_modal("top") == ModalFormula::neg(ModalFormula::bot()));
    CHECK(parse_modal("p -> q -> r") == parse_modal("p -> (q -> r)"));
    CHECK(parse_modal("p | q & r") == parse_modal("p | (q & r)"));
}

TEST_CASE("modal measures") {
    auto m = measures(parse_modal("box p -> box box q"));
    CHECK(m.vars == std::set<std::string>{"p", "q"});
    CHECK(m.depth == 2);
    CHECK(measures(parse_modal("p")).len == 1);
}

TEST_CASE("modal printing round trips") {
    std::mt19937 rng(7);
    for (int i = 0; i < 300; ++i) {
        ModalFormula f = oracle::random_modal(rng, {"p", "q"}, 4);
        CHECK(parse_modal(to_string(f)) == f);
    }
    CHECK(to_string(parse_modal("~ box bot")) == "~ box bot");
}

TEST_CASE("syntax errors report offset and expectations") {
    try {
        parse_modal("p & ");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 4);
        CHECK_FALSE(e.expected().empty());
    }
    CHECK_THROWS_AS(parse_fo("forall x R(x,"), SyntaxError);
    CHECK_THROWS_AS(parse_modal("_jf1_0_0"), SyntaxError);
    CHECK_NOTHROW(parse_modal("_jf1_0_0", ParseOptions{true}));
}

TEST_CASE("first-order measures and sentences") {
    auto a = parse_fo("forall x . exists y . R(x,y) & y != z");
    auto m = measures(a);
    CHECK(m.fiv == std::set<std::string>{"z"});
    CHECK(m.qd == 2);
    CHECK(m.qdd == 3);
    CHECK_FALSE(is_sentence(a));
    CHECK(is_sentence(parse_fo("forall x . forall y . forall z . forall t . x = t")));
    CHECK(measures(parse_fo("forall x . forall y . forall z . forall t . x = t")).qdd == 4);
    CHECK(is_relation_free(parse_fo("exists x . x != x")));
    CHECK_FALSE(is_relation_free(parse_fo("exists x . R(x,x)")));
}

TEST_CASE("first-order printing round trips over the pool") {
    for (const auto& s : oracle::sentence_pool()) {
        FOFormula a = parse_fo(s, ParseOptions{true});
        CHECK(parse_fo(to_string(a), ParseOptions{true}) == a);
        CHECK_MESSAGE(measures(parse_fo(s)).qd <= 3, s);
    }
}

TEST_CASE("counting quantifiers count") {
    auto one = parse_fo("exists=1 x . R(x,x)");
    auto two = parse_fo("exists=2 x . R(x,x)");
    for (std::size_t loops = 0; loops <= 3; ++loops) {
        std::vector<std::pair<World, World>> e;
        for (std::size_t i = 0; i < loops; ++i) e.emplace_back(std::to_string(i), std::to_string(i));
        Frame f({"0", "1", "2"}, e);
        CHECK(sat_fo(f, {}, one) == (loops == 1));
        CHECK(sat_fo(f, {}, two) == (loops == 2));
    }
}

TEST_CASE("set macros") {
    Frame f({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}, {"b", "b"}, {"c", "c"}});
    auto is = parse_fo("R(z) = {x,y}");
    auto co = parse_fo("R(z) = {x,y}^c");
    CHECK(sat_fo(f, {{"z", "a"}, {"x", "b"}, {"y", "c"}}, is));
    CHECK_FALSE(sat_fo(f, {{"z", "a"}, {"x", "b"}, {"y", "b"}}, is));
    CHECK(sat_fo(f, {{"z", "b"}, {"x", "c"}, {"y", "c"}}, co));
    CHECK(sat_fo(f, {{"x", "a"}, {"y", "b"}, {"u", "b"}, {"v", "a"}}, parse_fo("{x,y} = {u,v}")));
    CHECK(sat_fo(f, {{"x", "a"}, {"y", "b"}, {"u", "c"}, {"v", "c"}}, parse_fo("{x,y} cap {u,v} = {}")));
}

TEST_CASE("substitution avoids capture") {
    auto a = parse_fo("exists y . R(x,y)");
    auto b = substitute(a, "x", "y");
    CHECK(measures(b).fiv == std::set<std::string>{"y"});
    Frame f({"0", "1"}, {{"0", "1"}});
    CHECK(sat_fo(f, {{"y", "0"}}, b));
    CHECK_FALSE(sat_fo(f, {{"y", "1"}}, b));
}

TEST_CASE("fresh variables avoid every variable") {
    auto a = parse_fo("forall _v0 . R(_v0,_v1)", ParseOptions{true});
    auto v = fresh_variable({a});
    CHECK(v != "_v0");
    CHECK(v != "_v1");
    CHECK(is_reserved_name(v));
}

TEST_CASE("rooted translation rejects a clashing root variable") {
    CHECK_THROWS_AS(rooted_translation("x", parse_fo("forall x . R(x,x)")), VariableClash);
}

TEST_CASE("relativisation bounds quantifiers") {
    auto c = parse_fo("forall y . R(y,y)");
    auto rel = relativize(c, parse_fo("exists z . R(x,z)"), "x");
    Frame f({"0", "1"}, {{"0", "0"}});
    CHECK_FALSE(sat_fo(f, {}, c));
    CHECK(sat_fo(f, {}, rel));
}
