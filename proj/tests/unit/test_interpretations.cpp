#include "euclid/errors.hpp"
#include "euclid/interpretations.hpp"
#include "euclid/morphisms.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

using namespace euclid;

namespace {

std::vector<Frame> graphs(std::size_t n) {
    std::vector<Frame> out;
    for (const auto& f : oracle::all_frames(n)) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            ok = !f.edge(i, i);
            for (std::size_t j = 0; j < n && ok; ++j) ok = f.edge(i, j) == f.edge(j, i);
        }
        if (ok) out.push_back(f);
    }
    return out;
}

}  // namespace

TEST_CASE("encoding sizes") {
    Frame edge({"u", "v"}, {{"u", "v"}, {"v", "u"}});
    Galaxy g = encode(edge, Flavor::K2);
    CHECK(g.upper.size() == 5);
    CHECK(g.lower.size() == 4);
    CHECK(in_K2(g));
    CHECK(encode(Frame({"u", "v"}, {}), Flavor::K2).upper.size() == 4);
    Frame p3({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}});
    CHECK(encode(p3, Flavor::K2).upper.size() == 8);
    CHECK(encode(p3, Flavor::K2).lower.size() == 6);
    CHECK(in_L2(encode(p3, Flavor::L2)));
    CHECK_THROWS_AS(encode(Frame({"u"}, {}), Flavor::K2), PreconditionViolated);
    CHECK_THROWS_AS(encode(Frame({"u", "v"}, {{"u", "v"}}), Flavor::K2), PreconditionViolated);
    CHECK_THROWS_AS(encode(Frame({"u", "v"}, {{"u", "u"}}), Flavor::K2), PreconditionViolated);
}

TEST_CASE("decoding inverts encoding") {
    for (Flavor fl : {Flavor::K2, Flavor::L2}) {
        auto scheme = interpretation_scheme(fl);
        for (std::size_t n = 2; n <= 3; ++n)
            for (const auto& f : graphs(n)) {
                Frame d = decode(encode(f, fl), scheme);
                CHECK(are_isomorphic(d, f).has_value());
                CHECK(d == f);
            }
    }
}

TEST_CASE("the interpreted domain is the pairs of twin lower worlds") {
    Frame p3({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}});
    for (Flavor fl : {Flavor::K2, Flavor::L2}) {
        Galaxy g = encode(p3, fl);
        Frame f = galaxy_to_frame(g);
        auto scheme = interpretation_scheme(fl);
        std::set<std::pair<World, World>> x;
        for (const auto& a : f.worlds())
            for (const auto& b : f.worlds())
                if (sat_fo(f, {{"x1", a}, {"x2", b}}, scheme.u)) x.emplace(a, b);
        std::set<std::pair<World, World>> expect;
        for (const auto& w : p3.worlds()) {
            expect.emplace(w + "#1", w + "#2");
            expect.emplace(w + "#2", w + "#1");
        }
        CHECK(x == expect);
    }
}

TEST_CASE("decoding rejects empty domains and broken identifications") {
    Galaxy g = parse_galaxy("upper u\nlower b c\nrho u : b\n");
    CHECK_THROWS_AS(decode(g, interpretation_scheme(Flavor::K2)), PreconditionViolated);
    InterpretationScheme odd = interpretation_scheme(Flavor::K2);
    odd.e = parse_fo("x1 = y2");
    Frame p2({"a", "b"}, {{"a", "b"}, {"b", "a"}});
    CHECK_THROWS_AS(decode(encode(p2, Flavor::K2), odd), NotACongruence);
}

TEST_CASE("relativized reducts") {
    Frame f({"0", "1", "2"}, {{"0", "0"}, {"1", "2"}, {"2", "2"}});
    auto all = relativized_reduct(f, parse_fo("y = y"), "y", {});
    REQUIRE(all);
    CHECK(*all == f);
    auto refl = relativized_reduct(f, parse_fo("R(y,y)"), "y", {});
    REQUIRE(refl);
    CHECK(refl->worlds() == std::vector<World>{"0", "2"});
    CHECK_FALSE(relativized_reduct(f, parse_fo("y != y"), "y", {}));
    CHECK_THROWS_AS(relativized_reduct(f, parse_fo("R(x,y)"), "y", {}), ArityMismatch);
    auto seen = relativized_reduct(f, parse_fo("R(x,y)"), "y", {{"x", "1"}});
    REQUIRE(seen);
    CHECK(seen->worlds() == std::vector<World>{"2"});
}

TEST_CASE("relativisation agrees with reducts") {
    const std::vector<std::string> defs = {"R(y,y)", "exists z . R(z,y)", "R(x,y) | y = x", "~R(y,x)"};
    const std::vector<std::string> sentences = {
        "forall u . exists v . R(u,v)",
        "exists u . R(u,u)",
        "forall u . forall v . R(u,v) -> R(v,u)",
        "exists u . exists v . u != v",
        "forall u . forall v . forall w . R(u,v) & R(u,w) -> R(v,w)",
        "exists u . forall v . ~R(v,u)",
        "exists=2 u . R(u,u)",
    };
    for (const auto& f : enumerate_euclidean_frames(4)) {
        for (const auto& d : defs) {
            FOFormula a = parse_fo(d);
            bool has_x = measures(a).fiv.count("x") != 0;
            for (const auto& w : f.worlds()) {
                Assignment params;
                if (has_x) params["x"] = w;
                auto red = relativized_reduct(f, a, "y", params);
                if (!red) continue;
                for (const auto& s : sentences) {
                    FOFormula c = parse_fo(s);
                    CHECK(sat_fo(f, params, relativize(c, a, "y")) == sat_fo(*red, {}, c));
                }
            }
        }
    }
}

TEST_CASE("stability witnesses") {
    CHECK(stability_witness(parse_modal("dia top")).kind == StabilityCase::Serial);
    CHECK(stability_witness(parse_modal("top")).kind == StabilityCase::NonSerial);
    for (const auto& axiom : {"dia top", "top", "box p -> box box p", "box bot"}) {
        ModalFormula phi = parse_modal(axiom);
        StabilityWitness w = stability_witness(phi);
        for (const auto& f0 : enumerate_euclidean_frames(3)) {
            if (!validates_logic(f0, phi)) continue;
            std::vector<World> added;
            Frame padded = stability_padded_frame(f0, w.kind, &added);
            CHECK(validates_logic(padded, phi));
            auto red = relativized_reduct(padded, w.a, w.y, {{"x1", added[0]}, {"x2", added[1]}});
            REQUIRE(red);
            CHECK(*red == f0);
            CHECK(sat_fo(padded, {}, w.b));
            CHECK_FALSE(sat_fo(stability_one_point_frame(w.kind), {}, w.b));
            CHECK(validates_logic(stability_one_point_frame(w.kind), phi));
        }
    }
}
