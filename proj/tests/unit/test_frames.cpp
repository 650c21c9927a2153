#include "euclid/errors.hpp"
#include "euclid/frames.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

using namespace euclid;

TEST_CASE("natural order compares digit runs numerically") {
    CHECK(natural_less("2", "10"));
    CHECK(natural_less("s#2", "s#10"));
    CHECK_FALSE(natural_less("10", "2"));
}

TEST_CASE("Euclidean check") {
    CHECK(is_euclidean(Frame({"0", "1"}, {{"0", "1"}, {"1", "1"}})));
    CHECK_FALSE(is_euclidean(Frame({"0", "1"}, {{"0", "1"}})));
    CHECK_THROWS_AS(partition(Frame({"0", "1"}, {{"0", "1"}})), NotEuclidean);
}

TEST_CASE("partition of a flower") {
    Partition p = partition(flower({2, 1}));
    CHECK(p.dust.empty());
    CHECK(p.root == WorldSet{"0"});
    CHECK(p.kernel == WorldSet{"1", "2", "3"});
}

TEST_CASE("flower shapes") {
    CHECK(flower({0, 0}).size() == 1);
    CHECK(flower({0, 0}).edge_count() == 0);
    CHECK(flower({3, -1}).size() == 3);
    CHECK(flower({3, -1}).edge_count() == 9);
    Frame f = flower({2, 2});
    CHECK(f.size() == 5);
    CHECK(f.edge_count() == 2 + 16);
    CHECK_THROWS_AS(flower({0, 1}), InvalidIndex);
    CHECK_THROWS_AS(flower({1, -2}), InvalidIndex);
}

TEST_CASE("flower simplicity agrees with the closed form") {
    for (int m = 1; m <= 6; ++m)
        for (int n = -1; n <= 6; ++n) CHECK(is_simple(flower_galaxy({m, n})) == oracle::flower_simple_closed_form(m, n));
}

TEST_CASE("enumeration matches brute-force counts") {
    std::vector<std::size_t> per_size(5, 0);
    for (const auto& f : enumerate_euclidean_frames(4)) {
        CHECK(is_euclidean(f));
        ++per_size[f.size()];
    }
    // Frozen from the brute-force count over all relations.
    CHECK(per_size[1] == 2);
    CHECK(per_size[2] == 5);
    for (std::size_t n = 1; n <= 4; ++n) CHECK(per_size[n] == oracle::euclidean_count(n));
}

TEST_CASE("enumeration puts two dust points first among two-world frames") {
    auto all = enumerate_euclidean_frames(2);
    REQUIRE(all.size() == 7);
    CHECK(all[2].size() == 2);
    CHECK(all[2].edge_count() == 0);
}

TEST_CASE("enumerated frames are pairwise non-isomorphic") {
    auto all = enumerate_euclidean_frames(4);
    std::set<std::string> codes;
    for (const auto& f : all) codes.insert(canonical_code(f));
    CHECK(codes.size() == all.size());
}

TEST_CASE("galaxies round trip through frames") {
    std::mt19937 rng(3);
    for (int i = 0; i < 50; ++i) {
        Galaxy g = oracle::random_galaxy(rng, 1 + i % 4, 1 + i % 3);
        Frame f = galaxy_to_frame(g);
        std::vector<Frame> parts;
        for (const auto& h : frame_to_galaxies(f)) parts.push_back(galaxy_to_frame(h));
        CHECK(disjoint_union(parts) == f);
    }
}

TEST_CASE("decomposition of a union") {
    Frame f = disjoint_union({with_prefix(flower({1, 0}), "a"), with_prefix(flower({2, -1}), "b"),
                              Frame({"d"}, {})});
    auto gs = frame_to_galaxies(f);
    CHECK(gs.size() == 3);
    CHECK_THROWS_AS(disjoint_union({flower({1, 0}), flower({1, 0})}), Overlap);
}

TEST_CASE("K2 and L2 membership") {
    Galaxy g;
    g.lower = {"b1", "b2", "b3", "b4"};
    for (int i = 0; i < 4; ++i) {
        std::string s = "u" + std::to_string(i);
        g.upper.insert(s);
        g.rho[s] = i % 2 ? WorldSet{"b1", "b2"} : WorldSet{"b3", "b4"};
    }
    CHECK(in_K2(g));
    CHECK(in_L2(g));
    g.rho["u0"] = {"b1"};
    CHECK_FALSE(in_K2(g));
}

TEST_CASE("generated subframes") {
    Frame f = flower({2, 1});
    CHECK(generated_subframe(f, "0") == f);
    CHECK(generated_subframe(f, "1").size() == 3);
    CHECK_THROWS_AS(generated_subframe(f, "9"), WorldNotFound);
}

TEST_CASE("frame text format") {
    Frame f = parse_frame("# comment\nworlds a b c\nedge a b\nedge b b\n");
    CHECK(f.size() == 3);
    CHECK(parse_frame(format_frame(f)) == f);
    CHECK(parse_frame("worlds 3\nedge 0 1\n").size() == 3);
    CHECK(parse_frame("world 7\n").world(0) == "7");
    CHECK_THROWS_AS(parse_frame("worlds a\nedge a z\n"), MalformedInput);
    CHECK_THROWS_AS(parse_frame("bogus\n"), MalformedInput);
    Galaxy g = parse_galaxy("upper u v\nlower b c\nrho u : b\n");
    CHECK(g.image("v").empty());
    CHECK(parse_galaxy(format_galaxy(g)).rho == g.rho);
}
