#include "euclid/errors.hpp"
#include "euclid/reductions.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace euclid;

namespace {

std::size_t preimage(const Galaxy& g, const WorldSet& img) {
    std::size_t n = 0;
    for (const auto& [s, r] : g.rho) n += r == img ? 1 : 0;
    return n;
}

void check_counts(const Galaxy& g, std::size_t q) {
    CHECK(preimage(g, {}) <= q);
    CHECK(preimage(g, g.lower) <= q);
    for (const auto& b : g.lower) {
        WorldSet rest = g.lower;
        rest.erase(b);
        CHECK(preimage(g, {b}) <= q);
        CHECK(preimage(g, rest) <= q);
    }
}

}  // namespace

TEST_CASE("alpha keeps q upper worlds per image") {
    std::mt19937 rng(5);
    for (int i = 0; i < 60; ++i) {
        Galaxy g = oracle::random_galaxy(rng, 6, 1 + i % 3);
        auto r = alpha_reduce_certified(g, 3);
        CHECK(r.galaxy.lower == g.lower);
        check_counts(r.galaxy, 3);
        auto chk = validate_certificate(r.certificate, galaxy_to_frame(g), galaxy_to_frame(r.galaxy));
        CHECK_MESSAGE(chk.ok(), chk.detail);
        CHECK(is_simple(r.galaxy) == is_simple(g));
    }
    CHECK_THROWS_AS(alpha_reduce(oracle::random_galaxy(rng, 2, 2), 2), InvalidBudget);
}

TEST_CASE("gamma shrinks simple galaxies within the size bounds") {
    std::mt19937 rng(9);
    const std::size_t q = 3;
    int applied = 0;
    for (int i = 0; i < 80; ++i) {
        Galaxy g = alpha_reduce(oracle::random_simple_galaxy(rng, 6, 1 + i % 6), q);
        REQUIRE(gamma_applicable(g, q));
        auto r = gamma_reduce_certified(g, q);
        ++applied;
        CHECK(is_simple(r.galaxy));
        check_counts(r.galaxy, q);
        CHECK(r.galaxy.lower.size() <= q * (q + 1) * (q + 1));
        CHECK(r.galaxy.upper.size() <= 2 * q * (q * (q + 1) * (q + 1) + 1));
        auto chk = validate_certificate(r.certificate, galaxy_to_frame(g), galaxy_to_frame(r.galaxy));
        CHECK_MESSAGE(chk.ok(), chk.detail);
    }
    CHECK(applied == 80);
    Galaxy bad = oracle::random_galaxy(rng, 2, 4);
    bad.rho["u0"] = {"b0", "b1"};
    CHECK_FALSE(gamma_applicable(bad, q));
    CHECK_THROWS_AS(gamma_reduce(bad, q), PreconditionViolated);
}

TEST_CASE("delta keeps q members per isomorphism class") {
    std::mt19937 rng(13);
    for (int i = 0; i < 30; ++i) {
        std::vector<Galaxy> family;
        Galaxy base = oracle::random_galaxy(rng, 2, 2, "g");
        for (int j = 0; j < 5; ++j) {
            family.push_back(rename(base, [j](const World& w) { return "c" + std::to_string(j) + w; }));
        }
        family.push_back(oracle::random_galaxy(rng, 1, 3, "h"));
        auto r = delta_reduce_certified(family, 3);
        CHECK(r.family.size() <= 4);
        std::vector<Frame> in, out;
        for (const auto& g : family) in.push_back(galaxy_to_frame(g));
        for (const auto& g : r.family) out.push_back(galaxy_to_frame(g));
        auto chk = validate_certificate(r.certificate, disjoint_union(in), disjoint_union(out));
        CHECK_MESSAGE(chk.ok(), chk.detail);
    }
}

TEST_CASE("frame reduction") {
    Frame f = disjoint_union({with_prefix(flower({5, 1}), "a"), with_prefix(flower({5, 1}), "b"),
                              with_prefix(flower({5, 1}), "c"), with_prefix(flower({5, 1}), "d"),
                              Frame({"x"}, {}), Frame({"y"}, {}), Frame({"z"}, {}), Frame({"w"}, {})});
    auto r = reduce_frame(f, 3, 4);
    CHECK(r.frame.size() < f.size());
    auto chk = validate_certificate(r.certificate, f, r.frame);
    CHECK_MESSAGE(chk.ok(), chk.detail);
    CHECK_THROWS_AS(reduce_frame(f, 2, 4), InvalidBudget);
    CHECK_THROWS_AS(reduce_frame(f, 3, 3), InvalidBudget);
}

TEST_CASE("certificate text round trips") {
    Frame f = flower({4, 0});
    auto r = reduce_frame(f, 3, 4);
    auto c = parse_certificate(format_certificate(r.certificate));
    CHECK(validate_certificate(c, f, r.frame).ok());
    CHECK_THROWS_AS(parse_certificate("map a b\n"), MalformedInput);
}

TEST_CASE("bound arithmetic") {
    CHECK(bound_Q(3) == 294);
    mpz_class b = bound(3, 4);
    // Independent evaluation of the same product.
    mpz_class qk = 294 * 16;
    mpz_class pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), 2, static_cast<unsigned long>(qk.get_ui() * qk.get_ui()));
    mpz_class expect = 2 * 3 * (qk + 1) * (qk + 1) * pow * qk;
    CHECK(b == expect);
    // Digit count from logarithms.
    long double l = std::log10(6.0L) + 2 * std::log10(4705.0L) + 4704.0L * 4704.0L * std::log10(2.0L) +
                    std::log10(4704.0L);
    CHECK(decimal_digits(b) == static_cast<std::size_t>(std::floor(l)) + 1);
    CHECK(decimal_digits(b) == 6661088);
    CHECK(decimal_digits(mpz_class(999)) == 3);
    CHECK(decimal_digits(mpz_class(1000)) == 4);
}
