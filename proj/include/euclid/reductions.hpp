#pragma once

#include "euclid/frames.hpp"
#include "euclid/morphisms.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace euclid {

// For an output world, a surjective bounded morphism from the subframe of
// the input generated by source_world onto the subframe of the output
// generated by target_world.
struct LocalWitness {
    World target_world;
    World source_world;
    WorldMap map;
};

// Evidence that a reduced frame is equivalent to its input: a surjective
// bounded morphism on the whole frame, or local witnesses covering every
// output world, together with the game budget q.
struct ReductionCertificate {
    std::size_t q = 3;
    std::optional<WorldMap> morphism;
    std::vector<LocalWitness> local;
};

struct CertificateCheck {
    bool morphism_ok = false;
    bool game_ok = false;
    std::string detail;
    bool ok() const { return morphism_ok && game_ok; }
};

CertificateCheck validate_certificate(const ReductionCertificate& c, const Frame& input, const Frame& output);

std::string format_certificate(const ReductionCertificate& c);
ReductionCertificate parse_certificate(const std::string& text);  // MalformedInput

struct GalaxyReduction {
    Galaxy galaxy;
    ReductionCertificate certificate;
};

struct FamilyReduction {
    std::vector<Galaxy> family;
    std::vector<std::size_t> kept;  // indices into the input family
    ReductionCertificate certificate;
};

struct FrameReduction {
    Frame frame;
    ReductionCertificate certificate;
};

// Keeps the q least upper worlds of each class of equal rho-image.
// InvalidBudget when q < 3.
Galaxy alpha_reduce(const Galaxy& g, std::size_t q);
GalaxyReduction alpha_reduce_certified(const Galaxy& g, std::size_t q);

// Simple galaxy whose preimages of the empty set, of the whole lower part,
// of singletons and of co-singletons all have at most q elements.
bool gamma_applicable(const Galaxy& g, std::size_t q);

// Shrinks the lower part to q representatives of each class of lower
// worlds with equal singleton and co-singleton preimage counts, and the
// upper part accordingly. PreconditionViolated unless gamma_applicable.
Galaxy gamma_reduce(const Galaxy& g, std::size_t q);
GalaxyReduction gamma_reduce_certified(const Galaxy& g, std::size_t q);

// Keeps the q least-index members of each isomorphism class.
std::vector<Galaxy> delta_reduce(const std::vector<Galaxy>& family, std::size_t q);
FamilyReduction delta_reduce_certified(const std::vector<Galaxy>& family, std::size_t q);

// Decompose, alpha on every galaxy, gamma on the galaxies where it
// applies, delta on the family, recompose. InvalidBudget when q < 3 or k < 4.
FrameReduction reduce_frame(const Frame& f, std::size_t q, std::size_t k);

// 2q((QK)+1)^2 2^((QK)^2) QK with Q = 2q(q(q+1)^2+1) and K = 2^k.
mpz_class bound(std::size_t q, std::size_t k);
std::size_t bound_Q(std::size_t q);

// Number of decimal digits of a positive integer.
std::size_t decimal_digits(const mpz_class& x);

}  // namespace euclid
