#pragma once

#include "euclid/formulas.hpp"
#include "euclid/frames.hpp"
#include "euclid/semantics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace euclid {

enum class Flavor { K2, L2 };

// Formulas interpreting an irreflexive symmetric frame inside a galaxy:
// u(x1,x2) picks the pairs standing for worlds, e(x1,x2,y1,y2) identifies
// pairs for the same world, a(x1,x2,y1,y2) holds between pairs for
// adjacent worlds.
struct InterpretationScheme {
    Flavor flavor = Flavor::K2;
    FOFormula u, e, a;
};

InterpretationScheme interpretation_scheme(Flavor flavor);

// World s becomes lower worlds "s#1", "s#2" and upper worlds "s#3", "s#4";
// edge {s,t} becomes upper world "s~t". PreconditionViolated unless f is
// irreflexive and symmetric, has at least two worlds and no world name
// contains '#' or '~'.
Galaxy encode(const Frame& f, Flavor flavor);

// The structure (X, S) / E read off galaxy_to_frame(g) by the scheme.
// NotACongruence when E is not an equivalence compatible with A on X;
// PreconditionViolated when U defines no pair.
Frame decode(const Galaxy& g, const InterpretationScheme& scheme);

// Subframe induced by {t : f |= a[params, y := t]}, or nothing when that
// set is empty. ArityMismatch unless params assigns exactly the free
// variables of a other than y.
std::optional<Frame> relativized_reduct(const Frame& f, const FOFormula& a, const std::string& y,
                                        const Assignment& params);

enum class StabilityCase { Serial, NonSerial };

struct StabilityWitness {
    StabilityCase kind = StabilityCase::NonSerial;
    FOFormula a;  // free variables x1, x2, y
    FOFormula b;  // sentence
    std::vector<std::string> params{"x1", "x2"};
    std::string y = "y";
};

// Serial case when the isolated point falsifies phi.
StabilityWitness stability_witness(const ModalFormula& phi);

// f plus two new isolated points, reflexive in the serial case. The names
// of the new points are returned through added.
Frame stability_padded_frame(const Frame& f, StabilityCase kind, std::vector<World>* added = nullptr);

// A single point, reflexive in the serial case.
Frame stability_one_point_frame(StabilityCase kind);

const char* flavor_name(Flavor f);
const char* stability_case_name(StabilityCase c);

}  // namespace euclid
