#pragma once

#include "euclid/formulas.hpp"
#include "euclid/frames.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>

namespace euclid {

using Valuation = std::map<std::string, WorldSet>;
using Assignment = std::map<std::string, World>;

// Truth of phi at s. UncoveredVariable when V misses a variable of phi.
bool sat_modal(const Frame& f, const Valuation& v, const World& s, const ModalFormula& phi);

// The set of worlds where phi holds under v.
WorldSet truth_set(const Frame& f, const Valuation& v, const ModalFormula& phi);

struct ModalCounterexample {
    Valuation valuation;
    World world;
};

struct ModalValidity {
    bool valid = true;
    std::optional<ModalCounterexample> counterexample;
};

// Validity of phi on f. Top-level conjuncts are checked in order; within a
// conjunct, worlds are tried in identifier order and, for each world,
// valuations of var(phi) restricted to the worlds reachable from it are
// tried in binary-counter order (bit i*|W|+w stands for w in V(p_i), with
// variables in sorted order). The first falsifying pair is returned.
// Frames of more than 64 worlds raise ResourceLimit.
ModalValidity valid_modal(const Frame& f, const ModalFormula& phi);

bool sat_fo(const Frame& f, const Assignment& g, const FOFormula& a);

// Truth under every assignment of the free variables.
bool valid_fo(const Frame& f, const FOFormula& a);

// f is Euclidean and validates phi.
bool validates_logic(const Frame& f, const ModalFormula& phi);

struct TheoryMembership {
    bool holds = true;
    std::optional<Frame> counterexample;
    std::size_t frames_checked = 0;  // frames that validate the logic
};

// Looks for a Euclidean frame of at most size_bound worlds that validates
// phi and falsifies the sentence a; frames are visited in enumeration order.
TheoryMembership theory_membership_bounded(const FOFormula& a, const ModalFormula& phi, std::size_t size_bound);

}  // namespace euclid
