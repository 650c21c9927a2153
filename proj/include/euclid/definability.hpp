#pragma once

#include "euclid/characteristic.hpp"
#include "euclid/classifier.hpp"
#include "euclid/formulas.hpp"
#include "euclid/frames.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

namespace euclid {

enum class Outcome { Positive, Negative, Provisional };

// Evidence attached to a verdict. A negative verdict carries a frame or a
// flower pair; a positive or provisional one carries a candidate formula.
struct Certificate {
    std::optional<Frame> frame;
    std::optional<std::pair<FlowerIndex, FlowerIndex>> flowers;  // (m,n), (m',n') with (m',n') << (m,n)
    std::optional<ModalFormula> formula;
    std::string reason;
};

struct Verdict {
    Outcome outcome = Outcome::Provisional;
    std::optional<Certificate> certificate;
    std::size_t explored_bound = 0;  // frames of at most this many worlds were examined
    mpz_class full_bound;            // size that makes a positive answer conclusive; 0 when none exists
};

// Definability of the sentence a in the Euclidean frames validating phi,
// examining frames of at most min(budget, bound(qdd(a), k)) worlds.
// PreconditionViolated when phi is outside the decidable class or a is not
// a sentence.
Verdict decide_definability(const FOFormula& a, const ModalFormula& phi, std::size_t budget);

// Flowers (m,n), m in [0,q], n in [-1,q], m != 0 or n = 0, that validate
// phi and falsify a, with q = qdd(a).
IndexSet sla_set(const FOFormula& a, const LogicHandle& logic);
IndexSet sla_set(const FOFormula& a, const ModalFormula& phi);

// Conjunction of the Jankov-Fine formulas over sla_set; top when empty.
ModalFormula defining_formula(const FOFormula& a, const ModalFormula& phi);

// defining_formula after checking that decide_definability is not
// negative. PreconditionViolated on a negative verdict.
ModalFormula synth_defining_formula(const FOFormula& a, const ModalFormula& phi, std::size_t budget);

// Correspondence of psi and a on the Euclidean frames validating phi.
Verdict decide_correspondence(const ModalFormula& psi, const FOFormula& a, const ModalFormula& phi,
                              std::size_t budget);

// Independent recheck of a negative verdict's certificate.
bool revalidate_definability_certificate(const Certificate& c, const FOFormula& a, const ModalFormula& phi);
bool revalidate_correspondence_certificate(const Certificate& c, const ModalFormula& psi, const FOFormula& a,
                                           const ModalFormula& phi);

// Truth value of a relation-free sentence when it is the same on every
// nonempty frame.
std::optional<bool> constant_truth(const FOFormula& a);

enum class PropositionalStatus { Tautology, Contradiction, Contingent };

// Classification of psi as a propositional formula whose atoms are its
// variables and boxed subformulas.
PropositionalStatus propositional_status(const ModalFormula& psi);

const char* outcome_name(Outcome o);

}  // namespace euclid
