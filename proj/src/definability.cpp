#include "euclid/definability.hpp"

#include "euclid/errors.hpp"
#include "euclid/reductions.hpp"
#include "euclid/semantics.hpp"

#include <algorithm>
#include <vector>

namespace euclid {

namespace {

FOFormula translation_equivalence(const FOFormula& a) {
    std::string x = fresh_variable({a});
    return FOFormula::iff(a, FOFormula::forall(x, rooted_translation(x, a)));
}

bool holds(const Frame& f, const FOFormula& a) { return sat_fo(f, {}, a); }

std::size_t clamp(std::size_t budget, const mpz_class& full) {
    if (full > 0 && full < budget) return static_cast<std::size_t>(full.get_ui());
    return budget;
}

void require_sentence(const FOFormula& a) {
    if (!is_sentence(a)) throw PreconditionViolated("expected a sentence");
}

}  // namespace

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Positive: return "positive";
        case Outcome::Negative: return "negative";
        case Outcome::Provisional: return "provisional";
    }
    return "?";
}

std::optional<bool> constant_truth(const FOFormula& a) {
    require_sentence(a);
    if (!is_relation_free(a)) return std::nullopt;
    // Pure equality sentences of depth d cannot tell apart sets of size >= d.
    const std::size_t top = measures(a).qd + 1;
    std::optional<bool> value;
    for (std::size_t n = 1; n <= top; ++n) {
        std::vector<World> ws;
        for (std::size_t i = 0; i < n; ++i) ws.push_back(std::to_string(i));
        bool v = holds(Frame(ws, {}), a);
        if (value && *value != v) return std::nullopt;
        value = v;
    }
    return value;
}

PropositionalStatus propositional_status(const ModalFormula& psi) {
    std::vector<ModalFormula> atoms;
    auto collect = [&](auto&& self, const ModalFormula& f) -> void {
        switch (f.kind()) {
            case ModalKind::Var:
            case ModalKind::Box:
                if (std::find(atoms.begin(), atoms.end(), f) == atoms.end()) atoms.push_back(f);
                break;
            case ModalKind::Bot: break;
            case ModalKind::Not: self(self, f.sub()); break;
            case ModalKind::Or:
                self(self, f.left());
                self(self, f.right());
                break;
        }
    };
    collect(collect, psi);
    if (atoms.size() > 20) return PropositionalStatus::Contingent;
    auto eval = [&](auto&& self, const ModalFormula& f, unsigned long row) -> bool {
        switch (f.kind()) {
            case ModalKind::Var:
            case ModalKind::Box: {
                auto i = static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), f) - atoms.begin());
                return (row >> i) & 1UL;
            }
            case ModalKind::Bot: return false;
            case ModalKind::Not: return !self(self, f.sub(), row);
            case ModalKind::Or: return self(self, f.left(), row) || self(self, f.right(), row);
        }
        return false;
    };
    bool any_true = false, any_false = false;
    for (unsigned long row = 0; row < (1UL << atoms.size()); ++row) {
        (eval(eval, psi, row) ? any_true : any_false) = true;
        if (any_true && any_false) return PropositionalStatus::Contingent;
    }
    return any_true ? PropositionalStatus::Tautology : PropositionalStatus::Contradiction;
}

IndexSet sla_set(const FOFormula& a, const LogicHandle& logic) {
    require_sentence(a);
    const int q = static_cast<int>(measures(a).qdd);
    IndexSet out;
    for (int m = 0; m <= q; ++m) {
        for (int n = -1; n <= q; ++n) {
            if (m == 0 && n != 0) continue;
            FlowerIndex idx{m, n};
            if (logic.sl_member(idx) && !holds(flower(idx), a)) out.insert(idx);
        }
    }
    return out;
}

IndexSet sla_set(const FOFormula& a, const ModalFormula& phi) { return sla_set(a, LogicHandle(phi)); }

ModalFormula defining_formula(const FOFormula& a, const ModalFormula& phi) {
    std::vector<ModalFormula> parts;
    for (const auto& idx : sla_set(a, phi)) parts.push_back(jankov_fine(idx));
    return ModalFormula::conj_all(parts);
}

Verdict decide_definability(const FOFormula& a, const ModalFormula& phi, std::size_t budget) {
    require_sentence(a);
    LogicHandle logic(phi);
    ClassifierReport report = classify(logic);
    if (!report.decidable) throw PreconditionViolated("definability is undecidable for this logic");
    const std::size_t k = *report.k;
    const std::size_t q = measures(a).qdd;

    Verdict v;
    v.full_bound = bound(q, k);
    v.explored_bound = clamp(budget, v.full_bound);

    // A and its rooted translation must agree on every frame of the class.
    bool first_conclusive = false;
    if (constant_truth(a)) {
        first_conclusive = true;
    } else {
        TheoryMembership tm = theory_membership_bounded(translation_equivalence(a), phi, v.explored_bound);
        if (!tm.holds) {
            v.outcome = Outcome::Negative;
            v.certificate = Certificate{tm.counterexample, std::nullopt, std::nullopt,
                                        "the sentence and its rooted translation disagree on this frame"};
            return v;
        }
    }

    // Truth of A on the flowers of the class is downward closed.
    for (const auto& idx : pi_k_A(k, q)) {
        if (!logic.sl_member(idx) || !holds(flower(idx), a)) continue;
        for (const auto& lower : pi(idx)) {
            if (!holds(flower(lower), a)) {
                v.outcome = Outcome::Negative;
                v.certificate = Certificate{std::nullopt, std::make_pair(idx, lower), std::nullopt,
                                            "the sentence holds on the first flower but not on the second"};
                return v;
            }
        }
    }

    v.outcome = first_conclusive || v.full_bound <= v.explored_bound ? Outcome::Positive : Outcome::Provisional;
    v.certificate = Certificate{std::nullopt, std::nullopt, defining_formula(a, phi),
                                "conjunction of the Jankov-Fine formulas of the flowers of the class falsifying the sentence"};
    return v;
}

ModalFormula synth_defining_formula(const FOFormula& a, const ModalFormula& phi, std::size_t budget) {
    Verdict v = decide_definability(a, phi, budget);
    if (v.outcome == Outcome::Negative) throw PreconditionViolated("the sentence is not modally definable");
    return defining_formula(a, phi);
}

Verdict decide_correspondence(const ModalFormula& psi, const FOFormula& a, const ModalFormula& phi,
                              std::size_t budget) {
    require_sentence(a);
    Verdict v;
    LogicHandle logic(phi);
    ClassifierReport report = classify(logic);
    if (report.decidable) v.full_bound = bound(std::max<std::size_t>(measures(a).qdd, 3), *report.k);
    v.explored_bound = clamp(budget, v.full_bound);

    bool conclusive = false;
    if (auto c = constant_truth(a)) {
        PropositionalStatus s = propositional_status(psi);
        conclusive = (*c && s == PropositionalStatus::Tautology) || (!*c && s == PropositionalStatus::Contradiction);
    }

    std::optional<Frame> mismatch;
    for_each_euclidean_frame(v.explored_bound, [&](const Frame& f) {
        if (!valid_modal(f, phi).valid) return true;
        if (valid_modal(f, psi).valid != holds(f, a)) {
            mismatch = f;
            return false;
        }
        return true;
    });
    if (mismatch) {
        v.outcome = Outcome::Negative;
        v.certificate = Certificate{mismatch, std::nullopt, std::nullopt,
                                    "the modal formula and the sentence disagree on this frame"};
        return v;
    }
    bool full = v.full_bound > 0 && v.full_bound <= v.explored_bound;
    v.outcome = conclusive || full ? Outcome::Positive : Outcome::Provisional;
    return v;
}

bool revalidate_definability_certificate(const Certificate& c, const FOFormula& a, const ModalFormula& phi) {
    if (c.frame) {
        return validates_logic(*c.frame, phi) && !holds(*c.frame, translation_equivalence(a));
    }
    if (c.flowers) {
        auto [upper, lower] = *c.flowers;
        Frame fu = flower(upper), fl = flower(lower);
        return ll(lower, upper) && validates_logic(fu, phi) && validates_logic(fl, phi) && holds(fu, a) &&
               !holds(fl, a);
    }
    return false;
}

bool revalidate_correspondence_certificate(const Certificate& c, const ModalFormula& psi, const FOFormula& a,
                                           const ModalFormula& phi) {
    if (!c.frame) return false;
    return validates_logic(*c.frame, phi) && valid_modal(*c.frame, psi).valid != holds(*c.frame, a);
}

}  // namespace euclid
