#pragma once

#include "euclid/characteristic.hpp"
#include "euclid/formulas.hpp"
#include "euclid/frames.hpp"

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

namespace euclid {

// The logic K5 + axiom, with a memo of flower validity.
class LogicHandle {
public:
    explicit LogicHandle(ModalFormula axiom) : axiom_(std::move(axiom)) {}

    const ModalFormula& axiom() const { return axiom_; }

    // flower(idx) validates the axiom. Also accepts (0,0), the isolated point.
    bool sl_member(FlowerIndex idx) const;

private:
    ModalFormula axiom_;
    mutable std::mutex mu_;
    mutable std::map<FlowerIndex, bool> cache_;
};

struct Probe {
    FlowerIndex index;
    bool validates = false;
};

struct ClassifierReport {
    std::size_t l = 1;  // 2^|var(axiom)|
    // flower(l,2), flower(2,-1), flower(2,0), flower(2,l), in that order.
    std::vector<Probe> probes;
    bool decidable = false;
    std::optional<std::size_t> k;
    IndexSet finite_part;  // members with m >= 2 and n >= 2
};

std::size_t ell(const ModalFormula& phi);

// Decidable iff flower(l,2) falsifies the axiom and one of flower(2,-1),
// flower(2,0), flower(2,l) falsifies it too.
ClassifierReport classify(const ModalFormula& phi);
ClassifierReport classify(const LogicHandle& logic);

struct KComputation {
    std::size_t k = 4;
    int m0 = 0;  // least m >= 1 with flower(m,2) falsifying the axiom
    int n0 = 0;  // least n >= 2 with flower(2,n) falsifying the axiom
    IndexSet finite_part;
    std::size_t flowers_scanned = 0;
};

// k = max(4, max{m+n : m,n >= 2, flower(m,n) validates the axiom}).
// PreconditionViolated when the classification is undecidable.
KComputation compute_k(const LogicHandle& logic);
std::size_t compute_k(const ModalFormula& phi);

// Pairs (m,n), m >= 1, n >= -1, with m+n <= k when m,n >= 2, n <= qdd
// when m = 1, and m <= qdd when n is -1, 0 or 1.
IndexSet pi_k_A(std::size_t k, std::size_t qdd);
IndexSet pi_k_A(std::size_t k, const FOFormula& a);  // qdd(a); PreconditionViolated unless a is a sentence

struct KernelBoundReport {
    std::size_t l = 1;
    int probe = 0;
    std::optional<int> m_witness;  // least m in [1,probe] with flower(m,2) falsifying the axiom
    std::optional<int> n_witness;  // least n in [-1,probe] with flower(2,n) falsifying the axiom
    bool holds = true;             // each witness found lies within [1,l] (resp. [-1,l])
};

// Probes flower(m,2) and flower(2,n) up to probe (default l + 2).
KernelBoundReport kernel_bound_check(const ModalFormula& phi, std::optional<int> probe = std::nullopt);

}  // namespace euclid
