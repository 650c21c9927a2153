#include "euclid/classifier.hpp"

#include "euclid/errors.hpp"
#include "euclid/semantics.hpp"

#include <algorithm>

namespace euclid {

bool LogicHandle::sl_member(FlowerIndex idx) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(idx);
        if (it != cache_.end()) return it->second;
    }
    bool v = validates_logic(flower(idx), axiom_);
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(idx, v);
    return v;
}

std::size_t ell(const ModalFormula& phi) {
    std::size_t v = measures(phi).vars.size();
    if (v >= 16) throw ResourceLimit("too many propositional variables for flower probes");
    return std::size_t{1} << v;
}

ClassifierReport classify(const LogicHandle& logic) {
    ClassifierReport r;
    r.l = ell(logic.axiom());
    const int l = static_cast<int>(r.l);
    for (FlowerIndex idx : {FlowerIndex{l, 2}, FlowerIndex{2, -1}, FlowerIndex{2, 0}, FlowerIndex{2, l}}) {
        r.probes.push_back({idx, logic.sl_member(idx)});
    }
    r.decidable = !r.probes[0].validates &&
                  (!r.probes[1].validates || !r.probes[2].validates || !r.probes[3].validates);
    if (r.decidable) {
        KComputation kc = compute_k(logic);
        r.k = kc.k;
        r.finite_part = kc.finite_part;
    }
    return r;
}

ClassifierReport classify(const ModalFormula& phi) { return classify(LogicHandle(phi)); }

KComputation compute_k(const LogicHandle& logic) {
    const int l = static_cast<int>(ell(logic.axiom()));
    KComputation out;
    for (int m = 1; m <= l && out.m0 == 0; ++m) {
        ++out.flowers_scanned;
        if (!logic.sl_member({m, 2})) out.m0 = m;
    }
    for (int n = 2; n <= std::max(2, l) && out.n0 == 0; ++n) {
        ++out.flowers_scanned;
        if (!logic.sl_member({2, n})) out.n0 = n;
    }
    if (out.m0 == 0 || out.n0 == 0) throw PreconditionViolated("the logic is not in the decidable class");
    for (int m = 2; m < out.m0; ++m) {
        for (int n = 2; n < out.n0; ++n) {
            ++out.flowers_scanned;
            if (logic.sl_member({m, n})) {
                out.finite_part.insert({m, n});
                out.k = std::max<std::size_t>(out.k, static_cast<std::size_t>(m + n));
            }
        }
    }
    return out;
}

std::size_t compute_k(const ModalFormula& phi) { return compute_k(LogicHandle(phi)).k; }

IndexSet pi_k_A(std::size_t k, std::size_t qdd) {
    const int top = static_cast<int>(std::max(k, qdd));
    const int ik = static_cast<int>(k), iq = static_cast<int>(qdd);
    IndexSet out;
    for (int m = 1; m <= top; ++m) {
        for (int n = -1; n <= top; ++n) {
            if (m >= 2 && n >= 2 && m + n > ik) continue;
            if (m == 1 && n > iq) continue;
            if (n <= 1 && m > iq) continue;
            out.insert({m, n});
        }
    }
    return out;
}

IndexSet pi_k_A(std::size_t k, const FOFormula& a) {
    if (!is_sentence(a)) throw PreconditionViolated("expected a sentence");
    return pi_k_A(k, measures(a).qdd);
}

KernelBoundReport kernel_bound_check(const ModalFormula& phi, std::optional<int> probe) {
    LogicHandle logic(phi);
    KernelBoundReport r;
    r.l = ell(phi);
    const int l = static_cast<int>(r.l);
    r.probe = probe.value_or(l + 2);
    for (int m = 1; m <= r.probe && !r.m_witness; ++m) {
        if (!logic.sl_member({m, 2})) r.m_witness = m;
    }
    for (int n = -1; n <= r.probe && !r.n_witness; ++n) {
        if (!logic.sl_member({2, n})) r.n_witness = n;
    }
    r.holds = (!r.m_witness || *r.m_witness <= l) && (!r.n_witness || *r.n_witness <= l);
    return r;
}

}  // namespace euclid
