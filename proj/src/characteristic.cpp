#include "euclid/characteristic.hpp"

#include "euclid/errors.hpp"

#include <vector>

namespace euclid {

bool ll(FlowerIndex a, FlowerIndex b) { return a.m <= b.m && a.n <= b.n; }

IndexSet pi(FlowerIndex p) {
    if (p.m < 1 || p.n < -1) throw InvalidIndex("pi needs m >= 1 and n >= -1");
    IndexSet out;
    for (int m = 1; m <= p.m; ++m) {
        for (int n = -1; n <= p.n; ++n) out.insert({m, n});
    }
    return out;
}

bool is_closed_truncation(const IndexSet& s, FlowerIndex bound) {
    for (const auto& p : s) {
        if (p.m < 1 || p.n < -1 || !ll(p, bound)) throw InvalidIndex("index outside the truncation rectangle");
    }
    for (const auto& p : s) {
        for (const auto& q : pi(p)) {
            if (!s.count(q)) return false;
        }
    }
    return true;
}

std::string jankov_fine_variable(FlowerIndex idx, int k) {
    std::string n = idx.n < 0 ? "m" + std::to_string(-idx.n) : std::to_string(idx.n);
    return "_jf" + std::to_string(idx.m) + "_" + n + "_" + std::to_string(k);
}

ModalFormula jankov_fine(FlowerIndex idx) {
    using M = ModalFormula;
    const int m = idx.m, n = idx.n;
    if (m == 0 && n == 0) return M::neg(M::box(M::bot()));
    if (m < 1 || n < -1) throw InvalidIndex("Jankov-Fine formulas need m >= 1 and n >= -1, or m = n = 0");

    auto p = [&](int k) { return M::var(jankov_fine_variable(idx, k)); };
    const int lo = n >= 0 ? 0 : 1;
    const int hi = n >= 0 ? m + n : m;

    std::vector<M> parts;
    parts.push_back(p(lo));
    std::vector<M> all;
    for (int k = lo; k <= hi; ++k) all.push_back(p(k));
    parts.push_back(M::ubox(M::disj_all(all)));
    for (int k = lo; k <= hi; ++k) {
        for (int l = k + 1; l <= hi; ++l) parts.push_back(M::ubox(M::impl(p(k), M::neg(p(l)))));
    }
    for (int k = lo; k <= hi; ++k) parts.push_back(M::udia(p(k)));
    if (n >= 0) {
        parts.push_back(M::ubox(M::impl(p(0), M::box(M::neg(p(0))))));
        for (int k = 1; k <= m; ++k) parts.push_back(M::ubox(M::impl(p(0), M::dia(p(k)))));
        for (int k = m + 1; k <= m + n; ++k) parts.push_back(M::ubox(M::impl(p(0), M::box(M::neg(p(k))))));
        for (int k = 1; k <= m + n; ++k) parts.push_back(M::ubox(M::impl(p(k), M::box(M::neg(p(0))))));
    }
    for (int k = 1; k <= hi; ++k) {
        for (int l = 1; l <= hi; ++l) parts.push_back(M::ubox(M::impl(p(k), M::dia(p(l)))));
    }
    return M::neg(M::conj_all(parts));
}

}  // namespace euclid
