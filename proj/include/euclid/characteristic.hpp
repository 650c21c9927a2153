#pragma once

#include "euclid/formulas.hpp"
#include "euclid/frames.hpp"

#include <set>
#include <string>

namespace euclid {

using IndexSet = std::set<FlowerIndex>;

// (m,n) << (m',n') iff m <= m' and n <= n'.
bool ll(FlowerIndex a, FlowerIndex b);

// Every (m',n') << (m,n) with m' >= 1 and n' >= -1. InvalidIndex unless
// m >= 1 and n >= -1.
IndexSet pi(FlowerIndex p);

// S contains pi(p) for every p in S. InvalidIndex when some member of S
// lies outside the rectangle [1,bound.m] x [-1,bound.n].
bool is_closed_truncation(const IndexSet& s, FlowerIndex bound);

// The Jankov-Fine formula of flower(idx): falsifiable at s exactly when the
// subframe generated by s maps onto flower(idx) with s sent to a generator.
// Variables are "_jf<m>_<n>_<k>", with n = -1 written "m1". InvalidIndex
// unless (m >= 1, n >= -1) or (m, n) = (0, 0).
ModalFormula jankov_fine(FlowerIndex idx);

// Name of the k-th variable of jankov_fine(idx).
std::string jankov_fine_variable(FlowerIndex idx, int k);

}  // namespace euclid
