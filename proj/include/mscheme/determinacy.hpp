/*
   Copyright 2026 The matrixscheme authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef MSCHEME_DETERMINACY_HPP
#define MSCHEME_DETERMINACY_HPP

#include <optional>
#include <string>
#include <vector>

#include "mscheme/jets.hpp"
#include "mscheme/poly.hpp"

namespace mscheme {

// A polynomial ideal with a finite rational zero set. For one variable the
// zero set is computed; for more variables it must be supplied.
struct IdealPresentation {
    int nvars = 0;
    std::vector<MultiPoly> generators;
    std::vector<Vec> zeros;

    static IdealPresentation make(int nvars, std::vector<MultiPoly> generators,
                                  std::optional<std::vector<Vec>> zeros = {});
};

// Finite zero set of univariate generators: rational roots of their gcd.
// InfiniteZeroSet when the gcd vanishes identically; SplitFailure when the
// gcd keeps a real factor that does not split over Q. Non-real factors are
// discarded (they contribute no real zeros).
std::vector<Vec> zero_set(const std::vector<MultiPoly>& generators);

struct MembershipWitness {
    Vec point;
    std::optional<Exponents> monomial;  // jet coordinate where membership fails
};

struct MembershipVerdict {
    MultiPoly query;
    std::string closure;  // "point" or "k-jet"
    int k = -1;           // jet order when closure == "k-jet"
    bool member = false;
    std::optional<MembershipWitness> witness;  // present iff member is false

    explicit MembershipVerdict(MultiPoly q) : query(std::move(q)) {}
};

// Membership in the point-determined closure: f vanishes on the zero set.
MembershipVerdict in_point_closure(const MultiPoly& f, const std::vector<Vec>& zeros);

// Membership in the order-k near-point closure: the order-k jet of f lies in
// the order-k jet ideal of the generators at every zero.
MembershipVerdict in_k_jet_closure(const MultiPoly& f, const IdealPresentation& ideal, int k);

// Least k <= k_max whose jet closure separates f from the ideal, or nullopt.
std::optional<int> minimal_jet_order(const MultiPoly& f, const IdealPresentation& ideal,
                                     int k_max);

struct HierarchySample {
    MultiPoly query;
    bool point_member = false;
    std::vector<bool> jet_member;  // index k = 0..k_max
    // (k, k') with k < k' where membership at k' holds but fails at k.
    std::vector<std::pair<int, int>> violations;

    explicit HierarchySample(MultiPoly q) : query(std::move(q)) {}
};

struct HierarchyReport {
    std::vector<HierarchySample> samples;
    bool consistent = true;
};

// Verifies that the closures shrink as the jet order grows: membership at
// order k implies membership at every lower order and at the point level.
HierarchyReport hierarchy_check(const IdealPresentation& ideal,
                                const std::vector<MultiPoly>& sample_fs, int k_max);

}  // namespace mscheme

#endif
