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

#include "mscheme/determinacy.hpp"

#include "mscheme/errors.hpp"

namespace mscheme {

namespace {

void require_exact_poly(const MultiPoly& p, const char* who) {
    if (!p.is_zero() && p.mode() != Mode::exact)
        throw ModeMismatch(std::string(who) + " requires exact polynomials");
}

}  // namespace

std::vector<Vec> zero_set(const std::vector<MultiPoly>& generators) {
    if (generators.empty()) throw std::invalid_argument("zero_set needs at least one generator");
    for (const auto& g : generators) {
        require_exact_poly(g, "zero_set");
        if (g.nvars() != 1)
            throw VariableCountMismatch("zero_set computes univariate zero sets only");
    }
    MultiPoly g(1);
    for (const auto& gen : generators) g = poly_gcd(g, gen);
    if (g.is_zero())
        throw InfiniteZeroSet("all generators vanish identically; the zero set is the whole line");
    std::vector<Vec> zeros;
    if (g.degree() == 0) return zeros;  // unit ideal: empty zero set
    RationalRoots rr = rational_roots(g);
    if (rr.remainder_degree > 0 && rr.remainder_real_roots > 0)
        throw SplitFailure("generator gcd has a real factor with irrational roots: " +
                           rr.remainder.str());
    for (const auto& root : rr.roots) zeros.push_back(Vec{Scalar::rational(root.root)});
    return zeros;
}

IdealPresentation IdealPresentation::make(int nvars, std::vector<MultiPoly> generators,
                                          std::optional<std::vector<Vec>> zeros) {
    if (nvars < 1) throw std::invalid_argument("ideal needs at least one variable");
    if (generators.empty()) throw std::invalid_argument("ideal needs at least one generator");
    for (const auto& g : generators) {
        require_exact_poly(g, "IdealPresentation");
        if (g.nvars() != nvars)
            throw VariableCountMismatch("generator variable count differs from the ideal's");
    }
    IdealPresentation out;
    out.nvars = nvars;
    out.generators = std::move(generators);
    if (zeros) {
        out.zeros = std::move(*zeros);
    } else {
        if (nvars != 1)
            throw std::invalid_argument(
                "zero sets are computed only for univariate ideals; supply them otherwise");
        out.zeros = zero_set(out.generators);
    }
    for (const auto& z : out.zeros) {
        if (static_cast<int>(z.size()) != nvars)
            throw DimensionMismatch("zero point length differs from the variable count");
        for (const auto& g : out.generators)
            if (!g.eval(z).is_zero())
                throw std::invalid_argument("a generator does not vanish at the declared zero " +
                                            std::string("point"));
    }
    return out;
}

MembershipVerdict in_point_closure(const MultiPoly& f, const std::vector<Vec>& zeros) {
    require_exact_poly(f, "in_point_closure");
    MembershipVerdict v(f);
    v.closure = "point";
    for (const auto& z : zeros) {
        if (!f.eval(z).is_zero()) {
            v.member = false;
            v.witness = MembershipWitness{z, std::nullopt};
            return v;
        }
    }
    v.member = true;
    return v;
}

MembershipVerdict in_k_jet_closure(const MultiPoly& f, const IdealPresentation& ideal, int k) {
    require_exact_poly(f, "in_k_jet_closure");
    if (f.nvars() != ideal.nvars)
        throw VariableCountMismatch("query variable count differs from the ideal's");
    if (k < 0) throw std::invalid_argument("jet order must be nonnegative");
    MembershipVerdict v(f);
    v.closure = "k-jet";
    v.k = k;
    for (const auto& z : ideal.zeros) {
        JetRingPtr ring = make_jet_ring(ideal.nvars, k, z);
        std::vector<Jet> gens;
        gens.reserve(ideal.generators.size());
        for (const auto& g : ideal.generators) gens.push_back(truncate(g, ring));
        JetIdeal jideal = jet_ideal(ring, gens);
        JetMembership m = jet_membership(truncate(f, ring), jideal);
        if (!m.member) {
            v.member = false;
            v.witness = MembershipWitness{z, m.witness_monomial};
            return v;
        }
    }
    v.member = true;
    return v;
}

std::optional<int> minimal_jet_order(const MultiPoly& f, const IdealPresentation& ideal,
                                     int k_max) {
    for (int k = 0; k <= k_max; ++k)
        if (!in_k_jet_closure(f, ideal, k).member) return k;
    return std::nullopt;
}

HierarchyReport hierarchy_check(const IdealPresentation& ideal,
                                const std::vector<MultiPoly>& sample_fs, int k_max) {
    HierarchyReport report;
    for (const auto& f : sample_fs) {
        HierarchySample s(f);
        s.point_member = in_point_closure(f, ideal.zeros).member;
        for (int k = 0; k <= k_max; ++k) s.jet_member.push_back(in_k_jet_closure(f, ideal, k).member);
        // Closures shrink as k grows: membership at k' implies membership at
        // every k < k'; the point closure contains all of them.
        for (int hi = 0; hi <= k_max; ++hi) {
            if (!s.jet_member[static_cast<size_t>(hi)]) continue;
            if (!s.point_member) {
                s.violations.push_back({-1, hi});
                report.consistent = false;
            }
            for (int lo = 0; lo < hi; ++lo)
                if (!s.jet_member[static_cast<size_t>(lo)]) {
                    s.violations.push_back({lo, hi});
                    report.consistent = false;
                }
        }
        report.samples.push_back(std::move(s));
    }
    return report;
}

}  // namespace mscheme
