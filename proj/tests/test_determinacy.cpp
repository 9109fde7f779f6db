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

#include <doctest.h>

#include "mscheme/determinacy.hpp"
#include "mscheme/errors.hpp"
#include "test_support.hpp"

using namespace mscheme;
using mtest::Rng;

namespace {

MultiPoly upoly(std::initializer_list<long> coeffs_low_to_high) {
    MultiPoly p(1);
    unsigned k = 0;
    for (long c : coeffs_low_to_high) {
        p.set_coeff(Exponents{k}, Scalar::rational(c));
        ++k;
    }
    return p;
}

// Divisibility by plain coefficient long division over mpq, independent of
// the library's polynomial routines.
bool divides_oracle(const MultiPoly& p, const MultiPoly& f) {
    if (f.is_zero()) return true;
    int dp = p.degree(), df = f.degree();
    if (df < dp) return false;
    std::vector<mpq_class> rem(static_cast<size_t>(df) + 1, 0);
    for (int i = 0; i <= df; ++i) rem[static_cast<size_t>(i)] = f.coeff1(i).rat();
    std::vector<mpq_class> div(static_cast<size_t>(dp) + 1, 0);
    for (int i = 0; i <= dp; ++i) div[static_cast<size_t>(i)] = p.coeff1(i).rat();
    for (int k = df - dp; k >= 0; --k) {
        mpq_class q = rem[static_cast<size_t>(k + dp)] / div[static_cast<size_t>(dp)];
        for (int i = 0; i <= dp; ++i) rem[static_cast<size_t>(k + i)] -= q * div[static_cast<size_t>(i)];
    }
    for (int i = 0; i < dp; ++i)
        if (rem[static_cast<size_t>(i)] != 0) return false;
    return true;
}

MultiPoly random_upoly(Rng& rng, int maxdeg) {
    MultiPoly p(1);
    std::uniform_int_distribution<int> d(0, maxdeg);
    int deg = d(rng);
    for (int k = 0; k <= deg; ++k)
        p.set_coeff(Exponents{static_cast<unsigned>(k)}, mtest::random_rational(rng, -5, 5, 2));
    return p;
}

}  // namespace

TEST_CASE("zero_set via gcd and rational roots") {
    auto z1 = zero_set({upoly({2, -3, 1})});
    REQUIRE(z1.size() == 2);
    CHECK(z1[0][0] == Scalar::rational(1));
    CHECK(z1[1][0] == Scalar::rational(2));

    auto z2 = zero_set({upoly({0, 0, 1}), upoly({0, 0, 0, 1})});
    REQUIRE(z2.size() == 1);
    CHECK(z2[0][0] == Scalar::rational(0));

    CHECK_THROWS_AS(zero_set({upoly({-2, 0, 1})}), SplitFailure);
    CHECK_THROWS_AS(zero_set({MultiPoly(1), MultiPoly(1)}), InfiniteZeroSet);

    // A complex-only factor contributes no real zeros and is not an error.
    auto z3 = zero_set({upoly({0, 1}) * upoly({1, 0, 1})});
    REQUIRE(z3.size() == 1);
    CHECK(z3[0][0] == Scalar::rational(0));
}

TEST_CASE("ideal presentations validate their declared zeros") {
    auto ideal = IdealPresentation::make(1, {upoly({0, 0, 1})});
    REQUIRE(ideal.zeros.size() == 1);

    std::vector<Vec> wrong{Vec{Scalar::rational(1)}};
    CHECK_THROWS_AS(IdealPresentation::make(1, {upoly({0, 0, 1})}, wrong), std::invalid_argument);

    // Multivariate ideals need a supplied zero set.
    MultiPoly y1 = MultiPoly::variable(2, 0);
    CHECK_THROWS_AS(IdealPresentation::make(2, {y1}), std::invalid_argument);
    std::vector<Vec> origin{Vec{Scalar::rational(0), Scalar::rational(0)}};
    CHECK_NOTHROW(IdealPresentation::make(2, {y1}, origin));
}

TEST_CASE("in_point_closure with witnesses") {
    std::vector<Vec> z1{Vec{Scalar::rational(1)}};
    CHECK(in_point_closure(upoly({-1, 1}), z1).member);

    auto v = in_point_closure(upoly({1}), z1);
    CHECK_FALSE(v.member);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->point[0] == Scalar::rational(1));

    std::vector<Vec> z2{Vec{Scalar::rational(1)}, Vec{Scalar::rational(2)}};
    CHECK(in_point_closure(upoly({2, -3, 1}), z2).member);
}

TEST_CASE("in_k_jet_closure on the spec'd cases") {
    auto ideal = IdealPresentation::make(1, {upoly({0, 0, 1})});  // (y^2)

    auto v1 = in_k_jet_closure(upoly({0, 1}), ideal, 1);
    CHECK_FALSE(v1.member);
    REQUIRE(v1.witness.has_value());
    CHECK(v1.witness->point[0] == Scalar::rational(0));

    CHECK(in_k_jet_closure(upoly({0, 0, 1, 1}), ideal, 3).member);  // y^3 + y^2
    CHECK(in_k_jet_closure(upoly({0, 0, 1}), ideal, 1).member);     // jet is zero
}

TEST_CASE("jet closures work with supplied multivariate zero sets") {
    MultiPoly y1 = MultiPoly::variable(2, 0);
    MultiPoly y2sq = MultiPoly::monomial({0, 2}, Scalar::rational(1));
    std::vector<Vec> origin{Vec{Scalar::rational(0), Scalar::rational(0)}};
    auto ideal = IdealPresentation::make(2, {y1, y2sq}, origin);

    MultiPoly y2 = MultiPoly::variable(2, 1);
    CHECK_FALSE(in_k_jet_closure(y2, ideal, 1).member);
    CHECK_FALSE(in_k_jet_closure(y2, ideal, 2).member);
    CHECK(in_k_jet_closure(y2sq, ideal, 2).member);
    CHECK(in_k_jet_closure(y1, ideal, 3).member);
}

TEST_CASE("minimal_jet_order finds the separating order") {
    auto cubic = IdealPresentation::make(1, {upoly({0, 0, 0, 1})});  // (y^3)
    CHECK(minimal_jet_order(upoly({0, 1}), cubic, 6) == 1);
    CHECK_FALSE(minimal_jet_order(upoly({0, 0, 0, 1}), cubic, 6).has_value());
    CHECK(minimal_jet_order(upoly({0, 0, 1}), cubic, 6) == 2);
}

TEST_CASE("hierarchy_check is consistent on fixed and random inputs") {
    auto sq = IdealPresentation::make(1, {upoly({0, 0, 1})});
    HierarchyReport r1 = hierarchy_check(sq, {upoly({0, 1})}, 4);
    CHECK(r1.consistent);
    CHECK(r1.samples[0].point_member);
    CHECK(r1.samples[0].jet_member[0]);
    CHECK_FALSE(r1.samples[0].jet_member[1]);

    auto line = IdealPresentation::make(1, {upoly({0, 1})});
    HierarchyReport r2 = hierarchy_check(line, {upoly({0, 0, 0, 0, 0, 1})}, 4);
    CHECK(r2.consistent);
    for (bool m : r2.samples[0].jet_member) CHECK(m);

    Rng rng(909090);
    std::vector<MultiPoly> samples;
    for (int i = 0; i < 60; ++i) {
        MultiPoly f = random_upoly(rng, 8);
        if (!f.is_zero()) samples.push_back(f);
    }
    MultiPoly p = upoly({0, 1}) * upoly({-1, 1}) * upoly({-1, 1});  // y (y-1)^2
    HierarchyReport r3 = hierarchy_check(IdealPresentation::make(1, {p}), samples, 6);
    CHECK(r3.consistent);
}

TEST_CASE("membership at the generator degree agrees with exact division") {
    Rng rng(808080);
    std::vector<MultiPoly> ps{
        upoly({0, 1}) * upoly({-1, 1}),                    // y(y-1)
        upoly({0, 0, 1}) * upoly({-2, 1}),                 // y^2 (y-2)
        upoly({-1, 1}) * upoly({-1, 1}) * upoly({1, 1}),   // (y-1)^2 (y+1)
    };
    for (const auto& p : ps) {
        auto ideal = IdealPresentation::make(1, {p});
        int d = p.degree();
        for (int it = 0; it < 60; ++it) {
            MultiPoly f = random_upoly(rng, 3 * d);
            if (f.is_zero()) continue;
            if (it % 3 == 0) f = f * p;  // force members into the sample
            bool by_division = divides_oracle(p, f);
            bool by_jets = in_k_jet_closure(f, ideal, d).member;
            CHECK(by_jets == by_division);
        }
    }
}

TEST_CASE("jet closures are nested downward in the order") {
    Rng rng(707070);
    MultiPoly p = upoly({0, 0, 1}) * upoly({-1, 1});  // y^2 (y-1)
    auto ideal = IdealPresentation::make(1, {p});
    for (int it = 0; it < 40; ++it) {
        MultiPoly f = random_upoly(rng, 9);
        if (f.is_zero()) continue;
        bool prev = true;
        for (int k = 0; k <= 6; ++k) {
            bool cur = in_k_jet_closure(f, ideal, k).member;
            if (!prev) CHECK_FALSE(cur);  // once out, further orders stay out
            prev = cur;
        }
        if (in_k_jet_closure(f, ideal, 0).member) CHECK(in_point_closure(f, ideal.zeros).member);
    }
}
