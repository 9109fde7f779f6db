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

#include <algorithm>

#include "mscheme/errors.hpp"
#include "mscheme/weil.hpp"
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

FiniteCommAlgebra real_line() { return mtest::truncated_line(1); }

bool same_algebra(const FiniteCommAlgebra& a, const FiniteCommAlgebra& b) {
    if (a.dim != b.dim) return false;
    if (a.unit != b.unit) return false;
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            if (a.mul[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                b.mul[static_cast<size_t>(i)][static_cast<size_t>(j)])
                return false;
    return true;
}

}  // namespace

TEST_CASE("verify_algebra accepts the dual numbers and reports tampering") {
    FiniteCommAlgebra dual = mtest::truncated_line(2);
    CHECK(verify_algebra(dual).ok);

    FiniteCommAlgebra bad = dual;
    bad.mul[0][1][0] = Scalar::rational(7);  // break e_0*e_1 == e_1*e_0
    AlgebraVerdict v = verify_algebra(bad);
    CHECK_FALSE(v.ok);
    CHECK(v.law == "commutativity");
    CHECK(v.i == 0);
    CHECK(v.j == 1);

    FiniteCommAlgebra assoc = mtest::truncated_line(3);
    assoc.mul[1][2][0] = Scalar::rational(1);  // x*x^2 = 1, so (x*x)*x^2 != x*(x*x^2)
    assoc.mul[2][1][0] = Scalar::rational(1);
    AlgebraVerdict v2 = verify_algebra(assoc);
    CHECK_FALSE(v2.ok);
    CHECK(v2.law == "associativity");
}

TEST_CASE("decompose splits R x R into two one-dimensional factors") {
    FiniteCommAlgebra rr = mtest::direct_sum(real_line(), real_line());
    AlgebraDecomposition dec = decompose(rr);
    REQUIRE(dec.factors.size() == 2);
    for (const auto& f : dec.factors) {
        CHECK(f.weil.dim() == 1);
        CHECK(f.weil.nilpotency_index == 1);
        CHECK(f.residue == ResidueKind::real);
    }
    std::vector<Vec> idems{dec.factors[0].idempotent, dec.factors[1].idempotent};
    Vec e0{Scalar::rational(1), Scalar::rational(0)};
    Vec e1{Scalar::rational(0), Scalar::rational(1)};
    CHECK(((idems[0] == e0 && idems[1] == e1) || (idems[0] == e1 && idems[1] == e0)));
}

TEST_CASE("decompose keeps R[x]/(x^3) local with nilpotency index 3") {
    AlgebraDecomposition dec = decompose(mtest::truncated_line(3));
    REQUIRE(dec.factors.size() == 1);
    CHECK(dec.factors[0].weil.dim() == 3);
    CHECK(dec.factors[0].weil.nilpotency_index == 3);
    CHECK(dec.factors[0].idempotent == dec.source.unit);
}

TEST_CASE("decompose R[x]/(x^2-1) against the hand-computed CRT idempotents") {
    FiniteCommAlgebra a = mtest::univariate_quotient(upoly({-1, 0, 1}));
    AlgebraDecomposition dec = decompose(a);
    REQUIRE(dec.factors.size() == 2);
    CHECK(dec.factors[0].weil.dim() == 1);
    CHECK(dec.factors[1].weil.dim() == 1);
    // (1 - x)/2 and (1 + x)/2 in the basis {1, x}.
    Vec eminus{Scalar::rational(1, 2), Scalar::rational(-1, 2)};
    Vec eplus{Scalar::rational(1, 2), Scalar::rational(1, 2)};
    std::vector<Vec> idems{dec.factors[0].idempotent, dec.factors[1].idempotent};
    CHECK(((idems[0] == eminus && idems[1] == eplus) ||
           (idems[0] == eplus && idems[1] == eminus)));
}

TEST_CASE("decompose raises SplitFailure and ComplexResidue as classified") {
    CHECK_THROWS_AS(decompose(mtest::univariate_quotient(upoly({-2, 0, 1}))), SplitFailure);
    CHECK_THROWS_AS(decompose(mtest::univariate_quotient(upoly({1, 0, 1}))), ComplexResidue);

    AlgebraDecomposition lenient = decompose_lenient(mtest::univariate_quotient(upoly({1, 0, 1})));
    REQUIRE(lenient.factors.size() == 1);
    CHECK(lenient.factors[0].residue == ResidueKind::complex_pair);
    CHECK(lenient.factors[0].weil.dim() == 2);
    CHECK(lenient.has_complex_residue());
    // SplitFailure is fatal even in the lenient route.
    CHECK_THROWS_AS(decompose_lenient(mtest::univariate_quotient(upoly({-2, 0, 1}))), SplitFailure);
}

TEST_CASE("is_weil on the three spec'd cases") {
    CHECK(is_weil(mtest::truncated_line(2)));
    CHECK_FALSE(is_weil(mtest::direct_sum(real_line(), real_line())));
    FiniteCommAlgebra fat_point = mtest::monomial_quotient(2, {{2, 0}, {1, 1}, {0, 2}});
    CHECK(fat_point.dim == 3);
    CHECK(is_weil(fat_point));
}

TEST_CASE("nilpotency_index on lines, planes and the real point") {
    AlgebraDecomposition point = decompose(real_line());
    CHECK(point.factors[0].weil.nilpotency_index == 1);
    for (int r = 2; r <= 5; ++r) {
        AlgebraDecomposition dec = decompose(mtest::truncated_line(r));
        REQUIRE(dec.factors.size() == 1);
        CHECK(dec.factors[0].weil.nilpotency_index == r);
        CHECK(nilpotency_index(dec.factors[0].weil) == r);
    }
    FiniteCommAlgebra plane = mtest::monomial_quotient(2, {{2, 0}, {0, 2}});
    AlgebraDecomposition dec = decompose(plane);
    REQUIRE(dec.factors.size() == 1);
    CHECK(dec.factors[0].weil.dim() == 4);
    CHECK(dec.factors[0].weil.nilpotency_index == 3);
}

TEST_CASE("tensor with the base point is the identity") {
    AlgebraDecomposition dec = decompose(mtest::truncated_line(3));
    WeilAlgebra s = dec.factors[0].weil;
    WeilAlgebra pt = decompose(real_line()).factors[0].weil;
    WeilAlgebra t = tensor(pt, s);
    CHECK(t.dim() == s.dim());
    CHECK(t.nilpotency_index == s.nilpotency_index);
    CHECK(same_algebra(t.algebra, s.algebra));
}

TEST_CASE("tensor of monomial lines matches the bivariate quotient oracle") {
    auto line_weil = [&](int r) { return decompose(mtest::truncated_line(r)).factors[0].weil; };

    WeilAlgebra t22 = tensor(line_weil(2), line_weil(2));
    CHECK(t22.dim() == 4);
    CHECK(t22.nilpotency_index == 3);
    AlgebraDecomposition oracle22 = decompose(mtest::monomial_quotient(2, {{2, 0}, {0, 2}}));
    CHECK(oracle22.factors[0].weil.dim() == t22.dim());
    CHECK(oracle22.factors[0].weil.nilpotency_index == t22.nilpotency_index);

    WeilAlgebra t32 = tensor(line_weil(3), line_weil(2));
    CHECK(t32.dim() == 6);
    CHECK(t32.nilpotency_index == 4);
    AlgebraDecomposition oracle32 = decompose(mtest::monomial_quotient(2, {{3, 0}, {0, 2}}));
    CHECK(oracle32.factors[0].weil.dim() == t32.dim());
    CHECK(oracle32.factors[0].weil.nilpotency_index == t32.nilpotency_index);
}

TEST_CASE("tensor dimension and index laws over a pair library") {
    std::vector<WeilAlgebra> lib;
    for (int r = 1; r <= 4; ++r) lib.push_back(decompose(mtest::truncated_line(r)).factors[0].weil);
    lib.push_back(decompose(mtest::monomial_quotient(2, {{2, 0}, {0, 2}})).factors[0].weil);
    lib.push_back(decompose(mtest::monomial_quotient(2, {{2, 0}, {1, 1}, {0, 2}})).factors[0].weil);
    for (const auto& r : lib)
        for (const auto& s : lib) {
            WeilAlgebra t = tensor(r, s);
            CHECK(t.dim() == r.dim() * s.dim());
            CHECK(t.nilpotency_index == r.nilpotency_index + s.nilpotency_index - 1);
            CHECK(is_weil(t.algebra));
        }
}

TEST_CASE("subalgebra_check on spans of the truncated line") {
    FiniteCommAlgebra amb = mtest::truncated_line(3);
    std::vector<Vec> just_unit{amb.unit};
    CHECK(subalgebra_check(amb, just_unit));

    Vec one = amb.basis_vector(0), x = amb.basis_vector(1), x2 = amb.basis_vector(2);
    CHECK_FALSE(subalgebra_check(amb, {one, x}));  // x*x escapes the span
    CHECK(subalgebra_check(amb, {one, x2}));

    CHECK_THROWS_AS(subalgebra_check(amb, {x}), NotContainingUnit);

    FiniteCommAlgebra restricted = restrict_to_subalgebra(amb, {one, x2});
    CHECK(is_weil(restricted));
    CHECK(decompose(restricted).factors[0].weil.nilpotency_index == 2);
}

TEST_CASE("accepted sub-spans of a Weil ambient restrict to Weil algebras") {
    Rng rng(2077);
    FiniteCommAlgebra amb = mtest::monomial_quotient(2, {{2, 0}, {0, 2}});
    int accepted = 0;
    for (int it = 0; it < 200; ++it) {
        std::uniform_int_distribution<int> extra(0, 2);
        std::vector<Vec> basis{amb.unit};
        int want = extra(rng);
        for (int i = 0; i < want; ++i) {
            Vec v = vec_zero(amb.dim, Mode::exact);
            for (int k = 0; k < amb.dim; ++k) v[static_cast<size_t>(k)] = mtest::random_rational(rng, -2, 2, 2);
            basis.push_back(v);
        }
        DenseMatrix b = DenseMatrix::from_columns(basis);
        if (rref(b).rank != static_cast<int>(basis.size())) continue;
        bool closed = subalgebra_check(amb, basis);
        if (!closed) continue;
        ++accepted;
        CHECK(is_weil(restrict_to_subalgebra(amb, basis)));
    }
    CHECK(accepted > 0);
}

TEST_CASE("decompose-then-reassemble reproduces the source constants exactly") {
    Rng rng(31337);
    std::vector<FiniteCommAlgebra> cases;
    cases.push_back(mtest::direct_sum(real_line(), mtest::truncated_line(2)));
    cases.push_back(mtest::univariate_quotient(upoly({-1, 0, 1})));
    cases.push_back(mtest::monomial_quotient(2, {{2, 0}, {0, 2}}));
    cases.push_back(mtest::direct_sum(mtest::truncated_line(3), mtest::truncated_line(2)));
    // The same algebras in scrambled bases.
    size_t fixed = cases.size();
    for (size_t i = 0; i < fixed; ++i) {
        DenseMatrix t = mtest::random_invertible(rng, cases[i].dim, -3, 3);
        cases.push_back(mtest::change_basis(cases[i], t));
    }
    for (const auto& a : cases) {
        REQUIRE(verify_algebra(a).ok);
        AlgebraDecomposition dec = decompose(a);
        int dims = 0;
        for (const auto& f : dec.factors) dims += f.weil.dim();
        CHECK(dims == a.dim);
        CHECK(same_algebra(dec.reassemble(), a));
        for (const auto& f : dec.factors) {
            Vec e = f.idempotent;
            CHECK(a.multiply(e, e) == e);
        }
    }
}

TEST_CASE("is_weil agrees with single-factor decompositions") {
    std::vector<FiniteCommAlgebra> algebras{
        mtest::truncated_line(2),
        mtest::monomial_quotient(2, {{2, 0}, {1, 1}, {0, 2}}),
        mtest::direct_sum(real_line(), real_line()),
        mtest::univariate_quotient(upoly({-1, 0, 1})),
    };
    for (const auto& a : algebras) {
        AlgebraDecomposition dec = decompose(a);
        CHECK(is_weil(a) == (dec.factors.size() == 1));
    }
}
