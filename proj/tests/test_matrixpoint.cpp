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

#include "mscheme/errors.hpp"
#include "mscheme/matrixpoint.hpp"
#include "test_support.hpp"

using namespace mscheme;
using mtest::exact_matrix;
using mtest::Rng;

namespace {

MatrixTuple tuple_of(std::vector<std::vector<std::vector<long>>> mats) {
    std::vector<DenseMatrix> ms;
    for (const auto& m : mats) ms.push_back(exact_matrix(m));
    return new_tuple(std::move(ms));
}

MatrixTuple jordan2() { return tuple_of({{{0, 1}, {0, 0}}}); }
MatrixTuple diag12() { return tuple_of({{{1, 0}, {0, 2}}}); }

MultiPoly upoly1(std::initializer_list<long> coeffs_low_to_high, int nvars = 1, int var = 0) {
    MultiPoly p(nvars);
    unsigned k = 0;
    for (long c : coeffs_low_to_high) {
        Exponents e(static_cast<size_t>(nvars), 0u);
        e[static_cast<size_t>(var)] = k;
        p.set_coeff(e, Scalar::rational(c));
        ++k;
    }
    return p;
}

MultiPoly random_poly(Rng& rng, int nvars, int deg, int terms) {
    MultiPoly p(nvars);
    std::uniform_int_distribution<unsigned> d(0, static_cast<unsigned>(deg));
    for (int t = 0; t < terms; ++t) {
        Exponents e;
        unsigned left = d(rng);
        for (int i = 0; i < nvars; ++i) {
            std::uniform_int_distribution<unsigned> pick(0, left);
            unsigned k = pick(rng);
            e.push_back(k);
            left -= k;
        }
        p.set_coeff(e, p.coeff(e) + mtest::random_rational(rng, -3, 3, 2));
    }
    return p;
}

}  // namespace

TEST_CASE("new_tuple validates and rejects non-commuting matrices") {
    CHECK(jordan2().r == 2);
    MatrixTuple two = tuple_of({{{1, 0}, {0, 2}}, {{3, 0}, {0, 4}}});
    CHECK(two.n == 2);
    CHECK_THROWS_AS(tuple_of({{{0, 1}, {0, 0}}, {{0, 0}, {1, 0}}}), NotCommuting);
    std::vector<DenseMatrix> bad{exact_matrix({{1, 0}, {0, 1}}), exact_matrix({{1}})};
    CHECK_THROWS_AS(new_tuple(bad), DimensionMismatch);
}

TEST_CASE("check_admissible classifies real, complex and irrational spectra") {
    CHECK_NOTHROW(check_admissible(diag12()));
    CHECK_THROWS_AS(check_admissible(tuple_of({{{0, -1}, {1, 0}}})), NonRealSpectrum);
    CHECK_THROWS_AS(check_admissible(tuple_of({{{0, 1}, {2, 0}}})), SplitFailure);

    // The same irrational-spectrum matrix is admissible numerically.
    std::vector<DenseMatrix> nm{exact_matrix({{0, 1}, {2, 0}}).to_numeric()};
    MatrixTuple tn = new_tuple(nm, 1e-9);
    CHECK_NOTHROW(check_admissible(tn, 1e-9));
}

TEST_CASE("joint_decompose on a Jordan block and a split diagonal") {
    auto s1 = joint_decompose(jordan2());
    REQUIRE(s1.size() == 1);
    CHECK(s1[0].q[0] == Scalar::rational(0));
    CHECK(s1[0].multiplicity == 2);
    CHECK(s1[0].projector == DenseMatrix::identity(2, Mode::exact));

    auto s2 = joint_decompose(diag12());
    REQUIRE(s2.size() == 2);
    CHECK(s2[0].q[0] == Scalar::rational(1));
    CHECK(s2[1].q[0] == Scalar::rational(2));
    CHECK(s2[0].multiplicity == 1);
    CHECK(s2[1].multiplicity == 1);
}

TEST_CASE("joint_decompose recovers a conjugated normal form exactly") {
    Rng rng(7001);
    // J_2(3) + J_1(5), conjugated by a random exact invertible matrix.
    DenseMatrix a = exact_matrix({{3, 1, 0}, {0, 3, 0}, {0, 0, 5}});
    DenseMatrix s = mtest::random_invertible(rng, 3);
    MatrixTuple t = new_tuple({mtest::conjugate(a, s)});
    auto support = joint_decompose(t);
    REQUIRE(support.size() == 2);
    CHECK(support[0].q[0] == Scalar::rational(3));
    CHECK(support[0].multiplicity == 2);
    CHECK(support[1].q[0] == Scalar::rational(5));
    CHECK(support[1].multiplicity == 1);
}

TEST_CASE("projectors are complete, orthogonal and give the nilpotency bound") {
    Rng rng(7002);
    for (int it = 0; it < 10; ++it) {
        mtest::NormalFormTuple nf = mtest::random_normal_form(rng, 4, 2);
        DenseMatrix s = mtest::random_invertible(rng, 4);
        std::vector<DenseMatrix> ms;
        for (const auto& m : nf.matrices) ms.push_back(mtest::conjugate(m, s));
        MatrixTuple t = new_tuple(ms);
        auto support = joint_decompose(t);

        DenseMatrix sum(4, 4, Mode::exact);
        for (const auto& sp : support) sum = sum + sp.projector;
        CHECK(sum == DenseMatrix::identity(4, Mode::exact));
        for (size_t i = 0; i < support.size(); ++i)
            for (size_t j = i + 1; j < support.size(); ++j)
                CHECK((support[i].projector * support[j].projector).is_zero());
        for (const auto& sp : support)
            for (int i = 0; i < t.n; ++i) {
                DenseMatrix shifted = t.matrices[static_cast<size_t>(i)];
                for (int k = 0; k < t.r; ++k)
                    shifted.set(k, k, shifted.at(k, k) - sp.q[static_cast<size_t>(i)]);
                CHECK((shifted * sp.projector).pow(static_cast<unsigned>(t.r)).is_zero());
                CHECK(t.matrices[static_cast<size_t>(i)] * sp.projector ==
                      sp.projector * t.matrices[static_cast<size_t>(i)]);
            }
    }
}

TEST_CASE("fiber_algebra dimensions against the independent closure oracle") {
    // Span{I, N} for the Jordan block, via plain fraction elimination.
    auto fiber = fiber_algebra(jordan2());
    CHECK(fiber.algebra.dim == 2);
    REQUIRE(fiber.locals.size() == 1);
    CHECK(fiber.locals[0].dim == 2);
    CHECK(fiber.locals[0].nilpotency_index == 2);
    {
        std::vector<std::vector<mpq_class>> rows{{1, 0, 0, 1}, {0, 1, 0, 0}};
        CHECK(mtest::rank_oracle(rows) == fiber.algebra.dim);
    }

    auto fiber2 = fiber_algebra(diag12());
    CHECK(fiber2.algebra.dim == 2);
    REQUIRE(fiber2.locals.size() == 2);
    CHECK(fiber2.locals[0].dim == 1);
    CHECK(fiber2.locals[1].dim == 1);

    MatrixTuple j3 = tuple_of({{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}});
    auto fiber3 = fiber_algebra(j3);
    CHECK(fiber3.algebra.dim == 3);
    REQUIRE(fiber3.locals.size() == 1);
    CHECK(fiber3.locals[0].nilpotency_index == 3);
}

TEST_CASE("fiber idempotents coincide with the support projectors") {
    Rng rng(7003);
    for (int it = 0; it < 5; ++it) {
        mtest::NormalFormTuple nf = mtest::random_normal_form(rng, 4, 2);
        DenseMatrix s = mtest::random_invertible(rng, 4);
        std::vector<DenseMatrix> ms;
        for (const auto& m : nf.matrices) ms.push_back(mtest::conjugate(m, s));
        MatrixTuple t = new_tuple(ms);
        FiberAlgebra fa = fiber_algebra(t);
        REQUIRE(fa.decomposition.has_value());
        // Embedding reproduces matrix products as structure constants.
        for (int i = 0; i < fa.algebra.dim; ++i)
            for (int j = 0; j < fa.algebra.dim; ++j) {
                DenseMatrix prod(t.r, t.r, Mode::exact);
                const Vec& c = fa.algebra.mul[static_cast<size_t>(i)][static_cast<size_t>(j)];
                for (int k = 0; k < fa.algebra.dim; ++k)
                    if (!c[static_cast<size_t>(k)].is_zero())
                        prod = prod + c[static_cast<size_t>(k)] * fa.embedding[static_cast<size_t>(k)];
                CHECK(prod == fa.embedding[static_cast<size_t>(i)] * fa.embedding[static_cast<size_t>(j)]);
            }
        // Lemma bound at every support point.
        for (const auto& lf : fa.locals) CHECK(lf.nilpotency_index <= t.r);
    }
}

TEST_CASE("evaluate substitutes polynomials directly") {
    CHECK(evaluate(jordan2(), upoly1({0, 0, 1})).is_zero());  // y^2 at the Jordan block
    DenseMatrix d = evaluate(diag12(), upoly1({0, 1, 0, 1}));  // y^3 + y
    CHECK(d.at(0, 0) == Scalar::rational(2));
    CHECK(d.at(1, 1) == Scalar::rational(10));
    CHECK(d.at(0, 1).is_zero());

    // y^5 and 0 agree because their 1-jets at the support agree.
    CHECK(evaluate(jordan2(), upoly1({0, 0, 0, 0, 0, 1})) == evaluate(jordan2(), MultiPoly(1)));
}

TEST_CASE("evaluate through jets matches direct substitution") {
    Rng rng(7004);
    std::vector<MatrixTuple> tuples;
    tuples.push_back(jordan2());
    tuples.push_back(diag12());
    {
        DenseMatrix a = exact_matrix({{3, 1, 0}, {0, 3, 0}, {0, 0, 5}});
        DenseMatrix b = exact_matrix({{7, 2, 0}, {0, 7, 0}, {0, 0, 1}});
        DenseMatrix s = mtest::random_invertible(rng, 3);
        tuples.push_back(new_tuple({mtest::conjugate(a, s), mtest::conjugate(b, s)}));
    }
    for (const auto& t : tuples) {
        auto support = joint_decompose(t);
        for (int it = 0; it < 10; ++it) {
            MultiPoly f = random_poly(rng, t.n, 2 * t.r, 5);
            std::vector<Jet> jets;
            for (const auto& sp : support)
                jets.push_back(truncate(f, make_jet_ring(t.n, t.r - 1, sp.q)));
            CHECK(evaluate(t, jets) == evaluate(t, f));
        }
    }
}

TEST_CASE("evaluate jet route reports missing or low-order jets") {
    MatrixTuple t = jordan2();
    std::vector<Jet> none;
    CHECK_THROWS_AS(evaluate(t, none), MissingJet);
    Vec origin{Scalar::rational(0)};
    std::vector<Jet> low{Jet::unit(make_jet_ring(1, 0, origin))};
    CHECK_THROWS_AS(evaluate(t, low), JetOrderTooLow);
}

TEST_CASE("evaluate is a unital ring homomorphism") {
    Rng rng(7005);
    MatrixTuple t = tuple_of({{{1, 1, 0}, {0, 1, 0}, {0, 0, 2}}, {{5, 0, 0}, {0, 5, 0}, {0, 0, 3}}});
    CHECK(evaluate(t, MultiPoly::constant(2, Scalar::rational(1))) ==
          DenseMatrix::identity(3, Mode::exact));
    for (int i = 0; i < t.n; ++i)
        CHECK(evaluate(t, MultiPoly::variable(2, i)) == t.matrices[static_cast<size_t>(i)]);
    for (int it = 0; it < 25; ++it) {
        MultiPoly f = random_poly(rng, 2, 4, 4);
        MultiPoly g = random_poly(rng, 2, 4, 4);
        CHECK(evaluate(t, f + g) == evaluate(t, f) + evaluate(t, g));
        CHECK(evaluate(t, f * g) == evaluate(t, f) * evaluate(t, g));
    }
}

TEST_CASE("matching truncations force equal evaluations") {
    Rng rng(7006);
    MatrixTuple t = tuple_of({{{2, 1}, {0, 2}}});
    auto support = joint_decompose(t);
    REQUIRE(support.size() == 1);
    for (int it = 0; it < 20; ++it) {
        MultiPoly f = random_poly(rng, 1, 4, 4);
        // g = f + (y-2)^r * w has the same (r-1)-jet at the support point 2.
        MultiPoly shift = upoly1({-2, 1});
        MultiPoly g = f + shift * shift * random_poly(rng, 1, 3, 3);
        CHECK(evaluate(t, f) == evaluate(t, g));
    }
}

TEST_CASE("scheme_report assembles support, local algebras and filtrations") {
    SchemeReport r1 = scheme_report(jordan2());
    CHECK(r1.admissible);
    REQUIRE(r1.support.size() == 1);
    CHECK(r1.support[0].local_dim == 2);
    CHECK(r1.support[0].multiplicity == 2);
    CHECK(r1.support[0].filtration == std::vector<int>{2, 1, 0});
    CHECK(r1.determinacy_order == 1);  // = r - 1

    SchemeReport r2 = scheme_report(diag12());
    CHECK(r2.determinacy_order == 0);
    REQUIRE(r2.support.size() == 2);
    CHECK(r2.support[0].filtration == std::vector<int>{1, 0});

    MatrixTuple idt = tuple_of({{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}});
    SchemeReport r3 = scheme_report(idt);
    REQUIRE(r3.support.size() == 1);
    CHECK(r3.support[0].q[0] == Scalar::rational(1));
    CHECK(r3.support[0].local_dim == 1);
    CHECK(r3.determinacy_order == 0);
}

TEST_CASE("pushforward filtrations on Jordan data") {
    PushforwardModule p1 = pushforward(jordan2());
    REQUIRE(p1.points.size() == 1);
    CHECK(p1.points[0].filtration == std::vector<int>{2, 1, 0});
    CHECK(p1.total_length == 2);

    PushforwardModule p2 = pushforward(diag12());
    REQUIRE(p2.points.size() == 2);
    CHECK(p2.points[0].filtration == std::vector<int>{1, 0});
    CHECK(p2.points[1].filtration == std::vector<int>{1, 0});

    Rng rng(7007);
    DenseMatrix a = exact_matrix({{3, 1, 0}, {0, 3, 0}, {0, 0, 5}});
    DenseMatrix s = mtest::random_invertible(rng, 3);
    PushforwardModule p3 = pushforward(new_tuple({mtest::conjugate(a, s)}));
    REQUIRE(p3.points.size() == 2);
    CHECK(p3.points[0].q[0] == Scalar::rational(3));
    CHECK(p3.points[0].filtration == std::vector<int>{2, 1, 0});
    CHECK(p3.points[1].filtration == std::vector<int>{1, 0});
    CHECK(p3.total_length == 3);
}

TEST_CASE("graph prefixes the base coordinates") {
    Vec x{Scalar::rational(1), Scalar::rational(1)};
    SchemeReport g = graph(jordan2(), x);
    REQUIRE(g.support.size() == 1);
    CHECK(g.n == 3);
    CHECK(g.support[0].q[0] == Scalar::rational(1));
    CHECK(g.support[0].q[1] == Scalar::rational(1));
    CHECK(g.support[0].q[2] == Scalar::rational(0));
    CHECK(g.support[0].multiplicity == 2);

    SchemeReport g2 = graph(diag12(), Vec{Scalar::rational(0)});
    REQUIRE(g2.support.size() == 2);
    CHECK(g2.support[0].q[0] == Scalar::rational(0));
    CHECK(g2.support[0].q[1] == Scalar::rational(1));
}

TEST_CASE("surrogate handles empty generators, fibers and complex residues") {
    SurrogateAlgebra none = surrogate(2, {});
    CHECK(none.algebra.dim == 1);
    CHECK_FALSE(none.has_complex_residue);

    SurrogateAlgebra j2 = surrogate(2, {exact_matrix({{0, 1}, {0, 0}})});
    CHECK(j2.algebra.dim == 2);
    CHECK(j2.decomposition.factors.size() == 1);
    CHECK_FALSE(j2.has_complex_residue);

    SurrogateAlgebra rot = surrogate(2, {exact_matrix({{0, -1}, {1, 0}})});
    CHECK(rot.algebra.dim == 2);
    CHECK(rot.has_complex_residue);
    REQUIRE(rot.decomposition.factors.size() == 1);
    CHECK(rot.decomposition.factors[0].residue == ResidueKind::complex_pair);

    CHECK_THROWS_AS(surrogate(2, {exact_matrix({{0, 1}, {0, 0}}), exact_matrix({{0, 0}, {1, 0}})}),
                    NotCommuting);
}

TEST_CASE("char_ideal_compare: equality for single Jordan blocks, strict for duplicates") {
    CharIdealComparison c1 = char_ideal_compare(jordan2());
    REQUIRE(c1.entries.size() == 1);
    CHECK(c1.entries[0].dim_quotient == 2);
    CHECK(c1.entries[0].dim_fiber == 2);
    CHECK(c1.entries[0].equal);

    CharIdealComparison c2 = char_ideal_compare(diag12());
    for (const auto& e : c2.entries) {
        CHECK(e.dim_quotient == 1);
        CHECK(e.dim_fiber == 1);
        CHECK(e.equal);
    }

    // The same Jordan generator twice: quotient is the full order-1 jet
    // plane (dim 3), the fiber stays span{I, N} (dim 2).
    MatrixTuple dup = tuple_of({{{0, 1}, {0, 0}}, {{0, 1}, {0, 0}}});
    CharIdealComparison c3 = char_ideal_compare(dup);
    REQUIRE(c3.entries.size() == 1);
    CHECK(c3.entries[0].dim_quotient == 3);
    CHECK(c3.entries[0].dim_fiber == 2);
    CHECK_FALSE(c3.entries[0].equal);
    CHECK(c3.all_geq);
}

TEST_CASE("scheme reports are invariant under exact conjugation") {
    Rng rng(7008);
    for (int it = 0; it < 6; ++it) {
        mtest::NormalFormTuple nf = mtest::random_normal_form(rng, 4, 2);
        MatrixTuple t0 = new_tuple(nf.matrices);
        SchemeReport base = scheme_report(t0);
        for (int c = 0; c < 2; ++c) {
            DenseMatrix s = mtest::random_invertible(rng, 4);
            std::vector<DenseMatrix> ms;
            for (const auto& m : nf.matrices) ms.push_back(mtest::conjugate(m, s));
            SchemeReport rep = scheme_report(new_tuple(ms));
            REQUIRE(rep.support.size() == base.support.size());
            CHECK(rep.determinacy_order == base.determinacy_order);
            for (size_t k = 0; k < rep.support.size(); ++k) {
                CHECK(rep.support[k].q == base.support[k].q);
                CHECK(rep.support[k].multiplicity == base.support[k].multiplicity);
                CHECK(rep.support[k].local_dim == base.support[k].local_dim);
                CHECK(rep.support[k].nilpotency == base.support[k].nilpotency);
                CHECK(rep.support[k].filtration == base.support[k].filtration);
            }
        }
    }
}

TEST_CASE("numeric mode reproduces the Jordan block report") {
    std::vector<DenseMatrix> ms{exact_matrix({{0, 1}, {0, 0}}).to_numeric()};
    MatrixTuple t = new_tuple(ms, 1e-9);
    SchemeReport rep = scheme_report(t, 1e-9);
    REQUIRE(rep.support.size() == 1);
    CHECK(rep.support[0].multiplicity == 2);
    CHECK(rep.support[0].local_dim == 2);
    CHECK(rep.support[0].nilpotency == 2);
    CHECK(rep.support[0].filtration == std::vector<int>{2, 1, 0});
    CHECK(rep.determinacy_order == 1);
}

TEST_CASE("rank one tuples reduce to a single real point") {
    MatrixTuple t = tuple_of({{{5}}, {{-2}}});
    SchemeReport rep = scheme_report(t);
    REQUIRE(rep.support.size() == 1);
    CHECK(rep.support[0].q[0] == Scalar::rational(5));
    CHECK(rep.support[0].q[1] == Scalar::rational(-2));
    CHECK(rep.support[0].local_dim == 1);
    CHECK(rep.determinacy_order == 0);
    CHECK(rep.support[0].filtration == std::vector<int>{1, 0});
}
