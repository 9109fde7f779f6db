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

#include "mscheme/weil.hpp"

#include <algorithm>

#include "mscheme/errors.hpp"

namespace mscheme {

Vec FiniteCommAlgebra::multiply(const Vec& a, const Vec& b) const {
    if (static_cast<int>(a.size()) != dim || static_cast<int>(b.size()) != dim)
        throw DimensionMismatch("algebra element has wrong coordinate length");
    Vec r = vec_zero(dim, mode());
    for (int i = 0; i < dim; ++i) {
        if (a[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < dim; ++j) {
            if (b[static_cast<size_t>(j)].is_zero()) continue;
            Scalar f = a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
            const Vec& c = mul[static_cast<size_t>(i)][static_cast<size_t>(j)];
            for (int k = 0; k < dim; ++k)
                if (!c[static_cast<size_t>(k)].is_zero())
                    r[static_cast<size_t>(k)] += f * c[static_cast<size_t>(k)];
        }
    }
    return r;
}

DenseMatrix FiniteCommAlgebra::mult_operator(const Vec& a) const {
    DenseMatrix m(dim, dim, mode());
    for (int j = 0; j < dim; ++j) {
        Vec col = multiply(a, basis_vector(j));
        for (int i = 0; i < dim; ++i) m.set(i, j, col[static_cast<size_t>(i)]);
    }
    return m;
}

Vec FiniteCommAlgebra::basis_vector(int i) const {
    Vec v = vec_zero(dim, mode());
    v[static_cast<size_t>(i)] = Scalar::one(mode());
    return v;
}

AlgebraVerdict verify_algebra(const FiniteCommAlgebra& a) {
    AlgebraVerdict v;
    if (a.dim <= 0 || static_cast<int>(a.unit.size()) != a.dim ||
        static_cast<int>(a.mul.size()) != a.dim) {
        v.ok = false;
        v.law = "shape";
        v.message = "structure constant tables do not match the stated dimension";
        return v;
    }
    for (int i = 0; i < a.dim; ++i) {
        if (static_cast<int>(a.mul[static_cast<size_t>(i)].size()) != a.dim) {
            v.ok = false;
            v.law = "shape";
            v.message = "structure constant tables do not match the stated dimension";
            return v;
        }
        for (int j = 0; j < a.dim; ++j)
            if (static_cast<int>(a.mul[static_cast<size_t>(i)][static_cast<size_t>(j)].size()) !=
                a.dim) {
                v.ok = false;
                v.law = "shape";
                v.message = "structure constant tables do not match the stated dimension";
                return v;
            }
    }
    for (int i = 0; i < a.dim; ++i)
        for (int j = i + 1; j < a.dim; ++j)
            if (a.mul[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                a.mul[static_cast<size_t>(j)][static_cast<size_t>(i)]) {
                v.ok = false;
                v.law = "commutativity";
                v.i = i;
                v.j = j;
                v.message = "e_i*e_j differs from e_j*e_i";
                return v;
            }
    for (int i = 0; i < a.dim; ++i) {
        Vec ue = a.multiply(a.unit, a.basis_vector(i));
        if (ue != a.basis_vector(i)) {
            v.ok = false;
            v.law = "unit";
            v.i = i;
            v.message = "unit*e_i differs from e_i";
            return v;
        }
    }
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            for (int k = 0; k < a.dim; ++k) {
                Vec left = a.multiply(a.mul[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                      a.basis_vector(k));
                Vec right = a.multiply(a.basis_vector(i),
                                       a.mul[static_cast<size_t>(j)][static_cast<size_t>(k)]);
                if (left != right) {
                    v.ok = false;
                    v.law = "associativity";
                    v.i = i;
                    v.j = j;
                    v.k = k;
                    v.message = "(e_i e_j) e_k differs from e_i (e_j e_k)";
                    return v;
                }
            }
    return v;
}

namespace {

void require_exact(const FiniteCommAlgebra& a, const char* op) {
    if (a.mode() != Mode::exact)
        throw ModeMismatch(std::string(op) + " requires an exact-mode algebra");
}

std::vector<Vec> nilradical_basis(const FiniteCommAlgebra& a) {
    // Kernel of the trace form tr(L_a L_b); valid in characteristic zero.
    std::vector<DenseMatrix> ops;
    ops.reserve(static_cast<size_t>(a.dim));
    for (int i = 0; i < a.dim; ++i) ops.push_back(a.mult_operator(a.basis_vector(i)));
    DenseMatrix t(a.dim, a.dim, a.mode());
    for (int i = 0; i < a.dim; ++i)
        for (int j = i; j < a.dim; ++j) {
            Scalar s = (ops[static_cast<size_t>(i)] * ops[static_cast<size_t>(j)]).trace();
            t.set(i, j, s);
            t.set(j, i, s);
        }
    return kernel_basis(t);
}

struct QuotientModel {
    std::vector<Vec> nil_basis;        // basis of the nilradical, ambient coordinates
    std::vector<Vec> complement;       // ambient vectors projecting to a quotient basis
    DenseMatrix basis_matrix;          // columns: nil_basis then complement
    DenseMatrix basis_inverse;
    int s = 0;                         // quotient dimension

    explicit QuotientModel(int d) : basis_matrix(d, d, Mode::exact), basis_inverse(d, d, Mode::exact) {}

    Vec quotient_coords(const Vec& v) const {
        Vec full = basis_inverse.apply(v);
        return Vec(full.end() - s, full.end());
    }

    Vec lift(const Vec& qcoords) const {
        Vec v = vec_zero(static_cast<int>(basis_matrix.rows()), Mode::exact);
        for (int i = 0; i < s; ++i)
            v = vec_add(v, vec_scale(qcoords[static_cast<size_t>(i)], complement[static_cast<size_t>(i)]));
        return v;
    }
};

QuotientModel build_quotient(const FiniteCommAlgebra& a, std::vector<Vec> nil) {
    QuotientModel qm(a.dim);
    qm.nil_basis = std::move(nil);
    SpanBuilder span(a.dim);
    for (const auto& v : qm.nil_basis) span.add(v);
    for (int i = 0; i < a.dim && span.dim() < a.dim; ++i) {
        Vec e = a.basis_vector(i);
        if (span.add(e)) qm.complement.push_back(e);
    }
    std::vector<Vec> cols(qm.nil_basis);
    cols.insert(cols.end(), qm.complement.begin(), qm.complement.end());
    qm.basis_matrix = DenseMatrix::from_columns(cols);
    qm.basis_inverse = inverse(qm.basis_matrix);
    qm.s = static_cast<int>(qm.complement.size());
    return qm;
}

// Quotient algebra structure constants on the complement images.
FiniteCommAlgebra quotient_algebra(const FiniteCommAlgebra& a, const QuotientModel& qm) {
    FiniteCommAlgebra q;
    q.dim = qm.s;
    q.unit = qm.quotient_coords(a.unit);
    q.mul.assign(static_cast<size_t>(qm.s), std::vector<Vec>(static_cast<size_t>(qm.s)));
    for (int i = 0; i < qm.s; ++i)
        for (int j = 0; j < qm.s; ++j)
            q.mul[static_cast<size_t>(i)][static_cast<size_t>(j)] = qm.quotient_coords(
                a.multiply(qm.complement[static_cast<size_t>(i)], qm.complement[static_cast<size_t>(j)]));
    return q;
}

struct SemisimpleBlock {
    std::vector<Vec> basis;  // quotient coordinates
    bool complex_residue = false;
};

DenseMatrix restrict_operator(const DenseMatrix& op, const std::vector<Vec>& basis) {
    DenseMatrix b = DenseMatrix::from_columns(basis);
    int d = static_cast<int>(basis.size());
    DenseMatrix m(d, d, op.mode());
    for (int j = 0; j < d; ++j) {
        auto x = solve(b, op.apply(basis[static_cast<size_t>(j)]));
        if (!x) throw std::logic_error("operator does not preserve an invariant block");
        for (int i = 0; i < d; ++i) m.set(i, j, (*x)[static_cast<size_t>(i)]);
    }
    return m;
}

DenseMatrix eval_poly_at(const MultiPoly& p, const DenseMatrix& m) {
    DenseMatrix acc(m.rows(), m.rows(), m.mode());
    DenseMatrix pw = DenseMatrix::identity(m.rows(), m.mode());
    for (int k = 0; k <= std::max(p.degree(), 0); ++k) {
        Scalar c = p.coeff1(k);
        if (!c.is_zero()) acc = acc + c * pw;
        pw = pw * m;
    }
    return acc;
}

std::vector<Vec> map_block(const std::vector<Vec>& basis, const std::vector<Vec>& kernel) {
    DenseMatrix b = DenseMatrix::from_columns(basis);
    std::vector<Vec> out;
    out.reserve(kernel.size());
    for (const auto& k : kernel) out.push_back(b.apply(k));
    return out;
}

// Splits the semisimple quotient into ideal blocks using the rational
// spectra of its multiplication operators.
std::vector<SemisimpleBlock> split_semisimple(const FiniteCommAlgebra& q) {
    std::vector<SemisimpleBlock> blocks;
    SemisimpleBlock whole;
    for (int i = 0; i < q.dim; ++i) whole.basis.push_back(q.basis_vector(i));
    blocks.push_back(std::move(whole));

    for (int g = 0; g < q.dim; ++g) {
        DenseMatrix op = q.mult_operator(q.basis_vector(g));
        std::vector<SemisimpleBlock> next;
        for (auto& blk : blocks) {
            if (blk.basis.size() == 1) {
                next.push_back(std::move(blk));
                continue;
            }
            DenseMatrix m = restrict_operator(op, blk.basis);
            RationalRoots rr = rational_roots(char_poly(m));
            if (rr.remainder_degree > 0 && rr.remainder_real_roots > 0)
                throw SplitFailure("minimal polynomial has a real factor that does not split over Q: " +
                                   rr.remainder.str());
            std::vector<SemisimpleBlock> pieces;
            for (const auto& root : rr.roots) {
                DenseMatrix shifted(m);
                Scalar lambda = Scalar::rational(root.root);
                for (int i = 0; i < m.rows(); ++i)
                    shifted.set(i, i, shifted.at(i, i) - lambda);
                auto ker = kernel_basis(shifted);
                if (!ker.empty()) {
                    SemisimpleBlock piece;
                    piece.basis = map_block(blk.basis, ker);
                    piece.complex_residue = blk.complex_residue;
                    pieces.push_back(std::move(piece));
                }
            }
            if (rr.remainder_degree > 0) {
                auto ker = kernel_basis(eval_poly_at(rr.remainder, m));
                if (!ker.empty()) {
                    SemisimpleBlock piece;
                    piece.basis = map_block(blk.basis, ker);
                    piece.complex_residue = true;
                    pieces.push_back(std::move(piece));
                }
            }
            size_t total = 0;
            for (const auto& p : pieces) total += p.basis.size();
            if (total != blk.basis.size())
                throw std::logic_error("semisimple block splitting lost dimensions");
            for (auto& p : pieces) next.push_back(std::move(p));
        }
        blocks = std::move(next);
    }
    return blocks;
}

Vec newton_lift_idempotent(const FiniteCommAlgebra& a, Vec e) {
    const Scalar two = Scalar::rational(2);
    const Scalar three = Scalar::rational(3);
    for (int it = 0; it < 64; ++it) {
        Vec e2 = a.multiply(e, e);
        if (e2 == e) return e;
        Vec e3 = a.multiply(e2, e);
        e = vec_sub(vec_scale(three, e2), vec_scale(two, e3));
    }
    throw std::logic_error("idempotent lifting did not converge");
}

std::vector<Vec> ideal_power_basis(const FiniteCommAlgebra& a, const std::vector<Vec>& prev,
                                   const std::vector<Vec>& m) {
    SpanBuilder span(a.dim);
    std::vector<Vec> out;
    for (const auto& x : prev)
        for (const auto& y : m) {
            Vec p = a.multiply(x, y);
            if (span.add(p)) out.push_back(p);
        }
    return out;
}

int nil_index_of_ideal(const FiniteCommAlgebra& a, const std::vector<Vec>& m) {
    if (m.empty()) return 1;
    std::vector<Vec> cur = m;
    int k = 1;
    while (!cur.empty()) {
        cur = ideal_power_basis(a, cur, m);
        ++k;
        if (k > a.dim + 1) throw std::logic_error("maximal ideal is not nilpotent");
    }
    return k;
}

AlgebraDecomposition decompose_impl(const FiniteCommAlgebra& a, bool lenient) {
    require_exact(a, "decompose");
    AlgebraVerdict verdict = verify_algebra(a);
    if (!verdict.ok)
        throw std::invalid_argument("decompose requires a valid algebra: " + verdict.law + " fails (" +
                                    verdict.message + ")");

    QuotientModel qm = build_quotient(a, nilradical_basis(a));
    FiniteCommAlgebra quot = quotient_algebra(a, qm);
    std::vector<SemisimpleBlock> blocks = split_semisimple(quot);

    if (!lenient)
        for (const auto& b : blocks)
            if (b.complex_residue)
                throw ComplexResidue("algebra has a maximal ideal with residue field C");
    for (const auto& b : blocks)
        if (b.basis.size() >= 2 && !b.complex_residue)
            throw std::logic_error("unsplit real semisimple block");

    // Components of the quotient unit in each block are its idempotents.
    DenseMatrix all_blocks_cols(quot.dim, quot.dim, Mode::exact);
    {
        std::vector<Vec> cols;
        for (const auto& b : blocks) cols.insert(cols.end(), b.basis.begin(), b.basis.end());
        all_blocks_cols = DenseMatrix::from_columns(cols);
    }
    Vec unit_coords = inverse(all_blocks_cols).apply(quot.unit);

    AlgebraDecomposition dec;
    dec.source = a;
    int offset = 0;
    for (const auto& b : blocks) {
        int bd = static_cast<int>(b.basis.size());
        Vec ebar = vec_zero(quot.dim, Mode::exact);
        for (int i = 0; i < bd; ++i)
            ebar = vec_add(ebar, vec_scale(unit_coords[static_cast<size_t>(offset + i)],
                                           b.basis[static_cast<size_t>(i)]));
        offset += bd;

        Vec e = newton_lift_idempotent(a, qm.lift(ebar));

        // Factor basis: column space of multiplication by the idempotent.
        DenseMatrix le = a.mult_operator(e);
        std::vector<Vec> fbasis = column_space_basis(le);
        DenseMatrix fcols = DenseMatrix::from_columns(fbasis);
        int fd = static_cast<int>(fbasis.size());

        FiniteCommAlgebra fa;
        fa.dim = fd;
        auto coords_in_factor = [&](const Vec& v) {
            auto x = solve(fcols, v);
            if (!x) throw std::logic_error("vector not inside its own factor");
            return *x;
        };
        fa.unit = coords_in_factor(e);
        fa.mul.assign(static_cast<size_t>(fd), std::vector<Vec>(static_cast<size_t>(fd)));
        for (int i = 0; i < fd; ++i)
            for (int j = 0; j < fd; ++j)
                fa.mul[static_cast<size_t>(i)][static_cast<size_t>(j)] = coords_in_factor(
                    a.multiply(fbasis[static_cast<size_t>(i)], fbasis[static_cast<size_t>(j)]));

        // Maximal ideal of the factor: e * nilradical.
        SpanBuilder mspan(a.dim);
        std::vector<Vec> mbasis_factor;
        for (const auto& nv : qm.nil_basis) {
            Vec en = a.multiply(e, nv);
            if (mspan.add(en)) mbasis_factor.push_back(coords_in_factor(en));
        }
        WeilAlgebra w;
        w.algebra = std::move(fa);
        w.max_ideal = std::move(mbasis_factor);
        w.nilpotency_index = nil_index_of_ideal(w.algebra, w.max_ideal);

        DecompFactor factor;
        factor.weil = std::move(w);
        factor.ambient_basis = std::move(fbasis);
        factor.idempotent = e;
        factor.residue = b.complex_residue ? ResidueKind::complex_pair : ResidueKind::real;
        if (factor.residue == ResidueKind::real &&
            static_cast<int>(factor.weil.max_ideal.size()) != fd - 1)
            throw std::logic_error("real factor maximal ideal has unexpected dimension");
        dec.factors.push_back(std::move(factor));
    }

    std::sort(dec.factors.begin(), dec.factors.end(), [](const DecompFactor& x, const DecompFactor& y) {
        if (x.weil.dim() != y.weil.dim()) return x.weil.dim() < y.weil.dim();
        for (size_t i = 0; i < x.idempotent.size(); ++i) {
            const GaussRat& gx = x.idempotent[i].exact_value();
            const GaussRat& gy = y.idempotent[i].exact_value();
            if (gx.re != gy.re) return gx.re < gy.re;
            if (gx.im != gy.im) return gx.im < gy.im;
        }
        return false;
    });

    // Idempotent sanity: orthogonal, complete.
    Vec esum = vec_zero(a.dim, Mode::exact);
    for (const auto& f : dec.factors) esum = vec_add(esum, f.idempotent);
    if (esum != a.unit) throw std::logic_error("idempotents do not sum to the unit");
    for (size_t i = 0; i < dec.factors.size(); ++i)
        for (size_t j = i + 1; j < dec.factors.size(); ++j)
            if (!vec_is_zero(a.multiply(dec.factors[i].idempotent, dec.factors[j].idempotent)))
                throw std::logic_error("idempotents are not orthogonal");

    return dec;
}

}  // namespace

bool AlgebraDecomposition::has_complex_residue() const {
    return std::any_of(factors.begin(), factors.end(), [](const DecompFactor& f) {
        return f.residue == ResidueKind::complex_pair;
    });
}

FiniteCommAlgebra AlgebraDecomposition::reassemble() const {
    std::vector<Vec> cols;
    std::vector<std::pair<int, int>> slot;  // (factor, index within factor)
    for (size_t f = 0; f < factors.size(); ++f)
        for (size_t i = 0; i < factors[f].ambient_basis.size(); ++i) {
            cols.push_back(factors[f].ambient_basis[i]);
            slot.push_back({static_cast<int>(f), static_cast<int>(i)});
        }
    DenseMatrix b = DenseMatrix::from_columns(cols);
    DenseMatrix binv = inverse(b);
    const int d = source.dim;

    auto block_multiply = [&](const Vec& u, const Vec& v) {
        Vec out = vec_zero(d, Mode::exact);
        int pos = 0;
        for (const auto& f : factors) {
            int fd = f.weil.dim();
            Vec uf(u.begin() + pos, u.begin() + pos + fd);
            Vec vf(v.begin() + pos, v.begin() + pos + fd);
            Vec pf = f.weil.algebra.multiply(uf, vf);
            for (int i = 0; i < fd; ++i) out[static_cast<size_t>(pos + i)] = pf[static_cast<size_t>(i)];
            pos += fd;
        }
        return out;
    };

    FiniteCommAlgebra rebuilt;
    rebuilt.dim = d;
    rebuilt.mul.assign(static_cast<size_t>(d), std::vector<Vec>(static_cast<size_t>(d)));
    std::vector<Vec> coords;
    for (int i = 0; i < d; ++i) coords.push_back(binv.apply(source.basis_vector(i)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            rebuilt.mul[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                b.apply(block_multiply(coords[static_cast<size_t>(i)], coords[static_cast<size_t>(j)]));
    rebuilt.unit = source.unit;
    return rebuilt;
}

AlgebraDecomposition decompose(const FiniteCommAlgebra& a) { return decompose_impl(a, false); }

AlgebraDecomposition decompose_lenient(const FiniteCommAlgebra& a) { return decompose_impl(a, true); }

bool is_weil(const FiniteCommAlgebra& a) {
    AlgebraDecomposition dec = decompose(a);
    return dec.factors.size() == 1 && dec.factors[0].residue == ResidueKind::real;
}

int nilpotency_index(const WeilAlgebra& w) { return nil_index_of_ideal(w.algebra, w.max_ideal); }

WeilAlgebra tensor(const WeilAlgebra& r, const WeilAlgebra& s) {
    require_exact(r.algebra, "tensor");
    require_exact(s.algebra, "tensor");
    const int dr = r.dim(), ds = s.dim();
    const int d = dr * ds;
    auto idx = [&](int i, int j) { return i * ds + j; };

    FiniteCommAlgebra t;
    t.dim = d;
    t.unit = vec_zero(d, Mode::exact);
    for (int i = 0; i < dr; ++i)
        for (int j = 0; j < ds; ++j)
            t.unit[static_cast<size_t>(idx(i, j))] =
                r.algebra.unit[static_cast<size_t>(i)] * s.algebra.unit[static_cast<size_t>(j)];
    t.mul.assign(static_cast<size_t>(d), std::vector<Vec>(static_cast<size_t>(d)));
    for (int i1 = 0; i1 < dr; ++i1)
        for (int j1 = 0; j1 < ds; ++j1)
            for (int i2 = 0; i2 < dr; ++i2)
                for (int j2 = 0; j2 < ds; ++j2) {
                    Vec c = vec_zero(d, Mode::exact);
                    const Vec& cr = r.algebra.mul[static_cast<size_t>(i1)][static_cast<size_t>(i2)];
                    const Vec& cs = s.algebra.mul[static_cast<size_t>(j1)][static_cast<size_t>(j2)];
                    for (int k1 = 0; k1 < dr; ++k1) {
                        if (cr[static_cast<size_t>(k1)].is_zero()) continue;
                        for (int k2 = 0; k2 < ds; ++k2)
                            if (!cs[static_cast<size_t>(k2)].is_zero())
                                c[static_cast<size_t>(idx(k1, k2))] =
                                    cr[static_cast<size_t>(k1)] * cs[static_cast<size_t>(k2)];
                    }
                    t.mul[static_cast<size_t>(idx(i1, j1))][static_cast<size_t>(idx(i2, j2))] =
                        std::move(c);
                }

    AlgebraDecomposition dec = decompose(t);
    if (dec.factors.size() != 1)
        throw std::logic_error("tensor product of Weil algebras is not local");
    // The single factor spans the whole tensor algebra; return it on the
    // product basis so callers see the e_i (x) f_j indexing.
    const DecompFactor& f = dec.factors[0];
    DenseMatrix fb = DenseMatrix::from_columns(f.ambient_basis);
    WeilAlgebra out;
    out.algebra = t;
    out.max_ideal.clear();
    for (const auto& mv : f.weil.max_ideal)
        out.max_ideal.push_back(fb.apply(mv));  // factor coords -> product-basis coords
    out.nilpotency_index = f.weil.nilpotency_index;
    return out;
}

bool subalgebra_check(const FiniteCommAlgebra& ambient, const std::vector<Vec>& sub_basis) {
    require_exact(ambient, "subalgebra_check");
    if (sub_basis.empty()) throw NotContainingUnit("empty sub-basis cannot contain the unit");
    DenseMatrix b = DenseMatrix::from_columns(sub_basis);
    if (rref(b).rank != static_cast<int>(sub_basis.size()))
        throw std::invalid_argument("sub_basis vectors are linearly dependent");
    if (!solve(b, ambient.unit))
        throw NotContainingUnit("span of sub_basis does not contain the unit");
    for (size_t i = 0; i < sub_basis.size(); ++i)
        for (size_t j = i; j < sub_basis.size(); ++j)
            if (!solve(b, ambient.multiply(sub_basis[i], sub_basis[j]))) return false;
    return true;
}

FiniteCommAlgebra restrict_to_subalgebra(const FiniteCommAlgebra& ambient,
                                         const std::vector<Vec>& sub_basis) {
    if (!subalgebra_check(ambient, sub_basis))
        throw std::invalid_argument("span of sub_basis is not multiplicatively closed");
    DenseMatrix b = DenseMatrix::from_columns(sub_basis);
    const int d = static_cast<int>(sub_basis.size());
    FiniteCommAlgebra out;
    out.dim = d;
    out.unit = *solve(b, ambient.unit);
    out.mul.assign(static_cast<size_t>(d), std::vector<Vec>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out.mul[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                *solve(b, ambient.multiply(sub_basis[static_cast<size_t>(i)], sub_basis[static_cast<size_t>(j)]));
    return out;
}

}  // namespace mscheme
