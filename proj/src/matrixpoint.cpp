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

#include "mscheme/matrixpoint.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <sstream>

#include "mscheme/errors.hpp"

namespace mscheme {

namespace {

double tol_value(const MatrixTuple& t, std::optional<double> tol) {
    if (t.mode == Mode::exact) return 0.0;
    return tol.value_or(kDefaultTol);
}

std::string point_str(const Vec& q) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < q.size(); ++i) os << (i ? ", " : "") << q[i].str();
    os << ")";
    return os.str();
}

// ---- numeric eigenvalues (Eigen backs only this) ----

Eigen::MatrixXcd to_eigen(const DenseMatrix& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a.at(i, j).to_complex();
    return m;
}

std::vector<std::complex<double>> numeric_eigenvalues(const DenseMatrix& a) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(a), false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("numeric eigenvalue computation failed to converge");
    std::vector<std::complex<double>> out;
    out.reserve(static_cast<size_t>(a.rows()));
    for (int i = 0; i < a.rows(); ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

// Greedy clustering of eigenvalues within an absolute radius.
std::vector<std::pair<std::complex<double>, int>> cluster_values(
    std::vector<std::complex<double>> vals, double radius) {
    std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<std::pair<std::complex<double>, int>> clusters;
    for (const auto& v : vals) {
        bool merged = false;
        for (auto& [rep, count] : clusters) {
            if (std::abs(v - rep) <= radius) {
                rep = (rep * static_cast<double>(count) + v) / static_cast<double>(count + 1);
                ++count;
                merged = true;
                break;
            }
        }
        if (!merged) clusters.push_back({v, 1});
    }
    return clusters;
}

// ---- commutation ----

void require_commuting(const std::vector<DenseMatrix>& ms, double tol, Mode mode) {
    for (size_t i = 0; i < ms.size(); ++i)
        for (size_t j = i + 1; j < ms.size(); ++j) {
            DenseMatrix c = ms[i] * ms[j] - ms[j] * ms[i];
            bool ok;
            if (mode == Mode::exact) {
                ok = c.is_zero();
            } else {
                double scale = std::max(1.0, ms[i].max_abs() * ms[j].max_abs());
                ok = c.max_abs() <= tol * scale;
            }
            if (!ok) {
                int bi = 0, bj = 0;
                double best = -1.0;
                for (int a = 0; a < c.rows(); ++a)
                    for (int b = 0; b < c.cols(); ++b)
                        if (c.at(a, b).abs() > best) {
                            best = c.at(a, b).abs();
                            bi = a;
                            bj = b;
                        }
                std::ostringstream os;
                os << "matrices " << i << " and " << j << " do not commute; commutator entry ("
                   << bi << "," << bj << ") = " << c.at(bi, bj).str();
                throw NotCommuting(os.str());
            }
        }
}

// ---- block restriction ----

DenseMatrix restrict_to_block(const DenseMatrix& a, const std::vector<Vec>& basis,
                              std::optional<double> tol) {
    DenseMatrix b = DenseMatrix::from_columns(basis);
    const int d = static_cast<int>(basis.size());
    DenseMatrix m(d, d, a.mode());
    for (int j = 0; j < d; ++j) {
        auto x = solve(b, a.apply(basis[static_cast<size_t>(j)]), tol);
        if (!x) throw std::logic_error("matrix does not preserve an invariant block");
        for (int i = 0; i < d; ++i) m.set(i, j, (*x)[static_cast<size_t>(i)]);
    }
    return m;
}

struct Block {
    std::vector<Vec> basis;
    Vec coords;
};

bool coords_less(const Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].mode() == Mode::exact) {
            const mpq_class &x = a[i].exact_value().re, &y = b[i].exact_value().re;
            if (x != y) return x < y;
        } else {
            double x = a[i].numeric_value().real(), y = b[i].numeric_value().real();
            if (x != y) return x < y;
        }
    }
    return false;
}

std::vector<Block> split_block_exact(const Block& blk, const DenseMatrix& a, int matrix_index) {
    const int d = static_cast<int>(blk.basis.size());
    DenseMatrix m = restrict_to_block(a, blk.basis, {});
    MultiPoly p = char_poly(m);
    if (!p.is_rational_coeffs())
        throw NonRealSpectrum("matrix " + std::to_string(matrix_index) +
                              " has a non-real characteristic polynomial on an invariant block");
    RationalRoots rr = rational_roots(p);
    if (rr.remainder_degree > 0) {
        if (rr.remainder_has_complex)
            throw NonRealSpectrum("matrix " + std::to_string(matrix_index) +
                                  " has non-real eigenvalues; offending factor " +
                                  rr.remainder.str());
        throw SplitFailure("matrix " + std::to_string(matrix_index) +
                           " has real spectrum that does not split over Q; offending factor " +
                           rr.remainder.str() + "; rerun in numeric mode");
    }
    std::vector<Block> out;
    if (rr.roots.size() == 1) {
        Block whole = blk;
        whole.coords.push_back(Scalar::rational(rr.roots[0].root));
        out.push_back(std::move(whole));
        return out;
    }
    DenseMatrix bmat = DenseMatrix::from_columns(blk.basis);
    for (const auto& root : rr.roots) {
        DenseMatrix shifted(m);
        Scalar lambda = Scalar::rational(root.root);
        for (int i = 0; i < d; ++i) shifted.set(i, i, shifted.at(i, i) - lambda);
        auto ker = kernel_basis(shifted.pow(static_cast<unsigned>(d)));
        if (static_cast<int>(ker.size()) != root.multiplicity)
            throw std::logic_error("generalized eigenspace dimension mismatch");
        Block sub;
        for (const auto& k : ker) sub.basis.push_back(bmat.apply(k));
        sub.coords = blk.coords;
        sub.coords.push_back(lambda);
        out.push_back(std::move(sub));
    }
    return out;
}

std::vector<Block> split_block_numeric(const Block& blk, const DenseMatrix& a, double tol) {
    const int d = static_cast<int>(blk.basis.size());
    DenseMatrix m = restrict_to_block(a, blk.basis, tol);
    double radius = tol * std::max(1.0, m.max_abs());
    auto clusters = cluster_values(numeric_eigenvalues(m), radius);
    std::vector<Block> out;
    if (clusters.size() == 1) {
        Block whole = blk;
        std::complex<double> rep = clusters[0].first;
        whole.coords.push_back(Scalar::numeric(rep.real(), 0.0));
        out.push_back(std::move(whole));
        return out;
    }
    DenseMatrix bmat = DenseMatrix::from_columns(blk.basis);
    int total = 0;
    for (const auto& [rep, count] : clusters) {
        DenseMatrix shifted(m);
        Scalar lambda = Scalar::numeric(rep);
        for (int i = 0; i < d; ++i) shifted.set(i, i, shifted.at(i, i) - lambda);
        auto ker = kernel_basis(shifted.pow(static_cast<unsigned>(d)), tol);
        if (ker.empty()) throw std::runtime_error("numeric eigenspace lost; adjust the tolerance");
        Block sub;
        for (const auto& k : ker) sub.basis.push_back(bmat.apply(k));
        sub.coords = blk.coords;
        sub.coords.push_back(Scalar::numeric(rep.real(), 0.0));
        total += static_cast<int>(ker.size());
        out.push_back(std::move(sub));
    }
    if (total != d)
        throw std::runtime_error("numeric eigenspace dimensions are inconsistent; adjust the tolerance");
    return out;
}

// ---- closure of matrix spans over the reals ----

Vec vectorize_matrix(const DenseMatrix& m) {
    Vec v;
    v.reserve(static_cast<size_t>(2 * m.rows() * m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const Scalar& x = m.at(i, j);
            if (x.mode() == Mode::exact) {
                v.push_back(Scalar::rational(x.exact_value().re));
                v.push_back(Scalar::rational(x.exact_value().im));
            } else {
                v.push_back(Scalar::numeric(x.numeric_value().real(), 0.0));
                v.push_back(Scalar::numeric(x.numeric_value().imag(), 0.0));
            }
        }
    return v;
}

struct MatrixClosure {
    std::vector<DenseMatrix> basis;
    DenseMatrix coord_matrix;  // vectorized basis as columns

    MatrixClosure() : coord_matrix(1, 1, Mode::exact) {}
};

MatrixClosure unital_matrix_closure(int r, Mode mode, const std::vector<DenseMatrix>& gens,
                                    std::optional<double> tol) {
    SpanBuilder span(2 * r * r, tol);
    std::vector<DenseMatrix> basis;
    auto try_add = [&](const DenseMatrix& m) {
        if (span.add(vectorize_matrix(m))) {
            basis.push_back(m);
            return true;
        }
        return false;
    };
    try_add(DenseMatrix::identity(r, mode));
    for (const auto& g : gens) try_add(g);
    bool grew = true;
    while (grew) {
        grew = false;
        const size_t sz = basis.size();
        for (size_t i = 0; i < sz; ++i)
            for (size_t j = i; j < sz; ++j)
                if (try_add(basis[i] * basis[j])) grew = true;
        if (static_cast<int>(basis.size()) > 2 * r * r)
            throw ClosureOverflow("matrix closure exceeded the ambient dimension");
    }
    MatrixClosure out;
    std::vector<Vec> cols;
    cols.reserve(basis.size());
    for (const auto& b : basis) cols.push_back(vectorize_matrix(b));
    out.coord_matrix = DenseMatrix::from_columns(cols);
    out.basis = std::move(basis);
    return out;
}

Vec express_in_closure(const MatrixClosure& c, const DenseMatrix& m, std::optional<double> tol) {
    auto x = solve(c.coord_matrix, vectorize_matrix(m), tol);
    if (!x) throw std::logic_error("matrix does not lie in the closure span");
    return *x;
}

FiniteCommAlgebra closure_algebra(const MatrixClosure& c, std::optional<double> tol, int r,
                                  Mode mode) {
    const int d = static_cast<int>(c.basis.size());
    FiniteCommAlgebra alg;
    alg.dim = d;
    alg.unit = express_in_closure(c, DenseMatrix::identity(r, mode), tol);
    alg.mul.assign(static_cast<size_t>(d), std::vector<Vec>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Vec coords = express_in_closure(c, c.basis[static_cast<size_t>(i)] *
                                                   c.basis[static_cast<size_t>(j)],
                                            tol);
            alg.mul[static_cast<size_t>(i)][static_cast<size_t>(j)] = coords;
            alg.mul[static_cast<size_t>(j)][static_cast<size_t>(i)] = std::move(coords);
        }
    return alg;
}

// Nilpotency index of a span of commuting nilpotent operators.
int matrix_span_nil_index(const std::vector<DenseMatrix>& mgens, int dim_bound,
                          std::optional<double> tol) {
    if (mgens.empty()) return 1;
    const int r = mgens[0].rows();
    auto reduce_products = [&](const std::vector<DenseMatrix>& xs) {
        SpanBuilder span(2 * r * r, tol);
        std::vector<DenseMatrix> out;
        for (const auto& x : xs)
            for (const auto& g : mgens) {
                DenseMatrix p = x * g;
                if (span.add(vectorize_matrix(p))) out.push_back(p);
            }
        return out;
    };
    std::vector<DenseMatrix> cur = mgens;
    int k = 1;
    while (!cur.empty()) {
        cur = reduce_products(cur);
        ++k;
        if (k > dim_bound + 1) throw std::logic_error("span of nilpotents is not nilpotent");
    }
    return k;
}

std::vector<SupportPoint> joint_decompose_impl(const MatrixTuple& t, std::optional<double> tol) {
    check_admissible(t, tol);
    const double ntol = tol_value(t, tol);
    std::vector<Block> blocks;
    Block whole;
    for (int i = 0; i < t.r; ++i) {
        Vec e = vec_zero(t.r, t.mode);
        e[static_cast<size_t>(i)] = Scalar::one(t.mode);
        whole.basis.push_back(std::move(e));
    }
    blocks.push_back(std::move(whole));
    for (int i = 0; i < t.n; ++i) {
        std::vector<Block> next;
        for (const auto& blk : blocks) {
            std::vector<Block> pieces =
                t.mode == Mode::exact
                    ? split_block_exact(blk, t.matrices[static_cast<size_t>(i)], i)
                    : split_block_numeric(blk, t.matrices[static_cast<size_t>(i)], ntol);
            for (auto& p : pieces) next.push_back(std::move(p));
        }
        blocks = std::move(next);
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& a, const Block& b) { return coords_less(a.coords, b.coords); });

    int total = 0;
    std::vector<Vec> all_cols;
    for (const auto& b : blocks) {
        total += static_cast<int>(b.basis.size());
        all_cols.insert(all_cols.end(), b.basis.begin(), b.basis.end());
    }
    if (total != t.r) throw std::logic_error("joint decomposition lost dimensions");

    DenseMatrix u = DenseMatrix::from_columns(all_cols);
    DenseMatrix uinv = inverse(u, t.mode == Mode::exact ? std::optional<double>{} : tol);

    std::vector<SupportPoint> support;
    int offset = 0;
    for (const auto& b : blocks) {
        const int d = static_cast<int>(b.basis.size());
        DenseMatrix ub(t.r, d, t.mode);
        DenseMatrix binv(d, t.r, t.mode);
        for (int c = 0; c < d; ++c)
            for (int row = 0; row < t.r; ++row) ub.set(row, c, u.at(row, offset + c));
        for (int row = 0; row < d; ++row)
            for (int c = 0; c < t.r; ++c) binv.set(row, c, uinv.at(offset + row, c));
        support.push_back(SupportPoint(b.coords, ub * binv, d));
        offset += d;
    }

    if (t.mode == Mode::exact) {
        DenseMatrix sum(t.r, t.r, Mode::exact);
        for (const auto& sp : support) {
            if (sp.projector * sp.projector != sp.projector)
                throw std::logic_error("support projector is not idempotent");
            sum = sum + sp.projector;
        }
        if (sum != DenseMatrix::identity(t.r, Mode::exact))
            throw std::logic_error("support projectors do not sum to the identity");
    }
    return support;
}

// Local fiber data at one support point via operators restricted to E_q.
LocalFactor numeric_local_factor(const MatrixTuple& t, const SupportPoint& sp, int support_index,
                                 double tol) {
    auto ebasis = column_space_basis(sp.projector, tol);
    const int d = static_cast<int>(ebasis.size());
    DenseMatrix emat = DenseMatrix::from_columns(ebasis);
    std::vector<DenseMatrix> restricted;
    for (int i = 0; i < t.n; ++i) {
        DenseMatrix op(d, d, Mode::numeric);
        for (int j = 0; j < d; ++j) {
            Vec w = t.matrices[static_cast<size_t>(i)].apply(ebasis[static_cast<size_t>(j)]);
            w = vec_sub(w, vec_scale(sp.q[static_cast<size_t>(i)], ebasis[static_cast<size_t>(j)]));
            auto x = solve(emat, w, tol);
            if (!x) throw std::runtime_error("support space is not invariant numerically");
            for (int row = 0; row < d; ++row) op.set(row, j, (*x)[static_cast<size_t>(row)]);
        }
        restricted.push_back(std::move(op));
    }
    MatrixClosure closure = unital_matrix_closure(d, Mode::numeric, restricted, tol);
    LocalFactor lf;
    lf.support_index = support_index;
    lf.dim = static_cast<int>(closure.basis.size());
    // Traceless parts of the closure basis span the maximal ideal.
    std::vector<DenseMatrix> nil;
    SpanBuilder nspan(2 * d * d, tol);
    for (const auto& b : closure.basis) {
        Scalar avg = b.trace() / Scalar::numeric(static_cast<double>(d));
        DenseMatrix m = b - avg * DenseMatrix::identity(d, Mode::numeric);
        if (nspan.add(vectorize_matrix(m))) nil.push_back(m);
    }
    lf.nilpotency_index = matrix_span_nil_index(nil, d, tol);
    lf.residue = ResidueKind::real;
    return lf;
}

std::vector<int> filtration_dims(const MatrixTuple& t, const SupportPoint& sp,
                                 std::optional<double> tol) {
    std::vector<DenseMatrix> ngens;
    for (int i = 0; i < t.n; ++i) {
        DenseMatrix shifted = t.matrices[static_cast<size_t>(i)];
        for (int k = 0; k < t.r; ++k)
            shifted.set(k, k, shifted.at(k, k) - sp.q[static_cast<size_t>(i)]);
        ngens.push_back(shifted * sp.projector);
    }
    std::vector<Vec> cur = column_space_basis(sp.projector, tol);
    std::vector<int> dims{static_cast<int>(cur.size())};
    while (!cur.empty()) {
        SpanBuilder span(t.r, tol);
        std::vector<Vec> next;
        for (const auto& v : cur)
            for (const auto& g : ngens) {
                Vec w = g.apply(v);
                if (span.add(w)) next.push_back(w);
            }
        dims.push_back(static_cast<int>(next.size()));
        if (!next.empty() && next.size() >= cur.size())
            throw std::logic_error("pushforward filtration is not strictly decreasing");
        cur = std::move(next);
    }
    return dims;
}

MultiPoly embed_univariate(const MultiPoly& p, int nvars, int var) {
    MultiPoly out(nvars, p.mode());
    for (const auto& [e, c] : p.terms()) {
        Exponents exps(static_cast<size_t>(nvars), 0u);
        exps[static_cast<size_t>(var)] = e[0];
        out.set_coeff(exps, c);
    }
    return out;
}

bool centers_match(const Vec& center, const Vec& q, Mode mode, double tol) {
    if (center.size() != q.size()) return false;
    for (size_t i = 0; i < q.size(); ++i) {
        if (mode == Mode::exact) {
            if (center[i] != q[i]) return false;
        } else {
            double scale = std::max(1.0, std::abs(q[i].to_complex()));
            if (std::abs(center[i].to_complex() - q[i].to_complex()) > tol * scale) return false;
        }
    }
    return true;
}

}  // namespace

MatrixTuple new_tuple(std::vector<DenseMatrix> matrices, std::optional<double> tol) {
    if (matrices.empty()) throw std::invalid_argument("a tuple needs at least one matrix");
    const int r = matrices[0].rows();
    const Mode mode = matrices[0].mode();
    for (const auto& m : matrices) {
        if (!m.is_square() || m.rows() != r)
            throw DimensionMismatch("tuple matrices must be square of equal size");
        if (m.mode() != mode) throw ModeMismatch("tuple matrices mix exact and numeric modes");
    }
    const double ntol = mode == Mode::exact ? 0.0 : tol.value_or(kDefaultTol);
    require_commuting(matrices, ntol, mode);
    MatrixTuple t;
    t.r = r;
    t.n = static_cast<int>(matrices.size());
    t.mode = mode;
    t.matrices = std::move(matrices);
    return t;
}

void check_admissible(const MatrixTuple& t, std::optional<double> tol) {
    if (t.mode == Mode::exact) {
        for (int i = 0; i < t.n; ++i) {
            MultiPoly p = char_poly(t.matrices[static_cast<size_t>(i)]);
            if (!p.is_rational_coeffs())
                throw NonRealSpectrum("matrix " + std::to_string(i) +
                                      " has a non-real characteristic polynomial");
            RationalRoots rr = rational_roots(p);
            if (rr.remainder_degree == 0) continue;
            if (rr.remainder_has_complex)
                throw NonRealSpectrum("matrix " + std::to_string(i) +
                                      " has non-real eigenvalues; offending factor " +
                                      rr.remainder.str());
            throw SplitFailure("matrix " + std::to_string(i) +
                               " has real spectrum that does not split over Q; offending factor " +
                               rr.remainder.str() + "; rerun in numeric mode");
        }
        return;
    }
    const double ntol = tol.value_or(kDefaultTol);
    for (int i = 0; i < t.n; ++i) {
        double scale = std::max(1.0, t.matrices[static_cast<size_t>(i)].max_abs());
        for (const auto& ev : numeric_eigenvalues(t.matrices[static_cast<size_t>(i)]))
            if (std::abs(ev.imag()) > ntol * scale) {
                std::ostringstream os;
                os << "matrix " << i << " has eigenvalue " << ev.real();
                os << (ev.imag() >= 0 ? "+" : "") << ev.imag() << "i";
                throw NonRealSpectrum(os.str());
            }
    }
}

std::vector<SupportPoint> joint_decompose(const MatrixTuple& t, std::optional<double> tol) {
    return joint_decompose_impl(t, tol);
}

FiberAlgebra fiber_algebra(const MatrixTuple& t, std::optional<double> tol) {
    std::vector<SupportPoint> support = joint_decompose_impl(t, tol);
    std::optional<double> ntol =
        t.mode == Mode::exact ? std::optional<double>{} : std::optional<double>{tol.value_or(kDefaultTol)};
    MatrixClosure closure = unital_matrix_closure(t.r, t.mode, t.matrices, ntol);

    FiberAlgebra fa;
    fa.r = t.r;
    fa.algebra = closure_algebra(closure, ntol, t.r, t.mode);
    fa.embedding = closure.basis;
    fa.support = support;

    if (t.mode == Mode::exact) {
        AlgebraDecomposition dec = decompose(fa.algebra);
        std::vector<LocalFactor> locals(dec.factors.size());
        std::vector<bool> used(support.size(), false);
        for (const auto& f : dec.factors) {
            DenseMatrix idem(t.r, t.r, Mode::exact);
            for (int k = 0; k < fa.algebra.dim; ++k) {
                const Scalar& c = f.idempotent[static_cast<size_t>(k)];
                if (!c.is_zero()) idem = idem + c * fa.embedding[static_cast<size_t>(k)];
            }
            int match = -1;
            for (size_t s = 0; s < support.size(); ++s)
                if (!used[s] && idem == support[s].projector) {
                    match = static_cast<int>(s);
                    break;
                }
            if (match < 0)
                throw std::logic_error("fiber factor idempotent does not match any support projector");
            used[static_cast<size_t>(match)] = true;
            LocalFactor lf;
            lf.support_index = match;
            lf.dim = f.weil.dim();
            lf.nilpotency_index = f.weil.nilpotency_index;
            lf.residue = f.residue;
            locals[static_cast<size_t>(match)] = lf;
        }
        if (dec.factors.size() != support.size())
            throw std::logic_error("fiber factor count differs from the support size");
        fa.locals = std::move(locals);
        fa.decomposition = std::move(dec);
    } else {
        const double nt = tol.value_or(kDefaultTol);
        for (size_t s = 0; s < support.size(); ++s)
            fa.locals.push_back(numeric_local_factor(t, support[s], static_cast<int>(s), nt));
    }
    return fa;
}

DenseMatrix evaluate(const MatrixTuple& t, const MultiPoly& f, std::optional<double> tol) {
    if (f.nvars() != t.n)
        throw VariableCountMismatch("polynomial variable count differs from the tuple dimension");
    if (!f.is_zero() && f.mode() != t.mode)
        throw ModeMismatch("polynomial mode differs from the tuple mode");
    check_admissible(t, tol);
    // Direct substitution; the jet route factors through the support instead.
    std::vector<std::vector<DenseMatrix>> powers(static_cast<size_t>(t.n));
    for (int i = 0; i < t.n; ++i) powers[static_cast<size_t>(i)].push_back(DenseMatrix::identity(t.r, t.mode));
    auto power = [&](int i, unsigned k) -> const DenseMatrix& {
        auto& cache = powers[static_cast<size_t>(i)];
        while (cache.size() <= k) cache.push_back(cache.back() * t.matrices[static_cast<size_t>(i)]);
        return cache[k];
    };
    DenseMatrix acc(t.r, t.r, t.mode);
    for (const auto& [e, c] : f.terms()) {
        DenseMatrix term = DenseMatrix::identity(t.r, t.mode);
        for (int i = 0; i < t.n; ++i)
            if (e[static_cast<size_t>(i)] > 0) term = term * power(i, e[static_cast<size_t>(i)]);
        acc = acc + c * term;
    }
    return acc;
}

DenseMatrix evaluate(const MatrixTuple& t, const std::vector<Jet>& jets,
                     std::optional<double> tol) {
    std::vector<SupportPoint> support = joint_decompose_impl(t, tol);
    const double ntol = tol.value_or(kDefaultTol);
    DenseMatrix acc(t.r, t.r, t.mode);
    for (const auto& sp : support) {
        const Jet* match = nullptr;
        for (const auto& j : jets) {
            if (j.ring()->nvars() != t.n || j.ring()->mode() != t.mode) continue;
            if (centers_match(j.ring()->center(), sp.q, t.mode, ntol)) {
                match = &j;
                break;
            }
        }
        if (!match) throw MissingJet("no jet centered at support point " + point_str(sp.q));
        if (match->ring()->order() < t.r - 1)
            throw JetOrderTooLow("jet at " + point_str(sp.q) + " has order " +
                                 std::to_string(match->ring()->order()) + " < " +
                                 std::to_string(t.r - 1));
        Jet jet = *match;
        if (jet.ring()->order() > t.r - 1)
            jet = jet.truncated_to(make_jet_ring(t.n, t.r - 1, jet.ring()->center()));

        std::vector<std::vector<DenseMatrix>> npowers(static_cast<size_t>(t.n));
        for (int i = 0; i < t.n; ++i) {
            DenseMatrix shifted = t.matrices[static_cast<size_t>(i)];
            for (int k = 0; k < t.r; ++k)
                shifted.set(k, k, shifted.at(k, k) - sp.q[static_cast<size_t>(i)]);
            npowers[static_cast<size_t>(i)].push_back(DenseMatrix::identity(t.r, t.mode));
            npowers[static_cast<size_t>(i)].push_back(shifted * sp.projector);
        }
        auto npower = [&](int i, unsigned k) -> const DenseMatrix& {
            auto& cache = npowers[static_cast<size_t>(i)];
            while (cache.size() <= k) cache.push_back(cache.back() * cache[1]);
            return cache[k];
        };
        const auto& basis = jet.ring()->basis();
        for (size_t b = 0; b < basis.size(); ++b) {
            const Scalar& c = jet.coeffs()[b];
            if (c.is_zero()) continue;
            DenseMatrix term = sp.projector;
            for (int i = 0; i < t.n; ++i)
                if (basis[b][static_cast<size_t>(i)] > 0)
                    term = term * npower(i, basis[b][static_cast<size_t>(i)]);
            acc = acc + c * term;
        }
    }
    return acc;
}

PushforwardModule pushforward(const MatrixTuple& t, std::optional<double> tol) {
    std::vector<SupportPoint> support = joint_decompose_impl(t, tol);
    std::optional<double> ntol =
        t.mode == Mode::exact ? std::optional<double>{} : std::optional<double>{tol.value_or(kDefaultTol)};
    PushforwardModule out;
    for (const auto& sp : support) {
        PushforwardPoint pp;
        pp.q = sp.q;
        pp.length = sp.multiplicity;
        pp.filtration = filtration_dims(t, sp, ntol);
        if (pp.filtration.front() != sp.multiplicity)
            throw std::logic_error("filtration does not start at the multiplicity");
        if (static_cast<int>(pp.filtration.size()) - 1 > t.r)
            throw std::logic_error("filtration has more steps than the rank allows");
        out.points.push_back(std::move(pp));
        out.total_length += sp.multiplicity;
    }
    if (out.total_length != t.r) throw std::logic_error("pushforward length differs from the rank");
    return out;
}

SchemeReport scheme_report(const MatrixTuple& t, std::optional<double> tol) {
    FiberAlgebra fa = fiber_algebra(t, tol);
    PushforwardModule pf = pushforward(t, tol);

    SchemeReport rep;
    rep.admissible = true;
    rep.r = t.r;
    rep.n = t.n;
    rep.mode = t.mode;
    rep.determinacy_order = 0;
    for (size_t s = 0; s < fa.support.size(); ++s) {
        SupportReportEntry e;
        e.q = fa.support[s].q;
        e.multiplicity = fa.support[s].multiplicity;
        e.local_dim = fa.locals[s].dim;
        e.nilpotency = fa.locals[s].nilpotency_index;
        e.filtration = pf.points[s].filtration;
        rep.determinacy_order = std::max(rep.determinacy_order, e.nilpotency - 1);
        rep.support.push_back(std::move(e));
    }
    if (rep.determinacy_order > t.r - 1)
        throw std::logic_error("determinacy order exceeds the rank bound");
    return rep;
}

SchemeReport graph(const MatrixTuple& t, const Vec& base_point, std::optional<double> tol) {
    for (const auto& x : base_point)
        if (x.mode() != t.mode)
            throw ModeMismatch("graph base point mode differs from the tuple mode");
    SchemeReport rep = scheme_report(t, tol);
    for (auto& e : rep.support) {
        Vec q(base_point);
        q.insert(q.end(), e.q.begin(), e.q.end());
        e.q = std::move(q);
    }
    rep.n = static_cast<int>(base_point.size()) + t.n;
    return rep;
}

SurrogateAlgebra surrogate(int r, const std::vector<DenseMatrix>& generators) {
    if (r < 1) throw std::invalid_argument("surrogate rank must be positive");
    for (const auto& g : generators) {
        if (!g.is_square() || g.rows() != r)
            throw DimensionMismatch("surrogate generators must be square of size r");
        if (g.mode() != Mode::exact)
            throw ModeMismatch("surrogate requires exact-mode generators");
    }
    require_commuting(generators, 0.0, Mode::exact);
    MatrixClosure closure = unital_matrix_closure(r, Mode::exact, generators, {});
    SurrogateAlgebra out;
    out.r = r;
    out.algebra = closure_algebra(closure, {}, r, Mode::exact);
    out.embedding = closure.basis;
    out.decomposition = decompose_lenient(out.algebra);
    out.has_complex_residue = out.decomposition.has_complex_residue();
    return out;
}

CharIdealComparison char_ideal_compare(const MatrixTuple& t) {
    if (t.mode != Mode::exact) throw ModeMismatch("char_ideal_compare requires exact mode");
    FiberAlgebra fa = fiber_algebra(t, {});
    std::vector<MultiPoly> chars;
    for (int i = 0; i < t.n; ++i)
        chars.push_back(embed_univariate(char_poly(t.matrices[static_cast<size_t>(i)]), t.n, i));

    CharIdealComparison out;
    for (size_t s = 0; s < fa.support.size(); ++s) {
        JetRingPtr ring = make_jet_ring(t.n, t.r - 1, fa.support[s].q);
        std::vector<Jet> gens;
        gens.reserve(chars.size());
        for (const auto& p : chars) gens.push_back(truncate(p, ring));
        JetIdeal ideal = jet_ideal(ring, gens);
        CharIdealEntry e;
        e.q = fa.support[s].q;
        e.dim_quotient = ring->basis_size() - ideal.dim();
        e.dim_fiber = fa.locals[s].dim;
        e.equal = e.dim_quotient == e.dim_fiber;
        if (e.dim_quotient < e.dim_fiber) out.all_geq = false;
        out.entries.push_back(std::move(e));
    }
    return out;
}

}  // namespace mscheme
