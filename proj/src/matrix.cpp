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

#include "mscheme/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace mscheme {

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
    Vec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
    Vec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec vec_scale(const Scalar& c, const Vec& v) {
    Vec r(v);
    for (auto& x : r) x *= c;
    return r;
}

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); });
}

Vec vec_zero(int dim, Mode mode) { return Vec(static_cast<size_t>(dim), Scalar::zero(mode)); }

DenseMatrix::DenseMatrix(int rows, int cols, Mode mode)
    : rows_(rows), cols_(cols), mode_(mode) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
    e_.assign(static_cast<size_t>(rows) * cols, Scalar::zero(mode));
}

DenseMatrix DenseMatrix::identity(int n, Mode mode) {
    DenseMatrix m(n, n, mode);
    for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(mode));
    return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty() || rows[0].empty())
        throw DimensionMismatch("from_rows requires at least one row and column");
    Mode mode = rows[0][0].mode();
    DenseMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), mode);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw DimensionMismatch("ragged rows");
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.set(static_cast<int>(i), static_cast<int>(j), rows[i][j]);
    }
    return m;
}

DenseMatrix DenseMatrix::from_columns(const std::vector<Vec>& cols) {
    if (cols.empty() || cols[0].empty())
        throw DimensionMismatch("from_columns requires at least one row and column");
    Mode mode = cols[0][0].mode();
    DenseMatrix m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()), mode);
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != cols[0].size()) throw DimensionMismatch("ragged columns");
        for (size_t i = 0; i < cols[j].size(); ++i)
            m.set(static_cast<int>(i), static_cast<int>(j), cols[j][i]);
    }
    return m;
}

void DenseMatrix::set(int i, int j, const Scalar& v) {
    if (v.mode() != mode_)
        throw ModeMismatch("matrix entry mode differs from matrix mode");
    e_[static_cast<size_t>(i) * cols_ + j] = v;
}

Vec DenseMatrix::row(int i) const {
    Vec r;
    r.reserve(cols_);
    for (int j = 0; j < cols_; ++j) r.push_back(at(i, j));
    return r;
}

Vec DenseMatrix::col(int j) const {
    Vec c;
    c.reserve(rows_);
    for (int i = 0; i < rows_; ++i) c.push_back(at(i, j));
    return c;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_, mode_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
}

Scalar DenseMatrix::trace() const {
    if (!is_square()) throw NotSquare("trace of a non-square matrix");
    Scalar s = Scalar::zero(mode_);
    for (int i = 0; i < rows_; ++i) s += at(i, i);
    return s;
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : e_) m = std::max(m, x.abs());
    return m;
}

bool DenseMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Scalar& x) { return x.is_zero(); });
}

DenseMatrix DenseMatrix::to_numeric() const {
    DenseMatrix m(rows_, cols_, Mode::numeric);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.set(i, j, at(i, j).to_numeric());
    return m;
}

DenseMatrix DenseMatrix::pow(unsigned k) const {
    if (!is_square()) throw NotSquare("power of a non-square matrix");
    DenseMatrix acc = identity(rows_, mode_);
    for (unsigned i = 0; i < k; ++i) acc = acc * (*this);
    return acc;
}

Vec DenseMatrix::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw DimensionMismatch("matrix-vector size mismatch");
    Vec r = vec_zero(rows_, mode_);
    for (int i = 0; i < rows_; ++i) {
        Scalar s = Scalar::zero(mode_);
        for (int j = 0; j < cols_; ++j) s += at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw DimensionMismatch("matrix addition size mismatch");
    if (a.mode_ != b.mode_) throw ModeMismatch("matrix addition mixes modes");
    DenseMatrix r(a);
    for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
    return r;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw DimensionMismatch("matrix subtraction size mismatch");
    if (a.mode_ != b.mode_) throw ModeMismatch("matrix subtraction mixes modes");
    DenseMatrix r(a);
    for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
    return r;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product inner sizes differ");
    if (a.mode_ != b.mode_) throw ModeMismatch("matrix product mixes modes");
    DenseMatrix r(a.rows_, b.cols_, a.mode_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j)
                r.set(i, j, r.at(i, j) + aik * b.at(k, j));
        }
    return r;
}

DenseMatrix operator*(const Scalar& c, const DenseMatrix& a) {
    if (c.mode() != a.mode_) throw ModeMismatch("scalar-matrix product mixes modes");
    DenseMatrix r(a);
    for (auto& x : r.e_) x *= c;
    return r;
}

DenseMatrix DenseMatrix::operator-() const {
    DenseMatrix r(*this);
    for (auto& x : r.e_) x = -x;
    return r;
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    if (a.mode_ != b.mode_) throw ModeMismatch("matrix comparison mixes modes");
    for (size_t i = 0; i < a.e_.size(); ++i)
        if (a.e_[i] != b.e_[i]) return false;
    return true;
}

DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b) { return a * b; }

namespace {

double zero_threshold(const DenseMatrix& a, std::optional<double> tol) {
    if (a.mode() == Mode::exact) return 0.0;
    if (!tol) throw ModeMismatch("numeric-mode elimination requires a rank tolerance");
    return *tol * std::max(1.0, a.max_abs());
}

bool entry_is_zero(const Scalar& x, Mode mode, double thresh) {
    if (mode == Mode::exact) return x.is_zero();
    return x.abs() <= thresh;
}

}  // namespace

RrefResult rref(const DenseMatrix& a, std::optional<double> tol) {
    const double thresh = zero_threshold(a, tol);
    DenseMatrix m(a);
    std::vector<int> pivots;
    int prow = 0;
    for (int col = 0; col < m.cols() && prow < m.rows(); ++col) {
        int best = -1;
        double best_mag = 0.0;
        for (int i = prow; i < m.rows(); ++i) {
            const Scalar& x = m.at(i, col);
            if (entry_is_zero(x, m.mode(), thresh)) continue;
            if (m.mode() == Mode::exact) {
                best = i;
                break;
            }
            double mag = x.abs();
            if (mag > best_mag) {
                best_mag = mag;
                best = i;
            }
        }
        if (best < 0) continue;
        if (best != prow)
            for (int j = 0; j < m.cols(); ++j) {
                Scalar t = m.at(prow, j);
                m.set(prow, j, m.at(best, j));
                m.set(best, j, t);
            }
        Scalar inv = Scalar::one(m.mode()) / m.at(prow, col);
        for (int j = col; j < m.cols(); ++j) m.set(prow, j, inv * m.at(prow, j));
        m.set(prow, col, Scalar::one(m.mode()));
        for (int i = 0; i < m.rows(); ++i) {
            if (i == prow) continue;
            const Scalar f = m.at(i, col);
            if (entry_is_zero(f, m.mode(), thresh)) {
                if (!f.is_zero()) m.set(i, col, Scalar::zero(m.mode()));
                continue;
            }
            for (int j = col; j < m.cols(); ++j)
                m.set(i, j, m.at(i, j) - f * m.at(prow, j));
            m.set(i, col, Scalar::zero(m.mode()));
        }
        pivots.push_back(col);
        ++prow;
    }
    int rank = static_cast<int>(pivots.size());
    return RrefResult(std::move(m), std::move(pivots), rank);
}

std::vector<Vec> kernel_basis(const DenseMatrix& a, std::optional<double> tol) {
    RrefResult r = rref(a, tol);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int p : r.pivot_cols) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (int f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v = vec_zero(a.cols(), a.mode());
        v[f] = Scalar::one(a.mode());
        for (int pi = 0; pi < r.rank; ++pi)
            v[r.pivot_cols[pi]] = -r.mat.at(pi, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vec> column_space_basis(const DenseMatrix& a, std::optional<double> tol) {
    RrefResult r = rref(a, tol);
    std::vector<Vec> basis;
    basis.reserve(r.pivot_cols.size());
    for (int p : r.pivot_cols) basis.push_back(a.col(p));
    return basis;
}

std::optional<Vec> solve(const DenseMatrix& a, const Vec& b, std::optional<double> tol) {
    if (static_cast<int>(b.size()) != a.rows())
        throw DimensionMismatch("solve: right-hand side size mismatch");
    DenseMatrix aug(a.rows(), a.cols() + 1, a.mode());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.set(i, j, a.at(i, j));
        aug.set(i, a.cols(), b[i]);
    }
    RrefResult r = rref(aug, tol);
    for (int p : r.pivot_cols)
        if (p == a.cols()) return std::nullopt;  // inconsistent
    Vec x = vec_zero(a.cols(), a.mode());
    for (int pi = 0; pi < r.rank; ++pi) x[r.pivot_cols[pi]] = r.mat.at(pi, a.cols());
    return x;
}

int SpanBuilder::leading_index(const Vec& v) const {
    double thresh = 0.0;
    if (!v.empty() && v[0].mode() == Mode::numeric) {
        if (!tol_) throw ModeMismatch("numeric-mode span requires a tolerance");
        double scale = 1.0;
        for (const auto& x : v) scale = std::max(scale, x.abs());
        thresh = *tol_ * scale;
    }
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].mode() == Mode::exact ? !v[i].is_zero() : v[i].abs() > thresh)
            return static_cast<int>(i);
    }
    return -1;
}

Vec SpanBuilder::reduce(Vec v) const {
    for (const auto& [lead, row] : rows_) {
        const Scalar& c = v[static_cast<size_t>(lead)];
        if (!c.is_zero()) v = vec_sub(v, vec_scale(c, row));
    }
    return v;
}

bool SpanBuilder::add(const Vec& v) {
    if (static_cast<int>(v.size()) != ambient_)
        throw DimensionMismatch("span vector has wrong length");
    Vec red = reduce(v);
    int lead = leading_index(red);
    if (lead < 0) return false;
    Scalar inv = Scalar::one(red[0].mode()) / red[static_cast<size_t>(lead)];
    red = vec_scale(inv, red);
    for (auto& [l, row] : rows_) {
        const Scalar& c = row[static_cast<size_t>(lead)];
        if (!c.is_zero()) row = vec_sub(row, vec_scale(c, red));
    }
    rows_.push_back({lead, std::move(red)});
    std::sort(rows_.begin(), rows_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return true;
}

std::vector<Vec> SpanBuilder::basis() const {
    std::vector<Vec> out;
    out.reserve(rows_.size());
    for (const auto& [l, row] : rows_) out.push_back(row);
    return out;
}

DenseMatrix inverse(const DenseMatrix& a, std::optional<double> tol) {
    if (!a.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
    DenseMatrix aug(a.rows(), 2 * a.cols(), a.mode());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.set(i, j, a.at(i, j));
        aug.set(i, a.cols() + i, Scalar::one(a.mode()));
    }
    RrefResult r = rref(aug, tol);
    if (r.rank < a.rows() ||
        (r.rank > 0 && r.pivot_cols[r.rank - 1] >= a.cols()))
        throw DivisionByZero("matrix is singular");
    DenseMatrix inv(a.rows(), a.cols(), a.mode());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) inv.set(i, j, r.mat.at(i, a.cols() + j));
    return inv;
}

}  // namespace mscheme
