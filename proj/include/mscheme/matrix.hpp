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

#ifndef MSCHEME_MATRIX_HPP
#define MSCHEME_MATRIX_HPP

#include <optional>
#include <vector>

#include "mscheme/scalar.hpp"

namespace mscheme {

using Vec = std::vector<Scalar>;

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& v);
bool vec_is_zero(const Vec& v);
Vec vec_zero(int dim, Mode mode);

// Row-major dense matrix over Scalar. All entries share one mode; the
// constructor and entry writes enforce this.
class DenseMatrix {
   public:
    DenseMatrix(int rows, int cols, Mode mode);
    static DenseMatrix identity(int n, Mode mode);
    static DenseMatrix from_rows(const std::vector<Vec>& rows);
    static DenseMatrix from_columns(const std::vector<Vec>& cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Mode mode() const { return mode_; }
    bool is_square() const { return rows_ == cols_; }

    const Scalar& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    void set(int i, int j, const Scalar& v);

    Vec row(int i) const;
    Vec col(int j) const;

    DenseMatrix transpose() const;
    Scalar trace() const;
    double max_abs() const;
    bool is_zero() const;

    DenseMatrix to_numeric() const;

    DenseMatrix pow(unsigned k) const;

    Vec apply(const Vec& v) const;  // matrix * column vector

    friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator*(const Scalar& c, const DenseMatrix& a);
    DenseMatrix operator-() const;
    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b);
    friend bool operator!=(const DenseMatrix& a, const DenseMatrix& b) { return !(a == b); }

   private:
    int rows_, cols_;
    Mode mode_;
    std::vector<Scalar> e_;
};

DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b);

struct RrefResult {
    DenseMatrix mat;
    std::vector<int> pivot_cols;
    int rank;
    RrefResult(DenseMatrix m, std::vector<int> p, int r)
        : mat(std::move(m)), pivot_cols(std::move(p)), rank(r) {}
};

// Reduced row echelon form. Exact mode uses exact zero tests; numeric mode
// requires a tolerance and treats |x| <= tol * max(1, max_abs(input)) as zero,
// with partial pivoting by magnitude.
RrefResult rref(const DenseMatrix& a, std::optional<double> tol = {});

// Basis of the null space; empty iff injective.
std::vector<Vec> kernel_basis(const DenseMatrix& a, std::optional<double> tol = {});

// Basis of the column space (original columns at pivot positions).
std::vector<Vec> column_space_basis(const DenseMatrix& a, std::optional<double> tol = {});

// One solution of a x = b (free variables zero), or nullopt if inconsistent.
std::optional<Vec> solve(const DenseMatrix& a, const Vec& b, std::optional<double> tol = {});

// Throws DimensionMismatch if not square, DivisionByZero if singular.
DenseMatrix inverse(const DenseMatrix& a, std::optional<double> tol = {});

// Incrementally maintained row space in reduced echelon form. Exact mode
// uses exact zero tests; numeric mode needs a tolerance and treats entries
// of magnitude <= tol * max(1, incoming vector norm) as zero.
class SpanBuilder {
   public:
    explicit SpanBuilder(int ambient_dim, std::optional<double> tol = {})
        : ambient_(ambient_dim), tol_(tol) {}

    // Adds v to the span; returns true when the dimension grew.
    bool add(const Vec& v);
    bool contains(const Vec& v) const { return leading_index(reduce(v)) < 0; }
    Vec reduce(Vec v) const;

    int dim() const { return static_cast<int>(rows_.size()); }
    int ambient_dim() const { return ambient_; }

    // Echelon basis rows sorted by leading index.
    std::vector<Vec> basis() const;

    // Index of the first non-negligible entry, -1 if none.
    int leading_index(const Vec& v) const;

   private:
    int ambient_;
    std::optional<double> tol_;
    std::vector<std::pair<int, Vec>> rows_;
};

}  // namespace mscheme

#endif
