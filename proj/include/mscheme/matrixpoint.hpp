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

#ifndef MSCHEME_MATRIXPOINT_HPP
#define MSCHEME_MATRIXPOINT_HPP

#include <optional>
#include <vector>

#include "mscheme/jets.hpp"
#include "mscheme/matrix.hpp"
#include "mscheme/poly.hpp"
#include "mscheme/weil.hpp"

namespace mscheme {

inline constexpr double kDefaultTol = 1e-9;

// An n-tuple of pairwise commuting r x r matrices: the coordinate images of
// a map from a rank-r matrix point into R^n.
struct MatrixTuple {
    int r = 0;
    int n = 0;
    Mode mode = Mode::exact;
    std::vector<DenseMatrix> matrices;
};

// Validates sizes, common mode and pairwise commutation. NotCommuting names
// the offending pair and a nonzero commutator entry.
MatrixTuple new_tuple(std::vector<DenseMatrix> matrices, std::optional<double> tol = {});

// A joint eigenvalue tuple with its spectral projector.
struct SupportPoint {
    Vec q;                  // coordinates in R^n
    DenseMatrix projector;  // r x r, idempotent, commutes with the tuple
    int multiplicity = 0;   // rank of the projector

    SupportPoint(Vec coords, DenseMatrix p, int mult)
        : q(std::move(coords)), projector(std::move(p)), multiplicity(mult) {}
};

// Throws NonRealSpectrum when some matrix has a non-real eigenvalue and
// SplitFailure when the spectrum is real but does not split over Q (exact
// mode); numeric mode compares imaginary parts against the tolerance.
void check_admissible(const MatrixTuple& t, std::optional<double> tol = {});

// Simultaneous generalized-eigenspace decomposition; projectors are
// orthogonal, complete, and multiplicities sum to r.
std::vector<SupportPoint> joint_decompose(const MatrixTuple& t, std::optional<double> tol = {});

// Local data of the fiber algebra at one support point.
struct LocalFactor {
    int support_index = -1;
    int dim = 0;
    int nilpotency_index = 1;
    ResidueKind residue = ResidueKind::real;
};

// The unital subalgebra of r x r matrices generated over the reals by the
// identity and the tuple, with its decomposition into local factors.
struct FiberAlgebra {
    int r = 0;
    FiniteCommAlgebra algebra;            // structure constants on the closure basis
    std::vector<DenseMatrix> embedding;   // basis element -> matrix
    std::vector<SupportPoint> support;
    std::vector<LocalFactor> locals;      // one per support point
    // Exact mode carries the full structure-constant decomposition; its
    // idempotents coincide with the support projectors.
    std::optional<AlgebraDecomposition> decomposition;
};

FiberAlgebra fiber_algebra(const MatrixTuple& t, std::optional<double> tol = {});

// f(A_1..A_n) by direct substitution (the tuple must be admissible).
DenseMatrix evaluate(const MatrixTuple& t, const MultiPoly& f, std::optional<double> tol = {});

// Evaluation through truncated Taylor data: one jet of order >= r-1 centered
// at each support point.
DenseMatrix evaluate(const MatrixTuple& t, const std::vector<Jet>& jets,
                     std::optional<double> tol = {});

struct PushforwardPoint {
    Vec q;
    int length = 0;               // dim of the fiber of the module = multiplicity
    std::vector<int> filtration;  // dim m^j E_q for j = 0,1,.. down to 0
};

struct PushforwardModule {
    std::vector<PushforwardPoint> points;
    int total_length = 0;  // always r
};

PushforwardModule pushforward(const MatrixTuple& t, std::optional<double> tol = {});

struct SupportReportEntry {
    Vec q;
    int multiplicity = 0;
    int local_dim = 0;
    int nilpotency = 1;
    std::vector<int> filtration;
};

struct SchemeReport {
    bool admissible = false;
    int r = 0;
    int n = 0;
    Mode mode = Mode::exact;
    std::vector<SupportReportEntry> support;
    int determinacy_order = 0;  // max over factors of (nilpotency - 1); <= r-1
};

SchemeReport scheme_report(const MatrixTuple& t, std::optional<double> tol = {});

// Scheme report of the graph at a base point: support coordinates become
// (x, q); algebra and module data are unchanged.
SchemeReport graph(const MatrixTuple& t, const Vec& base_point, std::optional<double> tol = {});

// Commutative subalgebra generated by arbitrary commuting matrices; complex
// residue factors are reported, not rejected.
struct SurrogateAlgebra {
    int r = 0;
    FiniteCommAlgebra algebra;
    std::vector<DenseMatrix> embedding;
    AlgebraDecomposition decomposition;  // lenient
    bool has_complex_residue = false;
};

SurrogateAlgebra surrogate(int r, const std::vector<DenseMatrix>& generators);

struct CharIdealEntry {
    Vec q;
    int dim_quotient = 0;  // order-(r-1) jet ring modulo the char-poly jet ideal
    int dim_fiber = 0;     // local factor dimension
    bool equal = false;
};

struct CharIdealComparison {
    std::vector<CharIdealEntry> entries;
    bool all_geq = true;  // dim_quotient >= dim_fiber everywhere (surjectivity)
};

// Compares the truncated quotient by the characteristic-polynomial ideal
// against the fiber factor at every support point (exact mode).
CharIdealComparison char_ideal_compare(const MatrixTuple& t);

}  // namespace mscheme

#endif
