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

#ifndef MSCHEME_WEIL_HPP
#define MSCHEME_WEIL_HPP

#include <string>
#include <vector>

#include "mscheme/matrix.hpp"
#include "mscheme/poly.hpp"

namespace mscheme {

// Finite-dimensional commutative algebra presented by structure constants
// on a basis e_0..e_{d-1}: e_i * e_j = sum_k mul[i][j][k] e_k.
struct FiniteCommAlgebra {
    int dim = 0;
    Vec unit;
    std::vector<std::vector<Vec>> mul;

    Mode mode() const { return unit.empty() ? Mode::exact : unit[0].mode(); }

    Vec multiply(const Vec& a, const Vec& b) const;

    // Matrix of multiplication by a in the chosen basis.
    DenseMatrix mult_operator(const Vec& a) const;

    Vec basis_vector(int i) const;
};

struct AlgebraVerdict {
    bool ok = true;
    std::string law;  // "commutativity" | "associativity" | "unit"
    int i = -1, j = -1, k = -1;
    std::string message;
};

// Checks commutativity, associativity and the unit law on all basis tuples;
// reports the first violation found.
AlgebraVerdict verify_algebra(const FiniteCommAlgebra& a);

struct WeilAlgebra {
    FiniteCommAlgebra algebra;
    std::vector<Vec> max_ideal;  // basis of m in algebra coordinates
    int nilpotency_index = 1;    // least k with m^k = 0

    int dim() const { return algebra.dim; }
};

enum class ResidueKind { real, complex_pair };

struct DecompFactor {
    WeilAlgebra weil;
    std::vector<Vec> ambient_basis;  // factor basis as vectors of the source algebra
    Vec idempotent;                  // in source coordinates
    ResidueKind residue = ResidueKind::real;
};

struct AlgebraDecomposition {
    FiniteCommAlgebra source;
    std::vector<DecompFactor> factors;

    bool has_complex_residue() const;

    // Rebuilds the source structure constants from the factor data; byte-for-
    // byte equal to `source` when the decomposition is consistent.
    FiniteCommAlgebra reassemble() const;
};

// Complete decomposition into local factors. Throws SplitFailure when a
// minimal polynomial does not split over the rationals and ComplexResidue
// when a factor has complex residue field.
AlgebraDecomposition decompose(const FiniteCommAlgebra& a);

// Same computation, but complex-residue factors are reported (flagged on the
// factor) instead of raising. SplitFailure still throws.
AlgebraDecomposition decompose_lenient(const FiniteCommAlgebra& a);

// True iff decompose yields exactly one factor with real residue field.
bool is_weil(const FiniteCommAlgebra& a);

// Least k >= 1 with m^k = 0, recomputed by iterating products of ideal bases.
int nilpotency_index(const WeilAlgebra& w);

// Tensor product on the product basis; the result is again a Weil algebra.
WeilAlgebra tensor(const WeilAlgebra& r, const WeilAlgebra& s);

// True iff the span of sub_basis is multiplicatively closed. The span must
// contain the unit (NotContainingUnit) and be independent.
bool subalgebra_check(const FiniteCommAlgebra& ambient, const std::vector<Vec>& sub_basis);

// Structure constants of a multiplicatively closed span, as its own algebra.
FiniteCommAlgebra restrict_to_subalgebra(const FiniteCommAlgebra& ambient,
                                         const std::vector<Vec>& sub_basis);

}  // namespace mscheme

#endif
