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

#ifndef MSCHEME_FAMILY_HPP
#define MSCHEME_FAMILY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mscheme/matrixpoint.hpp"
#include "mscheme/poly.hpp"

namespace mscheme {

// Matrix tuple varying polynomially over a rational window in the base.
// Entries are exact polynomials in the base variables x^1..x^m.
struct MatrixFamily {
    int m = 0;  // base dimension
    int r = 0;
    int n = 0;
    std::vector<std::pair<mpq_class, mpq_class>> window;          // per-axis [lo, hi]
    std::vector<std::vector<std::vector<MultiPoly>>> matrices;    // n matrices of r x r entries
};

// Checks shapes and symbolic commutation of the entry polynomials.
MatrixFamily make_family(int m, int r,
                         std::vector<std::vector<std::vector<MultiPoly>>> matrices,
                         std::vector<std::pair<mpq_class, mpq_class>> window);

// Exact evaluation at a rational base point inside the window.
MatrixTuple sample_fiber(const MatrixFamily& fam, const std::vector<mpq_class>& x);

struct FamilySample {
    std::vector<mpq_class> x;
    bool admissible = false;
    std::string error;  // nonempty when the per-sample analysis failed
    std::optional<SchemeReport> report;
};

struct BranchNode {
    int sample = -1;
    std::vector<double> q;
    int multiplicity = 0;
};

struct BranchComponent {
    std::vector<int> samples;  // sorted sample indices covered
    std::vector<BranchNode> nodes;
};

struct FamilyReport {
    int m = 0, r = 0, n = 0;
    double tol = kDefaultTol;
    std::vector<std::vector<mpq_class>> axes;  // grid samples per axis
    std::vector<FamilySample> samples;         // row-major over the axes
    std::vector<BranchComponent> branches;     // filled by track_branches (m == 1)
};

// Per-sample admissibility and scheme reports in numeric mode; failures are
// recorded in the report rather than raised.
FamilyReport analyze_family(const MatrixFamily& fam, const std::vector<int>& grid_counts,
                            double tol = kDefaultTol);

struct BranchOptions {
    std::optional<double> radius;  // default: 4x the estimated per-step motion
    double tie_fraction = 0.01;    // tie tolerance as a fraction of the radius
};

// Links support points of adjacent admissible samples to their nearest
// neighbors, merging through multiplicity collisions; MatchingAmbiguity when
// a simple point sees two equally near continuations.
std::vector<BranchComponent> track_branches(const FamilyReport& report,
                                            const BranchOptions& options = {});

struct SurrogateSample {
    std::vector<mpq_class> x;
    int dim = 0;
    int factor_count = 0;
    bool complex_residue = false;
    std::string error;
};

struct SurrogateStratum {
    int dim = 0;
    int factor_count = 0;
    std::vector<int> samples;
};

struct SurrogateFamilyReport {
    int m = 0, r = 0;
    std::vector<std::vector<mpq_class>> axes;
    std::vector<SurrogateSample> samples;
    std::vector<SurrogateStratum> strata;  // base stratification by signature
};

// Per-sample surrogate algebra dimensions and factor counts for a family of
// generator matrices (exact mode at rational grid points).
SurrogateFamilyReport surrogate_family(const MatrixFamily& generators,
                                       const std::vector<int>& grid_counts);

}  // namespace mscheme

#endif
