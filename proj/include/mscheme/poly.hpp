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

#ifndef MSCHEME_POLY_HPP
#define MSCHEME_POLY_HPP

#include <map>
#include <vector>

#include "mscheme/matrix.hpp"
#include "mscheme/scalar.hpp"

namespace mscheme {

using Exponents = std::vector<unsigned>;

// Multivariate polynomial as a term map from exponent tuples to nonzero
// coefficients; the zero polynomial has an empty map.
class MultiPoly {
   public:
    explicit MultiPoly(int nvars, Mode mode = Mode::exact);
    static MultiPoly constant(int nvars, const Scalar& c);
    static MultiPoly variable(int nvars, int idx, Mode mode = Mode::exact);
    static MultiPoly monomial(const Exponents& exps, const Scalar& coeff);

    int nvars() const { return nvars_; }
    Mode mode() const { return mode_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, Scalar>& terms() const { return terms_; }

    // -1 for the zero polynomial.
    int total_degree() const;

    Scalar coeff(const Exponents& exps) const;
    void set_coeff(const Exponents& exps, const Scalar& c);

    Scalar eval(const Vec& point) const;
    MultiPoly compose(const std::vector<MultiPoly>& subs) const;
    MultiPoly to_numeric() const;
    MultiPoly pow(unsigned k) const;

    bool is_rational_coeffs() const;

    // Univariate accessors (nvars == 1).
    int degree() const { return total_degree(); }
    Scalar coeff1(int k) const;
    Scalar lead() const;

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const Scalar& c, const MultiPoly& a);
    MultiPoly operator-() const;
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    std::string str(const std::string& varname = "y") const;

   private:
    int nvars_;
    Mode mode_;
    std::map<Exponents, Scalar> terms_;
};

// Partial derivative with respect to one variable.
MultiPoly poly_derivative(const MultiPoly& p, int var = 0);

// Univariate exact division with remainder; divisor must be nonzero.
std::pair<MultiPoly, MultiPoly> poly_divmod(const MultiPoly& a, const MultiPoly& b);

// Monic gcd of univariate exact polynomials (zero if both zero).
MultiPoly poly_gcd(MultiPoly a, MultiPoly b);

// Number of distinct real roots of a squarefree univariate polynomial with
// rational coefficients (Sturm's theorem over the whole line).
int sturm_real_root_count(const MultiPoly& p);

struct RootInfo {
    mpq_class root;
    int multiplicity;
};

struct RationalRoots {
    std::vector<RootInfo> roots;         // sorted ascending
    int remainder_degree = 0;            // degree of the rational-root-free cofactor
    MultiPoly remainder;                 // monic cofactor (constant 1 when fully split)
    int remainder_real_roots = 0;        // distinct real roots of the cofactor
    bool remainder_has_complex = false;  // cofactor has a non-real root
    RationalRoots() : remainder(1) {}
};

// All rational roots with exact multiplicities of a nonzero univariate
// polynomial with rational coefficients, plus the classified remainder.
RationalRoots rational_roots(const MultiPoly& p);

// Monic characteristic polynomial det(y*Id - a), by the division-free
// Faddeev-LeVerrier recurrence (exact over the rationals in exact mode).
MultiPoly char_poly(const DenseMatrix& a);

}  // namespace mscheme

#endif
