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

#ifndef MSCHEME_JETS_HPP
#define MSCHEME_JETS_HPP

#include <memory>
#include <optional>
#include <vector>

#include "mscheme/matrix.hpp"
#include "mscheme/poly.hpp"

namespace mscheme {

// Truncated polynomial ring at a center point: coefficients are indexed by
// the monomials of total degree <= order in the shifted coordinates
// t_i = y_i - center_i, listed in graded-lex order.
class JetRing {
   public:
    JetRing(int nvars, int order, Vec center);

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    Mode mode() const { return mode_; }
    const Vec& center() const { return center_; }
    const std::vector<Exponents>& basis() const { return basis_; }
    int basis_size() const { return static_cast<int>(basis_.size()); }

    // Index of an exponent tuple in the basis; nullopt when |e| > order.
    std::optional<int> index_of(const Exponents& e) const;

    friend bool operator==(const JetRing& a, const JetRing& b);
    friend bool operator!=(const JetRing& a, const JetRing& b) { return !(a == b); }

   private:
    int nvars_;
    int order_;
    Mode mode_;
    Vec center_;
    std::vector<Exponents> basis_;
};

using JetRingPtr = std::shared_ptr<const JetRing>;

JetRingPtr make_jet_ring(int nvars, int order, Vec center);

class Jet {
   public:
    Jet(JetRingPtr ring, Vec coeffs);

    static Jet zero(JetRingPtr ring);
    static Jet unit(JetRingPtr ring);
    // The shifted coordinate t_i = y_i - center_i as a jet.
    static Jet coordinate(JetRingPtr ring, int var);

    const JetRingPtr& ring() const { return ring_; }
    const Vec& coeffs() const { return coeffs_; }
    bool is_zero() const { return vec_is_zero(coeffs_); }

    // Drops coefficients above the lower ring's order (same vars, center).
    Jet truncated_to(const JetRingPtr& lower) const;

    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Scalar& c, const Jet& a);
    friend bool operator==(const Jet& a, const Jet& b);
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

   private:
    JetRingPtr ring_;
    Vec coeffs_;
};

// Taylor expansion of a polynomial at the ring's center up to its order;
// exact re-centering by binomial expansion in exact mode.
Jet truncate(const MultiPoly& f, const JetRingPtr& ring);

// Product in the truncated ring (terms of total degree > order drop).
Jet jet_mul(const Jet& a, const Jet& b);

// Linear span of all monomial multiples of the generators inside the
// truncated ring; closed under multiplication by every coordinate.
class JetIdeal {
   public:
    JetIdeal(JetRingPtr ring, const std::vector<Jet>& generators);

    const JetRingPtr& ring() const { return ring_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Jet>& basis() const { return basis_; }

   private:
    JetRingPtr ring_;
    std::vector<Jet> basis_;  // reduced row echelon basis
};

JetIdeal jet_ideal(const JetRingPtr& ring, const std::vector<Jet>& generators);
JetIdeal jet_ideal(const std::vector<Jet>& generators);  // ring from the first generator

struct JetMembership {
    bool member = false;
    // Basis monomial at which the reduction leaves a nonzero coefficient.
    std::optional<Exponents> witness_monomial;
};

// Exact linear membership of a jet in the ideal's span.
JetMembership jet_membership(const Jet& f, const JetIdeal& ideal);

}  // namespace mscheme

#endif
