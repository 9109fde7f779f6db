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

#include "mscheme/jets.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "mscheme/errors.hpp"

namespace mscheme {

namespace {

unsigned tuple_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

// All exponent tuples of total degree <= order, graded-lex:
// degree ascending, lexicographically descending within a degree.
std::vector<Exponents> enumerate_basis(int nvars, int order) {
    std::vector<Exponents> out;
    out.push_back(Exponents(static_cast<size_t>(nvars), 0u));
    Exponents e(static_cast<size_t>(nvars), 0u);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == nvars - 1) {
            e[static_cast<size_t>(pos)] = static_cast<unsigned>(remaining);
            out.push_back(e);
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            e[static_cast<size_t>(pos)] = static_cast<unsigned>(k);
            rec(pos + 1, remaining - k);
        }
    };
    for (int d = 1; d <= order; ++d) rec(0, d);
    return out;
}

Scalar binomial_scalar(unsigned n, unsigned k, Mode mode) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    if (mode == Mode::exact) return Scalar::rational(mpq_class(b));
    return Scalar::numeric(b.get_d());
}

Scalar scalar_pow(const Scalar& x, unsigned k) {
    Scalar acc = Scalar::one(x.mode());
    for (unsigned i = 0; i < k; ++i) acc *= x;
    return acc;
}

void check_same_ring(const JetRingPtr& a, const JetRingPtr& b, const char* op) {
    if (!a || !b || *a != *b)
        throw RingMismatch(std::string(op) + " requires jets from the same ring");
}

}  // namespace

JetRing::JetRing(int nvars, int order, Vec center)
    : nvars_(nvars), order_(order), center_(std::move(center)) {
    if (nvars < 1) throw std::invalid_argument("jet ring needs at least one variable");
    if (order < 0) throw std::invalid_argument("jet ring order must be nonnegative");
    if (static_cast<int>(center_.size()) != nvars)
        throw VariableCountMismatch("jet ring center length differs from variable count");
    mode_ = center_[0].mode();
    for (const auto& c : center_)
        if (c.mode() != mode_) throw ModeMismatch("jet ring center mixes modes");
    basis_ = enumerate_basis(nvars, order);
}

std::optional<int> JetRing::index_of(const Exponents& e) const {
    if (static_cast<int>(e.size()) != nvars_)
        throw VariableCountMismatch("exponent tuple length differs from variable count");
    if (static_cast<int>(tuple_degree(e)) > order_) return std::nullopt;
    auto it = std::find(basis_.begin(), basis_.end(), e);
    return static_cast<int>(it - basis_.begin());
}

bool operator==(const JetRing& a, const JetRing& b) {
    if (a.nvars_ != b.nvars_ || a.order_ != b.order_ || a.mode_ != b.mode_) return false;
    for (int i = 0; i < a.nvars_; ++i)
        if (a.center_[static_cast<size_t>(i)] != b.center_[static_cast<size_t>(i)]) return false;
    return true;
}

JetRingPtr make_jet_ring(int nvars, int order, Vec center) {
    return std::make_shared<const JetRing>(nvars, order, std::move(center));
}

Jet::Jet(JetRingPtr ring, Vec coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    if (!ring_) throw std::invalid_argument("jet requires a ring");
    if (static_cast<int>(coeffs_.size()) != ring_->basis_size())
        throw DimensionMismatch("jet coefficient vector length differs from basis size");
}

Jet Jet::zero(JetRingPtr ring) {
    Vec c = vec_zero(ring->basis_size(), ring->mode());
    return Jet(std::move(ring), std::move(c));
}

Jet Jet::unit(JetRingPtr ring) {
    Vec c = vec_zero(ring->basis_size(), ring->mode());
    c[0] = Scalar::one(ring->mode());
    return Jet(std::move(ring), std::move(c));
}

Jet Jet::coordinate(JetRingPtr ring, int var) {
    if (var < 0 || var >= ring->nvars())
        throw std::invalid_argument("coordinate index out of range");
    Vec c = vec_zero(ring->basis_size(), ring->mode());
    if (ring->order() >= 1) {
        Exponents e(static_cast<size_t>(ring->nvars()), 0u);
        e[static_cast<size_t>(var)] = 1u;
        c[static_cast<size_t>(*ring->index_of(e))] = Scalar::one(ring->mode());
    }
    return Jet(std::move(ring), std::move(c));
}

Jet Jet::truncated_to(const JetRingPtr& lower) const {
    if (lower->nvars() != ring_->nvars() || lower->mode() != ring_->mode())
        throw RingMismatch("truncation target ring differs in variables or mode");
    for (int i = 0; i < ring_->nvars(); ++i)
        if (lower->center()[static_cast<size_t>(i)] != ring_->center()[static_cast<size_t>(i)])
            throw RingMismatch("truncation target ring has a different center");
    if (lower->order() > ring_->order())
        throw RingMismatch("cannot truncate to a higher order");
    Vec c = vec_zero(lower->basis_size(), lower->mode());
    for (int i = 0; i < lower->basis_size(); ++i)
        c[static_cast<size_t>(i)] = coeffs_[static_cast<size_t>(
            *ring_->index_of(lower->basis()[static_cast<size_t>(i)]))];
    return Jet(lower, std::move(c));
}

Jet operator+(const Jet& a, const Jet& b) {
    check_same_ring(a.ring_, b.ring_, "jet addition");
    return Jet(a.ring_, vec_add(a.coeffs_, b.coeffs_));
}

Jet operator-(const Jet& a, const Jet& b) {
    check_same_ring(a.ring_, b.ring_, "jet subtraction");
    return Jet(a.ring_, vec_sub(a.coeffs_, b.coeffs_));
}

Jet operator*(const Scalar& c, const Jet& a) { return Jet(a.ring_, vec_scale(c, a.coeffs_)); }

bool operator==(const Jet& a, const Jet& b) {
    check_same_ring(a.ring_, b.ring_, "jet comparison");
    return a.coeffs_ == b.coeffs_;
}

Jet truncate(const MultiPoly& f, const JetRingPtr& ring) {
    if (f.nvars() != ring->nvars())
        throw VariableCountMismatch("polynomial variable count differs from jet ring");
    if (f.mode() != ring->mode() && !f.is_zero())
        throw ModeMismatch("polynomial mode differs from jet ring mode");
    const int n = ring->nvars();
    const int k = ring->order();
    Vec out = vec_zero(ring->basis_size(), ring->mode());

    for (const auto& [beta, c] : f.terms()) {
        // Expand prod_i (q_i + t_i)^{beta_i}, keeping degrees <= k.
        std::vector<std::pair<Exponents, Scalar>> partial{
            {Exponents(static_cast<size_t>(n), 0u), c}};
        for (int i = 0; i < n; ++i) {
            std::vector<std::pair<Exponents, Scalar>> next;
            const unsigned bi = beta[static_cast<size_t>(i)];
            for (const auto& [alpha, coeff] : partial) {
                unsigned used = tuple_degree(alpha);
                unsigned room = static_cast<unsigned>(k) - used;
                for (unsigned ai = 0; ai <= std::min(bi, room); ++ai) {
                    Exponents a2(alpha);
                    a2[static_cast<size_t>(i)] = ai;
                    Scalar term = coeff * binomial_scalar(bi, ai, ring->mode()) *
                                  scalar_pow(ring->center()[static_cast<size_t>(i)], bi - ai);
                    next.push_back({std::move(a2), std::move(term)});
                }
            }
            partial = std::move(next);
        }
        for (const auto& [alpha, coeff] : partial)
            out[static_cast<size_t>(*ring->index_of(alpha))] += coeff;
    }
    return Jet(ring, std::move(out));
}

Jet jet_mul(const Jet& a, const Jet& b) {
    check_same_ring(a.ring(), b.ring(), "jet multiplication");
    const JetRingPtr& ring = a.ring();
    const auto& basis = ring->basis();
    Vec out = vec_zero(ring->basis_size(), ring->mode());
    for (size_t i = 0; i < basis.size(); ++i) {
        if (a.coeffs()[i].is_zero()) continue;
        unsigned di = tuple_degree(basis[i]);
        for (size_t j = 0; j < basis.size(); ++j) {
            if (b.coeffs()[j].is_zero()) continue;
            if (di + tuple_degree(basis[j]) > static_cast<unsigned>(ring->order())) continue;
            Exponents e(basis[i]);
            for (size_t v = 0; v < e.size(); ++v) e[v] += basis[j][v];
            out[static_cast<size_t>(*ring->index_of(e))] += a.coeffs()[i] * b.coeffs()[j];
        }
    }
    return Jet(ring, std::move(out));
}

JetIdeal::JetIdeal(JetRingPtr ring, const std::vector<Jet>& generators) : ring_(std::move(ring)) {
    if (ring_->mode() != Mode::exact)
        throw ModeMismatch("jet ideals are an exact-mode construction");
    for (const auto& g : generators) check_same_ring(ring_, g.ring(), "jet ideal");

    SpanBuilder span(ring_->basis_size());
    // Monomial multiples of each generator saturate the span under
    // multiplication by coordinates.
    for (const auto& mono : ring_->basis()) {
        Jet mjet = Jet::zero(ring_);
        Vec mc = vec_zero(ring_->basis_size(), ring_->mode());
        mc[static_cast<size_t>(*ring_->index_of(mono))] = Scalar::one(ring_->mode());
        mjet = Jet(ring_, std::move(mc));
        for (const auto& g : generators) span.add(jet_mul(mjet, g).coeffs());
    }
    for (const auto& row : span.basis()) basis_.push_back(Jet(ring_, row));

    // Saturation invariant: coordinate multiples of basis jets stay inside.
    for (const auto& b : basis_)
        for (int v = 0; v < ring_->nvars(); ++v)
            if (!span.contains(jet_mul(Jet::coordinate(ring_, v), b).coeffs()))
                throw std::logic_error("jet ideal span is not saturated");
}

JetIdeal jet_ideal(const JetRingPtr& ring, const std::vector<Jet>& generators) {
    return JetIdeal(ring, generators);
}

JetIdeal jet_ideal(const std::vector<Jet>& generators) {
    if (generators.empty())
        throw std::invalid_argument("jet_ideal needs a ring or at least one generator");
    return JetIdeal(generators[0].ring(), generators);
}

JetMembership jet_membership(const Jet& f, const JetIdeal& ideal) {
    check_same_ring(f.ring(), ideal.ring(), "jet membership");
    SpanBuilder span(ideal.ring()->basis_size());
    for (const auto& b : ideal.basis()) span.add(b.coeffs());
    Vec residual = span.reduce(f.coeffs());
    JetMembership out;
    int lead = span.leading_index(residual);
    out.member = lead < 0;
    if (!out.member)
        out.witness_monomial = ideal.ring()->basis()[static_cast<size_t>(lead)];
    return out;
}

}  // namespace mscheme
