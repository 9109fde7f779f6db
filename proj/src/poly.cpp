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

#include "mscheme/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mscheme {

MultiPoly::MultiPoly(int nvars, Mode mode) : nvars_(nvars), mode_(mode) {
    if (nvars < 0) throw std::invalid_argument("negative variable count");
}

MultiPoly MultiPoly::constant(int nvars, const Scalar& c) {
    MultiPoly p(nvars, c.mode());
    p.set_coeff(Exponents(static_cast<size_t>(nvars), 0u), c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int idx, Mode mode) {
    if (idx < 0 || idx >= nvars) throw std::invalid_argument("variable index out of range");
    MultiPoly p(nvars, mode);
    Exponents e(static_cast<size_t>(nvars), 0u);
    e[static_cast<size_t>(idx)] = 1u;
    p.set_coeff(e, Scalar::one(mode));
    return p;
}

MultiPoly MultiPoly::monomial(const Exponents& exps, const Scalar& coeff) {
    MultiPoly p(static_cast<int>(exps.size()), coeff.mode());
    p.set_coeff(exps, coeff);
    return p;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int td = static_cast<int>(std::accumulate(e.begin(), e.end(), 0u));
        d = std::max(d, td);
    }
    return d;
}

Scalar MultiPoly::coeff(const Exponents& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Scalar::zero(mode_) : it->second;
}

void MultiPoly::set_coeff(const Exponents& exps, const Scalar& c) {
    if (static_cast<int>(exps.size()) != nvars_)
        throw VariableCountMismatch("exponent tuple length differs from variable count");
    if (c.is_zero()) {
        terms_.erase(exps);
        return;
    }
    if (c.mode() != mode_) throw ModeMismatch("coefficient mode differs from polynomial mode");
    terms_[exps] = c;
}

Scalar MultiPoly::eval(const Vec& point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw VariableCountMismatch("evaluation point length differs from variable count");
    Scalar acc = Scalar::zero(mode_);
    for (const auto& [e, c] : terms_) {
        Scalar t = c;
        for (int i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[static_cast<size_t>(i)]; ++k) t *= point[static_cast<size_t>(i)];
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& subs) const {
    if (static_cast<int>(subs.size()) != nvars_)
        throw VariableCountMismatch("substitution list length differs from variable count");
    int out_vars = subs.empty() ? 0 : subs[0].nvars();
    for (const auto& s : subs)
        if (s.nvars() != out_vars) throw VariableCountMismatch("substitution polynomials disagree on variables");
    MultiPoly acc(out_vars, mode_);
    for (const auto& [e, c] : terms_) {
        MultiPoly t = MultiPoly::constant(out_vars, c);
        for (int i = 0; i < nvars_; ++i)
            if (e[static_cast<size_t>(i)] > 0) t = t * subs[static_cast<size_t>(i)].pow(e[static_cast<size_t>(i)]);
        acc = acc + t;
    }
    return acc;
}

MultiPoly MultiPoly::to_numeric() const {
    MultiPoly p(nvars_, Mode::numeric);
    for (const auto& [e, c] : terms_) p.set_coeff(e, c.to_numeric());
    return p;
}

MultiPoly MultiPoly::pow(unsigned k) const {
    MultiPoly acc = MultiPoly::constant(nvars_, Scalar::one(mode_));
    for (unsigned i = 0; i < k; ++i) acc = acc * (*this);
    return acc;
}

bool MultiPoly::is_rational_coeffs() const {
    for (const auto& [e, c] : terms_)
        if (!c.is_rational()) return false;
    return true;
}

Scalar MultiPoly::coeff1(int k) const {
    if (nvars_ != 1) throw VariableCountMismatch("coeff1 requires a univariate polynomial");
    return coeff(Exponents{static_cast<unsigned>(k)});
}

Scalar MultiPoly::lead() const {
    if (nvars_ != 1) throw VariableCountMismatch("lead requires a univariate polynomial");
    if (is_zero()) return Scalar::zero(mode_);
    return coeff1(degree());
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_) throw VariableCountMismatch("polynomial addition variable mismatch");
    if (a.mode_ != b.mode_) throw ModeMismatch("polynomial addition mixes modes");
    MultiPoly r(a);
    for (const auto& [e, c] : b.terms_) r.set_coeff(e, r.coeff(e) + c);
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_) throw VariableCountMismatch("polynomial product variable mismatch");
    if (a.mode_ != b.mode_) throw ModeMismatch("polynomial product mixes modes");
    MultiPoly r(a.nvars_, a.mode_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e(ea);
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.set_coeff(e, r.coeff(e) + ca * cb);
        }
    return r;
}

MultiPoly operator*(const Scalar& c, const MultiPoly& a) {
    MultiPoly r(a.nvars_, a.mode_);
    if (c.is_zero()) return r;
    for (const auto& [e, x] : a.terms_) r.set_coeff(e, c * x);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(nvars_, mode_);
    for (const auto& [e, c] : terms_) r.set_coeff(e, -c);
    return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_) return false;
    if (a.mode_ != b.mode_) throw ModeMismatch("polynomial comparison mixes modes");
    return a.terms_ == b.terms_;
}

std::string MultiPoly::str(const std::string& varname) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << it->second.str();
        for (int i = 0; i < nvars_; ++i) {
            unsigned k = it->first[static_cast<size_t>(i)];
            if (k == 0) continue;
            os << "*" << varname;
            if (nvars_ > 1) os << (i + 1);
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

MultiPoly poly_derivative(const MultiPoly& p, int var) {
    if (var < 0 || var >= p.nvars()) throw std::invalid_argument("derivative variable out of range");
    MultiPoly r(p.nvars(), p.mode());
    for (const auto& [e, c] : p.terms()) {
        unsigned k = e[static_cast<size_t>(var)];
        if (k == 0) continue;
        Exponents e2(e);
        e2[static_cast<size_t>(var)] = k - 1;
        Scalar factor = p.mode() == Mode::exact ? Scalar::rational(static_cast<long>(k))
                                                : Scalar::numeric(static_cast<double>(k));
        r.set_coeff(e2, r.coeff(e2) + factor * c);
    }
    return r;
}

std::pair<MultiPoly, MultiPoly> poly_divmod(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars() != 1 || b.nvars() != 1)
        throw VariableCountMismatch("poly_divmod requires univariate polynomials");
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    MultiPoly q(1, a.mode());
    MultiPoly r(a);
    const int db = b.degree();
    const Scalar blead = b.lead();
    while (!r.is_zero() && r.degree() >= db) {
        int dr = r.degree();
        Scalar f = r.lead() / blead;
        MultiPoly t = MultiPoly::monomial(Exponents{static_cast<unsigned>(dr - db)}, f);
        q = q + t;
        r = r - t * b;
    }
    return {q, r};
}

MultiPoly poly_gcd(MultiPoly a, MultiPoly b) {
    if (a.nvars() != 1 || b.nvars() != 1)
        throw VariableCountMismatch("poly_gcd requires univariate polynomials");
    while (!b.is_zero()) {
        MultiPoly r = poly_divmod(a, b).second;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    Scalar inv = Scalar::one(a.mode()) / a.lead();
    return inv * a;
}

namespace {

int sign_of(const mpq_class& q) { return sgn(q); }

// Sign of p at +infinity (dir=+1) or -infinity (dir=-1).
int sign_at_infinity(const MultiPoly& p, int dir) {
    if (p.is_zero()) return 0;
    int d = p.degree();
    int s = sign_of(p.lead().rat());
    if (dir < 0 && (d % 2) != 0) s = -s;
    return s;
}

int sign_variations(const std::vector<int>& signs) {
    int v = 0;
    int prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

}  // namespace

int sturm_real_root_count(const MultiPoly& p) {
    if (p.nvars() != 1) throw VariableCountMismatch("sturm count requires a univariate polynomial");
    if (!p.is_rational_coeffs())
        throw std::invalid_argument("sturm count requires rational coefficients");
    if (p.is_zero()) throw ZeroPolynomial("sturm count of the zero polynomial");
    if (p.degree() == 0) return 0;
    std::vector<MultiPoly> chain;
    chain.push_back(p);
    chain.push_back(poly_derivative(p));
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        MultiPoly r = poly_divmod(chain[chain.size() - 2], chain.back()).second;
        chain.push_back(-r);
    }
    std::vector<int> at_minus, at_plus;
    for (const auto& q : chain) {
        if (q.is_zero()) break;
        at_minus.push_back(sign_at_infinity(q, -1));
        at_plus.push_back(sign_at_infinity(q, +1));
    }
    return sign_variations(at_minus) - sign_variations(at_plus);
}

namespace {

// Coefficients as integers after clearing denominators, constant first.
std::vector<mpz_class> integer_coeffs(const MultiPoly& p) {
    int d = p.degree();
    mpz_class den_lcm = 1;
    for (int k = 0; k <= d; ++k) {
        mpq_class c = p.coeff1(k).rat();
        mpz_class den = c.get_den();
        den_lcm = lcm(den_lcm, den);
    }
    std::vector<mpz_class> out(static_cast<size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
        mpq_class c = p.coeff1(k).rat() * mpq_class(den_lcm);
        c.canonicalize();
        out[static_cast<size_t>(k)] = c.get_num();
    }
    return out;
}

std::vector<mpz_class> positive_divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> divs{1};
    if (n <= 1) return divs;
    mpz_class rest = n;
    std::vector<std::pair<mpz_class, int>> factors;
    auto take = [&](const mpz_class& f) {
        int e = 0;
        while (rest % f == 0) {
            rest /= f;
            ++e;
        }
        if (e > 0) factors.push_back({f, e});
    };
    take(mpz_class(2));
    take(mpz_class(3));
    mpz_class f = 5;
    while (f * f <= rest) {
        take(f);
        take(f + 2);
        f += 6;
    }
    if (rest > 1) factors.push_back({rest, 1});
    for (const auto& [prime, e] : factors) {
        size_t sz = divs.size();
        mpz_class pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= prime;
            for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

mpq_class eval_rational(const MultiPoly& p, const mpq_class& x) {
    int d = p.degree();
    mpq_class acc = 0;
    for (int k = d; k >= 0; --k) acc = acc * x + p.coeff1(k).rat();
    return acc;
}

// Divides p by (y - r) assuming r is a root; exact synthetic division.
MultiPoly deflate(const MultiPoly& p, const mpq_class& r) {
    int d = p.degree();
    std::vector<mpq_class> q(static_cast<size_t>(d), 0);
    mpq_class acc = 0;
    for (int k = d; k >= 1; --k) {
        acc = acc * r + p.coeff1(k).rat();
        q[static_cast<size_t>(k - 1)] = acc;
    }
    MultiPoly result(1);
    for (int k = 0; k < d; ++k)
        result.set_coeff(Exponents{static_cast<unsigned>(k)}, Scalar::rational(q[static_cast<size_t>(k)]));
    return result;
}

}  // namespace

RationalRoots rational_roots(const MultiPoly& p) {
    if (p.nvars() != 1) throw VariableCountMismatch("rational_roots requires a univariate polynomial");
    if (p.is_zero()) throw ZeroPolynomial("rational_roots of the zero polynomial");
    if (!p.is_rational_coeffs())
        throw std::invalid_argument("rational_roots requires rational coefficients");

    RationalRoots out;
    MultiPoly work = (Scalar::one(Mode::exact) / p.lead()) * p;  // monic

    // Root zero first.
    int v = 0;
    while (!work.is_zero() && work.degree() >= 1 && work.coeff1(0).is_zero()) {
        work = poly_divmod(work, MultiPoly::variable(1, 0)).first;
        ++v;
    }
    if (v > 0) out.roots.push_back({mpq_class(0), v});

    if (work.degree() >= 1) {
        // Candidates from the squarefree part's integer model.
        MultiPoly sqfree = poly_divmod(work, poly_gcd(work, poly_derivative(work))).first;
        std::vector<mpz_class> ic = integer_coeffs(sqfree);
        std::vector<mpz_class> nums = positive_divisors(ic.front());
        std::vector<mpz_class> dens = positive_divisors(ic.back());
        std::vector<mpq_class> candidates;
        for (const auto& nu : nums)
            for (const auto& de : dens) {
                mpq_class c(nu, de);
                c.canonicalize();
                candidates.push_back(c);
                candidates.push_back(-c);
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const auto& c : candidates) {
            if (eval_rational(work, c) != 0) continue;
            int mult = 0;
            while (!work.is_zero() && work.degree() >= 1 && eval_rational(work, c) == 0) {
                work = deflate(work, c);
                ++mult;
            }
            out.roots.push_back({c, mult});
        }
    }

    std::sort(out.roots.begin(), out.roots.end(),
              [](const RootInfo& a, const RootInfo& b) { return a.root < b.root; });

    out.remainder = work.degree() >= 1 ? work : MultiPoly::constant(1, Scalar::rational(1));
    out.remainder_degree = std::max(work.degree(), 0);
    if (out.remainder_degree > 0) {
        MultiPoly sq = poly_divmod(out.remainder, poly_gcd(out.remainder, poly_derivative(out.remainder))).first;
        out.remainder_real_roots = sturm_real_root_count(sq);
        out.remainder_has_complex = out.remainder_real_roots < sq.degree();
    }
    return out;
}

MultiPoly char_poly(const DenseMatrix& a) {
    if (!a.is_square()) throw NotSquare("char_poly of a non-square matrix");
    const int n = a.rows();
    const Mode mode = a.mode();
    MultiPoly p(1, mode);
    p.set_coeff(Exponents{static_cast<unsigned>(n)}, Scalar::one(mode));
    if (n == 0) return p;
    auto integer = [&](long k) {
        return mode == Mode::exact ? Scalar::rational(k) : Scalar::numeric(static_cast<double>(k));
    };
    DenseMatrix m(a);
    Scalar c = -m.trace();
    p.set_coeff(Exponents{static_cast<unsigned>(n - 1)}, c);
    for (int k = 2; k <= n; ++k) {
        DenseMatrix shifted(m);
        for (int i = 0; i < n; ++i) shifted.set(i, i, shifted.at(i, i) + c);
        m = a * shifted;
        c = -(m.trace() / integer(k));
        p.set_coeff(Exponents{static_cast<unsigned>(n - k)}, c);
    }
    return p;
}

}  // namespace mscheme
